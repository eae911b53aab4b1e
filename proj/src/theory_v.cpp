#include "lamv/theory_v.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "lamv/combinators.hpp"

namespace lamv {

Term omega_term(Ordinal n, OmegaChoice choice) {
    if (n.is_omega()) return choice == OmegaChoice::Canonical ? comb::Omega_w() : comb::YK();
    return comb::Omega_n(static_cast<unsigned>(n.value()));
}

std::optional<Ordinal> omega_index(const Term& t, OmegaChoice choice) {
    static const Term omega = comb::Omega();
    static const Term canonical = comb::Omega_w();
    static const Term yk = comb::YK();
    if (alpha_eq(t, choice == OmegaChoice::Canonical ? canonical : yk)) return Ordinal::omega();
    std::uint64_t n = 0;
    Term cur = t;
    while (cur.is_abs()) {
        cur = cur.body();
        ++n;
    }
    if (alpha_eq(cur, omega)) return Ordinal::finite(n);
    return std::nullopt;
}

std::vector<Annotation> parse_annotations(std::string_view text) {
    std::vector<Annotation> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == ';') continue;
        auto colon = line.rfind(':');
        if (colon == std::string::npos) throw std::invalid_argument("annotation line " + std::to_string(lineno) + ": missing ':'");
        std::string ord = line.substr(colon + 1);
        ord.erase(0, ord.find_first_not_of(" \t"));
        ord.erase(ord.find_last_not_of(" \t\r") + 1);
        auto o = parse_ordinal(ord);
        if (!o) throw std::invalid_argument("annotation line " + std::to_string(lineno) + ": bad order '" + ord + "'");
        out.push_back({parse(line.substr(0, colon)), *o});
    }
    return out;
}

namespace {

struct OracleState {
    OracleConfig cfg;
    std::vector<Annotation> annotations;
    std::mutex mu;
    std::unordered_map<std::string, OracleAnswer> memo;

    OracleAnswer compute(const Term& t) {
        if (t.in(TermClass::VNF)) return {OracleAnswer::Kind::Other, {}};
        for (const auto& a : annotations) {
            if (alpha_eq(a.term, t)) {
                if (reduce(t, Strategy::vno, cfg.fuel).outcome == Outcome::NormalForm)
                    return {OracleAnswer::Kind::Other, {}};
                return {OracleAnswer::Kind::Unsolvable, a.order};
            }
        }
        auto c = certify_unsolvable(t, cfg.fuel, cfg.pool, cfg.certify);
        switch (c.kind) {
            case Certification::Kind::SolvableWitness: return {OracleAnswer::Kind::Other, {}};
            case Certification::Kind::UnsolvableOfOrder: return {OracleAnswer::Kind::Unsolvable, c.order};
            case Certification::Kind::Unknown: return {OracleAnswer::Kind::Unknown, {}};
        }
        return {};
    }
};

}  // namespace

UnsolvabilityOracle make_cycle_oracle(OracleConfig cfg, std::vector<Annotation> annotations) {
    auto st = std::make_shared<OracleState>();
    st->cfg = std::move(cfg);
    st->annotations = std::move(annotations);
    return [st](const Term& t) {
        std::string key = alpha_key(t);
        {
            std::lock_guard<std::mutex> lock(st->mu);
            auto it = st->memo.find(key);
            if (it != st->memo.end()) return it->second;
        }
        OracleAnswer a = st->compute(t);
        std::lock_guard<std::mutex> lock(st->mu);
        st->memo.emplace(key, a);
        return a;
    };
}

namespace {

std::optional<Term> omega_nf_rec(const Term& t, const UnsolvabilityOracle& oracle, OmegaChoice choice) {
    if (omega_index(t, choice)) return t;
    if (!t.is_var()) {
        OracleAnswer a = oracle(t);
        if (a.kind == OracleAnswer::Kind::Unsolvable) return omega_term(a.order, choice);
        if (a.kind == OracleAnswer::Kind::Unknown) return std::nullopt;
    }
    switch (t.kind()) {
        case TermKind::Var:
            return t;
        case TermKind::Abs: {
            auto b = omega_nf_rec(t.body(), oracle, choice);
            if (!b) return std::nullopt;
            return b->same_node(t.body()) ? t : Term::abs(t.name(), *b);
        }
        case TermKind::App: {
            auto f = omega_nf_rec(t.fun(), oracle, choice);
            if (!f) return std::nullopt;
            auto a = omega_nf_rec(t.arg(), oracle, choice);
            if (!a) return std::nullopt;
            if (f->same_node(t.fun()) && a->same_node(t.arg())) return t;
            return Term::app(*f, *a);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Term> omega_nf(const Term& t, const UnsolvabilityOracle& oracle, OmegaChoice choice) {
    return omega_nf_rec(t, oracle, choice);
}

Term complete_development(const Term& t) {
    switch (t.kind()) {
        case TermKind::Var:
            return t;
        case TermKind::Abs:
            return Term::abs(t.name(), complete_development(t.body()));
        case TermKind::App:
            if (is_betav_redex(t)) {
                const Term& f = t.fun();
                return substitute(complete_development(t.arg()), f.name(), complete_development(f.body()));
            }
            return Term::app(complete_development(t.fun()), complete_development(t.arg()));
    }
    return t;
}

std::optional<Term> complete_omega_development(const Term& t, const UnsolvabilityOracle& oracle, OmegaChoice choice) {
    auto o = omega_nf(t, oracle, choice);
    if (!o) return std::nullopt;
    return complete_development(*o);
}

BvOmvSteps bvomv_steps(const Term& t, const UnsolvabilityOracle& oracle, OmegaChoice choice) {
    BvOmvSteps out;
    for (auto& [p, s] : subterms_preorder(t)) {
        if (!s.is_var() && !s.in(TermClass::VNF) && !omega_index(s, choice)) {
            OracleAnswer a = oracle(s);
            if (a.kind == OracleAnswer::Kind::Unsolvable) {
                out.steps.push_back({replace_at(t, p, omega_term(a.order, choice)), Rule::omegaV, p});
            } else if (a.kind == OracleAnswer::Kind::Unknown) {
                ++out.unknown;
            }
        }
        if (is_betav_redex(s)) out.steps.push_back({contract(t, p, Calculus::V), Rule::betaV, p});
    }
    return out;
}

std::vector<BvOmvStep> betav_steps(const Term& t) {
    std::vector<BvOmvStep> out;
    for (const auto& p : redexes(t, Calculus::V)) out.push_back({contract(t, p, Calculus::V), Rule::betaV, p});
    return out;
}

std::string to_string(SearchVerdict v) {
    switch (v) {
        case SearchVerdict::Found: return "Found";
        case SearchVerdict::Exhausted: return "Exhausted";
        case SearchVerdict::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

struct Side {
    std::unordered_map<std::string, Term> seen;
    std::vector<Term> frontier;
    bool incomplete = false;

    explicit Side(const Term& t) {
        seen.emplace(alpha_key(t), t);
        frontier.push_back(t);
    }

    // Expands one level; returns newly reached terms.
    std::vector<std::pair<std::string, Term>> expand(const Stepper& steps) {
        std::vector<std::pair<std::string, Term>> fresh;
        std::vector<Term> next;
        for (const auto& t : frontier) {
            BvOmvSteps s = steps(t);
            if (s.unknown) incomplete = true;
            for (auto& st : s.steps) {
                std::string k = alpha_key(st.term);
                if (seen.emplace(k, st.term).second) {
                    fresh.emplace_back(k, st.term);
                    next.push_back(st.term);
                }
            }
        }
        frontier = std::move(next);
        return fresh;
    }
};

}  // namespace

JoinResult common_reduct(const Term& a, const Term& b, const Stepper& steps, std::size_t depth, std::size_t max_terms) {
    JoinResult r;
    if (alpha_eq(a, b)) {
        r.verdict = SearchVerdict::Found;
        r.common = a;
        return r;
    }
    Side sa(a), sb(b);
    for (std::size_t d = 0; d < depth; ++d) {
        for (auto& [k, t] : sa.expand(steps)) {
            if (sb.seen.count(k)) {
                r.verdict = SearchVerdict::Found;
                r.common = t;
                r.explored = sa.seen.size() + sb.seen.size();
                return r;
            }
        }
        for (auto& [k, t] : sb.expand(steps)) {
            if (sa.seen.count(k)) {
                r.verdict = SearchVerdict::Found;
                r.common = t;
                r.explored = sa.seen.size() + sb.seen.size();
                return r;
            }
        }
        r.explored = sa.seen.size() + sb.seen.size();
        if (sa.frontier.empty() && sb.frontier.empty()) break;
        if (r.explored > max_terms) return r;
    }
    bool finished = sa.frontier.empty() && sb.frontier.empty();
    r.verdict = finished && !sa.incomplete && !sb.incomplete ? SearchVerdict::Exhausted : SearchVerdict::Unknown;
    return r;
}

SearchVerdict reachable(const Term& source, const Term& target, const Stepper& steps, std::size_t depth,
                        std::size_t max_terms) {
    if (alpha_eq(source, target)) return SearchVerdict::Found;
    std::string goal = alpha_key(target);
    Side s(source);
    for (std::size_t d = 0; d < depth && !s.frontier.empty(); ++d) {
        for (auto& [k, t] : s.expand(steps))
            if (k == goal) return SearchVerdict::Found;
        if (s.seen.size() > max_terms) return SearchVerdict::Unknown;
    }
    return s.frontier.empty() && !s.incomplete ? SearchVerdict::Exhausted : SearchVerdict::Unknown;
}

std::string to_string(ZVerdict::Kind k) {
    switch (k) {
        case ZVerdict::Kind::Holds: return "Holds";
        case ZVerdict::Kind::Fails: return "Fails";
        case ZVerdict::Kind::Unknown: return "Unknown";
    }
    return "?";
}

ZVerdict z_property_check(const Term& m, const Term& n, Rule rule, const UnsolvabilityOracle& oracle,
                          std::size_t depth, OmegaChoice choice) {
    ZVerdict v;
    auto all = bvomv_steps(m, oracle, choice);
    bool legal = false;
    for (const auto& s : all.steps)
        if (s.rule == rule && alpha_eq(s.term, n)) legal = true;
    if (!legal) {
        if (all.unknown) {
            v.detail = "step not confirmed by the oracle";
            return v;
        }
        throw std::invalid_argument("not a " + to_string(rule) + " step: " + render(m) + " -> " + render(n));
    }
    auto mo = complete_omega_development(m, oracle, choice);
    auto no = complete_omega_development(n, oracle, choice);
    if (!mo || !no) {
        v.detail = "omega-normal form not settled by the oracle";
        return v;
    }
    Stepper st = [&](const Term& t) { return bvomv_steps(t, oracle, choice); };
    auto r1 = reachable(n, *mo, st, depth);
    auto r2 = reachable(*mo, *no, st, depth);
    v.detail = "n ->> m^O: " + to_string(r1) + "; m^O ->> n^O: " + to_string(r2) + "; m^O = " + render(*mo) +
               "; n^O = " + render(*no);
    if (r1 == SearchVerdict::Found && r2 == SearchVerdict::Found) {
        v.kind = ZVerdict::Kind::Holds;
    } else if (r1 == SearchVerdict::Exhausted || r2 == SearchVerdict::Exhausted) {
        v.kind = ZVerdict::Kind::Fails;
    }
    return v;
}

std::string to_string(VEquality::Kind k) {
    switch (k) {
        case VEquality::Kind::Provable: return "Provable";
        case VEquality::Kind::Refuted: return "Refuted";
        case VEquality::Kind::Unknown: return "Unknown";
    }
    return "?";
}

VEquality v_theory_equal(const Term& a, const Term& b, const UnsolvabilityOracle& oracle, std::size_t fuel,
                         OmegaChoice choice) {
    VEquality v;
    if (alpha_eq(a, b)) {
        v.kind = VEquality::Kind::Provable;
        v.evidence = "alpha-equivalent";
        return v;
    }
    auto ra = reduce(a, Strategy::vno, fuel);
    auto rb = reduce(b, Strategy::vno, fuel);
    if (ra.outcome == Outcome::NormalForm && rb.outcome == Outcome::NormalForm) {
        bool same = alpha_eq(ra.final_term(), rb.final_term());
        v.kind = same ? VEquality::Kind::Provable : VEquality::Kind::Refuted;
        v.evidence = (same ? "common betaV-normal form " : "distinct betaV-normal forms ") + render(ra.final_term()) +
                     (same ? "" : " and " + render(rb.final_term()));
        return v;
    }

    std::vector<Term> as{a}, bs{b};
    if (!ra.steps.empty()) as.push_back(ra.final_term());
    if (!rb.steps.empty()) bs.push_back(rb.final_term());
    for (const auto& x : as) {
        auto ox = omega_nf(x, oracle, choice);
        if (!ox) continue;
        for (const auto& y : bs) {
            auto oy = omega_nf(y, oracle, choice);
            if (oy && alpha_eq(*ox, *oy)) {
                v.kind = VEquality::Kind::Provable;
                v.evidence = "common omegaV-normal form " + render(*ox);
                return v;
            }
        }
    }

    Stepper st = [&](const Term& t) { return bvomv_steps(t, oracle, choice); };
    auto j = common_reduct(a, b, st, 8, std::min<std::size_t>(fuel, 5000));
    if (j.verdict == SearchVerdict::Found) {
        v.kind = VEquality::Kind::Provable;
        v.evidence = "common reduct " + render(*j.common);
    } else if (j.verdict == SearchVerdict::Exhausted) {
        v.kind = VEquality::Kind::Refuted;
        v.evidence = "reduct sets exhausted without a common element (" + std::to_string(j.explored) + " terms)";
    } else {
        v.evidence = "no common reduct within the search bound";
    }
    return v;
}

}  // namespace lamv
