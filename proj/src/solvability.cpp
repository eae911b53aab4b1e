#include "lamv/solvability.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lamv/combinators.hpp"
#include "lamv/strategy.hpp"

namespace lamv {

std::vector<Term> default_pool() {
    return {
        comb::I(),
        comb::K(),
        comb::Delta(),
        parse("(\\x.\\y.x) (\\x.x)"),
        parse("\\x.z (\\x.x)"),
        parse("\\x.(\\y.y) (z (\\x.\\y.x))"),
        parse("\\x.w x"),
        parse("\\x.\\y.w y x"),
    };
}

std::vector<Term> parse_pool(std::string_view text) {
    std::vector<Term> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == ';') continue;
        out.push_back(parse(line));
    }
    return out;
}

std::string Certification::str() const {
    switch (kind) {
        case Kind::SolvableWitness:
            return "SolvableWitness(" + render(*context) + ", " + render(*normal_form) + ")";
        case Kind::UnsolvableOfOrder:
            return "UnsolvableOfOrder(" + order.str() + ")";
        case Kind::Unknown:
            return "Unknown";
    }
    return "?";
}

namespace {

Context function_context(const std::vector<std::string>& binders, const std::vector<Term>& operands) {
    Context c = Context::hole();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) c = Context::abs(*it, c);
    for (const auto& n : operands) c = Context::app_left(c, n);
    return c;
}

std::vector<std::vector<std::string>> subsets_by_size(const std::vector<std::string>& names) {
    std::size_t k = std::min<std::size_t>(names.size(), 8);
    std::vector<std::vector<std::string>> out;
    for (std::size_t size = 0; size <= k; ++size) {
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
            std::vector<std::string> s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) s.push_back(names[i]);
            out.push_back(s);
        }
    }
    return out;
}

bool next_tuple(std::vector<std::size_t>& idx, std::size_t base) {
    for (std::size_t pos = idx.size(); pos-- > 0;) {
        if (++idx[pos] < base) return true;
        idx[pos] = 0;
    }
    return false;
}

}  // namespace

Certification certify_unsolvable(const Term& t, std::size_t fuel, const std::vector<Term>& pool,
                                 const CertifyOptions& opts) {
    Certification out;
    auto direct = reduce(t, Strategy::vno, fuel);
    if (direct.outcome == Outcome::NormalForm) {
        out.kind = Certification::Kind::SolvableWitness;
        out.context = Context::hole();
        out.normal_form = direct.final_term();
        return out;
    }

    out.order_evidence = order(t, fuel);
    const auto& ov = out.order_evidence;
    // A recurring residue under growing binders already excludes a normal form
    // for every function context.
    if (ov.exact() && ov.reason == OrderVerdict::Reason::PrefixCycle) {
        out.kind = Certification::Kind::UnsolvableOfOrder;
        out.order = ov.value;
        return out;
    }

    auto fv = free_vars(t);
    auto subsets = subsets_by_size(std::vector<std::string>(fv.begin(), fv.end()));
    for (std::size_t k = 0; k <= opts.max_operands; ++k) {
        if (k > 0 && pool.empty()) break;
        for (const auto& binders : subsets) {
            if (k == 0 && binders.empty()) continue;
            std::vector<std::size_t> idx(k, 0);
            do {
                std::vector<Term> operands;
                for (auto i : idx) operands.push_back(pool[i]);
                Context f = function_context(binders, operands);
                ++out.probes;
                auto tr = reduce(f.plug(t), Strategy::vno, opts.probe_fuel);
                if (tr.outcome == Outcome::NormalForm) {
                    out.kind = Certification::Kind::SolvableWitness;
                    out.context = f;
                    out.normal_form = tr.final_term();
                    return out;
                }
            } while (next_tuple(idx, pool.size()));
        }
    }

    if (ov.exact() && ov.reason == OrderVerdict::Reason::DivergentCycle) {
        out.kind = Certification::Kind::UnsolvableOfOrder;
        out.order = ov.value;
    }
    return out;
}

namespace {

struct NormalShape {
    std::vector<std::string> binders;
    Term head;
    std::size_t args;
};

NormalShape shape_of(const Term& nf) {
    NormalShape s{{}, nf, 0};
    Term cur = nf;
    while (cur.is_abs()) {
        s.binders.push_back(cur.name());
        cur = cur.body();
    }
    s.head = spine_head(cur);
    s.args = spine_args(cur).size();
    return s;
}

std::optional<Term> beta_normal_form(const Term& t, std::size_t fuel) {
    auto tr = reduce(t, Strategy::no, fuel);
    if (tr.outcome != Outcome::NormalForm) return std::nullopt;
    return tr.final_term();
}

// s reduces to x when its normal-order trace passes through x or both share
// a normal form.
bool reaches(const Term& s, const Term& x, std::size_t fuel) {
    auto tr = reduce(s, Strategy::no, fuel);
    for (const auto& t : tr.terms())
        if (alpha_eq(t, x)) return true;
    if (tr.outcome != Outcome::NormalForm) return false;
    auto nx = beta_normal_form(x, fuel);
    return nx && alpha_eq(*nx, tr.final_term());
}

}  // namespace

std::vector<Term> solve_to_target(const Term& m, const Term& x, Calculus calc, std::size_t fuel) {
    if (calc != Calculus::K) throw std::invalid_argument("solve_to_target is defined for calculus K");
    if (!is_closed(m)) throw std::invalid_argument("solve_to_target needs a closed term");
    auto nf = beta_normal_form(m, fuel);
    if (!nf) throw NoNormalForm("no beta-normal form within fuel: " + render(m));
    NormalShape s = shape_of(*nf);
    std::size_t i = s.binders.size();
    while (i > 0 && s.binders[i - 1] != s.head.name()) --i;
    if (i == 0) throw std::logic_error("closed normal form with a free head variable");
    std::vector<Term> ops(s.binders.size(), comb::I());
    ops[i - 1] = Term::app(comb::K_m(static_cast<unsigned>(s.args)), x);
    if (!reaches(apply_all(m, ops), x, fuel)) throw std::logic_error("solving operands failed verification");
    return ops;
}

std::optional<Context> function_context_for_target(const Term& m, const Term& x, std::size_t fuel) {
    auto nf = beta_normal_form(m, fuel);
    if (!nf) return std::nullopt;
    NormalShape s = shape_of(*nf);
    Term kx = Term::app(comb::K_m(static_cast<unsigned>(s.args)), x);
    std::size_t i = s.binders.size();
    while (i > 0 && s.binders[i - 1] != s.head.name()) --i;
    Context f = Context::hole();
    if (i == 0) {
        f = Context::app_left(Context::abs(s.head.name(), f), kx);
        for (std::size_t j = 0; j < s.binders.size(); ++j) f = Context::app_left(f, comb::I());
    } else {
        for (std::size_t j = 0; j < s.binders.size(); ++j) f = Context::app_left(f, j + 1 == i ? kx : comb::I());
    }
    if (!reaches(f.plug(m), x, fuel)) throw std::logic_error("function context failed verification");
    return f;
}

namespace {

void count_operands(const Term& t, std::vector<std::string>& bound, std::map<std::string, unsigned>& counts) {
    switch (t.kind()) {
        case TermKind::Var:
            if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) counts[t.name()];
            break;
        case TermKind::Abs:
            bound.push_back(t.name());
            count_operands(t.body(), bound, counts);
            bound.pop_back();
            break;
        case TermKind::App: {
            Term h = spine_head(t);
            auto args = spine_args(t);
            if (h.is_var()) {
                if (std::find(bound.begin(), bound.end(), h.name()) == bound.end()) {
                    auto& c = counts[h.name()];
                    c = std::max(c, static_cast<unsigned>(args.size()));
                }
            } else {
                count_operands(h, bound, counts);
            }
            for (const auto& a : args) count_operands(a, bound, counts);
            break;
        }
    }
}

// λv1...vk w.w v1 ... vk
Term tuple_term(unsigned k) {
    std::vector<std::string> binders;
    std::vector<Term> args;
    for (unsigned i = 1; i <= k; ++i) {
        binders.push_back("v" + std::to_string(i));
        args.push_back(Term::var(binders.back()));
    }
    binders.push_back("w");
    return abstract(binders, apply_all(Term::var("w"), args));
}

}  // namespace

HeadContext head_context_from_function_context(const Context& f, const Term& m, const Term& n, std::size_t fuel) {
    // f must be (λx1...xn.[]) N1 ... Nk
    const Path& hp = f.hole_path();
    std::size_t k = 0;
    while (k < hp.length() && hp[k] == 'L') ++k;
    for (std::size_t i = k; i < hp.length(); ++i)
        if (hp[i] != 'B') throw std::invalid_argument("not a function context: " + render(f));
    std::vector<Term> operands = spine_args(f.frame());
    if (operands.size() != k) throw std::invalid_argument("not a function context: " + render(f));
    std::vector<std::string> xs = f.binders_over_hole();

    if (!n.in(TermClass::NF)) throw std::invalid_argument("target is not a beta-normal form: " + render(n));
    Term fm = f.plug(m);
    auto nf = beta_normal_form(fm, fuel);
    if (!nf || !alpha_eq(*nf, n)) throw std::invalid_argument("F[M] does not reduce to the target");

    HeadContext out{Context::hole(), n, {}, {}, {}};
    out.free_of_target = free_vars_ordered(n);
    auto fv_n = free_vars(n);
    for (const auto& v : free_vars_ordered(fm))
        if (!fv_n.count(v)) out.extra_vars.push_back(v);

    std::vector<std::string> bound;
    std::map<std::string, unsigned> counts;
    count_operands(n, bound, counts);

    std::vector<Term> tuples;
    for (const auto& y : out.free_of_target) {
        out.operand_counts.push_back(counts[y]);
        tuples.push_back(tuple_term(counts[y]));
    }

    auto close = [&](Term t) {
        for (std::size_t i = 0; i < out.free_of_target.size(); ++i) t = substitute(tuples[i], out.free_of_target[i], t);
        for (const auto& e : out.extra_vars) t = substitute(comb::I(), e, t);
        return t;
    };

    std::vector<std::string> binders = out.free_of_target;
    binders.insert(binders.end(), out.extra_vars.begin(), out.extra_vars.end());
    binders.insert(binders.end(), xs.begin(), xs.end());
    Context h = Context::hole();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) h = Context::abs(*it, h);
    for (const auto& t : tuples) h = Context::app_left(h, t);
    for (std::size_t i = 0; i < out.extra_vars.size(); ++i) h = Context::app_left(h, comb::I());
    for (const auto& op : operands) h = Context::app_left(h, close(op));
    out.context = h;

    auto got = beta_normal_form(h.plug(m), fuel);
    auto want = beta_normal_form(close(n), fuel);
    if (!got || !want || !alpha_eq(*got, *want)) throw std::logic_error("head context failed verification");
    if (!is_closed(*got)) throw std::logic_error("head context result is not closed");
    out.closed_normal_form = *got;
    return out;
}

std::string to_string(GenericityRow::Verdict v) {
    switch (v) {
        case GenericityRow::Verdict::Holds: return "Holds";
        case GenericityRow::Verdict::Violated: return "Violated";
        case GenericityRow::Verdict::Unverified: return "Unverified";
        case GenericityRow::Verdict::BelowOrderFailed: return "BelowOrderFailed";
        case GenericityRow::Verdict::BelowOrderReached: return "BelowOrderReached";
    }
    return "?";
}

bool GenericityReport::violated() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const GenericityRow& r) { return r.verdict == GenericityRow::Verdict::Violated; });
}

bool GenericityReport::unverified() const {
    return !applicable || std::any_of(rows.begin(), rows.end(), [](const GenericityRow& r) {
        return r.verdict == GenericityRow::Verdict::Unverified;
    });
}

GenericityReport genericity_experiment(const Context& c, const Term& m, Ordinal n0, const std::vector<Term>& xs,
                                       Calculus calc, std::size_t fuel) {
    Strategy s = calc == Calculus::V ? Strategy::vno : Strategy::no;
    GenericityReport rep;
    auto base = reduce(c.plug(m), s, fuel);
    if (base.outcome != Outcome::NormalForm) return rep;
    rep.applicable = true;
    rep.normal_form = base.final_term();

    for (const auto& x : xs) {
        GenericityRow row{x, {}, GenericityRow::Verdict::Unverified, std::nullopt};
        auto tr = reduce(c.plug(x), s, fuel);
        bool reached = tr.outcome == Outcome::NormalForm && alpha_eq(tr.final_term(), *rep.normal_form);
        if (tr.outcome == Outcome::NormalForm) row.result = tr.final_term();

        bool expected = true;
        bool settled = true;
        if (calc == Calculus::V) {
            row.order = order(x, fuel);
            if (row.order.exact()) {
                expected = row.order.value >= n0;
            } else if (row.order.kind == OrderVerdict::Kind::AtLeast && row.order.value >= n0) {
                expected = true;
            } else {
                settled = false;
            }
        }
        if (!settled) {
            row.verdict = GenericityRow::Verdict::Unverified;
        } else if (!expected) {
            row.verdict = reached ? GenericityRow::Verdict::BelowOrderReached : GenericityRow::Verdict::BelowOrderFailed;
        } else if (reached) {
            row.verdict = GenericityRow::Verdict::Holds;
        } else if (tr.outcome == Outcome::FuelExhausted) {
            row.verdict = GenericityRow::Verdict::Unverified;
        } else {
            row.verdict = GenericityRow::Verdict::Violated;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace lamv
