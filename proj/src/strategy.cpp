#include "lamv/strategy.hpp"

#include <stdexcept>

namespace lamv {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::cbn: return "cbn";
        case Strategy::head: return "head";
        case Strategy::no: return "no";
        case Strategy::cbv: return "cbv";
        case Strategy::chest: return "chest";
        case Strategy::ribcage: return "ribcage";
        case Strategy::vno: return "vno";
        case Strategy::gamma_p: return "gamma_p";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& s) {
    for (auto st : all_strategies())
        if (to_string(st) == s) return st;
    return std::nullopt;
}

std::vector<Strategy> all_strategies() {
    return {Strategy::cbn, Strategy::head, Strategy::no,      Strategy::cbv,
            Strategy::chest, Strategy::ribcage, Strategy::vno, Strategy::gamma_p};
}

Calculus calculus_of(Strategy s) {
    switch (s) {
        case Strategy::cbn:
        case Strategy::head:
        case Strategy::no:
            return Calculus::K;
        default:
            return Calculus::V;
    }
}

std::string to_string(Rule r) {
    switch (r) {
        case Rule::betaK: return "betaK";
        case Rule::betaV: return "betaV";
        case Rule::omegaV: return "omegaV";
    }
    return "?";
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::NormalForm: return "NormalForm";
        case Outcome::FuelExhausted: return "FuelExhausted";
        case Outcome::CycleDetected: return "CycleDetected";
    }
    return "?";
}

namespace {

bool descend(const Term& t, char d, std::string& p, bool (*f)(const Term&, std::string&)) {
    p.push_back(d);
    const Term& child = d == 'B' ? t.body() : d == 'L' ? t.fun() : t.arg();
    if (f(child, p)) return true;
    p.pop_back();
    return false;
}

// BV[] ::= [] | BV[] M | VWNF BV[]
bool find_bv(const Term& t, std::string& p) {
    if (!t.is_app()) return false;
    if (!t.fun().in(TermClass::VWNF)) return descend(t, 'L', p, find_bv);
    if (!t.arg().in(TermClass::VWNF)) return descend(t, 'R', p, find_bv);
    return is_betav_redex(t);
}

// CH[] ::= [] | BV[] M | VWNF BV[] | λx.CH[]
bool find_chest(const Term& t, std::string& p) {
    if (t.is_abs()) return descend(t, 'B', p, find_chest);
    return find_bv(t, p);
}

// RC[] ::= [] | RC[] M | VWNF BV[] | λx.RC[], contracting only redexes
// whose body is already in chnf.
bool find_rc(const Term& t, std::string& p) {
    if (t.is_abs()) return descend(t, 'B', p, find_rc);
    if (!t.is_app()) return false;
    if (descend(t, 'L', p, find_rc)) return true;
    if (!t.fun().in(TermClass::VWNF)) return false;
    if (!t.arg().in(TermClass::VWNF)) return descend(t, 'R', p, find_bv);
    return is_betav_redex(t) && t.fun().body().in(TermClass::CHNF);
}

// BN[] ::= [] | BN[] M
bool find_bn(const Term& t, std::string& p) {
    if (!t.is_app()) return false;
    if (t.fun().is_abs()) return true;
    return descend(t, 'L', p, find_bn);
}

// HR[] ::= [] | BN[] M | λx.HR[]
bool find_head(const Term& t, std::string& p) {
    if (t.is_abs()) return descend(t, 'B', p, find_head);
    return find_bn(t, p);
}

// Leftmost maximal subterm outside `normal`. With blocks_right_first the
// operand of a block is searched before its operator.
bool find_active(const Term& t, TermClass normal, bool blocks_right_first, std::string& p) {
    if (!t.in(normal)) return true;
    auto sub = [&](char d, const Term& s) {
        p.push_back(d);
        if (find_active(s, normal, blocks_right_first, p)) return true;
        p.pop_back();
        return false;
    };
    if (t.is_abs()) return sub('B', t.body());
    if (!t.is_app()) return false;
    if (blocks_right_first && t.fun().is_abs()) return sub('R', t.arg()) || sub('L', t.fun());
    return sub('L', t.fun()) || sub('R', t.arg());
}

bool find_in_component(const Term& t, TermClass normal, bool right_first, bool (*inner)(const Term&, std::string&),
                       std::string& p) {
    if (!find_active(t, normal, right_first, p)) return false;
    auto comp = subterm_at(t, Path(p));
    return inner(*comp, p);
}

}  // namespace

std::optional<Path> redex_path(const Term& t, Strategy s) {
    std::string p;
    bool found = false;
    switch (s) {
        case Strategy::cbn: found = find_bn(t, p); break;
        case Strategy::head: found = find_head(t, p); break;
        case Strategy::no: found = find_in_component(t, TermClass::HNF, false, find_head, p); break;
        case Strategy::cbv: found = find_bv(t, p); break;
        case Strategy::chest: found = find_chest(t, p); break;
        case Strategy::ribcage: found = find_rc(t, p); break;
        case Strategy::vno: found = find_in_component(t, TermClass::CHNF, false, find_chest, p); break;
        case Strategy::gamma_p: found = find_in_component(t, TermClass::CHNF, true, find_chest, p); break;
    }
    if (!found) return std::nullopt;
    return Path(p);
}

std::optional<Decomposition> decompose(const Term& t, Strategy s) {
    auto p = redex_path(t, s);
    if (!p) return std::nullopt;
    return Decomposition{Context::at(t, *p), *subterm_at(t, *p), *p};
}

Term contract(const Term& t, const Path& p, Calculus calc) {
    auto r = subterm_at(t, p);
    if (!r || !is_beta_redex(*r)) throw std::logic_error("no beta-redex at path '" + p.str() + "'");
    if (calc == Calculus::V && !r->arg().in(TermClass::Val))
        throw std::logic_error("operand at path '" + p.str() + "' is not a value");
    const Term& f = r->fun();
    return replace_at(t, p, substitute(r->arg(), f.name(), f.body()));
}

std::optional<Step> step(const Term& t, Strategy s) {
    auto p = redex_path(t, s);
    if (!p) return std::nullopt;
    Calculus c = calculus_of(s);
    return Step{contract(t, *p, c), *p, c == Calculus::V ? Rule::betaV : Rule::betaK};
}

std::vector<Term> ReductionTrace::terms() const {
    std::vector<Term> out{initial};
    for (const auto& s : steps) out.push_back(s.term);
    return out;
}

std::optional<std::size_t> CycleTable::visit(const Term& t) {
    auto& bucket = by_hash_[t.shape_hash()];
    for (std::size_t i : bucket)
        if (alpha_eq(seen_[i], t)) return i;
    bucket.push_back(seen_.size());
    seen_.push_back(t);
    return std::nullopt;
}

ReductionTrace reduce(const Term& t, Strategy s, std::size_t fuel, const ReduceOptions& opts) {
    ReductionTrace tr{t, {}, Outcome::NormalForm, 0, false};
    CycleTable cycles;
    if (opts.detect_cycles) cycles.visit(t);
    Term cur = t;
    for (;;) {
        auto p = redex_path(cur, s);
        if (!p) {
            tr.outcome = Outcome::NormalForm;
            return tr;
        }
        if (tr.steps.size() >= fuel) {
            tr.outcome = Outcome::FuelExhausted;
            return tr;
        }
        Calculus c = calculus_of(s);
        cur = contract(cur, *p, c);
        tr.steps.push_back({c == Calculus::V ? Rule::betaV : Rule::betaK, *p, cur});
        if (opts.detect_cycles) {
            if (auto i = cycles.visit(cur)) {
                tr.outcome = Outcome::CycleDetected;
                tr.cycle_index = *i;
                return tr;
            }
        }
        if (cur.size() > opts.max_size) {
            tr.outcome = Outcome::FuelExhausted;
            tr.size_limited = true;
            return tr;
        }
    }
}

}  // namespace lamv
