#include "lamv/labelling.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace lamv {

std::string label_str(const Label& l) { return l ? std::to_string(*l) : "e"; }

LabeledTerm LabeledTerm::var(std::string name, Label l) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Var;
    n->name = std::move(name);
    n->label = l;
    return LabeledTerm(std::move(n));
}

LabeledTerm LabeledTerm::abs(std::string binder, LabeledTerm body, Label l) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Abs;
    n->name = std::move(binder);
    n->a = std::move(body);
    n->label = l;
    return LabeledTerm(std::move(n));
}

LabeledTerm LabeledTerm::app(LabeledTerm fun, LabeledTerm arg, Label l) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::App;
    n->a = std::move(fun);
    n->b = std::move(arg);
    n->label = l;
    return LabeledTerm(std::move(n));
}

LabeledTerm LabeledTerm::with_label(Label l) const {
    auto n = std::make_shared<Node>(*node_);
    n->label = l;
    return LabeledTerm(std::move(n));
}

LabeledTerm lift(const Term& t) {
    switch (t.kind()) {
        case TermKind::Var: return LabeledTerm::var(t.name());
        case TermKind::Abs: return LabeledTerm::abs(t.name(), lift(t.body()));
        case TermKind::App: return LabeledTerm::app(lift(t.fun()), lift(t.arg()));
    }
    throw std::logic_error("bad term");
}

Term erase(const LabeledTerm& t) {
    switch (t.kind()) {
        case TermKind::Var: return Term::var(t.name());
        case TermKind::Abs: return Term::abs(t.name(), erase(t.body()));
        case TermKind::App: return Term::app(erase(t.fun()), erase(t.arg()));
    }
    throw std::logic_error("bad term");
}

LabeledTerm select(const Context& c, const Term& m) {
    LabeledTerm frame = lift(c.frame());
    return labeled_replace_at(frame, c.hole_path(), lift(m).with_label(0));
}

namespace {

void render_rec(const LabeledTerm& t, std::string& out);

void render_bare(const LabeledTerm& t, std::string& out) {
    switch (t.kind()) {
        case TermKind::Var:
            out += t.name();
            break;
        case TermKind::Abs:
            out += '\\';
            out += t.name();
            out += '.';
            render_rec(t.body(), out);
            break;
        case TermKind::App: {
            const auto& f = t.fun();
            if (f.is_abs() && !f.label()) {
                out += '(';
                render_rec(f, out);
                out += ')';
            } else {
                render_rec(f, out);
            }
            out += ' ';
            const auto& a = t.arg();
            if (a.is_var() || a.label()) {
                render_rec(a, out);
            } else {
                out += '(';
                render_rec(a, out);
                out += ')';
            }
            break;
        }
    }
}

void render_rec(const LabeledTerm& t, std::string& out) {
    if (!t.label()) return render_bare(t, out);
    if (t.is_var()) {
        out += t.name();
    } else {
        out += '(';
        render_bare(t, out);
        out += ')';
    }
    out += '^';
    out += std::to_string(*t.label());
}

void key_rec(const LabeledTerm& t, std::vector<const std::string*>& env, std::string& out) {
    if (t.label()) out += "^" + std::to_string(*t.label()) + " ";
    switch (t.kind()) {
        case TermKind::Var: {
            long idx = -1;
            for (std::size_t i = env.size(); i-- > 0;)
                if (*env[i] == t.name()) {
                    idx = static_cast<long>(env.size() - 1 - i);
                    break;
                }
            out += idx >= 0 ? "#" + std::to_string(idx) : "$" + t.name();
            out += ' ';
            break;
        }
        case TermKind::Abs:
            out += "\\ ";
            env.push_back(&t.name());
            key_rec(t.body(), env, out);
            env.pop_back();
            break;
        case TermKind::App:
            out += "@ ";
            key_rec(t.fun(), env, out);
            key_rec(t.arg(), env, out);
            break;
    }
}

std::string labeled_key(const LabeledTerm& t) {
    std::vector<const std::string*> env;
    std::string out;
    key_rec(t, env, out);
    return out;
}

bool occurs_free_l(const std::string& x, const LabeledTerm& t) {
    switch (t.kind()) {
        case TermKind::Var: return t.name() == x;
        case TermKind::Abs: return t.name() != x && occurs_free_l(x, t.body());
        case TermKind::App: return occurs_free_l(x, t.fun()) || occurs_free_l(x, t.arg());
    }
    return false;
}

std::size_t labeled_size(const LabeledTerm& t) {
    switch (t.kind()) {
        case TermKind::Var: return 1;
        case TermKind::Abs: return 1 + labeled_size(t.body());
        case TermKind::App: return 1 + labeled_size(t.fun()) + labeled_size(t.arg());
    }
    return 1;
}

// Label of the substituted term at a variable occurrence. A count on the
// occurrence is carried over when the substituted term has none.
Label join(const Label& subject, const Label& occurrence, ConflictPolicy policy, bool* conflict) {
    if (!occurrence || subject == occurrence) return subject;
    if (!subject) return occurrence;
    if (policy == ConflictPolicy::Throw)
        throw LabelConflict("substituted term has count " + label_str(subject) + ", occurrence has count " +
                            label_str(occurrence));
    if (conflict) *conflict = true;
    return subject;
}

struct LSubstituter {
    const LabeledTerm& n;
    const std::string& x;
    std::set<std::string> fv_n;
    ConflictPolicy policy;
    bool* conflict;

    LabeledTerm run(const LabeledTerm& m) {
        switch (m.kind()) {
            case TermKind::Var:
                if (m.name() != x) return m;
                {
                    Label l = join(n.label(), m.label(), policy, conflict);
                    return l == n.label() ? n : n.with_label(l);
                }
            case TermKind::Abs: {
                const std::string& y = m.name();
                if (y == x || !occurs_free_l(x, m.body())) return m;
                if (fv_n.count(y)) {
                    std::set<std::string> avoid = fv_n;
                    auto fb = free_vars(erase(m.body()));
                    avoid.insert(fb.begin(), fb.end());
                    std::string z = fresh_name(y, avoid);
                    LabeledTerm renamed = labeled_substitute(LabeledTerm::var(z), y, m.body(), policy, conflict);
                    return LabeledTerm::abs(z, run(renamed), m.label());
                }
                LabeledTerm b = run(m.body());
                return b.same_node(m.body()) ? m : LabeledTerm::abs(y, b, m.label());
            }
            case TermKind::App: {
                LabeledTerm f = run(m.fun());
                LabeledTerm a = run(m.arg());
                if (f.same_node(m.fun()) && a.same_node(m.arg())) return m;
                return LabeledTerm::app(f, a, m.label());
            }
        }
        return m;
    }
};

void traces_rec(const LabeledTerm& t, const Path& p, std::vector<std::pair<Path, LabeledTerm>>& out) {
    if (t.label()) out.emplace_back(p, t);
    if (t.is_abs()) {
        traces_rec(t.body(), p.child('B'), out);
    } else if (t.is_app()) {
        traces_rec(t.fun(), p.child('L'), out);
        traces_rec(t.arg(), p.child('R'), out);
    }
}

LabeledTerm replace_rec(const LabeledTerm& t, const Path& p, std::size_t i, const LabeledTerm& s) {
    if (i == p.length()) return s;
    char d = p[i];
    if (d == 'B' && t.is_abs()) return LabeledTerm::abs(t.name(), replace_rec(t.body(), p, i + 1, s), t.label());
    if (d == 'L' && t.is_app()) return LabeledTerm::app(replace_rec(t.fun(), p, i + 1, s), t.arg(), t.label());
    if (d == 'R' && t.is_app()) return LabeledTerm::app(t.fun(), replace_rec(t.arg(), p, i + 1, s), t.label());
    throw std::invalid_argument("path " + p.str() + " does not address a subterm");
}

}  // namespace

std::string render(const LabeledTerm& t) {
    std::string out;
    render_rec(t, out);
    return out;
}

bool labeled_eq(const LabeledTerm& a, const LabeledTerm& b) { return labeled_key(a) == labeled_key(b); }

std::optional<LabeledTerm> labeled_subterm_at(const LabeledTerm& t, const Path& p) {
    LabeledTerm cur = t;
    for (std::size_t i = 0; i < p.length(); ++i) {
        char d = p[i];
        if (d == 'B' && cur.is_abs()) {
            cur = cur.body();
        } else if (d == 'L' && cur.is_app()) {
            cur = cur.fun();
        } else if (d == 'R' && cur.is_app()) {
            cur = cur.arg();
        } else {
            return std::nullopt;
        }
    }
    return cur;
}

LabeledTerm labeled_replace_at(const LabeledTerm& t, const Path& p, const LabeledTerm& s) {
    return replace_rec(t, p, 0, s);
}

std::vector<std::pair<Path, LabeledTerm>> traces(const LabeledTerm& t) {
    std::vector<std::pair<Path, LabeledTerm>> out;
    traces_rec(t, Path(), out);
    return out;
}

std::optional<std::uint64_t> max_count(const LabeledTerm& t) {
    std::optional<std::uint64_t> best;
    for (auto& [p, s] : traces(t)) best = std::max(best.value_or(0), *s.label());
    return best;
}

LabeledTerm labeled_substitute(const LabeledTerm& n, const std::string& x, const LabeledTerm& m, ConflictPolicy policy,
                               bool* conflict) {
    LSubstituter s{n, x, free_vars(erase(n)), policy, conflict};
    return s.run(m);
}

LabeledTerm labeled_contract(const LabeledTerm& t, const Path& p, Calculus calc, ConflictPolicy policy,
                             bool* conflict) {
    auto r = labeled_subterm_at(t, p);
    if (!r || !r->is_app() || !r->fun().is_abs()) throw std::logic_error("no beta-redex at path '" + p.str() + "'");
    const LabeledTerm& abs = r->fun();
    const LabeledTerm& operand = r->arg();
    if (calc == Calculus::V && operand.is_app())
        throw std::logic_error("operand at path '" + p.str() + "' is not a value");

    // ((λx.C^l1)^l2 N)^l3
    std::vector<std::uint64_t> alternatives;
    if (abs.body().label()) alternatives.push_back(*abs.body().label());
    if (abs.label()) alternatives.push_back(*abs.label() + 1);
    if (r->label()) alternatives.push_back(*r->label());
    Label body_label;
    if (!alternatives.empty()) {
        body_label = alternatives.front();
        bool agree = std::all_of(alternatives.begin(), alternatives.end(),
                                 [&](std::uint64_t c) { return c == alternatives.front(); });
        if (!agree) {
            if (policy == ConflictPolicy::Throw) {
                std::string msg = "rule alternatives disagree at path '" + p.str() + "':";
                for (auto c : alternatives) msg += " " + std::to_string(c);
                throw LabelConflict(msg);
            }
            if (conflict) *conflict = true;
        }
    }
    LabeledTerm body = abs.body().label() == body_label ? abs.body() : abs.body().with_label(body_label);
    return labeled_replace_at(t, p, labeled_substitute(operand, abs.name(), body, policy, conflict));
}

std::optional<LabeledStep> labeled_step(const LabeledTerm& t, Strategy s, ConflictPolicy policy) {
    auto p = redex_path(erase(t), s);
    if (!p) return std::nullopt;
    bool conflict = false;
    LabeledTerm next = labeled_contract(t, *p, calculus_of(s), policy, &conflict);
    return LabeledStep{next, *p, conflict};
}

LabeledTrace labeled_reduce(const LabeledTerm& t, Strategy s, std::size_t fuel, ConflictPolicy policy,
                            std::size_t max_size) {
    LabeledTrace tr;
    tr.terms.push_back(t);
    std::unordered_map<std::string, std::size_t> seen;
    seen.emplace(labeled_key(t), 0);
    for (;;) {
        const LabeledTerm& cur = tr.terms.back();
        auto p = redex_path(erase(cur), s);
        if (!p) {
            tr.outcome = Outcome::NormalForm;
            return tr;
        }
        if (tr.paths.size() >= fuel) {
            tr.outcome = Outcome::FuelExhausted;
            return tr;
        }
        bool conflict = false;
        LabeledTerm next = labeled_contract(cur, *p, calculus_of(s), policy, &conflict);
        if (conflict) ++tr.conflicts;
        tr.terms.push_back(next);
        tr.paths.push_back(*p);
        auto [it, fresh] = seen.emplace(labeled_key(next), tr.terms.size() - 1);
        if (!fresh) {
            tr.outcome = Outcome::CycleDetected;
            tr.cycle_index = it->second;
            return tr;
        }
        if (labeled_size(next) > max_size) {
            tr.outcome = Outcome::FuelExhausted;
            return tr;
        }
    }
}

TraceReport trace_report(const Context& c, const Term& m, Strategy s, std::size_t fuel, const OrderOracle& oracle) {
    OrderVerdict mv = oracle(m);
    if (!mv.exact()) throw std::invalid_argument("order of the marked term is not certified: " + mv.str());
    TraceReport rep;
    rep.n0 = mv.value;

    std::map<std::string, OrderVerdict> memo;
    auto order_of = [&](const Term& t) -> const OrderVerdict& {
        auto key = alpha_key(t);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, oracle(t)).first;
        return it->second;
    };

    // With n0 = ω every count satisfies the invariant, so disagreeing
    // alternatives are not breaches there.
    auto policy = rep.n0.is_omega() ? ConflictPolicy::FirstBranch : ConflictPolicy::Throw;
    LabeledTerm start = select(c, m);
    try {
        rep.trace = labeled_reduce(start, s, fuel, policy);
    } catch (const LabelConflict& e) {
        // replay up to the failing step so the report still shows the prefix
        rep.trace.terms.push_back(start);
        for (;;) {
            try {
                auto st = labeled_step(rep.trace.terms.back(), s, policy);
                if (!st || rep.trace.paths.size() >= fuel) break;
                rep.trace.terms.push_back(st->term);
                rep.trace.paths.push_back(st->path);
            } catch (const LabelConflict& inner) {
                rep.violations.push_back({rep.trace.terms.size() - 1, Path(), 0,
                                          render(rep.trace.terms.back()), inner.what()});
                break;
            }
        }
        rep.trace.outcome = Outcome::FuelExhausted;
    }

    for (std::size_t i = 0; i < rep.trace.terms.size(); ++i) {
        for (auto& [p, sub] : traces(rep.trace.terms[i])) {
            std::uint64_t count = *sub.label();
            rep.any_count = true;
            rep.max_count = std::max(rep.max_count, count);
            ++rep.checks;
            auto expected = rep.n0.minus(count);
            if (!expected) {
                rep.violations.push_back({i, p, count, render(sub), "count exceeds the order of the marked term"});
                continue;
            }
            const OrderVerdict& ov = order_of(erase(sub));
            if (!ov.exact()) {
                ++rep.unverified;
                continue;
            }
            if (ov.value != *expected)
                rep.violations.push_back({i, p, count, render(sub),
                                          "order " + ov.value.str() + " but expected " + expected->str()});
        }
    }
    return rep;
}

}  // namespace lamv
