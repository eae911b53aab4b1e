#include "lamv/golden.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lamv/classify.hpp"
#include "lamv/combinators.hpp"
#include "lamv/labelling.hpp"
#include "lamv/order.hpp"
#include "lamv/solvability.hpp"
#include "lamv/srs.hpp"
#include "lamv/strategy.hpp"
#include "lamv/theory_v.hpp"

namespace lamv {

namespace {

constexpr std::size_t kFuel = 10000;

Term P(const char* s) { return parse(s); }

struct Failure {
    std::string why;
};

void expect(bool ok, const std::string& why) {
    if (!ok) throw Failure{why};
}

std::string paths(const std::vector<Path>& ps) {
    std::string out = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "," : "") + (ps[i].is_root() ? "root" : ps[i].str());
    return out + "}";
}

// Lifts text and puts the given counts at the given positions.
LabeledTerm labelled(const std::string& text, std::vector<std::pair<const char*, std::uint64_t>> marks) {
    LabeledTerm t = lift(parse(text));
    for (auto& [p, c] : marks) {
        Path path(p);
        auto sub = labeled_subterm_at(t, path);
        if (!sub) throw std::logic_error("no subterm at " + path.str());
        t = labeled_replace_at(t, path, sub->with_label(c));
    }
    return t;
}

const char* kStuck = "(\\x.y)(x #DELTA)";
const char* kContext = "(\\x.(\\y.#I)(x x))[]";
const char* kMarked = "#I (\\x.\\y.x #OMEGA)";
const std::string kM = "(\\x.\\y.x #OMEGA)";
const std::string kIM = "(#I " + kM + ")";

void glossary() {
    struct Row {
        const char* name;
        Outcome k, v;
    };
    const Row rows[] = {
        {"I", Outcome::NormalForm, Outcome::NormalForm},     {"K", Outcome::NormalForm, Outcome::NormalForm},
        {"DELTA", Outcome::NormalForm, Outcome::NormalForm}, {"OMEGA", Outcome::CycleDetected, Outcome::CycleDetected},
        {"U", Outcome::CycleDetected, Outcome::NormalForm},  {"B", Outcome::CycleDetected, Outcome::NormalForm},
    };
    for (auto& r : rows) {
        Term t = *comb::lookup(r.name);
        auto k = reduce(t, Strategy::no, kFuel).outcome;
        auto v = reduce(t, Strategy::vno, kFuel).outcome;
        expect(k == r.k && v == r.v,
               std::string(r.name) + ": no gives " + to_string(k) + ", vno gives " + to_string(v));
    }
}

void stuck_classes() {
    auto cs = classify(P(kStuck));
    for (TermClass c : {TermClass::Block, TermClass::Stuck, TermClass::VNF, TermClass::BlockNF})
        expect(std::find(cs.begin(), cs.end(), c) != cs.end(), "missing " + to_string(c));
    expect(redexes(P(kStuck), Calculus::V).empty(), "a block has no βV-redex");
}

void orders() {
    struct Row {
        Term t;
        Ordinal n;
    };
    const Row rows[] = {{comb::Omega(), Ordinal::finite(0)}, {P("\\x.#OMEGA"), Ordinal::finite(1)},
                        {comb::U(), Ordinal::finite(1)},     {comb::Omega_n(3), Ordinal::finite(3)},
                        {comb::Omega_w(), Ordinal::omega()}};
    for (auto& r : rows) {
        auto v = order(r.t, 2000);
        expect(v.exact() && v.value == r.n, render_folded(r.t) + " has order " + v.str());
    }
}

void engine_trace() {
    auto rep = trace_report(parse_context(kContext), P(kMarked), Strategy::vno, 100, default_order_oracle(2000));
    expect(rep.trace.outcome == Outcome::NormalForm, "no normal form");
    expect(alpha_eq(erase(rep.trace.terms.back()), comb::I()), "final term is not I");
    expect(rep.max_count == 1, "maximum count " + std::to_string(rep.max_count));
    expect(rep.holds(), "count invariant violated");
    expect(rep.trace.terms.size() == 5, std::to_string(rep.trace.terms.size()) + " terms");
}

void displayed_trace() {
    const std::vector<LabeledTerm> want = {
        labelled("(\\x.(\\y.#I)(x x))" + kIM, {{"R", 0}}),
        labelled("(\\y.#I)(" + kIM + kIM + ")", {{"RL", 0}, {"RR", 0}}),
        labelled("(\\y.#I)(" + kM + kIM + ")", {{"RL", 0}, {"RR", 0}}),
        labelled("(\\y.#I)(" + kM + kM + ")", {{"RL", 0}, {"RR", 0}}),
        labelled("(\\y.#I)(\\y." + kM + " #OMEGA)", {{"R", 1}, {"RBL", 0}}),
        lift(comb::I()),
    };
    auto tr = labeled_reduce(select(parse_context(kContext), P(kMarked)), Strategy::vno, 100);
    std::size_t n = std::min(want.size(), tr.terms.size());
    for (std::size_t i = 0; i < n; ++i)
        expect(labeled_eq(tr.terms[i], want[i]),
               "reduct " + std::to_string(i) + " is " + render(tr.terms[i]) + ", displayed " + render(want[i]));
    expect(tr.terms.size() == want.size(), std::to_string(tr.terms.size()) + " terms against " +
                                               std::to_string(want.size()) + " displayed");
}

void standard_sequences() {
    auto seq = [](std::initializer_list<const char*> xs) {
        std::vector<Term> out;
        for (auto x : xs) out.push_back(parse(x));
        return out;
    };
    auto a = is_standard_sequence(
        seq({"(\\x.(\\y.z y)#I)((\\y.z y)#K)", "(\\x.(\\y.z y)#I)(z #K)", "(\\x.z #I)(z #K)"}));
    auto b = is_standard_sequence(
        seq({"(\\x.(\\y.z y)#I)((\\y.z y)#K)", "(\\x.z #I)((\\y.z y)#K)", "(\\x.z #I)(z #K)"}));
    expect(a.standard(), "first sequence rejected: " + a.explanation);
    expect(b.standard(), "second sequence rejected: " + b.explanation);
    auto rib = seq({"(\\x.(\\y.x)z)#I", "(\\x.x)#I", "#I"});
    expect(is_betav_step(rib[0], rib[1]) && is_betav_step(rib[1], rib[2]), "ribcage steps are not βV-steps");
    expect(is_standard_sequence(rib).kind == SrsResult::Kind::NotStandard, "ribcage sequence accepted");
}

void chest_ribcage() {
    Term t = P("\\x.(\\y.y((\\z.m1)x))x((\\t.m2)x)");
    auto ch = chest_redexes(t), rc = ribcage_redexes(t);
    expect(ch == std::vector<Path>{Path("BL"), Path("BR")}, "chest redexes " + paths(ch));
    expect(rc == std::vector<Path>{Path("BL"), Path("BLLBR"), Path("BR")}, "ribcage redexes " + paths(rc));
}

void head_spine() {
    Term t = P("\\x.(\\y.(\\z.x)m1)x((\\t.m2)x)");
    auto he = head_redexes(t), hs = head_spine_redexes(t);
    expect(he == std::vector<Path>{Path("BL")}, "head redexes " + paths(he));
    expect(hs == std::vector<Path>{Path("BL"), Path("BLLB")}, "head spine redexes " + paths(hs));
}

void witnesses() {
    auto pool = default_pool();
    auto t1 = certify_unsolvable(comb::T1(), 2000, pool);
    expect(t1.kind == Certification::Kind::SolvableWitness, "T1: " + t1.str());
    expect(alpha_eq(*t1.normal_form, P("(\\y.#DELTA)(z #I) #DELTA (z #I)")),
           "T1 normal form " + render(*t1.normal_form));
    for (const Term& t : {comb::T2(), P("\\x.#OMEGA"), comb::Omega()}) {
        auto c = certify_unsolvable(t, 2000, pool);
        expect(c.kind != Certification::Kind::SolvableWitness, render_folded(t) + " got a witness");
    }
}

void head_context() {
    auto h = head_context_from_function_context(parse_context("(\\x.[]) #K"), P("x (y z (y #I)) (#OMEGA t)"),
                                                P("y z (y #I)"), kFuel);
    Term want = P("\\w.w(\\w.w)(\\v2 w.w #I v2)");
    auto r = reduce(h.context.plug(P("x (y z (y #I)) (#OMEGA t)")), Strategy::no, kFuel);
    expect(r.outcome == Outcome::NormalForm, "plugged context has no normal form");
    expect(alpha_eq(r.final_term(), want), "normal form " + render(r.final_term()));
}

void target() {
    Term x = P("target");
    auto ops = solve_to_target(comb::K(), x, Calculus::K, kFuel);
    auto r = reduce(apply_all(comb::K(), ops), Strategy::no, kFuel);
    expect(r.outcome == Outcome::NormalForm && alpha_eq(r.final_term(), x), "K does not reach the target");
}

void negatives() {
    auto r = reduce(P("(\\x.(\\y.z)(x #DELTA))#DELTA"), Strategy::vno, kFuel);
    expect(r.outcome == Outcome::CycleDetected, "outcome " + to_string(r.outcome));
    for (auto& t : r.terms()) expect(!alpha_eq(t, P("z")), "reached z");
    expect(reduce(P("(\\x.#I)#OMEGA"), Strategy::vno, kFuel).outcome != Outcome::NormalForm,
           "(\\x.I)Ω normalises");
}

void theory() {
    auto o = make_cycle_oracle();
    auto a = v_theory_equal(P("\\x.#OMEGA"), P("\\x.(#I #I) #OMEGA"), o, 2000);
    expect(a.kind == VEquality::Kind::Provable, "λx.Ω against λx.(II)Ω: " + to_string(a.kind));
    auto b = v_theory_equal(comb::I(), comb::K(), o, 2000);
    expect(b.kind == VEquality::Kind::Refuted, "I against K: " + to_string(b.kind));
    auto c = v_theory_equal(comb::U(), P("\\x.#OMEGA"), o, 2000);
    expect(c.kind != VEquality::Kind::Provable, "U equated with λx.Ω");
    auto n = omega_nf(P("\\x.\\y.(#I #I) #OMEGA"), o);
    expect(n && alpha_eq(*n, comb::Omega_n(2)), "omega normal form of λxy.(II)Ω");
}

}  // namespace

std::vector<GoldenCase> run_golden_suite() {
    const std::vector<std::pair<const char*, std::function<void()>>> cases = {
        {"glossary normal forms under no and vno", glossary},
        {"classes of (\\x.y)(x #DELTA)", stuck_classes},
        {"orders of unsolvable terms", orders},
        {"labelled vno trace of (\\x.(\\y.I)(x x))(I (\\x y.x OMEGA))", engine_trace},
        {"displayed labelled reducts of the same trace", displayed_trace},
        {"standard and ribcage sequences", standard_sequences},
        {"chest and ribcage redexes", chest_ribcage},
        {"head and head spine redexes", head_spine},
        {"solvability witnesses", witnesses},
        {"head context from a function context", head_context},
        {"operands solving K for a target", target},
        {"block and substitutivity counterexamples", negatives},
        {"theory V equalities", theory},
    };
    std::vector<GoldenCase> out;
    for (auto& [name, run] : cases) {
        GoldenCase g{name, true, ""};
        try {
            run();
        } catch (const Failure& f) {
            g.pass = false;
            g.detail = f.why;
        } catch (const std::exception& e) {
            g.pass = false;
            g.detail = std::string("error: ") + e.what();
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace lamv
