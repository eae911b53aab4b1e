#include "doctest.h"
#include "gen.hpp"
#include "lamv/combinators.hpp"
#include "lamv/labelling.hpp"
#include "lamv/order.hpp"

using namespace lamv;

namespace {

Term P(const char* s) { return parse(s); }

// Lifts t and sets the given counts at the given paths.
LabeledTerm labelled(const char* text, std::vector<std::pair<const char*, std::uint64_t>> marks) {
    LabeledTerm t = lift(parse(text));
    for (auto& [p, c] : marks) {
        Path path(p);
        auto sub = labeled_subterm_at(t, path);
        REQUIRE(sub.has_value());
        t = labeled_replace_at(t, path, sub->with_label(c));
    }
    return t;
}

const char* kM = "\\x.\\y.x #OMEGA";

}  // namespace

TEST_CASE("lift, select and erase") {
    Term t = P("(\\x.\\y.x) z (\\x.x)");
    LabeledTerm l = lift(t);
    CHECK(traces(l).empty());
    CHECK(alpha_eq(erase(l), t));
    CHECK(render(l) == render(t));
    CHECK(render(lift(P("x"))) == "x");
    CHECK(traces(lift(comb::Omega())).empty());

    Context c = parse_context("(\\x.(\\y.#I)(x x))[]");
    Term m = P("#I (\\x.\\y.x #OMEGA)");
    LabeledTerm s = select(c, m);
    CHECK(render(s) == "(\\x.(\\y.\\x.x) (x x)) ((\\x.x) (\\x.\\y.x ((\\x.x x) (\\x.x x))))^0");
    auto tr = traces(s);
    REQUIRE(tr.size() == 1);
    CHECK(tr[0].first.str() == "R");
    CHECK(alpha_eq(erase(s), c.plug(m)));
    CHECK(*select(Context::hole(), m).label() == 0);
    CHECK(render(LabeledTerm::var("x", 3)) == "x^3");
    CHECK(alpha_eq(erase(LabeledTerm::var("x", 3)), P("x")));
}

TEST_CASE("betac: operator count passes to the body plus one") {
    std::string mm = std::string("(\\y.#I)((") + kM + ")(" + kM + "))";
    LabeledTerm t = labelled(mm.c_str(), {{"RL", 0}, {"RR", 0}});
    auto st = labeled_step(t, Strategy::vno);
    REQUIRE(st.has_value());
    CHECK(st->path.str() == "R");
    LabeledTerm want = labelled("(\\y.#I)(\\y.(\\x.\\y.x #OMEGA) #OMEGA)", {{"R", 1}, {"RBL", 0}});
    CHECK(labeled_eq(st->term, want));
    CHECK(*max_count(st->term) == 1);
}

TEST_CASE("betac: unlabelled redex stays unlabelled") {
    LabeledTerm t = lift(P("(\\x.x y) z"));
    auto st = labeled_step(t, Strategy::vno);
    REQUIRE(st.has_value());
    CHECK(labeled_eq(st->term, lift(P("z y"))));
}

TEST_CASE("betac: body and redex counts") {
    // body label kept
    LabeledTerm body = labelled("(\\x.x y) z", {{"LB", 4}});
    CHECK(labeled_eq(labeled_contract(body, Path(), Calculus::V), labelled("z y", {{"", 4}})));
    // redex label transferred
    LabeledTerm redex = labelled("(\\x.x y) z", {{"", 2}});
    CHECK(labeled_eq(labeled_contract(redex, Path(), Calculus::V), labelled("z y", {{"", 2}})));
    // disagreeing alternatives are reported
    LabeledTerm clash = labelled("(\\x.x y) z", {{"", 2}, {"L", 5}});
    CHECK_THROWS_AS(labeled_contract(clash, Path(), Calculus::V), LabelConflict);
    bool conflict = false;
    auto first = labeled_contract(clash, Path(), Calculus::V, ConflictPolicy::FirstBranch, &conflict);
    CHECK(conflict);
    CHECK(first.label().has_value());
    // agreeing alternatives are fine
    LabeledTerm agree = labelled("(\\x.x y) z", {{"", 6}, {"L", 5}});
    CHECK(*labeled_contract(agree, Path(), Calculus::V).label() == 6);
}

TEST_CASE("substitution keeps the labels of the substituted term") {
    LabeledTerm arg = LabeledTerm::abs("q", LabeledTerm::var("q"), 0);
    LabeledTerm body = lift(P("\\w.x (x w)"));
    LabeledTerm r = labeled_substitute(arg, "x", body);
    CHECK(traces(r).size() == 2);
    CHECK(alpha_eq(erase(r), substitute(P("\\q.q"), "x", P("\\w.x (x w)"))));
}

TEST_CASE("worked labelled trace under value normal order") {
    Context c = parse_context("(\\x.(\\y.#I)(x x))[]");
    Term m = P("#I (\\x.\\y.x #OMEGA)");
    auto tr = labeled_reduce(select(c, m), Strategy::vno, 100);
    REQUIRE(tr.outcome == Outcome::NormalForm);
    REQUIRE(tr.terms.size() == 5);
    std::string mt = std::string("(") + kM + ")";
    CHECK(labeled_eq(tr.terms[1], labelled(("(\\x.(\\y.#I)(x x))" + mt).c_str(), {{"R", 0}})));
    CHECK(labeled_eq(tr.terms[2], labelled(("(\\y.#I)(" + mt + mt + ")").c_str(), {{"RL", 0}, {"RR", 0}})));
    CHECK(labeled_eq(tr.terms[3], labelled("(\\y.#I)(\\y.(\\x.\\y.x #OMEGA) #OMEGA)", {{"R", 1}, {"RBL", 0}})));
    CHECK(labeled_eq(tr.terms[4], lift(comb::I())));
    auto plain = reduce(c.plug(m), Strategy::vno, 100);
    REQUIRE(plain.steps.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(alpha_eq(erase(tr.terms[i + 1]), plain.steps[i].term));
        CHECK(tr.paths[i] == plain.steps[i].path);
    }
}

TEST_CASE("trace reports") {
    auto oracle = default_order_oracle(2000);
    Context c = parse_context("(\\x.(\\y.#I)(x x))[]");
    auto rep = trace_report(c, P("#I (\\x.\\y.x #OMEGA)"), Strategy::vno, 100, oracle);
    CHECK(rep.holds());
    CHECK(rep.n0 == Ordinal::finite(2));
    CHECK(rep.max_count == 1);
    CHECK(rep.unverified == 0);
    CHECK(alpha_eq(erase(rep.trace.terms.back()), comb::I()));

    auto om = trace_report(Context::hole(), comb::Omega(), Strategy::vno, 50, oracle);
    CHECK(om.holds());
    CHECK(om.trace.outcome == Outcome::CycleDetected);
    CHECK(om.max_count == 0);
    CHECK(om.any_count);

    auto admin = trace_report(parse_context("(\\x.(\\y.#I)(x #DELTA))[]"), P("\\x y.#OMEGA"), Strategy::vno, 100,
                              oracle);
    CHECK(admin.holds());
    CHECK(admin.n0 == Ordinal::finite(2));
    CHECK(admin.max_count == 1);
    CHECK(alpha_eq(erase(admin.trace.terms.back()), comb::I()));

    CHECK_THROWS_AS(trace_report(Context::hole(), P("x"), Strategy::vno, 10,
                                 [](const Term&) { return OrderVerdict{}; }),
                    std::invalid_argument);
}

TEST_CASE("property: erasure commutes with stepping") {
    gen::Gen g(41);
    for (int i = 0; i < 600; ++i) {
        Context c = g.context(1 + g.below(6));
        Term m = g.sized(8);
        LabeledTerm t = select(c, m);
        for (auto s : {Strategy::vno, Strategy::cbv, Strategy::chest, Strategy::gamma_p, Strategy::no}) {
            LabeledTerm cur = t;
            for (int k = 0; k < 6; ++k) {
                auto plain = step(erase(cur), s);
                std::optional<LabeledStep> lab;
                try {
                    lab = labeled_step(cur, s, ConflictPolicy::FirstBranch);
                } catch (const LabelConflict&) {
                    FAIL("first-branch policy must not throw");
                }
                REQUIRE(plain.has_value() == lab.has_value());
                if (!plain) break;
                CHECK(plain->path == lab->path);
                CHECK(alpha_eq(plain->term, erase(lab->term)));
                cur = lab->term;
            }
        }
    }
}
