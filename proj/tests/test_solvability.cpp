#include "doctest.h"
#include "gen.hpp"
#include "lamv/combinators.hpp"
#include "lamv/order.hpp"
#include "lamv/solvability.hpp"
#include "lamv/strategy.hpp"
#include "oracle.hpp"

using namespace lamv;

namespace {

Term P(const char* s) { return parse(s); }

bool normalises_to(const Term& t, const Term& target, Strategy s, std::size_t fuel = 10000) {
    auto r = reduce(t, s, fuel);
    return r.outcome == Outcome::NormalForm && alpha_eq(r.final_term(), target);
}

}  // namespace

TEST_CASE("ordinal arithmetic") {
    auto w = Ordinal::omega();
    CHECK(w.plus(3) == w);
    CHECK(Ordinal::finite(2).plus(3) == Ordinal::finite(5));
    CHECK(*w.minus(7) == w);
    CHECK(*Ordinal::finite(5).minus(2) == Ordinal::finite(3));
    CHECK_FALSE(Ordinal::finite(1).minus(2).has_value());
    CHECK(Ordinal::finite(100) < w);
    CHECK(*parse_ordinal("omega") == w);
    CHECK(*parse_ordinal("w") == w);
    CHECK(*parse_ordinal("12") == Ordinal::finite(12));
    CHECK_FALSE(parse_ordinal("x").has_value());
}

TEST_CASE("orders of the glossary terms") {
    auto ex = [](const Term& t) {
        auto v = order(t, 2000);
        REQUIRE(v.exact());
        return v.value;
    };
    CHECK(ex(comb::Omega()) == Ordinal::finite(0));
    CHECK(ex(P("\\x.#OMEGA")) == Ordinal::finite(1));
    CHECK(ex(comb::U()) == Ordinal::finite(1));
    CHECK(ex(comb::I()) == Ordinal::finite(1));
    CHECK(ex(comb::K()) == Ordinal::finite(2));
    CHECK(ex(P("x y")) == Ordinal::finite(0));
    CHECK(ex(comb::Omega_w()) == Ordinal::omega());
    CHECK(ex(P("\\a.#OMEGA_W")) == Ordinal::omega());
    for (unsigned n = 0; n <= 5; ++n) CHECK(ex(comb::Omega_n(n)) == Ordinal::finite(n));
    CHECK(order(comb::Omega(), 2000).reason == OrderVerdict::Reason::DivergentCycle);
    CHECK(order(comb::Omega_w(), 2000).reason == OrderVerdict::Reason::PrefixCycle);
}

TEST_CASE("Y K is not certified of order omega") {
    auto v = order(comb::YK(), 2000);
    CHECK_FALSE((v.exact() && v.value.is_omega()));
}

TEST_CASE("order of an abstraction adds one") {
    gen::Gen g(51);
    for (int i = 0; i < 300; ++i) {
        Term t = g.sized(10);
        auto v = order(t, 500);
        if (!v.exact()) continue;
        auto w = order(Term::abs("q", t), 500);
        REQUIRE(w.exact());
        CHECK(w.value == v.value.plus(1));
    }
}

TEST_CASE("certification examples") {
    auto pool = default_pool();
    auto t1 = certify_unsolvable(comb::T1(), 2000, pool);
    REQUIRE(t1.kind == Certification::Kind::SolvableWitness);
    CHECK(alpha_eq(*t1.normal_form, P("(\\y.#DELTA)(z #I) #DELTA (z #I)")));
    CHECK(alpha_eq(t1.context->plug(comb::Omega()).arg(), P("\\x.z #I")));
    CHECK(normalises_to(t1.context->plug(comb::T1()), *t1.normal_form, Strategy::vno));

    auto om = certify_unsolvable(comb::Omega(), 2000, pool);
    CHECK(om.kind == Certification::Kind::UnsolvableOfOrder);
    CHECK(om.order == Ordinal::finite(0));

    for (const Term& t : {comb::T2(), P("\\x.#OMEGA"), comb::Omega()})
        CHECK(certify_unsolvable(t, 2000, pool).kind != Certification::Kind::SolvableWitness);
    auto l = certify_unsolvable(P("\\x.#OMEGA"), 2000, pool);
    CHECK(l.kind == Certification::Kind::UnsolvableOfOrder);
    CHECK(l.order == Ordinal::finite(1));

    auto w = certify_unsolvable(comb::Omega_w(), 2000, pool);
    CHECK(w.kind == Certification::Kind::UnsolvableOfOrder);
    CHECK(w.order == Ordinal::omega());

    auto nf = certify_unsolvable(P("x (\\y.y)"), 100, pool);
    CHECK(nf.kind == Certification::Kind::SolvableWitness);
    CHECK(nf.context->hole_path().is_root());
}

TEST_CASE("pool files") {
    auto pool = parse_pool("; comment\n\\x.x\n\n  x y\n");
    REQUIRE(pool.size() == 2);
    CHECK(alpha_eq(pool[1], P("x y")));
}

TEST_CASE("solving a closed term for a target") {
    Term x = P("target");
    auto ops = solve_to_target(comb::K(), x, Calculus::K, 1000);
    REQUIRE(ops.size() == 2);
    CHECK(alpha_eq(ops[0], Term::app(comb::K_m(0), x)));
    CHECK(alpha_eq(ops[1], comb::I()));
    CHECK(normalises_to(apply_all(comb::K(), ops), x, Strategy::no));

    auto id = solve_to_target(comb::I(), x, Calculus::K, 1000);
    REQUIRE(id.size() == 1);
    CHECK(normalises_to(apply_all(comb::I(), id), x, Strategy::no));

    CHECK_THROWS_AS(solve_to_target(comb::Omega(), x, Calculus::K, 1000), NoNormalForm);
    CHECK_THROWS_AS(solve_to_target(P("y"), x, Calculus::K, 1000), std::invalid_argument);

    Term k3 = P("\\a b c.b a a c");
    auto ops3 = solve_to_target(k3, x, Calculus::K, 1000);
    REQUIRE(ops3.size() == 3);
    CHECK(alpha_eq(ops3[1], Term::app(comb::K_m(3), x)));
    CHECK(normalises_to(apply_all(k3, ops3), x, Strategy::no));
}

TEST_CASE("function contexts for a target") {
    Term x = P("target");
    auto f = function_context_for_target(P("\\y.x y"), x, 1000);
    REQUIRE(f.has_value());
    CHECK(render(*f) == "(\\x.[]) ((\\x.(\\x.\\y.x) x) target) (\\x.x)");
    CHECK(normalises_to(f->plug(P("\\y.x y")), x, Strategy::no));

    CHECK_FALSE(function_context_for_target(P("x #OMEGA"), x, 1000).has_value());

    auto fi = function_context_for_target(comb::I(), x, 1000);
    REQUIRE(fi.has_value());
    CHECK(alpha_eq(fi->plug(P("hole")), Term::app(P("hole"), Term::app(comb::K_m(0), x))));
}

TEST_CASE("closing a function context into a head context") {
    Context f = parse_context("(\\x.[]) #K");
    Term m = P("x (y z (y #I)) (#OMEGA t)");
    Term n = P("y z (y #I)");
    auto h = head_context_from_function_context(f, m, n, 10000);
    CHECK(alpha_eq(h.context.plug(P("hole")),
                   P("(\\y z t x.hole)(\\v1 v2 w.w v1 v2)(\\w.w) #I #K")));
    CHECK(render(h.context) == "(\\y.\\z.\\t.\\x.[]) (\\v1.\\v2.\\w.w v1 v2) (\\w.w) (\\x.x) (\\x.\\y.x)");
    CHECK(h.operand_counts == std::vector<unsigned>{2, 0});
    CHECK(h.free_of_target == std::vector<std::string>{"y", "z"});
    CHECK(h.extra_vars == std::vector<std::string>{"t"});
    Term want = P("\\w.w(\\w.w)(\\v2 w.w #I v2)");
    CHECK(alpha_eq(h.closed_normal_form, want));
    CHECK(normalises_to(h.context.plug(m), want, Strategy::no));

    CHECK_THROWS(head_context_from_function_context(f, m, P("y z"), 10000));

    Context closed = parse_context("[] #I");
    auto hc = head_context_from_function_context(closed, comb::I(), comb::I(), 1000);
    CHECK(alpha_eq(hc.context.plug(P("hole")), P("hole #I")));
}

TEST_CASE("genericity experiments") {
    Context c = parse_context("(\\x.(\\y.#I)(x x))[]");
    std::vector<Term> xs = {P("\\x y.x"), P("\\x y.y #OMEGA"), P("\\x y.#OMEGA"), comb::Omega(),
                            P("\\x.#OMEGA"), comb::Omega_w()};
    auto rep = genericity_experiment(c, P("#I (\\x.\\y.x #OMEGA)"), Ordinal::finite(2), xs, Calculus::V, 2000);
    REQUIRE(rep.applicable);
    CHECK(alpha_eq(*rep.normal_form, comb::I()));
    REQUIRE(rep.rows.size() == xs.size());
    using V = GenericityRow::Verdict;
    CHECK(rep.rows[0].verdict == V::Holds);
    CHECK(rep.rows[1].verdict == V::Holds);
    CHECK(rep.rows[2].verdict == V::Holds);
    CHECK(rep.rows[3].verdict == V::BelowOrderFailed);
    CHECK(rep.rows[4].verdict == V::BelowOrderFailed);
    CHECK(rep.rows[5].verdict == V::Holds);
    CHECK_FALSE(rep.violated());

    auto k = genericity_experiment(parse_context("(\\x.#I)[]"), comb::Omega(), Ordinal::finite(0),
                                   {P("y"), comb::Omega(), P("\\q.q q")}, Calculus::K, 1000);
    REQUIRE(k.applicable);
    for (auto& row : k.rows) CHECK(row.verdict == V::Holds);

    auto na = genericity_experiment(Context::hole(), comb::Omega(), Ordinal::finite(0), {comb::I()}, Calculus::V, 100);
    CHECK_FALSE(na.applicable);
}

TEST_CASE("property: order is preserved by value substitution") {
    gen::Gen g(52);
    std::vector<Term> family = {comb::Omega(), P("\\x.#OMEGA"), comb::Omega_n(2), P("\\y.x #OMEGA"),
                                P("\\y z.(x y) #OMEGA"), comb::Omega_w(), P("\\y.(\\z.#OMEGA)(x x)")};
    for (const Term& m : family) {
        auto base = order(m, 2000);
        REQUIRE(base.exact());
        for (int i = 0; i < 30; ++i) {
            Term v = g.coin() ? g.value(6) : Term::var(g.coin() ? "a" : "x");
            auto after = order(substitute(v, "x", m), 2000);
            REQUIRE(after.exact());
            INFO(render(m), " with x := ", render(v), " gives ", after.str());
            CHECK(after.value == base.value);
        }
    }
}

TEST_CASE("property: witnesses and unsolvability certificates are consistent") {
    gen::Gen g(53);
    auto pool = default_pool();
    int witnesses = 0;
    for (int i = 0; i < 150; ++i) {
        Term t = g.sized(9);
        auto cert = certify_unsolvable(t, 300, pool, {2, 200});
        if (cert.kind == Certification::Kind::SolvableWitness) {
            ++witnesses;
            CHECK(cert.normal_form->in(TermClass::VNF));
            CHECK(normalises_to(cert.context->plug(t), *cert.normal_form, Strategy::vno, 400));
            auto o = order(t, 300);
            CHECK_FALSE((o.exact() && o.reason == OrderVerdict::Reason::PrefixCycle));
        } else if (cert.kind == Certification::Kind::UnsolvableOfOrder) {
            CHECK(cert.order_evidence.exact());
            CHECK(cert.order_evidence.value == cert.order);
            auto bfs = oracle::bfs_normal_form(oracle::from_term(t), true, 10, 2000);
            CHECK_FALSE(bfs.normal_form.has_value());
        }
    }
    CHECK(witnesses > 50);
}
