#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "lamv/classify.hpp"
#include "lamv/combinators.hpp"
#include "oracle.hpp"

using namespace lamv;

namespace {

Term P(const char* s) { return parse(s); }

std::vector<TermClass> classes(std::initializer_list<TermClass> cs) {
    std::vector<TermClass> v(cs);
    std::sort(v.begin(), v.end());
    return v;
}

std::set<std::string> path_strs(const std::vector<Path>& ps) {
    std::set<std::string> out;
    for (auto& p : ps) out.insert(p.str());
    return out;
}

std::set<std::string> path_strs(const std::set<Path>& ps) {
    std::set<std::string> out;
    for (auto& p : ps) out.insert(p.str());
    return out;
}

const char* kChestTerm = "\\x.(\\y.y((\\z.m1)x))x((\\t.m2)x)";
const char* kHeadFig = "\\x.(\\y.(\\z.x)m1)x((\\t.m2)x)";

}  // namespace

TEST_CASE("classify examples") {
    using C = TermClass;
    auto a = classify(P("\\x.x (#I #DELTA)"));
    CHECK(a == classes({C::Val, C::HNF, C::VWNF}));
    CHECK(classify(P("\\x.#I #DELTA")) == classes({C::Val, C::VWNF}));
    CHECK(std::find(a.begin(), a.end(), C::NF) == a.end());

    CHECK(classify(P("(\\x.y)(x #DELTA)")) ==
          classes({C::NeuV, C::Block, C::VNF, C::Stuck, C::BlockNF, C::CHNF, C::VWNF, C::NeuW}));

    CHECK(classify(P("x #OMEGA")) == classes({C::Neu, C::HNF, C::NeuV}));
    CHECK(classify(comb::Omega()) == std::vector<TermClass>{});
    CHECK(classify(comb::U()) == classes({C::Val, C::VNF, C::CHNF, C::VWNF}));
    CHECK(classify(P("x")) == classes({C::Val, C::NF, C::HNF, C::VNF, C::CHNF, C::VWNF}));
}

TEST_CASE("redexes by calculus") {
    CHECK(redexes(P("(\\y.z)(x #DELTA)"), Calculus::V).empty());
    CHECK(path_strs(redexes(P("(\\y.z)(x #DELTA)"), Calculus::K)) == std::set<std::string>{""});
    CHECK(path_strs(redexes(P("(\\x.(\\y.z)(x #DELTA))#DELTA"), Calculus::V)) == std::set<std::string>{""});
    auto rs = redexes(P("(\\x.x)((\\y.y) z) ((\\a.a) b)"), Calculus::K);
    REQUIRE(rs.size() == 3);
    CHECK(std::is_sorted(rs.begin(), rs.end()));
}

TEST_CASE("chest and ribcage underlining") {
    Term t = P(kChestTerm);
    CHECK(path_strs(chest_redexes(t)) == std::set<std::string>{"BL", "BR"});
    CHECK(path_strs(ribcage_redexes(t)) == std::set<std::string>{"BL", "BR", "BLLBR"});
    CHECK(path_strs(head_redexes(t)) == std::set<std::string>{"BL"});
    CHECK(path_strs(head_spine_redexes(t)) == std::set<std::string>{"BL"});
    CHECK(path_strs(underline(t, Underline::ch)) == std::set<std::string>{"", "BLL", "BLR", "BRL", "BRR"});
    CHECK(path_strs(underline(t, Underline::rc)) ==
          std::set<std::string>{"", "BLL", "BLLBL", "BLLBRL", "BLLBRR", "BLR", "BRL", "BRR"});
}

TEST_CASE("head and head-spine underlining") {
    Term t = P(kHeadFig);
    CHECK(path_strs(head_redexes(t)) == std::set<std::string>{"BL"});
    CHECK(path_strs(head_spine_redexes(t)) == std::set<std::string>{"BL", "BLLB"});
    CHECK(path_strs(underline(t, Underline::he)) == std::set<std::string>{"", "BLL"});
    CHECK(path_strs(underline(t, Underline::hs)) == std::set<std::string>{"", "BLL", "BLLBL", "BLLBLB"});
    CHECK(path_strs(underline(t, Underline::bn)) == std::set<std::string>{""});
}

TEST_CASE("underlining a variable marks the root") {
    for (auto k : {Underline::bv, Underline::ch, Underline::rc, Underline::bn, Underline::he, Underline::hs})
        CHECK(path_strs(underline(P("x"), k)) == std::set<std::string>{""});
}

TEST_CASE("active components") {
    auto ac = active_components(P("\\x.x(\\y.#I #I)(\\z.(\\t.z)(x y)(#I #I))"), Calculus::V);
    REQUIRE(ac.size() == 2);
    CHECK(alpha_eq(ac[0].second, P("\\y.#I #I")));
    CHECK(alpha_eq(ac[1].second, P("\\z.(\\t.z)(x y)(#I #I)")));
    CHECK(active_components(comb::U(), Calculus::V).empty());
    auto om = active_components(comb::Omega(), Calculus::V);
    REQUIRE(om.size() == 1);
    CHECK(om[0].first.is_root());
    auto k = active_components(P("x ((\\y.y) z) w"), Calculus::K);
    REQUIRE(k.size() == 1);
    CHECK(k[0].first.str() == "LR");
    CHECK(active_components(P("x (\\y.y) w"), Calculus::K).empty());
    auto k2 = active_components(P("\\x.(\\y.y) z"), Calculus::K);
    REQUIRE(k2.size() == 1);
    CHECK(k2[0].first.is_root());
}

TEST_CASE("property: cached classes agree with the grammar oracle") {
    using C = TermClass;
    gen::Gen g(21);
    for (int i = 0; i < 4000; ++i) {
        Term t = g.sized(14);
        CHECK(t.in(C::Val) == oracle::val(t));
        CHECK(t.in(C::Neu) == oracle::neu(t));
        CHECK(t.in(C::NF) == oracle::nf(t));
        CHECK(t.in(C::HNF) == oracle::hnf(t));
        CHECK(t.in(C::NeuV) == oracle::neuv(t));
        CHECK(t.in(C::Block) == oracle::block(t));
        CHECK(t.in(C::VNF) == oracle::vnf(t));
        CHECK(t.in(C::Stuck) == oracle::stuck(t));
        CHECK(t.in(C::BlockNF) == oracle::block_nf(t));
        CHECK(t.in(C::CHNF) == oracle::chnf(t));
        CHECK(t.in(C::VWNF) == oracle::vwnf(t));
        CHECK(t.in(C::NeuW) == oracle::neuw(t));
    }
}

TEST_CASE("property: normal forms have no redexes") {
    gen::Gen g(22);
    for (int i = 0; i < 3000; ++i) {
        Term t = g.sized(14);
        auto db = oracle::from_term(t);
        CHECK(redexes(t, Calculus::V).size() == oracle::reducts(db, true).size());
        CHECK(redexes(t, Calculus::K).size() == oracle::reducts(db, false).size());
        CHECK(t.in(TermClass::VNF) == redexes(t, Calculus::V).empty());
        CHECK(t.in(TermClass::NF) == redexes(t, Calculus::K).empty());
    }
}

TEST_CASE("property: grammar inclusions") {
    using C = TermClass;
    gen::Gen g(23);
    for (int i = 0; i < 3000; ++i) {
        Term t = g.sized(16);
        if (t.in(C::NF)) CHECK(t.in(C::HNF));
        if (t.in(C::VNF)) CHECK(t.in(C::CHNF));
        if (t.in(C::CHNF)) CHECK(t.in(C::VWNF));
        if (t.in(C::Stuck)) CHECK(t.in(C::NeuW));
        if (t.in(C::BlockNF)) CHECK(t.in(C::Stuck));
    }
}

TEST_CASE("property: underlined redex inclusions and active components") {
    gen::Gen g(24);
    for (int i = 0; i < 2000; ++i) {
        Term t = g.sized(16);
        auto ch = path_strs(chest_redexes(t)), rc = path_strs(ribcage_redexes(t));
        CHECK(std::includes(rc.begin(), rc.end(), ch.begin(), ch.end()));
        auto he = path_strs(head_redexes(t)), hs = path_strs(head_spine_redexes(t));
        CHECK(std::includes(hs.begin(), hs.end(), he.begin(), he.end()));
        auto av = active_components(t, Calculus::V), ak = active_components(t, Calculus::K);
        CHECK(t.in(TermClass::VNF) == av.empty());
        CHECK(t.in(TermClass::NF) == ak.empty());
        CHECK(!t.in(TermClass::CHNF) == (av.size() == 1 && av[0].first.is_root()));
        CHECK(!t.in(TermClass::HNF) == (ak.size() == 1 && ak[0].first.is_root()));
        for (std::size_t j = 1; j < av.size(); ++j) CHECK_FALSE(av[j - 1].first.is_prefix_of(av[j].first));
        for (auto& [p, s] : active_components(t, Calculus::V)) {
            CHECK_FALSE(s.in(TermClass::CHNF));
            CHECK(alpha_eq(*subterm_at(t, p), s));
        }
    }
}
