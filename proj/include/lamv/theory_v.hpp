#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lamv/ordinal.hpp"
#include "lamv/solvability.hpp"
#include "lamv/strategy.hpp"
#include "lamv/term.hpp"

namespace lamv {

struct OracleAnswer {
    enum class Kind { Unsolvable, Other, Unknown };
    Kind kind = Kind::Unknown;
    Ordinal order;
};

using UnsolvabilityOracle = std::function<OracleAnswer(const Term&)>;

enum class OmegaChoice { Canonical, YK };

// Ω_n, and Ω_ω as either (λxy.xx)(λxy.xx) or Y K.
Term omega_term(Ordinal n, OmegaChoice choice = OmegaChoice::Canonical);
// n when t is alpha-equal to Ω_n.
std::optional<Ordinal> omega_index(const Term& t, OmegaChoice choice = OmegaChoice::Canonical);

struct OracleConfig {
    std::size_t fuel = 300;
    CertifyOptions certify{2, 200};
    std::vector<Term> pool = default_pool();
};

// Annotated orders are trusted unless a βV-normal form is found.
struct Annotation {
    Term term;
    Ordinal order;
};
std::vector<Annotation> parse_annotations(std::string_view text);

// Memoising oracle built on certify_unsolvable. Safe to share across threads.
UnsolvabilityOracle make_cycle_oracle(OracleConfig cfg = {}, std::vector<Annotation> annotations = {});

// Replaces maximal unsolvable subterms by Ω_n; nullopt when the oracle
// could not settle a position.
std::optional<Term> omega_nf(const Term& t, const UnsolvabilityOracle& oracle,
                             OmegaChoice choice = OmegaChoice::Canonical);

// Contracts every βV-redex of t simultaneously.
Term complete_development(const Term& t);

std::optional<Term> complete_omega_development(const Term& t, const UnsolvabilityOracle& oracle,
                                               OmegaChoice choice = OmegaChoice::Canonical);

struct BvOmvStep {
    Term term;
    Rule rule;
    Path path;
};

struct BvOmvSteps {
    std::vector<BvOmvStep> steps;
    // positions where the oracle answered Unknown
    std::size_t unknown = 0;
};

// All one-step βV and ΩV reducts.
BvOmvSteps bvomv_steps(const Term& t, const UnsolvabilityOracle& oracle, OmegaChoice choice = OmegaChoice::Canonical);

// One-step βV reducts only.
std::vector<BvOmvStep> betav_steps(const Term& t);

enum class SearchVerdict { Found, Exhausted, Unknown };
std::string to_string(SearchVerdict v);

using Stepper = std::function<BvOmvSteps(const Term&)>;

struct JoinResult {
    SearchVerdict verdict = SearchVerdict::Unknown;
    std::optional<Term> common;
    std::size_t explored = 0;
};

// Breadth-first search for a common reduct within depth steps from each side.
// Exhausted means both reachable sets were finite, fully explored and
// disjoint, with no Unknown oracle answers on the way.
JoinResult common_reduct(const Term& a, const Term& b, const Stepper& steps, std::size_t depth,
                         std::size_t max_terms = 20000);

// Whether target is reachable from source within depth steps.
SearchVerdict reachable(const Term& source, const Term& target, const Stepper& steps, std::size_t depth,
                        std::size_t max_terms = 20000);

struct ZVerdict {
    enum class Kind { Holds, Fails, Unknown };
    Kind kind = Kind::Unknown;
    std::string detail;
};
std::string to_string(ZVerdict::Kind k);

// For m → n: checks n ↠ m^Ω and m^Ω ↠ n^Ω within depth.
ZVerdict z_property_check(const Term& m, const Term& n, Rule rule, const UnsolvabilityOracle& oracle,
                          std::size_t depth, OmegaChoice choice = OmegaChoice::Canonical);

struct VEquality {
    enum class Kind { Provable, Refuted, Unknown };
    Kind kind = Kind::Unknown;
    std::string evidence;
};
std::string to_string(VEquality::Kind k);

VEquality v_theory_equal(const Term& a, const Term& b, const UnsolvabilityOracle& oracle, std::size_t fuel,
                         OmegaChoice choice = OmegaChoice::Canonical);

}  // namespace lamv
