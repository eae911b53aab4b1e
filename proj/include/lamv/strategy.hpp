#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lamv/classify.hpp"
#include "lamv/context.hpp"
#include "lamv/term.hpp"

namespace lamv {

enum class Strategy { cbn, head, no, cbv, chest, ribcage, vno, gamma_p };

std::string to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& s);
Calculus calculus_of(Strategy s);
std::vector<Strategy> all_strategies();

enum class Rule { betaK, betaV, omegaV };
std::string to_string(Rule r);

struct Decomposition {
    Context context;
    Term redex;
    Path path;
};

// Location of the redex the strategy contracts next, if any.
std::optional<Path> redex_path(const Term& t, Strategy s);
std::optional<Decomposition> decompose(const Term& t, Strategy s);

// Contracts the β-redex at p. With Calculus::V the operand must be a value.
Term contract(const Term& t, const Path& p, Calculus calc = Calculus::K);

struct Step {
    Term term;
    Path path;
    Rule rule;
};

std::optional<Step> step(const Term& t, Strategy s);

enum class Outcome { NormalForm, FuelExhausted, CycleDetected };
std::string to_string(Outcome o);

struct TraceStep {
    Rule rule;
    Path path;
    Term term;
};

struct ReductionTrace {
    Term initial;
    std::vector<TraceStep> steps;
    Outcome outcome = Outcome::NormalForm;
    // Earlier trace index revisited, for CycleDetected.
    std::size_t cycle_index = 0;
    // The term outgrew the size limit before fuel ran out.
    bool size_limited = false;

    const Term& final_term() const { return steps.empty() ? initial : steps.back().term; }
    std::vector<Term> terms() const;
};

struct ReduceOptions {
    bool detect_cycles = true;
    std::size_t max_size = 20000;
};

ReductionTrace reduce(const Term& t, Strategy s, std::size_t fuel, const ReduceOptions& opts = {});

// Detects revisits of alpha-equivalent terms.
class CycleTable {
public:
    // Returns the index of an earlier alpha-equal term, or records t.
    std::optional<std::size_t> visit(const Term& t);

private:
    std::vector<Term> seen_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

}  // namespace lamv
