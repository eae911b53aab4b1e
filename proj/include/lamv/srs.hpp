#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lamv/term.hpp"

namespace lamv {

struct SrsDerivation {
    enum class Clause {
        // a variable on its own
        Variable,
        // a call-by-value step followed by a standard sequence
        CbvPrefix,
        // the same binder over a standard sequence of bodies
        Lambda,
        // operators reduce with the operand fixed, then operands with the
        // operator fixed
        Application,
    };
    Clause clause = Clause::Variable;
    std::vector<Term> sequence;
    std::string binder;
    // index of the element where operators stop and operands start changing
    std::size_t split = 0;
    std::vector<SrsDerivation> premises;
};

std::string to_string(SrsDerivation::Clause c);

struct SrsResult {
    enum class Kind { Standard, NotStandard, IllegalSequence };
    Kind kind = Kind::NotStandard;
    std::optional<SrsDerivation> derivation;
    // IllegalSequence: index i such that seq[i] -> seq[i+1] is not a βV-step
    std::size_t illegal_at = 0;
    std::string explanation;

    bool standard() const { return kind == Kind::Standard; }
};

SrsResult is_standard_sequence(const std::vector<Term>& seq);

// Reassembles the sequence a derivation proves standard.
std::vector<Term> replay(const SrsDerivation& d);

std::string render(const SrsDerivation& d, int indent = 0);

// One term per line; blank lines and lines starting with ';' are skipped.
std::vector<Term> parse_sequence(std::string_view text);

// Whether b is obtained from a by contracting one βV-redex.
bool is_betav_step(const Term& a, const Term& b);

}  // namespace lamv
