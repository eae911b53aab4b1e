#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lamv/ordinal.hpp"
#include "lamv/term.hpp"

namespace lamv {

struct OrderVerdict {
    enum class Kind { Exact, AtLeast, Unknown };
    enum class Reason {
        None,
        // residue is a neutral weak normal form or a variable
        StuckResidue,
        // residue revisits itself under call-by-value
        DivergentCycle,
        // a residue reappears after more binders were stripped
        PrefixCycle,
        FuelExhausted,
    };

    Kind kind = Kind::Unknown;
    // exact order, or the lower bound for AtLeast
    Ordinal value;
    Reason reason = Reason::None;
    // (binders stripped, residue) at each stripping point and at the end
    std::vector<std::pair<std::uint64_t, Term>> residues;
    std::size_t steps = 0;

    bool exact() const { return kind == Kind::Exact; }
    std::string str() const;
};

std::string to_string(OrderVerdict::Reason r);

// Exact only when n binders were exposed and the residue is certified to
// never become an abstraction, or when a residue recurs under more binders.
OrderVerdict order(const Term& t, std::size_t fuel, std::size_t max_size = 20000);

using OrderOracle = std::function<OrderVerdict(const Term&)>;
OrderOracle default_order_oracle(std::size_t fuel);

}  // namespace lamv
