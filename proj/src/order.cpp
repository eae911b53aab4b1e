#include "lamv/order.hpp"

#include <unordered_map>

#include "lamv/strategy.hpp"

namespace lamv {

std::optional<Ordinal> parse_ordinal(const std::string& s) {
    if (s == "omega" || s == "w" || s == "ω") return Ordinal::omega();
    if (s.empty() || s.size() > 18) return std::nullopt;
    std::uint64_t n = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        n = n * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return Ordinal::finite(n);
}

std::string to_string(OrderVerdict::Reason r) {
    switch (r) {
        case OrderVerdict::Reason::None: return "none";
        case OrderVerdict::Reason::StuckResidue: return "stuck-residue";
        case OrderVerdict::Reason::DivergentCycle: return "divergent-cycle";
        case OrderVerdict::Reason::PrefixCycle: return "prefix-cycle";
        case OrderVerdict::Reason::FuelExhausted: return "fuel-exhausted";
    }
    return "?";
}

std::string OrderVerdict::str() const {
    switch (kind) {
        case Kind::Exact: return "Exact(" + value.str() + ")";
        case Kind::AtLeast: return "AtLeast(" + value.str() + ")";
        case Kind::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

struct Visited {
    std::vector<std::pair<std::uint64_t, Term>> entries;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;

    // earlier entry alpha-equal to t, if any; otherwise records it
    std::optional<std::uint64_t> visit(std::uint64_t level, const Term& t) {
        auto& bucket = by_hash[t.shape_hash()];
        for (std::size_t i : bucket)
            if (alpha_eq(entries[i].second, t)) return entries[i].first;
        bucket.push_back(entries.size());
        entries.emplace_back(level, t);
        return std::nullopt;
    }
};

}  // namespace

OrderVerdict order(const Term& t, std::size_t fuel, std::size_t max_size) {
    OrderVerdict v;
    Visited seen;
    std::uint64_t level = 0;
    Term cur = t;
    seen.visit(0, cur);

    auto finish = [&](OrderVerdict::Kind k, Ordinal value, OrderVerdict::Reason r) {
        v.kind = k;
        v.value = value;
        v.reason = r;
        v.residues.emplace_back(level, cur);
        return v;
    };

    for (;;) {
        if (cur.is_abs()) {
            v.residues.emplace_back(level, cur);
            while (cur.is_abs()) {
                cur = cur.body();
                ++level;
            }
            if (auto prev = seen.visit(level, cur); prev && *prev < level)
                return finish(OrderVerdict::Kind::Exact, Ordinal::omega(), OrderVerdict::Reason::PrefixCycle);
            continue;
        }
        auto s = step(cur, Strategy::cbv);
        if (!s) return finish(OrderVerdict::Kind::Exact, Ordinal::finite(level), OrderVerdict::Reason::StuckResidue);
        if (v.steps >= fuel || s->term.size() > max_size) {
            auto k = level > 0 ? OrderVerdict::Kind::AtLeast : OrderVerdict::Kind::Unknown;
            return finish(k, Ordinal::finite(level), OrderVerdict::Reason::FuelExhausted);
        }
        ++v.steps;
        cur = s->term;
        if (auto prev = seen.visit(level, cur)) {
            if (*prev < level)
                return finish(OrderVerdict::Kind::Exact, Ordinal::omega(), OrderVerdict::Reason::PrefixCycle);
            return finish(OrderVerdict::Kind::Exact, Ordinal::finite(level), OrderVerdict::Reason::DivergentCycle);
        }
    }
}

OrderOracle default_order_oracle(std::size_t fuel) {
    return [fuel](const Term& t) { return order(t, fuel); };
}

}  // namespace lamv
