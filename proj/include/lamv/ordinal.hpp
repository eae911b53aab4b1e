#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace lamv {

// Natural numbers extended with ω. Addition is taken on the left, so
// n + ω = ω for every finite n.
class Ordinal {
public:
    constexpr Ordinal() = default;
    static constexpr Ordinal finite(std::uint64_t n) { return Ordinal(false, n); }
    static constexpr Ordinal omega() { return Ordinal(true, 0); }

    constexpr bool is_omega() const { return omega_; }
    constexpr bool is_finite() const { return !omega_; }
    constexpr std::uint64_t value() const { return n_; }

    constexpr Ordinal plus(std::uint64_t c) const { return omega_ ? *this : finite(n_ + c); }
    // The n with c + n = *this, if any.
    constexpr std::optional<Ordinal> minus(std::uint64_t c) const {
        if (omega_) return *this;
        if (c > n_) return std::nullopt;
        return finite(n_ - c);
    }

    constexpr auto operator<=>(const Ordinal& o) const {
        if (omega_ != o.omega_) return omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
        return n_ <=> o.n_;
    }
    constexpr bool operator==(const Ordinal& o) const = default;

    std::string str() const { return omega_ ? "omega" : std::to_string(n_); }

private:
    constexpr Ordinal(bool w, std::uint64_t n) : omega_(w), n_(n) {}
    bool omega_ = false;
    std::uint64_t n_ = 0;
};

// Accepts a decimal number, "omega" or "w".
std::optional<Ordinal> parse_ordinal(const std::string& s);

}  // namespace lamv
