#pragma once

// Exact integer and rational types shared by every module, plus the
// 128-bit fast path used by the orbit iterators.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace collatz {

using Nat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using u128 = unsigned __int128;

/// Parses a base-10 natural number. Throws std::invalid_argument on
/// anything other than a non-empty run of digits.
Nat parse_nat(std::string_view text);

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Nat& value);
std::string to_string(const Rational& value);

Nat pow_nat(unsigned base, unsigned exponent);
/// (num/den)^exponent
Rational pow_ratio(unsigned num, unsigned den, unsigned exponent);

Nat to_nat(u128 value);
bool fits_u128(const Nat& value);
u128 to_u128(const Nat& value);

enum class Arithmetic { Auto, ForceBig };

// A natural number that lives in a u128 until an operation would overflow,
// then moves to Nat. Unpinned big values are always >= 2^128, so a small and a
// big operand never need a Nat conversion to compare. ForceBig pins the value
// to the Nat representation for cross-checking the fast path.
class WideNat {
public:
    explicit WideNat(std::uint64_t value, Arithmetic mode = Arithmetic::Auto);
    explicit WideNat(const Nat& value, Arithmetic mode = Arithmetic::Auto);

    bool is_big() const noexcept { return big_mode_; }
    bool odd() const noexcept {
        return big_mode_ ? boost::multiprecision::bit_test(big_, 0) : (small_ & 1) != 0;
    }
    bool is_one() const noexcept { return big_mode_ ? big_ == 1 : small_ == 1; }
    bool is_zero() const noexcept { return big_mode_ ? big_ == 0 : small_ == 0; }

    void halve();
    /// n -> 3n + 1
    void triple_plus_one();
    /// n -> (3n + 1) / 2, n odd
    void shortcut_odd();

    Nat to_nat() const { return big_mode_ ? big_ : collatz::to_nat(small_); }

    friend std::strong_ordering operator<=>(const WideNat& a, const WideNat& b);
    friend bool operator==(const WideNat& a, const WideNat& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

private:
    void promote();
    void maybe_demote();

    u128 small_ = 0;
    Nat big_;
    bool big_mode_ = false;
    bool pinned_ = false;
};

} // namespace collatz
