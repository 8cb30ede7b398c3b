#include "collatz/nat.hpp"

#include <stdexcept>

namespace collatz {

namespace {

bool all_digits(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

Nat parse_nat(std::string_view text) {
    if (!all_digits(text)) {
        throw std::invalid_argument("not a natural number: '" + std::string(text) + "'");
    }
    return Nat(std::string(text));
}

Rational parse_rational(std::string_view text) {
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    const auto slash = text.find('/');
    Nat num = parse_nat(text.substr(0, slash));
    Nat den = 1;
    if (slash != std::string_view::npos) {
        den = parse_nat(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
    }
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Nat& value) { return value.str(); }

std::string to_string(const Rational& value) {
    const Nat& den = boost::multiprecision::denominator(value);
    if (den == 1) {
        return boost::multiprecision::numerator(value).str();
    }
    return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

Nat pow_nat(unsigned base, unsigned exponent) {
    return boost::multiprecision::pow(Nat(base), exponent);
}

Rational pow_ratio(unsigned num, unsigned den, unsigned exponent) {
    return Rational(pow_nat(num, exponent), pow_nat(den, exponent));
}

Nat to_nat(u128 value) {
    Nat out = static_cast<std::uint64_t>(value >> 64);
    out <<= 64;
    out |= static_cast<std::uint64_t>(value);
    return out;
}

bool fits_u128(const Nat& value) {
    return value >= 0 && (value == 0 || boost::multiprecision::msb(value) < 128);
}

u128 to_u128(const Nat& value) {
    if (!fits_u128(value)) {
        throw std::out_of_range("value does not fit in 128 bits");
    }
    const Nat lo_mask = (Nat(1) << 64) - 1;
    const auto lo = static_cast<std::uint64_t>(value & lo_mask);
    const auto hi = static_cast<std::uint64_t>(value >> 64);
    return (static_cast<u128>(hi) << 64) | lo;
}

WideNat::WideNat(std::uint64_t value, Arithmetic mode)
    : small_(value), pinned_(mode == Arithmetic::ForceBig) {
    if (pinned_) {
        promote();
    }
}

WideNat::WideNat(const Nat& value, Arithmetic mode) : pinned_(mode == Arithmetic::ForceBig) {
    if (value < 0) {
        throw std::invalid_argument("negative value");
    }
    if (!pinned_ && fits_u128(value)) {
        small_ = to_u128(value);
    } else {
        big_ = value;
        big_mode_ = true;
    }
}

void WideNat::promote() {
    big_ = collatz::to_nat(small_);
    small_ = 0;
    big_mode_ = true;
}

void WideNat::maybe_demote() {
    if (!pinned_ && fits_u128(big_)) {
        small_ = to_u128(big_);
        big_ = 0;
        big_mode_ = false;
    }
}

void WideNat::halve() {
    if (big_mode_) {
        big_ >>= 1;
        maybe_demote();
    } else {
        small_ >>= 1;
    }
}

void WideNat::triple_plus_one() {
    if (!big_mode_) {
        u128 doubled;
        u128 tripled;
        u128 result;
        if (!__builtin_add_overflow(small_, small_, &doubled) &&
            !__builtin_add_overflow(doubled, small_, &tripled) &&
            !__builtin_add_overflow(tripled, static_cast<u128>(1), &result)) {
            small_ = result;
            return;
        }
        promote();
    }
    big_ = 3 * big_ + 1;
}

void WideNat::shortcut_odd() {
    if (!big_mode_) {
        // (3n+1)/2 == n + (n >> 1) + 1 for odd n
        u128 partial;
        u128 result;
        if (!__builtin_add_overflow(small_, small_ >> 1, &partial) &&
            !__builtin_add_overflow(partial, static_cast<u128>(1), &result)) {
            small_ = result;
            return;
        }
        promote();
    }
    big_ = (3 * big_ + 1) >> 1;
    // (3n+1)/2 never shrinks below n, so no demotion check.
}

std::strong_ordering operator<=>(const WideNat& a, const WideNat& b) {
    if (!a.big_mode_ && !b.big_mode_) {
        return a.small_ <=> b.small_;
    }
    auto compare = [](const Nat& lhs, const Nat& rhs) {
        if (lhs < rhs) {
            return std::strong_ordering::less;
        }
        return lhs == rhs ? std::strong_ordering::equal : std::strong_ordering::greater;
    };
    if (a.big_mode_ && b.big_mode_) {
        return compare(a.big_, b.big_);
    }
    const WideNat& big = a.big_mode_ ? a : b;
    if (!big.pinned_) {
        return a.big_mode_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return compare(a.to_nat(), b.to_nat());
}

} // namespace collatz
