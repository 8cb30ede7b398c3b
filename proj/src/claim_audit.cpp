#include "collatz/claim_audit.hpp"

#include "collatz/detail/ordered_blocks.hpp"
#include "collatz/word_algebra.hpp"

#include <limits>
#include <stdexcept>

namespace collatz {

namespace {

void require_odd_start(const Nat& n, const char* what) {
    if (n < 3 || !boost::multiprecision::bit_test(n, 0)) {
        throw std::invalid_argument(std::string(what) + ": n must be odd and >= 3");
    }
}

// Applies one shortcut step and returns +1 for F2, -1 for F1.
int step(WideNat& value) {
    if (value.odd()) {
        value.shortcut_odd();
        return 1;
    }
    value.halve();
    return -1;
}

constexpr std::uint64_t kAuditBlock = 8192;

} // namespace

ExcursionProfile excursion(const Nat& n, std::uint64_t cap) {
    require_odd_start(n, "excursion");
    ExcursionProfile p;
    p.n = n;
    WideNat value(n);
    std::int64_t level = 0;
    for (std::uint64_t t = 1;; ++t) {
        if (t > cap) {
            p.cap_hit = true;
            break;
        }
        level += step(value);
        p.levels.push_back(level);
        p.max_level = std::max(p.max_level, level);
        if (level == 0) {
            p.first_return = t;
            break;
        }
        if (value.is_one()) {
            p.reached_one_at = t;
            break;
        }
    }
    return p;
}

BalanceAudit audit(const Nat& n, std::uint64_t cap) {
    require_odd_start(n, "audit");
    BalanceAudit a;
    a.n = n;
    WideNat value(n);
    std::int64_t level = 0;
    std::int64_t min_before = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t t = 1;; ++t) {
        if (t > cap) {
            a.outcome = BalanceOutcome::CapHit;
            return a;
        }
        level += step(value);
        if (level == 0) {
            a.outcome = BalanceOutcome::Balanced;
            a.alpha = t / 2;
            a.prefix_condition_ok = t % 2 == 0 && min_before > 0;
            break;
        }
        if (value.is_one()) {
            a.outcome = BalanceOutcome::ReachedOneFirst;
            return a;
        }
        min_before = std::min(min_before, level);
    }

    const Nat at_balance = value.to_nat();
    const Rational bound = apply_rational(pow_f1f2(static_cast<unsigned>(*a.alpha)), Rational(n));
    a.descent_ok = at_balance < n;
    a.bound_ok = Rational(at_balance) <= bound;
    a.value_at_balance = at_balance;
    a.bound_at_balance = bound;
    return a;
}

AuditSummary audit_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t cap, unsigned workers,
                         const AuditSink& sink) {
    if (lo > hi) {
        throw std::invalid_argument("audit_range: lo > hi");
    }
    AuditSummary summary;
    summary.lo = lo;
    summary.hi = hi;
    std::uint64_t first = std::max<std::uint64_t>(lo, 3);
    if (first % 2 == 0) {
        ++first;
    }
    if (first > hi) {
        return summary;
    }

    const std::uint64_t span = hi - first + 1;
    const std::uint64_t blocks = (span + kAuditBlock - 1) / kAuditBlock;

    auto process = [&](std::uint64_t b) {
        std::vector<BalanceAudit> out;
        const std::uint64_t begin = first + b * kAuditBlock;
        const std::uint64_t end = std::min(hi, begin + kAuditBlock - 1);
        // first is odd and kAuditBlock is even, so begin is odd.
        for (std::uint64_t n = begin; n <= end; n += 2) {
            out.push_back(audit(Nat(n), cap));
            if (end - n < 2) {
                break;
            }
        }
        return out;
    };
    auto commit = [&](std::uint64_t, std::vector<BalanceAudit>&& results) {
        for (auto& a : results) {
            ++summary.audited;
            switch (a.outcome) {
            case BalanceOutcome::Balanced:
                ++summary.balanced;
                ++summary.alpha_histogram[*a.alpha];
                break;
            case BalanceOutcome::ReachedOneFirst:
                ++summary.reached_one_first;
                break;
            case BalanceOutcome::CapHit:
                ++summary.cap_hit;
                break;
            }
            if (sink) {
                sink(a);
            }
            if (a.violation()) {
                summary.violations.push_back(std::move(a));
            }
        }
        return true;
    };
    detail::run_ordered_blocks<std::vector<BalanceAudit>>(0, blocks, workers, process, commit);
    return summary;
}

std::optional<std::uint64_t> beta_return_time(const Nat& n, unsigned beta, std::uint64_t cap) {
    WideNat value(n);
    std::int64_t level = 0;
    bool exceeded = false;
    const auto target = static_cast<std::int64_t>(beta);
    for (std::uint64_t t = 1; t <= cap && !value.is_one(); ++t) {
        level += step(value);
        if (exceeded && level == target) {
            return t;
        }
        exceeded = exceeded || level > target;
    }
    return std::nullopt;
}

ThresholdReport thresholds(unsigned beta, const Rational& x) {
    if (x <= 1) {
        throw std::invalid_argument("thresholds: x must be > 1");
    }
    ThresholdReport r;
    r.beta = beta;
    r.x = x;
    const Rational two_thirds_pow = pow_ratio(2, 3, beta);
    r.s = two_thirds_pow * (x + 1) / (x - 1) - Rational(2) / (x - 1);
    r.s_positive = r.s > 0;

    const Rational half_x_plus_one = (x + 1) / 2;
    Rational power(3, 2);
    for (unsigned b = 1; power < half_x_plus_one; ++b) {
        r.beta_max = b;
        power *= Rational(3, 2);
    }

    if (r.s_positive) {
        Rational scaled = r.s * Rational(4, 3);
        unsigned alpha = 1;
        while (scaled <= 1) {
            scaled *= Rational(4, 3);
            ++alpha;
        }
        r.alpha_min = alpha;
    }
    return r;
}

bool beta_descent_check(unsigned beta, unsigned alpha, const Rational& x) {
    if (x <= 1) {
        throw std::invalid_argument("beta_descent_check: x must be > 1");
    }
    const Rational three_halves_pow = pow_ratio(3, 2, beta);
    const Rational three_quarters_pow = pow_ratio(3, 4, alpha);
    const Rational lhs = three_quarters_pow * three_halves_pow * (x - 1) + 2 * three_halves_pow - 1;
    return lhs < x;
}

const char* to_string(BalanceOutcome outcome) {
    switch (outcome) {
    case BalanceOutcome::Balanced:
        return "balanced";
    case BalanceOutcome::ReachedOneFirst:
        return "reached-one-first";
    case BalanceOutcome::CapHit:
        return "cap-hit";
    }
    return "unknown";
}

} // namespace collatz
