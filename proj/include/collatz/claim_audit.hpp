#pragma once

// Measures the count-balance conditions on real shortcut orbits: where the
// running difference #F2 - #F1 first returns to zero, and whether the value
// there sits below the start and below (f1 f2)^alpha(start).

#include "collatz/nat.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace collatz {

inline constexpr std::uint64_t kDefaultAuditCap = 100'000;

struct ExcursionProfile {
    Nat n;
    std::vector<std::int64_t> levels; // D(1), D(2), ...; D(0) = 0 is implicit
    std::optional<std::uint64_t> first_return;
    std::int64_t max_level = 0;
    std::optional<std::uint64_t> reached_one_at;
    bool cap_hit = false;

    std::optional<std::uint64_t> alpha() const {
        if (!first_return) {
            return std::nullopt;
        }
        return *first_return / 2;
    }
};

/// Requires odd n >= 3 (std::invalid_argument otherwise).
ExcursionProfile excursion(const Nat& n, std::uint64_t cap = kDefaultAuditCap);

enum class BalanceOutcome { Balanced, ReachedOneFirst, CapHit };

struct BalanceAudit {
    Nat n;
    std::optional<std::uint64_t> alpha;
    std::optional<Nat> value_at_balance;
    std::optional<Rational> bound_at_balance; // (f1 f2)^alpha (n)
    bool descent_ok = false;
    bool bound_ok = false;
    bool prefix_condition_ok = false;
    BalanceOutcome outcome = BalanceOutcome::CapHit;

    /// Balanced but the value is not below n or above the bound.
    bool violation() const {
        return outcome == BalanceOutcome::Balanced && (!descent_ok || !bound_ok);
    }
};

BalanceAudit audit(const Nat& n, std::uint64_t cap = kDefaultAuditCap);

struct AuditSummary {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t audited = 0;
    std::uint64_t balanced = 0;
    std::uint64_t reached_one_first = 0;
    std::uint64_t cap_hit = 0;
    std::map<std::uint64_t, std::uint64_t> alpha_histogram;
    std::vector<BalanceAudit> violations;
};

using AuditSink = std::function<void(const BalanceAudit&)>;

/// Audits every odd n in [max(lo, 3), hi]. `sink`, when set, sees every audit
/// in ascending n. Throws std::invalid_argument when lo > hi.
AuditSummary audit_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t cap = kDefaultAuditCap,
                         unsigned workers = 1, const AuditSink& sink = {});

/// Descriptive beta-level event: the first t at which D(t) == beta, counted
/// after D first exceeded beta. Stops at 1 or cap.
std::optional<std::uint64_t> beta_return_time(const Nat& n, unsigned beta,
                                              std::uint64_t cap = kDefaultAuditCap);

struct ThresholdReport {
    unsigned beta = 0;
    Rational x;
    Rational s;
    bool s_positive = false;
    std::optional<unsigned> beta_max;  // largest beta >= 1 with (3/2)^beta < (x+1)/2
    std::optional<unsigned> alpha_min; // smallest alpha >= 1 with (4/3)^alpha * S > 1
};

/// S = (2/3)^beta (x+1)/(x-1) - 2/(x-1). Requires x > 1.
ThresholdReport thresholds(unsigned beta, const Rational& x);

/// (3/4)^alpha (3/2)^beta (x-1) + 2 (3/2)^beta - 1 < x, exactly. Requires x > 1.
bool beta_descent_check(unsigned beta, unsigned alpha, const Rational& x);

const char* to_string(BalanceOutcome outcome);

} // namespace collatz
