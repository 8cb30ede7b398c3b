#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatz/claim_audit.hpp"
#include "collatz/orbit.hpp"
#include "collatz/word_algebra.hpp"

using namespace collatz;

TEST_CASE("excursion of 7") {
    const auto e = excursion(7);
    CHECK(e.levels == std::vector<std::int64_t>{1, 2, 3, 2, 3, 2, 1, 2, 1, 0});
    CHECK(e.first_return == 10);
    CHECK(e.alpha() == 5);
    CHECK(e.max_level == 3);
    CHECK_FALSE(e.cap_hit);
    CHECK_THROWS_AS(excursion(8), std::invalid_argument);
    CHECK_THROWS_AS(excursion(1), std::invalid_argument);
}

TEST_CASE("audits of small starts") {
    const auto a7 = audit(7);
    CHECK(a7.outcome == BalanceOutcome::Balanced);
    CHECK(a7.alpha == 5);
    CHECK(a7.value_at_balance == Nat(2));
    CHECK(a7.bound_at_balance == Rational(2482, 1024));
    CHECK(a7.descent_ok);
    CHECK(a7.bound_ok);
    CHECK(a7.prefix_condition_ok);
    CHECK_FALSE(a7.violation());

    const auto a3 = audit(3);
    CHECK(a3.alpha == 2);
    CHECK(a3.value_at_balance == Nat(2));
    CHECK(a3.bound_at_balance == Rational(34, 16));

    const auto a5 = audit(5);
    CHECK(a5.alpha == 1);
    CHECK(a5.value_at_balance == Nat(4));
    CHECK(a5.bound_at_balance == Rational(4)); // equality at alpha = 1
    CHECK(a5.bound_ok);
}

TEST_CASE("some starts reach 1 before any balance") {
    // 27's word has more F1 than F2 only at the very end.
    const auto a = audit(27);
    CHECK(a.outcome == BalanceOutcome::ReachedOneFirst);
    CHECK_FALSE(a.alpha);
    CHECK_FALSE(a.violation());
    CHECK(audit(27, 10).outcome == BalanceOutcome::CapHit);
}

TEST_CASE("audit_range over small intervals") {
    const auto s = audit_range(3, 99);
    CHECK(s.audited == 49);
    CHECK(s.violations.empty());
    CHECK(s.balanced + s.reached_one_first + s.cap_hit == s.audited);

    const auto empty = audit_range(4, 4);
    CHECK(empty.audited == 0);
    CHECK(audit_range(0, 2).audited == 0);
    CHECK_THROWS_AS(audit_range(5, 4), std::invalid_argument);
}

TEST_CASE("audit_range counts up to 10^5") {
    // Independently counted: 4309 odd starts in [3, 99999] reach 1 before
    // #F2 - #F1 returns to zero; the first are 27, 31, 47, 55, 63.
    std::vector<std::uint64_t> first;
    const auto s = audit_range(3, 99'999, kDefaultAuditCap, 2, [&](const BalanceAudit& a) {
        if (a.outcome == BalanceOutcome::ReachedOneFirst && first.size() < 5) {
            first.push_back(static_cast<std::uint64_t>(a.n));
        }
    });
    CHECK(s.audited == 49'999);
    CHECK(s.balanced == 45'690);
    CHECK(s.reached_one_first == 4'309);
    CHECK(s.cap_hit == 0);
    CHECK(s.violations.empty());
    CHECK(first == std::vector<std::uint64_t>{27, 31, 47, 55, 63});
}

TEST_CASE("property: worker count does not change the summary") {
    std::vector<std::uint64_t> order;
    const auto one = audit_range(3, 30'001, kDefaultAuditCap, 1);
    const auto four = audit_range(3, 30'001, kDefaultAuditCap, 4,
                                  [&](const BalanceAudit& a) { order.push_back(static_cast<std::uint64_t>(a.n)); });
    CHECK(one.balanced == four.balanced);
    CHECK(one.reached_one_first == four.reached_one_first);
    CHECK(one.alpha_histogram == four.alpha_histogram);
    CHECK(std::is_sorted(order.begin(), order.end()));
    CHECK(order.size() == four.audited);
}

TEST_CASE("property: the balance prefix is a qualifying word bounded by the alternating word") {
    for (std::uint64_t n = 3; n <= 20'001; n += 2) {
        const auto a = audit(n);
        if (a.outcome != BalanceOutcome::Balanced) {
            continue;
        }
        const auto prefix = word_of(n).word.prefix(2 * *a.alpha);
        REQUIRE(is_qualifying(prefix));
        const auto m = word_to_affine(prefix);
        REQUIRE(apply_exact(m, n) == *a.value_at_balance);
        REQUIRE(m.add <= pow_f1f2(static_cast<unsigned>(*a.alpha)).add);
        REQUIRE(a.bound_ok);
        REQUIRE(a.descent_ok);
    }
}

TEST_CASE("beta return time") {
    // D for 7: 1,2,3,2,3,2,1 -> exceeds 1 at t=2, back to 1 at t=7
    CHECK(beta_return_time(7, 1) == 7u);
    CHECK(beta_return_time(7, 2) == 4u); // exceeds 2 at t=3
    CHECK_FALSE(beta_return_time(7, 3));
}

TEST_CASE("threshold table") {
    struct Row {
        unsigned beta;
        int x;
        Rational s;
        unsigned beta_max;
        unsigned alpha_min;
    };
    for (const Row& row : {Row{1, 3, Rational(1, 3), 1, 4}, Row{2, 4, Rational(2, 27), 2, 10},
                           Row{3, 6, Rational(2, 135), 3, 15}}) {
        CAPTURE(row.beta);
        const auto r = thresholds(row.beta, row.x);
        CHECK(r.s == row.s);
        CHECK(r.s_positive);
        CHECK(r.beta_max == row.beta_max);
        CHECK(r.alpha_min == row.alpha_min);
    }

    const auto edge = thresholds(1, 2);
    CHECK(edge.s == 0);
    CHECK_FALSE(edge.s_positive);
    CHECK_FALSE(edge.alpha_min);
    CHECK_FALSE(edge.beta_max);
    CHECK_THROWS_AS(thresholds(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(thresholds(1, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("descent inequality spot checks") {
    CHECK(beta_descent_check(1, 4, 3));
    CHECK_FALSE(beta_descent_check(1, 3, 3));
    CHECK(beta_descent_check(2, 10, 4));
    CHECK_FALSE(beta_descent_check(2, 9, 4));
    // x = 2, beta = 1: 243/512 + 2 > 2 for every alpha
    CHECK_FALSE(beta_descent_check(1, 4, 2));
    CHECK_FALSE(beta_descent_check(1, 60, 2));
    CHECK_THROWS_AS(beta_descent_check(1, 1, 1), std::invalid_argument);
}

TEST_CASE("property: alpha_min is the first alpha satisfying the descent inequality") {
    for (unsigned beta = 1; beta <= 6; ++beta) {
        for (int x = 3; x <= 100; ++x) {
            CAPTURE(beta);
            CAPTURE(x);
            const auto r = thresholds(beta, x);
            if (r.alpha_min) {
                REQUIRE(r.s_positive);
                REQUIRE(beta_descent_check(beta, *r.alpha_min, x));
                if (*r.alpha_min > 1) {
                    REQUIRE_FALSE(beta_descent_check(beta, *r.alpha_min - 1, x));
                }
            } else {
                REQUIRE_FALSE(r.s_positive);
                for (unsigned alpha = 1; alpha <= 80; ++alpha) {
                    REQUIRE_FALSE(beta_descent_check(beta, alpha, x));
                }
            }
            // S > 0 exactly when (3/2)^beta < (x+1)/2
            REQUIRE(r.s_positive == (r.beta_max && *r.beta_max >= beta));
        }
    }
}
