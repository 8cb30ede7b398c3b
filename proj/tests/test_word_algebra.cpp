#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatz/word_algebra.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace collatz;

namespace {

// Checks the map against the symbol-by-symbol oracle at a few points.
void check_against_oracle(const ParityWord& w) {
    const DyadicAffine m = word_to_affine(w);
    REQUIRE(m.three_exp == w.f2_count());
    REQUIRE(m.halve == w.size());
    for (const Rational& x : {Rational(0), Rational(1), Rational(7, 3), Rational(-5, 2), Rational(1000)}) {
        REQUIRE(apply_rational(m, x) == oracle::apply_word(w, x));
    }
}

bool brute_qualifying(const ParityWord& w, unsigned alpha) {
    if (w.size() != 2 * alpha) {
        return false;
    }
    std::int64_t d = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
        d += w[t] == StepKind::F2 ? 1 : -1;
        if (t + 1 < w.size() && d <= 0) {
            return false;
        }
    }
    return d == 0;
}

} // namespace

TEST_CASE("basic maps") {
    CHECK(to_string(DyadicAffine::f1()) == "(x)/2");
    CHECK(to_string(DyadicAffine::f2()) == "(3x+1)/2");
    CHECK(word_to_affine({}) == DyadicAffine::identity());
    CHECK(word_to_affine(ParityWord::from_composition("f1f2")) == DyadicAffine{1, 1, 2});
    CHECK(word_to_affine(ParityWord::from_composition("f2f1")) == DyadicAffine{1, 2, 2});
    CHECK(word_to_affine(ParityWord::from_composition("f2f2")) == DyadicAffine{2, 5, 2});
}

TEST_CASE("closed forms") {
    CHECK(pow_f1f2(1) == DyadicAffine{1, 1, 2});
    CHECK(pow_f1f2(2) == DyadicAffine{2, 7, 4});
    CHECK(pow_f1f2(3) == DyadicAffine{3, 37, 6});
    CHECK(pow_f2f1(2) == DyadicAffine{2, 14, 4});
    CHECK(pow_f2(3) == DyadicAffine{3, 19, 3});
    CHECK(to_string(pow_f2(3)) == "(27x+19)/8");
    CHECK(combo_f2beta_f1f2alpha(1, 1) == DyadicAffine{2, 7, 3});
    CHECK(to_string(combo_f2beta_f1f2alpha(1, 1)) == "(9x+7)/8");
    // f2 applied to (9x+7)/16: (3(9x+7)/16 + 1)/2 = (27x+37)/32
    CHECK(to_string(combo_f2beta_f1f2alpha(1, 2)) == "(27x+37)/32");
    CHECK_THROWS_AS(pow_f1f2(0), std::invalid_argument);
    CHECK_THROWS_AS(pow_f2(0), std::invalid_argument);
    CHECK_THROWS_AS(combo_f2beta_f1f2alpha(0, 1), std::invalid_argument);

    for (unsigned a = 1; a <= 30; ++a) {
        CAPTURE(a);
        CHECK(pow_f1f2(a) == word_to_affine(alternating_f1f2(a)));
        CHECK(pow_f2f1(a) == word_to_affine(alternating_f2f1(a)));
        CHECK(pow_f1f2(a).add == pow_nat(4, a) - pow_nat(3, a));
        for (unsigned b = 1; b <= 30; b += 7) {
            ParityWord w = alternating_f1f2(a);
            for (unsigned i = 0; i < b; ++i) {
                w.push_back(StepKind::F2);
            }
            CHECK(combo_f2beta_f1f2alpha(b, a) == word_to_affine(w));
        }
    }
    for (unsigned b = 1; b <= 30; ++b) {
        CHECK(pow_f2(b).add == pow_nat(3, b) - pow_nat(2, b));
    }
}

TEST_CASE("exact application") {
    CHECK(apply_exact(pow_f1f2(1), 5) == 4);
    CHECK_THROWS_AS(apply_exact(pow_f1f2(1), 3), NonIntegral); // 10/4
    CHECK(apply_rational(pow_f1f2(5), 7) == Rational(2482, 1024));
    CHECK_THROWS_AS(apply_exact(DyadicAffine{1, 1, 2}, 4), NonIntegral);
    // The whole word of 3 sends 3 to 1.
    const auto w3 = oracle::shortcut_word(3);
    CHECK(apply_exact(word_to_affine(w3), 3) == 1);
}

TEST_CASE("ray comparisons") {
    const auto r = compare_on_ray(pow_f2f1(1), pow_f1f2(1), 0);
    CHECK(r.verdict == RayVerdict::AlwaysGreater); // (3x+2)/4 > (3x+1)/4
    CHECK(compare_on_ray(pow_f1f2(2), pow_f1f2(2), 0).verdict == RayVerdict::Equal);
    // (x)/2 vs (3x+1)/2 : the slopes differ, they meet at x = -1/2
    const auto c = compare_on_ray(DyadicAffine::f1(), DyadicAffine::f2(), Rational(-1));
    CHECK(c.verdict == RayVerdict::CrossesAt);
    CHECK(c.crossing == Rational(-1, 2));
    CHECK(compare_on_ray(DyadicAffine::f1(), DyadicAffine::f2(), 0).verdict == RayVerdict::AlwaysLess);
}

TEST_CASE("qualifying-word enumeration matches brute force") {
    for (unsigned alpha = 1; alpha <= kWordEnumerationCap; ++alpha) {
        CAPTURE(alpha);
        std::vector<ParityWord> brute;
        for (auto& w : oracle::all_words(2 * alpha)) {
            if (brute_qualifying(w, alpha)) {
                CHECK(is_qualifying(w));
                brute.push_back(w);
            } else {
                CHECK_FALSE(is_qualifying(w));
            }
        }
        std::sort(brute.begin(), brute.end());
        const auto listed = enumerate_qualifying_words(alpha);
        CHECK(listed == brute);
        CHECK(listed.size() == oracle::catalan(alpha - 1));
    }
    CHECK_THROWS_AS(enumerate_qualifying_words(0), std::out_of_range);
    CHECK_THROWS_AS(enumerate_qualifying_words(kWordEnumerationCap + 1), std::out_of_range);
    CHECK(enumerate_qualifying_words(9, 9).size() == oracle::catalan(8));
}

TEST_CASE("dominance by the alternating word") {
    const auto d1 = dominance_check(1);
    CHECK(d1.holds());
    CHECK_FALSE(d1.strict()); // the single word is the alternating one itself
    for (unsigned alpha = 2; alpha <= kWordEnumerationCap; ++alpha) {
        const auto d = dominance_check(alpha);
        CAPTURE(alpha);
        CHECK(d.strict());
        CHECK(d.words.size() == oracle::catalan(alpha - 1));
        for (const auto& w : d.words) {
            const auto m = word_to_affine(w);
            CHECK(m.three_exp == alpha);
            CHECK(m.halve == 2 * alpha);
            CHECK(m.add < d.bound);
        }
    }
    const auto d3 = dominance_check(3);
    std::vector<Nat> adds;
    for (const auto& w : d3.words) {
        adds.push_back(word_to_affine(w).add);
    }
    std::sort(adds.begin(), adds.end());
    CHECK(adds == std::vector<Nat>{19, 23});
    CHECK(d3.bound == 37);
}

TEST_CASE("lemma battery") {
    const auto checks = verify_lemma(30, 30);
    CHECK(checks.size() == 9);
    for (const auto& c : checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("property: word maps agree with symbol-by-symbol application") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        check_against_oracle(oracle::random_word(rng, 40));
    }
    for (unsigned len = 0; len <= 8; ++len) {
        for (const auto& w : oracle::all_words(len)) {
            check_against_oracle(w);
        }
    }
}

TEST_CASE("property: composition is a homomorphism") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto u = oracle::random_word(rng, 30);
        const auto v = oracle::random_word(rng, 30);
        // u applied first, then v
        REQUIRE(word_to_affine(u + v) == compose(word_to_affine(v), word_to_affine(u)));
    }
    const auto id = DyadicAffine::identity();
    const auto m = pow_f2(4);
    CHECK(compose(id, m) == m);
    CHECK(compose(m, id) == m);
}

TEST_CASE("property: applying an F2 later raises the constant") {
    // Swapping an adjacent (F2, F1) to (F1, F2) in application order keeps
    // j and k and raises c.
    for (unsigned len = 2; len <= 12; ++len) {
        for (const auto& w : oracle::all_words(len)) {
            const auto base = word_to_affine(w);
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                if (w[i] == StepKind::F2 && w[i + 1] == StepKind::F1) {
                    auto symbols = w.symbols();
                    std::swap(symbols[i], symbols[i + 1]);
                    const auto swapped = word_to_affine(ParityWord(symbols));
                    REQUIRE(swapped.three_exp == base.three_exp);
                    REQUIRE(swapped.halve == base.halve);
                    REQUIRE(swapped.add > base.add);
                }
            }
        }
    }
}

TEST_CASE("property: maps are strictly increasing") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-1000, 1000);
    std::uniform_int_distribution<int> den(1, 97);
    for (int i = 0; i < 500; ++i) {
        const auto m = word_to_affine(oracle::random_word(rng, 20));
        Rational a(num(rng), den(rng));
        Rational b(num(rng), den(rng));
        if (a == b) {
            continue;
        }
        if (b < a) {
            std::swap(a, b);
        }
        REQUIRE(apply_rational(m, a) < apply_rational(m, b));
    }
}
