#pragma once

// Compositions of f1(x) = x/2 and f2(x) = (3x+1)/2 as exact dyadic affine
// maps x -> (3^j x + c) / 2^k.

#include "collatz/nat.hpp"
#include "collatz/parity_word.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

// Never reduced: j and k stay equal to the symbol counts of the word that
// produced the map, so equality is componentwise.
struct DyadicAffine {
    std::uint32_t three_exp = 0;
    Nat add = 0;
    std::uint32_t halve = 0;

    static DyadicAffine identity() { return {}; }
    static DyadicAffine f1() { return {0, 0, 1}; }
    static DyadicAffine f2() { return {1, 1, 1}; }

    Rational slope() const;
    Rational intercept() const;

    friend bool operator==(const DyadicAffine&, const DyadicAffine&) = default;
};

/// "(27x+19)/8"
std::string to_string(const DyadicAffine& map);

/// outer(inner(x)).
DyadicAffine compose(const DyadicAffine& outer, const DyadicAffine& inner);

DyadicAffine word_to_affine(const ParityWord& word);

class NonIntegral : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// (3^j n + c) / 2^k when it is an integer; throws NonIntegral otherwise.
Nat apply_exact(const DyadicAffine& map, const Nat& n);

Rational apply_rational(const DyadicAffine& map, const Rational& x);

// Closed forms. Each throws std::invalid_argument when the exponent is 0.
DyadicAffine pow_f1f2(unsigned alpha);                       // (f1 f2)^alpha
DyadicAffine pow_f2f1(unsigned alpha);                       // (f2 f1)^alpha
DyadicAffine pow_f2(unsigned beta);                          // f2^beta
DyadicAffine combo_f2beta_f1f2alpha(unsigned beta, unsigned alpha); // f2^beta (f1 f2)^alpha

/// The word whose composition is (f1 f2)^alpha, i.e. [F2,F1] repeated.
ParityWord alternating_f1f2(unsigned alpha);
/// [F1,F2] repeated: (f2 f1)^alpha.
ParityWord alternating_f2f1(unsigned alpha);

enum class RayVerdict { AlwaysLess, AlwaysGreater, Equal, CrossesAt };

struct RayComparison {
    RayVerdict verdict = RayVerdict::Equal;
    std::optional<Rational> crossing; // set iff verdict == CrossesAt
    Rational threshold;
};

/// Compares a(x) with b(x) over the open ray x > x0.
RayComparison compare_on_ray(const DyadicAffine& a, const DyadicAffine& b, const Rational& x0);

const char* to_string(RayVerdict verdict);

inline constexpr unsigned kWordEnumerationCap = 8;

/// Length 2*alpha, D(t) > 0 for 0 < t < 2*alpha and D(2*alpha) = 0.
bool is_qualifying(const ParityWord& word);

/// All qualifying words of half-length alpha in lexicographic order
/// (F1 < F2). Throws std::out_of_range unless 1 <= alpha <= cap.
std::vector<ParityWord> enumerate_qualifying_words(unsigned alpha, unsigned cap = kWordEnumerationCap);

struct DominanceReport {
    unsigned alpha = 0;
    Nat bound;                                 // 4^alpha - 3^alpha
    std::vector<ParityWord> words;             // every qualifying word checked
    std::vector<ParityWord> equal_words;       // c_w == bound
    std::vector<ParityWord> counterexamples;   // c_w > bound or slope mismatch

    bool holds() const { return counterexamples.empty(); }
    bool strict() const { return holds() && equal_words.empty(); }
};

/// Checks every qualifying word of half-length alpha against (f1 f2)^alpha.
DominanceReport dominance_check(unsigned alpha, unsigned cap = kWordEnumerationCap);

struct LemmaCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Runs the closed-form, ordering, descent, composition and dominance
/// checks for all exponents up to the given maxima. Dominance is limited to
/// min(alpha_max, kWordEnumerationCap).
std::vector<LemmaCheck> verify_lemma(unsigned alpha_max, unsigned beta_max);

} // namespace collatz
