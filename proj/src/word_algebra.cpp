#include "collatz/word_algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace collatz {

namespace {

Nat pow2(unsigned k) { return Nat(1) << k; }

void require_positive(unsigned exponent, const char* what) {
    if (exponent == 0) {
        throw std::invalid_argument(std::string(what) + ": exponent must be >= 1");
    }
}

} // namespace

Rational DyadicAffine::slope() const {
    return Rational(pow_nat(3, three_exp), pow2(halve));
}

Rational DyadicAffine::intercept() const { return Rational(add, pow2(halve)); }

std::string to_string(const DyadicAffine& map) {
    std::ostringstream out;
    const Nat coeff = pow_nat(3, map.three_exp);
    out << '(';
    if (coeff != 1) {
        out << coeff;
    }
    out << 'x';
    if (map.add != 0) {
        out << '+' << map.add;
    }
    out << ")/" << pow2(map.halve);
    return out.str();
}

DyadicAffine compose(const DyadicAffine& outer, const DyadicAffine& inner) {
    // (3^jo * (3^ji x + ci) / 2^ki + co) / 2^ko
    DyadicAffine out;
    out.three_exp = outer.three_exp + inner.three_exp;
    out.halve = outer.halve + inner.halve;
    out.add = pow_nat(3, outer.three_exp) * inner.add + (outer.add << inner.halve);
    return out;
}

DyadicAffine word_to_affine(const ParityWord& word) {
    DyadicAffine acc = DyadicAffine::identity();
    for (StepKind s : word) {
        acc = compose(s == StepKind::F1 ? DyadicAffine::f1() : DyadicAffine::f2(), acc);
    }
    return acc;
}

Nat apply_exact(const DyadicAffine& map, const Nat& n) {
    const Nat numerator = pow_nat(3, map.three_exp) * n + map.add;
    const Nat mask = pow2(map.halve) - 1;
    if ((numerator & mask) != 0) {
        throw NonIntegral("(" + to_string(numerator) + ")/2^" + std::to_string(map.halve) +
                          " is not an integer");
    }
    return numerator >> map.halve;
}

Rational apply_rational(const DyadicAffine& map, const Rational& x) {
    return map.slope() * x + map.intercept();
}

DyadicAffine pow_f1f2(unsigned alpha) {
    require_positive(alpha, "pow_f1f2");
    return {alpha, pow_nat(4, alpha) - pow_nat(3, alpha), 2 * alpha};
}

DyadicAffine pow_f2f1(unsigned alpha) {
    require_positive(alpha, "pow_f2f1");
    return {alpha, 2 * (pow_nat(4, alpha) - pow_nat(3, alpha)), 2 * alpha};
}

DyadicAffine pow_f2(unsigned beta) {
    require_positive(beta, "pow_f2");
    return {beta, pow_nat(3, beta) - pow_nat(2, beta), beta};
}

DyadicAffine combo_f2beta_f1f2alpha(unsigned beta, unsigned alpha) {
    require_positive(beta, "combo_f2beta_f1f2alpha");
    require_positive(alpha, "combo_f2beta_f1f2alpha");
    // (3/4)^a (3/2)^b (x-1) + 2 (3/2)^b - 1 over the common denominator 2^(2a+b)
    DyadicAffine out;
    out.three_exp = alpha + beta;
    out.halve = 2 * alpha + beta;
    out.add = pow2(2 * alpha + 1) * pow_nat(3, beta) - pow2(2 * alpha + beta) -
              pow_nat(3, alpha + beta);
    return out;
}

ParityWord alternating_f1f2(unsigned alpha) {
    ParityWord w;
    w.reserve(2 * alpha);
    for (unsigned i = 0; i < alpha; ++i) {
        w.push_back(StepKind::F2);
        w.push_back(StepKind::F1);
    }
    return w;
}

ParityWord alternating_f2f1(unsigned alpha) {
    ParityWord w;
    w.reserve(2 * alpha);
    for (unsigned i = 0; i < alpha; ++i) {
        w.push_back(StepKind::F1);
        w.push_back(StepKind::F2);
    }
    return w;
}

RayComparison compare_on_ray(const DyadicAffine& a, const DyadicAffine& b, const Rational& x0) {
    RayComparison out;
    out.threshold = x0;
    const Rational slope_diff = a.slope() - b.slope();
    const Rational intercept_diff = a.intercept() - b.intercept();

    if (slope_diff == 0) {
        if (intercept_diff < 0) {
            out.verdict = RayVerdict::AlwaysLess;
        } else if (intercept_diff > 0) {
            out.verdict = RayVerdict::AlwaysGreater;
        } else {
            out.verdict = RayVerdict::Equal;
        }
        return out;
    }

    // a(x) - b(x) vanishes only at the crossing; left of x0 (or on it) the
    // sign over the open ray is the sign of the slope difference.
    const Rational crossing = -intercept_diff / slope_diff;
    if (crossing <= x0) {
        out.verdict = slope_diff < 0 ? RayVerdict::AlwaysLess : RayVerdict::AlwaysGreater;
    } else {
        out.verdict = RayVerdict::CrossesAt;
        out.crossing = crossing;
    }
    return out;
}

const char* to_string(RayVerdict verdict) {
    switch (verdict) {
    case RayVerdict::AlwaysLess:
        return "always-less";
    case RayVerdict::AlwaysGreater:
        return "always-greater";
    case RayVerdict::Equal:
        return "equal";
    case RayVerdict::CrossesAt:
        return "crosses";
    }
    return "unknown";
}

bool is_qualifying(const ParityWord& word) {
    if (word.empty() || word.size() % 2 != 0) {
        return false;
    }
    const auto d = word.profile();
    for (std::size_t t = 1; t < word.size(); ++t) {
        if (d[t] <= 0) {
            return false;
        }
    }
    return d.back() == 0;
}

std::vector<ParityWord> enumerate_qualifying_words(unsigned alpha, unsigned cap) {
    if (alpha < 1 || alpha > cap) {
        throw std::out_of_range("enumerate_qualifying_words: alpha must be in [1, " +
                                std::to_string(cap) + "]");
    }
    const std::size_t length = 2 * static_cast<std::size_t>(alpha);
    std::vector<ParityWord> out;
    std::vector<StepKind> current;
    current.reserve(length);

    std::function<void(std::int64_t)> extend = [&](std::int64_t level) {
        const std::size_t t = current.size();
        if (t == length) {
            out.emplace_back(current);
            return;
        }
        const auto remaining = static_cast<std::int64_t>(length - t);
        // F1: level drops; it may reach 0 only on the final symbol.
        if (level - 1 > 0 || (level - 1 == 0 && remaining == 1)) {
            current.push_back(StepKind::F1);
            extend(level - 1);
            current.pop_back();
        }
        // F2: only if there is still room to come back down to 0.
        if (level + 1 <= remaining - 1) {
            current.push_back(StepKind::F2);
            extend(level + 1);
            current.pop_back();
        }
    };
    extend(0);
    return out;
}

DominanceReport dominance_check(unsigned alpha, unsigned cap) {
    DominanceReport report;
    report.alpha = alpha;
    const DyadicAffine reference = pow_f1f2(alpha);
    report.bound = reference.add;
    report.words = enumerate_qualifying_words(alpha, cap);
    for (const auto& w : report.words) {
        const DyadicAffine m = word_to_affine(w);
        // Equal slopes reduce pointwise dominance on x > 0 to the constants.
        if (m.three_exp != reference.three_exp || m.halve != reference.halve ||
            m.add > reference.add) {
            report.counterexamples.push_back(w);
        } else if (m.add == reference.add) {
            report.equal_words.push_back(w);
        }
    }
    return report;
}

std::vector<LemmaCheck> verify_lemma(unsigned alpha_max, unsigned beta_max) {
    std::vector<LemmaCheck> checks;
    auto fail = [](LemmaCheck& c, const std::string& why) {
        if (c.passed) {
            c.passed = false;
            c.detail = why;
        }
    };

    {
        LemmaCheck c{"closed form (f1f2)^a equals alternating word", true, ""};
        for (unsigned a = 1; a <= alpha_max; ++a) {
            const auto built = word_to_affine(alternating_f1f2(a));
            if (built != pow_f1f2(a)) {
                fail(c, "alpha=" + std::to_string(a) + ": word gives " + to_string(built) +
                            ", closed form " + to_string(pow_f1f2(a)));
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"closed form (f2f1)^a equals alternating word", true, ""};
        for (unsigned a = 1; a <= alpha_max; ++a) {
            const auto built = word_to_affine(alternating_f2f1(a));
            if (built != pow_f2f1(a)) {
                fail(c, "alpha=" + std::to_string(a) + ": word gives " + to_string(built) +
                            ", closed form " + to_string(pow_f2f1(a)));
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"closed form f2^b equals repeated f2", true, ""};
        for (unsigned b = 1; b <= beta_max; ++b) {
            const auto built = word_to_affine(ParityWord(std::vector<StepKind>(b, StepKind::F2)));
            if (built != pow_f2(b)) {
                fail(c, "beta=" + std::to_string(b) + ": word gives " + to_string(built) +
                            ", closed form " + to_string(pow_f2(b)));
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"monotone: positive slope of (f1f2)^a, (f2f1)^a", true, ""};
        for (unsigned a = 1; a <= alpha_max; ++a) {
            if (pow_f1f2(a).slope() <= 0 || pow_f2f1(a).slope() <= 0) {
                fail(c, "alpha=" + std::to_string(a) + ": non-positive slope");
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"(f1f2)^a < (f2f1)^a on x > 0", true, ""};
        for (unsigned a = 1; a <= alpha_max; ++a) {
            const auto r = compare_on_ray(pow_f1f2(a), pow_f2f1(a), Rational(0));
            if (r.verdict != RayVerdict::AlwaysLess) {
                fail(c, "alpha=" + std::to_string(a) + ": " + to_string(r.verdict));
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"(f1f2)^a(x) < x on x > 1", true, ""};
        for (unsigned a = 1; a <= alpha_max; ++a) {
            const auto r = compare_on_ray(pow_f1f2(a), DyadicAffine::identity(), Rational(1));
            if (r.verdict != RayVerdict::AlwaysLess) {
                fail(c, "alpha=" + std::to_string(a) + ": " + to_string(r.verdict));
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"(f2f1)^a(x) < x on x > 2", true, ""};
        for (unsigned a = 1; a <= alpha_max; ++a) {
            const auto r = compare_on_ray(pow_f2f1(a), DyadicAffine::identity(), Rational(2));
            if (r.verdict != RayVerdict::AlwaysLess) {
                fail(c, "alpha=" + std::to_string(a) + ": " + to_string(r.verdict));
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"f2^b (f1f2)^a closed form equals composition", true, ""};
        for (unsigned b = 1; b <= beta_max; ++b) {
            for (unsigned a = 1; a <= alpha_max; ++a) {
                const auto composed = compose(pow_f2(b), pow_f1f2(a));
                const auto closed = combo_f2beta_f1f2alpha(b, a);
                if (composed != closed) {
                    fail(c, "beta=" + std::to_string(b) + " alpha=" + std::to_string(a) +
                                ": composition " + to_string(composed) + ", closed form " +
                                to_string(closed));
                }
            }
        }
        checks.push_back(std::move(c));
    }
    {
        LemmaCheck c{"qualifying words dominated by (f1f2)^a", true, ""};
        const unsigned top = std::min(alpha_max, kWordEnumerationCap);
        std::ostringstream notes;
        for (unsigned a = 1; a <= top; ++a) {
            const auto report = dominance_check(a);
            if (!report.holds()) {
                const auto& w = report.counterexamples.front();
                fail(c, "alpha=" + std::to_string(a) + ": " + w.composition_string() + " = " +
                            to_string(word_to_affine(w)) + " exceeds " + to_string(pow_f1f2(a)));
            } else if (a == 1) {
                notes << "alpha=1: the only qualifying word f1f2 equals (f1f2)^1 (equality, not strict)";
            } else if (!report.strict()) {
                fail(c, "alpha=" + std::to_string(a) + ": " +
                            report.equal_words.front().composition_string() +
                            " attains the bound (expected strict)");
            }
        }
        if (c.passed) {
            c.detail = notes.str();
        }
        checks.push_back(std::move(c));
    }
    return checks;
}

} // namespace collatz
