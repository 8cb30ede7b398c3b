#include "collatz/orbit.hpp"

#include <stdexcept>

namespace collatz {

Nat classic_step(const Nat& n) {
    if (n <= 0) {
        throw std::invalid_argument("classic_step: n must be >= 1");
    }
    if (boost::multiprecision::bit_test(n, 0)) {
        return 3 * n + 1;
    }
    return n >> 1;
}

std::pair<Nat, StepKind> shortcut_step(const Nat& n) {
    if (n <= 1) {
        throw std::invalid_argument("shortcut_step: n must be >= 2");
    }
    if (boost::multiprecision::bit_test(n, 0)) {
        return {(3 * n + 1) >> 1, StepKind::F2};
    }
    return {n >> 1, StepKind::F1};
}

OrbitRecord run_orbit(const Nat& n, MapKind map, StopPolicy policy, bool keep_trace,
                      Arithmetic arithmetic) {
    if (n < 2) {
        throw std::invalid_argument("run_orbit: n must be >= 2");
    }
    if (policy.cap == 0) {
        throw std::invalid_argument("run_orbit: cap must be >= 1");
    }

    OrbitRecord rec;
    rec.start = n;
    rec.map = map;

    const WideNat start(n, arithmetic);
    WideNat value = start;
    WideNat peak = start;
    std::int64_t balance = 0;
    if (keep_trace) {
        rec.values.push_back(n);
    }

    while (true) {
        if (value.is_one()) {
            rec.stop_reason = StopReason::ReachedOne;
            break;
        }
        if (rec.steps_total >= policy.cap) {
            rec.stop_reason = StopReason::CapHit;
            break;
        }

        if (value.odd()) {
            if (map == MapKind::Classic) {
                value.triple_plus_one();
            } else {
                value.shortcut_odd();
            }
            rec.word.push_back(StepKind::F2);
            ++rec.f2_count;
            ++balance;
        } else {
            value.halve();
            rec.word.push_back(StepKind::F1);
            ++rec.f1_count;
            --balance;
        }
        ++rec.steps_total;

        if (peak < value) {
            peak = value;
        }
        if (keep_trace) {
            rec.values.push_back(value.to_nat());
        }
        const bool below = value < start;
        if (below && !rec.first_drop_time) {
            rec.first_drop_time = rec.steps_total;
        }

        if (value.is_one()) {
            rec.stop_reason = StopReason::ReachedOne;
            break;
        }
        if (policy.mode == StopMode::DropBelowStart && below) {
            rec.stop_reason = StopReason::DroppedBelowStart;
            break;
        }
        if (policy.mode == StopMode::FirstCountBalance && balance == 0) {
            rec.stop_reason = StopReason::Balanced;
            break;
        }
    }

    rec.peak = peak.to_nat();
    rec.final_value = value.to_nat();
    return rec;
}

WordResult word_of(const Nat& n, std::uint64_t cap) {
    WordResult out;
    if (n <= 1) {
        return out;
    }
    WideNat value(n);
    while (!value.is_one()) {
        if (out.word.size() >= cap) {
            out.cap_hit = true;
            break;
        }
        if (value.odd()) {
            value.shortcut_odd();
            out.word.push_back(StepKind::F2);
        } else {
            value.halve();
            out.word.push_back(StepKind::F1);
        }
    }
    return out;
}

const char* to_string(MapKind map) {
    return map == MapKind::Classic ? "classic" : "shortcut";
}

const char* to_string(StopReason reason) {
    switch (reason) {
    case StopReason::ReachedOne:
        return "reached-one";
    case StopReason::DroppedBelowStart:
        return "dropped-below-start";
    case StopReason::Balanced:
        return "balanced";
    case StopReason::CapHit:
        return "cap-hit";
    }
    return "unknown";
}

} // namespace collatz
