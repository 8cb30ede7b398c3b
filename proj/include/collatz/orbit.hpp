#pragma once

// Exact iteration of the classic map (n/2, 3n+1) and the shortcut map
// (f1: n/2 on evens, f2: (3n+1)/2 on odds).

#include "collatz/nat.hpp"
#include "collatz/parity_word.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace collatz {

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000;

enum class MapKind { Classic, Shortcut };

enum class StopMode {
    ReachOne,
    DropBelowStart,
    FirstCountBalance,
    StepCap,
};

enum class StopReason { ReachedOne, DroppedBelowStart, Balanced, CapHit };

// Every mode also stops when the value reaches 1. `cap` bounds the number of
// steps in all modes.
struct StopPolicy {
    StopMode mode = StopMode::ReachOne;
    std::uint64_t cap = kDefaultStepCap;
};

struct OrbitRecord {
    Nat start;
    MapKind map = MapKind::Shortcut;
    // For Classic the raw step sequence: F1 for a halving, F2 for 3n+1.
    ParityWord word;
    std::vector<Nat> values; // start and every value after it; empty unless traced
    std::uint64_t steps_total = 0;
    std::uint64_t f1_count = 0;
    std::uint64_t f2_count = 0;
    Nat peak;
    Nat final_value;
    std::optional<std::uint64_t> first_drop_time;
    StopReason stop_reason = StopReason::CapHit;

    friend bool operator==(const OrbitRecord&, const OrbitRecord&) = default;
};

/// n/2 or 3n+1. Throws std::invalid_argument for n = 0.
Nat classic_step(const Nat& n);

/// (n/2, F1) or ((3n+1)/2, F2). Throws std::invalid_argument for n <= 1.
std::pair<Nat, StepKind> shortcut_step(const Nat& n);

/// Throws std::invalid_argument for n < 2 or cap = 0.
OrbitRecord run_orbit(const Nat& n, MapKind map, StopPolicy policy, bool keep_trace,
                      Arithmetic arithmetic = Arithmetic::Auto);

struct WordResult {
    ParityWord word;
    bool cap_hit = false;
};

/// Shortcut parity word of n in application order, ending at 1 or at `cap`
/// symbols. word_of(1) is empty.
WordResult word_of(const Nat& n, std::uint64_t cap = kDefaultStepCap);

const char* to_string(MapKind map);
const char* to_string(StopReason reason);

} // namespace collatz
