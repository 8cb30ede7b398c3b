#pragma once

#include "collatz/nat.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace collatz {

struct OrbitStats {
    Nat n;
    std::uint64_t classic_steps = 0;
    std::uint64_t shortcut_steps = 0;
    std::uint64_t f1_count = 0;
    std::uint64_t f2_count = 0;
    Nat peak; // max classic value, including the 3n+1 values

    friend bool operator==(const OrbitStats&, const OrbitStats&) = default;
};

// Either an exhaustive interval (optionally odd n only) or `count` uniform
// draws from [center - width, center + width] with an explicit seed.
struct SampleSpec {
    struct Range {
        std::uint64_t lo = 2;
        std::uint64_t hi = 2;
        bool odd_only = false;
    };
    struct Random {
        std::uint64_t center = 0;
        std::uint64_t width = 0;
        std::uint64_t count = 0;
        std::uint64_t seed = 0;
    };
    std::optional<Range> range;
    std::optional<Random> random;

    static SampleSpec exhaustive(std::uint64_t lo, std::uint64_t hi, bool odd_only = false);
    static SampleSpec sampled(std::uint64_t center, std::uint64_t width, std::uint64_t count,
                              std::uint64_t seed);

    /// The n values this spec denotes, in draw order.
    std::vector<std::uint64_t> values() const;
    std::string describe() const;
};

struct CollectResult {
    std::vector<OrbitStats> stats;
    std::vector<std::uint64_t> cap_hits; // excluded from stats
};

/// Full orbits, no early exit. Throws std::invalid_argument if any n < 2.
OrbitStats orbit_stats(const Nat& n, std::uint64_t cap, bool& cap_hit);
CollectResult collect(const SampleSpec& spec, std::uint64_t cap = 1'000'000, unsigned workers = 1);

struct ModelComparison {
    std::string sample;
    std::uint64_t count = 0;
    double mean_classic_steps = 0.0;
    double geometric_mean_n = 0.0;
    double model_value = 0.0; // 3 log_{4/3}(n̄) - 12.87
    std::optional<double> relative_error; // unset when degenerate or model <= 0
    double mean_f1 = 0.0;
    double mean_f2 = 0.0;
    std::optional<double> f_ratio; // mean_f1 / mean_f2, unset when mean_f2 == 0
    bool degenerate = false;       // fewer than two samples: no verdict
};

double step_model(double n);

/// Throws std::invalid_argument on an empty sample.
ModelComparison compare_model(const std::vector<OrbitStats>& stats, const std::string& sample = "");

/// `n,classic_steps,shortcut_steps,f1,f2,peak` header plus one row per record.
void write_csv(std::ostream& out, const std::vector<OrbitStats>& stats);
std::vector<OrbitStats> read_csv(std::istream& in);

std::string to_json(const std::vector<OrbitStats>& stats);
std::vector<OrbitStats> stats_from_json(const std::string& text);
std::string to_json(const ModelComparison& comparison);

} // namespace collatz
