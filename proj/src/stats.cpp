#include "collatz/stats.hpp"

#include "collatz/detail/ordered_blocks.hpp"

#include <json.hpp>

#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace collatz {

namespace {

constexpr std::uint64_t kStatsBlock = 4096;
constexpr const char* kCsvHeader = "n,classic_steps,shortcut_steps,f1,f2,peak";

std::uint64_t parse_u64(const std::string& text) {
    const Nat v = parse_nat(text);
    if (v > std::numeric_limits<std::uint64_t>::max()) {
        throw std::invalid_argument("count out of range: " + text);
    }
    return static_cast<std::uint64_t>(v);
}

} // namespace

SampleSpec SampleSpec::exhaustive(std::uint64_t lo, std::uint64_t hi, bool odd_only) {
    SampleSpec s;
    s.range = Range{lo, hi, odd_only};
    return s;
}

SampleSpec SampleSpec::sampled(std::uint64_t center, std::uint64_t width, std::uint64_t count,
                               std::uint64_t seed) {
    SampleSpec s;
    s.random = Random{center, width, count, seed};
    return s;
}

std::vector<std::uint64_t> SampleSpec::values() const {
    std::vector<std::uint64_t> out;
    if (range) {
        if (range->lo > range->hi) {
            throw std::invalid_argument("sample range: lo > hi");
        }
        for (std::uint64_t n = range->lo;; ++n) {
            if (!range->odd_only || n % 2 == 1) {
                out.push_back(n);
            }
            if (n == range->hi) {
                break;
            }
        }
    } else if (random) {
        if (random->width > random->center) {
            throw std::invalid_argument("sample width exceeds center");
        }
        std::mt19937_64 rng(random->seed);
        const std::uint64_t lo = random->center - random->width;
        const std::uint64_t span = 2 * random->width + 1;
        out.reserve(random->count);
        for (std::uint64_t i = 0; i < random->count; ++i) {
            // rng() % span keeps the draw sequence identical across standard libraries.
            out.push_back(lo + rng() % span);
        }
    }
    return out;
}

std::string SampleSpec::describe() const {
    std::ostringstream out;
    if (range) {
        out << (range->odd_only ? "odd n in [" : "n in [") << range->lo << ", " << range->hi << "]";
    } else if (random) {
        out << random->count << " draws from [" << random->center - random->width << ", "
            << random->center + random->width << "] seed " << random->seed;
    }
    return out.str();
}

OrbitStats orbit_stats(const Nat& n, std::uint64_t cap, bool& cap_hit) {
    if (n < 2) {
        throw std::invalid_argument("orbit_stats: n must be >= 2");
    }
    OrbitStats s;
    s.n = n;
    WideNat value(n);
    WideNat peak = value;
    cap_hit = false;
    while (!value.is_one()) {
        if (s.shortcut_steps >= cap) {
            cap_hit = true;
            break;
        }
        if (value.odd()) {
            value.triple_plus_one();
            if (peak < value) {
                peak = value;
            }
            ++s.f2_count;
        } else {
            ++s.f1_count;
        }
        value.halve();
        ++s.shortcut_steps;
    }
    s.classic_steps = s.f1_count + 2 * s.f2_count;
    s.peak = peak.to_nat();
    return s;
}

CollectResult collect(const SampleSpec& spec, std::uint64_t cap, unsigned workers) {
    const std::vector<std::uint64_t> ns = spec.values();
    for (std::uint64_t n : ns) {
        if (n < 2) {
            throw std::invalid_argument("collect: every sampled n must be >= 2");
        }
    }
    CollectResult result;
    result.stats.reserve(ns.size());
    const std::uint64_t blocks = (ns.size() + kStatsBlock - 1) / kStatsBlock;

    struct Block {
        std::vector<OrbitStats> stats;
        std::vector<std::uint64_t> cap_hits;
    };
    auto process = [&](std::uint64_t b) {
        Block out;
        const std::size_t begin = b * kStatsBlock;
        const std::size_t end = std::min(ns.size(), static_cast<std::size_t>(begin + kStatsBlock));
        for (std::size_t i = begin; i < end; ++i) {
            bool hit = false;
            OrbitStats s = orbit_stats(Nat(ns[i]), cap, hit);
            if (hit) {
                out.cap_hits.push_back(ns[i]);
            } else {
                out.stats.push_back(std::move(s));
            }
        }
        return out;
    };
    auto commit = [&](std::uint64_t, Block&& block) {
        std::move(block.stats.begin(), block.stats.end(), std::back_inserter(result.stats));
        result.cap_hits.insert(result.cap_hits.end(), block.cap_hits.begin(), block.cap_hits.end());
        return true;
    };
    detail::run_ordered_blocks<Block>(0, blocks, workers, process, commit);
    return result;
}

double step_model(double n) { return 3.0 * std::log(n) / std::log(4.0 / 3.0) - 12.87; }

ModelComparison compare_model(const std::vector<OrbitStats>& stats, const std::string& sample) {
    if (stats.empty()) {
        throw std::invalid_argument("compare_model: empty sample");
    }
    ModelComparison c;
    c.sample = sample;
    c.count = stats.size();
    long double steps = 0;
    long double f1 = 0;
    long double f2 = 0;
    long double log_sum = 0;
    for (const auto& s : stats) {
        steps += static_cast<long double>(s.classic_steps);
        f1 += static_cast<long double>(s.f1_count);
        f2 += static_cast<long double>(s.f2_count);
        log_sum += std::log(s.n.convert_to<long double>());
    }
    const auto count = static_cast<long double>(stats.size());
    c.mean_classic_steps = static_cast<double>(steps / count);
    c.mean_f1 = static_cast<double>(f1 / count);
    c.mean_f2 = static_cast<double>(f2 / count);
    c.geometric_mean_n = static_cast<double>(std::exp(log_sum / count));
    c.model_value = step_model(c.geometric_mean_n);
    if (c.mean_f2 > 0) {
        c.f_ratio = c.mean_f1 / c.mean_f2;
    }
    c.degenerate = stats.size() < 2;
    if (!c.degenerate && c.model_value > 0) {
        c.relative_error = std::abs(c.mean_classic_steps - c.model_value) / c.model_value;
    }
    return c;
}

void write_csv(std::ostream& out, const std::vector<OrbitStats>& stats) {
    out << kCsvHeader << '\n';
    for (const auto& s : stats) {
        out << s.n << ',' << s.classic_steps << ',' << s.shortcut_steps << ',' << s.f1_count << ','
            << s.f2_count << ',' << s.peak << '\n';
    }
}

std::vector<OrbitStats> read_csv(std::istream& in) {
    std::vector<OrbitStats> out;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("stats csv: missing header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 6) {
            throw std::invalid_argument("stats csv: bad row '" + line + "'");
        }
        OrbitStats s;
        s.n = parse_nat(cells[0]);
        s.classic_steps = parse_u64(cells[1]);
        s.shortcut_steps = parse_u64(cells[2]);
        s.f1_count = parse_u64(cells[3]);
        s.f2_count = parse_u64(cells[4]);
        s.peak = parse_nat(cells[5]);
        out.push_back(std::move(s));
    }
    return out;
}

std::string to_json(const std::vector<OrbitStats>& stats) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& s : stats) {
        rows.push_back({{"n", to_string(s.n)},
                        {"classic_steps", s.classic_steps},
                        {"shortcut_steps", s.shortcut_steps},
                        {"f1", s.f1_count},
                        {"f2", s.f2_count},
                        {"peak", to_string(s.peak)}});
    }
    return rows.dump();
}

std::vector<OrbitStats> stats_from_json(const std::string& text) {
    const auto rows = nlohmann::json::parse(text);
    std::vector<OrbitStats> out;
    for (const auto& r : rows) {
        OrbitStats s;
        s.n = parse_nat(r.at("n").get<std::string>());
        s.classic_steps = r.at("classic_steps").get<std::uint64_t>();
        s.shortcut_steps = r.at("shortcut_steps").get<std::uint64_t>();
        s.f1_count = r.at("f1").get<std::uint64_t>();
        s.f2_count = r.at("f2").get<std::uint64_t>();
        s.peak = parse_nat(r.at("peak").get<std::string>());
        out.push_back(std::move(s));
    }
    return out;
}

std::string to_json(const ModelComparison& c) {
    nlohmann::ordered_json j;
    j["sample"] = c.sample;
    j["count"] = c.count;
    j["mean_classic_steps"] = c.mean_classic_steps;
    j["geometric_mean_n"] = c.geometric_mean_n;
    j["model_value"] = c.model_value;
    j["relative_error"] = c.relative_error ? nlohmann::ordered_json(*c.relative_error) : nullptr;
    j["mean_f1"] = c.mean_f1;
    j["mean_f2"] = c.mean_f2;
    j["f_ratio"] = c.f_ratio ? nlohmann::ordered_json(*c.f_ratio) : nullptr;
    j["degenerate"] = c.degenerate;
    return j.dump();
}

} // namespace collatz
