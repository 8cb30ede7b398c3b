// collatz-lab: command-line driver for orbits, lemma checks, balance audits,
// range verification and step statistics.
//
// Exit codes: 0 success, 1 property violation or nonconvergent candidate,
// 2 usage error, 3 cap or resource limit reached.

#include "collatz/claim_audit.hpp"
#include "collatz/orbit.hpp"
#include "collatz/range_verify.hpp"
#include "collatz/report.hpp"
#include "collatz/stats.hpp"
#include "collatz/word_algebra.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace {

using namespace collatz;

enum Exit : int { kOk = 0, kViolation = 1, kUsage = 2, kLimit = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t env_cap(std::uint64_t fallback) {
    const char* raw = std::getenv("COLLATZ_LAB_CAP");
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    try {
        const Nat v = parse_nat(raw);
        if (v < 1 || v > std::numeric_limits<std::uint64_t>::max()) {
            throw std::invalid_argument("out of range");
        }
        return static_cast<std::uint64_t>(v);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string("COLLATZ_LAB_CAP must be a positive integer, got '") + raw + "'");
    }
}

std::uint64_t resolve_cap(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
    if (flag) {
        if (*flag == 0) {
            throw UsageError("--cap must be >= 1");
        }
        return *flag;
    }
    return env_cap(fallback);
}

unsigned resolve_jobs(const std::optional<unsigned>& flag) {
    if (flag) {
        if (*flag == 0) {
            throw UsageError("--jobs must be >= 1");
        }
        return *flag;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t parse_bound(const std::string& text, const char* what) {
    try {
        const Nat v = parse_nat(text);
        if (v > std::numeric_limits<std::uint64_t>::max()) {
            throw std::invalid_argument("too large");
        }
        return static_cast<std::uint64_t>(v);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + " must be a natural number below 2^64, got '" + text + "'");
    }
}

// ---------------------------------------------------------------- orbit

struct OrbitArgs {
    std::string n;
    std::string map = "classic";
    bool trace = false;
    std::string format = "text";
    std::optional<std::uint64_t> cap;
};

int run_orbit_cmd(const OrbitArgs& args) {
    Nat n;
    try {
        n = parse_nat(args.n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (n < 2) {
        throw UsageError("orbit: n must be >= 2 (1 is the terminal state)");
    }
    const MapKind map = args.map == "classic" ? MapKind::Classic : MapKind::Shortcut;
    const StopPolicy policy{StopMode::ReachOne, resolve_cap(args.cap, kDefaultStepCap)};
    const bool text = args.format == "text";
    const OrbitRecord rec = run_orbit(n, map, policy, args.trace || text);

    if (text) {
        std::ostringstream seq;
        for (std::size_t i = 0; i < rec.values.size(); ++i) {
            seq << (i == 0 ? "" : " -> ") << rec.values[i];
        }
        std::cout << "map: " << to_string(rec.map) << '\n'
                  << "sequence: " << seq.str() << '\n'
                  << "steps: " << rec.steps_total;
        if (map == MapKind::Classic) {
            std::cout << " (halvings=" << rec.f1_count << ", triplings=" << rec.f2_count << ")\n";
        } else {
            std::cout << " (f1=" << rec.f1_count << ", f2=" << rec.f2_count << ")\n";
        }
        if (map == MapKind::Shortcut) {
            std::cout << "word (application order): " << rec.word.application_string() << '\n'
                      << "word (composition order): " << rec.word.composition_string() << '\n';
        }
        std::cout << "peak: " << rec.peak << '\n' << "stop: " << to_string(rec.stop_reason) << '\n';
    } else {
        std::cout << to_json(rec).dump() << '\n';
    }
    return rec.stop_reason == StopReason::CapHit ? kLimit : kOk;
}

// ---------------------------------------------------------------- lemma

int run_lemma_cmd(unsigned alpha_max, unsigned beta_max) {
    if (alpha_max < 1 || beta_max < 1) {
        throw UsageError("lemma: --alpha-max and --beta-max must be >= 1");
    }
    bool all = true;
    for (const auto& check : verify_lemma(alpha_max, beta_max)) {
        all = all && check.passed;
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name;
        if (!check.detail.empty()) {
            std::cout << " -- " << check.detail;
        }
        std::cout << '\n';
    }
    std::cout << (all ? "all checks passed" : "some checks failed") << " (alpha <= " << alpha_max
              << ", beta <= " << beta_max << ")\n";
    return all ? kOk : kViolation;
}

// ---------------------------------------------------------------- words

int run_words_cmd(unsigned alpha, bool check, const std::string& format) {
    if (alpha < 1 || alpha > kWordEnumerationCap) {
        throw UsageError("words: --alpha must be in [1, " + std::to_string(kWordEnumerationCap) + "]");
    }
    const DominanceReport report = dominance_check(alpha);
    if (format == "json") {
        std::cout << to_json(report).dump() << '\n';
    } else {
        const DyadicAffine bound = pow_f1f2(alpha);
        std::cout << report.words.size() << " qualifying word(s) for alpha=" << alpha << "; (f1f2)^"
                  << alpha << " = " << to_string(bound) << '\n';
        for (const auto& w : report.words) {
            const DyadicAffine m = word_to_affine(w);
            std::cout << w.composition_string() << "  [application: " << w.application_string() << "]  "
                      << to_string(m);
            if (m == bound) {
                std::cout << "  equal to (f1f2)^" << alpha;
            } else if (m.add < bound.add) {
                std::cout << "  dominated by " << to_string(bound);
            } else {
                std::cout << "  EXCEEDS " << to_string(bound);
            }
            std::cout << '\n';
        }
    }
    return check && !report.holds() ? kViolation : kOk;
}

// ---------------------------------------------------------------- threshold

int run_threshold_cmd(unsigned beta, const std::string& x_text, std::optional<unsigned> alpha) {
    Rational x;
    try {
        x = parse_rational(x_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (x <= 1) {
        throw UsageError("threshold: --x must be > 1");
    }
    Json out = to_json(thresholds(beta, x));
    if (alpha) {
        out["alpha"] = *alpha;
        out["descends"] = beta_descent_check(beta, *alpha, x);
    }
    std::cout << out.dump() << '\n';
    return kOk;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
    std::string lo;
    std::string hi;
    std::optional<std::uint64_t> cap;
    std::optional<unsigned> jobs;
    std::string emit;
    std::optional<unsigned> beta;
};

int run_audit_cmd(const AuditArgs& args) {
    const std::uint64_t lo = parse_bound(args.lo, "LO");
    const std::uint64_t hi = parse_bound(args.hi, "HI");
    if (lo > hi) {
        throw UsageError("audit: LO must be <= HI");
    }
    const std::uint64_t cap = resolve_cap(args.cap, kDefaultAuditCap);

    std::ofstream findings;
    if (!args.emit.empty()) {
        findings.open(args.emit);
        if (!findings) {
            std::cerr << "cannot open " << args.emit << '\n';
            return kLimit;
        }
    }
    std::map<std::uint64_t, std::uint64_t> beta_hist;
    std::uint64_t beta_missing = 0;
    AuditSink sink = [&](const BalanceAudit& a) {
        if (findings.is_open()) {
            findings << to_json(a).dump() << '\n';
        }
        if (args.beta) {
            if (auto t = beta_return_time(a.n, *args.beta, cap)) {
                ++beta_hist[*t];
            } else {
                ++beta_missing;
            }
        }
    };
    const AuditSummary summary = audit_range(lo, hi, cap, resolve_jobs(args.jobs), sink);

    Json out = to_json(summary);
    if (args.beta) {
        Json hist = Json::object();
        for (const auto& [t, count] : beta_hist) {
            hist[std::to_string(t)] = count;
        }
        out["beta_level"] = Json{{"beta", *args.beta},
                                 {"note", "descriptive only: first t with D(t)=beta after D exceeded beta"},
                                 {"observed", summary.audited - beta_missing},
                                 {"not_observed", beta_missing},
                                 {"time_histogram", std::move(hist)}};
    }
    std::cout << out.dump() << '\n';
    if (!summary.violations.empty()) {
        return kViolation;
    }
    return summary.cap_hit != 0 ? kLimit : kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string lo;
    std::string hi;
    std::optional<unsigned> jobs;
    std::string checkpoint;
    bool resume = false;
    std::string records = "fast";
    std::uint64_t block_size = kDefaultBlockSize;
    std::optional<std::uint64_t> cap;
    bool force_bignum = false;
};

int run_verify_cmd(const VerifyArgs& args) {
    RangeJob job;
    job.lo = parse_bound(args.lo, "LO");
    job.hi = parse_bound(args.hi, "HI");
    if (job.lo < 2 || job.lo > job.hi) {
        throw UsageError("verify: need 2 <= LO <= HI");
    }
    if (args.block_size == 0) {
        throw UsageError("verify: --block-size must be >= 1");
    }
    if (args.resume && args.checkpoint.empty()) {
        throw UsageError("verify: --resume needs --checkpoint");
    }
    job.block_size = args.block_size;
    job.workers = resolve_jobs(args.jobs);
    job.cap = resolve_cap(args.cap, kDefaultStepCap);
    job.records = args.records == "full" ? RecordsMode::Full : RecordsMode::Fast;
    job.arithmetic = args.force_bignum ? Arithmetic::ForceBig : Arithmetic::Auto;
    if (!args.checkpoint.empty()) {
        job.checkpoint_path = args.checkpoint;
    }

    RangeSummary summary;
    try {
        summary = args.resume ? resume(job) : verify_range(job);
    } catch (const RejectedMismatch& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const CheckpointError& e) {
        std::cerr << e.what() << '\n';
        return kLimit;
    }
    std::cout << to_json(summary).dump() << '\n';
    return summary.nonconvergent.empty() ? kOk : kViolation;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    std::vector<std::string> range;
    bool odd = false;
    std::optional<std::string> center;
    std::optional<std::string> width;
    std::uint64_t count = 1000;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> cap;
    std::optional<unsigned> jobs;
    std::string rows;
    std::string format = "csv";
};

int run_stats_cmd(const StatsArgs& args) {
    SampleSpec spec;
    if (!args.range.empty()) {
        if (args.center || args.width) {
            throw UsageError("stats: use either --range or --sample-center/--sample-width");
        }
        const std::uint64_t lo = parse_bound(args.range[0], "LO");
        const std::uint64_t hi = parse_bound(args.range[1], "HI");
        if (lo < 2 || lo > hi) {
            throw UsageError("stats: need 2 <= LO <= HI");
        }
        spec = SampleSpec::exhaustive(lo, hi, args.odd);
    } else if (args.center && args.width) {
        const std::uint64_t center = parse_bound(*args.center, "--sample-center");
        const std::uint64_t width = parse_bound(*args.width, "--sample-width");
        if (width > center || center - width < 2) {
            throw UsageError("stats: sample window must stay >= 2");
        }
        spec = SampleSpec::sampled(center, width, args.count, args.seed);
    } else {
        throw UsageError("stats: need --range LO HI or --sample-center N --sample-width W");
    }

    const CollectResult result = collect(spec, resolve_cap(args.cap, kDefaultStepCap), resolve_jobs(args.jobs));

    if (!args.rows.empty()) {
        std::ofstream out(args.rows);
        if (!out) {
            std::cerr << "cannot open " << args.rows << '\n';
            return kLimit;
        }
        if (args.format == "json") {
            out << to_json(result.stats) << '\n';
        } else {
            write_csv(out, result.stats);
        }
    }

    Json out;
    if (result.stats.empty()) {
        out["comparison"] = nullptr;
    } else {
        out["comparison"] = Json::parse(to_json(compare_model(result.stats, spec.describe())));
    }
    out["cap_hits"] = result.cap_hits;
    std::cout << out.dump() << '\n';
    return result.cap_hits.empty() ? kOk : kLimit;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collatz orbit toolkit: orbits, word algebra, balance audits, range verification"};
    app.require_subcommand(1, 1);

    OrbitArgs orbit_args;
    auto* orbit = app.add_subcommand("orbit", "Iterate one orbit to 1");
    orbit->add_option("n", orbit_args.n, "Starting value (>= 2)")->required();
    orbit->add_option("--map", orbit_args.map, "classic or shortcut")
        ->check(CLI::IsMember({"classic", "shortcut"}));
    orbit->add_flag("--trace", orbit_args.trace, "Include every value in JSON output");
    orbit->add_option("--format", orbit_args.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    orbit->add_option("--cap", orbit_args.cap, "Step cap");

    unsigned alpha_max = 30;
    unsigned beta_max = 30;
    auto* lemma = app.add_subcommand("lemma", "Verify the closed forms and inequalities of f1/f2 words");
    lemma->add_option("--alpha-max", alpha_max, "Largest alpha checked (default 30)");
    lemma->add_option("--beta-max", beta_max, "Largest beta checked (default 30)");

    unsigned words_alpha = 0;
    bool check_dominance = false;
    std::string words_format = "text";
    auto* words = app.add_subcommand("words", "List qualifying words of half-length alpha");
    words->add_option("--alpha", words_alpha, "Half-length, 1..8")->required();
    words->add_flag("--check-dominance", check_dominance, "Exit 1 if any word is not dominated");
    words->add_option("--format", words_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    unsigned threshold_beta = 0;
    std::string threshold_x;
    std::optional<unsigned> threshold_alpha;
    auto* threshold = app.add_subcommand("threshold", "S, beta_max and alpha_min for (beta, x)");
    threshold->add_option("--beta", threshold_beta, "beta")->required();
    threshold->add_option("--x", threshold_x, "x > 1, integer or p/q")->required();
    threshold->add_option("--alpha", threshold_alpha, "Also evaluate the descent inequality at alpha");

    AuditArgs audit_args;
    auto* audit_cmd = app.add_subcommand("audit", "Audit first count-balance descent on odd n in [LO, HI]");
    audit_cmd->add_option("lo", audit_args.lo, "LO")->required();
    audit_cmd->add_option("hi", audit_args.hi, "HI")->required();
    audit_cmd->add_option("--cap", audit_args.cap, "Step cap per n (default 100000)");
    audit_cmd->add_option("--jobs", audit_args.jobs, "Worker threads");
    audit_cmd->add_option("--emit", audit_args.emit, "Write one JSON line per audited n");
    audit_cmd->add_option("--beta", audit_args.beta, "Also measure the beta-level return time");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Verify convergence for every n in [LO, HI]");
    verify->add_option("lo", verify_args.lo, "LO (>= 2)")->required();
    verify->add_option("hi", verify_args.hi, "HI")->required();
    verify->add_option("--jobs", verify_args.jobs, "Worker threads");
    verify->add_option("--checkpoint", verify_args.checkpoint, "Checkpoint file");
    verify->add_flag("--resume", verify_args.resume, "Continue from --checkpoint");
    verify->add_option("--records", verify_args.records, "fast (early exit) or full (exact records)")
        ->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--block-size", verify_args.block_size, "Values per block (default 65536)");
    verify->add_option("--cap", verify_args.cap, "Step cap per n");
    verify->add_flag("--force-bignum", verify_args.force_bignum, "Disable the 128-bit fast path");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "Orbit statistics against the average-step model");
    stats->add_option("--range", stats_args.range, "LO HI")->expected(2);
    stats->add_flag("--odd", stats_args.odd, "Only odd n in --range");
    stats->add_option("--sample-center", stats_args.center, "Center of the random window");
    stats->add_option("--sample-width", stats_args.width, "Half-width of the random window");
    stats->add_option("--count", stats_args.count, "Random draws (default 1000)");
    stats->add_option("--seed", stats_args.seed, "Random seed (default 0)");
    stats->add_option("--cap", stats_args.cap, "Step cap per n");
    stats->add_option("--jobs", stats_args.jobs, "Worker threads");
    stats->add_option("--rows", stats_args.rows, "Write per-n rows to this file");
    stats->add_option("--format", stats_args.format, "Row format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*orbit) {
            return run_orbit_cmd(orbit_args);
        }
        if (*lemma) {
            return run_lemma_cmd(alpha_max, beta_max);
        }
        if (*words) {
            return run_words_cmd(words_alpha, check_dominance, words_format);
        }
        if (*threshold) {
            return run_threshold_cmd(threshold_beta, threshold_x, threshold_alpha);
        }
        if (*audit_cmd) {
            return run_audit_cmd(audit_args);
        }
        if (*verify) {
            return run_verify_cmd(verify_args);
        }
        if (*stats) {
            return run_stats_cmd(stats_args);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kLimit;
    }
    return kUsage;
}
