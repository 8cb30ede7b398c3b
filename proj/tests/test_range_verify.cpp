#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "collatz/range_verify.hpp"
#include "oracles.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace collatz;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("collatz-rv-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path file(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

RangeJob job(std::uint64_t lo, std::uint64_t hi, RecordsMode mode = RecordsMode::Full) {
    RangeJob j;
    j.lo = lo;
    j.hi = hi;
    j.records = mode;
    return j;
}

} // namespace

TEST_CASE("small ranges") {
    const auto s = verify_range(job(2, 10));
    CHECK(s.verified_count == 9);
    CHECK(s.nonconvergent.empty());
    CHECK(s.max_classic_steps == StepRecord{9, 19});
    CHECK(s.max_peak == PeakRecord{7, 52}); // 7 and 9 both peak at 52; smallest wins
    CHECK(s.complete());

    const auto two = verify_range(job(2, 2));
    CHECK(two.verified_count == 1);
    CHECK(two.max_peak == PeakRecord{2, 2});
    CHECK(two.max_classic_steps == StepRecord{2, 1});

    const auto fast = verify_range(job(2, 10, RecordsMode::Fast));
    CHECK(fast.verified_count == 9);
    CHECK_FALSE(fast.max_classic_steps);
    CHECK_FALSE(fast.max_peak);
}

TEST_CASE("malformed jobs") {
    CHECK_THROWS_AS(verify_range(job(1, 10)), std::invalid_argument);
    CHECK_THROWS_AS(verify_range(job(10, 9)), std::invalid_argument);
    auto j = job(2, 10);
    j.block_size = 0;
    CHECK_THROWS_AS(verify_range(j), std::invalid_argument);
    j = job(2, 10);
    CHECK_THROWS_AS(resume(j), std::invalid_argument); // no checkpoint path
}

TEST_CASE("records match the brute-force oracle") {
    StepRecord steps{0, 0};
    PeakRecord peak{0, 0};
    for (std::uint64_t n = 2; n <= 10'000; ++n) {
        const auto o = oracle::classic_orbit(n);
        if (o.steps > steps.steps) {
            steps = {n, o.steps};
        }
        if (o.peak > peak.peak) {
            peak = {n, o.peak};
        }
    }
    auto j = job(2, 10'000);
    j.block_size = 777;
    const auto s = verify_range(j);
    CHECK(s.verified_count == 9'999);
    CHECK(s.max_classic_steps == steps);
    CHECK(s.max_peak == peak);
}

TEST_CASE("early exit and full orbits agree on convergence") {
    const auto fast = verify_range(job(2, 200'000, RecordsMode::Fast));
    const auto full = verify_range(job(2, 200'000, RecordsMode::Full));
    CHECK(fast.verified_count == full.verified_count);
    CHECK(fast.nonconvergent == full.nonconvergent);
    CHECK(fast.nonconvergent.empty());

    // With a tiny cap both modes flag candidates; a fast-mode candidate must
    // also fail the stronger full-orbit test.
    auto f = job(2, 5'000, RecordsMode::Fast);
    auto g = job(2, 5'000, RecordsMode::Full);
    f.cap = g.cap = 20;
    const auto fc = verify_range(f);
    const auto gc = verify_range(g);
    CHECK_FALSE(fc.nonconvergent.empty());
    for (auto n : fc.nonconvergent) {
        CHECK(std::binary_search(gc.nonconvergent.begin(), gc.nonconvergent.end(), n));
    }
    CHECK(fc.verified_count + fc.nonconvergent.size() == 4'999);
}

TEST_CASE("property: worker count, block size and arithmetic do not change results") {
    auto base = job(2, 300'000);
    base.block_size = 10'000;
    const auto reference = verify_range(base);
    for (unsigned workers : {2u, 8u}) {
        auto j = base;
        j.workers = workers;
        CHECK(same_results(verify_range(j), reference));
    }
    auto big = base;
    big.arithmetic = Arithmetic::ForceBig;
    big.workers = 4;
    CHECK(same_results(verify_range(big), reference));

    auto other = base;
    other.block_size = 4'321;
    const auto s = verify_range(other);
    CHECK(s.verified_count == reference.verified_count);
    CHECK(s.max_classic_steps == reference.max_classic_steps);
    CHECK(s.max_peak == reference.max_peak);
}

TEST_CASE("checkpoint text round-trips bit-exactly") {
    TempDir dir;
    auto j = job(2, 50'000);
    j.block_size = 4'096;
    j.checkpoint_path = dir.file("cp");
    verify_range(j);
    const std::string text = slurp(dir.file("cp"));
    const Checkpoint cp = parse_checkpoint(text);
    CHECK(cp.blocks.size() == 13);
    CHECK(cp.torn_tail_bytes == 0);
    CHECK(format_checkpoint(cp) == text);
    CHECK(text.rfind("collatz-checkpoint 1 2 50000 4096 1000000 full ", 0) == 0);
    for (std::size_t i = 0; i < cp.blocks.size(); ++i) {
        CHECK(cp.blocks[i].block_index == i);
        CHECK(text.compare(cp.block_offsets[i], format_block_line(cp.blocks[i]).size(),
                           format_block_line(cp.blocks[i])) == 0);
    }
}

TEST_CASE("interrupted runs resume to the uninterrupted result") {
    TempDir dir;
    for (RecordsMode mode : {RecordsMode::Fast, RecordsMode::Full}) {
        for (std::uint64_t cap : {1'000'000ull, 30ull}) {
            auto j = job(2, 100'000, mode);
            j.block_size = 3'000;
            j.cap = cap;
            const auto whole = verify_range(j);

            j.checkpoint_path = dir.file("cp");
            j.max_blocks = 7;
            const auto part = verify_range(j);
            CHECK_FALSE(part.complete());
            CHECK(part.blocks_done == 7);

            j.max_blocks = 5; // another partial stretch
            j.workers = 3;
            CHECK(resume(j).blocks_done == 12);

            j.max_blocks.reset();
            const auto resumed = resume(j);
            CHECK(resumed.complete());
            CHECK(same_results(resumed, whole));

            // Resuming a finished checkpoint recomputes nothing new.
            CHECK(same_results(resume(j), whole));
        }
    }
}

TEST_CASE("resume with a missing or empty checkpoint starts fresh") {
    TempDir dir;
    auto j = job(2, 20'000);
    j.block_size = 1'000;
    j.checkpoint_path = dir.file("missing");
    const auto a = resume(j);
    CHECK(a.complete());
    spit(dir.file("empty"), "");
    j.checkpoint_path = dir.file("empty");
    CHECK(same_results(resume(j), a));
}

TEST_CASE("a torn last line is dropped and recomputed") {
    TempDir dir;
    auto j = job(2, 40'000);
    j.block_size = 2'000;
    j.checkpoint_path = dir.file("cp");
    const auto whole = verify_range(j);
    const std::string text = slurp(dir.file("cp"));
    const Checkpoint cp = parse_checkpoint(text);

    // Cut halfway through block 5's line.
    const auto cut = cp.block_offsets[5] + 7;
    spit(dir.file("cp"), text.substr(0, cut));
    const Checkpoint torn = parse_checkpoint(text.substr(0, cut));
    CHECK(torn.blocks.size() == 5);
    CHECK(torn.torn_tail_bytes == 7);

    CHECK(same_results(resume(j), whole));
    CHECK(slurp(dir.file("cp")) == text);
}

TEST_CASE("corrupt lines are reported with their byte offset") {
    TempDir dir;
    auto j = job(2, 40'000);
    j.block_size = 2'000;
    j.checkpoint_path = dir.file("cp");
    verify_range(j);
    const std::string text = slurp(dir.file("cp"));
    const Checkpoint cp = parse_checkpoint(text);
    const auto at = cp.block_offsets[3];
    const auto eol = text.find('\n', at);

    SUBCASE("garbage") {
        spit(dir.file("cp"), text.substr(0, at) + "3 oops\n" + text.substr(eol + 1));
        try {
            resume(j);
            FAIL("expected CorruptCheckpoint");
        } catch (const CorruptCheckpoint& e) {
            CHECK(e.offset() == at);
        }
    }
    SUBCASE("well-formed but wrong") {
        BlockLine bad = cp.blocks[3];
        bad.verified_count -= 1;
        spit(dir.file("cp"), text.substr(0, at) + format_block_line(bad) + text.substr(eol + 1));
        try {
            resume(j);
            FAIL("expected CorruptCheckpoint");
        } catch (const CorruptCheckpoint& e) {
            CHECK(e.offset() == at);
        }
    }
    SUBCASE("leading zero") {
        std::string line = text.substr(at, eol - at);
        line.insert(line.find(' ') + 1, "0");
        spit(dir.file("cp"), text.substr(0, at) + line + "\n" + text.substr(eol + 1));
        CHECK_THROWS_AS(resume(j), CorruptCheckpoint);
    }
    SUBCASE("header edited without its hash") {
        std::string edited = text;
        edited.replace(edited.find(" 40000 "), 7, " 40001 ");
        spit(dir.file("cp"), edited);
        try {
            resume(j);
            FAIL("expected CorruptCheckpoint");
        } catch (const CorruptCheckpoint& e) {
            CHECK(e.offset() == 0);
        }
    }
}

TEST_CASE("a checkpoint from a different job is rejected") {
    TempDir dir;
    auto j = job(2, 40'000);
    j.block_size = 2'000;
    j.checkpoint_path = dir.file("cp");
    j.max_blocks = 3;
    verify_range(j);
    j.max_blocks.reset();
    const std::string before = slurp(dir.file("cp"));

    for (auto tweak : {+[](RangeJob& x) { x.hi = 40'001; }, +[](RangeJob& x) { x.block_size = 1'000; },
                       +[](RangeJob& x) { x.cap = 99; }, +[](RangeJob& x) { x.records = RecordsMode::Fast; }}) {
        auto other = j;
        tweak(other);
        CHECK_THROWS_AS(resume(other), RejectedMismatch);
        CHECK(slurp(dir.file("cp")) == before);
    }
}
