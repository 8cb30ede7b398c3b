#pragma once

// Ascending convergence sweep over [lo, hi]. Each n is iterated under the
// shortcut map until it drops below n (smaller values are covered by the
// sweep itself), reaches 1, or hits the cap. Blocks commit in ascending order
// to an optional line-oriented checkpoint so an interrupted run can resume.

#include "collatz/nat.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

/// Fast: early exit, no records. Full: every n runs to 1 so the classic-step
/// and peak records are exact.
enum class RecordsMode { Fast, Full };

inline constexpr std::uint64_t kDefaultBlockSize = 1u << 16;

struct RangeJob {
    std::uint64_t lo = 2;
    std::uint64_t hi = 2;
    std::uint64_t block_size = kDefaultBlockSize;
    unsigned workers = 1;
    std::optional<std::filesystem::path> checkpoint_path;
    std::uint64_t cap = 1'000'000;
    RecordsMode records = RecordsMode::Fast;
    Arithmetic arithmetic = Arithmetic::Auto;
    // Stop after committing this many blocks in this call; used to simulate an
    // interrupted run.
    std::optional<std::uint64_t> max_blocks;
};

struct StepRecord {
    std::uint64_t n = 0;
    std::uint64_t steps = 0;
    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct PeakRecord {
    std::uint64_t n = 0;
    Nat peak;
    friend bool operator==(const PeakRecord&, const PeakRecord&) = default;
};

struct RangeSummary {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    RecordsMode records = RecordsMode::Fast;
    std::uint64_t verified_count = 0;
    std::vector<std::uint64_t> nonconvergent;
    std::optional<StepRecord> max_classic_steps; // Full mode only
    std::optional<PeakRecord> max_peak;          // Full mode only
    std::uint64_t blocks_done = 0;
    std::uint64_t blocks_total = 0;
    double elapsed_seconds = 0.0;

    bool complete() const { return blocks_done == blocks_total; }
};

/// Everything except elapsed time.
bool same_results(const RangeSummary& a, const RangeSummary& b);

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CorruptCheckpoint : public CheckpointError {
public:
    CorruptCheckpoint(const std::string& what, std::uint64_t offset);
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

class RejectedMismatch : public CheckpointError {
public:
    using CheckpointError::CheckpointError;
};

/// Throws std::invalid_argument for a malformed job and CheckpointError on
/// checkpoint I/O failure. An existing checkpoint file is overwritten.
RangeSummary verify_range(const RangeJob& job);

/// Continues from the last committed block in job.checkpoint_path. A missing
/// or empty file starts fresh. Throws CorruptCheckpoint or RejectedMismatch.
RangeSummary resume(const RangeJob& job);

// Checkpoint file model, exposed for tests and tooling.
struct BlockLine {
    std::uint64_t block_index = 0;
    std::uint64_t verified_count = 0;
    std::uint64_t max_steps_n = 0;
    std::uint64_t max_steps = 0;
    std::uint64_t max_peak_n = 0;
    Nat max_peak;
    friend bool operator==(const BlockLine&, const BlockLine&) = default;
};

struct Checkpoint {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t block_size = 0;
    std::uint64_t cap = 0;
    RecordsMode records = RecordsMode::Fast;
    std::vector<BlockLine> blocks;
    std::vector<std::uint64_t> block_offsets; // byte offset of each block line
    // Bytes of a trailing unterminated line dropped by parse_checkpoint.
    std::uint64_t torn_tail_bytes = 0;
};

std::uint64_t job_hash(std::uint64_t lo, std::uint64_t hi, std::uint64_t block_size,
                       std::uint64_t cap, RecordsMode records);
std::string format_checkpoint_header(const Checkpoint& cp);
std::string format_block_line(const BlockLine& line);
std::string format_checkpoint(const Checkpoint& cp);
/// Throws CorruptCheckpoint with the byte offset of the offending line.
Checkpoint parse_checkpoint(const std::string& text);

const char* to_string(RecordsMode mode);

} // namespace collatz
