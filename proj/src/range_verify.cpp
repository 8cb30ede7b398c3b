#include "collatz/range_verify.hpp"

#include "collatz/detail/ordered_blocks.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

namespace collatz {

namespace {

constexpr std::string_view kMagic = "collatz-checkpoint";
constexpr std::string_view kVersion = "1";

struct BlockResult {
    BlockLine line;
    std::vector<std::uint64_t> nonconvergent;
};

void validate(const RangeJob& job) {
    if (job.lo < 2 || job.lo > job.hi) {
        throw std::invalid_argument("verify: need 2 <= lo <= hi");
    }
    if (job.block_size == 0) {
        throw std::invalid_argument("verify: block_size must be >= 1");
    }
    if (job.cap == 0) {
        throw std::invalid_argument("verify: cap must be >= 1");
    }
}

std::uint64_t block_count(const RangeJob& job) {
    const std::uint64_t span = job.hi - job.lo + 1;
    return span / job.block_size + (span % job.block_size != 0 ? 1 : 0);
}

std::uint64_t block_begin(const RangeJob& job, std::uint64_t b) { return job.lo + b * job.block_size; }

std::uint64_t block_end(const RangeJob& job, std::uint64_t b) {
    const std::uint64_t begin = block_begin(job, b);
    return job.hi - begin < job.block_size ? job.hi : begin + job.block_size - 1;
}

// Early exit: true once the value drops below n or reaches 1.
bool converges_fast(std::uint64_t n, std::uint64_t cap, Arithmetic arithmetic) {
    const WideNat start(n, arithmetic);
    WideNat value = start;
    for (std::uint64_t steps = 0; steps < cap; ++steps) {
        if (value.odd()) {
            value.shortcut_odd();
        } else {
            value.halve();
            if (value < start) {
                return true;
            }
        }
    }
    return value < start;
}

struct FullOrbit {
    bool converged = false;
    std::uint64_t classic_steps = 0;
    WideNat peak{0};
};

// Runs to 1 counting classic steps; the peak includes the 3n+1 values.
FullOrbit run_full(std::uint64_t n, std::uint64_t cap, Arithmetic arithmetic) {
    FullOrbit out;
    WideNat value(n, arithmetic);
    out.peak = value;
    for (std::uint64_t steps = 0; !value.is_one(); ++steps) {
        if (steps >= cap) {
            return out;
        }
        if (value.odd()) {
            value.triple_plus_one();
            if (out.peak < value) {
                out.peak = value;
            }
            out.classic_steps += 1;
        }
        value.halve();
        out.classic_steps += 1;
    }
    out.converged = true;
    return out;
}

BlockResult process_block(const RangeJob& job, std::uint64_t b) {
    BlockResult r;
    r.line.block_index = b;
    const std::uint64_t end = block_end(job, b);
    std::optional<WideNat> best_peak;
    for (std::uint64_t n = block_begin(job, b);; ++n) {
        if (job.records == RecordsMode::Fast) {
            if (converges_fast(n, job.cap, job.arithmetic)) {
                ++r.line.verified_count;
            } else {
                r.nonconvergent.push_back(n);
            }
        } else {
            FullOrbit orbit = run_full(n, job.cap, job.arithmetic);
            if (orbit.converged) {
                ++r.line.verified_count;
                if (r.line.max_steps_n == 0 || orbit.classic_steps > r.line.max_steps) {
                    r.line.max_steps_n = n;
                    r.line.max_steps = orbit.classic_steps;
                }
                if (!best_peak || *best_peak < orbit.peak) {
                    best_peak = orbit.peak;
                    r.line.max_peak_n = n;
                }
            } else {
                r.nonconvergent.push_back(n);
            }
        }
        if (n == end) {
            break;
        }
    }
    if (best_peak) {
        r.line.max_peak = best_peak->to_nat();
    }
    return r;
}

void fold(RangeSummary& summary, const BlockLine& line, const std::vector<std::uint64_t>& nonconvergent) {
    summary.verified_count += line.verified_count;
    summary.nonconvergent.insert(summary.nonconvergent.end(), nonconvergent.begin(), nonconvergent.end());
    ++summary.blocks_done;
    if (summary.records != RecordsMode::Full || line.verified_count == 0) {
        return;
    }
    if (!summary.max_classic_steps || line.max_steps > summary.max_classic_steps->steps) {
        summary.max_classic_steps = StepRecord{line.max_steps_n, line.max_steps};
    }
    if (!summary.max_peak || line.max_peak > summary.max_peak->peak) {
        summary.max_peak = PeakRecord{line.max_peak_n, line.max_peak};
    }
}

class CheckpointWriter {
public:
    CheckpointWriter(const std::filesystem::path& path, bool truncate) : path_(path) {
        const int flags = O_WRONLY | O_CREAT | (truncate ? O_TRUNC : O_APPEND);
        fd_ = ::open(path.c_str(), flags, 0644);
        if (fd_ < 0) {
            fail("open");
        }
    }
    CheckpointWriter(const CheckpointWriter&) = delete;
    CheckpointWriter& operator=(const CheckpointWriter&) = delete;
    ~CheckpointWriter() {
        if (fd_ >= 0) {
            ::close(fd_);
        }
    }

    void append(std::string_view data) {
        while (!data.empty()) {
            const ssize_t n = ::write(fd_, data.data(), data.size());
            if (n < 0) {
                if (errno == EINTR) {
                    continue;
                }
                fail("write");
            }
            data.remove_prefix(static_cast<std::size_t>(n));
        }
        if (::fsync(fd_) != 0) {
            fail("fsync");
        }
    }

private:
    [[noreturn]] void fail(const char* op) const {
        throw CheckpointError(std::string(op) + " " + path_.string() + ": " + std::strerror(errno));
    }

    std::filesystem::path path_;
    int fd_ = -1;
};

Checkpoint header_for(const RangeJob& job) {
    Checkpoint cp;
    cp.lo = job.lo;
    cp.hi = job.hi;
    cp.block_size = job.block_size;
    cp.cap = job.cap;
    cp.records = job.records;
    return cp;
}

RangeSummary run_blocks(const RangeJob& job, RangeSummary summary, std::uint64_t first_block,
                        CheckpointWriter* writer) {
    const auto started = std::chrono::steady_clock::now();
    std::uint64_t committed = 0;
    auto process = [&](std::uint64_t b) { return process_block(job, b); };
    auto commit = [&](std::uint64_t, BlockResult&& r) {
        if (writer != nullptr) {
            writer->append(format_block_line(r.line));
        }
        fold(summary, r.line, r.nonconvergent);
        ++committed;
        return !(job.max_blocks && committed >= *job.max_blocks);
    };
    std::uint64_t last = summary.blocks_total;
    if (job.max_blocks) {
        last = std::min(last, first_block + *job.max_blocks);
    }
    detail::run_ordered_blocks<BlockResult>(first_block, last, job.workers, process, commit);
    summary.elapsed_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return summary;
}

RangeSummary empty_summary(const RangeJob& job) {
    RangeSummary s;
    s.lo = job.lo;
    s.hi = job.hi;
    s.records = job.records;
    s.blocks_total = block_count(job);
    return s;
}

// Strict base-10 field: digits only, no leading zeros.
bool parse_field(std::string_view token, std::uint64_t& out) {
    if (token.empty() || token.size() > 20 || (token.size() > 1 && token.front() == '0')) {
        return false;
    }
    std::uint64_t value = 0;
    for (char c : token) {
        if (c < '0' || c > '9') {
            return false;
        }
        const auto digit = static_cast<std::uint64_t>(c - '0');
        if (__builtin_mul_overflow(value, 10u, &value) || __builtin_add_overflow(value, digit, &value)) {
            return false;
        }
    }
    out = value;
    return true;
}

bool parse_nat_field(std::string_view token, Nat& out) {
    if (token.empty() || (token.size() > 1 && token.front() == '0')) {
        return false;
    }
    try {
        out = parse_nat(token);
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto space = line.find(' ', pos);
        out.push_back(line.substr(pos, space - pos));
        if (space == std::string_view::npos) {
            break;
        }
        pos = space + 1;
    }
    return out;
}

} // namespace

CorruptCheckpoint::CorruptCheckpoint(const std::string& what, std::uint64_t offset)
    : CheckpointError("corrupt checkpoint at byte " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

const char* to_string(RecordsMode mode) { return mode == RecordsMode::Full ? "full" : "fast"; }

bool same_results(const RangeSummary& a, const RangeSummary& b) {
    return a.lo == b.lo && a.hi == b.hi && a.records == b.records &&
           a.verified_count == b.verified_count && a.nonconvergent == b.nonconvergent &&
           a.max_classic_steps == b.max_classic_steps && a.max_peak == b.max_peak &&
           a.blocks_done == b.blocks_done && a.blocks_total == b.blocks_total;
}

std::uint64_t job_hash(std::uint64_t lo, std::uint64_t hi, std::uint64_t block_size, std::uint64_t cap,
                       RecordsMode records) {
    const std::string key = std::to_string(lo) + ' ' + std::to_string(hi) + ' ' +
                            std::to_string(block_size) + ' ' + std::to_string(cap) + ' ' +
                            to_string(records);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_checkpoint_header(const Checkpoint& cp) {
    std::ostringstream out;
    out << kMagic << ' ' << kVersion << ' ' << cp.lo << ' ' << cp.hi << ' ' << cp.block_size << ' '
        << cp.cap << ' ' << to_string(cp.records) << ' '
        << job_hash(cp.lo, cp.hi, cp.block_size, cp.cap, cp.records) << '\n';
    return out.str();
}

std::string format_block_line(const BlockLine& line) {
    std::ostringstream out;
    out << line.block_index << ' ' << line.verified_count << ' ' << line.max_steps_n << ' '
        << line.max_steps << ' ' << line.max_peak_n << ' ' << line.max_peak << '\n';
    return out.str();
}

std::string format_checkpoint(const Checkpoint& cp) {
    std::string out = format_checkpoint_header(cp);
    for (const auto& b : cp.blocks) {
        out += format_block_line(b);
    }
    return out;
}

Checkpoint parse_checkpoint(const std::string& text) {
    Checkpoint cp;
    std::size_t offset = 0;
    bool header_seen = false;
    while (offset < text.size()) {
        const auto newline = text.find('\n', offset);
        if (newline == std::string::npos) {
            if (!header_seen) {
                throw CorruptCheckpoint("unterminated header", offset);
            }
            cp.torn_tail_bytes = text.size() - offset;
            break;
        }
        const std::string_view line(text.data() + offset, newline - offset);
        const auto fields = split_spaces(line);

        if (!header_seen) {
            std::uint64_t hash = 0;
            if (fields.size() != 8 || fields[0] != kMagic || fields[1] != kVersion ||
                !parse_field(fields[2], cp.lo) || !parse_field(fields[3], cp.hi) ||
                !parse_field(fields[4], cp.block_size) || !parse_field(fields[5], cp.cap) ||
                (fields[6] != "fast" && fields[6] != "full") || !parse_field(fields[7], hash)) {
                throw CorruptCheckpoint("malformed header", offset);
            }
            cp.records = fields[6] == "full" ? RecordsMode::Full : RecordsMode::Fast;
            if (hash != job_hash(cp.lo, cp.hi, cp.block_size, cp.cap, cp.records)) {
                throw CorruptCheckpoint("header hash does not match its fields", offset);
            }
            header_seen = true;
        } else {
            BlockLine b;
            if (fields.size() != 6 || !parse_field(fields[0], b.block_index) ||
                !parse_field(fields[1], b.verified_count) || !parse_field(fields[2], b.max_steps_n) ||
                !parse_field(fields[3], b.max_steps) || !parse_field(fields[4], b.max_peak_n) ||
                !parse_nat_field(fields[5], b.max_peak)) {
                throw CorruptCheckpoint("malformed block line", offset);
            }
            if (b.block_index != cp.blocks.size()) {
                throw CorruptCheckpoint("block " + std::to_string(b.block_index) + " out of order", offset);
            }
            cp.blocks.push_back(std::move(b));
            cp.block_offsets.push_back(offset);
        }
        offset = newline + 1;
    }
    if (!header_seen) {
        throw CorruptCheckpoint("missing header", 0);
    }
    return cp;
}

RangeSummary verify_range(const RangeJob& job) {
    validate(job);
    std::optional<CheckpointWriter> writer;
    if (job.checkpoint_path) {
        writer.emplace(*job.checkpoint_path, true);
        writer->append(format_checkpoint_header(header_for(job)));
    }
    return run_blocks(job, empty_summary(job), 0, writer ? &*writer : nullptr);
}

RangeSummary resume(const RangeJob& job) {
    validate(job);
    if (!job.checkpoint_path) {
        throw std::invalid_argument("resume: no checkpoint path");
    }
    const auto& path = *job.checkpoint_path;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0) {
        return verify_range(job);
    }

    std::string text;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw CheckpointError("cannot read " + path.string());
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    const Checkpoint cp = parse_checkpoint(text);
    if (cp.lo != job.lo || cp.hi != job.hi || cp.block_size != job.block_size || cp.cap != job.cap ||
        cp.records != job.records) {
        throw RejectedMismatch("checkpoint " + path.string() + " belongs to a different job");
    }

    RangeSummary summary = empty_summary(job);
    if (cp.blocks.size() > summary.blocks_total) {
        throw CorruptCheckpoint("more blocks than the job has", text.size());
    }
    if (cp.torn_tail_bytes != 0) {
        std::filesystem::resize_file(path, text.size() - cp.torn_tail_bytes);
    }

    for (std::size_t i = 0; i < cp.blocks.size(); ++i) {
        const BlockLine& line = cp.blocks[i];
        const std::uint64_t size = block_end(job, line.block_index) - block_begin(job, line.block_index) + 1;
        if (line.verified_count == size) {
            fold(summary, line, {});
            continue;
        }
        // The line does not list its candidates; recompute them.
        BlockResult again = process_block(job, line.block_index);
        if (again.line != line) {
            throw CorruptCheckpoint("block " + std::to_string(line.block_index) +
                                        " does not match recomputation",
                                    cp.block_offsets[i]);
        }
        fold(summary, line, again.nonconvergent);
    }

    CheckpointWriter writer(path, false);
    return run_blocks(job, std::move(summary), cp.blocks.size(), &writer);
}

} // namespace collatz
