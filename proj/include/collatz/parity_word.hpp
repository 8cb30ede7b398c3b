#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace collatz {

/// F1 halves an even value, F2 maps an odd value to (3n+1)/2.
enum class StepKind : std::uint8_t { F1, F2 };

// A word over {F1, F2} stored in application order: symbols()[0] is applied
// first. The composition rendering reverses it into right-to-left notation,
// so [F2, F1] renders as "f1f2".
class ParityWord {
public:
    ParityWord() = default;
    ParityWord(std::initializer_list<StepKind> symbols) : symbols_(symbols) {}
    explicit ParityWord(std::vector<StepKind> symbols) : symbols_(std::move(symbols)) {}

    /// Parses right-to-left composition notation, e.g. "f1f1f2f2" (also
    /// accepts the subscript glyphs f₁/f₂). Throws std::invalid_argument.
    static ParityWord from_composition(std::string_view text);
    /// Parses comma-separated application order, e.g. "F2,F2,F1,F1".
    static ParityWord from_application(std::string_view text);

    void push_back(StepKind kind) { symbols_.push_back(kind); }
    void reserve(std::size_t n) { symbols_.reserve(n); }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    StepKind operator[](std::size_t i) const { return symbols_[i]; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }
    const std::vector<StepKind>& symbols() const noexcept { return symbols_; }

    std::size_t f1_count() const noexcept;
    std::size_t f2_count() const noexcept;

    /// D(0..k): running #F2 - #F1 over prefixes, D(0) = 0.
    std::vector<std::int64_t> profile() const;

    ParityWord reversed() const;
    /// First `length` symbols.
    ParityWord prefix(std::size_t length) const;

    /// "F2,F2,F1"
    std::string application_string() const;
    /// "f1f2f2" -- the same word written as a composition.
    std::string composition_string() const;

    friend ParityWord operator+(const ParityWord& first, const ParityWord& then);
    friend bool operator==(const ParityWord&, const ParityWord&) = default;
    friend auto operator<=>(const ParityWord&, const ParityWord&) = default;

private:
    std::vector<StepKind> symbols_;
};

} // namespace collatz
