#include "collatz/parity_word.hpp"

#include <algorithm>
#include <stdexcept>

namespace collatz {

ParityWord ParityWord::from_composition(std::string_view text) {
    std::vector<StepKind> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ') {
            ++i;
            continue;
        }
        if (text[i] != 'f' || i + 1 >= text.size()) {
            throw std::invalid_argument("bad composition word: '" + std::string(text) + "'");
        }
        std::string_view rest = text.substr(i + 1);
        if (rest.starts_with("1")) {
            out.push_back(StepKind::F1);
            i += 2;
        } else if (rest.starts_with("2")) {
            out.push_back(StepKind::F2);
            i += 2;
        } else if (rest.starts_with("₁")) {
            out.push_back(StepKind::F1);
            i += 1 + std::string_view("₁").size();
        } else if (rest.starts_with("₂")) {
            out.push_back(StepKind::F2);
            i += 1 + std::string_view("₂").size();
        } else {
            throw std::invalid_argument("bad composition word: '" + std::string(text) + "'");
        }
    }
    std::reverse(out.begin(), out.end());
    return ParityWord(std::move(out));
}

ParityWord ParityWord::from_application(std::string_view text) {
    std::vector<StepKind> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        if (token == "F1") {
            out.push_back(StepKind::F1);
        } else if (token == "F2") {
            out.push_back(StepKind::F2);
        } else {
            throw std::invalid_argument("bad application word token: '" + std::string(token) + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return ParityWord(std::move(out));
}

std::size_t ParityWord::f1_count() const noexcept {
    return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), StepKind::F1));
}

std::size_t ParityWord::f2_count() const noexcept { return symbols_.size() - f1_count(); }

std::vector<std::int64_t> ParityWord::profile() const {
    std::vector<std::int64_t> d;
    d.reserve(symbols_.size() + 1);
    d.push_back(0);
    for (StepKind s : symbols_) {
        d.push_back(d.back() + (s == StepKind::F2 ? 1 : -1));
    }
    return d;
}

ParityWord ParityWord::reversed() const {
    return ParityWord(std::vector<StepKind>(symbols_.rbegin(), symbols_.rend()));
}

ParityWord ParityWord::prefix(std::size_t length) const {
    length = std::min(length, symbols_.size());
    return ParityWord(std::vector<StepKind>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(length)));
}

std::string ParityWord::application_string() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += symbols_[i] == StepKind::F1 ? "F1" : "F2";
    }
    return out;
}

std::string ParityWord::composition_string() const {
    std::string out;
    out.reserve(symbols_.size() * 2);
    for (auto it = symbols_.rbegin(); it != symbols_.rend(); ++it) {
        out += *it == StepKind::F1 ? "f1" : "f2";
    }
    return out;
}

ParityWord operator+(const ParityWord& first, const ParityWord& then) {
    std::vector<StepKind> out = first.symbols_;
    out.insert(out.end(), then.symbols_.begin(), then.symbols_.end());
    return ParityWord(std::move(out));
}

} // namespace collatz
