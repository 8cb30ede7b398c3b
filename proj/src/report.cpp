#include "collatz/report.hpp"

namespace collatz {

namespace {

template <class T, class F>
Json optional_json(const std::optional<T>& value, F&& render) {
    return value ? Json(render(*value)) : Json(nullptr);
}

} // namespace

Json to_json(const ParityWord& word) {
    return Json{{"application_order", word.application_string()},
                {"composition_order", word.composition_string()},
                {"length", word.size()},
                {"f1", word.f1_count()},
                {"f2", word.f2_count()}};
}

Json to_json(const OrbitRecord& r) {
    Json j;
    j["start"] = to_string(r.start);
    j["map"] = to_string(r.map);
    j["steps_total"] = r.steps_total;
    j["f1_count"] = r.f1_count;
    j["f2_count"] = r.f2_count;
    j["peak"] = to_string(r.peak);
    j["final_value"] = to_string(r.final_value);
    j["first_drop_time"] = optional_json(r.first_drop_time, [](auto t) { return t; });
    j["stop_reason"] = to_string(r.stop_reason);
    j["word"] = to_json(r.word);
    if (!r.values.empty()) {
        Json values = Json::array();
        for (const auto& v : r.values) {
            values.push_back(to_string(v));
        }
        j["values"] = std::move(values);
    }
    return j;
}

Json to_json(const BalanceAudit& a) {
    Json j;
    j["n"] = to_string(a.n);
    j["outcome"] = to_string(a.outcome);
    j["alpha"] = optional_json(a.alpha, [](auto v) { return v; });
    j["value_at_balance"] = optional_json(a.value_at_balance, [](const Nat& v) { return to_string(v); });
    j["bound_at_balance"] =
        optional_json(a.bound_at_balance, [](const Rational& v) { return to_string(v); });
    j["descent_ok"] = a.descent_ok;
    j["bound_ok"] = a.bound_ok;
    j["prefix_condition_ok"] = a.prefix_condition_ok;
    return j;
}

Json to_json(const AuditSummary& s) {
    Json j;
    j["lo"] = s.lo;
    j["hi"] = s.hi;
    j["audited"] = s.audited;
    j["balanced"] = s.balanced;
    j["reached_one_first"] = s.reached_one_first;
    j["cap_hit"] = s.cap_hit;
    j["violation_count"] = s.violations.size();
    Json hist = Json::object();
    for (const auto& [alpha, count] : s.alpha_histogram) {
        hist[std::to_string(alpha)] = count;
    }
    j["alpha_histogram"] = std::move(hist);
    Json violations = Json::array();
    for (const auto& v : s.violations) {
        violations.push_back(to_json(v));
    }
    j["violations"] = std::move(violations);
    return j;
}

Json to_json(const ThresholdReport& r) {
    Json j;
    j["beta"] = r.beta;
    j["x"] = to_string(r.x);
    j["S"] = to_string(r.s);
    j["S_positive"] = r.s_positive;
    j["beta_max"] = optional_json(r.beta_max, [](auto v) { return v; });
    j["alpha_min"] = optional_json(r.alpha_min, [](auto v) { return v; });
    return j;
}

Json to_json(const DominanceReport& r) {
    Json j;
    j["alpha"] = r.alpha;
    j["bound"] = to_string(pow_f1f2(r.alpha));
    Json words = Json::array();
    for (const auto& w : r.words) {
        const DyadicAffine m = word_to_affine(w);
        const bool counter = std::find(r.counterexamples.begin(), r.counterexamples.end(), w) !=
                             r.counterexamples.end();
        const bool equal =
            std::find(r.equal_words.begin(), r.equal_words.end(), w) != r.equal_words.end();
        Json entry = to_json(w);
        entry["affine"] = to_string(m);
        entry["verdict"] = counter ? "exceeds" : (equal ? "equal" : "strictly-dominated");
        words.push_back(std::move(entry));
    }
    j["words"] = std::move(words);
    j["holds"] = r.holds();
    j["strict"] = r.strict();
    return j;
}

Json to_json(const RangeSummary& s) {
    Json summary;
    summary["lo"] = s.lo;
    summary["hi"] = s.hi;
    summary["records"] = to_string(s.records);
    summary["verified_count"] = s.verified_count;
    summary["nonconvergent"] = s.nonconvergent;
    summary["max_classic_steps"] = optional_json(
        s.max_classic_steps, [](const StepRecord& r) { return Json{{"n", r.n}, {"steps", r.steps}}; });
    summary["max_peak"] = optional_json(s.max_peak, [](const PeakRecord& r) {
        return Json{{"n", r.n}, {"peak", to_string(r.peak)}};
    });
    summary["blocks_done"] = s.blocks_done;
    summary["blocks_total"] = s.blocks_total;
    summary["complete"] = s.complete();
    return Json{{"summary", std::move(summary)}, {"timing", {{"elapsed_seconds", s.elapsed_seconds}}}};
}

} // namespace collatz
