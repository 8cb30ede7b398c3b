#pragma once

// JSON renderings used by the command-line tool. Naturals are base-10
// strings, rationals "p/q" strings, counts plain JSON numbers.

#include "collatz/claim_audit.hpp"
#include "collatz/orbit.hpp"
#include "collatz/range_verify.hpp"
#include "collatz/word_algebra.hpp"

#include <json.hpp>

namespace collatz {

using Json = nlohmann::ordered_json;

Json to_json(const ParityWord& word);
Json to_json(const OrbitRecord& record);
Json to_json(const BalanceAudit& audit);
Json to_json(const AuditSummary& summary);
Json to_json(const ThresholdReport& report);
Json to_json(const DominanceReport& report);

/// {"summary": {...}, "timing": {"elapsed_seconds": ...}}; only the timing
/// member varies between identical runs.
Json to_json(const RangeSummary& summary);

} // namespace collatz
