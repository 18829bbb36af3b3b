// JSON renderings of the testers' and learner's reports. Every document
// except TimingJson is a pure function of its inputs, so reruns with the same
// data and seed serialize byte-identically.

#ifndef HTL_REPORTS_H_
#define HTL_REPORTS_H_

#include <optional>
#include <string>

#include "htl/core_types.h"
#include "htl/moment_tester.h"
#include "htl/tester_learner.h"
#include "htl/wedge_tester.h"
#include "json.hpp"

namespace htl {

using Json = nlohmann::ordered_json;

Json ToJson(const RunConfig& cfg);
Json ToJson(const UnitVector& v);
Json ToJson(const MomentTestReport& report);
Json ToJson(const WedgeVerdict& verdict);

// `input_hash` is the git blob id of the input CSV when the samples came
// from a file.
Json ToJson(const LearnReport& report, const std::optional<std::string>& input_hash);

// Per-stage wall-clock seconds; not deterministic.
Json TimingJson(const LearnReport& report);

// Two-space indented text with a trailing newline.
std::string DumpJson(const Json& doc);

}  // namespace htl

#endif  // HTL_REPORTS_H_
