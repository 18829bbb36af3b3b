#include "htl/reports.h"

namespace htl {

Json ToJson(const RunConfig& cfg) {
  Json j;
  j["epsilon"] = cfg.epsilon;
  j["tau"] = cfg.tau;
  j["seed"] = cfg.seed;
  j["k_cap"] = cfg.k_cap;
  j["c_a"] = cfg.c_a;
  j["slack_multiplier"] = cfg.slack_multiplier;
  j["strict_moment_constant"] =
      cfg.strict_moment_constant ? Json(*cfg.strict_moment_constant) : Json(nullptr);
  return j;
}

Json ToJson(const UnitVector& v) { return Json(v.coords()); }

Json ToJson(const MomentTestReport& report) {
  Json j;
  j["verdict"] = ToString(report.verdict);
  j["degree"] = report.degree;
  j["sample_count"] = report.sample_count;
  j["monomials_tested"] = report.monomials_tested;
  j["max_ratio"] = report.max_ratio;
  Json violations = Json::array();
  for (const MomentViolation& v : report.worst_violations) {
    violations.push_back({{"monomial", v.monomial.exponents()},
                          {"empirical", v.empirical},
                          {"reference", v.reference},
                          {"tolerance", v.tolerance}});
  }
  j["violations"] = violations;
  return j;
}

Json ToJson(const WedgeVerdict& verdict) {
  Json j;
  j["verdict"] = ToString(verdict.verdict);
  if (verdict.failed_check) {
    j["failed_check"] = verdict.failed_check->check == WedgeCheck::kTv ? "tv" : "slab_moment";
    j["failed_slab"] = verdict.failed_check->slab_index;
  } else {
    j["failed_check"] = nullptr;
  }
  j["eta"] = verdict.slabs.eta;
  j["half_count"] = verdict.slabs.half_count;
  j["tv_discrepancy"] = verdict.tv_discrepancy;
  j["tv_tolerance"] = verdict.tv_tolerance;
  j["worst_slab_eigenvalue"] = verdict.worst_slab_eigenvalue;
  j["worst_slab_mean_norm"] = verdict.worst_slab_mean_norm;
  j["slab_counts"] = verdict.slabs.counts;
  return j;
}

Json ToJson(const LearnReport& report, const std::optional<std::string>& input_hash) {
  Json j;
  j["verdict"] = ToString(report.verdict);
  j["rejection_stage"] = report.rejection_stage ? Json(*report.rejection_stage) : Json(nullptr);
  j["rejection_round"] = report.rejection_round ? Json(*report.rejection_round) : Json(nullptr);
  j["hypothesis"] = report.hypothesis ? ToJson(report.hypothesis->normal) : Json(nullptr);
  j["dim"] = report.dim;
  j["epsilon"] = report.epsilon;
  j["tau"] = report.tau;
  j["seed"] = report.config.seed;
  j["input_hash"] = input_hash ? Json(*input_hash) : Json(nullptr);
  j["config"] = ToJson(report.config);
  j["samples_consumed"] = report.samples_consumed;
  j["rounds_planned"] = report.rounds_planned;
  j["rounds_completed"] = report.rounds_completed;

  Json plan;
  const auto range = [](const SliceRange& r) {
    return Json{{"begin", r.begin}, {"count", r.count}};
  };
  plan["weak"] = range(report.plan.weak);
  plan["rounds"] = Json::array();
  for (const SliceRange& r : report.plan.rounds) plan["rounds"].push_back(range(r));
  plan["wedge"] = range(report.plan.wedge);
  plan["selection"] = range(report.plan.selection);
  plan["expected_accepted_per_round"] = report.plan.expected_accepted_per_round;
  j["plan"] = plan;

  Json rounds = Json::array();
  for (const Candidate& c : report.candidates) {
    Json r;
    r["t"] = c.round;
    r["delta"] = c.delta;
    r["direction"] = ToJson(c.direction);
    r["empirical_error"] = c.empirical_error ? Json(*c.empirical_error) : Json(nullptr);
    const auto idx = static_cast<std::size_t>(c.round);
    // Rate of the round that produced this candidate (none for round 0).
    r["acceptance_rate"] = idx >= 1 && idx - 1 < report.acceptance_rates.size()
                               ? Json(report.acceptance_rates[idx - 1])
                               : Json(nullptr);
    rounds.push_back(r);
  }
  j["rounds"] = rounds;
  j["acceptance_rates"] = report.acceptance_rates;

  Json wedges = Json::array();
  for (const WedgeRecord& w : report.wedge_tests) {
    wedges.push_back({{"t", w.round},
                      {"eta", w.eta},
                      {"verdict", ToString(w.verdict)},
                      {"tv_discrepancy", w.tv_discrepancy},
                      {"worst_slab_eigenvalue", w.worst_slab_eigenvalue},
                      {"failed_check", w.failed_check.empty() ? Json(nullptr)
                                                              : Json(w.failed_check)}});
  }
  j["wedge_tests"] = wedges;
  return j;
}

Json TimingJson(const LearnReport& report) {
  Json j;
  double total = 0.0;
  for (const auto& [stage, seconds] : report.stage_seconds) {
    j["stages"][stage] = seconds;
    total += seconds;
  }
  j["total_seconds"] = total;
  return j;
}

std::string DumpJson(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace htl
