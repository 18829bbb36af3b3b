// Grid experiments: every (cell, seed) pair generates planted data, runs the
// tester-learner and scores the hypothesis on a fresh test set from the same
// distribution. Rows come back ordered by (cell index, seed position).

#ifndef HTL_EXPERIMENT_H_
#define HTL_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "htl/core_types.h"
#include "htl/datagen.h"
#include "htl/reports.h"

namespace htl {

struct ExperimentCell {
  std::size_t d = 8;
  std::size_t n = 0;
  double epsilon = 0.05;
  MarginalKind marginal = MarginalKind::kStandardGaussian;
  NoiseKind noise = NoiseKind::kClean;
  double opt = 0.0;
};

struct ExperimentSpec {
  std::vector<std::size_t> d;
  std::vector<std::size_t> n;
  std::vector<double> epsilon;
  std::vector<MarginalKind> marginals;
  std::vector<NoiseKind> noises;
  std::vector<double> opts;
  std::vector<std::uint64_t> seeds;
  std::string output_path;
  // Shared learner settings; epsilon and seed are overwritten per row.
  RunConfig config;
  std::size_t test_samples = 200000;
  int workers = 1;

  void Validate() const;
};

// Parses the spec JSON: arrays "d", "n", "epsilon", "marginals", "noises",
// "opts", "seeds", string "output_path", optional "tau", "k_cap", "c_a",
// "slack", "test_samples", "workers".
ExperimentSpec ParseExperimentSpec(const Json& doc);

// Cartesian product in (d, n, epsilon, marginal, noise, opt) order. A clean
// noise model only pairs with opt = 0, and is dropped for other opt values.
std::vector<ExperimentCell> ExpandGrid(const ExperimentSpec& spec);

// Planted direction used for a given seed.
UnitVector PlantedDirection(std::size_t d, std::uint64_t seed);

struct ExperimentRow {
  std::size_t cell_index = 0;
  ExperimentCell cell;
  std::uint64_t seed = 0;
  std::string verdict;  // "Learned", "RejectedNonGaussian" or "Error"
  std::string rejection_stage;
  std::optional<double> test_error;       // of the hypothesis, Learned only
  std::optional<double> planted_distance;  // ||h - v*||, Learned only
  double planted_test_error = 0.0;         // v* on the same test set
  int rounds_completed = 0;
  double wall_seconds = 0.0;
  std::string error;  // message when verdict == "Error"
};

ExperimentRow RunExperimentRow(const ExperimentCell& cell, std::size_t cell_index,
                               std::uint64_t seed, const RunConfig& base,
                               std::size_t test_samples);

std::vector<ExperimentRow> RunExperiment(const ExperimentSpec& spec);

void WriteAggregateCsv(const std::vector<ExperimentRow>& rows, std::ostream& out);

struct CellSummary {
  std::size_t cell_index = 0;
  ExperimentCell cell;
  std::size_t runs = 0;
  double accept_rate = 0.0;
  std::optional<double> mean_test_error;  // over Learned rows
};

std::vector<CellSummary> Summarize(const std::vector<ExperimentRow>& rows);
void PrintSummary(const std::vector<CellSummary>& summary, std::ostream& out);

}  // namespace htl

#endif  // HTL_EXPERIMENT_H_
