#include "htl/experiment.h"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "htl/tester_learner.h"

namespace htl {
namespace {

// Offsets separating the streams derived from one seed.
constexpr std::uint64_t kPlantedStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kTestStream = 0xc2b2ae3d27d4eb4fULL;

template <typename T>
std::vector<T> NonEmptyArray(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
    throw InputError(std::string("spec field '") + key + "' must be a non-empty array");
  }
  return doc[key].get<std::vector<T>>();
}

std::string FormatDouble(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

}  // namespace

void ExperimentSpec::Validate() const {
  if (d.empty() || n.empty() || epsilon.empty() || marginals.empty() || noises.empty() ||
      opts.empty()) {
    throw InputError("experiment grid must be non-empty");
  }
  if (seeds.empty()) throw InputError("experiment seeds must be non-empty");
  if (test_samples < 1) throw InputError("test_samples must be positive");
  if (workers < 1) throw InputError("workers must be positive");
  config.Validate();
}

ExperimentSpec ParseExperimentSpec(const Json& doc) {
  if (!doc.is_object()) throw InputError("experiment spec must be a JSON object");
  ExperimentSpec spec;
  try {
    spec.d = NonEmptyArray<std::size_t>(doc, "d");
    spec.n = NonEmptyArray<std::size_t>(doc, "n");
    spec.epsilon = NonEmptyArray<double>(doc, "epsilon");
    for (const auto& name : NonEmptyArray<std::string>(doc, "marginals")) {
      spec.marginals.push_back(ParseMarginalKind(name));
    }
    for (const auto& name : NonEmptyArray<std::string>(doc, "noises")) {
      spec.noises.push_back(ParseNoiseKind(name));
    }
    spec.opts = NonEmptyArray<double>(doc, "opts");
    spec.seeds = NonEmptyArray<std::uint64_t>(doc, "seeds");
    spec.output_path = doc.value("output_path", std::string());
    spec.config.tau = doc.value("tau", spec.config.tau);
    spec.config.k_cap = doc.value("k_cap", spec.config.k_cap);
    spec.config.c_a = doc.value("c_a", spec.config.c_a);
    spec.config.slack_multiplier = doc.value("slack", spec.config.slack_multiplier);
    spec.test_samples = doc.value("test_samples", spec.test_samples);
    spec.workers = doc.value("workers", spec.workers);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed experiment spec: ") + e.what());
  }
  if (spec.output_path.empty()) throw InputError("spec field 'output_path' is required");
  spec.Validate();
  return spec;
}

std::vector<ExperimentCell> ExpandGrid(const ExperimentSpec& spec) {
  std::vector<ExperimentCell> cells;
  for (std::size_t d : spec.d) {
    for (std::size_t n : spec.n) {
      for (double eps : spec.epsilon) {
        for (MarginalKind m : spec.marginals) {
          for (NoiseKind noise : spec.noises) {
            for (double opt : spec.opts) {
              if (noise == NoiseKind::kClean && opt != 0.0) continue;
              cells.push_back({d, n, eps, m, noise, opt});
            }
          }
        }
      }
    }
  }
  return cells;
}

UnitVector PlantedDirection(std::size_t d, std::uint64_t seed) {
  Rng rng(seed ^ kPlantedStream);
  return UnitVector::Random(d, rng);
}

ExperimentRow RunExperimentRow(const ExperimentCell& cell, std::size_t cell_index,
                               std::uint64_t seed, const RunConfig& base,
                               std::size_t test_samples) {
  ExperimentRow row;
  row.cell_index = cell_index;
  row.cell = cell;
  row.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    RunConfig cfg = base;
    cfg.epsilon = cell.epsilon;
    cfg.seed = seed;
    const UnitVector v_star = PlantedDirection(cell.d, seed);
    const MarginalFamily marginal{cell.marginal};
    const NoiseModel noise{cell.noise, cell.opt, std::nullopt};
    LearnReport report;
    {
      const LabeledSampleSet train = Generate(cell.d, cell.n, marginal, v_star, noise, seed);
      report = TestableLearn(train, cfg);
    }
    row.verdict = ToString(report.verdict);
    row.rejection_stage = report.rejection_stage.value_or("");
    row.rounds_completed = report.rounds_completed;
    const LabeledSampleSet test =
        Generate(cell.d, test_samples, marginal, v_star, noise, seed ^ kTestStream);
    row.planted_test_error = EmpiricalError(Halfspace{v_star}, test);
    if (report.hypothesis) {
      row.test_error = EmpiricalError(*report.hypothesis, test);
      row.planted_distance = Distance(report.hypothesis->normal, v_star);
    }
  } catch (const std::exception& e) {
    row.verdict = "Error";
    row.error = e.what();
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  row.wall_seconds = dt.count();
  return row;
}

std::vector<ExperimentRow> RunExperiment(const ExperimentSpec& spec) {
  spec.Validate();
  const std::vector<ExperimentCell> cells = ExpandGrid(spec);
  const std::size_t total = cells.size() * spec.seeds.size();
  std::vector<ExperimentRow> rows(total);
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t c = i / spec.seeds.size();
      rows[i] = RunExperimentRow(cells[c], c, spec.seeds[i % spec.seeds.size()], spec.config,
                                 spec.test_samples);
    }
  };
  const auto workers = static_cast<std::size_t>(spec.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, total); ++w) pool.emplace_back(work);
  }
  return rows;
}

void WriteAggregateCsv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << "cell,d,n,epsilon,marginal,noise,opt,seed,verdict,rejection_stage,test_error,"
         "planted_test_error,planted_distance,rounds_completed,wall_seconds,error\n";
  for (const ExperimentRow& r : rows) {
    std::string error = r.error;
    for (char& ch : error) {
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    }
    out << r.cell_index << ',' << r.cell.d << ',' << r.cell.n << ','
        << FormatDouble(r.cell.epsilon) << ',' << ToString(r.cell.marginal) << ','
        << ToString(r.cell.noise) << ',' << FormatDouble(r.cell.opt) << ',' << r.seed << ','
        << r.verdict << ',' << r.rejection_stage << ','
        << (r.test_error ? FormatDouble(*r.test_error) : "") << ','
        << FormatDouble(r.planted_test_error) << ','
        << (r.planted_distance ? FormatDouble(*r.planted_distance) : "") << ','
        << r.rounds_completed << ',' << FormatDouble(r.wall_seconds) << ',' << error << '\n';
  }
}

std::vector<CellSummary> Summarize(const std::vector<ExperimentRow>& rows) {
  std::map<std::size_t, CellSummary> by_cell;
  std::map<std::size_t, std::pair<double, std::size_t>> errors;
  for (const ExperimentRow& r : rows) {
    CellSummary& s = by_cell[r.cell_index];
    s.cell_index = r.cell_index;
    s.cell = r.cell;
    ++s.runs;
    if (r.verdict == "Learned") {
      s.accept_rate += 1.0;
      if (r.test_error) {
        errors[r.cell_index].first += *r.test_error;
        ++errors[r.cell_index].second;
      }
    }
  }
  std::vector<CellSummary> out;
  for (auto& [index, s] : by_cell) {
    s.accept_rate /= static_cast<double>(s.runs);
    const auto it = errors.find(index);
    if (it != errors.end() && it->second.second > 0) {
      s.mean_test_error = it->second.first / static_cast<double>(it->second.second);
    }
    out.push_back(s);
  }
  return out;
}

void PrintSummary(const std::vector<CellSummary>& summary, std::ostream& out) {
  for (const CellSummary& s : summary) {
    out << "cell " << s.cell_index << " d=" << s.cell.d << " n=" << s.cell.n
        << " eps=" << FormatDouble(s.cell.epsilon) << " " << ToString(s.cell.marginal) << "/"
        << ToString(s.cell.noise) << " opt=" << FormatDouble(s.cell.opt) << ": runs=" << s.runs
        << " accept_rate=" << FormatDouble(s.accept_rate) << " mean_test_error="
        << (s.mean_test_error ? FormatDouble(*s.mean_test_error) : "n/a") << "\n";
  }
}

}  // namespace htl
