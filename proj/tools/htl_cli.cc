// Command-line entry points: generate, learn, experiment.
//
// Exit codes: 0 learned (or success), 1 I/O or parse failure, 2 usage or
// invalid parameters, 3 rejected as non-Gaussian.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "htl/core_types.h"
#include "htl/datagen.h"
#include "htl/experiment.h"
#include "htl/reports.h"
#include "htl/sample_io.h"
#include "htl/tester_learner.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenerateFlags {
  std::size_t d = 8;
  std::size_t n = 100000;
  std::string marginal = "gaussian";
  std::string noise = "clean";
  double opt = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int CmdGenerate(const GenerateFlags& f) {
  const htl::MarginalFamily marginal{htl::ParseMarginalKind(f.marginal)};
  const htl::NoiseModel noise{htl::ParseNoiseKind(f.noise), f.opt, std::nullopt};
  const htl::UnitVector v_star = htl::PlantedDirection(f.d, f.seed);
  const htl::LabeledSampleSet samples = htl::Generate(f.d, f.n, marginal, v_star, noise, f.seed);

  std::ostringstream csv;
  htl::WriteSamplesCsv(samples, csv);
  WriteTextFile(f.out + ".csv", csv.str());

  htl::Json sidecar;
  sidecar["d"] = f.d;
  sidecar["n"] = f.n;
  sidecar["marginal"] = f.marginal;
  sidecar["noise"] = f.noise;
  sidecar["opt"] = f.opt;
  sidecar["seed"] = f.seed;
  sidecar["v_star"] = htl::ToJson(v_star);
  sidecar["csv_hash"] = htl::GitBlobHash(csv.str());
  WriteTextFile(f.out + ".json", htl::DumpJson(sidecar));
  return kExitOk;
}

struct LearnFlags {
  std::string in;
  std::string out;
  htl::RunConfig cfg;
  std::optional<double> strict;
};

int CmdLearn(LearnFlags f) {
  const std::string bytes = ReadTextFile(f.in);
  std::istringstream stream(bytes);
  const htl::LabeledSampleSet samples = htl::ReadSamplesCsv(stream);
  f.cfg.strict_moment_constant = f.strict;
  const htl::LearnReport report = htl::TestableLearn(samples, f.cfg);

  WriteTextFile(f.out, htl::DumpJson(htl::ToJson(report, htl::GitBlobHash(bytes))));
  std::filesystem::path timing(f.out);
  timing.replace_extension(".timing.json");
  WriteTextFile(timing.string(), htl::DumpJson(htl::TimingJson(report)));

  std::cout << htl::ToString(report.verdict);
  if (report.rejection_stage) std::cout << " at " << *report.rejection_stage;
  std::cout << "\n";
  return report.verdict == htl::LearnVerdict::kLearned ? kExitOk : kExitRejected;
}

int CmdExperiment(const std::string& spec_path) {
  htl::Json doc;
  try {
    doc = htl::Json::parse(ReadTextFile(spec_path));
  } catch (const htl::Json::parse_error& e) {
    throw IoError(std::string("cannot parse spec: ") + e.what());
  }
  const htl::ExperimentSpec spec = htl::ParseExperimentSpec(doc);
  const std::vector<htl::ExperimentRow> rows = htl::RunExperiment(spec);
  std::ostringstream csv;
  htl::WriteAggregateCsv(rows, csv);
  WriteTextFile(spec.output_path, csv.str());
  htl::PrintSummary(htl::Summarize(rows), std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tester-learner for homogeneous halfspaces under Gaussian marginals"};
  app.require_subcommand(1);

  GenerateFlags gen;
  CLI::App* generate = app.add_subcommand("generate", "Write planted synthetic samples");
  generate->add_option("--d", gen.d, "Dimension")->check(CLI::Range(2, 1 << 20));
  generate->add_option("--n", gen.n, "Sample count")->check(CLI::PositiveNumber);
  generate->add_option("--marginal", gen.marginal,
                       "gaussian|rademacher|uniform-cube|scaled-gaussian|student-t|mixture");
  generate->add_option("--noise", gen.noise, "clean|random-flip|boundary-flip|wedge-flip");
  generate->add_option("--opt", gen.opt, "Noise rate in [0, 1/2)");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", gen.out, "Output prefix for <out>.csv and <out>.json")
      ->required();

  LearnFlags learn;
  double strict = 0.0;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Run the tester-learner on a sample CSV");
  learn_cmd->add_option("--in", learn.in, "Input sample CSV")->required();
  learn_cmd->add_option("--out", learn.out, "Report JSON path")->required();
  learn_cmd->add_option("--epsilon", learn.cfg.epsilon, "Target excess error");
  learn_cmd->add_option("--tau", learn.cfg.tau, "Failure probability");
  learn_cmd->add_option("--seed", learn.cfg.seed, "Random seed");
  learn_cmd->add_option("--k-cap", learn.cfg.k_cap, "Largest moment degree tested");
  learn_cmd->add_option("--c-a", learn.cfg.c_a, "Localization constant");
  learn_cmd->add_option("--slack", learn.cfg.slack_multiplier, "Moment tolerance multiplier");
  CLI::Option* strict_opt = learn_cmd->add_option(
      "--strict-constant", strict, "Use the closed-form moment tolerance with this constant");

  std::string spec_path;
  CLI::App* experiment = app.add_subcommand("experiment", "Run a grid experiment");
  experiment->add_option("--spec", spec_path, "Experiment spec JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return CmdGenerate(gen);
    if (*learn_cmd) {
      if (*strict_opt) learn.strict = strict;
      return CmdLearn(learn);
    }
    return CmdExperiment(spec_path);
  } catch (const htl::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const htl::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
