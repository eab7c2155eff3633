// Command-line front end: reads an observation/prediction csv, runs the
// paired-difference back-test suite for the selected mode and prints the
// plain-text report to stdout or --out.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "prudence/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Paired-difference back-testing of prediction prudence"};

  prudence::RunConfig cfg;
  std::string mode = "unit-interval";
  std::string weights = "both";
  std::string out_path;
  double v_value = -1.0;

  app.add_option("--input", cfg.input_path, "Input csv with columns obs, pred, raw.w")
      ->required();
  app.add_option("--mode", mode,
                 "Variable domain: unit-interval (lgd, ccf), non-negative (ead), "
                 "probability (pd), residual")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed for the bootstrap streams")
      ->capture_default_str();
  app.add_option("--iterations", cfg.iterations, "Bootstrap replication count R")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* v_opt = app.add_option("--v", v_value,
                               "Dispersion constant override (estimated from the data when unset)");
  app.add_option("--weights", weights,
                 "equal | both[:COLUMN] | column:COLUMN — which weighting columns the report "
                 "carries (both reads raw.w by default)")
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the report to this path instead of stdout");

  CLI11_PARSE(app, argc, argv);

  static const std::map<std::string, prudence::SampleKind> kModes = {
      {"residual", prudence::SampleKind::residual},
      {"unit-interval", prudence::SampleKind::unit_interval},
      {"lgd", prudence::SampleKind::unit_interval},
      {"ccf", prudence::SampleKind::unit_interval},
      {"non-negative", prudence::SampleKind::non_negative},
      {"ead", prudence::SampleKind::non_negative},
      {"probability", prudence::SampleKind::probability},
      {"pd", prudence::SampleKind::probability},
  };
  const auto mode_it = kModes.find(mode);
  if (mode_it == kModes.end()) {
    std::cerr << "error: unknown mode '" << mode << "'\n";
    return 2;
  }
  cfg.mode = mode_it->second;
  if (*v_opt) cfg.v_override = v_value;
  if (weights == "equal") {
    cfg.weight_source = prudence::WeightSource::equal_only;
  } else if (weights == "both") {
    cfg.weight_source = prudence::WeightSource::both;
  } else if (weights.rfind("both:", 0) == 0) {
    cfg.weight_source = prudence::WeightSource::both;
    cfg.weight_column = weights.substr(5);
  } else if (weights.rfind("column:", 0) == 0) {
    cfg.weight_source = prudence::WeightSource::column;
    cfg.weight_column = weights.substr(7);
  } else {
    std::cerr << "error: unknown --weights value '" << weights << "'\n";
    return 2;
  }

  try {
    const prudence::ReportDocument doc = prudence::run_suite(cfg);
    const std::string text = prudence::render_report(doc);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return 1;
      }
      out << text;
    }
  } catch (const prudence::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
