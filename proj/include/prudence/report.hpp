#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prudence/basic_tests.hpp"
#include "prudence/sample.hpp"

namespace prudence {

enum class WeightSource { equal_only, column, both };

struct RunConfig {
  std::string input_path;
  SampleKind mode = SampleKind::unit_interval;
  std::uint64_t seed = 23;
  int iterations = 999;
  std::optional<double> v_override;  // dispersion; estimated from the data when absent
  WeightSource weight_source = WeightSource::both;
  std::string weight_column = "raw.w";
  int threads = 1;
};

/// Assembled results of one run: summary block plus one p-value table per
/// hypothesis direction. Cells are empty where a method is not defined
/// (weighted Jeffreys) or a computation failed; failures add a note.
struct ReportDocument {
  std::string input_name;
  std::string timestamp;  // rendered only when set; kept empty for
                          // byte-reproducible reports
  SampleKind mode = SampleKind::unit_interval;
  SampleSummary summary;
  std::uint64_t seed = 0;
  int iterations = 0;

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  // indexed [row][col]; table_prudent tests H0: mean(obs-pred) >= 0,
  // table_aggressive tests H0: mean(obs-pred) <= 0
  std::vector<std::vector<std::optional<double>>> table_prudent;
  std::vector<std::vector<std::optional<double>>> table_aggressive;
  std::vector<std::string> notes;
};

/// Reads a comma-separated file with a mandatory header row and columns
/// `obs`, `pred` and (unless weights are not required) the weight column.
/// Weights are normalized; rows are validated against the mode's domain.
PairedSample load_csv(const std::string& path, SampleKind mode, const std::string& weight_column,
                      bool need_weights);

/// Runs every test family applicable to the mode over the configured
/// weighting columns. Cell failures become NA entries with a note; they do
/// not abort the run.
ReportDocument run_suite(const RunConfig& cfg);

/// Deterministic fixed-width plain text; p-values carry four significant
/// digits, padded to a common column format; absent cells render as NA.
std::string render_report(const ReportDocument& doc);

}  // namespace prudence
