#include "prudence/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prudence/interval_tests.hpp"
#include "prudence/nonneg_tests.hpp"
#include "prudence/probability_tests.hpp"

namespace prudence {

// ---------------------------------------------------------------------------
// CSV ingestion

namespace {

std::string trim_field(std::string s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim_field(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim_field(cur));
  return out;
}

double parse_double(const std::string& field, const std::string& path, std::size_t line_no,
                    const std::string& column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    fail(errc::parse_error, path + ": row " + std::to_string(line_no) + ": column '" + column +
                                "': cannot parse '" + field + "'");
  return value;
}

}  // namespace

PairedSample load_csv(const std::string& path, SampleKind mode, const std::string& weight_column,
                      bool need_weights) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, path + ": cannot open file");

  std::string line;
  if (!std::getline(in, line)) fail(errc::parse_error, path + ": empty file, header required");
  const std::vector<std::string> header = split_csv_line(line);
  const auto column_index = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto require_column = [&](const std::string& name) {
    const auto idx = column_index(name);
    if (!idx) fail(errc::missing_column, path + ": missing column '" + name + "'");
    return *idx;
  };
  const std::size_t obs_idx = require_column("obs");
  const std::size_t pred_idx = require_column("pred");
  std::optional<std::size_t> w_idx;
  if (need_weights) w_idx = require_column(weight_column);

  std::vector<double> obs;
  std::vector<double> pred;
  std::vector<double> raw_w;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_field(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    const std::size_t needed = std::max({obs_idx, pred_idx, w_idx.value_or(0)}) + 1;
    if (fields.size() < needed)
      fail(errc::parse_error, path + ": row " + std::to_string(line_no) + ": expected at least " +
                                  std::to_string(needed) + " fields, found " +
                                  std::to_string(fields.size()));
    obs.push_back(parse_double(fields[obs_idx], path, line_no, "obs"));
    pred.push_back(parse_double(fields[pred_idx], path, line_no, "pred"));
    if (w_idx) raw_w.push_back(parse_double(fields[*w_idx], path, line_no, weight_column));
  }
  const auto n = static_cast<Eigen::Index>(obs.size());
  if (n == 0) fail(errc::empty_sample, path + ": no data rows");

  const Eigen::ArrayXd obs_v = Eigen::Map<const Eigen::ArrayXd>(obs.data(), n);
  const Eigen::ArrayXd pred_v = Eigen::Map<const Eigen::ArrayXd>(pred.data(), n);
  WeightVector w = need_weights
                       ? normalize_weights(Eigen::Map<const Eigen::ArrayXd>(raw_w.data(), n))
                       : WeightVector::equal(n);
  try {
    return PairedSample::make(obs_v, pred_v, std::move(w), mode);
  } catch (const Error& e) {
    // make() reports 0-based indices; translate to file rows (header is row 1)
    fail(e.code(), path + ": " + e.what() + " [data rows start at file row 2]");
  }
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

enum class ColumnKind { eq_weighted, weighted, w_adjusted };

const char* column_label(ColumnKind c) {
  switch (c) {
    case ColumnKind::eq_weighted: return "Eq-weighted";
    case ColumnKind::weighted: return "Weighted";
    case ColumnKind::w_adjusted: return "W-adjusted";
  }
  return "?";
}

const char* mode_name(SampleKind k) {
  switch (k) {
    case SampleKind::residual: return "residual";
    case SampleKind::unit_interval: return "unit-interval";
    case SampleKind::non_negative: return "non-negative";
    case SampleKind::probability: return "probability";
  }
  return "?";
}

struct CellWriter {
  ReportDocument& doc;
  std::size_t row;
  std::size_t col;
  void operator()(const std::optional<PValuePair>& pv) const {
    if (!pv) return;
    doc.table_prudent[row][col] = pv->p_prudent;
    doc.table_aggressive[row][col] = pv->p_aggressive;
  }
};

}  // namespace

ReportDocument run_suite(const RunConfig& cfg) {
  if (cfg.iterations < 1) fail(errc::domain_error, "run_suite: iterations must be >= 1");
  const bool need_weights = cfg.weight_source != WeightSource::equal_only;
  const PairedSample loaded = load_csv(cfg.input_path, cfg.mode, cfg.weight_column, need_weights);
  const Eigen::Index n = loaded.size();
  const bool prob = cfg.mode == SampleKind::probability;

  ReportDocument doc;
  doc.input_name = std::filesystem::path(cfg.input_path).filename().string();
  doc.mode = cfg.mode;
  doc.seed = cfg.seed;
  doc.iterations = cfg.iterations;
  doc.summary = summarize(loaded);
  doc.row_labels = {prob ? "Jeffreys" : "t-test", "Basic", "Basic normal", "Expanded variance",
                    "Exp var normal"};

  std::vector<ColumnKind> cols;
  switch (cfg.weight_source) {
    case WeightSource::equal_only:
      cols = {ColumnKind::eq_weighted};
      break;
    case WeightSource::column:
      cols = {ColumnKind::weighted, ColumnKind::w_adjusted};
      break;
    case WeightSource::both:
      cols = {ColumnKind::eq_weighted, ColumnKind::weighted, ColumnKind::w_adjusted};
      break;
  }
  if (prob)
    cols.erase(std::remove(cols.begin(), cols.end(), ColumnKind::w_adjusted), cols.end());
  for (ColumnKind c : cols) doc.col_labels.emplace_back(column_label(c));

  doc.table_prudent.assign(doc.row_labels.size(),
                           std::vector<std::optional<double>>(cols.size()));
  doc.table_aggressive = doc.table_prudent;

  const auto add_note = [&](const std::string& note) {
    if (std::find(doc.notes.begin(), doc.notes.end(), note) == doc.notes.end())
      doc.notes.push_back(note);
  };
  const auto guarded = [&](std::size_t row, std::size_t col,
                           const std::function<PValuePair()>& fn) -> std::optional<PValuePair> {
    try {
      return fn();
    } catch (const Error& e) {
      add_note(doc.row_labels[row] + " / " + doc.col_labels[col] + ": " + e.what());
      return std::nullopt;
    }
  };

  TestConfig tc;
  tc.iterations = cfg.iterations;
  tc.seed = cfg.seed;
  tc.threads = cfg.threads;

  for (std::size_t c = 0; c < cols.size(); ++c) {
    const ColumnKind ck = cols[c];
    tc.weighting = ck == ColumnKind::eq_weighted  ? Weighting::equal
                   : ck == ColumnKind::weighted   ? Weighting::weighted
                                                  : Weighting::weight_adjusted;

    // Sample view feeding the t-test / basic rows.
    const PairedSample basic_view =
        ck == ColumnKind::eq_weighted ? loaded.with_weights(WeightVector::equal(n))
        : ck == ColumnKind::weighted  ? loaded
                                      : weight_adjust(loaded);
    const Eigen::ArrayXd resid = basic_view.residuals();

    if (prob) {
      if (ck == ColumnKind::eq_weighted) {
        CellWriter{doc, 0, c}(guarded(0, c, [&] {
          BinomialSummary bs;
          bs.customers = n;
          bs.defaults = static_cast<std::int64_t>(std::llround(loaded.obs.sum()));
          bs.pd = loaded.pred.mean();
          return jeffreys_pvalue(bs);
        }));
      }
      // no weighted-mean version of the binomial Jeffreys test exists
    } else {
      CellWriter{doc, 0, c}(guarded(0, c, [&] { return t_test(resid, basic_view.weights); }));
      if (ck == ColumnKind::weighted)
        add_note("Weighted t-test: computed without strong theoretical foundation.");
    }

    const std::optional<PValuePair> basic_boot =
        guarded(1, c, [&] { return basic_bootstrap(resid, basic_view.weights, tc); });
    const std::optional<PValuePair> basic_norm =
        guarded(2, c, [&] { return basic_normal(resid, basic_view.weights); });
    CellWriter{doc, 1, c}(basic_boot);
    CellWriter{doc, 2, c}(basic_norm);

    // Expanded-variance rows.
    const auto fall_back_to_basic = [&](const std::string& why) {
      CellWriter{doc, 3, c}(basic_boot);
      CellWriter{doc, 4, c}(basic_norm);
      add_note("Expanded variance / " + doc.col_labels[c] + ": " + why +
               "; fell back to the basic approach.");
    };

    if (prob) {
      const PairedSample ex = ck == ColumnKind::eq_weighted
                                  ? loaded.with_weights(WeightVector::equal(n))
                                  : loaded;
      CellWriter{doc, 3, c}(guarded(3, c, [&] { return exact_pvalues(ex); }));
      CellWriter{doc, 4, c}(guarded(4, c, [&] { return probability_normal(ex); }));
      continue;
    }

    if (ck == ColumnKind::w_adjusted || cfg.mode != SampleKind::unit_interval) {
      // Gamma-model route: the weight-adjusted sample leaves the unit
      // interval, and residual-mode data has no unit-interval guarantee
      // either, so both go through the non-negative machinery.
      std::optional<PairedSample> ex;
      try {
        if (ck == ColumnKind::w_adjusted) {
          ex = weight_adjust_pairs(loaded);
        } else {
          const WeightVector w = ck == ColumnKind::eq_weighted ? WeightVector::equal(n)
                                                               : loaded.weights;
          ex = PairedSample::make(loaded.obs, loaded.pred, w, SampleKind::non_negative);
        }
      } catch (const Error& e) {
        add_note("Expanded variance / " + doc.col_labels[c] + ": " + e.what());
      }
      if (ex) {
        const bool allow_override = ck != ColumnKind::w_adjusted;
        try {
          const double v = allow_override && cfg.v_override
                               ? *cfg.v_override
                               : estimate_v_gamma(ex->obs, ex->weights);
          if (v == 0.0) {
            fall_back_to_basic("dispersion v is 0");
          } else {
            const double hw = weighted_mean(ex->obs, ex->weights);
            if (v > hw)
              add_note("Expanded variance / " + doc.col_labels[c] +
                       ": dispersion v exceeds the weighted observation mean.");
            CellWriter{doc, 3, c}(guarded(3, c, [&] { return nonneg_bootstrap(*ex, tc, v); }));
            CellWriter{doc, 4, c}(guarded(4, c, [&] { return nonneg_normal(*ex, v); }));
          }
        } catch (const Error& e) {
          add_note("Expanded variance / " + doc.col_labels[c] + ": " + e.what());
        }
      }
    } else {
      const PairedSample ex = ck == ColumnKind::eq_weighted
                                  ? loaded.with_weights(WeightVector::equal(n))
                                  : loaded;
      try {
        const double v = cfg.v_override ? *cfg.v_override : estimate_v_unit(ex.obs, ex.weights);
        if (v == 0.0) {
          fall_back_to_basic("dispersion v is 0");
        } else {
          CellWriter{doc, 3, c}(guarded(3, c, [&] { return interval_bootstrap(ex, tc, v); }));
          CellWriter{doc, 4, c}(guarded(4, c, [&] { return interval_normal(ex, v); }));
        }
      } catch (const Error& e) {
        add_note("Expanded variance / " + doc.col_labels[c] + ": " + e.what());
      }
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Round to four significant digits; padding must not expose digits beyond
// them.
double signif4(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  const double scale =
      std::pow(10.0, 3 - static_cast<int>(std::floor(std::log10(std::fabs(x)))));
  return std::round(x * scale) / scale;
}

// Magnitudes whose four significant digits sit deeper than twelve decimals
// switch to scientific notation instead of rendering as zeros.
bool needs_scientific(double x) {
  return std::isfinite(x) && x != 0.0 && std::fabs(x) < 1e-9;
}

// Decimal places needed for four significant digits, trailing zeros trimmed.
// Values sharing a block are then padded to the block-wide maximum, matching
// the common-format style of the reference layout.
int decimals_needed(double x) {
  if (!std::isfinite(x) || x == 0.0 || needs_scientific(x)) return 1;
  int d = 3 - static_cast<int>(std::floor(std::log10(std::fabs(x))));
  d = std::clamp(d, 0, 17);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", d, x);
  std::string s(buf);
  const auto dot = s.find('.');
  if (dot == std::string::npos) return 0;
  int needed = static_cast<int>(s.size() - dot - 1);
  while (needed > 0 && s.back() == '0') {
    s.pop_back();
    --needed;
  }
  return needed;
}

std::string fixed(double x, int dec) {
  char buf[64];
  if (needs_scientific(x))
    std::snprintf(buf, sizeof buf, "%.3e", x);
  else
    std::snprintf(buf, sizeof buf, "%.*f", dec, signif4(x));
  return buf;
}

std::vector<std::string> common_format(const std::vector<double>& xs) {
  int dec = 0;
  for (double x : xs) dec = std::max(dec, decimals_needed(x));
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(fixed(x, dec));
  return out;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void append_named_row(std::ostringstream& os, const std::vector<std::string>& labels,
                      const std::vector<double>& values) {
  const std::vector<std::string> cells = common_format(values);
  std::string line1;
  std::string line2;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t w = std::max(labels[i].size(), cells[i].size());
    if (i > 0) {
      line1 += ' ';
      line2 += ' ';
    }
    line1 += pad_left(labels[i], w);
    line2 += pad_left(cells[i], w);
  }
  os << line1 << '\n' << line2 << '\n';
}

void append_table(std::ostringstream& os, const std::string& title,
                  const std::vector<std::string>& row_labels,
                  const std::vector<std::string>& col_labels,
                  const std::vector<std::vector<std::optional<double>>>& cells) {
  os << title << '\n';
  const std::size_t rows = row_labels.size();
  const std::size_t ncol = col_labels.size();

  // Column-wise common format across present cells.
  std::vector<std::vector<std::string>> text(rows, std::vector<std::string>(ncol, "NA"));
  for (std::size_t c = 0; c < ncol; ++c) {
    int dec = 0;
    for (std::size_t r = 0; r < rows; ++r)
      if (cells[r][c]) dec = std::max(dec, decimals_needed(*cells[r][c]));
    for (std::size_t r = 0; r < rows; ++r)
      if (cells[r][c]) text[r][c] = fixed(*cells[r][c], dec);
  }

  std::size_t label_w = 0;
  for (const auto& l : row_labels) label_w = std::max(label_w, l.size());
  std::vector<std::size_t> col_w(ncol);
  for (std::size_t c = 0; c < ncol; ++c) {
    col_w[c] = col_labels[c].size();
    for (std::size_t r = 0; r < rows; ++r) col_w[c] = std::max(col_w[c], text[r][c].size());
  }

  os << std::string(label_w, ' ');
  for (std::size_t c = 0; c < ncol; ++c) os << ' ' << pad_left(col_labels[c], col_w[c]);
  os << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    os << pad_right(row_labels[r], label_w);
    for (std::size_t c = 0; c < ncol; ++c) os << ' ' << pad_left(text[r][c], col_w[c]);
    os << '\n';
  }
}

}  // namespace

std::string render_report(const ReportDocument& doc) {
  static const std::vector<std::string> kQuantileLabels = {"10%", "25%", "50%", "75%", "90%"};
  const bool prob = doc.mode == SampleKind::probability;
  std::ostringstream os;
  if (!doc.timestamp.empty()) os << '[' << doc.timestamp << "]\n";
  os << "Tool: prudence\n";
  os << "Input data: " << doc.input_name << '\n';
  os << "Mode: " << mode_name(doc.mode) << "\n\n";

  os << "Summary of sample distribution:\n";
  os << "Sample size: " << doc.summary.n << '\n';
  os << "Sample means:\n";
  append_named_row(os, {"EqWeighted", "Weighted"}, {doc.summary.mean_eq, doc.summary.mean_w});
  os << "Sample standard deviations:\n";
  if (prob)
    append_named_row(os, {"EqWeighted", "Weighted"}, {doc.summary.sd_eq, doc.summary.sd_w});
  else
    append_named_row(os, {"EqWeighted", "Weighted", "W.adjusted"},
                     {doc.summary.sd_eq, doc.summary.sd_w, doc.summary.sd_adj});
  os << "Three largest weights:";
  for (const std::string& s : common_format(doc.summary.top_weights)) os << ' ' << s;
  os << '\n';
  os << "Sample quantiles:\n";
  append_named_row(os, kQuantileLabels,
                   {doc.summary.quantiles.begin(), doc.summary.quantiles.end()});
  if (!prob) {
    os << "Weight-adjusted sample quantiles:\n";
    append_named_row(os, kQuantileLabels,
                     {doc.summary.quantiles_adj.begin(), doc.summary.quantiles_adj.end()});
  }

  os << "\nRandom seed: " << doc.seed << '\n';
  os << "Bootstrap iterations: " << doc.iterations << "\n\n";

  append_table(os, "p-values for H0: mean(obs-pred)>=0 vs. H1: mean(obs-pred)<0", doc.row_labels,
               doc.col_labels, doc.table_prudent);
  os << '\n';
  append_table(os, "p-values for H0: mean(obs-pred)<=0 vs. H1: mean(obs-pred)>0", doc.row_labels,
               doc.col_labels, doc.table_aggressive);

  if (!doc.notes.empty()) {
    os << "\nNotes:\n";
    for (const std::string& note : doc.notes) os << "- " << note << '\n';
  }
  return os.str();
}

}  // namespace prudence
