#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ctrlseg/error.hpp"
#include "ctrlseg/stats/incomplete_gamma.hpp"

namespace ctrlseg::stats {

// r x c table of counts with optional labels, row-major.
class ContingencyTable {
 public:
  ContingencyTable() = default;
  ContingencyTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0.0) {}
  ContingencyTable(std::vector<std::vector<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.front().size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("contingency table rows differ in length");
      cells_.insert(cells_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

  double row_total(std::size_t r) const {
    double s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += at(r, c);
    return s;
  }
  double col_total(std::size_t c) const {
    double s = 0;
    for (std::size_t r = 0; r < rows_; ++r) s += at(r, c);
    return s;
  }
  double total() const {
    double s = 0;
    for (double v : cells_) s += v;
    return s;
  }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

struct ChiSquareOptions {
  double alpha = 0.05;
  // Continuity correction; only applied to 2x2 tables.
  bool yates = false;
  // Reject non-integer counts.
  bool strict = false;
};

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool significant = false;
  bool yates_applied = false;
  // Cells whose expected count is below 5, where the approximation is weak.
  std::size_t low_expected_cells = 0;
};

// Pearson's chi-square test of independence, expected counts from the
// marginals, p from the upper tail with (r-1)(c-1) degrees of freedom.
inline ChiSquareResult chi_square(const ContingencyTable& t, const ChiSquareOptions& opts = {}) {
  if (t.rows() < 2 || t.cols() < 2) throw AnalysisError("chi-square needs at least a 2x2 table");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw AnalysisError("alpha must lie in (0,1)");
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) {
      double v = t.at(r, c);
      if (!(v >= 0.0) || std::isinf(v)) throw AnalysisError("chi-square counts must be finite and non-negative");
      if (opts.strict && v != std::floor(v)) throw AnalysisError("non-integer count in strict mode");
    }
  for (std::size_t r = 0; r < t.rows(); ++r)
    if (t.row_total(r) <= 0.0) throw AnalysisError("chi-square: row " + std::to_string(r) + " has a zero marginal");
  for (std::size_t c = 0; c < t.cols(); ++c)
    if (t.col_total(c) <= 0.0) throw AnalysisError("chi-square: column " + std::to_string(c) + " has a zero marginal");

  ChiSquareResult res;
  res.alpha = opts.alpha;
  res.yates_applied = opts.yates && t.rows() == 2 && t.cols() == 2;
  const double n = t.total();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const double expected = t.row_total(r) * t.col_total(c) / n;
      if (expected < 5.0) ++res.low_expected_cells;
      double diff = std::fabs(t.at(r, c) - expected);
      if (res.yates_applied) diff = std::max(0.0, diff - 0.5);
      res.statistic += diff * diff / expected;
    }
  }
  res.degrees_of_freedom = (t.rows() - 1) * (t.cols() - 1);
  res.p_value = chi_square_upper_tail(res.statistic, static_cast<double>(res.degrees_of_freedom));
  res.significant = res.p_value < opts.alpha;
  return res;
}

}  // namespace ctrlseg::stats

namespace ctrlseg::stats {

// Drops all-zero rows and columns (which would make expected counts zero),
// naming each dropped line in `dropped`.
inline ContingencyTable prune_empty(const ContingencyTable& t, std::vector<std::string>* dropped = nullptr) {
  std::vector<std::size_t> keep_r, keep_c;
  auto label = [](const std::vector<std::string>& labels, std::size_t i, const char* kind) {
    return i < labels.size() ? labels[i] : std::string(kind) + " " + std::to_string(i);
  };
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.row_total(r) > 0.0)
      keep_r.push_back(r);
    else if (dropped)
      dropped->push_back("empty row '" + label(t.row_labels, r, "row") + "' dropped");
  }
  for (std::size_t c = 0; c < t.cols(); ++c) {
    if (t.col_total(c) > 0.0)
      keep_c.push_back(c);
    else if (dropped)
      dropped->push_back("empty column '" + label(t.col_labels, c, "column") + "' dropped");
  }
  ContingencyTable out(keep_r.size(), keep_c.size());
  for (std::size_t i = 0; i < keep_r.size(); ++i) {
    out.row_labels.push_back(label(t.row_labels, keep_r[i], "row"));
    for (std::size_t j = 0; j < keep_c.size(); ++j) out.at(i, j) = t.at(keep_r[i], keep_c[j]);
  }
  for (std::size_t j = 0; j < keep_c.size(); ++j) out.col_labels.push_back(label(t.col_labels, keep_c[j], "column"));
  return out;
}

}  // namespace ctrlseg::stats
