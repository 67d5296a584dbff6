#pragma once

// Rendering of anaphora tables, proximity and initiative metrics as aligned
// text, CSV, or structured documents.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ctrlseg/anaphora/anaphora.hpp"
#include "ctrlseg/corpus/json_format.hpp"
#include "ctrlseg/stats/chi_square.hpp"
#include "ctrlseg/stats/metrics.hpp"
#include "ctrlseg/util/strings.hpp"
#include "ctrlseg/util/table.hpp"

namespace ctrlseg {

namespace detail {

inline constexpr std::array<std::string_view, 4> kClassHeadings{"3rd Pers", "One", "Deictic", "Event"};
inline constexpr std::array<std::string_view, 3> kShiftHeadings{"Abdication", "Summary", "Interrupt"};

inline std::string row_line(std::string_view label, const DistributionTable::Row& row) {
  char buf[32];
  std::string line(label);
  line.resize(12, ' ');
  for (const auto& cls : row) {
    std::snprintf(buf, sizeof buf, "| %4zu %5zu ", cls[0], cls[1]);
    line += buf;
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line + "\n";
}

inline std::string pct_cell(const std::optional<double>& v) { return v ? util::fixed(*v, 1) + "%" : "n/a"; }

}  // namespace detail

inline std::string render_distribution_text(const DistributionTable& t, std::string_view title) {
  std::string out;
  if (!title.empty()) out += std::string(title) + "\n";
  std::string head = "            ";
  std::string sub = "            ";
  for (auto h : detail::kClassHeadings) {
    std::string cell = "| " + std::string(h);
    cell.resize(13, ' ');
    head += cell;
    sub += "|    X    NX ";
  }
  while (head.back() == ' ') head.pop_back();
  while (sub.back() == ' ') sub.pop_back();
  out += head + "\n" + sub + "\n";
  for (std::size_t s = 0; s < 3; ++s) out += detail::row_line(detail::kShiftHeadings[s], t.by_shift[s]);
  out += detail::row_line("TOTAL", t.total);
  std::size_t initial = 0;
  for (const auto& c : t.initial) initial += c[0] + c[1];
  if (initial > 0)
    out += "(" + std::to_string(initial) + " anaphors in dialogue-initial segments " +
           (t.initial_in_total ? "included in TOTAL only" : "excluded from all rows") + ")\n";
  if (t.x_distant_ancestor > 0)
    out += "(" + std::to_string(t.x_distant_ancestor) +
           " X codings have an antecedent in an ancestor beyond the parent segment)\n";
  return out;
}

inline std::string render_distribution_csv(const DistributionTable& t) {
  util::TextTable tab;
  std::vector<std::string> head{"shift"};
  for (auto c : kAllAnaphorClasses) {
    head.push_back(std::string(to_string(c)) + "_X");
    head.push_back(std::string(to_string(c)) + "_NX");
  }
  tab.header(head);
  auto add = [&](std::string name, const DistributionTable::Row& row) {
    std::vector<std::string> cells{std::move(name)};
    for (const auto& cls : row) {
      cells.push_back(std::to_string(cls[0]));
      cells.push_back(std::to_string(cls[1]));
    }
    tab.row(cells);
  };
  for (std::size_t s = 0; s < 3; ++s) add(std::string(to_string(kAllShiftTypes[s])), t.by_shift[s]);
  add("total", t.total);
  add("initial", t.initial);
  return tab.csv();
}

inline Json distribution_to_json(const DistributionTable& t) {
  auto row = [](const DistributionTable::Row& r) {
    Json j;
    for (std::size_t c = 0; c < 4; ++c) j[std::string(to_string(kAllAnaphorClasses[c]))] = {{"X", r[c][0]}, {"NX", r[c][1]}};
    return j;
  };
  Json j;
  for (std::size_t s = 0; s < 3; ++s) j[std::string(to_string(kAllShiftTypes[s]))] = row(t.by_shift[s]);
  j["total"] = row(t.total);
  j["initial"] = row(t.initial);
  j["initial_in_total"] = t.initial_in_total;
  j["x_distant_ancestor"] = t.x_distant_ancestor;
  return j;
}

inline std::string render_proximity_text(const ProximityReport& p) {
  return "future-action event anaphora within " + std::to_string(p.window) +
         " utterances of a segment boundary: " + std::to_string(p.within) + "/" + std::to_string(p.total) + "\n";
}

inline std::string render_proximity_csv(const ProximityReport& p) {
  util::TextTable tab;
  tab.header({"dialogue", "anaphor", "utterance_index", "distance", "within_window"});
  for (const auto& e : p.entries)
    tab.row({e.dialogue, e.anaphor, std::to_string(e.utterance), e.distance ? std::to_string(*e.distance) : "",
             e.distance && *e.distance <= p.window ? "yes" : "no"});
  return tab.csv();
}

inline Json proximity_to_json(const ProximityReport& p) {
  Json j;
  j["window"] = p.window;
  j["within"] = p.within;
  j["total"] = p.total;
  j["entries"] = Json::array();
  for (const auto& e : p.entries)
    j["entries"].push_back({{"dialogue", e.dialogue},
                            {"anaphor", e.anaphor},
                            {"utterance_index", e.utterance},
                            {"distance", e.distance ? Json(*e.distance) : Json(nullptr)}});
  return j;
}

inline std::string render_chi_square_text(const stats::ChiSquareResult& r) {
  std::string out = "chi-square = " + util::fixed(r.statistic, 4) + ", df = " + std::to_string(r.degrees_of_freedom) +
                    ", p = " + util::general(r.p_value) + " -> " +
                    (r.significant ? "significant" : "not significant") + " at alpha " + util::general(r.alpha);
  if (r.yates_applied) out += " (Yates-corrected)";
  out += "\n";
  if (r.low_expected_cells > 0)
    out += "warning: " + std::to_string(r.low_expected_cells) + " cell(s) with expected count below 5\n";
  return out;
}

inline Json chi_square_to_json(const stats::ChiSquareResult& r) {
  return {{"statistic", r.statistic},     {"df", r.degrees_of_freedom}, {"p", r.p_value},
          {"alpha", r.alpha},             {"significant", r.significant}, {"yates", r.yates_applied},
          {"low_expected_cells", r.low_expected_cells}};
}

inline Json table_to_json(const stats::ContingencyTable& t) {
  Json j;
  j["rows"] = t.row_labels;
  j["columns"] = t.col_labels;
  j["counts"] = Json::array();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(t.at(r, c));
    j["counts"].push_back(row);
  }
  return j;
}

inline std::string render_contingency_text(const stats::ContingencyTable& t) {
  util::TextTable tab;
  std::vector<std::string> head{""};
  head.insert(head.end(), t.col_labels.begin(), t.col_labels.end());
  tab.header(head);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::vector<std::string> cells{r < t.row_labels.size() ? t.row_labels[r] : std::to_string(r)};
    for (std::size_t c = 0; c < t.cols(); ++c) cells.push_back(util::general(t.at(r, c)));
    tab.row(cells);
  }
  return tab.text();
}

// Side-by-side metrics in the layout of a dialogue-type comparison table.
inline util::TextTable metrics_table(const std::vector<std::pair<std::string, CorpusMetrics>>& groups) {
  util::TextTable tab;
  std::vector<std::string> head{""};
  for (const auto& [name, _] : groups) head.push_back(name);
  tab.header(head);
  auto row = [&](std::string label, auto get) {
    std::vector<std::string> cells{std::move(label)};
    for (const auto& [_, m] : groups) cells.push_back(get(m));
    tab.row(cells);
  };
  row("Turns/Seg", [](const CorpusMetrics& m) { return m.turns_per_segment ? util::fixed(*m.turns_per_segment, 2) : "n/a"; });
  row("Exp-Contr", [](const CorpusMetrics& m) { return detail::pct_cell(m.expert_control_pct); });
  row("Abdication", [](const CorpusMetrics& m) { return detail::pct_cell(m.abdication_pct); });
  row("Summary", [](const CorpusMetrics& m) { return detail::pct_cell(m.summary_pct); });
  row("Interrupt", [](const CorpusMetrics& m) { return detail::pct_cell(m.interrupt_pct); });
  row("Int-by-non-expert", [](const CorpusMetrics& m) { return detail::pct_cell(m.interrupts_by_nonexpert_pct); });
  row("turns", [](const CorpusMetrics& m) { return std::to_string(m.counted_turns); });
  row("segments", [](const CorpusMetrics& m) { return std::to_string(m.segments); });
  row("shifts", [](const CorpusMetrics& m) { return std::to_string(m.shifts); });
  return tab;
}

inline Json metrics_to_json(const CorpusMetrics& m) {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return {{"dialogues", m.dialogues},
          {"counted_turns", m.counted_turns},
          {"segments", m.segments},
          {"shifts", m.shifts},
          {"abdications", m.abdications},
          {"summaries", m.summaries},
          {"interruptions", m.interruptions},
          {"turns_per_segment", opt(m.turns_per_segment)},
          {"expert_control_pct", opt(m.expert_control_pct)},
          {"abdication_pct", opt(m.abdication_pct)},
          {"summary_pct", opt(m.summary_pct)},
          {"interrupt_pct", opt(m.interrupt_pct)},
          {"interrupts_by_nonexpert_pct", opt(m.interrupts_by_nonexpert_pct)}};
}

}  // namespace ctrlseg
