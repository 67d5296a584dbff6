#pragma once

// Corpus-level initiative metrics: turns per control segment, share of
// turns controlled by the expert, and the mix of shift types.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctrlseg/anaphora/anaphora.hpp"
#include "ctrlseg/control/pipeline.hpp"
#include "ctrlseg/stats/chi_square.hpp"

namespace ctrlseg {

struct MetricsOptions {
  // Count opening/closing turns too (excluded by default).
  bool include_openings = false;
};

struct CorpusMetrics {
  std::size_t dialogues = 0;
  std::size_t counted_turns = 0;
  std::size_t segments = 0;  // control stretches in which a counted turn ends
  std::size_t shifts = 0;
  std::size_t abdications = 0;
  std::size_t summaries = 0;
  std::size_t interruptions = 0;
  std::size_t turns_with_expert = 0;  // counted turns in dialogues that label an expert
  std::size_t expert_turns = 0;
  std::size_t interruptions_with_expert = 0;
  std::size_t interruptions_by_nonexpert = 0;

  // Absent when undefined (no counted segments, no expert, no shifts, ...).
  std::optional<double> turns_per_segment;
  std::optional<double> expert_control_pct;
  std::optional<double> abdication_pct;
  std::optional<double> summary_pct;
  std::optional<double> interrupt_pct;
  std::optional<double> interrupts_by_nonexpert_pct;
};

namespace detail {

inline bool counted(Phase p, const MetricsOptions& o) { return o.include_openings || p == Phase::body; }

// Majority effective controller over the turn's utterances; ties go to the
// turn's speaker.
inline std::string turn_controller(const Turn& t, const std::vector<std::string>& effective, std::size_t first) {
  std::map<std::string, std::size_t> votes;
  for (std::size_t k = 0; k < t.utterances.size(); ++k) ++votes[effective[first + k]];
  std::size_t best = 0;
  for (const auto& [who, n] : votes) best = std::max(best, n);
  std::vector<std::string> tied;
  for (const auto& [who, n] : votes)
    if (n == best) tied.push_back(who);
  if (tied.size() == 1) return tied.front();
  return t.speaker;
}

inline std::optional<double> pct(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace detail

inline CorpusMetrics corpus_metrics(std::span<const Analysis> corpus, const MetricsOptions& opts = {}) {
  CorpusMetrics m;
  for (const auto& a : corpus) {
    ++m.dialogues;
    const Dialogue& d = a.dialogue;
    const Participant* expert = d.expert();
    std::set<std::pair<std::size_t, std::size_t>> stretches;
    std::size_t index = 0;
    for (const auto& t : d.turns) {
      const std::size_t first = index;
      index += t.utterances.size();
      if (!detail::counted(t.phase, opts) || t.utterances.empty()) continue;
      ++m.counted_turns;
      // A turn belongs to the control stretch its last utterance ends in, so
      // a turn that hands control over mid-way is not counted twice.
      stretches.insert({a.tree.segment_of[index - 1], a.tree.part_of[index - 1]});
      if (expert) {
        ++m.turns_with_expert;
        if (detail::turn_controller(t, a.effective, first) == expert->id) ++m.expert_turns;
      }
    }
    m.segments += stretches.size();
    for (const auto& s : a.tree.shifts) {
      ++m.shifts;
      switch (s.type) {
        case ShiftType::abdication: ++m.abdications; break;
        case ShiftType::summary: ++m.summaries; break;
        case ShiftType::interruption:
          ++m.interruptions;
          if (expert) {
            ++m.interruptions_with_expert;
            if (s.to != expert->id) ++m.interruptions_by_nonexpert;
          }
          break;
      }
    }
  }
  if (m.segments > 0) m.turns_per_segment = static_cast<double>(m.counted_turns) / static_cast<double>(m.segments);
  m.expert_control_pct = detail::pct(m.expert_turns, m.turns_with_expert);
  m.abdication_pct = detail::pct(m.abdications, m.shifts);
  m.summary_pct = detail::pct(m.summaries, m.shifts);
  m.interrupt_pct = detail::pct(m.interruptions, m.shifts);
  m.interrupts_by_nonexpert_pct = detail::pct(m.interruptions_by_nonexpert, m.interruptions_with_expert);
  return m;
}

struct CorpusGroup {
  std::string name;
  std::vector<Analysis> dialogues;
};

struct GroupComparison {
  std::vector<std::pair<std::string, CorpusMetrics>> groups;
  stats::ContingencyTable shift_table;  // groups x shift types, as tested
  std::optional<stats::ChiSquareResult> test;
  std::vector<std::string> warnings;
};

inline GroupComparison compare_dialogue_types(std::span<const CorpusGroup> groups, const MetricsOptions& mopts = {},
                                              const stats::ChiSquareOptions& copts = {}) {
  if (groups.size() < 2) throw AnalysisError("comparison needs at least two groups");
  GroupComparison out;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (const auto& g : groups) {
    CorpusMetrics m = corpus_metrics(g.dialogues, mopts);
    if (m.shifts == 0) {
      out.warnings.push_back("group '" + g.name + "' has no control shifts and is excluded from the test");
    } else {
      rows.push_back({static_cast<double>(m.abdications), static_cast<double>(m.summaries),
                      static_cast<double>(m.interruptions)});
      labels.push_back(g.name);
    }
    out.groups.emplace_back(g.name, std::move(m));
  }
  if (rows.size() >= 2) {
    stats::ContingencyTable t(rows);
    t.row_labels = labels;
    t.col_labels = {"abdication", "summary", "interruption"};
    out.shift_table = stats::prune_empty(t, &out.warnings);
    if (out.shift_table.rows() >= 2 && out.shift_table.cols() >= 2)
      out.test = stats::chi_square(out.shift_table, copts);
    else
      out.warnings.push_back("shift-type table too small for a chi-square test");
  } else {
    out.warnings.push_back("fewer than two groups with shifts; no chi-square test");
  }
  return out;
}

// Anaphora table collapsed over classes: shift type x {X, NX}.
inline stats::ContingencyTable crossing_by_shift(const DistributionTable& t) {
  stats::ContingencyTable out(3, 2);
  out.row_labels = {"abdication", "summary", "interruption"};
  out.col_labels = {"X", "NX"};
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t c = 0; c < 4; ++c) {
      out.at(s, 0) += static_cast<double>(t.by_shift[s][c][0]);
      out.at(s, 1) += static_cast<double>(t.by_shift[s][c][1]);
    }
  return out;
}

}  // namespace ctrlseg
