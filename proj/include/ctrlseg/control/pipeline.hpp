#pragma once

#include <string>
#include <vector>

#include "ctrlseg/control/rules.hpp"
#include "ctrlseg/control/tree.hpp"
#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/corpus/validate.hpp"
#include "ctrlseg/tagger/tagger.hpp"

namespace ctrlseg {

struct AnalysisOptions {
  bool strict = false;
  TaggerConfig tagger = default_tagger_config();
  TreeOptions tree;
};

// A dialogue with every annotation resolved, plus its control analysis.
struct Analysis {
  Dialogue dialogue;
  std::vector<ControlAssignment> assignments;
  std::vector<std::string> effective;
  SegmentTree tree;
};

inline Analysis analyze(const Dialogue& input, const AnalysisOptions& opts = {}) {
  Analysis a;
  a.dialogue = tag(input, opts.tagger, {opts.strict});
  a.assignments = assign_controllers(a.dialogue);
  ControlTrace trace = trace_control(a.dialogue, a.assignments);
  a.effective = std::move(trace.effective);
  std::vector<Shift> shifts;
  shifts.reserve(trace.boundaries.size());
  for (std::size_t b : trace.boundaries) shifts.push_back(classify_shift(b, a.dialogue, a.effective));
  a.tree = build_tree(a.dialogue, a.effective, shifts, opts.tree);
  for (std::size_t pos : trace.offered_abdications)
    a.tree.notes.push_back({NoteKind::offered_abdication, pos,
                            a.effective[pos] + " prompted but kept control (abdication offered, not taken)"});
  return a;
}

// Checks that need the segmentation: an interrupt reason may only sit on an
// anaphor of the first utterance of an interruption segment.
inline std::vector<Violation> validate_analysis(const Analysis& a) {
  std::vector<Violation> out;
  UtteranceIndex idx(a.dialogue);
  for (const auto& an : a.dialogue.anaphors) {
    if (!an.interrupt_reason) continue;
    auto pos = idx.position(an.utterance);
    if (!pos) continue;
    const Segment& seg = a.tree.segment_at(*pos);
    if (seg.opening_shift != ShiftType::interruption || seg.first() != *pos)
      out.push_back({ViolationKind::misplaced_interrupt_reason, "ana " + an.id,
                     "interrupt reason " + std::string(to_string(*an.interrupt_reason)) +
                         " is only legal on the first utterance of an interruption segment"});
  }
  return out;
}

// Static validation followed, when the dialogue is otherwise clean, by the
// segmentation-dependent checks.
inline ValidationReport validate_full(const Dialogue& d, const AnalysisOptions& opts = {}) {
  ValidationReport rep = validate(d, {!opts.strict});
  if (!rep.ok()) return rep;
  std::vector<Violation> extra;
  try {
    extra = validate_analysis(analyze(d, opts));
  } catch (const AnalysisError& e) {
    extra.push_back({ViolationKind::unanalysable, "dialogue " + d.id, e.what()});
  }
  rep.violations.insert(rep.violations.end(), extra.begin(), extra.end());
  return rep;
}

}  // namespace ctrlseg
