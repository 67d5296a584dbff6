#pragma once

// X/NX coding of anaphors against the segment tree, the shift-by-class
// distribution table, and event-anaphora proximity to segment boundaries.

#include <array>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctrlseg/anaphora/classes.hpp"
#include "ctrlseg/control/pipeline.hpp"

namespace ctrlseg {

enum class Crossing { X, NX };

inline std::string_view to_string(Crossing c) { return c == Crossing::X ? "X" : "NX"; }

// Where the antecedent sits relative to the anaphor's segment. Anything but
// same_segment codes X.
enum class AntecedentRelation { same_segment, parent, distant_ancestor, descendant, other };

inline std::string_view to_string(AntecedentRelation r) {
  switch (r) {
    case AntecedentRelation::same_segment: return "same_segment";
    case AntecedentRelation::parent: return "parent";
    case AntecedentRelation::distant_ancestor: return "distant_ancestor";
    case AntecedentRelation::descendant: return "descendant";
    case AntecedentRelation::other: return "other";
  }
  return "?";
}

struct CrossingCode {
  std::string anaphor;
  Crossing code;
  std::string segment;
  // Shift at the boundary that opened the anaphor's stretch of its segment;
  // none in the dialogue-initial stretch.
  std::optional<ShiftType> context_shift;
  AntecedentRelation relation;
  AnaphorClass aclass;
  bool future_action;

  bool operator==(const CrossingCode&) const = default;
};

inline CrossingCode code_crossing(const AnaphorAnnotation& a, const Dialogue& d, const SegmentTree& tree) {
  if (!a.antecedent) throw AnalysisError("anaphor " + a.id + ": no antecedent to code");
  UtteranceIndex idx(d);
  auto at = idx.position(a.utterance);
  auto ante = idx.position(*a.antecedent);
  if (!at || !ante || *at >= tree.segment_of.size() || *ante >= tree.segment_of.size())
    throw AnalysisError("anaphor " + a.id + ": utterance or antecedent is not covered by the segment tree");
  const std::size_t seg = tree.segment_of[*at];
  const std::size_t ante_seg = tree.segment_of[*ante];
  CrossingCode c;
  c.anaphor = a.id;
  c.segment = tree.segments[seg].id;
  c.context_shift = tree.part_at(*at).opened_by;
  c.aclass = resolve_class(a);
  c.future_action = a.future_action;
  if (seg == ante_seg) {
    c.relation = AntecedentRelation::same_segment;
  } else if (tree.segments[seg].parent == ante_seg) {
    c.relation = AntecedentRelation::parent;
  } else if (tree.is_ancestor(ante_seg, seg)) {
    c.relation = AntecedentRelation::distant_ancestor;
  } else if (tree.is_ancestor(seg, ante_seg)) {
    c.relation = AntecedentRelation::descendant;
  } else {
    c.relation = AntecedentRelation::other;
  }
  c.code = c.relation == AntecedentRelation::same_segment ? Crossing::NX : Crossing::X;
  return c;
}

// Codes every anaphor that has an antecedent, in annotation order.
inline std::vector<CrossingCode> code_anaphora(const Analysis& a) {
  std::vector<CrossingCode> out;
  for (const auto& an : a.dialogue.anaphors)
    if (an.antecedent) out.push_back(code_crossing(an, a.dialogue, a.tree));
  return out;
}

struct DistributionOptions {
  // Count anaphors of the dialogue-initial stretch (no preceding shift) in
  // the TOTAL row. They never enter a shift row.
  bool include_initial_in_total = false;
};

struct DistributionTable {
  using Row = std::array<std::array<std::size_t, 2>, 4>;  // [class][X=0, NX=1]

  std::array<Row, 3> by_shift{};  // abdication, summary, interruption
  Row initial{};                 // anaphors with no preceding shift
  Row total{};
  bool initial_in_total = false;
  std::size_t x_distant_ancestor = 0;

  bool operator==(const DistributionTable&) const = default;

  std::size_t cell(ShiftType s, AnaphorClass c, Crossing x) const {
    return by_shift[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)][x == Crossing::X ? 0 : 1];
  }
  std::size_t total_cell(AnaphorClass c, Crossing x) const {
    return total[static_cast<std::size_t>(c)][x == Crossing::X ? 0 : 1];
  }

  void add(const CrossingCode& code) {
    const std::size_t cls = static_cast<std::size_t>(code.aclass);
    const std::size_t col = code.code == Crossing::X ? 0 : 1;
    if (code.code == Crossing::X && code.relation == AntecedentRelation::distant_ancestor) ++x_distant_ancestor;
    if (code.context_shift) {
      ++by_shift[static_cast<std::size_t>(*code.context_shift)][cls][col];
      ++total[cls][col];
    } else {
      ++initial[cls][col];
      if (initial_in_total) ++total[cls][col];
    }
  }

  // Tables aggregate per dialogue and merge by addition.
  DistributionTable& operator+=(const DistributionTable& o) {
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t s = 0; s < 3; ++s) by_shift[s][c][x] += o.by_shift[s][c][x];
        initial[c][x] += o.initial[c][x];
        total[c][x] += o.total[c][x];
      }
    x_distant_ancestor += o.x_distant_ancestor;
    return *this;
  }

  std::size_t grand_total() const {
    std::size_t n = 0;
    for (const auto& cls : total) n += cls[0] + cls[1];
    return n;
  }
};

inline DistributionTable distribution_table(std::span<const Analysis> corpus, const DistributionOptions& opts = {}) {
  DistributionTable t;
  t.initial_in_total = opts.include_initial_in_total;
  for (const auto& a : corpus) {
    DistributionTable part;
    part.initial_in_total = opts.include_initial_in_total;
    for (const auto& code : code_anaphora(a)) part.add(code);
    t += part;
  }
  return t;
}

struct ProximityEntry {
  std::string dialogue;
  std::string anaphor;
  std::size_t utterance;            // dialogue-order index
  std::optional<std::size_t> distance;  // none when the dialogue has no boundary

  bool operator==(const ProximityEntry&) const = default;
};

struct ProximityReport {
  std::size_t window = 2;
  std::size_t within = 0;
  std::size_t total = 0;
  std::vector<ProximityEntry> entries;
};

// Distance from utterance i to a boundary, counted from the boundary's
// closing utterance (the last one of the outgoing segment): that utterance
// is at 0, the first utterance after the boundary at 1.
inline std::optional<std::size_t> boundary_distance(std::size_t i, const SegmentTree& tree) {
  std::optional<std::size_t> best;
  for (const auto& s : tree.shifts) {
    const std::size_t closing = s.position - 1;
    const std::size_t dist = i > closing ? i - closing : closing - i;
    if (!best || dist < *best) best = dist;
  }
  return best;
}

// Event anaphors flagged as future-action references, counted when within
// `window` utterances of any segment boundary.
inline ProximityReport boundary_proximity(std::span<const Analysis> corpus, std::size_t window) {
  ProximityReport rep;
  rep.window = window;
  for (const auto& a : corpus) {
    UtteranceIndex idx(a.dialogue);
    for (const auto& an : a.dialogue.anaphors) {
      if (!an.future_action || resolve_class(an) != AnaphorClass::event) continue;
      auto pos = idx.position(an.utterance);
      if (!pos) continue;
      ProximityEntry e{a.dialogue.id, an.id, *pos, boundary_distance(*pos, a.tree)};
      ++rep.total;
      if (e.distance && *e.distance <= window) ++rep.within;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

}  // namespace ctrlseg
