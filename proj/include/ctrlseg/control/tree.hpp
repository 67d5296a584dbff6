#pragma once

// Hierarchical segment tree. Interruptions open a child of the interrupted
// segment; an abdication or summary closes the top segment and, when control
// returns to the parent's controller, resumes the parent as a new part
// (making it discontinuous). Otherwise the new segment is a sibling.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctrlseg/control/rules.hpp"
#include "ctrlseg/corpus/types.hpp"

namespace ctrlseg {

// Contiguous utterance range [first, last] in dialogue order.
struct Part {
  std::size_t first;
  std::size_t last;
  // Shift that opened this stretch; none only for the dialogue-initial part.
  std::optional<ShiftType> opened_by;

  bool operator==(const Part&) const = default;
};

struct Segment {
  std::string id;
  std::string controller;
  std::vector<Part> parts;
  std::vector<std::size_t> children;  // indices into SegmentTree::segments
  std::optional<std::size_t> parent;
  std::optional<ShiftType> opening_shift;
  std::size_t depth = 0;

  std::size_t first() const { return parts.front().first; }
  std::size_t last_own() const { return parts.back().last; }

  bool operator==(const Segment&) const = default;
};

enum class NoteKind { offered_abdication, review_shift, depth_warning };

inline std::string_view to_string(NoteKind k) {
  switch (k) {
    case NoteKind::offered_abdication: return "offered-abdication";
    case NoteKind::review_shift: return "review-shift";
    case NoteKind::depth_warning: return "depth-warning";
  }
  return "?";
}

struct Note {
  NoteKind kind;
  std::size_t position;
  std::string message;

  bool operator==(const Note&) const = default;
};

struct SegmentTree {
  std::string dialogue;
  std::vector<Segment> segments;  // in creation order
  std::vector<std::size_t> roots;
  std::vector<Shift> shifts;
  std::vector<Note> notes;
  // Per utterance (dialogue order): owning segment and part index within it.
  std::vector<std::size_t> segment_of;
  std::vector<std::size_t> part_of;

  bool operator==(const SegmentTree&) const = default;

  const Segment& segment_at(std::size_t utterance) const { return segments[segment_of[utterance]]; }
  const Part& part_at(std::size_t utterance) const { return segment_at(utterance).parts[part_of[utterance]]; }

  // Hull of a segment including all descendants.
  std::pair<std::size_t, std::size_t> hull(std::size_t seg) const {
    std::size_t lo = segments[seg].first(), hi = segments[seg].last_own();
    for (std::size_t c : segments[seg].children) {
      auto [clo, chi] = hull(c);
      lo = std::min(lo, clo);
      hi = std::max(hi, chi);
    }
    return {lo, hi};
  }

  bool is_ancestor(std::size_t ancestor, std::size_t seg) const {
    for (auto p = segments[seg].parent; p; p = segments[*p].parent)
      if (*p == ancestor) return true;
    return false;
  }
};

struct TreeOptions {
  // Nesting deeper than this records a depth warning.
  std::size_t max_depth = 8;
};

inline SegmentTree build_tree(const Dialogue& d, const std::vector<std::string>& effective,
                              const std::vector<Shift>& shifts, const TreeOptions& opts = {}) {
  UtteranceIndex idx(d);
  SegmentTree tree;
  tree.dialogue = d.id;
  tree.shifts = shifts;
  const std::size_t n = idx.size();
  if (n == 0) return tree;
  tree.segment_of.assign(n, 0);
  tree.part_of.assign(n, 0);

  std::vector<std::size_t> stack;
  auto open = [&](std::optional<std::size_t> parent, std::size_t at, std::optional<ShiftType> opened) {
    Segment s;
    s.id = "s" + std::to_string(tree.segments.size() + 1);
    s.controller = effective[at];
    s.parts.push_back({at, at, opened});
    s.parent = parent;
    s.opening_shift = opened;
    s.depth = parent ? tree.segments[*parent].depth + 1 : 0;
    std::size_t index = tree.segments.size();
    if (parent)
      tree.segments[*parent].children.push_back(index);
    else
      tree.roots.push_back(index);
    if (s.depth > opts.max_depth)
      tree.notes.push_back({NoteKind::depth_warning, at,
                            "segment " + s.id + " nested at depth " + std::to_string(s.depth)});
    tree.segments.push_back(std::move(s));
    stack.push_back(index);
  };

  open(std::nullopt, 0, std::nullopt);
  std::size_t next_shift = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (next_shift < shifts.size() && shifts[next_shift].position == i) {
      const Shift& sh = shifts[next_shift++];
      if (sh.review)
        tree.notes.push_back({NoteKind::review_shift, i,
                              "shift to " + sh.to + " classified " + std::string(to_string(sh.type)) +
                                  " without an abdication/summary signal from " + sh.from});
      if (sh.type == ShiftType::interruption) {
        open(stack.back(), i, sh.type);
      } else {
        stack.pop_back();
        const bool resume = idx.utterance(i).resume;
        if (!stack.empty() && resume && tree.segments[stack.back()].controller == effective[i]) {
          tree.segments[stack.back()].parts.push_back({i, i, sh.type});
        } else {
          // resume=no on the post-interrupt utterance: the parent is not
          // continued; the new segment becomes the parent's sibling.
          if (!stack.empty() && !resume && tree.segments[stack.back()].controller == effective[i]) stack.pop_back();
          open(stack.empty() ? std::nullopt : std::optional<std::size_t>(stack.back()), i, sh.type);
        }
      }
    } else {
      tree.segments[stack.back()].parts.back().last = i;
    }
    tree.segment_of[i] = stack.back();
    tree.part_of[i] = tree.segments[stack.back()].parts.size() - 1;
  }
  if (next_shift != shifts.size()) throw AnalysisError("dialogue " + d.id + ": shift positions out of order");
  return tree;
}

// Convenience overload from the raw stage outputs.
inline SegmentTree build_tree(const Dialogue& d, const std::vector<ControlAssignment>& assignments,
                              const std::vector<std::size_t>& boundaries, const std::vector<ShiftType>& types,
                              const TreeOptions& opts = {}) {
  if (boundaries.size() != types.size()) throw AnalysisError("one shift type per boundary is required");
  auto trace = trace_control(d, assignments);
  std::vector<Shift> shifts;
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    Shift s = classify_shift(boundaries[k], d, trace.effective);
    s.type = types[k];
    shifts.push_back(std::move(s));
  }
  return build_tree(d, trace.effective, shifts, opts);
}

}  // namespace ctrlseg
