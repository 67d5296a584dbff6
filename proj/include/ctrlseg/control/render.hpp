#pragma once

// Human-readable outline and structured dump of a control analysis.

#include <functional>
#include <string>

#include "ctrlseg/control/pipeline.hpp"
#include "ctrlseg/corpus/json_format.hpp"
#include "ctrlseg/corpus/text_format.hpp"
#include "ctrlseg/util/strings.hpp"

namespace ctrlseg {

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline std::string shift_banner(const Shift& s, bool resumes) {
  std::string out = "------- " + upper(to_string(s.type)) + " SHIFT " + (resumes ? "BACK " : "") + "TO " + s.to;
  if (s.review) out += " [review]";
  return out + " ---------";
}

inline bool resumes_parent(const SegmentTree& tree, const Shift& s) {
  return tree.part_of[s.position] > 0;
}

}  // namespace detail

inline std::string render_outline(const Analysis& a) {
  const Dialogue& d = a.dialogue;
  const SegmentTree& tree = a.tree;
  UtteranceIndex idx(d);
  std::string out = "dialogue " + d.id + " (" + std::string(to_string(d.kind)) + ", " +
                    std::string(to_string(d.modality)) + ")\n";
  // Utterances that close a segment by abdication get the
  // "abdicates control" label.
  std::vector<bool> abdicates(idx.size(), false);
  for (const auto& s : tree.shifts) {
    if (s.type != ShiftType::abdication) continue;
    for (std::size_t k = s.position; k-- > 0;)
      if (idx.speaker(k) == s.from) {
        abdicates[k] = true;
        break;
      }
  }
  std::size_t next_shift = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::string indent(2 * tree.segment_at(i).depth, ' ');
    if (next_shift < tree.shifts.size() && tree.shifts[next_shift].position == i) {
      const Shift& s = tree.shifts[next_shift++];
      out += indent + detail::shift_banner(s, detail::resumes_parent(tree, s)) + "\n";
    }
    const Utterance& u = idx.utterance(i);
    std::string label = detail::upper(u.type ? to_string(*u.type) : "unset");
    if (u.response == Flag::yes) label += ", but response";
    if (u.redundant == Flag::yes) label += ", redundant";
    const std::string& ctl = a.effective[i];
    label += abdicates[i] ? " - " + ctl + " abdicates control" : " - " + ctl + " control";
    out += indent + idx.speaker(i) + ": \"" + u.text + "\" (" + label + ")\n";
  }
  out += "segments:\n";
  std::function<void(std::size_t)> walk = [&](std::size_t s) {
    const Segment& seg = tree.segments[s];
    out += std::string(2 + 2 * seg.depth, ' ') + seg.id + " controller=" + seg.controller;
    out += " opened-by=" + std::string(seg.opening_shift ? to_string(*seg.opening_shift) : "none");
    out += " parts=";
    for (std::size_t p = 0; p < seg.parts.size(); ++p) {
      if (p) out += ",";
      out += "[" + idx.id(seg.parts[p].first) + ".." + idx.id(seg.parts[p].last) + "]";
    }
    out += "\n";
    for (std::size_t c : seg.children) walk(c);
  };
  for (std::size_t r : tree.roots) walk(r);
  if (!tree.notes.empty()) {
    out += "notes:\n";
    for (const auto& n : tree.notes)
      out += "  " + std::string(to_string(n.kind)) + " at " + idx.id(n.position) + ": " + n.message + "\n";
  }
  return out;
}

inline Json tree_to_json(const Analysis& a) {
  const SegmentTree& tree = a.tree;
  UtteranceIndex idx(a.dialogue);
  Json j;
  j["dialogue"] = tree.dialogue;
  j["assignments"] = Json::array();
  for (std::size_t i = 0; i < a.assignments.size(); ++i)
    j["assignments"].push_back({{"utt", a.assignments[i].utterance},
                                {"controller", a.assignments[i].controller},
                                {"rule", to_string(a.assignments[i].rule)},
                                {"effective", a.effective[i]},
                                {"segment", tree.segment_at(i).id}});
  j["roots"] = Json::array();
  for (std::size_t r : tree.roots) j["roots"].push_back(tree.segments[r].id);
  j["segments"] = Json::array();
  for (const auto& seg : tree.segments) {
    Json js;
    js["id"] = seg.id;
    js["controller"] = seg.controller;
    js["opening_shift"] = seg.opening_shift ? Json(to_string(*seg.opening_shift)) : Json(nullptr);
    js["parent"] = seg.parent ? Json(tree.segments[*seg.parent].id) : Json(nullptr);
    js["depth"] = seg.depth;
    js["parts"] = Json::array();
    for (const auto& p : seg.parts)
      js["parts"].push_back({{"first", idx.id(p.first)},
                             {"last", idx.id(p.last)},
                             {"opened_by", p.opened_by ? Json(to_string(*p.opened_by)) : Json(nullptr)}});
    js["children"] = Json::array();
    for (std::size_t c : seg.children) js["children"].push_back(tree.segments[c].id);
    j["segments"].push_back(std::move(js));
  }
  j["shifts"] = Json::array();
  for (const auto& s : tree.shifts)
    j["shifts"].push_back({{"before", idx.id(s.position)},
                           {"position", s.position},
                           {"type", to_string(s.type)},
                           {"from", s.from},
                           {"to", s.to},
                           {"review", s.review}});
  j["notes"] = Json::array();
  for (const auto& n : tree.notes)
    j["notes"].push_back({{"kind", to_string(n.kind)}, {"at", idx.id(n.position)}, {"message", n.message}});
  return j;
}

// Interchange text with one boundary comment per shift; the parser skips them.
inline std::string serialize(const Dialogue& d, const SegmentTree& tree) {
  CommentMap comments;
  for (const auto& s : tree.shifts) {
    std::string line = detail::shift_banner(s, tree.segment_of.size() > s.position && detail::resumes_parent(tree, s));
    line += " (from " + s.from + ", segment " + tree.segment_at(s.position).id + ")";
    comments[s.position].push_back(std::move(line));
  }
  return serialize(d, &comments);
}

}  // namespace ctrlseg
