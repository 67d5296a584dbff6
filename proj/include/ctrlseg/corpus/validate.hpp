#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ctrlseg/anaphora/classes.hpp"
#include "ctrlseg/corpus/types.hpp"

namespace ctrlseg {

enum class ViolationKind {
  too_few_participants,
  duplicate_id,
  multiple_experts,
  no_turns,
  empty_turn,
  undeclared_speaker,
  empty_text,
  unencodable,
  unknown_controller,
  dangling_reference,
  antecedent_order,
  excluded_person,
  unresolved_type,
  unresolved_class,
  misplaced_interrupt_reason,
  unanalysable,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::too_few_participants: return "too-few-participants";
    case ViolationKind::duplicate_id: return "duplicate-id";
    case ViolationKind::multiple_experts: return "multiple-experts";
    case ViolationKind::no_turns: return "no-turns";
    case ViolationKind::empty_turn: return "empty-turn";
    case ViolationKind::undeclared_speaker: return "undeclared-speaker";
    case ViolationKind::empty_text: return "empty-text";
    case ViolationKind::unencodable: return "unencodable";
    case ViolationKind::unknown_controller: return "unknown-controller";
    case ViolationKind::dangling_reference: return "dangling-reference";
    case ViolationKind::antecedent_order: return "antecedent-order";
    case ViolationKind::excluded_person: return "excluded-person";
    case ViolationKind::unresolved_type: return "unresolved-type";
    case ViolationKind::unresolved_class: return "unresolved-class";
    case ViolationKind::misplaced_interrupt_reason: return "misplaced-interrupt-reason";
    case ViolationKind::unanalysable: return "unanalysable";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string location;  // "dialogue d1", "utt u3", "ana a2", ...
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.kind == k;
    return n;
  }
};

struct ValidateOptions {
  // When false (strict mode) every utterance type must be gold-annotated.
  bool tagger_enabled = true;
};

namespace detail {

// Ids and raw tokens must survive the line format unchanged.
inline bool is_bare_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '"' || c == '=' || c == '#') return false;
  return true;
}

inline bool has_line_break(const std::string& s) {
  return s.find('\n') != std::string::npos || s.find('\r') != std::string::npos;
}

}  // namespace detail

// Static checks over the data model. Checks that need a segmentation
// (interrupt-reason placement) live with the analysis pipeline.
inline ValidationReport validate(const Dialogue& d, const ValidateOptions& opts = {}) {
  ValidationReport rep;
  auto add = [&](ViolationKind k, std::string loc, std::string msg) {
    rep.violations.push_back({k, std::move(loc), std::move(msg)});
  };
  const std::string dloc = "dialogue " + d.id;
  if (!detail::is_bare_token(d.id)) add(ViolationKind::unencodable, dloc, "dialogue id is not a bare token");

  std::set<std::string> pids;
  std::size_t experts = 0;
  for (const auto& p : d.participants) {
    if (!pids.insert(p.id).second) add(ViolationKind::duplicate_id, "participant " + p.id, "participant id repeated");
    if (!detail::is_bare_token(p.id)) add(ViolationKind::unencodable, "participant " + p.id, "id is not a bare token");
    experts += p.role == Role::expert;
  }
  if (pids.size() < 2)
    add(ViolationKind::too_few_participants, dloc,
        "a dialogue needs at least 2 participants, found " + std::to_string(pids.size()));
  if (experts > 1) add(ViolationKind::multiple_experts, dloc, "more than one participant has role expert");
  if (d.turns.empty()) add(ViolationKind::no_turns, dloc, "dialogue has no turns");

  std::set<std::string> tids, uids;
  std::map<std::string, std::size_t> position;
  std::size_t index = 0;
  for (const auto& t : d.turns) {
    const std::string tloc = "turn " + t.id;
    if (!tids.insert(t.id).second) add(ViolationKind::duplicate_id, tloc, "turn id repeated");
    if (!detail::is_bare_token(t.id)) add(ViolationKind::unencodable, tloc, "id is not a bare token");
    if (!pids.count(t.speaker)) add(ViolationKind::undeclared_speaker, tloc, "speaker '" + t.speaker + "' is not a participant");
    if (t.utterances.empty()) add(ViolationKind::empty_turn, tloc, "turn has no utterances");
    for (const auto& u : t.utterances) {
      const std::string uloc = "utt " + u.id;
      if (!uids.insert(u.id).second) add(ViolationKind::duplicate_id, uloc, "utterance id repeated");
      if (!detail::is_bare_token(u.id)) add(ViolationKind::unencodable, uloc, "id is not a bare token");
      position.emplace(u.id, index++);
      if (util::trim(u.text).empty()) add(ViolationKind::empty_text, uloc, "utterance text is empty");
      if (detail::has_line_break(u.text)) add(ViolationKind::unencodable, uloc, "text contains a line break");
      if (u.controller_override && !pids.count(*u.controller_override))
        add(ViolationKind::unknown_controller, uloc,
            "controller override '" + *u.controller_override + "' is not a participant");
      if (!u.type && !opts.tagger_enabled)
        add(ViolationKind::unresolved_type, uloc, "utterance type unset and tagging disabled");
    }
  }

  std::set<std::string> aids;
  for (const auto& a : d.anaphors) {
    const std::string aloc = "ana " + a.id;
    if (!aids.insert(a.id).second) add(ViolationKind::duplicate_id, aloc, "anaphor id repeated");
    if (!detail::is_bare_token(a.id)) add(ViolationKind::unencodable, aloc, "id is not a bare token");
    if (detail::has_line_break(a.surface)) add(ViolationKind::unencodable, aloc, "surface contains a line break");
    auto at = position.find(a.utterance);
    if (at == position.end()) {
      add(ViolationKind::dangling_reference, aloc, "utterance '" + a.utterance + "' does not exist");
    }
    if (a.antecedent) {
      auto ante = position.find(*a.antecedent);
      if (ante == position.end())
        add(ViolationKind::dangling_reference, aloc, "antecedent '" + *a.antecedent + "' does not exist");
      else if (at != position.end() && ante->second > at->second)
        add(ViolationKind::antecedent_order, aloc,
            "antecedent '" + *a.antecedent + "' follows the anaphor's utterance '" + a.utterance + "'");
    }
    if (is_excluded_person(a.surface)) {
      add(ViolationKind::excluded_person, aloc, "first/second person form '" + a.surface + "' is not analysed");
    } else if (!a.aclass && !lexicon_class(a.surface)) {
      add(ViolationKind::unresolved_class, aloc, "surface '" + a.surface + "' needs an explicit class");
    }
  }
  return rep;
}

}  // namespace ctrlseg
