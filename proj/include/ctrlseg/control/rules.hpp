#pragma once

// Control rules: who controls each utterance, where control changes, and
// what kind of shift each change is.
//
//   assertion  speaker, unless a response to a question
//   command    speaker
//   question   speaker, unless a response to a question or command
//   prompt     hearer

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/error.hpp"

namespace ctrlseg {

enum class Rule {
  assertion_speaker,
  assertion_response,
  command_speaker,
  question_speaker,
  question_response,
  prompt_hearer,
  override_,
};

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::assertion_speaker: return "assertion_speaker";
    case Rule::assertion_response: return "assertion_response";
    case Rule::command_speaker: return "command_speaker";
    case Rule::question_speaker: return "question_speaker";
    case Rule::question_response: return "question_response";
    case Rule::prompt_hearer: return "prompt_hearer";
    case Rule::override_: return "override";
  }
  return "?";
}

enum class ShiftType { abdication, summary, interruption };

inline constexpr std::array<ShiftType, 3> kAllShiftTypes{ShiftType::abdication, ShiftType::summary,
                                                         ShiftType::interruption};

inline std::string_view to_string(ShiftType s) {
  switch (s) {
    case ShiftType::abdication: return "abdication";
    case ShiftType::summary: return "summary";
    case ShiftType::interruption: return "interruption";
  }
  return "?";
}

struct ControlAssignment {
  std::string utterance;
  std::string controller;
  Rule rule;

  bool operator==(const ControlAssignment&) const = default;
};

namespace detail {

inline const std::string& other_participant(const Dialogue& d, const std::string& speaker) {
  for (const auto& p : d.participants)
    if (p.id != speaker) return p.id;
  throw AnalysisError("dialogue " + d.id + ": no hearer for speaker " + speaker);
}

inline UtteranceType resolved_type(const Utterance& u) {
  if (!u.type) throw AnalysisError("utt " + u.id + ": utterance type is unresolved");
  return *u.type;
}

// Speaker of the question (or command) a response answers: the most recent
// earlier non-prompt by another participant of a licensing type.
inline std::string response_target(const Dialogue& d, const UtteranceIndex& idx, std::size_t i, bool allow_command) {
  const std::string& speaker = idx.speaker(i);
  for (std::size_t k = i; k-- > 0;) {
    const Utterance& prev = idx.utterance(k);
    if (!prev.type || *prev.type == UtteranceType::prompt) continue;
    if (idx.speaker(k) == speaker) continue;
    if (*prev.type == UtteranceType::question || (allow_command && *prev.type == UtteranceType::command))
      return idx.speaker(k);
  }
  if (d.participants.size() == 2) return other_participant(d, speaker);
  throw AnalysisError("utt " + idx.id(i) + ": response without an identifiable questioner");
}

}  // namespace detail

inline std::vector<ControlAssignment> assign_controllers(const Dialogue& d) {
  UtteranceIndex idx(d);
  std::vector<ControlAssignment> out;
  out.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Utterance& u = idx.utterance(i);
    const std::string& speaker = idx.speaker(i);
    UtteranceType type = detail::resolved_type(u);
    if (u.controller_override) {
      out.push_back({u.id, *u.controller_override, Rule::override_});
      continue;
    }
    auto needs_response = [&] {
      if (u.response == Flag::automatic)
        throw AnalysisError("utt " + u.id + ": response flag is unresolved (run the tagger)");
      return u.response == Flag::yes;
    };
    switch (type) {
      case UtteranceType::assertion:
        if (needs_response())
          out.push_back({u.id, detail::response_target(d, idx, i, false), Rule::assertion_response});
        else
          out.push_back({u.id, speaker, Rule::assertion_speaker});
        break;
      case UtteranceType::command:
        out.push_back({u.id, speaker, Rule::command_speaker});
        break;
      case UtteranceType::question:
        if (needs_response())
          out.push_back({u.id, detail::response_target(d, idx, i, true), Rule::question_response});
        else
          out.push_back({u.id, speaker, Rule::question_speaker});
        break;
      case UtteranceType::prompt:
        if (d.participants.size() != 2)
          throw AnalysisError("utt " + u.id + ": prompt hearer is ambiguous with " +
                              std::to_string(d.participants.size()) +
                              " participants; add a controller override");
        out.push_back({u.id, detail::other_participant(d, speaker), Rule::prompt_hearer});
        break;
    }
  }
  return out;
}

// Effective controllers after the prompt-retention rule: a controller's own
// prompt stays with the controller (an offered abdication) until the other
// side actually takes a controlling turn.
struct ControlTrace {
  std::vector<std::string> effective;
  std::vector<std::size_t> boundaries;          // index of first utterance after each boundary
  std::vector<std::size_t> offered_abdications;  // controller prompts followed by the controller continuing
};

inline ControlTrace trace_control(const Dialogue& d, const std::vector<ControlAssignment>& assignments) {
  UtteranceIndex idx(d);
  if (assignments.size() != idx.size())
    throw AnalysisError("dialogue " + d.id + ": assignments do not cover every utterance");
  ControlTrace tr;
  tr.effective.reserve(idx.size());
  std::string current;
  std::optional<std::size_t> pending;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::string& rule_controller = assignments[i].controller;
    const bool own_prompt = idx.utterance(i).type == UtteranceType::prompt && idx.speaker(i) == current &&
                            rule_controller != current;
    if (i == 0) {
      current = rule_controller;
    } else if (own_prompt) {
      if (!pending) pending = i;
    } else if (rule_controller != current) {
      tr.boundaries.push_back(i);
      current = rule_controller;
      pending.reset();
    } else if (pending && idx.speaker(i) == current && idx.utterance(i).type != UtteranceType::prompt) {
      tr.offered_abdications.push_back(*pending);
      pending.reset();
    }
    tr.effective.push_back(current);
  }
  return tr;
}

inline std::vector<std::size_t> find_boundaries(const Dialogue& d, const std::vector<ControlAssignment>& assignments) {
  return trace_control(d, assignments).boundaries;
}

struct Shift {
  std::size_t position;  // first utterance of the incoming segment
  ShiftType type;
  std::string from;
  std::string to;
  // Set when the classification is uncertain: the outgoing
  // controller's last utterance was an unanswered question, or the outgoing
  // controller never spoke.
  bool review = false;

  bool operator==(const Shift&) const = default;
};

// x = last utterance by the outgoing controller before the boundary:
// prompt -> abdication, redundant -> summary, else interruption.
inline Shift classify_shift(std::size_t boundary, const Dialogue& d, const std::vector<std::string>& effective) {
  UtteranceIndex idx(d);
  if (boundary == 0 || boundary >= idx.size()) throw AnalysisError("boundary position out of range");
  Shift s{boundary, ShiftType::interruption, effective[boundary - 1], effective[boundary], false};
  for (std::size_t k = boundary; k-- > 0;) {
    if (idx.speaker(k) != s.from) continue;
    const Utterance& x = idx.utterance(k);
    if (x.type == UtteranceType::prompt) {
      s.type = ShiftType::abdication;
    } else if (x.redundant == Flag::yes) {
      s.type = ShiftType::summary;
    } else if (x.type == UtteranceType::question) {
      s.review = true;
    }
    return s;
  }
  s.review = true;
  return s;
}

inline ShiftType classify_shift(std::size_t boundary, const Dialogue& d, const std::vector<ControlAssignment>& assignments) {
  return classify_shift(boundary, d, trace_control(d, assignments).effective).type;
}

}  // namespace ctrlseg
