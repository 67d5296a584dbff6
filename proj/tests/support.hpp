#pragma once

// Shared helpers for the test suites: fixture loading, compact dialogue
// construction and a seeded generator of random two-party dialogues.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctrlseg/control/rules.hpp"
#include "ctrlseg/corpus/text_format.hpp"
#include "ctrlseg/corpus/types.hpp"

#ifndef CTRLSEG_FIXTURES
#define CTRLSEG_FIXTURES "fixtures"
#endif

namespace ctrlseg::testing {

inline std::string fixture_path(const std::string& name) { return std::string(CTRLSEG_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Dialogue load_fixture(const std::string& name) { return parse_transcript(read_fixture(name)); }

// One utterance per turn; speakers A and B (A is the expert).
struct Step {
  std::string speaker;
  UtteranceType type;
  bool response = false;
  bool redundant = false;
  std::string text = {};
};

inline Dialogue make_dialogue(const std::vector<Step>& steps, const std::string& id = "d") {
  Dialogue d;
  d.id = id;
  d.participants = {{"A", Role::expert}, {"B", Role::client}};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& s = steps[i];
    Turn t;
    t.id = "t" + std::to_string(i + 1);
    t.speaker = s.speaker;
    Utterance u;
    u.id = "u" + std::to_string(i + 1);
    u.text = s.text.empty() ? std::string(to_string(s.type)) + " " + std::to_string(i + 1) : s.text;
    u.type = s.type;
    u.response = s.response ? Flag::yes : Flag::no;
    u.redundant = s.redundant ? Flag::yes : Flag::no;
    t.utterances.push_back(std::move(u));
    d.turns.push_back(std::move(t));
  }
  return d;
}

// A dialogue realising the given shift sequence, A speaking first. Every
// stretch opens with a plain assertion; an abdication is signalled by the
// controller's prompt, a summary by a redundant assertion, and an
// interruption by nothing at all.
inline std::vector<Step> shift_sequence_steps(const std::vector<ShiftType>& shifts) {
  std::vector<Step> steps{{"A", UtteranceType::assertion}};
  std::string current = "A";
  for (ShiftType s : shifts) {
    if (s == ShiftType::abdication) steps.push_back({current, UtteranceType::prompt});
    if (s == ShiftType::summary) steps.push_back({current, UtteranceType::assertion, false, true});
    current = current == "A" ? "B" : "A";
    steps.push_back({current, UtteranceType::assertion});
  }
  return steps;
}

inline std::vector<ShiftType> shift_mix(std::size_t abdications, std::size_t summaries, std::size_t interruptions) {
  std::vector<ShiftType> out;
  // Interleave so no type is bunched at one end.
  while (abdications + summaries + interruptions > 0) {
    if (abdications) --abdications, out.push_back(ShiftType::abdication);
    if (summaries) --summaries, out.push_back(ShiftType::summary);
    if (interruptions) --interruptions, out.push_back(ShiftType::interruption);
  }
  return out;
}

struct RandomDialogueOptions {
  std::size_t max_utterances = 14;
  bool with_anaphors = true;
  bool with_phases = true;
  bool with_overrides = false;
  bool with_resume = true;
};

// Random gold-tagged two-party dialogue covering all four utterance types,
// both flag values, multi-utterance turns, phases and anaphors. Texts carry
// quotes, backslashes, '#' and non-ASCII bytes to exercise escaping.
inline Dialogue random_dialogue(std::mt19937_64& rng, std::size_t serial, const RandomDialogueOptions& o = {}) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  static const std::vector<std::string> kWords{"so",  "the",    "IRA", "\"quoted\"", "back\\slash", "#hash",
                                               "caf\xc3\xa9", "rate", "okay", "fund",     "it's",        "49%"};
  Dialogue d;
  d.id = "r" + std::to_string(serial);
  d.kind = pick(2) ? DialogueKind::advisory : DialogueKind::task_oriented;
  d.modality = pick(2) ? Modality::phone : Modality::keyboard;
  d.participants = {{"A", pick(3) ? Role::expert : Role::unspecified}, {"B", pick(2) ? Role::client : Role::unspecified}};
  const std::size_t n = 1 + pick(o.max_utterances);
  std::size_t made = 0;
  while (made < n) {
    Turn t;
    t.id = "t" + std::to_string(d.turns.size() + 1);
    t.speaker = pick(2) ? "A" : "B";
    if (o.with_phases) {
      std::size_t r = pick(10);
      t.phase = r == 0 ? Phase::opening : r == 1 ? Phase::closing : Phase::body;
    }
    const std::size_t k = std::min<std::size_t>(1 + (pick(4) == 0 ? pick(3) : 0), n - made);
    for (std::size_t j = 0; j < k; ++j) {
      Utterance u;
      u.id = "u" + std::to_string(++made);
      std::string text;
      for (std::size_t w = 0, words = 1 + pick(5); w < words; ++w) text += (w ? " " : "") + kWords[pick(kWords.size())];
      u.text = text;
      u.type = kAllUtteranceTypes[pick(4)];
      u.response = pick(3) == 0 ? Flag::yes : Flag::no;
      u.redundant = pick(4) == 0 ? Flag::yes : Flag::no;
      if (o.with_overrides && pick(12) == 0) u.controller_override = pick(2) ? "A" : "B";
      if (o.with_resume && pick(8) == 0) u.resume = false;
      t.utterances.push_back(std::move(u));
    }
    d.turns.push_back(std::move(t));
  }
  if (o.with_anaphors) {
    static const std::vector<std::pair<std::string, AnaphorClass>> kSurfaces{
        {"they", AnaphorClass::third_person}, {"THAT", AnaphorClass::event},  {"one of those", AnaphorClass::one_some},
        {"this fund", AnaphorClass::deictic}, {"it", AnaphorClass::event},     {"their", AnaphorClass::third_person}};
    for (std::size_t a = 0, count = pick(5); a < count; ++a) {
      AnaphorAnnotation an;
      an.id = "a" + std::to_string(a + 1);
      const std::size_t at = pick(n);
      an.utterance = "u" + std::to_string(at + 1);
      const auto& [surface, cls] = kSurfaces[pick(kSurfaces.size())];
      an.surface = surface;
      // Unambiguous lexicon forms are sometimes left for the lexicon.
      if (surface == "THAT" || surface == "it" || pick(2)) an.aclass = cls;
      if (pick(4)) an.antecedent = "u" + std::to_string(pick(at + 1) + 1);
      an.future_action = pick(2);
      d.anaphors.push_back(std::move(an));
    }
  }
  return d;
}

}  // namespace ctrlseg::testing
