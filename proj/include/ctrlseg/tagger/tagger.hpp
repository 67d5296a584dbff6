#pragma once

// Rule-based filling of unset utterance types and auto response/redundancy
// flags. Gold annotations are never overwritten.

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/error.hpp"
#include "ctrlseg/util/strings.hpp"
#include "json.hpp"

namespace ctrlseg {

struct TaggerConfig {
  // Whole-utterance items without propositional content. Multiword entries
  // are matched on normalized token sequences.
  std::vector<std::string> prompt_lexicon;
  // Polar answers: assertions right after another speaker's question.
  std::vector<std::string> polar_answers;
  std::vector<std::string> indirect_question_cues;
  std::vector<std::string> indirect_command_cues;
  // Sentence-initial words that mark interrogative form without a '?'.
  std::vector<std::string> interrogative_openers;
  // Sentence-initial verbs that mark imperative form.
  std::vector<std::string> imperative_verbs;
  double redundancy_similarity_threshold = 0.8;

  bool operator==(const TaggerConfig&) const = default;
};

inline TaggerConfig default_tagger_config() {
  TaggerConfig c;
  c.prompt_lexicon = {"yeah", "yeh", "yes", "yep", "yup", "no", "okay", "ok", "uh-huh", "uh huh", "um hm",
                      "mm hm", "mhm", "mm", "hm", "um", "uh", "er", "right", "all right", "alright",
                      "that's right", "go ahead", "go on", "i see", "sure", "fine", "good", "great", "oh",
                      "ah", "aha", "really", "oh really", "well", "so", "huh"};
  c.polar_answers = {"yes", "no", "yeah", "yep", "yup", "nope", "yeh"};
  c.indirect_question_cues = {"i was wondering whether", "i was wondering if", "i wonder whether",
                              "i wonder if", "do you know", "could you tell me", "can you tell me",
                              "i'd like to know", "i want to know", "is there any way"};
  c.indirect_command_cues = {"my suggestion would be", "i suggest", "i'd suggest", "i would suggest",
                             "i recommend", "i'd recommend", "you should", "you need to", "you have to",
                             "you must", "you'd better", "i want you to", "i'd like you to", "make sure"};
  c.interrogative_openers = {"what", "when", "where", "who", "whom", "whose", "why", "which", "how",
                             "do", "does", "did", "is", "are", "was", "were", "can", "could", "will",
                             "would", "shall", "should", "have", "has", "had", "may", "might", "am",
                             "isn't", "aren't", "doesn't", "don't", "didn't", "won't", "can't"};
  c.imperative_verbs = {"put", "take", "turn", "push", "pull", "press", "insert", "place", "attach",
                        "screw", "unscrew", "fit", "type", "enter", "check", "look", "try", "move",
                        "open", "close", "hold", "connect", "remove", "slide", "twist", "give", "send",
                        "call", "sell", "buy", "pay", "write", "tell", "leave", "keep", "get", "do",
                        "don't", "make", "let's", "let", "use", "set", "run", "stop", "wait", "start"};
  return c;
}

inline void check(const TaggerConfig& c) {
  if (c.prompt_lexicon.empty() || c.indirect_question_cues.empty() || c.indirect_command_cues.empty())
    throw Error("tagger config: lexica must be non-empty");
  if (!(c.redundancy_similarity_threshold >= 0.0 && c.redundancy_similarity_threshold <= 1.0))
    throw Error("tagger config: redundancy_similarity_threshold must lie in [0,1]");
}

inline nlohmann::ordered_json to_json(const TaggerConfig& c) {
  nlohmann::ordered_json j;
  j["prompt_lexicon"] = c.prompt_lexicon;
  j["polar_answers"] = c.polar_answers;
  j["indirect_question_cues"] = c.indirect_question_cues;
  j["indirect_command_cues"] = c.indirect_command_cues;
  j["interrogative_openers"] = c.interrogative_openers;
  j["imperative_verbs"] = c.imperative_verbs;
  j["redundancy_similarity_threshold"] = c.redundancy_similarity_threshold;
  return j;
}

// Missing keys keep the compiled-in defaults.
inline TaggerConfig tagger_config_from_json(std::string_view text) {
  TaggerConfig c = default_tagger_config();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("tagger config: ") + e.what());
  }
  if (!j.is_object()) throw Error("tagger config: expected an object");
  auto list = [&](const char* key, std::vector<std::string>& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) throw Error(std::string("tagger config: '") + key + "' must be an array");
    dst.clear();
    for (const auto& e : j[key]) {
      if (!e.is_string()) throw Error(std::string("tagger config: '") + key + "' entries must be strings");
      dst.push_back(e.get<std::string>());
    }
  };
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> known{"prompt_lexicon", "polar_answers", "indirect_question_cues",
                                             "indirect_command_cues", "interrogative_openers", "imperative_verbs",
                                             "redundancy_similarity_threshold"};
    if (!known.count(key)) throw Error("tagger config: unknown key '" + key + "'");
  }
  list("prompt_lexicon", c.prompt_lexicon);
  list("polar_answers", c.polar_answers);
  list("indirect_question_cues", c.indirect_question_cues);
  list("indirect_command_cues", c.indirect_command_cues);
  list("interrogative_openers", c.interrogative_openers);
  list("imperative_verbs", c.imperative_verbs);
  if (j.contains("redundancy_similarity_threshold")) {
    if (!j["redundancy_similarity_threshold"].is_number())
      throw Error("tagger config: redundancy_similarity_threshold must be a number");
    c.redundancy_similarity_threshold = j["redundancy_similarity_threshold"].get<double>();
  }
  check(c);
  return c;
}

// What the tagger knows about an earlier utterance once it has been resolved.
struct PriorUtterance {
  std::string_view speaker;
  UtteranceType type;
  std::string_view text;
};

namespace detail {

using Tokens = std::vector<std::string>;

inline Tokens tokens_of(std::string_view s) { return util::word_tokens(s); }

inline bool starts_with(const Tokens& toks, const Tokens& prefix, std::size_t at = 0) {
  if (prefix.empty() || at + prefix.size() > toks.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), toks.begin() + static_cast<std::ptrdiff_t>(at));
}

// True when the token sequence contains the phrase anywhere.
inline bool contains_phrase(const Tokens& toks, const Tokens& phrase) {
  for (std::size_t i = 0; i + phrase.size() <= toks.size(); ++i)
    if (starts_with(toks, phrase, i)) return true;
  return false;
}

// The whole utterance is a concatenation of prompt lexicon items
// ("okay, go on", "OK um"). Longest entry wins at each position.
inline bool is_prompt_only(const Tokens& toks, const std::vector<Tokens>& lexicon) {
  if (toks.empty()) return false;
  std::vector<bool> reach(toks.size() + 1, false);
  reach[0] = true;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!reach[i]) continue;
    for (const auto& entry : lexicon)
      if (starts_with(toks, entry, i)) reach[i + entry.size()] = true;
  }
  return reach[toks.size()];
}

inline std::vector<Tokens> tokenize_all(const std::vector<std::string>& entries) {
  std::vector<Tokens> out;
  for (const auto& e : entries) {
    auto t = tokens_of(e);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

inline bool in_list(const std::vector<std::string>& list, std::string_view tok) {
  return std::find(list.begin(), list.end(), tok) != list.end();
}

inline bool ends_with_question_mark(std::string_view text) {
  auto t = util::trim(text);
  while (!t.empty() && (t.back() == '.' || t.back() == '"' || t.back() == '\'' || t.back() == ')')) t.remove_suffix(1);
  return !t.empty() && t.back() == '?';
}

}  // namespace detail

// Decision order: polar answer to the other speaker's question, prompt,
// question, command, assertion.
inline UtteranceType classify_utterance(const Utterance& u, std::string_view speaker,
                                        std::span<const PriorUtterance> history, const TaggerConfig& cfg) {
  using namespace detail;
  const Tokens toks = tokens_of(u.text);
  if (toks.empty()) throw AnalysisError("utt " + u.id + ": cannot classify an empty utterance");

  if (!history.empty()) {
    const auto& prev = history.back();
    if (prev.speaker != speaker && prev.type == UtteranceType::question && in_list(cfg.polar_answers, toks.front()))
      return UtteranceType::assertion;
  }
  if (is_prompt_only(toks, tokenize_all(cfg.prompt_lexicon))) return UtteranceType::prompt;

  if (ends_with_question_mark(u.text)) return UtteranceType::question;
  for (const auto& cue : tokenize_all(cfg.indirect_question_cues))
    if (contains_phrase(toks, cue)) return UtteranceType::question;
  if (in_list(cfg.interrogative_openers, toks.front()) && toks.size() > 1) {
    // "do you ...", "what is ..." but not "do it now" (imperative "do").
    static const std::vector<std::string> subjects{"i", "you", "we", "they", "he", "she", "it", "there", "that",
                                                   "this", "is", "are", "do", "does", "did", "the", "your", "my"};
    // "do it/that/this ..." is the imperative; "does it", "is that" ask.
    const bool do_object = toks.front() == "do" && (toks[1] == "it" || toks[1] == "that" || toks[1] == "this");
    if (in_list(subjects, toks[1]) && !do_object) return UtteranceType::question;
  }

  for (const auto& cue : tokenize_all(cfg.indirect_command_cues))
    if (contains_phrase(toks, cue)) return UtteranceType::command;
  std::size_t verb_at = (toks.front() == "please" || toks.front() == "now" || toks.front() == "and" ||
                         toks.front() == "then" || toks.front() == "so") && toks.size() > 1
                            ? 1
                            : 0;
  if (in_list(cfg.imperative_verbs, toks[verb_at])) return UtteranceType::command;

  return UtteranceType::assertion;
}

// Response status: the immediately preceding non-prompt utterance is by a
// different speaker and is a question (for assertions), or a question or
// command (for questions). Commands and prompts are never responses. The
// speaker's own later content ends the licence: in "B: question / A: answer
// / B: prompt / A: more" only the answer is a response.
inline bool detect_response(UtteranceType type, std::string_view speaker, std::span<const PriorUtterance> history) {
  if (type != UtteranceType::assertion && type != UtteranceType::question) return false;
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    if (it->type == UtteranceType::prompt) continue;
    if (it->speaker == speaker) return false;
    if (it->type == UtteranceType::question) return true;
    return type == UtteranceType::question && it->type == UtteranceType::command;
  }
  return false;
}

// Near-verbatim repetition of the same speaker's earlier content, measured
// as Jaccard overlap of normalized token sets. Summaries that only realize
// an inferable proposition are not detectable and need gold redundant=yes.
inline bool detect_redundancy(const Utterance& u, UtteranceType type, std::string_view speaker,
                              std::span<const PriorUtterance> history, const TaggerConfig& cfg) {
  if (type == UtteranceType::prompt) return false;
  auto toks = detail::tokens_of(u.text);
  std::set<std::string> mine(toks.begin(), toks.end());
  if (mine.empty()) return false;
  for (const auto& p : history) {
    if (p.speaker != speaker || p.type == UtteranceType::prompt) continue;
    auto other_toks = detail::tokens_of(p.text);
    std::set<std::string> other(other_toks.begin(), other_toks.end());
    if (other.empty()) continue;
    std::size_t common = 0;
    for (const auto& t : mine) common += other.count(t);
    double jaccard = static_cast<double>(common) / static_cast<double>(mine.size() + other.size() - common);
    if (jaccard >= cfg.redundancy_similarity_threshold) return true;
  }
  return false;
}

struct TagOptions {
  // Refuse unset utterance types instead of classifying them.
  bool strict = false;
};

// Returns a copy with every unset type and every auto flag resolved.
inline Dialogue tag(const Dialogue& d, const TaggerConfig& cfg = default_tagger_config(), const TagOptions& opts = {}) {
  check(cfg);
  Dialogue out = d;
  std::vector<PriorUtterance> history;
  history.reserve(out.utterance_count());
  for (auto& t : out.turns) {
    for (auto& u : t.utterances) {
      if (!u.type) {
        if (opts.strict) throw AnalysisError("utt " + u.id + ": utterance type unset (strict mode)");
        u.type = classify_utterance(u, t.speaker, history, cfg);
      }
      if (u.response == Flag::automatic)
        u.response = detect_response(*u.type, t.speaker, history) ? Flag::yes : Flag::no;
      if (u.redundant == Flag::automatic)
        u.redundant = detect_redundancy(u, *u.type, t.speaker, history, cfg) ? Flag::yes : Flag::no;
      history.push_back({t.speaker, *u.type, u.text});
    }
  }
  return out;
}

inline std::vector<Dialogue> tag_corpus(const std::vector<Dialogue>& corpus, const TaggerConfig& cfg = default_tagger_config(),
                                        const TagOptions& opts = {}) {
  std::vector<Dialogue> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus) out.push_back(tag(d, cfg, opts));
  return out;
}

}  // namespace ctrlseg
