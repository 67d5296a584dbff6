#pragma once

// Structured (JSON) variant of the interchange format. Field names match the
// line format; optional fields are omitted when unset, so documents are
// schema-checked by docs/dialogue.schema.json. Key order is fixed, which
// makes dumps byte-stable.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/error.hpp"
#include "json.hpp"

namespace ctrlseg {

using Json = nlohmann::ordered_json;

inline Json to_json(const Dialogue& d) {
  Json j;
  j["id"] = d.id;
  j["kind"] = to_string(d.kind);
  j["modality"] = to_string(d.modality);
  j["participants"] = Json::array();
  for (const auto& p : d.participants) j["participants"].push_back({{"id", p.id}, {"role", to_string(p.role)}});
  j["turns"] = Json::array();
  for (const auto& t : d.turns) {
    Json jt;
    jt["id"] = t.id;
    jt["speaker"] = t.speaker;
    jt["phase"] = to_string(t.phase);
    jt["utterances"] = Json::array();
    for (const auto& u : t.utterances) {
      Json ju;
      ju["id"] = u.id;
      if (u.type) ju["type"] = to_string(*u.type);
      ju["response"] = to_string(u.response);
      ju["redundant"] = to_string(u.redundant);
      if (u.controller_override) ju["controller"] = *u.controller_override;
      if (!u.resume) ju["resume"] = false;
      ju["text"] = u.text;
      jt["utterances"].push_back(std::move(ju));
    }
    j["turns"].push_back(std::move(jt));
  }
  j["anaphors"] = Json::array();
  for (const auto& a : d.anaphors) {
    Json ja;
    ja["id"] = a.id;
    ja["utt"] = a.utterance;
    ja["surface"] = a.surface;
    if (a.aclass) ja["class"] = to_string(*a.aclass);
    ja["ante"] = a.antecedent ? Json(*a.antecedent) : Json(nullptr);
    ja["future"] = a.future_action;
    if (a.interrupt_reason) ja["reason"] = to_string(*a.interrupt_reason);
    j["anaphors"].push_back(std::move(ja));
  }
  return j;
}

namespace detail {

class JsonReader {
 public:
  Dialogue read(const Json& j, const std::string& path) {
    object(j, path);
    Dialogue d;
    d.id = str(j, "id", path);
    d.kind = token<DialogueKind>(j, "kind", path);
    d.modality = token<Modality>(j, "modality", path);
    for (const auto& [i, jp] : items(j, "participants", path)) {
      std::string at = path + "/participants/" + std::to_string(i);
      object(jp, at);
      Participant p;
      p.id = str(jp, "id", at);
      if (jp.contains("role")) p.role = token<Role>(jp, "role", at);
      if (!participants_.insert(p.id).second) fail(ParseErrorKind::duplicate_id, at, "duplicate participant id '" + p.id + "'");
      d.participants.push_back(std::move(p));
    }
    for (const auto& [i, jt] : items(j, "turns", path)) {
      std::string at = path + "/turns/" + std::to_string(i);
      object(jt, at);
      Turn t;
      t.id = str(jt, "id", at);
      if (!turns_.insert(t.id).second) fail(ParseErrorKind::duplicate_id, at, "duplicate turn id '" + t.id + "'");
      t.speaker = str(jt, "speaker", at);
      speaker_refs_.push_back({t.speaker, at + "/speaker"});
      if (jt.contains("phase")) t.phase = token<Phase>(jt, "phase", at);
      for (const auto& [k, ju] : items(jt, "utterances", at)) {
        std::string uat = at + "/utterances/" + std::to_string(k);
        object(ju, uat);
        Utterance u;
        u.id = str(ju, "id", uat);
        if (!utterances_.insert(u.id).second)
          fail(ParseErrorKind::duplicate_id, uat, "duplicate utterance id '" + u.id + "'");
        if (ju.contains("type")) u.type = token<UtteranceType>(ju, "type", uat);
        if (ju.contains("response")) u.response = token<Flag>(ju, "response", uat);
        if (ju.contains("redundant")) u.redundant = token<Flag>(ju, "redundant", uat);
        if (ju.contains("controller")) {
          u.controller_override = str(ju, "controller", uat);
          speaker_refs_.push_back({*u.controller_override, uat + "/controller"});
        }
        if (ju.contains("resume")) u.resume = boolean(ju, "resume", uat);
        u.text = str(ju, "text", uat);
        t.utterances.push_back(std::move(u));
      }
      d.turns.push_back(std::move(t));
    }
    if (j.contains("anaphors")) {
      for (const auto& [i, ja] : items(j, "anaphors", path)) {
        std::string at = path + "/anaphors/" + std::to_string(i);
        object(ja, at);
        AnaphorAnnotation a;
        a.id = str(ja, "id", at);
        if (!anaphors_.insert(a.id).second) fail(ParseErrorKind::duplicate_id, at, "duplicate anaphor id '" + a.id + "'");
        a.utterance = str(ja, "utt", at);
        utterance_refs_.push_back({a.utterance, at + "/utt"});
        a.surface = str(ja, "surface", at);
        if (ja.contains("class")) a.aclass = token<AnaphorClass>(ja, "class", at);
        if (ja.contains("ante") && !ja["ante"].is_null()) {
          a.antecedent = str(ja, "ante", at);
          utterance_refs_.push_back({*a.antecedent, at + "/ante"});
        }
        if (ja.contains("future")) a.future_action = boolean(ja, "future", at);
        if (ja.contains("reason")) a.interrupt_reason = token<InterruptReason>(ja, "reason", at);
        d.anaphors.push_back(std::move(a));
      }
    }
    for (const auto& [target, at] : speaker_refs_)
      if (!participants_.count(target))
        fail(ParseErrorKind::dangling_reference, at, "'" + target + "' is not a declared participant");
    for (const auto& [target, at] : utterance_refs_)
      if (!utterances_.count(target))
        fail(ParseErrorKind::dangling_reference, at, "'" + target + "' does not name an utterance");
    return d;
  }

 private:
  struct Ref {
    std::string target;
    std::string at;
  };

  [[noreturn]] static void fail(ParseErrorKind kind, const std::string& at, const std::string& msg) {
    throw ParseError(kind, 0, 0, at + ": " + msg);
  }

  static void object(const Json& j, const std::string& at) {
    if (!j.is_object()) fail(ParseErrorKind::syntax, at, "expected an object");
  }

  static std::string str(const Json& j, const char* key, const std::string& at) {
    if (!j.contains(key)) fail(ParseErrorKind::syntax, at, std::string("missing field '") + key + "'");
    if (!j[key].is_string()) fail(ParseErrorKind::syntax, at + "/" + key, "expected a string");
    return j[key].get<std::string>();
  }

  static bool boolean(const Json& j, const char* key, const std::string& at) {
    if (!j[key].is_boolean()) fail(ParseErrorKind::syntax, at + "/" + key, "expected a boolean");
    return j[key].get<bool>();
  }

  template <typename E>
  static E token(const Json& j, const char* key, const std::string& at) {
    std::string s = str(j, key, at);
    auto v = from_string<E>(s);
    if (!v) fail(ParseErrorKind::unknown_token, at + "/" + key, "unknown value '" + s + "'");
    return *v;
  }

  static std::vector<std::pair<std::size_t, const Json&>> items(const Json& j, const char* key,
                                                                const std::string& at) {
    if (!j.contains(key)) fail(ParseErrorKind::syntax, at, std::string("missing field '") + key + "'");
    if (!j[key].is_array()) fail(ParseErrorKind::syntax, at + "/" + key, "expected an array");
    std::vector<std::pair<std::size_t, const Json&>> out;
    std::size_t i = 0;
    for (const auto& e : j[key]) out.emplace_back(i++, e);
    return out;
  }

  std::set<std::string> participants_, turns_, utterances_, anaphors_;
  std::vector<Ref> speaker_refs_, utterance_refs_;
};

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline Dialogue dialogue_from_json(const Json& j, const std::string& path = "") {
  return detail::JsonReader{}.read(j, path);
}

// Accepts a dialogue object, an array of them, or analysis documents of the
// form {"dialogue": {...}, ...} (what `segment --format structured` emits);
// embedded analyses are ignored and recomputed downstream.
inline std::vector<Dialogue> parse_json_corpus(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(ParseErrorKind::syntax, line, col, e.what());
  }
  std::vector<Dialogue> out;
  std::set<std::string> ids;
  auto one = [&](const Json& j, const std::string& path) {
    if (j.is_object() && j.contains("dialogue") && j["dialogue"].is_object())
      out.push_back(dialogue_from_json(j["dialogue"], path + "/dialogue"));
    else
      out.push_back(dialogue_from_json(j, path));
    if (!ids.insert(out.back().id).second)
      throw ParseError(ParseErrorKind::duplicate_id, 0, 0, path + ": duplicate dialogue id '" + out.back().id + "'");
  };
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) one(doc[i], "/" + std::to_string(i));
  } else {
    one(doc, "");
  }
  return out;
}

inline std::string serialize_json(const std::vector<Dialogue>& corpus) {
  if (corpus.size() == 1) return to_json(corpus.front()).dump(2) + "\n";
  Json arr = Json::array();
  for (const auto& d : corpus) arr.push_back(to_json(d));
  return arr.dump(2) + "\n";
}

}  // namespace ctrlseg
