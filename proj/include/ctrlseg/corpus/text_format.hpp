#pragma once

// Line-oriented interchange format:
//
//   dialogue <id> kind=<advisory|task_oriented> modality=<phone|keyboard>
//   participant <id> role=<expert|client|unspecified>
//   turn <id> speaker=<pid> [phase=<opening|body|closing>]
//   utt <id> [type=..] [response=yes|no|auto] [redundant=yes|no|auto]
//       [controller=<pid>] [resume=yes|no] text="<escaped>"
//   ana <id> utt=<uid> surface="<escaped>" [class=..] [ante=<uid>|none]
//       [future=yes|no] [reason=A1|A2|B1|B2]
//
// One record per line; `#` outside a quoted string starts a comment. Inside
// quotes only \" and \\ are escapes. A file may hold several dialogues; each
// `dialogue` record starts a new one. docs/interchange-format.md is the
// normative description.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/error.hpp"

namespace ctrlseg {

namespace detail {

struct Field {
  std::string key;    // empty for positional words
  std::string value;  // unescaped
  bool quoted = false;
  std::size_t column = 0;
};

struct Record {
  std::string keyword;
  std::vector<Field> fields;
  std::size_t line = 0;
};

// Splits one line into a record. Returns nullopt for blank/comment lines.
inline std::optional<Record> tokenize_line(std::string_view line, std::size_t line_no) {
  Record rec;
  rec.line = line_no;
  std::size_t i = 0;
  const std::size_t n = line.size();
  bool first = true;
  auto fail = [&](std::size_t col, const std::string& msg) -> ParseError {
    return ParseError(ParseErrorKind::syntax, line_no, col + 1, msg);
  };
  while (true) {
    while (i < n && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= n || line[i] == '#') break;
    Field f;
    f.column = i + 1;
    std::size_t start = i;
    std::string word;
    bool saw_eq = false;
    while (i < n && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') {
      char c = line[i];
      if (c == '"') {
        if (!saw_eq || !word.empty()) throw fail(i, "unexpected quote");
        ++i;
        bool closed = false;
        while (i < n) {
          char q = line[i];
          if (q == '\\') {
            if (i + 1 >= n) throw fail(i, "dangling backslash in string");
            char e = line[i + 1];
            if (e != '"' && e != '\\') throw fail(i, std::string("invalid escape \\") + e);
            word.push_back(e);
            i += 2;
          } else if (q == '"') {
            closed = true;
            ++i;
            break;
          } else {
            word.push_back(q);
            ++i;
          }
        }
        if (!closed) throw fail(start, "unterminated string");
        f.quoted = true;
        if (i < n && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#')
          throw fail(i, "expected whitespace after closing quote");
        break;
      }
      if (c == '=' && !saw_eq) {
        if (word.empty()) throw fail(i, "empty attribute name");
        f.key = word;
        word.clear();
        saw_eq = true;
        ++i;
        continue;
      }
      if (c == '=') throw fail(i, "unexpected '='");
      word.push_back(c);
      ++i;
    }
    if (saw_eq && word.empty() && !f.quoted) throw fail(start, "attribute '" + f.key + "' has no value");
    f.value = std::move(word);
    if (first) {
      if (saw_eq) throw fail(start, "record must start with a keyword");
      rec.keyword = f.value;
      first = false;
    } else {
      rec.fields.push_back(std::move(f));
    }
  }
  if (first) return std::nullopt;
  return rec;
}

class RecordReader {
 public:
  explicit RecordReader(const Record& r) : rec_(r) {}

  // Positional id right after the keyword.
  std::string id() {
    if (rec_.fields.empty() || !rec_.fields[0].key.empty() || rec_.fields[0].quoted)
      throw ParseError(ParseErrorKind::syntax, rec_.line, 1, "'" + rec_.keyword + "' requires an id");
    used_.insert(0);
    return rec_.fields[0].value;
  }

  const Field* get(std::string_view key) {
    const Field* found = nullptr;
    for (std::size_t i = 0; i < rec_.fields.size(); ++i) {
      if (rec_.fields[i].key == key) {
        if (found)
          throw ParseError(ParseErrorKind::syntax, rec_.line, rec_.fields[i].column,
                           "duplicate attribute '" + std::string(key) + "'");
        found = &rec_.fields[i];
        used_.insert(i);
      }
    }
    return found;
  }

  const Field& require(std::string_view key) {
    const Field* f = get(key);
    if (!f)
      throw ParseError(ParseErrorKind::syntax, rec_.line, 1,
                       "'" + rec_.keyword + "' requires attribute '" + std::string(key) + "'");
    return *f;
  }

  template <typename E>
  std::optional<E> enum_value(std::string_view key) {
    const Field* f = get(key);
    if (!f) return std::nullopt;
    auto v = from_string<E>(f->value);
    if (!v)
      throw ParseError(ParseErrorKind::unknown_token, rec_.line, f->column,
                       "unknown value '" + f->value + "' for '" + std::string(key) + "'");
    return v;
  }

  std::string bare(const Field& f) const {
    if (f.quoted)
      throw ParseError(ParseErrorKind::syntax, rec_.line, f.column, "'" + f.key + "' must not be quoted");
    return f.value;
  }

  void finish() const {
    for (std::size_t i = 0; i < rec_.fields.size(); ++i) {
      if (used_.count(i)) continue;
      const auto& f = rec_.fields[i];
      if (f.key.empty())
        throw ParseError(ParseErrorKind::syntax, rec_.line, f.column, "unexpected word '" + f.value + "'");
      throw ParseError(ParseErrorKind::syntax, rec_.line, f.column,
                       "unknown attribute '" + f.key + "' on '" + rec_.keyword + "'");
    }
  }

  std::size_t line() const { return rec_.line; }

 private:
  const Record& rec_;
  std::set<std::size_t> used_;
};

struct PendingRef {
  std::string target;
  std::size_t line;
  std::size_t column;
  std::string what;
};

class DialogueBuilder {
 public:
  Dialogue dialogue;

  void participant(RecordReader& r) {
    Participant p;
    p.id = r.id();
    if (!participants_.insert(p.id).second)
      throw ParseError(ParseErrorKind::duplicate_id, r.line(), 1, "duplicate participant id '" + p.id + "'");
    if (auto role = r.enum_value<Role>("role")) p.role = *role;
    r.finish();
    dialogue.participants.push_back(std::move(p));
  }

  void turn(RecordReader& r) {
    Turn t;
    t.id = r.id();
    if (!turns_.insert(t.id).second)
      throw ParseError(ParseErrorKind::duplicate_id, r.line(), 1, "duplicate turn id '" + t.id + "'");
    const Field& sp = r.require("speaker");
    t.speaker = r.bare(sp);
    speaker_refs_.push_back({t.speaker, r.line(), sp.column, "turn speaker"});
    if (auto ph = r.enum_value<Phase>("phase")) t.phase = *ph;
    r.finish();
    dialogue.turns.push_back(std::move(t));
  }

  void utterance(RecordReader& r) {
    if (dialogue.turns.empty())
      throw ParseError(ParseErrorKind::syntax, r.line(), 1, "'utt' before any 'turn'");
    Utterance u;
    u.id = r.id();
    if (!utterances_.insert(u.id).second)
      throw ParseError(ParseErrorKind::duplicate_id, r.line(), 1, "duplicate utterance id '" + u.id + "'");
    u.type = r.enum_value<UtteranceType>("type");
    if (auto f = r.enum_value<Flag>("response")) u.response = *f;
    if (auto f = r.enum_value<Flag>("redundant")) u.redundant = *f;
    if (const Field* c = r.get("controller")) {
      u.controller_override = r.bare(*c);
      speaker_refs_.push_back({*u.controller_override, r.line(), c->column, "controller override"});
    }
    if (const Field* rs = r.get("resume")) {
      if (rs->value == "no")
        u.resume = false;
      else if (rs->value != "yes")
        throw ParseError(ParseErrorKind::unknown_token, r.line(), rs->column,
                         "unknown value '" + rs->value + "' for 'resume'");
    }
    u.text = r.require("text").value;
    r.finish();
    dialogue.turns.back().utterances.push_back(std::move(u));
  }

  void anaphor(RecordReader& r) {
    AnaphorAnnotation a;
    a.id = r.id();
    if (!anaphors_.insert(a.id).second)
      throw ParseError(ParseErrorKind::duplicate_id, r.line(), 1, "duplicate anaphor id '" + a.id + "'");
    const Field& u = r.require("utt");
    a.utterance = r.bare(u);
    utterance_refs_.push_back({a.utterance, r.line(), u.column, "anaphor utterance"});
    a.surface = r.require("surface").value;
    a.aclass = r.enum_value<AnaphorClass>("class");
    if (const Field* ante = r.get("ante")) {
      std::string v = r.bare(*ante);
      if (v != "none") {
        a.antecedent = v;
        utterance_refs_.push_back({v, r.line(), ante->column, "antecedent"});
      }
    }
    if (const Field* fut = r.get("future")) {
      if (fut->value == "yes")
        a.future_action = true;
      else if (fut->value != "no")
        throw ParseError(ParseErrorKind::unknown_token, r.line(), fut->column,
                         "unknown value '" + fut->value + "' for 'future'");
    }
    a.interrupt_reason = r.enum_value<InterruptReason>("reason");
    r.finish();
    dialogue.anaphors.push_back(std::move(a));
  }

  void resolve() const {
    for (const auto& ref : speaker_refs_)
      if (!participants_.count(ref.target))
        throw ParseError(ParseErrorKind::dangling_reference, ref.line, ref.column,
                         ref.what + " '" + ref.target + "' is not a declared participant");
    for (const auto& ref : utterance_refs_)
      if (!utterances_.count(ref.target))
        throw ParseError(ParseErrorKind::dangling_reference, ref.line, ref.column,
                         ref.what + " '" + ref.target + "' does not name an utterance");
  }

 private:
  std::set<std::string> participants_, turns_, utterances_, anaphors_;
  std::vector<PendingRef> speaker_refs_, utterance_refs_;
};

inline void append_escaped(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace detail

inline std::vector<Dialogue> parse_corpus(std::string_view text) {
  std::vector<Dialogue> out;
  std::optional<detail::DialogueBuilder> cur;
  std::set<std::string> dialogue_ids;
  auto close = [&] {
    if (cur) {
      cur->resolve();
      out.push_back(std::move(cur->dialogue));
      cur.reset();
    }
  };
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    auto rec = detail::tokenize_line(line, line_no);
    if (rec) {
      detail::RecordReader r(*rec);
      if (rec->keyword == "dialogue") {
        close();
        cur.emplace();
        auto& d = cur->dialogue;
        d.id = r.id();
        if (!dialogue_ids.insert(d.id).second)
          throw ParseError(ParseErrorKind::duplicate_id, line_no, 1, "duplicate dialogue id '" + d.id + "'");
        r.require("kind");
        r.require("modality");
        d.kind = *r.enum_value<DialogueKind>("kind");
        d.modality = *r.enum_value<Modality>("modality");
        r.finish();
      } else if (!cur) {
        throw ParseError(ParseErrorKind::syntax, line_no, 1, "'" + rec->keyword + "' before 'dialogue'");
      } else if (rec->keyword == "participant") {
        cur->participant(r);
      } else if (rec->keyword == "turn") {
        cur->turn(r);
      } else if (rec->keyword == "utt") {
        cur->utterance(r);
      } else if (rec->keyword == "ana") {
        cur->anaphor(r);
      } else {
        throw ParseError(ParseErrorKind::syntax, line_no, 1, "unknown record '" + rec->keyword + "'");
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  close();
  return out;
}

// Exactly one dialogue expected.
inline Dialogue parse_transcript(std::string_view text) {
  auto all = parse_corpus(text);
  if (all.size() != 1)
    throw ParseError(ParseErrorKind::syntax, 1, 1,
                     "expected exactly one dialogue, found " + std::to_string(all.size()));
  return std::move(all.front());
}

// Comment lines to emit ahead of a given utterance (keyed by dialogue-order
// index). Used to attach segmentation output without changing the data.
using CommentMap = std::map<std::size_t, std::vector<std::string>>;

inline std::string serialize(const Dialogue& d, const CommentMap* comments = nullptr) {
  std::string out;
  out += "dialogue " + d.id + " kind=" + std::string(to_string(d.kind)) +
         " modality=" + std::string(to_string(d.modality)) + "\n";
  for (const auto& p : d.participants)
    out += "participant " + p.id + " role=" + std::string(to_string(p.role)) + "\n";
  std::size_t index = 0;
  auto emit_comments = [&](std::size_t at) {
    if (!comments) return;
    auto it = comments->find(at);
    if (it == comments->end()) return;
    for (const auto& line : it->second) out += "# " + line + "\n";
  };
  for (const auto& t : d.turns) {
    if (!t.utterances.empty()) emit_comments(index);
    out += "turn " + t.id + " speaker=" + t.speaker;
    if (t.phase != Phase::body) out += " phase=" + std::string(to_string(t.phase));
    out += "\n";
    for (std::size_t k = 0; k < t.utterances.size(); ++k, ++index) {
      const auto& u = t.utterances[k];
      if (k > 0) emit_comments(index);
      out += "  utt " + u.id;
      if (u.type) out += " type=" + std::string(to_string(*u.type));
      if (u.response != Flag::automatic) out += " response=" + std::string(to_string(u.response));
      if (u.redundant != Flag::automatic) out += " redundant=" + std::string(to_string(u.redundant));
      if (u.controller_override) out += " controller=" + *u.controller_override;
      if (!u.resume) out += " resume=no";
      out += " text=";
      detail::append_escaped(out, u.text);
      out += "\n";
    }
  }
  for (const auto& a : d.anaphors) {
    out += "ana " + a.id + " utt=" + a.utterance + " surface=";
    detail::append_escaped(out, a.surface);
    if (a.aclass) out += " class=" + std::string(to_string(*a.aclass));
    if (a.antecedent) out += " ante=" + *a.antecedent;
    if (a.future_action) out += " future=yes";
    if (a.interrupt_reason) out += " reason=" + std::string(to_string(*a.interrupt_reason));
    out += "\n";
  }
  return out;
}

inline std::string serialize_corpus(const std::vector<Dialogue>& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (i) out += "\n";
    out += serialize(corpus[i]);
  }
  return out;
}

}  // namespace ctrlseg
