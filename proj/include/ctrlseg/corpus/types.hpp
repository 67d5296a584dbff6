#pragma once

// Transcript data model: dialogues made of turns made of utterances, plus
// anaphor annotations that point back into the utterance sequence.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ctrlseg {

enum class DialogueKind { advisory, task_oriented };
enum class Modality { phone, keyboard };
enum class Role { expert, client, unspecified };
enum class Phase { opening, body, closing };
enum class UtteranceType { assertion, command, question, prompt };
// Gold annotation or deferral to the tagger.
enum class Flag { no, yes, automatic };
enum class AnaphorClass { third_person, one_some, deictic, event };
// Collaborative-planning reasons an interruption may be annotated with.
enum class InterruptReason { A1_truth, A2_ambiguity, B1_effectiveness, B2_plan_ambiguity };

namespace detail {

template <typename E, std::size_t N>
struct TokenTable {
  std::array<std::pair<E, std::string_view>, N> entries;

  constexpr std::string_view name(E e) const {
    for (const auto& [v, s] : entries)
      if (v == e) return s;
    return "?";
  }
  std::optional<E> lookup(std::string_view s) const {
    for (const auto& [v, n] : entries)
      if (n == s) return v;
    return std::nullopt;
  }
};

inline constexpr TokenTable<DialogueKind, 2> kKinds{
    {{{DialogueKind::advisory, "advisory"}, {DialogueKind::task_oriented, "task_oriented"}}}};
inline constexpr TokenTable<Modality, 2> kModalities{
    {{{Modality::phone, "phone"}, {Modality::keyboard, "keyboard"}}}};
inline constexpr TokenTable<Role, 3> kRoles{
    {{{Role::expert, "expert"}, {Role::client, "client"}, {Role::unspecified, "unspecified"}}}};
inline constexpr TokenTable<Phase, 3> kPhases{
    {{{Phase::opening, "opening"}, {Phase::body, "body"}, {Phase::closing, "closing"}}}};
inline constexpr TokenTable<UtteranceType, 4> kUtteranceTypes{{{{UtteranceType::assertion, "assertion"},
                                                                {UtteranceType::command, "command"},
                                                                {UtteranceType::question, "question"},
                                                                {UtteranceType::prompt, "prompt"}}}};
inline constexpr TokenTable<Flag, 3> kFlags{
    {{{Flag::yes, "yes"}, {Flag::no, "no"}, {Flag::automatic, "auto"}}}};
inline constexpr TokenTable<AnaphorClass, 4> kClasses{{{{AnaphorClass::third_person, "third_person"},
                                                        {AnaphorClass::one_some, "one_some"},
                                                        {AnaphorClass::deictic, "deictic"},
                                                        {AnaphorClass::event, "event"}}}};
inline constexpr TokenTable<InterruptReason, 4> kReasons{{{{InterruptReason::A1_truth, "A1"},
                                                           {InterruptReason::A2_ambiguity, "A2"},
                                                           {InterruptReason::B1_effectiveness, "B1"},
                                                           {InterruptReason::B2_plan_ambiguity, "B2"}}}};

}  // namespace detail

inline std::string_view to_string(DialogueKind v) { return detail::kKinds.name(v); }
inline std::string_view to_string(Modality v) { return detail::kModalities.name(v); }
inline std::string_view to_string(Role v) { return detail::kRoles.name(v); }
inline std::string_view to_string(Phase v) { return detail::kPhases.name(v); }
inline std::string_view to_string(UtteranceType v) { return detail::kUtteranceTypes.name(v); }
inline std::string_view to_string(Flag v) { return detail::kFlags.name(v); }
inline std::string_view to_string(AnaphorClass v) { return detail::kClasses.name(v); }
inline std::string_view to_string(InterruptReason v) { return detail::kReasons.name(v); }

template <typename E>
std::optional<E> from_string(std::string_view s);
template <>
inline std::optional<DialogueKind> from_string(std::string_view s) { return detail::kKinds.lookup(s); }
template <>
inline std::optional<Modality> from_string(std::string_view s) { return detail::kModalities.lookup(s); }
template <>
inline std::optional<Role> from_string(std::string_view s) { return detail::kRoles.lookup(s); }
template <>
inline std::optional<Phase> from_string(std::string_view s) { return detail::kPhases.lookup(s); }
template <>
inline std::optional<UtteranceType> from_string(std::string_view s) {
  return detail::kUtteranceTypes.lookup(s);
}
template <>
inline std::optional<Flag> from_string(std::string_view s) { return detail::kFlags.lookup(s); }
template <>
inline std::optional<AnaphorClass> from_string(std::string_view s) { return detail::kClasses.lookup(s); }
template <>
inline std::optional<InterruptReason> from_string(std::string_view s) {
  return detail::kReasons.lookup(s);
}

inline constexpr std::array<UtteranceType, 4> kAllUtteranceTypes{
    UtteranceType::assertion, UtteranceType::command, UtteranceType::question, UtteranceType::prompt};
inline constexpr std::array<AnaphorClass, 4> kAllAnaphorClasses{
    AnaphorClass::third_person, AnaphorClass::one_some, AnaphorClass::deictic, AnaphorClass::event};

struct Participant {
  std::string id;
  Role role = Role::unspecified;

  bool operator==(const Participant&) const = default;
};

struct Utterance {
  std::string id;
  std::string text;
  std::optional<UtteranceType> type;
  Flag response = Flag::automatic;
  Flag redundant = Flag::automatic;
  std::optional<std::string> controller_override;
  // false forces a sibling segment instead of resuming the interrupted parent.
  bool resume = true;

  bool operator==(const Utterance&) const = default;
};

struct Turn {
  std::string id;
  std::string speaker;
  Phase phase = Phase::body;
  std::vector<Utterance> utterances;

  bool operator==(const Turn&) const = default;
};

struct AnaphorAnnotation {
  std::string id;
  std::string utterance;
  std::string surface;
  std::optional<AnaphorClass> aclass;
  std::optional<std::string> antecedent;
  bool future_action = false;
  std::optional<InterruptReason> interrupt_reason;

  bool operator==(const AnaphorAnnotation&) const = default;
};

struct Dialogue {
  std::string id;
  DialogueKind kind = DialogueKind::advisory;
  Modality modality = Modality::phone;
  std::vector<Participant> participants;
  std::vector<Turn> turns;
  std::vector<AnaphorAnnotation> anaphors;

  bool operator==(const Dialogue&) const = default;

  const Participant* find_participant(std::string_view pid) const {
    for (const auto& p : participants)
      if (p.id == pid) return &p;
    return nullptr;
  }

  const Participant* expert() const {
    for (const auto& p : participants)
      if (p.role == Role::expert) return &p;
    return nullptr;
  }

  std::size_t utterance_count() const {
    std::size_t n = 0;
    for (const auto& t : turns) n += t.utterances.size();
    return n;
  }
};

// Flat, dialogue-order view of the utterances. Holds pointers into the
// dialogue, which must outlive it.
class UtteranceIndex {
 public:
  struct Entry {
    const Utterance* utterance;
    const Turn* turn;
    std::size_t turn_index;
  };

  explicit UtteranceIndex(const Dialogue& d) {
    for (std::size_t t = 0; t < d.turns.size(); ++t) {
      for (const auto& u : d.turns[t].utterances) {
        by_id_.emplace(u.id, entries_.size());
        entries_.push_back({&u, &d.turns[t], t});
      }
    }
  }

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const Utterance& utterance(std::size_t i) const { return *entries_[i].utterance; }
  const std::string& speaker(std::size_t i) const { return entries_[i].turn->speaker; }
  const std::string& id(std::size_t i) const { return entries_[i].utterance->id; }

  std::optional<std::size_t> position(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

}  // namespace ctrlseg
