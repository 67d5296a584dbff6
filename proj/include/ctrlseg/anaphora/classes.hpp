#pragma once

// Surface-form lexicon for the four anaphor classes. Bare "it", "this" and
// "that" can pick out either an NP referent or a clausal one, so they are
// never resolved without an explicit class annotation.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/error.hpp"
#include "ctrlseg/util/strings.hpp"

namespace ctrlseg {

namespace detail {

inline constexpr std::array<std::string_view, 13> kThirdPerson{
    "they", "them", "their", "theirs", "themselves", "she", "he", "her",
    "hers", "herself", "him", "his", "himself"};

inline constexpr std::array<std::string_view, 16> kFirstSecondPerson{
    "i", "me", "my", "mine", "myself", "we", "us", "our",
    "ours", "ourselves", "you", "your", "yours", "yourself", "yourselves", "y'all"};

inline constexpr std::array<std::string_view, 4> kDemonstratives{"this", "that", "these", "those"};

inline constexpr std::array<std::string_view, 3> kAmbiguous{"it", "this", "that"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

}  // namespace detail

// True for surfaces consisting of a single first- or second-person form.
inline bool is_excluded_person(std::string_view surface) {
  auto toks = util::word_tokens(surface);
  return toks.size() == 1 && detail::contains(detail::kFirstSecondPerson, toks.front());
}

// Lexicon-only class; nullopt when the surface needs an explicit annotation.
inline std::optional<AnaphorClass> lexicon_class(std::string_view surface) {
  auto toks = util::word_tokens(surface);
  if (toks.empty()) return std::nullopt;
  if (toks.size() == 1 && detail::contains(detail::kAmbiguous, toks.front())) return std::nullopt;
  // one/some variants: "one of them", "a new one", "that one", "some", ...
  bool has_one = std::any_of(toks.begin(), toks.end(), [](const std::string& t) { return t == "one" || t == "ones"; });
  if (has_one || toks.front() == "some") return AnaphorClass::one_some;
  if (toks.size() == 1 && detail::contains(detail::kThirdPerson, toks.front())) return AnaphorClass::third_person;
  // demonstrative NP ("that account", "those files"); bare plural demonstratives
  // cannot be clausal, so they count too.
  if (detail::contains(detail::kDemonstratives, toks.front())) return AnaphorClass::deictic;
  return std::nullopt;
}

inline AnaphorClass resolve_class(const AnaphorAnnotation& a) {
  if (a.aclass) return *a.aclass;
  if (is_excluded_person(a.surface))
    throw AnalysisError("anaphor " + a.id + ": first/second person form '" + a.surface + "' is not analysed");
  if (auto c = lexicon_class(a.surface)) return *c;
  throw AnalysisError("anaphor " + a.id + ": surface '" + a.surface +
                      "' is ambiguous or unknown; an explicit class annotation is required");
}

}  // namespace ctrlseg
