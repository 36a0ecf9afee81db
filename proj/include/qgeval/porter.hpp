#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Porter's 1980 suffix-stripping algorithm, as published: within each step
// the longest matching suffix is selected first and only then is its
// condition tested, so a failed condition ends the step without trying
// shorter suffixes. None of the later revisions to the rule tables are
// included here.

namespace qgeval {
namespace porter_detail {

inline bool is_cons(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_cons(w, i - 1);
    default:
      return true;
  }
}

// Number of vowel-to-consonant transitions, the m in [C](VC){m}[V].
inline int measure(std::string_view w) {
  int m = 0;
  std::size_t i = 0;
  const std::size_t n = w.size();
  while (i < n && is_cons(w, i)) ++i;
  while (i < n) {
    while (i < n && !is_cons(w, i)) ++i;
    if (i >= n) break;
    ++m;
    while (i < n && is_cons(w, i)) ++i;
  }
  return m;
}

inline bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_cons(w, i)) return true;
  return false;
}

inline bool ends_double_cons(std::string_view w) {
  const std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_cons(w, n - 1);
}

// consonant-vowel-consonant ending where the final consonant is not w, x or
// y; used by the "add back an e" rules.
inline bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  char last = w[n - 1];
  return is_cons(w, n - 3) && !is_cons(w, n - 2) && is_cons(w, n - 1) &&
         last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(std::string_view w, std::string_view s) {
  return w.size() >= s.size() && w.substr(w.size() - s.size()) == s;
}

struct Sub {
  std::string_view suffix;
  std::string_view repl;
};

// Index of the rule with the longest suffix matching the end of w, or -1.
template <std::size_t N>
inline int longest_match(std::string_view w, const Sub (&rules)[N]) {
  int best = -1;
  std::size_t best_len = 0;
  for (std::size_t r = 0; r < N; ++r) {
    const auto& s = rules[r].suffix;
    if (s.size() > best_len && ends_with(w, s)) {
      best = static_cast<int>(r);
      best_len = s.size();
    }
  }
  return best;
}

inline void replace_suffix(std::string& w, std::string_view suffix,
                           std::string_view repl) {
  w.resize(w.size() - suffix.size());
  w += repl;
}

inline void step1a(std::string& w) {
  static constexpr Sub rules[] = {
      {"sses", "ss"}, {"ies", "i"}, {"ss", "ss"}, {"s", ""}};
  int r = longest_match(w, rules);
  if (r >= 0) replace_suffix(w, rules[r].suffix, rules[r].repl);
}

inline void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    std::string_view stem(w.data(), w.size() - 3);
    if (measure(stem) > 0) replace_suffix(w, "eed", "ee");
    return;
  }
  bool stripped = false;
  if (ends_with(w, "ed")) {
    std::string_view stem(w.data(), w.size() - 2);
    if (!has_vowel(stem)) return;
    replace_suffix(w, "ed", "");
    stripped = true;
  } else if (ends_with(w, "ing")) {
    std::string_view stem(w.data(), w.size() - 3);
    if (!has_vowel(stem)) return;
    replace_suffix(w, "ing", "");
    stripped = true;
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w += 'e';
  } else if (ends_double_cons(w)) {
    char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w += 'e';
  }
}

inline void step1c(std::string& w) {
  if (ends_with(w, "y") && has_vowel(std::string_view(w.data(), w.size() - 1)))
    w.back() = 'i';
}

inline void step2(std::string& w) {
  static constexpr Sub rules[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"}};
  int r = longest_match(w, rules);
  if (r < 0) return;
  std::string_view stem(w.data(), w.size() - rules[r].suffix.size());
  if (measure(stem) > 0) replace_suffix(w, rules[r].suffix, rules[r].repl);
}

inline void step3(std::string& w) {
  static constexpr Sub rules[] = {{"icate", "ic"}, {"ative", ""},
                                  {"alize", "al"}, {"iciti", "ic"},
                                  {"ical", "ic"},  {"ful", ""},
                                  {"ness", ""}};
  int r = longest_match(w, rules);
  if (r < 0) return;
  std::string_view stem(w.data(), w.size() - rules[r].suffix.size());
  if (measure(stem) > 0) replace_suffix(w, rules[r].suffix, rules[r].repl);
}

inline void step4(std::string& w) {
  static constexpr Sub rules[] = {
      {"al", ""},  {"ance", ""}, {"ence", ""},  {"er", ""},   {"ic", ""},
      {"able", ""}, {"ible", ""}, {"ant", ""},   {"ement", ""}, {"ment", ""},
      {"ent", ""},  {"ion", ""},  {"ou", ""},    {"ism", ""},  {"ate", ""},
      {"iti", ""},  {"ous", ""},  {"ive", ""},   {"ize", ""}};
  int r = longest_match(w, rules);
  if (r < 0) return;
  std::string_view stem(w.data(), w.size() - rules[r].suffix.size());
  if (rules[r].suffix == "ion" && !(ends_with(stem, "s") || ends_with(stem, "t")))
    return;
  if (measure(stem) > 1) replace_suffix(w, rules[r].suffix, rules[r].repl);
}

inline void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::string_view stem(w.data(), w.size() - 1);
  int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

inline void step5b(std::string& w) {
  if (measure(w) > 1 && ends_double_cons(w) && w.back() == 'l') w.pop_back();
}

}  // namespace porter_detail

// Stems a single lowercase token. Tokens containing anything outside a-z
// (digits, punctuation, multi-byte characters) are returned unchanged.
inline std::string porter_stem(std::string word) {
  for (char c : word)
    if (c < 'a' || c > 'z') return word;
  if (word.empty()) return word;
  using namespace porter_detail;
  step1a(word);
  step1b(word);
  step1c(word);
  step2(word);
  step3(word);
  step4(word);
  step5a(word);
  step5b(word);
  return word;
}

}  // namespace qgeval
