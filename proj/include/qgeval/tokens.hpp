#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qgeval {

// Ordered sequence of normalized tokens. Tokens are non-empty and contain no
// whitespace. An empty sequence only occurs as raw tokenizer output; the
// scorers reject it.
struct TokenSeq {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }
  auto begin() const { return tokens.begin(); }
  auto end() const { return tokens.end(); }
  bool operator==(const TokenSeq&) const = default;
};

namespace detail {

inline bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 0x80 && ((u >= '!' && u <= '/') || (u >= ':' && u <= '@') ||
                      (u >= '[' && u <= '`') || (u >= '{' && u <= '~'));
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace detail

// Full normalization: ASCII lowercasing, whitespace splitting, and isolation
// of each ASCII punctuation character as its own token. Multi-byte UTF-8
// sequences pass through untouched, so non-ASCII words stay whole.
inline TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (char c : text) {
    if (detail::ascii_space(c)) {
      flush();
    } else if (detail::ascii_punct(c)) {
      flush();
      out.tokens.emplace_back(1, c);
    } else {
      current.push_back(detail::ascii_lower(c));
    }
  }
  flush();
  return out;
}

// Whitespace splitting plus ASCII lowercasing only, for corpora whose text is
// already tokenized (one token per space-separated field).
inline TokenSeq split_pretokenized(std::string_view text) {
  TokenSeq out;
  std::string current;
  for (char c : text) {
    if (detail::ascii_space(c)) {
      if (!current.empty()) {
        out.tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(detail::ascii_lower(c));
    }
  }
  if (!current.empty()) out.tokens.push_back(std::move(current));
  return out;
}

inline std::string detokenize(const TokenSeq& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += seq[i];
  }
  return out;
}

// Multiset of the contiguous n-token windows of a sequence. Keys are the
// window tokens joined with a single space, which is unambiguous because
// tokens never contain whitespace.
struct NGramCounts {
  int order = 1;
  std::unordered_map<std::string, long> counts;
  long total = 0;  // == max(0, len - order + 1)
};

inline NGramCounts ngrams(const TokenSeq& seq, int n) {
  if (n < 1) throw std::invalid_argument("ngrams: order must be >= 1");
  NGramCounts out;
  out.order = n;
  if (seq.size() + 1 < static_cast<std::size_t>(n) + 1) return out;
  const std::size_t windows = seq.size() - static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i < windows; ++i) {
    std::string key = seq[i];
    for (std::size_t j = 1; j < static_cast<std::size_t>(n); ++j) {
      key.push_back(' ');
      key += seq[i + j];
    }
    ++out.counts[key];
    ++out.total;
  }
  return out;
}

// Length of a longest common subsequence, standard O(|a|*|b|) dynamic
// program with a rolling row.
inline std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  const auto& shorter = a.size() <= b.size() ? a : b;
  const auto& longer = a.size() <= b.size() ? b : a;
  if (shorter.empty()) return 0;
  std::vector<std::size_t> row(shorter.size() + 1, 0);
  for (std::size_t i = 1; i <= longer.size(); ++i) {
    std::size_t diag = 0;  // row[j-1] from the previous iteration
    for (std::size_t j = 1; j <= shorter.size(); ++j) {
      std::size_t prev = row[j];
      row[j] = (longer[i - 1] == shorter[j - 1]) ? diag + 1
                                                 : std::max(row[j], row[j - 1]);
      diag = prev;
    }
  }
  return row[shorter.size()];
}

}  // namespace qgeval
