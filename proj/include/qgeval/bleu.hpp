#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgeval/tokens.hpp"

namespace qgeval {

// Modified n-gram precision BLEU with brevity penalty. The candidate counts
// of each n-gram are clipped to the largest count found in any single
// reference, and the brevity penalty compares against the reference length
// closest to the candidate (ties resolved toward the shorter reference).
struct BleuConfig {
  enum class Smoothing { none, epsilon, add_k };

  int max_order = 4;
  Smoothing smoothing = Smoothing::none;
  // Replaces a zero numerator when smoothing == epsilon.
  double epsilon = 1e-4;
  // Added to numerator and denominator for orders >= 2 when
  // smoothing == add_k.
  double add_k = 1.0;
};

inline void validate(const BleuConfig& cfg) {
  if (cfg.max_order < 1)
    throw std::invalid_argument("bleu: max_order must be >= 1");
  if (cfg.smoothing == BleuConfig::Smoothing::epsilon && !(cfg.epsilon > 0.0))
    throw std::invalid_argument("bleu: epsilon must be > 0");
  if (cfg.smoothing == BleuConfig::Smoothing::add_k && !(cfg.add_k > 0.0))
    throw std::invalid_argument("bleu: add_k must be > 0");
}

// Sufficient statistics. Statistics of separate candidate/reference pairs
// add, which is what corpus-level pooling does.
struct BleuStats {
  std::vector<long> matched;   // clipped matches per order, index n-1
  std::vector<long> possible;  // candidate windows per order, index n-1
  long candidate_len = 0;
  long reference_len = 0;  // closest reference length, summed when pooled

  BleuStats& operator+=(const BleuStats& o) {
    if (matched.empty()) {
      *this = o;
      return *this;
    }
    if (o.matched.size() != matched.size())
      throw std::invalid_argument("bleu: pooling stats of different orders");
    for (std::size_t i = 0; i < matched.size(); ++i) {
      matched[i] += o.matched[i];
      possible[i] += o.possible[i];
    }
    candidate_len += o.candidate_len;
    reference_len += o.reference_len;
    return *this;
  }
};

namespace detail {

inline void check_bleu_inputs(const TokenSeq& candidate,
                              const std::vector<TokenSeq>& references) {
  if (candidate.empty())
    throw std::invalid_argument("bleu: empty candidate");
  if (references.empty())
    throw std::invalid_argument("bleu: no references");
  for (const auto& r : references)
    if (r.empty()) throw std::invalid_argument("bleu: empty reference");
}

}  // namespace detail

inline BleuStats bleu_stats(const TokenSeq& candidate,
                            const std::vector<TokenSeq>& references,
                            int max_order = 4) {
  detail::check_bleu_inputs(candidate, references);
  if (max_order < 1)
    throw std::invalid_argument("bleu: max_order must be >= 1");
  BleuStats st;
  st.matched.assign(max_order, 0);
  st.possible.assign(max_order, 0);
  st.candidate_len = static_cast<long>(candidate.size());

  long best_len = static_cast<long>(references[0].size());
  long cand_len = st.candidate_len;
  for (const auto& r : references) {
    long len = static_cast<long>(r.size());
    long diff = std::labs(len - cand_len);
    long best_diff = std::labs(best_len - cand_len);
    if (diff < best_diff || (diff == best_diff && len < best_len))
      best_len = len;
  }
  st.reference_len = best_len;

  for (int n = 1; n <= max_order; ++n) {
    NGramCounts cand = ngrams(candidate, n);
    st.possible[n - 1] = cand.total;
    if (cand.total == 0) continue;
    std::unordered_map<std::string, long> clip;
    for (const auto& r : references) {
      NGramCounts rc = ngrams(r, n);
      for (const auto& [key, cnt] : rc.counts) {
        auto& best = clip[key];
        best = std::max(best, cnt);
      }
    }
    long matched = 0;
    for (const auto& [key, cnt] : cand.counts) {
      auto it = clip.find(key);
      if (it != clip.end()) matched += std::min(cnt, it->second);
    }
    st.matched[n - 1] = matched;
  }
  return st;
}

// Geometric mean of the per-order precisions times the brevity penalty.
// Orders with no candidate windows anywhere are skipped, so short sentences
// are scored over the orders they actually support.
inline double bleu_from_stats(const BleuStats& st, const BleuConfig& cfg = {}) {
  validate(cfg);
  if (st.matched.size() != static_cast<std::size_t>(cfg.max_order) ||
      st.possible.size() != st.matched.size())
    throw std::invalid_argument("bleu: stats do not match max_order");
  if (st.candidate_len <= 0)
    throw std::invalid_argument("bleu: stats have no candidate tokens");

  double log_sum = 0.0;
  int used_orders = 0;
  for (int n = 1; n <= cfg.max_order; ++n) {
    long matched = st.matched[n - 1];
    long possible = st.possible[n - 1];
    if (possible == 0) continue;
    double num = static_cast<double>(matched);
    double den = static_cast<double>(possible);
    switch (cfg.smoothing) {
      case BleuConfig::Smoothing::none:
        break;
      case BleuConfig::Smoothing::epsilon:
        if (matched == 0) num = cfg.epsilon;
        break;
      case BleuConfig::Smoothing::add_k:
        if (n >= 2) {
          num += cfg.add_k;
          den += cfg.add_k;
        }
        break;
    }
    if (num <= 0.0) return 0.0;
    log_sum += std::log(num / den);
    ++used_orders;
  }
  if (used_orders == 0) return 0.0;

  double bp = 1.0;
  if (st.candidate_len < st.reference_len)
    bp = std::exp(1.0 - static_cast<double>(st.reference_len) /
                            static_cast<double>(st.candidate_len));
  double score = bp * std::exp(log_sum / used_orders);
  return std::clamp(score, 0.0, 1.0);
}

inline double sentence_bleu(const TokenSeq& candidate,
                            const std::vector<TokenSeq>& references,
                            const BleuConfig& cfg = {}) {
  validate(cfg);
  return bleu_from_stats(bleu_stats(candidate, references, cfg.max_order), cfg);
}

// Corpus-level BLEU: clipped matches and window totals are pooled across
// segments and the brevity penalty uses summed lengths. This is not the mean
// of the per-sentence scores.
inline double corpus_bleu(
    const std::vector<std::pair<TokenSeq, std::vector<TokenSeq>>>& segments,
    const BleuConfig& cfg = {}) {
  validate(cfg);
  if (segments.empty())
    throw std::invalid_argument("bleu: empty segment list");
  BleuStats pooled;
  for (const auto& [candidate, references] : segments)
    pooled += bleu_stats(candidate, references, cfg.max_order);
  return bleu_from_stats(pooled, cfg);
}

}  // namespace qgeval
