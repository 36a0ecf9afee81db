#pragma once

#include <stdexcept>

#include "qgeval/tokens.hpp"

namespace qgeval {

// Longest-common-subsequence F measure. beta weights recall over precision
// in the combined score; the 1.2 default leans toward recall.
struct RougeConfig {
  double beta = 1.2;
};

inline void validate(const RougeConfig& cfg) {
  if (!(cfg.beta > 0.0))
    throw std::invalid_argument("rouge-l: beta must be > 0");
}

inline double rouge_l(const TokenSeq& candidate, const TokenSeq& reference,
                      const RougeConfig& cfg = {}) {
  validate(cfg);
  if (candidate.empty())
    throw std::invalid_argument("rouge-l: empty candidate");
  if (reference.empty())
    throw std::invalid_argument("rouge-l: empty reference");
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(candidate.size());
  const double r = lcs / static_cast<double>(reference.size());
  const double b2 = cfg.beta * cfg.beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

}  // namespace qgeval
