#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qgeval/bleu.hpp"
#include "qgeval/meteor.hpp"
#include "qgeval/rouge.hpp"
#include "qgeval/tokens.hpp"

namespace qgeval {

// Token-for-token sequence identity. Returning a {0,1} value makes the
// generalized precision/recall reduce to the classical set definitions.
inline double exact_match(const TokenSeq& a, const TokenSeq& b) {
  return a == b ? 1.0 : 0.0;
}

struct ExactMatchConfig {};

inline void validate(const ExactMatchConfig&) {}

using ScorerConfig =
    std::variant<BleuConfig, RougeConfig, MeteorConfig, ExactMatchConfig>;

// Any sentence-level similarity usable by the meta metrics. Called as
// s(prediction, reference); nothing requires it to be symmetric.
using SentenceScorer =
    std::function<double(const TokenSeq&, const TokenSeq&)>;

inline std::string scorer_name(const ScorerConfig& cfg) {
  struct Visitor {
    std::string operator()(const BleuConfig&) const { return "bleu"; }
    std::string operator()(const RougeConfig&) const { return "rouge-l"; }
    std::string operator()(const MeteorConfig&) const { return "meteor-lite"; }
    std::string operator()(const ExactMatchConfig&) const { return "exact"; }
  };
  return std::visit(Visitor{}, cfg);
}

// Name plus the parameters that change the value, for report headers.
inline std::string scorer_description(const ScorerConfig& cfg) {
  std::ostringstream out;
  struct Visitor {
    std::ostringstream& out;
    void operator()(const BleuConfig& c) const {
      out << "bleu(max_order=" << c.max_order << ",smoothing=";
      switch (c.smoothing) {
        case BleuConfig::Smoothing::none:
          out << "none";
          break;
        case BleuConfig::Smoothing::epsilon:
          out << "epsilon=" << c.epsilon;
          break;
        case BleuConfig::Smoothing::add_k:
          out << "addk=" << c.add_k;
          break;
      }
      out << ")";
    }
    void operator()(const RougeConfig& c) const {
      out << "rouge-l(beta=" << c.beta << ")";
    }
    void operator()(const MeteorConfig& c) const {
      out << "meteor-lite(alpha=" << c.alpha << ",gamma=" << c.gamma
          << ",beta_pen=" << c.beta_pen << ",stages=";
      for (std::size_t i = 0; i < c.stages.size(); ++i) {
        if (i > 0) out << "+";
        out << (c.stages[i] == MeteorConfig::Stage::exact ? "exact" : "stem");
      }
      out << ")";
    }
    void operator()(const ExactMatchConfig&) const { out << "exact"; }
  };
  std::visit(Visitor{out}, cfg);
  return out.str();
}

inline void validate(const ScorerConfig& cfg) {
  std::visit([](const auto& c) { validate(c); }, cfg);
}

// Single-reference closure over a configuration. BLEU is evaluated against
// the one reference; the other scorers are single-reference by nature.
inline SentenceScorer sentence_scorer(const ScorerConfig& cfg) {
  validate(cfg);
  struct Visitor {
    SentenceScorer operator()(const BleuConfig& c) const {
      return [c](const TokenSeq& p, const TokenSeq& r) {
        return sentence_bleu(p, {r}, c);
      };
    }
    SentenceScorer operator()(const RougeConfig& c) const {
      return [c](const TokenSeq& p, const TokenSeq& r) {
        return rouge_l(p, r, c);
      };
    }
    SentenceScorer operator()(const MeteorConfig& c) const {
      return [c](const TokenSeq& p, const TokenSeq& r) {
        return meteor_lite(p, r, c);
      };
    }
    SentenceScorer operator()(const ExactMatchConfig&) const {
      return [](const TokenSeq& p, const TokenSeq& r) {
        return exact_match(p, r);
      };
    }
  };
  return std::visit(Visitor{}, cfg);
}

// Conventional multi-reference value of one prediction. BLEU clips against
// all references at once; the other scorers take the best single reference.
inline double multi_reference_score(const ScorerConfig& cfg,
                                    const TokenSeq& prediction,
                                    const std::vector<TokenSeq>& references) {
  validate(cfg);
  if (references.empty())
    throw std::invalid_argument("scorer: no references");
  if (const auto* bleu = std::get_if<BleuConfig>(&cfg))
    return sentence_bleu(prediction, references, *bleu);
  SentenceScorer s = sentence_scorer(cfg);
  double best = 0.0;
  for (const auto& r : references) best = std::max(best, s(prediction, r));
  return best;
}

}  // namespace qgeval
