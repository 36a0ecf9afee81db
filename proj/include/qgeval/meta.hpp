#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qgeval/scorers.hpp"
#include "qgeval/tokens.hpp"

namespace qgeval {

// One evaluation context: the passage (or other conditioning input), the
// reference questions written for it, and the predicted questions.
struct EvalInstance {
  std::string context_id;
  std::string context;
  std::vector<TokenSeq> references;
  std::vector<TokenSeq> predictions;
};

// Diversity-aware aggregate of a prediction set against a reference set.
// u generalizes precision: every prediction is credited with its best
// reference. v generalizes recall: every reference is credited with its best
// prediction. f is their harmonic mean, 0 when both vanish.
struct MetaScore {
  double u = 0.0;
  double v = 0.0;
  double f = 0.0;
};

// Dense |P| x |R| matrix of s(prediction, reference) values, so u and v can
// be read off as row and column maxima without rescoring.
struct ScoreMatrix {
  std::size_t rows = 0;  // predictions
  std::size_t cols = 0;  // references
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }
};

namespace detail {

inline void check_sets(const std::vector<TokenSeq>& predictions,
                       const std::vector<TokenSeq>& references) {
  if (predictions.empty())
    throw std::invalid_argument("meta: empty prediction set");
  if (references.empty())
    throw std::invalid_argument("meta: empty reference set");
}

}  // namespace detail

template <typename Scorer>
  requires std::invocable<Scorer&, const TokenSeq&, const TokenSeq&>
ScoreMatrix score_matrix(const std::vector<TokenSeq>& predictions,
                         const std::vector<TokenSeq>& references,
                         Scorer&& s) {
  detail::check_sets(predictions, references);
  ScoreMatrix m;
  m.rows = predictions.size();
  m.cols = references.size();
  m.values.reserve(m.rows * m.cols);
  for (const auto& p : predictions)
    for (const auto& r : references) m.values.push_back(s(p, r));
  return m;
}

inline double u_from_matrix(const ScoreMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    double best = m.at(i, 0);
    for (std::size_t j = 1; j < m.cols; ++j) best = std::max(best, m.at(i, j));
    sum += best;
  }
  return sum / static_cast<double>(m.rows);
}

inline double v_from_matrix(const ScoreMatrix& m) {
  double sum = 0.0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    double best = m.at(0, j);
    for (std::size_t i = 1; i < m.rows; ++i) best = std::max(best, m.at(i, j));
    sum += best;
  }
  return sum / static_cast<double>(m.cols);
}

inline double f_combine(double u, double v) {
  return u + v > 0.0 ? 2.0 * u * v / (u + v) : 0.0;
}

inline MetaScore meta_from_matrix(const ScoreMatrix& m) {
  MetaScore out;
  out.u = u_from_matrix(m);
  out.v = v_from_matrix(m);
  out.f = f_combine(out.u, out.v);
  return out;
}

// Mean over predictions of the best score against any reference.
template <typename Scorer>
  requires std::invocable<Scorer&, const TokenSeq&, const TokenSeq&>
double u_score(const std::vector<TokenSeq>& predictions,
               const std::vector<TokenSeq>& references, Scorer&& s) {
  return u_from_matrix(
      score_matrix(predictions, references, std::forward<Scorer>(s)));
}

// Mean over references of the best score from any prediction.
template <typename Scorer>
  requires std::invocable<Scorer&, const TokenSeq&, const TokenSeq&>
double v_score(const std::vector<TokenSeq>& predictions,
               const std::vector<TokenSeq>& references, Scorer&& s) {
  return v_from_matrix(
      score_matrix(predictions, references, std::forward<Scorer>(s)));
}

template <typename Scorer>
  requires std::invocable<Scorer&, const TokenSeq&, const TokenSeq&>
MetaScore f_score(const std::vector<TokenSeq>& predictions,
                  const std::vector<TokenSeq>& references, Scorer&& s) {
  return meta_from_matrix(
      score_matrix(predictions, references, std::forward<Scorer>(s)));
}

inline double u_score(const std::vector<TokenSeq>& predictions,
                      const std::vector<TokenSeq>& references,
                      const ScorerConfig& cfg) {
  return u_score(predictions, references, sentence_scorer(cfg));
}

inline double v_score(const std::vector<TokenSeq>& predictions,
                      const std::vector<TokenSeq>& references,
                      const ScorerConfig& cfg) {
  return v_score(predictions, references, sentence_scorer(cfg));
}

inline MetaScore f_score(const std::vector<TokenSeq>& predictions,
                         const std::vector<TokenSeq>& references,
                         const ScorerConfig& cfg) {
  return f_score(predictions, references, sentence_scorer(cfg));
}

// How the conventional (non-diversity) column is computed per context.
// per_reference pairs prediction i with reference i and needs equal sizes;
// multi_reference scores each prediction against the whole reference set and
// averages.
enum class PairingMode { per_reference, multi_reference };

struct ContextScore {
  double conventional = 0.0;
  MetaScore meta;
};

struct CorpusMacro {
  double conventional = 0.0;
  double u = 0.0;
  double v = 0.0;
  double f_macro = 0.0;     // mean of the per-context f values
  double f_of_means = 0.0;  // harmonic mean of the macro u and v
};

struct CorpusReport {
  std::string metric;  // short name, used in column headers
  std::string scorer;  // full description with parameters
  std::map<std::string, ContextScore> per_context;
  CorpusMacro macro;
};

inline double conventional_instance(const EvalInstance& inst,
                                    const ScorerConfig& cfg,
                                    PairingMode pairing) {
  detail::check_sets(inst.predictions, inst.references);
  double sum = 0.0;
  if (pairing == PairingMode::per_reference) {
    if (inst.predictions.size() != inst.references.size())
      throw std::invalid_argument(
          "per-reference pairing needs |predictions| == |references| "
          "(context " +
          inst.context_id + ")");
    SentenceScorer s = sentence_scorer(cfg);
    for (std::size_t i = 0; i < inst.predictions.size(); ++i)
      sum += s(inst.predictions[i], inst.references[i]);
  } else {
    for (const auto& p : inst.predictions)
      sum += multi_reference_score(cfg, p, inst.references);
  }
  return sum / static_cast<double>(inst.predictions.size());
}

inline ContextScore score_instance(const EvalInstance& inst,
                                   const ScorerConfig& cfg,
                                   PairingMode pairing) {
  ContextScore out;
  out.conventional = conventional_instance(inst, cfg, pairing);
  out.meta = f_score(inst.predictions, inst.references, cfg);
  return out;
}

namespace detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
// only its own output slot, so results are identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Scores every context and macro-averages the per-context values, so every
// context carries the same weight regardless of how many questions it has.
inline CorpusReport meta_corpus(const std::vector<EvalInstance>& corpus,
                                const ScorerConfig& cfg,
                                PairingMode pairing = PairingMode::multi_reference,
                                unsigned threads = 1) {
  validate(cfg);
  if (corpus.empty()) throw std::invalid_argument("meta: empty corpus");
  std::vector<ContextScore> rows(corpus.size());
  detail::parallel_for(corpus.size(), threads, [&](std::size_t i) {
    rows[i] = score_instance(corpus[i], cfg, pairing);
  });

  CorpusReport report;
  report.metric = scorer_name(cfg);
  report.scorer = scorer_description(cfg);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& id = corpus[i].context_id;
    if (!report.per_context.emplace(id, rows[i]).second)
      throw std::invalid_argument("meta: duplicate context_id " + id);
    report.macro.conventional += rows[i].conventional;
    report.macro.u += rows[i].meta.u;
    report.macro.v += rows[i].meta.v;
    report.macro.f_macro += rows[i].meta.f;
  }
  const double n = static_cast<double>(corpus.size());
  report.macro.conventional /= n;
  report.macro.u /= n;
  report.macro.v /= n;
  report.macro.f_macro /= n;
  report.macro.f_of_means = f_combine(report.macro.u, report.macro.v);
  return report;
}

// Macro-averaged conventional score alone, for callers that do not need the
// diversity columns.
inline double conventional_corpus(const std::vector<EvalInstance>& corpus,
                                  const ScorerConfig& cfg,
                                  PairingMode pairing = PairingMode::multi_reference) {
  validate(cfg);
  if (corpus.empty()) throw std::invalid_argument("meta: empty corpus");
  double sum = 0.0;
  for (const auto& inst : corpus)
    sum += conventional_instance(inst, cfg, pairing);
  return sum / static_cast<double>(corpus.size());
}

}  // namespace qgeval
