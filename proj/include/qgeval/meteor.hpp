#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgeval/porter.hpp"
#include "qgeval/tokens.hpp"

namespace qgeval {

// Unigram-alignment score in the METEOR family, restricted to the exact and
// stem matching stages. Matching is one-to-one: each stage adds a
// maximum-cardinality matching between the still-unmatched positions, and
// among alignments with those stage sizes the one with the fewest chunks is
// preferred.
struct MeteorConfig {
  enum class Stage { exact, stem };

  double alpha = 0.9;      // recall weight in the harmonic mean
  double gamma = 0.5;      // fragmentation penalty weight
  double beta_pen = 3.0;   // fragmentation penalty exponent
  std::vector<Stage> stages = {Stage::exact, Stage::stem};
};

inline void validate(const MeteorConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0))
    throw std::invalid_argument("meteor-lite: alpha must be in (0, 1)");
  if (!(cfg.gamma >= 0.0))
    throw std::invalid_argument("meteor-lite: gamma must be >= 0");
  if (!(cfg.beta_pen > 0.0))
    throw std::invalid_argument("meteor-lite: beta_pen must be > 0");
  if (cfg.stages.empty())
    throw std::invalid_argument("meteor-lite: no matching stages");
  for (std::size_t i = 0; i < cfg.stages.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.stages.size(); ++j)
      if (cfg.stages[i] == cfg.stages[j])
        throw std::invalid_argument("meteor-lite: duplicate matching stage");
}

// Matched (candidate, reference) position pairs, sorted by candidate
// position. A chunk is a maximal run of pairs whose candidate and reference
// positions both advance by exactly one.
struct MeteorAlignment {
  std::vector<std::pair<int, int>> pairs;
  int matches = 0;
  int chunks = 0;
};

enum class AlignStrategy {
  min_chunks,  // exhaustive chunk minimization for small alignments
  greedy       // leftmost-position matching only
};

namespace detail {

inline int count_chunks(const std::vector<std::pair<int, int>>& pairs) {
  int chunks = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].first != pairs[i - 1].first + 1 ||
        pairs[i].second != pairs[i - 1].second + 1)
      ++chunks;
  }
  return chunks;
}

struct StageKeys {
  // keys[stage][position]; exact uses the token itself, stem its stem.
  std::vector<std::vector<std::string>> by_stage;
};

inline StageKeys stage_keys(const TokenSeq& seq,
                            const std::vector<MeteorConfig::Stage>& stages) {
  StageKeys out;
  for (auto stage : stages) {
    std::vector<std::string> keys;
    keys.reserve(seq.size());
    for (const auto& tok : seq.tokens)
      keys.push_back(stage == MeteorConfig::Stage::exact ? tok
                                                         : porter_stem(tok));
    out.by_stage.push_back(std::move(keys));
  }
  return out;
}

// Stage-by-stage leftmost matching. Within a stage each unmatched candidate
// position takes the lowest unmatched reference position with an equal key,
// which realizes the per-key count minimum and hence maximum cardinality.
inline MeteorAlignment greedy_align(const StageKeys& cand,
                                    const StageKeys& ref,
                                    std::size_t cand_len,
                                    std::size_t ref_len,
                                    std::vector<int>* stage_sizes = nullptr) {
  std::vector<char> cand_used(cand_len, 0), ref_used(ref_len, 0);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t s = 0; s < cand.by_stage.size(); ++s) {
    int taken = 0;
    for (std::size_t i = 0; i < cand_len; ++i) {
      if (cand_used[i]) continue;
      for (std::size_t j = 0; j < ref_len; ++j) {
        if (ref_used[j]) continue;
        if (cand.by_stage[s][i] == ref.by_stage[s][j]) {
          cand_used[i] = ref_used[j] = 1;
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
          ++taken;
          break;
        }
      }
    }
    if (stage_sizes) stage_sizes->push_back(taken);
  }
  std::sort(pairs.begin(), pairs.end());
  MeteorAlignment out;
  out.pairs = std::move(pairs);
  out.matches = static_cast<int>(out.pairs.size());
  out.chunks = count_chunks(out.pairs);
  return out;
}

// Depth-first search over alignments that reproduce the per-stage match
// counts, pruning on the chunk count. Candidate positions are visited in
// order, so chunk growth is decided locally. The node budget bounds the
// worst case; the greedy alignment seeds the incumbent, so aborting early
// still returns a valid alignment.
struct ChunkSearch {
  struct Slot {
    int cand_pos;
    std::vector<int> per_stage_refs_start;  // offsets into refs
    std::vector<int> refs;                  // eligible ref positions by stage
  };

  std::vector<Slot> slots;
  std::vector<int> stage_left;
  std::vector<char> ref_used;
  std::vector<std::pair<int, int>> current, best_pairs;
  int best_chunks = 0;
  long budget = 0;

  void run(std::size_t idx, int remaining, int last_cand, int last_ref,
           int chunks) {
    if (chunks >= best_chunks) return;
    if (remaining == 0) {
      best_chunks = chunks;
      best_pairs = current;
      return;
    }
    if (idx >= slots.size() ||
        static_cast<int>(slots.size() - idx) < remaining)
      return;
    if (--budget <= 0) return;
    const Slot& slot = slots[idx];
    for (std::size_t s = 0; s < stage_left.size(); ++s) {
      if (stage_left[s] == 0) continue;
      int from = slot.per_stage_refs_start[s];
      int to = s + 1 < slot.per_stage_refs_start.size()
                   ? slot.per_stage_refs_start[s + 1]
                   : static_cast<int>(slot.refs.size());
      for (int k = from; k < to; ++k) {
        int j = slot.refs[k];
        if (ref_used[j]) continue;
        ref_used[j] = 1;
        --stage_left[s];
        current.emplace_back(slot.cand_pos, j);
        bool adjacent = slot.cand_pos == last_cand + 1 && j == last_ref + 1;
        run(idx + 1, remaining - 1, slot.cand_pos, j,
            chunks + (adjacent ? 0 : 1));
        current.pop_back();
        ++stage_left[s];
        ref_used[j] = 0;
        if (budget <= 0) return;
      }
    }
    run(idx + 1, remaining, last_cand, last_ref, chunks);
  }
};

}  // namespace detail

// Matches up to 20 pairs are realigned exhaustively to minimize the chunk
// count; beyond that, and under AlignStrategy::greedy, the leftmost matching
// is kept as is.
inline MeteorAlignment align_unigrams(
    const TokenSeq& candidate, const TokenSeq& reference,
    const std::vector<MeteorConfig::Stage>& stages,
    AlignStrategy strategy = AlignStrategy::min_chunks) {
  if (stages.empty())
    throw std::invalid_argument("meteor-lite: no matching stages");
  const auto cand_keys = detail::stage_keys(candidate, stages);
  const auto ref_keys = detail::stage_keys(reference, stages);

  std::vector<int> stage_sizes;
  MeteorAlignment greedy = detail::greedy_align(
      cand_keys, ref_keys, candidate.size(), reference.size(), &stage_sizes);
  if (strategy == AlignStrategy::greedy || greedy.matches > 20 ||
      greedy.chunks <= 1)
    return greedy;

  // A pair counts for the earliest stage whose keys agree, mirroring how the
  // staged matching consumes positions.
  detail::ChunkSearch search;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    detail::ChunkSearch::Slot slot;
    slot.cand_pos = static_cast<int>(i);
    for (std::size_t s = 0; s < stages.size(); ++s) {
      slot.per_stage_refs_start.push_back(static_cast<int>(slot.refs.size()));
      for (std::size_t j = 0; j < reference.size(); ++j) {
        if (cand_keys.by_stage[s][i] != ref_keys.by_stage[s][j]) continue;
        bool earlier = false;
        for (std::size_t t = 0; t < s && !earlier; ++t)
          earlier = cand_keys.by_stage[t][i] == ref_keys.by_stage[t][j];
        if (!earlier) slot.refs.push_back(static_cast<int>(j));
      }
    }
    if (!slot.refs.empty()) search.slots.push_back(std::move(slot));
  }
  search.stage_left = stage_sizes;
  search.ref_used.assign(reference.size(), 0);
  search.best_chunks = greedy.chunks;
  search.best_pairs = greedy.pairs;
  search.budget = 2'000'000;
  search.run(0, greedy.matches, -2, -2, 0);

  MeteorAlignment out;
  out.pairs = std::move(search.best_pairs);
  out.matches = greedy.matches;
  out.chunks = detail::count_chunks(out.pairs);
  return out;
}

inline double meteor_lite(const TokenSeq& candidate, const TokenSeq& reference,
                          const MeteorConfig& cfg = {}) {
  validate(cfg);
  if (candidate.empty())
    throw std::invalid_argument("meteor-lite: empty candidate");
  if (reference.empty())
    throw std::invalid_argument("meteor-lite: empty reference");

  MeteorAlignment a = align_unigrams(candidate, reference, cfg.stages);
  if (a.matches == 0) return 0.0;

  const double m = static_cast<double>(a.matches);
  const double p = m / static_cast<double>(candidate.size());
  const double r = m / static_cast<double>(reference.size());
  const double fmean = p * r / (cfg.alpha * p + (1.0 - cfg.alpha) * r);
  const double frag = static_cast<double>(a.chunks) / m;
  const double penalty = cfg.gamma * std::pow(frag, cfg.beta_pen);
  return std::clamp(fmean * (1.0 - penalty), 0.0, 1.0);
}

}  // namespace qgeval
