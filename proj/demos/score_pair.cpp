// Walks one candidate question through every sentence scorer and shows the
// intermediate quantities each one is built from.
#include <cstdio>

#include "qgeval/qgeval.hpp"

using namespace qgeval;

int main() {
  TokenSeq ref1 = tokenize("Who won the 2014 World Cup?");
  TokenSeq ref2 = tokenize("Which event did Germany win in 2014?");
  TokenSeq cand = tokenize("Which event did the 2014 World Cup");

  auto strip = [](TokenSeq seq) {
    // drop the isolated '?' so the demo mirrors pretokenized question text
    if (!seq.empty() && seq.tokens.back() == "?") seq.tokens.pop_back();
    return seq;
  };
  ref1 = strip(ref1);
  ref2 = strip(ref2);

  std::printf("candidate : %s\n", detokenize(cand).c_str());
  std::printf("reference1: %s\n", detokenize(ref1).c_str());
  std::printf("reference2: %s\n\n", detokenize(ref2).c_str());

  BleuStats stats = bleu_stats(cand, {ref1, ref2});
  std::printf("bleu, both references\n");
  for (int n = 1; n <= 4; ++n)
    std::printf("  %d-gram precision: %ld/%ld\n", n, stats.matched[n - 1],
                stats.possible[n - 1]);
  std::printf("  score: %.4f\n\n", sentence_bleu(cand, {ref1, ref2}));

  std::printf("per-reference sentence scores\n");
  std::printf("  %-12s %10s %10s\n", "scorer", "ref1", "ref2");
  std::printf("  %-12s %10.4f %10.4f\n", "bleu",
              sentence_bleu(cand, {ref1}), sentence_bleu(cand, {ref2}));
  std::printf("  %-12s %10.4f %10.4f\n", "rouge-l", rouge_l(cand, ref1),
              rouge_l(cand, ref2));
  std::printf("  %-12s %10.4f %10.4f\n", "meteor-lite",
              meteor_lite(cand, ref1), meteor_lite(cand, ref2));
  std::printf("  %-12s %10.4f %10.4f\n\n", "exact", exact_match(cand, ref1),
              exact_match(cand, ref2));

  MeteorAlignment a = align_unigrams(cand, ref2, MeteorConfig{}.stages);
  std::printf("meteor alignment against reference2: %d matches, %d chunks\n",
              a.matches, a.chunks);
  for (const auto& [ci, ri] : a.pairs)
    std::printf("  %s -> %s\n", cand[ci].c_str(), ref2[ri].c_str());

  MetaScore meta = f_score({cand}, {ref1, ref2}, ScorerConfig{BleuConfig{}});
  std::printf("\ndiversity-aware bleu for the singleton prediction set\n");
  std::printf("  u %.4f  v %.4f  f %.4f\n", meta.u, meta.v, meta.f);
  return 0;
}
