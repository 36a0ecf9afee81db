#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qgeval/bleu.hpp"
#include "qgeval/tokens.hpp"

using Catch::Approx;
using oracles::ts;
using qgeval::BleuConfig;
using qgeval::BleuStats;
using qgeval::bleu_from_stats;
using qgeval::bleu_stats;
using qgeval::corpus_bleu;
using qgeval::sentence_bleu;
using qgeval::TokenSeq;

namespace {

const TokenSeq kRef1 = ts("who won the 2014 world cup");
const TokenSeq kRef2 = ts("which event did germany win in 2014");
const TokenSeq kHybrid = ts("which event did the 2014 world cup");

BleuConfig eps_cfg() {
  BleuConfig cfg;
  cfg.smoothing = BleuConfig::Smoothing::epsilon;
  return cfg;
}

BleuConfig addk_cfg() {
  BleuConfig cfg;
  cfg.smoothing = BleuConfig::Smoothing::add_k;
  return cfg;
}

}  // namespace

TEST_CASE("worked pair sentence scores") {
  // hybrid vs both references: per-order 7/7, 5/6, 3/5, 1/4, no penalty
  REQUIRE(sentence_bleu(kHybrid, {kRef1, kRef2}) ==
          Approx(0.5946035575013605).margin(1e-12));
  // single references
  REQUIRE(sentence_bleu(kHybrid, {kRef1}) ==
          Approx(0.4111336169005197).margin(1e-12));
  // no common 4-gram with ref2, unsmoothed goes to zero
  REQUIRE(sentence_bleu(kHybrid, {kRef2}) == 0.0);
  REQUIRE(sentence_bleu(kHybrid, {kRef2}, eps_cfg()) ==
          Approx(0.031239399369202562).margin(1e-12));
  REQUIRE(sentence_bleu(kHybrid, {kRef2}, addk_cfg()) ==
          Approx(0.35745672884978397).margin(1e-12));
  REQUIRE(sentence_bleu(kHybrid, {kRef1}, addk_cfg()) ==
          Approx(0.5055201539008864).margin(1e-12));
}

TEST_CASE("worked pair statistics") {
  BleuStats st = bleu_stats(kHybrid, {kRef1, kRef2});
  REQUIRE(st.matched == std::vector<long>{7, 5, 3, 1});
  REQUIRE(st.possible == std::vector<long>{7, 6, 5, 4});
  REQUIRE(st.candidate_len == 7);
  REQUIRE(st.reference_len == 7);

  BleuStats s1 = bleu_stats(kHybrid, {kRef1});
  REQUIRE(s1.matched == std::vector<long>{4, 3, 2, 1});
  BleuStats s2 = bleu_stats(kHybrid, {kRef2});
  REQUIRE(s2.matched == std::vector<long>{4, 2, 1, 0});
}

TEST_CASE("identity scores one") {
  REQUIRE(sentence_bleu(kRef1, {kRef1}) == 1.0);
  REQUIRE(sentence_bleu(kRef1, {kRef1}, eps_cfg()) == 1.0);
  REQUIRE(sentence_bleu(ts("a"), {ts("a")}) == 1.0);
}

TEST_CASE("brevity penalty") {
  // all precisions 1, candidate two tokens vs three: exp(1 - 3/2)
  BleuConfig cfg;
  cfg.max_order = 2;
  REQUIRE(sentence_bleu(ts("the cat"), {ts("the cat sat")}, cfg) ==
          Approx(std::exp(-0.5)).margin(1e-12));
  // longer candidate is not rewarded or punished by length
  REQUIRE(sentence_bleu(ts("the cat sat"), {ts("the cat")}, cfg) < 1.0);
  BleuStats st = bleu_stats(ts("the cat sat"), {ts("the cat")}, 2);
  REQUIRE(st.candidate_len == 3);
  REQUIRE(st.reference_len == 2);
}

TEST_CASE("closest reference length, ties toward the shorter") {
  TokenSeq cand = ts("a b c d e");
  BleuStats st = bleu_stats(cand, {ts("x x x x x x"), ts("y y y y")});
  REQUIRE(st.reference_len == 4);
  // order of references must not matter
  BleuStats st2 = bleu_stats(cand, {ts("y y y y"), ts("x x x x x x")});
  REQUIRE(st2.reference_len == 4);
  // a strictly closer reference wins regardless of being longer
  BleuStats st3 = bleu_stats(cand, {ts("y y y"), ts("x x x x x x")});
  REQUIRE(st3.reference_len == 6);
}

TEST_CASE("statistics add and pooling is not averaging") {
  BleuStats a = bleu_stats(kHybrid, {kRef1});
  BleuStats b = bleu_stats(kHybrid, {kRef2});
  BleuStats pooled = a;
  pooled += b;
  REQUIRE(pooled.matched == std::vector<long>{8, 5, 3, 1});
  REQUIRE(pooled.possible == std::vector<long>{14, 12, 10, 8});
  REQUIRE(pooled.candidate_len == 14);
  REQUIRE(pooled.reference_len == 13);

  double corpus = corpus_bleu({{kHybrid, {kRef1}}, {kHybrid, {kRef2}}});
  REQUIRE(corpus == Approx(0.30739407647563216).margin(1e-12));
  REQUIRE(corpus == Approx(bleu_from_stats(pooled)).margin(1e-15));
  double mean =
      (sentence_bleu(kHybrid, {kRef1}) + sentence_bleu(kHybrid, {kRef2})) / 2;
  REQUIRE(std::abs(corpus - mean) > 0.05);

  // += onto empty copies
  BleuStats empty;
  empty += a;
  REQUIRE(empty.matched == a.matched);
  REQUIRE(empty.candidate_len == a.candidate_len);
}

TEST_CASE("orders without candidate windows are skipped") {
  // three tokens: no 4-gram windows, identity still scores one
  REQUIRE(sentence_bleu(ts("a b c"), {ts("a b c")}) == 1.0);
  BleuStats st = bleu_stats(ts("a b c"), {ts("a b c")});
  REQUIRE(st.possible == std::vector<long>{3, 2, 1, 0});
  // a one-token candidate is scored on unigrams alone
  REQUIRE(sentence_bleu(ts("world"), {kRef1}) ==
          Approx(std::exp(1.0 - 6.0)).margin(1e-12));
}

TEST_CASE("add_k leaves unigram precision alone") {
  // one token, no higher orders: smoothing must not change the value
  REQUIRE(sentence_bleu(ts("world"), {kRef1}, addk_cfg()) ==
          sentence_bleu(ts("world"), {kRef1}));
}

TEST_CASE("bleu input validation") {
  REQUIRE_THROWS_AS(sentence_bleu(TokenSeq{}, {kRef1}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(sentence_bleu(kRef1, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(sentence_bleu(kRef1, {TokenSeq{}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(bleu_stats(kRef1, {kRef1}, 0), std::invalid_argument);

  BleuConfig bad;
  bad.max_order = 0;
  REQUIRE_THROWS_AS(sentence_bleu(kRef1, {kRef1}, bad), std::invalid_argument);
  bad = eps_cfg();
  bad.epsilon = 0.0;
  REQUIRE_THROWS_AS(sentence_bleu(kRef1, {kRef1}, bad), std::invalid_argument);
  bad = addk_cfg();
  bad.add_k = -1.0;
  REQUIRE_THROWS_AS(sentence_bleu(kRef1, {kRef1}, bad), std::invalid_argument);
  // epsilon only matters when the epsilon mode is selected
  BleuConfig fine;
  fine.epsilon = 0.0;
  REQUIRE_NOTHROW(sentence_bleu(kRef1, {kRef1}, fine));

  BleuStats st = bleu_stats(kRef1, {kRef1}, 4);
  BleuConfig three;
  three.max_order = 3;
  REQUIRE_THROWS_AS(bleu_from_stats(st, three), std::invalid_argument);

  BleuStats four = bleu_stats(kRef1, {kRef1}, 4);
  BleuStats three_st = bleu_stats(kRef1, {kRef1}, 3);
  REQUIRE_THROWS_AS(four += three_st, std::invalid_argument);

  REQUIRE_THROWS_AS(corpus_bleu({}), std::invalid_argument);
}

TEST_CASE("bleu matches brute force over random sentences") {
  std::mt19937 rng(20140713);
  auto vocab = oracles::small_vocab();
  for (int trial = 0; trial < 1000; ++trial) {
    TokenSeq cand = oracles::random_sentence(rng, vocab, 1, 9);
    int n_refs = 1 + static_cast<int>(rng() % 3);
    std::vector<TokenSeq> refs;
    for (int i = 0; i < n_refs; ++i)
      refs.push_back(oracles::random_sentence(rng, vocab, 1, 9));

    oracles::BruteBleuParams prm;
    BleuConfig cfg;

    for (int mode = 0; mode < 3; ++mode) {
      prm.smoothing = mode;
      cfg.smoothing = static_cast<BleuConfig::Smoothing>(mode);
      double want = oracles::brute_sentence_bleu(cand, refs, prm);
      double got = sentence_bleu(cand, refs, cfg);
      INFO("trial " << trial << " mode " << mode);
      REQUIRE(got == Approx(want).margin(1e-12));
      REQUIRE(got >= 0.0);
      REQUIRE(got <= 1.0);
    }
  }
}

TEST_CASE("extra references never lower clipped matches") {
  std::mt19937 rng(424242);
  auto vocab = oracles::small_vocab();
  for (int trial = 0; trial < 300; ++trial) {
    TokenSeq cand = oracles::random_sentence(rng, vocab, 1, 8);
    TokenSeq r1 = oracles::random_sentence(rng, vocab, 1, 8);
    TokenSeq r2 = oracles::random_sentence(rng, vocab, 1, 8);
    BleuStats single = bleu_stats(cand, {r1});
    BleuStats both = bleu_stats(cand, {r1, r2});
    for (int n = 0; n < 4; ++n) {
      REQUIRE(both.matched[n] >= single.matched[n]);
      REQUIRE(both.possible[n] == single.possible[n]);
    }
  }
}
