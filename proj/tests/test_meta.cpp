#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qgeval/meta.hpp"
#include "qgeval/scorers.hpp"
#include "qgeval/tokens.hpp"

using Catch::Approx;
using oracles::ts;
using qgeval::BleuConfig;
using qgeval::EvalInstance;
using qgeval::ExactMatchConfig;
using qgeval::f_combine;
using qgeval::f_score;
using qgeval::MeteorConfig;
using qgeval::MetaScore;
using qgeval::meta_corpus;
using qgeval::PairingMode;
using qgeval::RougeConfig;
using qgeval::ScoreMatrix;
using qgeval::score_matrix;
using qgeval::ScorerConfig;
using qgeval::sentence_scorer;
using qgeval::TokenSeq;
using qgeval::u_score;
using qgeval::v_score;

namespace {

const TokenSeq kRef1 = ts("who won the 2014 world cup");
const TokenSeq kRef2 = ts("which event did germany win in 2014");
const TokenSeq kHybrid = ts("which event did the 2014 world cup");

std::vector<TokenSeq> random_set(std::mt19937& rng,
                                 const std::vector<std::string>& vocab,
                                 int max_size) {
  std::uniform_int_distribution<int> size_dist(1, max_size);
  std::vector<TokenSeq> out;
  int n = size_dist(rng);
  for (int i = 0; i < n; ++i)
    out.push_back(oracles::random_sentence(rng, vocab, 1, 6));
  return out;
}

}  // namespace

TEST_CASE("worked pair meta scores per scorer") {
  std::vector<TokenSeq> preds = {kHybrid};
  std::vector<TokenSeq> refs = {kRef1, kRef2};

  SECTION("bleu unsmoothed") {
    MetaScore m = f_score(preds, refs, ScorerConfig{BleuConfig{}});
    REQUIRE(m.u == Approx(0.4111336169005197).margin(1e-12));
    REQUIRE(m.v == Approx(0.20556680845025985).margin(1e-12));
    REQUIRE(m.f == Approx(0.2740890779336798).margin(1e-12));
  }
  SECTION("bleu epsilon smoothed") {
    BleuConfig cfg;
    cfg.smoothing = BleuConfig::Smoothing::epsilon;
    MetaScore m = f_score(preds, refs, ScorerConfig{cfg});
    REQUIRE(m.u == Approx(0.4111336169005197).margin(1e-12));
    REQUIRE(m.v == Approx(0.22118650813486113).margin(1e-12));
    REQUIRE(m.f == Approx(0.28763028566896676).margin(1e-12));
    REQUIRE(m.f > 0.27);
    REQUIRE(m.f < 0.30);
  }
  SECTION("rouge-l") {
    MetaScore m = f_score(preds, refs, ScorerConfig{RougeConfig{}});
    REQUIRE(m.u == Approx(0.6240409207161125).margin(1e-12));
    REQUIRE(m.v == Approx(0.597734746072342).margin(1e-12));
    REQUIRE(m.f == Approx(0.6106046329494976).margin(1e-12));
  }
  SECTION("meteor-lite") {
    MetaScore m = f_score(preds, refs, ScorerConfig{MeteorConfig{}});
    REQUIRE(m.u == Approx(0.6506147540983607).margin(1e-12));
    REQUIRE(m.v == Approx(0.5931645199063232).margin(1e-12));
    REQUIRE(m.f == Approx(0.6205628222379774).margin(1e-12));
  }
}

TEST_CASE("binary scorer reduces to classical precision and recall") {
  std::mt19937 rng(90210);
  auto vocab = oracles::small_vocab();
  ScorerConfig cfg{ExactMatchConfig{}};
  for (int trial = 0; trial < 500; ++trial) {
    auto preds = random_set(rng, vocab, 4);
    auto refs = random_set(rng, vocab, 4);
    MetaScore m = f_score(preds, refs, cfg);
    oracles::SetF1 want = oracles::set_f1(preds, refs);
    INFO("trial " << trial);
    REQUIRE(m.u == want.precision);
    REQUIRE(m.v == want.recall);
    REQUIRE(m.f == Approx(want.f1).margin(1e-15));
  }
}

TEST_CASE("duplicating a prediction leaves v alone") {
  std::mt19937 rng(31337);
  auto vocab = oracles::small_vocab();
  ScorerConfig cfg{RougeConfig{}};
  for (int trial = 0; trial < 200; ++trial) {
    auto preds = random_set(rng, vocab, 3);
    auto refs = random_set(rng, vocab, 3);
    double v_before = v_score(preds, refs, cfg);
    auto extended = preds;
    extended.push_back(preds[rng() % preds.size()]);
    REQUIRE(v_score(extended, refs, cfg) == Approx(v_before).margin(1e-15));
  }
}

TEST_CASE("duplicating the whole prediction set changes nothing") {
  std::mt19937 rng(555);
  auto vocab = oracles::small_vocab();
  ScorerConfig cfg{RougeConfig{}};
  for (int trial = 0; trial < 200; ++trial) {
    auto preds = random_set(rng, vocab, 3);
    auto refs = random_set(rng, vocab, 3);
    auto doubled = preds;
    doubled.insert(doubled.end(), preds.begin(), preds.end());
    MetaScore a = f_score(preds, refs, cfg);
    MetaScore b = f_score(doubled, refs, cfg);
    REQUIRE(b.u == Approx(a.u).margin(1e-12));
    REQUIRE(b.v == Approx(a.v).margin(1e-12));
    REQUIRE(b.f == Approx(a.f).margin(1e-12));
  }
}

TEST_CASE("order of predictions and references does not matter") {
  std::mt19937 rng(8080);
  auto vocab = oracles::small_vocab();
  ScorerConfig cfg{RougeConfig{}};
  for (int trial = 0; trial < 200; ++trial) {
    auto preds = random_set(rng, vocab, 4);
    auto refs = random_set(rng, vocab, 4);
    auto preds2 = preds;
    auto refs2 = refs;
    std::shuffle(preds2.begin(), preds2.end(), rng);
    std::shuffle(refs2.begin(), refs2.end(), rng);
    MetaScore a = f_score(preds, refs, cfg);
    MetaScore b = f_score(preds2, refs2, cfg);
    REQUIRE(b.u == Approx(a.u).margin(1e-12));
    REQUIRE(b.v == Approx(a.v).margin(1e-12));
    REQUIRE(b.f == Approx(a.f).margin(1e-12));
  }
}

TEST_CASE("u, v and f stay inside the score range") {
  std::mt19937 rng(112358);
  auto vocab = oracles::small_vocab();
  ScorerConfig cfg{RougeConfig{}};
  for (int trial = 0; trial < 1000; ++trial) {
    auto preds = random_set(rng, vocab, 4);
    auto refs = random_set(rng, vocab, 4);
    MetaScore m = f_score(preds, refs, cfg);
    REQUIRE(m.u >= 0.0);
    REQUIRE(m.u <= 1.0);
    REQUIRE(m.v >= 0.0);
    REQUIRE(m.v <= 1.0);
    // the harmonic mean sits between its arguments
    REQUIRE(m.f >= std::min(m.u, m.v) - 1e-12);
    REQUIRE(m.f <= std::max(m.u, m.v) + 1e-12);
  }
}

TEST_CASE("u is directional") {
  std::vector<TokenSeq> preds = {kHybrid};
  std::vector<TokenSeq> refs = {kRef1, kRef2};
  ScorerConfig cfg{BleuConfig{}};
  double forward = u_score(preds, refs, cfg);
  double backward = u_score(refs, preds, cfg);
  REQUIRE(std::abs(forward - backward) > 0.01);
}

TEST_CASE("a collapsed prediction set loses recall, not precision") {
  std::vector<TokenSeq> refs = {kRef1, kRef2};
  ScorerConfig cfg{ExactMatchConfig{}};

  MetaScore collapsed = f_score({kRef1, kRef1}, refs, cfg);
  REQUIRE(collapsed.u == 1.0);
  REQUIRE(collapsed.v == 0.5);
  REQUIRE(collapsed.f == Approx(2.0 / 3.0).margin(1e-15));

  MetaScore diverse = f_score({kRef1, kRef2}, refs, cfg);
  REQUIRE(diverse.u == 1.0);
  REQUIRE(diverse.v == 1.0);
  REQUIRE(diverse.f == 1.0);
}

TEST_CASE("covering one more reference raises v and f") {
  std::vector<TokenSeq> refs = {kRef1, kRef2};
  ScorerConfig cfg{ExactMatchConfig{}};
  MetaScore before = f_score({kRef1}, refs, cfg);
  MetaScore after = f_score({kRef1, kRef2}, refs, cfg);
  REQUIRE(after.v > before.v);
  REQUIRE(after.f > before.f);
  REQUIRE(after.u == before.u);
}

TEST_CASE("score matrix is row major over predictions") {
  std::vector<TokenSeq> preds = {ts("a b"), ts("c")};
  std::vector<TokenSeq> refs = {ts("a"), ts("b"), ts("c")};
  auto s = sentence_scorer(ScorerConfig{RougeConfig{}});
  ScoreMatrix m = score_matrix(preds, refs, s);
  REQUIRE(m.rows == 2);
  REQUIRE(m.cols == 3);
  REQUIRE(m.values.size() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      REQUIRE(m.at(i, j) == s(preds[i], refs[j]));
  REQUIRE_THROWS_AS(score_matrix({}, refs, s), std::invalid_argument);
  REQUIRE_THROWS_AS(score_matrix(preds, {}, s), std::invalid_argument);
}

TEST_CASE("f combine handles the degenerate corner") {
  REQUIRE(f_combine(0.0, 0.0) == 0.0);
  REQUIRE(f_combine(1.0, 1.0) == 1.0);
  REQUIRE(f_combine(1.0, 0.0) == 0.0);
  REQUIRE(f_combine(0.5, 0.5) == 0.5);
}

TEST_CASE("per-reference pairing walks the lists in lockstep") {
  EvalInstance inst;
  inst.context_id = "ctx-7";
  inst.references = {kRef1, kRef2};
  inst.predictions = {kHybrid, kRef2};
  double got = qgeval::conventional_instance(inst, ScorerConfig{RougeConfig{}},
                                             PairingMode::per_reference);
  REQUIRE(got == Approx((0.6240409207161125 + 1.0) / 2.0).margin(1e-12));

  inst.predictions = {kHybrid};
  try {
    qgeval::conventional_instance(inst, ScorerConfig{RougeConfig{}},
                                  PairingMode::per_reference);
    FAIL("expected a size mismatch error");
  } catch (const std::invalid_argument& e) {
    REQUIRE(std::string(e.what()).find("ctx-7") != std::string::npos);
  }
}

TEST_CASE("multi-reference pairing uses the native multi-reference form") {
  EvalInstance inst;
  inst.context_id = "c";
  inst.references = {kRef1, kRef2};
  inst.predictions = {kHybrid};
  // bleu clips against both references at once
  REQUIRE(qgeval::conventional_instance(inst, ScorerConfig{BleuConfig{}},
                                        PairingMode::multi_reference) ==
          Approx(0.5946035575013605).margin(1e-12));
  // rouge-l takes the best single reference
  REQUIRE(qgeval::conventional_instance(inst, ScorerConfig{RougeConfig{}},
                                        PairingMode::multi_reference) ==
          Approx(0.6240409207161125).margin(1e-12));
}

TEST_CASE("corpus macro averages per-context values") {
  EvalInstance one;
  one.context_id = "a";
  one.references = {kRef1, kRef2};
  one.predictions = {kRef1, kRef1};  // u 1, v 0.5, f 2/3, conv 1
  EvalInstance two;
  two.context_id = "b";
  two.references = {kRef1, kRef2};
  two.predictions = {kRef1, kRef2};  // u 1, v 1, f 1, conv 1

  auto report = meta_corpus({one, two}, ScorerConfig{ExactMatchConfig{}});
  REQUIRE(report.metric == "exact");
  REQUIRE(report.scorer == "exact");
  REQUIRE(report.per_context.size() == 2);
  REQUIRE(report.per_context.at("a").meta.v == 0.5);
  REQUIRE(report.per_context.at("b").meta.f == 1.0);
  REQUIRE(report.macro.conventional == 1.0);
  REQUIRE(report.macro.u == 1.0);
  REQUIRE(report.macro.v == Approx(0.75).margin(1e-15));
  // mean of f values vs f of mean u and v are different summaries
  REQUIRE(report.macro.f_macro == Approx((2.0 / 3.0 + 1.0) / 2).margin(1e-15));
  REQUIRE(report.macro.f_of_means ==
          Approx(f_combine(1.0, 0.75)).margin(1e-15));

  auto bleu_report = meta_corpus({one, two}, ScorerConfig{BleuConfig{}});
  REQUIRE(bleu_report.metric == "bleu");
  REQUIRE(bleu_report.scorer == "bleu(max_order=4,smoothing=none)");
}

TEST_CASE("corpus rejects duplicates and emptiness") {
  EvalInstance one;
  one.context_id = "same";
  one.references = {kRef1};
  one.predictions = {kRef1};
  REQUIRE_THROWS_AS(meta_corpus({one, one}, ScorerConfig{ExactMatchConfig{}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(meta_corpus({}, ScorerConfig{ExactMatchConfig{}}),
                    std::invalid_argument);
}

TEST_CASE("thread count never changes the numbers") {
  std::mt19937 rng(2718);
  auto vocab = oracles::small_vocab();
  std::vector<EvalInstance> corpus;
  for (int i = 0; i < 64; ++i) {
    EvalInstance inst;
    inst.context_id = "ctx-" + std::to_string(i);
    inst.references = random_set(rng, vocab, 3);
    inst.predictions = random_set(rng, vocab, 3);
    corpus.push_back(std::move(inst));
  }
  ScorerConfig cfg{RougeConfig{}};
  auto base = meta_corpus(corpus, cfg, PairingMode::multi_reference, 1);
  for (unsigned threads : {2u, 4u, 7u}) {
    auto par = meta_corpus(corpus, cfg, PairingMode::multi_reference, threads);
    REQUIRE(par.macro.conventional == base.macro.conventional);
    REQUIRE(par.macro.u == base.macro.u);
    REQUIRE(par.macro.v == base.macro.v);
    REQUIRE(par.macro.f_macro == base.macro.f_macro);
    REQUIRE(par.macro.f_of_means == base.macro.f_of_means);
    for (const auto& [id, row] : base.per_context) {
      const auto& other = par.per_context.at(id);
      REQUIRE(other.conventional == row.conventional);
      REQUIRE(other.meta.u == row.meta.u);
      REQUIRE(other.meta.v == row.meta.v);
      REQUIRE(other.meta.f == row.meta.f);
    }
  }
}

TEST_CASE("worker exceptions surface to the caller") {
  std::vector<EvalInstance> corpus;
  for (int i = 0; i < 16; ++i) {
    EvalInstance inst;
    inst.context_id = "ctx-" + std::to_string(i);
    inst.references = {kRef1};
    inst.predictions = {kRef1};
    corpus.push_back(std::move(inst));
  }
  corpus[9].predictions.clear();
  REQUIRE_THROWS_AS(meta_corpus(corpus, ScorerConfig{ExactMatchConfig{}},
                                PairingMode::multi_reference, 4),
                    std::invalid_argument);
}

TEST_CASE("config overloads match the template form") {
  std::vector<TokenSeq> preds = {kHybrid, kRef2};
  std::vector<TokenSeq> refs = {kRef1, kRef2};
  ScorerConfig cfg{RougeConfig{}};
  auto s = sentence_scorer(cfg);
  REQUIRE(u_score(preds, refs, cfg) == u_score(preds, refs, s));
  REQUIRE(v_score(preds, refs, cfg) == v_score(preds, refs, s));
  MetaScore a = f_score(preds, refs, cfg);
  MetaScore b = f_score(preds, refs, s);
  REQUIRE(a.u == b.u);
  REQUIRE(a.v == b.v);
  REQUIRE(a.f == b.f);
}
