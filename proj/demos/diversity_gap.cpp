// Shows the failure mode the meta metrics exist for: a system that repeats
// one good question ties a diverse system on conventional columns and loses
// on the recall-style v and the combined f.
#include <cstdio>
#include <string>
#include <vector>

#include "qgeval/qgeval.hpp"

using namespace qgeval;

int main() {
  std::vector<EvalInstance> corpus;
  const char* passages[][2] = {
      {"who won the 2014 world cup", "which team became champion in 2014"},
      {"where was the final played", "which city hosted the final match"},
      {"how many goals were scored", "what was the total goal count"},
  };
  for (int i = 0; i < 3; ++i) {
    EvalInstance inst;
    inst.context_id = "ctx-" + std::to_string(i + 1);
    inst.references = {split_pretokenized(passages[i][0]),
                       split_pretokenized(passages[i][1])};
    corpus.push_back(std::move(inst));
  }

  SystemSpec copy;
  copy.kind = SystemSpec::Kind::copy_first;
  SystemSpec round;
  round.kind = SystemSpec::Kind::round_robin;

  auto result = pathology_report(corpus, {copy, round},
                                 ScorerConfig{ExactMatchConfig{}}, 2);

  std::printf("%-12s %14s %8s %8s %8s\n", "system", "conventional", "u", "v",
              "f");
  for (const auto& row : result.rows)
    std::printf("%-12s %14.4f %8.4f %8.4f %8.4f\n", row.system.c_str(),
                row.conventional, row.meta.u, row.meta.v, row.meta.f);

  std::printf("\nconventional columns tie: %s\n",
              result.conventional_tie ? "yes" : "no");
  std::printf("v and f separate the systems: %s\n",
              result.diversity_separation ? "yes" : "no");
  return 0;
}
