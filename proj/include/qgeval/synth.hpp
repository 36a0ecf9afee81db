#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgeval/meta.hpp"
#include "qgeval/scorers.hpp"
#include "qgeval/tokens.hpp"

namespace qgeval {

// Deterministic toy "systems" that turn a reference set into a prediction
// set. They exist to exhibit the failure mode motivating u/v/f: a degenerate
// repeater and a diverse copier can tie on conventional scores while the
// recall-style v separates them.
struct SystemSpec {
  enum class Kind { copy_first, round_robin, splice, duplicate_n };

  Kind kind = Kind::copy_first;
  // round_robin: rotation applied before cycling through the references.
  int offset = 0;
  // splice: fraction of the second reference used as prefix, and fractional
  // position in the first reference where the suffix starts.
  double cut_a = 0.5;
  double cut_b = 0.5;
  // duplicate_n: number of copies of the first reference emitted.
  int n = 2;
};

inline std::string kind_name(SystemSpec::Kind kind) {
  switch (kind) {
    case SystemSpec::Kind::copy_first:
      return "copy_first";
    case SystemSpec::Kind::round_robin:
      return "round_robin";
    case SystemSpec::Kind::splice:
      return "splice";
    case SystemSpec::Kind::duplicate_n:
      return "duplicate_n";
  }
  return "unknown";
}

inline SystemSpec::Kind kind_from_name(const std::string& name) {
  if (name == "copy_first" || name == "copy-first")
    return SystemSpec::Kind::copy_first;
  if (name == "round_robin" || name == "round-robin")
    return SystemSpec::Kind::round_robin;
  if (name == "splice") return SystemSpec::Kind::splice;
  if (name == "duplicate_n" || name == "duplicate-n")
    return SystemSpec::Kind::duplicate_n;
  throw std::invalid_argument("synth: unknown system kind '" + name + "'");
}

inline void validate(const SystemSpec& spec) {
  if (spec.kind == SystemSpec::Kind::round_robin && spec.offset < 0)
    throw std::invalid_argument("synth: offset must be >= 0");
  if (spec.kind == SystemSpec::Kind::splice) {
    if (!(spec.cut_a > 0.0 && spec.cut_a < 1.0) ||
        !(spec.cut_b > 0.0 && spec.cut_b < 1.0))
      throw std::invalid_argument("synth: cuts must be inside (0, 1)");
  }
  if (spec.kind == SystemSpec::Kind::duplicate_n && spec.n < 1)
    throw std::invalid_argument("synth: n must be >= 1");
}

// Emits k predictions from one context's references (duplicate_n emits its
// own n instead). splice builds a single hybrid: a prefix of the second
// reference followed by a suffix of the first, with both boundaries at
// floor(cut * length), clamped so neither part is empty.
inline std::vector<TokenSeq> generate(const SystemSpec& spec,
                                      const std::vector<TokenSeq>& references,
                                      int k) {
  validate(spec);
  if (references.empty())
    throw std::invalid_argument("synth: no references to generate from");
  for (const auto& r : references)
    if (r.empty()) throw std::invalid_argument("synth: empty reference");
  if (k < 1 && spec.kind != SystemSpec::Kind::duplicate_n)
    throw std::invalid_argument("synth: k must be >= 1");

  std::vector<TokenSeq> out;
  switch (spec.kind) {
    case SystemSpec::Kind::copy_first:
      out.assign(static_cast<std::size_t>(k), references[0]);
      break;
    case SystemSpec::Kind::round_robin:
      for (int i = 0; i < k; ++i)
        out.push_back(references[(static_cast<std::size_t>(spec.offset) + i) %
                                 references.size()]);
      break;
    case SystemSpec::Kind::splice: {
      if (references.size() < 2)
        throw std::invalid_argument("synth: splice needs >= 2 references");
      const TokenSeq& head_src = references[1];
      const TokenSeq& tail_src = references[0];
      auto head_len = static_cast<std::size_t>(
          std::floor(spec.cut_a * static_cast<double>(head_src.size())));
      head_len = std::max<std::size_t>(1, std::min(head_len, head_src.size()));
      auto tail_pos = static_cast<std::size_t>(
          std::floor(spec.cut_b * static_cast<double>(tail_src.size())));
      tail_pos = std::max<std::size_t>(1, std::min(tail_pos, tail_src.size()));
      TokenSeq hybrid;
      hybrid.tokens.assign(head_src.begin(), head_src.begin() + head_len);
      hybrid.tokens.insert(hybrid.tokens.end(),
                           tail_src.begin() + (tail_pos - 1), tail_src.end());
      out.assign(static_cast<std::size_t>(k), hybrid);
      break;
    }
    case SystemSpec::Kind::duplicate_n:
      out.assign(static_cast<std::size_t>(spec.n), references[0]);
      break;
  }
  return out;
}

// Replaces every context's predictions with the system's output.
inline std::vector<EvalInstance> generate_corpus(
    const SystemSpec& spec, const std::vector<EvalInstance>& corpus, int k) {
  if (corpus.empty()) throw std::invalid_argument("synth: empty corpus");
  std::vector<EvalInstance> out = corpus;
  for (auto& inst : out) inst.predictions = generate(spec, inst.references, k);
  return out;
}

struct PathologyRow {
  std::string system;
  double conventional = 0.0;
  MetaScore meta;
};

struct PathologyReport {
  std::vector<PathologyRow> rows;
  // Set when both copy_first and round_robin are among the systems.
  bool has_copy_and_round = false;
  // copy_first and round_robin agree on the conventional column...
  bool conventional_tie = false;
  // ...while round_robin wins on both v and f.
  bool diversity_separation = false;
};

// Runs each system over the reference corpus and scores it. k is the number
// of predictions per context for the kinds that honor it.
inline PathologyReport pathology_report(const std::vector<EvalInstance>& corpus,
                                        const std::vector<SystemSpec>& systems,
                                        const ScorerConfig& scorer, int k,
                                        PairingMode pairing = PairingMode::multi_reference) {
  if (systems.empty()) throw std::invalid_argument("synth: no systems");
  PathologyReport report;
  const PathologyRow* copy_row = nullptr;
  const PathologyRow* round_row = nullptr;
  for (const auto& spec : systems) {
    auto predicted = generate_corpus(spec, corpus, k);
    CorpusReport scored = meta_corpus(predicted, scorer, pairing);
    PathologyRow row;
    row.system = kind_name(spec.kind);
    row.conventional = scored.macro.conventional;
    row.meta.u = scored.macro.u;
    row.meta.v = scored.macro.v;
    row.meta.f = scored.macro.f_macro;
    report.rows.push_back(row);
  }
  for (const auto& row : report.rows) {
    if (row.system == "copy_first" && !copy_row) copy_row = &row;
    if (row.system == "round_robin" && !round_row) round_row = &row;
  }
  if (copy_row && round_row) {
    report.has_copy_and_round = true;
    report.conventional_tie =
        std::abs(copy_row->conventional - round_row->conventional) < 1e-9;
    report.diversity_separation = round_row->meta.v > copy_row->meta.v &&
                                  round_row->meta.f > copy_row->meta.f;
  }
  return report;
}

}  // namespace qgeval
