// Command-line front end: scores prediction corpora against references with
// a conventional metric plus its diversity-aware u/v/f aggregation, compares
// two systems, and fabricates synthetic prediction corpora for sanity
// checks. Exit codes: 0 success, 1 data or validation failure, 2 usage.

#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeval/qgeval.hpp"

namespace {

// Bad flag values or config contents; mapped to exit code 2 like any other
// command-line mistake.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MetricOptions {
  std::string metric = "bleu";
  std::string smoothing = "none";
  int max_order = 4;
  double rouge_beta = 1.2;
  double meteor_alpha = 0.9;
  double meteor_gamma = 0.5;
  double meteor_beta_pen = 3.0;
  std::string pairing = "multi-ref";
  bool pretokenized = true;
  bool percent = false;
  std::string out = "tsv";
  unsigned threads = 1;
  bool f_macro = true;
  bool f_of_means = true;
  std::string config_path;
};

void add_metric_options(CLI::App* cmd, MetricOptions& o) {
  cmd->add_option("--metric", o.metric, "Sentence metric")
      ->required()
      ->check(CLI::IsMember({"bleu", "rouge-l", "meteor-lite", "exact"}));
  cmd->add_option("--smoothing", o.smoothing,
                  "bleu smoothing: none, epsilon=E or addk=K");
  cmd->add_option("--max-order", o.max_order, "bleu n-gram order")
      ->check(CLI::Range(1, 9));
  cmd->add_option("--rouge-beta", o.rouge_beta, "rouge-l recall weight");
  cmd->add_option("--meteor-alpha", o.meteor_alpha,
                  "meteor-lite recall weight");
  cmd->add_option("--meteor-gamma", o.meteor_gamma,
                  "meteor-lite fragmentation penalty weight");
  cmd->add_option("--meteor-beta-pen", o.meteor_beta_pen,
                  "meteor-lite fragmentation penalty exponent");
  cmd->add_option("--pairing", o.pairing,
                  "conventional column pairing: per-ref or multi-ref")
      ->check(CLI::IsMember(
          {"per-ref", "multi-ref", "per_reference", "multi_reference"}));
  cmd->add_flag("--pretokenized,!--no-pretokenized", o.pretokenized,
                "treat corpus text as whitespace-tokenized (default on)");
  cmd->add_flag("--percent", o.percent, "report scores scaled by 100");
  cmd->add_option("--out", o.out, "output format")
      ->required()
      ->check(CLI::IsMember({"tsv", "json", "markdown", "md"}));
  cmd->add_option("--threads", o.threads, "worker threads")
      ->check(CLI::Range(1u, 256u));
  cmd->add_flag("--f-macro,!--no-f-macro", o.f_macro,
                "emit the macro row averaging per-context f");
  cmd->add_flag("--f-of-means,!--no-f-of-means", o.f_of_means,
                "emit the macro row combining mean u and mean v");
  cmd->add_option("--config", o.config_path,
                  "JSON file with defaults for these flags");
}

// Config file fills in anything not given explicitly on the command line.
void apply_config(const CLI::App* cmd, MetricOptions& o) {
  if (o.config_path.empty()) return;
  std::ifstream in(o.config_path);
  if (!in) throw UsageError("cannot open config file " + o.config_path);
  nlohmann::json cfg = nlohmann::json::parse(in, nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object())
    throw UsageError("config file " + o.config_path +
                     " is not a JSON object");

  // --metric and --out are deliberately absent: they are required flags.
  static const std::set<std::string> known = {
      "smoothing",    "max_order",    "rouge_beta",      "meteor_alpha",
      "meteor_gamma", "meteor_beta_pen", "pairing",      "pretokenized",
      "percent",      "threads"};
  for (const auto& [key, value] : cfg.items())
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");

  auto set_if = [&](const char* key, const char* flag, auto& dst) {
    if (!cfg.contains(key) || cmd->count(flag) > 0) return;
    try {
      cfg.at(key).get_to(dst);
    } catch (const nlohmann::json::exception&) {
      throw UsageError(std::string("config key '") + key +
                       "' has the wrong type");
    }
  };
  set_if("smoothing", "--smoothing", o.smoothing);
  set_if("max_order", "--max-order", o.max_order);
  set_if("rouge_beta", "--rouge-beta", o.rouge_beta);
  set_if("meteor_alpha", "--meteor-alpha", o.meteor_alpha);
  set_if("meteor_gamma", "--meteor-gamma", o.meteor_gamma);
  set_if("meteor_beta_pen", "--meteor-beta-pen", o.meteor_beta_pen);
  set_if("pairing", "--pairing", o.pairing);
  set_if("pretokenized", "--pretokenized", o.pretokenized);
  set_if("percent", "--percent", o.percent);
  set_if("threads", "--threads", o.threads);
}

double parse_param(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw UsageError(flag + " has a malformed number: " + text);
  }
}

qgeval::ScorerConfig build_scorer(const MetricOptions& o) {
  if (o.metric == "bleu") {
    qgeval::BleuConfig c;
    c.max_order = o.max_order;
    if (o.smoothing == "none") {
      c.smoothing = qgeval::BleuConfig::Smoothing::none;
    } else if (o.smoothing.rfind("epsilon=", 0) == 0) {
      c.smoothing = qgeval::BleuConfig::Smoothing::epsilon;
      c.epsilon = parse_param(o.smoothing.substr(8), "--smoothing epsilon");
    } else if (o.smoothing.rfind("addk=", 0) == 0) {
      c.smoothing = qgeval::BleuConfig::Smoothing::add_k;
      c.add_k = parse_param(o.smoothing.substr(5), "--smoothing addk");
    } else {
      throw UsageError("--smoothing must be none, epsilon=E or addk=K");
    }
    return c;
  }
  if (o.metric == "rouge-l") {
    qgeval::RougeConfig c;
    c.beta = o.rouge_beta;
    return c;
  }
  if (o.metric == "meteor-lite") {
    qgeval::MeteorConfig c;
    c.alpha = o.meteor_alpha;
    c.gamma = o.meteor_gamma;
    c.beta_pen = o.meteor_beta_pen;
    return c;
  }
  if (o.metric == "exact") return qgeval::ExactMatchConfig{};
  throw UsageError("unknown metric '" + o.metric + "'");
}

qgeval::PairingMode build_pairing(const MetricOptions& o) {
  if (o.pairing == "per-ref" || o.pairing == "per_reference")
    return qgeval::PairingMode::per_reference;
  if (o.pairing == "multi-ref" || o.pairing == "multi_reference")
    return qgeval::PairingMode::multi_reference;
  throw UsageError("unknown pairing '" + o.pairing + "'");
}

qgeval::OutputFormat build_format(const MetricOptions& o) {
  try {
    return qgeval::output_format_from_name(o.out);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

qgeval::RenderOptions build_render(const MetricOptions& o) {
  qgeval::RenderOptions r;
  r.percent = o.percent;
  r.emit_f_macro = o.f_macro;
  r.emit_f_of_means = o.f_of_means;
  return r;
}

int run_eval(const CLI::App* cmd, const MetricOptions& opts,
             const std::string& corpus_path) {
  MetricOptions o = opts;
  apply_config(cmd, o);
  auto scorer = build_scorer(o);
  auto pairing = build_pairing(o);
  auto format = build_format(o);
  auto corpus = qgeval::load_corpus(corpus_path, o.pretokenized);
  auto report = qgeval::meta_corpus(corpus, scorer, pairing, o.threads);
  std::cout << qgeval::render_report(report, format, build_render(o));
  return 0;
}

int run_compare(const CLI::App* cmd, const MetricOptions& opts,
                const std::string& a_path, const std::string& b_path) {
  MetricOptions o = opts;
  apply_config(cmd, o);
  auto scorer = build_scorer(o);
  auto pairing = build_pairing(o);
  auto format = build_format(o);
  auto a = qgeval::load_corpus(a_path, o.pretokenized);
  auto b = qgeval::load_corpus(b_path, o.pretokenized);
  auto report = qgeval::compare_systems(a, b, scorer, pairing, o.threads);
  std::cout << qgeval::render_comparison(report, format, build_render(o));
  return 0;
}

struct SynthOptions {
  std::string kind = "copy-first";
  std::string refs_path;
  int k = 2;
  int offset = 0;
  double cut_a = 0.5;
  double cut_b = 0.5;
  int n = 2;
  bool pretokenized = true;
};

int run_synth(const SynthOptions& o) {
  qgeval::SystemSpec spec;
  try {
    spec.kind = qgeval::kind_from_name(o.kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.offset = o.offset;
  spec.cut_a = o.cut_a;
  spec.cut_b = o.cut_b;
  spec.n = o.n;
  auto refs = qgeval::load_corpus(o.refs_path, o.pretokenized,
                                  /*need_predictions=*/false);
  auto corpus = qgeval::generate_corpus(spec, refs, o.k);
  qgeval::write_corpus(std::cout, corpus);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Question-set scoring with conventional metrics and their "
      "diversity-aware u/v/f aggregation"};
  app.require_subcommand(1);

  MetricOptions eval_opts;
  std::string eval_corpus;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Score a prediction corpus against its references");
  eval_cmd->add_option("--corpus", eval_corpus, "JSONL corpus")->required();
  add_metric_options(eval_cmd, eval_opts);

  MetricOptions cmp_opts;
  std::string cmp_a, cmp_b;
  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "Score two corpora over the same contexts side by side");
  cmp_cmd->add_option("--a", cmp_a, "JSONL corpus for system A")->required();
  cmp_cmd->add_option("--b", cmp_b, "JSONL corpus for system B")->required();
  add_metric_options(cmp_cmd, cmp_opts);

  SynthOptions synth_opts;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Generate a synthetic prediction corpus from references");
  synth_cmd
      ->add_option("--kind", synth_opts.kind,
                   "copy-first, round-robin, splice or duplicate-n")
      ->required();
  synth_cmd->add_option("--refs", synth_opts.refs_path, "JSONL references")
      ->required();
  synth_cmd->add_option("--k", synth_opts.k, "predictions per context");
  synth_cmd->add_option("--offset", synth_opts.offset,
                        "round-robin starting rotation");
  synth_cmd->add_option("--cut-a", synth_opts.cut_a, "splice prefix fraction");
  synth_cmd->add_option("--cut-b", synth_opts.cut_b,
                        "splice suffix start fraction");
  synth_cmd->add_option("--n", synth_opts.n, "duplicate-n copy count");
  synth_cmd->add_flag("--pretokenized,!--no-pretokenized",
                      synth_opts.pretokenized,
                      "treat reference text as whitespace-tokenized");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_cmd, eval_opts, eval_corpus);
    if (cmp_cmd->parsed()) return run_compare(cmp_cmd, cmp_opts, cmp_a, cmp_b);
    if (synth_cmd->parsed()) return run_synth(synth_opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
