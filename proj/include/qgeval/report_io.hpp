#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgeval/meta.hpp"

namespace qgeval {

enum class OutputFormat { tsv, json, markdown };

inline OutputFormat output_format_from_name(const std::string& name) {
  if (name == "tsv") return OutputFormat::tsv;
  if (name == "json") return OutputFormat::json;
  if (name == "markdown" || name == "md") return OutputFormat::markdown;
  throw std::invalid_argument("report: unknown output format '" + name + "'");
}

struct RenderOptions {
  bool percent = false;       // scale every score by 100
  bool emit_f_macro = true;   // include the mean-of-f macro row
  bool emit_f_of_means = true;  // include the harmonic-mean-of-means row
};

namespace detail {

// Fixed-point text for tables: 4 fractional digits raw, 2 when values are
// percentages. JSON keeps full-precision doubles instead.
inline std::string fmt_cell(double v, bool percent) {
  char buf[32];
  if (percent)
    std::snprintf(buf, sizeof(buf), "%.2f", v * 100.0);
  else
    std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline double fmt_json(double v, bool percent) {
  return percent ? v * 100.0 : v;
}

}  // namespace detail

inline nlohmann::json report_to_json(const CorpusReport& report,
                                     bool percent = false) {
  nlohmann::json out;
  out["metric"] = report.metric;
  out["scorer"] = report.scorer;
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& [id, row] : report.per_context) {
    rows[id] = {{"conventional", detail::fmt_json(row.conventional, percent)},
                {"u", detail::fmt_json(row.meta.u, percent)},
                {"v", detail::fmt_json(row.meta.v, percent)},
                {"f", detail::fmt_json(row.meta.f, percent)}};
  }
  out["per_context"] = std::move(rows);
  out["macro"] = {
      {"conventional", detail::fmt_json(report.macro.conventional, percent)},
      {"u", detail::fmt_json(report.macro.u, percent)},
      {"v", detail::fmt_json(report.macro.v, percent)},
      {"f_macro", detail::fmt_json(report.macro.f_macro, percent)},
      {"f_of_means", detail::fmt_json(report.macro.f_of_means, percent)}};
  return out;
}

inline CorpusReport report_from_json(const nlohmann::json& in) {
  if (!in.is_object() || !in.contains("scorer") || !in.contains("per_context") ||
      !in.contains("macro"))
    throw std::invalid_argument("report: malformed report JSON");
  CorpusReport report;
  if (in.contains("metric")) report.metric = in.at("metric").get<std::string>();
  report.scorer = in.at("scorer").get<std::string>();
  for (const auto& [id, row] : in.at("per_context").items()) {
    ContextScore cs;
    cs.conventional = row.at("conventional").get<double>();
    cs.meta.u = row.at("u").get<double>();
    cs.meta.v = row.at("v").get<double>();
    cs.meta.f = row.at("f").get<double>();
    report.per_context.emplace(id, cs);
  }
  const auto& macro = in.at("macro");
  report.macro.conventional = macro.at("conventional").get<double>();
  report.macro.u = macro.at("u").get<double>();
  report.macro.v = macro.at("v").get<double>();
  report.macro.f_macro = macro.at("f_macro").get<double>();
  report.macro.f_of_means = macro.at("f_of_means").get<double>();
  return report;
}

inline std::string render_report(const CorpusReport& report,
                                 OutputFormat format,
                                 const RenderOptions& opts = {}) {
  if (format == OutputFormat::json)
    return report_to_json(report, opts.percent).dump(2) + "\n";

  const bool md = format == OutputFormat::markdown;
  std::ostringstream out;
  auto row = [&](const std::string& id, double conventional, double u,
                 double v, double f) {
    auto c = [&](double x) { return detail::fmt_cell(x, opts.percent); };
    if (md)
      out << "| " << id << " | " << c(conventional) << " | " << c(u) << " | "
          << c(v) << " | " << c(f) << " |\n";
    else
      out << id << "\t" << c(conventional) << "\t" << c(u) << "\t" << c(v)
          << "\t" << c(f) << "\n";
  };

  // Columns follow the P-/R-/F- naming used for the diversity-aware
  // extensions of each metric.
  const std::string& m = report.metric;
  if (md) {
    out << "**scorer:** `" << report.scorer << "`\n\n";
    out << "| context_id | " << m << " | P-" << m << " | R-" << m << " | F-"
        << m << " |\n";
    out << "|---|---:|---:|---:|---:|\n";
  } else {
    out << "# scorer: " << report.scorer << "\n";
    out << "context_id\t" << m << "\tP-" << m << "\tR-" << m << "\tF-" << m
        << "\n";
  }
  for (const auto& [id, cs] : report.per_context)
    row(id, cs.conventional, cs.meta.u, cs.meta.v, cs.meta.f);
  if (opts.emit_f_macro)
    row("macro", report.macro.conventional, report.macro.u, report.macro.v,
        report.macro.f_macro);
  if (opts.emit_f_of_means)
    row("macro_f_of_means", report.macro.conventional, report.macro.u,
        report.macro.v, report.macro.f_of_means);
  return out.str();
}

// Two systems over the same contexts and references, scored side by side.
struct ComparisonRow {
  std::string context_id;
  ContextScore a;
  ContextScore b;
};

struct ComparisonReport {
  std::string metric;
  std::string scorer;
  std::vector<ComparisonRow> rows;
  CorpusMacro macro_a;
  CorpusMacro macro_b;
};

inline ComparisonReport compare_systems(const std::vector<EvalInstance>& a,
                                        const std::vector<EvalInstance>& b,
                                        const ScorerConfig& cfg,
                                        PairingMode pairing = PairingMode::multi_reference,
                                        unsigned threads = 1) {
  CorpusReport ra = meta_corpus(a, cfg, pairing, threads);
  CorpusReport rb = meta_corpus(b, cfg, pairing, threads);

  // The comparison only makes sense over identical evaluation material, so
  // both sides must cover the same contexts with the same references.
  std::map<std::string, const EvalInstance*> by_id;
  for (const auto& inst : a) by_id[inst.context_id] = &inst;
  std::vector<std::string> issues;
  for (const auto& inst : b) {
    auto it = by_id.find(inst.context_id);
    if (it == by_id.end()) {
      issues.push_back("context '" + inst.context_id + "' only in corpus B");
    } else {
      if (it->second->references != inst.references)
        issues.push_back("context '" + inst.context_id +
                         "' has different references in the two corpora");
      by_id.erase(it);
    }
  }
  for (const auto& [id, inst] : by_id)
    issues.push_back("context '" + id + "' only in corpus A");
  if (!issues.empty()) {
    std::string msg = "compare: corpora are not comparable";
    for (const auto& issue : issues) msg += "\n  " + issue;
    throw std::invalid_argument(msg);
  }

  ComparisonReport report;
  report.metric = ra.metric;
  report.scorer = ra.scorer;
  for (const auto& [id, row_a] : ra.per_context) {
    ComparisonRow row;
    row.context_id = id;
    row.a = row_a;
    row.b = rb.per_context.at(id);
    report.rows.push_back(std::move(row));
  }
  report.macro_a = ra.macro;
  report.macro_b = rb.macro;
  return report;
}

inline nlohmann::json comparison_to_json(const ComparisonReport& report,
                                         bool percent = false) {
  auto context_obj = [&](const ContextScore& cs) {
    return nlohmann::json{
        {"conventional", detail::fmt_json(cs.conventional, percent)},
        {"u", detail::fmt_json(cs.meta.u, percent)},
        {"v", detail::fmt_json(cs.meta.v, percent)},
        {"f", detail::fmt_json(cs.meta.f, percent)}};
  };
  auto macro_obj = [&](const CorpusMacro& m) {
    return nlohmann::json{
        {"conventional", detail::fmt_json(m.conventional, percent)},
        {"u", detail::fmt_json(m.u, percent)},
        {"v", detail::fmt_json(m.v, percent)},
        {"f_macro", detail::fmt_json(m.f_macro, percent)},
        {"f_of_means", detail::fmt_json(m.f_of_means, percent)}};
  };
  nlohmann::json out;
  out["metric"] = report.metric;
  out["scorer"] = report.scorer;
  nlohmann::json rows = nlohmann::json::object();
  for (const auto& row : report.rows) {
    rows[row.context_id] = {
        {"a", context_obj(row.a)},
        {"b", context_obj(row.b)},
        {"delta",
         nlohmann::json{
             {"conventional", detail::fmt_json(
                                  row.b.conventional - row.a.conventional,
                                  percent)},
             {"u", detail::fmt_json(row.b.meta.u - row.a.meta.u, percent)},
             {"v", detail::fmt_json(row.b.meta.v - row.a.meta.v, percent)},
             {"f", detail::fmt_json(row.b.meta.f - row.a.meta.f, percent)}}}};
  }
  out["per_context"] = std::move(rows);
  out["macro"] = {{"a", macro_obj(report.macro_a)},
                  {"b", macro_obj(report.macro_b)},
                  {"delta",
                   nlohmann::json{
                       {"conventional",
                        detail::fmt_json(report.macro_b.conventional -
                                             report.macro_a.conventional,
                                         percent)},
                       {"u", detail::fmt_json(
                                 report.macro_b.u - report.macro_a.u, percent)},
                       {"v", detail::fmt_json(
                                 report.macro_b.v - report.macro_a.v, percent)},
                       {"f_macro",
                        detail::fmt_json(
                            report.macro_b.f_macro - report.macro_a.f_macro,
                            percent)},
                       {"f_of_means",
                        detail::fmt_json(report.macro_b.f_of_means -
                                             report.macro_a.f_of_means,
                                         percent)}}}};
  return out;
}

inline std::string render_comparison(const ComparisonReport& report,
                                     OutputFormat format,
                                     const RenderOptions& opts = {}) {
  if (format == OutputFormat::json)
    return comparison_to_json(report, opts.percent).dump(2) + "\n";

  const bool md = format == OutputFormat::markdown;
  std::ostringstream out;
  auto row = [&](const std::string& id, const ContextScore& a,
                 const ContextScore& b) {
    auto c = [&](double x) { return detail::fmt_cell(x, opts.percent); };
    const char* sep = md ? " | " : "\t";
    if (md) out << "| ";
    out << id << sep << c(a.conventional) << sep << c(b.conventional) << sep
        << c(b.conventional - a.conventional) << sep << c(a.meta.u) << sep
        << c(b.meta.u) << sep << c(b.meta.u - a.meta.u) << sep << c(a.meta.v)
        << sep << c(b.meta.v) << sep << c(b.meta.v - a.meta.v) << sep
        << c(a.meta.f) << sep << c(b.meta.f) << sep
        << c(b.meta.f - a.meta.f);
    out << (md ? " |\n" : "\n");
  };
  auto macro_as_context = [](const CorpusMacro& m, bool f_of_means) {
    ContextScore cs;
    cs.conventional = m.conventional;
    cs.meta.u = m.u;
    cs.meta.v = m.v;
    cs.meta.f = f_of_means ? m.f_of_means : m.f_macro;
    return cs;
  };

  const std::string& m = report.metric;
  std::string cols[4] = {m, "P-" + m, "R-" + m, "F-" + m};
  std::ostringstream header;
  header << "context_id";
  for (const auto& col : cols)
    header << (md ? " | " : "\t") << col << "_a" << (md ? " | " : "\t") << col
           << "_b" << (md ? " | " : "\t") << col << "_delta";
  if (md) {
    out << "**scorer:** `" << report.scorer << "`\n\n";
    out << "| " << header.str() << " |\n";
    out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:"
           "|\n";
  } else {
    out << "# scorer: " << report.scorer << "\n" << header.str() << "\n";
  }
  for (const auto& r : report.rows) row(r.context_id, r.a, r.b);
  if (opts.emit_f_macro)
    row("macro", macro_as_context(report.macro_a, false),
        macro_as_context(report.macro_b, false));
  if (opts.emit_f_of_means)
    row("macro_f_of_means", macro_as_context(report.macro_a, true),
        macro_as_context(report.macro_b, true));
  return out.str();
}

}  // namespace qgeval
