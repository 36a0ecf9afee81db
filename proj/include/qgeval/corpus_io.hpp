#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "qgeval/meta.hpp"
#include "qgeval/tokens.hpp"

namespace qgeval {

// Validation failure while reading a corpus. Problems are collected rather
// than thrown one at a time so a bad file is diagnosed in one pass; the
// count is capped to keep the message useful on garbage input.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::string source, std::vector<std::string> issues,
              bool truncated)
      : std::runtime_error(format(source, issues, truncated)),
        source_(std::move(source)),
        issues_(std::move(issues)),
        truncated_(truncated) {}

  const std::vector<std::string>& issues() const { return issues_; }
  bool truncated() const { return truncated_; }
  const std::string& source() const { return source_; }

 private:
  static std::string format(const std::string& source,
                            const std::vector<std::string>& issues,
                            bool truncated) {
    std::ostringstream out;
    out << source << ": " << issues.size() << " problem"
        << (issues.size() == 1 ? "" : "s");
    if (truncated) out << " (further problems suppressed)";
    for (const auto& issue : issues) out << "\n  " << issue;
    return out.str();
  }

  std::string source_;
  std::vector<std::string> issues_;
  bool truncated_;
};

namespace detail {

constexpr std::size_t kMaxCorpusIssues = 50;

class IssueLog {
 public:
  explicit IssueLog(std::string source) : source_(std::move(source)) {}

  bool add(long line, const std::string& what) {
    if (issues_.size() >= kMaxCorpusIssues) {
      truncated_ = true;
      return false;
    }
    std::ostringstream out;
    out << "line " << line << ": " << what;
    issues_.push_back(out.str());
    return true;
  }

  void finish() const {
    if (!issues_.empty()) throw CorpusError(source_, issues_, truncated_);
  }

 private:
  std::string source_;
  std::vector<std::string> issues_;
  bool truncated_ = false;
};

inline TokenSeq corpus_tokenize(const std::string& text, bool pretokenized) {
  return pretokenized ? split_pretokenized(text) : tokenize(text);
}

}  // namespace detail

// Reads a JSONL corpus: one object per line with string "context_id",
// string "context", and non-empty string arrays "references" and
// "predictions". Blank lines are ignored. Texts are split on whitespace by
// default; pass pretokenized=false to run the full tokenizer on raw prose.
// Reference-only files (for synthetic generation) may omit "predictions"
// when need_predictions is false.
inline std::vector<EvalInstance> read_corpus(std::istream& in,
                                             bool pretokenized = true,
                                             const std::string& source = "<stream>",
                                             bool need_predictions = true) {
  detail::IssueLog log(source);
  std::unordered_set<std::string> seen_ids;
  std::vector<EvalInstance> corpus;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded()) {
      log.add(line_no, "not valid JSON");
      continue;
    }
    if (!row.is_object()) {
      log.add(line_no, "row is not a JSON object");
      continue;
    }

    EvalInstance inst;
    bool ok = true;
    auto take_string = [&](const char* field, std::string& dst,
                           bool required) {
      auto it = row.find(field);
      if (it == row.end()) {
        if (required) {
          log.add(line_no, std::string("missing field '") + field + "'");
          ok = false;
        }
        return;
      }
      if (!it->is_string()) {
        log.add(line_no, std::string("field '") + field + "' is not a string");
        ok = false;
        return;
      }
      dst = it->get<std::string>();
    };
    auto take_texts = [&](const char* field, std::vector<TokenSeq>& dst) {
      auto it = row.find(field);
      if (it == row.end()) {
        log.add(line_no, std::string("missing field '") + field + "'");
        ok = false;
        return;
      }
      if (!it->is_array() || it->empty()) {
        log.add(line_no,
                std::string("field '") + field + "' must be a non-empty array");
        ok = false;
        return;
      }
      for (const auto& item : *it) {
        if (!item.is_string()) {
          log.add(line_no,
                  std::string("field '") + field + "' contains a non-string");
          ok = false;
          return;
        }
        TokenSeq seq =
            detail::corpus_tokenize(item.get<std::string>(), pretokenized);
        if (seq.empty()) {
          log.add(line_no, std::string("field '") + field +
                               "' contains a text with no tokens");
          ok = false;
          return;
        }
        dst.push_back(std::move(seq));
      }
    };

    take_string("context_id", inst.context_id, true);
    take_string("context", inst.context, false);
    take_texts("references", inst.references);
    if (need_predictions || row.contains("predictions"))
      take_texts("predictions", inst.predictions);
    if (!ok) continue;
    if (inst.context_id.empty()) {
      log.add(line_no, "context_id is empty");
      continue;
    }
    if (!seen_ids.insert(inst.context_id).second) {
      log.add(line_no, "duplicate context_id '" + inst.context_id + "'");
      continue;
    }
    corpus.push_back(std::move(inst));
  }
  log.finish();
  if (corpus.empty())
    throw CorpusError(source, {"line 0: corpus has no rows"}, false);
  return corpus;
}

inline std::vector<EvalInstance> load_corpus(const std::string& path,
                                             bool pretokenized = true,
                                             bool need_predictions = true) {
  std::ifstream in(path);
  if (!in)
    throw CorpusError(path, {"line 0: cannot open file"}, false);
  return read_corpus(in, pretokenized, path, need_predictions);
}

// Writes the corpus back as JSONL with tokens joined by single spaces, a
// form that reloads identically in pretokenized mode.
inline void write_corpus(std::ostream& out,
                         const std::vector<EvalInstance>& corpus) {
  for (const auto& inst : corpus) {
    nlohmann::json row;
    row["context_id"] = inst.context_id;
    row["context"] = inst.context;
    auto texts = [](const std::vector<TokenSeq>& seqs) {
      std::vector<std::string> out;
      out.reserve(seqs.size());
      for (const auto& s : seqs) out.push_back(detokenize(s));
      return out;
    };
    row["references"] = texts(inst.references);
    row["predictions"] = texts(inst.predictions);
    out << row.dump() << "\n";
  }
}

}  // namespace qgeval
