#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "decide.hpp"

namespace gsw {

/// One pass/fail row from the verification harness.
struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double bound = 0.0;
  std::string detail;
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  bool quote = s.find_first_of(",\"\n") != std::string::npos;
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Flat, deterministic rendering of a verdict's maps (std::map is ordered).
inline std::string verdict_data(const Verdict& v) {
  std::string out;
  auto add = [&](const char* tag, const std::map<std::string, double>& m) {
    for (const auto& [k, val] : m) {
      if (!out.empty()) out += ";";
      out += std::string(tag) + "." + k + "=" + num(val);
    }
  };
  add("witness", v.witness);
  add("counterexample", v.counterexample);
  add("horizon", v.horizon);
  return out;
}

inline void csv_row(std::string& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ",";
    out += csv_field(f);
    first = false;
  }
  out += "\n";
}

}  // namespace detail

inline std::string render_certificates_csv(const std::vector<DecisionCertificate>& certs) {
  std::string out;
  detail::csv_row(out, {"certificate", "section", "name", "status", "data", "note"});
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const DecisionCertificate& c = certs[i];
    std::string id = std::to_string(i);
    detail::csv_row(out, {id, "query", "space_a", c.space_a, "", ""});
    detail::csv_row(out, {id, "query", "space_b", c.space_b, "", ""});
    detail::csv_row(out, {id, "query", "kind", c.kind, "", ""});
    detail::csv_row(out, {id, "query", "model", c.model, "", ""});
    for (const auto& [name, v] : c.hypotheses)
      detail::csv_row(out, {id, "hypothesis", name, to_string(v.status),
                            detail::verdict_data(v), v.note});
    detail::csv_row(out, {id, "hypothesis", "nontriviality",
                          to_string(c.nontriviality.status),
                          detail::verdict_data(c.nontriviality), c.nontriviality.note});
    detail::csv_row(out, {id, "relation", "M [subseteq] N",
                          to_string(c.relation_sequences.status),
                          detail::verdict_data(c.relation_sequences),
                          c.relation_sequences.note});
    detail::csv_row(out, {id, "relation", "W [subseteq] V",
                          to_string(c.relation_functions.status),
                          detail::verdict_data(c.relation_functions),
                          c.relation_functions.note});
    detail::csv_row(out, {id, "conclusion", "inclusion", to_string(c.conclusion), "",
                          c.note});
  }
  return out;
}

inline std::string render_checks_csv(const std::vector<CheckResult>& checks) {
  std::string out;
  detail::csv_row(out, {"suite", "check", "result", "observed", "bound", "detail"});
  for (const auto& c : checks)
    detail::csv_row(out, {c.suite, c.name, c.passed ? "pass" : "fail",
                          detail::num(c.observed), detail::num(c.bound), c.detail});
  return out;
}

inline std::string render_summary(const std::vector<DecisionCertificate>& certs,
                                  const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : certs) {
    out += c.space_a + "  ->  " + c.space_b + "\n";
    out += "  kind: " + c.kind + "   model: " + c.model + "\n";
    for (const auto& [name, v] : c.hypotheses)
      out += "  hypothesis " + name + ": " + to_string(v.status) + "\n";
    if (c.nontriviality.status != Status::Inconclusive || !c.nontriviality.note.empty())
      out += "  nontriviality: " + std::string(to_string(c.nontriviality.status)) + "\n";
    out += "  relation M [subseteq] N: " +
           std::string(to_string(c.relation_sequences.status)) + "\n";
    out += "  relation W [subseteq] V: " +
           std::string(to_string(c.relation_functions.status)) + "\n";
    out += "  conclusion: " + std::string(to_string(c.conclusion));
    if (!c.note.empty()) out += "  (" + c.note + ")";
    out += "\n\n";
  }
  if (!checks.empty()) {
    std::size_t passed = 0;
    for (const auto& c : checks) {
      out += std::string(c.passed ? "pass" : "FAIL") + "  " + c.suite + "/" + c.name;
      if (!c.detail.empty()) out += "  " + c.detail;
      out += "\n";
      passed += c.passed ? 1 : 0;
    }
    out += std::to_string(passed) + "/" + std::to_string(checks.size()) +
           " checks passed\n";
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

inline void write_report(const std::string& out_dir,
                         const std::vector<DecisionCertificate>& certs,
                         const std::vector<CheckResult>& checks) {
  std::string csv = render_certificates_csv(certs);
  if (!checks.empty()) csv += render_checks_csv(checks);
  write_file(out_dir + "/certificate.csv", csv);
  write_file(out_dir + "/summary.txt", render_summary(certs, checks));
}

}  // namespace gsw
