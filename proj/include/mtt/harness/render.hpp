#pragma once

#include <sstream>

#include "mtt/graph/instance_io.hpp"
#include "mtt/report.hpp"

namespace mtt {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInputError = 2;

struct RenderOptions {
  bool timings = false;      // wall-clock times vary between runs, so they are opt-in
  bool polynomials = false;  // print both sides in full
  std::size_t max_counterexamples = 10;
};

struct ReportSummary {
  std::size_t checks = 0, verified = 0, failed = 0, skipped = 0;
};

inline ReportSummary summarize(const std::vector<VerificationReport>& reports) {
  ReportSummary s;
  for (const auto& r : reports) {
    ++s.checks;
    if (r.skipped) ++s.skipped;
    else if (r.equal) ++s.verified;
    else ++s.failed;
  }
  return s;
}

inline int exit_code_for(const std::vector<VerificationReport>& reports) {
  return summarize(reports).failed == 0 ? kExitVerified : kExitFailed;
}

inline std::string render_text(const VerificationReport& r, const RenderOptions& opt = {}) {
  std::ostringstream out;
  out << "[" << r.theorem << "] " << r.instance << "\n";
  if (!r.digest.empty()) out << "  digest: " << r.digest << "\n";
  if (r.skipped) {
    out << "  SKIPPED: " << r.note << "\n";
    return out.str();
  }
  out << "  " << r.lhs_label << ": " << r.lhs_terms << " terms\n";
  out << "  " << r.rhs_label << ": " << r.rhs_terms << " terms\n";
  if (opt.polynomials) {
    out << "  lhs = " << r.lhs << "\n";
    out << "  rhs = " << r.rhs << "\n";
  }
  if (!r.note.empty()) out << "  note: " << r.note << "\n";
  if (opt.timings)
    out << "  time: lhs " << r.lhs_seconds << " s, rhs " << r.rhs_seconds << " s\n";
  if (r.equal) {
    out << "  VERIFIED\n";
  } else {
    out << "  FAILED\n";
    if (r.first_difference) out << "  first difference: " << *r.first_difference << "\n";
    const std::size_t shown = std::min(r.counterexamples.size(), opt.max_counterexamples);
    for (std::size_t i = 0; i < shown; ++i) out << "  counterexample: " << r.counterexamples[i] << "\n";
    if (shown < r.counterexamples.size())
      out << "  ... " << r.counterexamples.size() - shown << " more counterexamples\n";
  }
  return out.str();
}

inline std::string render_text(const std::vector<VerificationReport>& reports, const RenderOptions& opt = {}) {
  std::string out;
  for (const auto& r : reports) out += render_text(r, opt);
  const auto s = summarize(reports);
  out += "summary: " + std::to_string(s.checks) + " checks, " + std::to_string(s.verified) + " verified, " +
         std::to_string(s.failed) + " failed, " + std::to_string(s.skipped) + " skipped\n";
  return out;
}

inline Json report_to_json(const VerificationReport& r, bool timings = false) {
  Json j;
  j["theorem"] = r.theorem;
  j["instance"] = r.instance;
  j["digest"] = r.digest;
  j["lhs_label"] = r.lhs_label;
  j["rhs_label"] = r.rhs_label;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["lhs_terms"] = r.lhs_terms;
  j["rhs_terms"] = r.rhs_terms;
  j["equal"] = r.equal;
  j["skipped"] = r.skipped;
  j["note"] = r.note;
  j["first_difference"] = r.first_difference ? Json(*r.first_difference) : Json(nullptr);
  j["counterexamples"] = r.counterexamples;
  if (timings) {
    j["lhs_seconds"] = r.lhs_seconds;
    j["rhs_seconds"] = r.rhs_seconds;
  }
  return j;
}

inline VerificationReport report_from_json(const Json& j) {
  require(j.is_object(), "report must be an object");
  try {
    VerificationReport r;
    r.theorem = j.at("theorem").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.digest = j.at("digest").get<std::string>();
    r.lhs_label = j.at("lhs_label").get<std::string>();
    r.rhs_label = j.at("rhs_label").get<std::string>();
    r.lhs = j.at("lhs").get<std::string>();
    r.rhs = j.at("rhs").get<std::string>();
    r.lhs_terms = j.at("lhs_terms").get<std::size_t>();
    r.rhs_terms = j.at("rhs_terms").get<std::size_t>();
    r.equal = j.at("equal").get<bool>();
    r.skipped = j.at("skipped").get<bool>();
    r.note = j.at("note").get<std::string>();
    if (!j.at("first_difference").is_null()) r.first_difference = j["first_difference"].get<std::string>();
    r.counterexamples = j.at("counterexamples").get<std::vector<std::string>>();
    r.lhs_seconds = j.value("lhs_seconds", 0.0);
    r.rhs_seconds = j.value("rhs_seconds", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

inline std::string render_json(const std::vector<VerificationReport>& reports, const RenderOptions& opt = {}) {
  Json doc;
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(report_to_json(r, opt.timings));
  doc["reports"] = std::move(list);
  const auto s = summarize(reports);
  doc["summary"] = Json{{"checks", s.checks}, {"verified", s.verified}, {"failed", s.failed}, {"skipped", s.skipped}};
  return doc.dump(2) + "\n";
}

inline std::vector<VerificationReport> parse_reports(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report document: ") + e.what());
  }
  require(doc.is_object() && doc.contains("reports") && doc["reports"].is_array(), "report document needs 'reports'");
  std::vector<VerificationReport> out;
  for (const auto& j : doc["reports"]) out.push_back(report_from_json(j));
  return out;
}

}  // namespace mtt
