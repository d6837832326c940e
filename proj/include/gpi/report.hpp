#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gpi/moments.hpp"
#include "gpi/oracle.hpp"
#include "gpi/verify.hpp"

namespace gpi {

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw std::invalid_argument("format must be text, json, or csv");
}

// A verdict record bundled with the inputs that produced it; the unit of
// machine-readable output.  rho is meaningful for bivariate statements only.
struct VerdictRecord {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double rho = 0.0;
  bool has_rho = true;
  InequalityVerdict verdict;
};

inline nlohmann::json to_json(const VerdictRecord& rec) {
  nlohmann::json inputs;
  inputs["alpha1"] = rec.alpha1;
  inputs["alpha2"] = rec.alpha2;
  if (rec.has_rho) inputs["rho"] = rec.rho;
  inputs["tolerance"] = rec.verdict.tolerance;
  return nlohmann::json{{"inputs", inputs},
                        {"statement", to_string(rec.verdict.statement)},
                        {"ratio", rec.verdict.ratio},
                        {"threshold", rec.verdict.threshold},
                        {"margin", rec.verdict.margin},
                        {"verdict", to_string(rec.verdict.verdict)},
                        {"error_bound", rec.verdict.error_bound},
                        {"method", rec.verdict.method}};
}

inline Statement statement_from_string(const std::string& s) {
  for (const Statement v :
       {Statement::BivariateGPI, Statement::BivariateOppositeGPI, Statement::OneDimUpper,
        Statement::OneDimLower, Statement::MonotoneDecreasing, Statement::MonotoneIncreasing}) {
    if (s == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown statement tag: " + s);
}

inline Verdict verdict_from_string(const std::string& s) {
  for (const Verdict v : {Verdict::HoldsStrict, Verdict::Equality, Verdict::Violated}) {
    if (s == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown verdict tag: " + s);
}

inline VerdictRecord verdict_record_from_json(const nlohmann::json& j) {
  VerdictRecord rec;
  const auto& inputs = j.at("inputs");
  rec.alpha1 = inputs.at("alpha1").get<double>();
  rec.alpha2 = inputs.at("alpha2").get<double>();
  rec.has_rho = inputs.contains("rho");
  if (rec.has_rho) rec.rho = inputs.at("rho").get<double>();
  rec.verdict.tolerance = inputs.at("tolerance").get<double>();
  rec.verdict.statement = statement_from_string(j.at("statement").get<std::string>());
  rec.verdict.ratio = j.at("ratio").get<double>();
  rec.verdict.threshold = j.at("threshold").get<double>();
  rec.verdict.margin = j.at("margin").get<double>();
  rec.verdict.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  rec.verdict.error_bound = j.at("error_bound").get<double>();
  rec.verdict.method = j.at("method").get<std::string>();
  return rec;
}

namespace detail {

// Shortest round-trip formatting for text/CSV output (JSON output gets this
// from the serializer already).
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = 0.0;
  for (int precision = 15; precision <= 16; ++precision) {
    char trial[32];
    std::snprintf(trial, sizeof(trial), "%.*g", precision, v);
    std::sscanf(trial, "%lf", &parsed);
    if (parsed == v) return trial;
  }
  return buf;
}

}  // namespace detail

inline const char* kVerdictCsvHeader =
    "alpha1,alpha2,rho,statement,ratio,threshold,margin,verdict,error_bound,method";

inline std::string to_csv_row(const VerdictRecord& rec) {
  std::string row;
  row += detail::format_double(rec.alpha1);
  row += ',';
  row += detail::format_double(rec.alpha2);
  row += ',';
  if (rec.has_rho) row += detail::format_double(rec.rho);
  row += ',';
  row += to_string(rec.verdict.statement);
  row += ',';
  row += detail::format_double(rec.verdict.ratio);
  row += ',';
  row += detail::format_double(rec.verdict.threshold);
  row += ',';
  row += detail::format_double(rec.verdict.margin);
  row += ',';
  row += to_string(rec.verdict.verdict);
  row += ',';
  row += detail::format_double(rec.verdict.error_bound);
  row += ',';
  row += rec.verdict.method;
  return row;
}

inline std::string describe(const VerdictRecord& rec) {
  std::string line = to_string(rec.verdict.statement);
  line += ": alpha1=" + detail::format_double(rec.alpha1);
  line += " alpha2=" + detail::format_double(rec.alpha2);
  if (rec.has_rho) line += " rho=" + detail::format_double(rec.rho);
  line += "  ratio=" + detail::format_double(rec.verdict.ratio);
  line += " threshold=" + detail::format_double(rec.verdict.threshold);
  line += " margin=" + detail::format_double(rec.verdict.margin);
  line += "  -> ";
  line += to_string(rec.verdict.verdict);
  return line;
}

inline nlohmann::json to_json(const McEstimate& est, const ExponentPair& pair,
                              const BivariatePairSpec& spec) {
  return nlohmann::json{
      {"inputs",
       {{"alpha1", pair.alpha1},
        {"alpha2", pair.alpha2},
        {"rho", spec.rho},
        {"sigma1", spec.sigma1},
        {"sigma2", spec.sigma2},
        {"n_samples", est.n_samples},
        {"seed", est.seed}}},
      {"mean", est.mean},
      {"std_error", est.std_error},
      {"variance_finite", est.variance_finite}};
}

inline nlohmann::json to_json(const QuadratureEstimate& est, const ExponentPair& pair,
                              const BivariatePairSpec& spec) {
  return nlohmann::json{{"inputs",
                         {{"alpha1", pair.alpha1},
                          {"alpha2", pair.alpha2},
                          {"rho", spec.rho},
                          {"sigma1", spec.sigma1},
                          {"sigma2", spec.sigma2}}},
                        {"value", est.value},
                        {"abs_error_estimate", est.abs_error_estimate},
                        {"subdivisions", est.subdivisions}};
}

inline nlohmann::json to_json(const MomentValue& m, nlohmann::json inputs) {
  const char* method = m.method == MomentMethod::closed_form      ? "closed_form"
                       : m.method == MomentMethod::hypergeometric ? "hypergeometric"
                                                                  : "limit_rho_one";
  return nlohmann::json{{"inputs", std::move(inputs)},
                        {"value", m.value},
                        {"error_bound", m.error_bound},
                        {"method", method}};
}

// Machine-format sweep serialization.  The wall-clock timestamp stays out of
// the JSON/CSV forms so identical inputs produce byte-identical output.
inline void write_sweep(std::ostream& os, const SweepReport& report, OutputFormat format) {
  if (format == OutputFormat::csv) {
    os << kVerdictCsvHeader << ",skip_reason\n";
    for (const SweepRecord& rec : report.records) {
      if (rec.skipped) {
        os << detail::format_double(rec.alpha1) << ',' << detail::format_double(rec.alpha2)
           << ',' << detail::format_double(rec.rho) << ",,,,,skipped,," << ','
           << rec.skip_reason << '\n';
      } else {
        os << to_csv_row({rec.alpha1, rec.alpha2, rec.rho, true, rec.verdict}) << ",\n";
      }
    }
    return;
  }
  if (format == OutputFormat::json) {
    for (const SweepRecord& rec : report.records) {
      if (rec.skipped) {
        os << nlohmann::json{{"inputs",
                              {{"alpha1", rec.alpha1},
                               {"alpha2", rec.alpha2},
                               {"rho", rec.rho}}},
                             {"skipped", true},
                             {"reason", rec.skip_reason}}
                  .dump()
           << '\n';
      } else {
        os << to_json(VerdictRecord{rec.alpha1, rec.alpha2, rec.rho, true, rec.verdict}).dump()
           << '\n';
      }
    }
    nlohmann::json summary{{"summary",
                            {{"records", report.records.size()},
                             {"holds_strict", report.counts.total(Verdict::HoldsStrict)},
                             {"equality", report.counts.total(Verdict::Equality)},
                             {"violated", report.counts.total(Verdict::Violated)},
                             {"skipped", report.skipped},
                             {"tolerance", report.tolerance},
                             {"version", report.version},
                             {"max_series_terms", report.max_series_terms},
                             {"rho_cap", report.rho_cap}}}};
    os << summary.dump() << '\n';
    return;
  }
  for (const SweepRecord& rec : report.records) {
    if (rec.skipped) {
      os << "skipped: alpha1=" << detail::format_double(rec.alpha1)
         << " alpha2=" << detail::format_double(rec.alpha2)
         << " rho=" << detail::format_double(rec.rho) << "  (" << rec.skip_reason << ")\n";
    } else {
      os << describe({rec.alpha1, rec.alpha2, rec.rho, true, rec.verdict}) << '\n';
    }
  }
  os << "---\n";
  const char* regime_names[4] = {"SameSignPositive", "SameSignNegative", "OppositeSign",
                                 "Degenerate"};
  for (int r = 0; r < 4; ++r) {
    os << regime_names[r] << ": holds_strict="
       << report.counts.table[static_cast<std::size_t>(r)][0]
       << " equality=" << report.counts.table[static_cast<std::size_t>(r)][1]
       << " violated=" << report.counts.table[static_cast<std::size_t>(r)][2] << '\n';
  }
  os << "records=" << report.records.size() << " skipped=" << report.skipped
     << " tolerance=" << detail::format_double(report.tolerance)
     << " version=" << report.version;
  if (!report.timestamp.empty()) os << " timestamp=" << report.timestamp;
  os << '\n';
}

}  // namespace gpi
