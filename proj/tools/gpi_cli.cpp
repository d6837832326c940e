// Command-line front end: moments, ratios, inequality checks, sweeps, and
// oracle cross-checks for centered bivariate Gaussian absolute moments.
//
// Exit codes: 0 success (all verdicts hold), 1 usage or domain error,
// 2 at least one Violated verdict or failed cross-check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpi/gpi.hpp"

namespace {

using nlohmann::json;

struct Options {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double rho = 0.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  int m = 1;
  long long samples = 1000000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  double rel_tol = 1e-8;
  int p = 1;
  int q = 1;
  std::string format = "text";
  std::string alpha1_grid = "-0.9,-0.5,-0.1,0.5,1,2,4";
  std::string alpha2_grid = "-0.9,-0.5,-0.1,0.5,1,2,4";
  std::string rho_grid = "0,0.1,-0.1,0.5,-0.5,0.9,-0.9,0.9975,-0.9975";
  std::string z_grid = "0.05:0.85:0.1";
};

int emit_verdict(const gpi::VerdictRecord& rec, gpi::OutputFormat format,
                 std::ostream& os) {
  switch (format) {
    case gpi::OutputFormat::json:
      os << gpi::to_json(rec).dump() << '\n';
      break;
    case gpi::OutputFormat::csv:
      os << gpi::kVerdictCsvHeader << '\n' << gpi::to_csv_row(rec) << '\n';
      break;
    case gpi::OutputFormat::text:
      os << gpi::describe(rec) << '\n';
      break;
  }
  return rec.verdict.verdict == gpi::Verdict::Violated ? 2 : 0;
}

std::string now_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void validate_grid_entries(const std::vector<double>& alphas, const std::vector<double>& rhos) {
  for (const double a : alphas) {
    if (!(a > -1.0)) throw std::invalid_argument("grid: alpha values must exceed -1");
  }
  for (const double r : rhos) {
    if (std::abs(r) > gpi::kRhoCap) {
      throw std::invalid_argument("grid: |rho| must not exceed 0.9975");
    }
  }
}

// One section line of selftest output, kept timestamp-free so identical
// invocations are byte-identical.
struct Section {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::string note;
};

void emit_sections(const std::vector<Section>& sections, gpi::OutputFormat format,
                   std::ostream& os) {
  if (format == gpi::OutputFormat::json) {
    for (const Section& s : sections) {
      json j{{"section", s.name}, {"checks", s.checks}, {"failures", s.failures}};
      if (!s.note.empty()) j["note"] = s.note;
      os << j.dump() << '\n';
    }
    return;
  }
  if (format == gpi::OutputFormat::csv) {
    os << "section,checks,failures,note\n";
    for (const Section& s : sections) {
      os << s.name << ',' << s.checks << ',' << s.failures << ',' << s.note << '\n';
    }
    return;
  }
  for (const Section& s : sections) {
    os << s.name << ": " << s.checks << " checks, " << s.failures << " failures";
    if (!s.note.empty()) os << "  (" << s.note << ")";
    os << '\n';
  }
}

int run_selftest(const Options& opt, std::ostream& os) {
  const gpi::OutputFormat format = gpi::parse_format(opt.format);
  std::vector<Section> sections;
  long total_failures = 0;

  // Bivariate sweep across all regimes including the domain edge.
  gpi::SweepGrid grid;
  grid.alpha1_values = gpi::parse_grid(opt.alpha1_grid);
  grid.alpha2_values = gpi::parse_grid(opt.alpha2_grid);
  grid.rho_values = gpi::parse_grid(opt.rho_grid);
  validate_grid_entries(grid.alpha1_values, grid.rho_values);
  validate_grid_entries(grid.alpha2_values, grid.rho_values);
  const gpi::SweepReport report = gpi::sweep(grid, opt.tolerance);
  {
    Section s{"bivariate_sweep", static_cast<long>(report.records.size()),
              report.counts.total(gpi::Verdict::Violated), ""};
    s.note = "holds_strict=" + std::to_string(report.counts.total(gpi::Verdict::HoldsStrict)) +
             " equality=" + std::to_string(report.counts.total(gpi::Verdict::Equality)) +
             " skipped=" + std::to_string(report.skipped);
    total_failures += s.failures;
    sections.push_back(std::move(s));
  }

  // One-dimensional inequality across the same exponent grid.
  {
    Section s{"one_dim", 0, 0, ""};
    long skipped = 0;
    for (const double a1 : grid.alpha1_values) {
      for (const double a2 : grid.alpha2_values) {
        if (a1 + a2 <= -1.0) {
          ++skipped;
          continue;
        }
        const gpi::InequalityVerdict v = gpi::check_one_dim(a1, a2, opt.tolerance);
        ++s.checks;
        if (v.verdict == gpi::Verdict::Violated) ++s.failures;
      }
    }
    s.note = "skipped=" + std::to_string(skipped);
    total_failures += s.failures;
    sections.push_back(std::move(s));
  }

  // Kernel-derivative sign across regimes.
  {
    Section s{"monotonicity", 0, 0, ""};
    const std::vector<double> zs = gpi::parse_grid(opt.z_grid);
    const std::vector<gpi::ExponentPair> pairs = {
        {-0.9, 0.5}, {-0.5, 2.0}, {-0.1, 4.0}, {-0.5, 1.0}, {2.0, 2.0},  {4.0, 4.0},
        {0.5, 0.5},  {1.0, 2.0},  {-0.5, -0.5}, {-0.9, -0.1}, {-0.5, 4.0}, {-0.9, 4.0}};
    for (const gpi::ExponentPair& pair : pairs) {
      const gpi::InequalityVerdict v = gpi::check_monotonicity(pair, zs);
      ++s.checks;
      if (v.verdict != gpi::Verdict::HoldsStrict) ++s.failures;
    }
    total_failures += s.failures;
    sections.push_back(std::move(s));
  }

  // Closed-form identities: finite even-exponent sum vs the kernel, and the
  // pairing oracle vs both.
  {
    Section s{"identities", 0, 0, ""};
    for (const double a1 : {-0.9, -0.5, 0.5, 2.0, 3.3}) {
      for (const int m : {1, 2, 3, 4}) {
        for (const double rho : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
          const double lhs = gpi::even_exponent_ratio(a1, m, rho);
          const double rhs = gpi::moment_ratio({a1, 2.0 * m}, rho);
          ++s.checks;
          if (std::abs(lhs - rhs) > 1e-9 * std::abs(rhs)) ++s.failures;
        }
      }
    }
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; q <= 3; ++q) {
        for (const double rho : {-0.7, 0.3}) {
          const double wick = gpi::isserlis_even_moment(p, q, rho);
          const double marginals = gpi::double_factorial(std::max(0, 2 * p - 1)) *
                                   gpi::double_factorial(std::max(0, 2 * q - 1));
          const double ratio = gpi::moment_ratio({2.0 * p, 2.0 * q}, rho);
          ++s.checks;
          if (std::abs(wick / marginals - ratio) > 1e-9 * std::abs(ratio)) ++s.failures;
        }
      }
    }
    total_failures += s.failures;
    sections.push_back(std::move(s));
  }

  // Quadrature oracle against the hypergeometric closed form.
  {
    Section s{"quadrature_oracle", 0, 0, ""};
    struct Point {
      double a1, a2, rho;
    };
    const std::vector<Point> points = {{-0.5, 2.0, 0.5}, {2.0, 2.0, 0.5},  {-0.9, 4.0, -0.9},
                                       {1.0, 1.0, 0.0},  {-0.1, -0.5, 0.7}, {4.0, 4.0, 0.9}};
    for (const Point& pt : points) {
      const gpi::ExponentPair pair{pt.a1, pt.a2};
      const gpi::BivariatePairSpec spec{1.0, 1.0, pt.rho};
      const double closed = gpi::joint_abs_moment(pair, spec).value;
      const gpi::QuadratureEstimate est = gpi::quad_joint_moment(pair, spec, 1e-8);
      ++s.checks;
      if (std::abs(est.value - closed) > 1e-7 * std::abs(closed)) ++s.failures;
    }
    total_failures += s.failures;
    sections.push_back(std::move(s));
  }

  // Monte Carlo oracle within 4.5 standard errors (deterministic per seed).
  {
    Section s{"mc_oracle", 0, 0, "seed=" + std::to_string(opt.seed)};
    struct Point {
      double a1, a2, rho;
    };
    const std::vector<Point> points = {{2.0, 2.0, 0.5}, {-0.1, 1.0, 0.3}, {1.0, 4.0, -0.7}};
    for (const Point& pt : points) {
      const gpi::ExponentPair pair{pt.a1, pt.a2};
      const gpi::BivariatePairSpec spec{1.0, 1.0, pt.rho};
      const double closed = gpi::joint_abs_moment(pair, spec).value;
      const gpi::McEstimate est = gpi::mc_joint_moment(pair, spec, opt.samples, opt.seed);
      ++s.checks;
      if (std::abs(est.mean - closed) > 4.5 * est.std_error) ++s.failures;
    }
    total_failures += s.failures;
    sections.push_back(std::move(s));
  }

  Section summary{"selftest", 0, total_failures,
                  total_failures == 0 ? "pass" : "FAIL"};
  for (const Section& s : sections) summary.checks += s.checks;
  sections.push_back(std::move(summary));
  emit_sections(sections, format, os);
  return total_failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate Gaussian absolute-moment calculator and product-inequality verifier"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Output format: text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  CLI::App* moment = app.add_subcommand(
      "moment", "Marginal moment E|X|^a1, or the joint moment when --alpha2 is given");
  moment->add_option("--alpha1", opt.alpha1, "Exponent of |X1|")->required();
  auto* moment_alpha2 = moment->add_option("--alpha2", opt.alpha2, "Exponent of |X2|");
  moment->add_option("--rho", opt.rho, "Correlation of (X1, X2)");
  moment->add_option("--sigma1", opt.sigma1, "Standard deviation of X1");
  moment->add_option("--sigma2", opt.sigma2, "Standard deviation of X2");
  add_format(moment);

  CLI::App* ratio = app.add_subcommand(
      "ratio", "Joint moment over the product of marginals (scale-free)");
  ratio->add_option("--alpha1", opt.alpha1)->required();
  auto* ratio_alpha2 = ratio->add_option("--alpha2", opt.alpha2);
  ratio->add_option("--rho", opt.rho)->required();
  auto* ratio_m = ratio->add_option(
      "--m", opt.m, "Use the exact finite sum for alpha2 = 2m (even exponent)");
  ratio_alpha2->excludes(ratio_m);
  add_format(ratio);

  CLI::App* verify = app.add_subcommand("verify", "Inequality checks");
  verify->require_subcommand(1);
  CLI::App* verify_biv = verify->add_subcommand("bivariate", "joint vs product of marginals");
  CLI::App* verify_one = verify->add_subcommand("one-dim", "1-D moment ratio vs threshold");
  CLI::App* verify_mono =
      verify->add_subcommand("monotonicity", "kernel derivative sign across a z grid");
  bool tolerance_given = false;
  for (CLI::App* cmd : {verify_biv, verify_one, verify_mono}) {
    cmd->add_option("--alpha1", opt.alpha1)->required();
    cmd->add_option("--alpha2", opt.alpha2)->required();
    cmd->add_option("--tolerance", opt.tolerance, "Equality band")
        ->each([&](const std::string&) { tolerance_given = true; });
    add_format(cmd);
  }
  verify_biv->add_option("--rho", opt.rho)->required();
  verify_mono->add_option("--z-grid", opt.z_grid, "Grid of z values (list or start:stop:step)");

  CLI::App* sweep = app.add_subcommand("sweep", "Bivariate checks over a parameter grid");
  sweep->add_option("--alpha1", opt.alpha1_grid, "alpha1 grid (list or start:stop:step)");
  sweep->add_option("--alpha2", opt.alpha2_grid, "alpha2 grid");
  sweep->add_option("--rho", opt.rho_grid, "rho grid");
  sweep->add_option("--tolerance", opt.tolerance);
  add_format(sweep);

  CLI::App* oracle = app.add_subcommand("oracle", "Independent estimators");
  oracle->require_subcommand(1);
  CLI::App* oracle_mc = oracle->add_subcommand("mc", "Monte Carlo joint moment");
  CLI::App* oracle_quad = oracle->add_subcommand("quad", "Adaptive-quadrature joint moment");
  CLI::App* oracle_iss = oracle->add_subcommand("isserlis", "Exact even-moment pairing sum");
  for (CLI::App* cmd : {oracle_mc, oracle_quad}) {
    cmd->add_option("--alpha1", opt.alpha1)->required();
    cmd->add_option("--alpha2", opt.alpha2)->required();
    cmd->add_option("--rho", opt.rho)->required();
    cmd->add_option("--sigma1", opt.sigma1);
    cmd->add_option("--sigma2", opt.sigma2);
    add_format(cmd);
  }
  oracle_mc->add_option("--samples", opt.samples, "Sample count (>= 1000)");
  oracle_mc->add_option("--seed", opt.seed, "Stream seed");
  oracle_quad->add_option("--rel-tol", opt.rel_tol, "Relative tolerance (>= 1e-10)");
  oracle_iss->add_option("--p", opt.p, "X1 exponent is 2p")->required();
  oracle_iss->add_option("--q", opt.q, "X2 exponent is 2q")->required();
  oracle_iss->add_option("--rho", opt.rho)->required();
  add_format(oracle_iss);

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Default verification grid, identity suite, and oracle cross-checks");
  selftest->add_option("--seed", opt.seed, "Monte Carlo stream seed");
  selftest->add_option("--samples", opt.samples, "Monte Carlo sample count");
  selftest->add_option("--tolerance", opt.tolerance);
  add_format(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::ostringstream out;
  int code = 0;
  try {
    const gpi::OutputFormat format = gpi::parse_format(opt.format);
    if (moment->parsed()) {
      const bool joint = moment_alpha2->count() > 0;
      json inputs{{"alpha1", opt.alpha1}, {"sigma1", opt.sigma1}};
      gpi::MomentValue value;
      if (joint) {
        inputs["alpha2"] = opt.alpha2;
        inputs["sigma2"] = opt.sigma2;
        inputs["rho"] = opt.rho;
        value = gpi::joint_abs_moment({opt.alpha1, opt.alpha2},
                                      {opt.sigma1, opt.sigma2, opt.rho});
      } else {
        value = gpi::marginal_abs_moment(opt.alpha1, opt.sigma1);
      }
      const json j = gpi::to_json(value, inputs);
      if (format == gpi::OutputFormat::json) {
        out << j.dump() << '\n';
      } else if (format == gpi::OutputFormat::csv) {
        out << "value,error_bound,method\n"
            << gpi::detail::format_double(value.value) << ','
            << gpi::detail::format_double(value.error_bound) << ','
            << j.at("method").get<std::string>() << '\n';
      } else {
        out << (joint ? "joint" : "marginal")
            << " moment = " << gpi::detail::format_double(value.value)
            << "  (error bound " << gpi::detail::format_double(value.error_bound) << ", "
            << j.at("method").get<std::string>() << ")\n";
      }
    } else if (ratio->parsed()) {
      if (ratio_m->count() > 0) {
        // finite-sum route, exact for alpha2 = 2m
        const double value = gpi::even_exponent_ratio(opt.alpha1, opt.m, opt.rho);
        if (format == gpi::OutputFormat::json) {
          out << json{{"inputs", {{"alpha1", opt.alpha1}, {"m", opt.m}, {"rho", opt.rho}}},
                      {"ratio", value},
                      {"method", "even_exponent_sum"}}
                     .dump()
              << '\n';
        } else if (format == gpi::OutputFormat::csv) {
          out << "ratio,method\n"
              << gpi::detail::format_double(value) << ",even_exponent_sum\n";
        } else {
          out << "ratio = " << gpi::detail::format_double(value)
              << "  (exact finite sum, alpha2 = " << 2 * opt.m << ")\n";
        }
        std::cout << out.str();
        return 0;
      }
      if (ratio_alpha2->count() == 0) {
        throw std::invalid_argument("ratio: requires --alpha2 (or --m for even exponents)");
      }
      const gpi::SeriesEvaluation kernel =
          gpi::moment_ratio_eval({opt.alpha1, opt.alpha2}, opt.rho);
      if (format == gpi::OutputFormat::json) {
        out << json{{"inputs",
                     {{"alpha1", opt.alpha1}, {"alpha2", opt.alpha2}, {"rho", opt.rho}}},
                    {"ratio", kernel.value},
                    {"tail_bound", kernel.tail_bound},
                    {"terms_used", kernel.terms_used}}
                   .dump()
            << '\n';
      } else if (format == gpi::OutputFormat::csv) {
        out << "ratio,tail_bound,terms_used\n"
            << gpi::detail::format_double(kernel.value) << ','
            << gpi::detail::format_double(kernel.tail_bound) << ',' << kernel.terms_used
            << '\n';
      } else {
        out << "ratio = " << gpi::detail::format_double(kernel.value) << "  (tail bound "
            << gpi::detail::format_double(kernel.tail_bound) << ")\n";
      }
    } else if (verify_biv->parsed()) {
      const gpi::InequalityVerdict v =
          tolerance_given ? gpi::check_bivariate({opt.alpha1, opt.alpha2}, opt.rho, opt.tolerance)
                          : gpi::check_bivariate({opt.alpha1, opt.alpha2}, opt.rho);
      code = emit_verdict({opt.alpha1, opt.alpha2, opt.rho, true, v}, format, out);
    } else if (verify_one->parsed()) {
      const gpi::InequalityVerdict v = gpi::check_one_dim(opt.alpha1, opt.alpha2, opt.tolerance);
      code = emit_verdict({opt.alpha1, opt.alpha2, 0.0, false, v}, format, out);
    } else if (verify_mono->parsed()) {
      const std::vector<double> zs = gpi::parse_grid(opt.z_grid);
      const gpi::InequalityVerdict v = gpi::check_monotonicity({opt.alpha1, opt.alpha2}, zs);
      code = emit_verdict({opt.alpha1, opt.alpha2, 0.0, false, v}, format, out);
    } else if (sweep->parsed()) {
      gpi::SweepGrid grid;
      grid.alpha1_values = gpi::parse_grid(opt.alpha1_grid);
      grid.alpha2_values = gpi::parse_grid(opt.alpha2_grid);
      grid.rho_values = gpi::parse_grid(opt.rho_grid);
      validate_grid_entries(grid.alpha1_values, grid.rho_values);
      validate_grid_entries(grid.alpha2_values, grid.rho_values);
      gpi::SweepReport report = gpi::sweep(grid, opt.tolerance);
      report.timestamp = now_timestamp();
      gpi::write_sweep(out, report, format);
      code = report.counts.total(gpi::Verdict::Violated) > 0 ? 2 : 0;
    } else if (oracle_mc->parsed()) {
      const gpi::ExponentPair pair{opt.alpha1, opt.alpha2};
      const gpi::BivariatePairSpec spec{opt.sigma1, opt.sigma2, opt.rho};
      const gpi::McEstimate est = gpi::mc_joint_moment(pair, spec, opt.samples, opt.seed);
      if (format == gpi::OutputFormat::json) {
        out << gpi::to_json(est, pair, spec).dump() << '\n';
      } else if (format == gpi::OutputFormat::csv) {
        out << "mean,std_error,n_samples,seed,variance_finite\n"
            << gpi::detail::format_double(est.mean) << ','
            << gpi::detail::format_double(est.std_error) << ',' << est.n_samples << ','
            << est.seed << ',' << (est.variance_finite ? "true" : "false") << '\n';
      } else {
        out << "mc mean = " << gpi::detail::format_double(est.mean) << "  (std error "
            << gpi::detail::format_double(est.std_error) << ", n=" << est.n_samples
            << ", seed=" << est.seed
            << (est.variance_finite ? ")" : ", error bar unreliable: infinite variance)")
            << '\n';
      }
    } else if (oracle_quad->parsed()) {
      const gpi::ExponentPair pair{opt.alpha1, opt.alpha2};
      const gpi::BivariatePairSpec spec{opt.sigma1, opt.sigma2, opt.rho};
      const gpi::QuadratureEstimate est = gpi::quad_joint_moment(pair, spec, opt.rel_tol);
      if (format == gpi::OutputFormat::json) {
        out << gpi::to_json(est, pair, spec).dump() << '\n';
      } else if (format == gpi::OutputFormat::csv) {
        out << "value,abs_error_estimate,subdivisions\n"
            << gpi::detail::format_double(est.value) << ','
            << gpi::detail::format_double(est.abs_error_estimate) << ',' << est.subdivisions
            << '\n';
      } else {
        out << "quad value = " << gpi::detail::format_double(est.value)
            << "  (error estimate " << gpi::detail::format_double(est.abs_error_estimate)
            << ", subdivisions " << est.subdivisions << ")\n";
      }
    } else if (oracle_iss->parsed()) {
      const double value = gpi::isserlis_even_moment(opt.p, opt.q, opt.rho);
      if (format == gpi::OutputFormat::json) {
        out << json{{"inputs", {{"p", opt.p}, {"q", opt.q}, {"rho", opt.rho}}},
                    {"value", value}}
                   .dump()
            << '\n';
      } else if (format == gpi::OutputFormat::csv) {
        out << "value\n" << gpi::detail::format_double(value) << '\n';
      } else {
        out << "E[X1^" << 2 * opt.p << " X2^" << 2 * opt.q
            << "] = " << gpi::detail::format_double(value) << '\n';
      }
    } else if (selftest->parsed()) {
      code = run_selftest(opt, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout << out.str();
  return code;
}
