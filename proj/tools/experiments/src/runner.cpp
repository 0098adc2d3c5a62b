#include "specreg/experiments/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "specreg/errors.hpp"
#include "specreg/estimator.hpp"
#include "specreg/illposedness.hpp"
#include "specreg/noise.hpp"
#include "specreg/parameter_choice.hpp"
#include "specreg/rate_study.hpp"
#include "specreg/rearrangement.hpp"
#include "specreg/scheme.hpp"

namespace specreg::experiments {

using nlohmann::json;

std::string to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::rearrange:
      return "rearrange";
    case Subcommand::dalpha:
      return "dalpha";
    case Subcommand::check_scheme:
      return "check-scheme";
    case Subcommand::reconstruct:
      return "reconstruct";
    case Subcommand::rates:
      return "rates";
  }
  return "unknown";
}

std::optional<Subcommand> subcommand_from(std::string_view name) {
  for (auto sub : {Subcommand::rearrange, Subcommand::dalpha, Subcommand::check_scheme,
                   Subcommand::reconstruct, Subcommand::rates}) {
    if (to_string(sub) == name) {
      return sub;
    }
  }
  return std::nullopt;
}

json ExperimentReport::summary() const {
  json s;
  s["subcommand"] = to_string(subcommand);
  s["status"] = status;
  s["exit_code"] = exit_code;
  s["digest"] = digest;
  s["seed"] = seed;
  s["rows"] = table.rows.size();
  s["violations"] = violations;
  s["slope"] = slope ? json(*slope) : json(nullptr);
  s["theoretical_slope"] = theoretical_slope ? json(*theoretical_slope) : json(nullptr);
  s["notes"] = notes;
  for (const auto& [key, value] : extra.items()) {
    s[key] = value;
  }
  return s;
}

namespace {

Cell opt(std::optional<double> v) { return v ? Cell(*v) : Cell(std::monostate{}); }

Scheme resolve_scheme(const ExperimentConfig& config) {
  try {
    return scheme_by_name(config.scheme);
  } catch (const PreconditionFailed& e) {
    config_fail(config, "/scheme", e.what());
  }
}

void mark(ExperimentReport& report, const std::string& status, int code) {
  // divergent outranks violation outranks ok
  if (code == exit_code::divergent || report.exit_code == exit_code::ok) {
    report.status = status;
    report.exit_code = code;
  }
}

std::string failure_status(const std::exception& e) { return std::string("divergent: ") + e.what(); }

// ---------------------------------------------------------------------------

void run_rearrange(const ExperimentConfig& config, ExperimentReport& report) {
  const auto op = build_problem(config);
  report.table.columns = {"t", "b_lower_star", "b_upper_star", "level", "d_b", "status"};
  try {
    const auto down = decreasing_rearrangement(op.values(), op.weights());
    const bool finite = !op.space().is_infinite();
    std::optional<Rearrangement> up;
    if (finite) {
      up = increasing_rearrangement(op.values(), op.weights());
    }
    const double total = down.total_measure();
    const auto n = config.table_points;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = total * static_cast<double>(i) / static_cast<double>(n);
      const double level = down(t);
      report.table.add({t, level, up ? Cell((*up)(t)) : Cell(std::monostate{}), level,
                        down.measure_above(level), std::string("ok")});
    }
    report.notes.push_back("rearrangement over measure " + format_double(total) + " (" +
                           std::to_string(op.size()) + " nodes)");
  } catch (const RearrangementUndefined& e) {
    report.table.add({std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                      std::monostate{}, failure_status(e)});
    report.notes.push_back(std::string("rearrangement: DIVERGENT (") + e.what() + ")");
    mark(report, "divergent", exit_code::divergent);
  }
}

void run_dalpha(const ExperimentConfig& config, ExperimentReport& report) {
  const auto op = build_problem(config);
  auto grid = config.alpha_grid;
  if (grid.empty()) {
    grid = log_grid(1e-3 * op.sup_bound(), op.sup_bound(), 31);
  }
  report.table.columns = {"alpha", "D", "D_domain", "lemma_bound", "bound_holds", "status"};
  try {
    const auto profile = effective_illposedness(op, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = profile.D_values[i];
      const double bound = profile.upper_bounds[i];
      const bool holds = d <= bound * (1.0 + 1e-12);
      if (!holds) {
        ++report.violations;
      }
      report.table.add({grid[i], d, profile.D_domain[i], bound, holds,
                        std::string(holds ? "ok" : "violated")});
    }
    report.extra["finite"] = profile.finite;
    if (!profile.finite) {
      report.notes.push_back("D(alpha): DIVERGENT on part of the grid");
      mark(report, "divergent", exit_code::divergent);
    }
  } catch (const RearrangementUndefined& e) {
    for (double a : grid) {
      report.table.add({a, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                        failure_status(e)});
    }
    report.notes.push_back(std::string("D(alpha): DIVERGENT (") + e.what() + ")");
    mark(report, "divergent", exit_code::divergent);
  }
  if (report.violations > 0) {
    report.notes.push_back("lemma bound: VIOLATED at " + std::to_string(report.violations) +
                           " grid points");
    mark(report, "violation", exit_code::violation);
  }
}

void run_check_scheme(const ExperimentConfig& config, ExperimentReport& report) {
  const auto scheme = resolve_scheme(config);
  const double t_max =
      config.problem.gallery.empty() ? 1.0 : build_problem(config).sup_bound();
  const auto grid = default_probe_grid(t_max);
  report.table.columns = {"scheme",         "check",         "index_function", "passed",
                          "c_phi",          "c_phi_refined", "transfer_bound", "detail"};

  const auto axioms = certify_axioms(scheme, grid);
  std::string detail;
  if (axioms.violation) {
    const auto& v = *axioms.violation;
    detail = "item " + std::to_string(v.item) + " fails at alpha=" + format_double(v.alpha) +
             " t=" + format_double(v.t) + " value=" + format_double(v.value);
  }
  report.table.add({scheme.name(), std::string("axioms"), std::monostate{}, axioms.passed,
                    std::monostate{}, std::monostate{}, std::monostate{}, detail});
  report.notes.push_back(std::string("axioms: ") + (axioms.passed ? "PASSED" : "FAILED") +
                         (detail.empty() ? "" : " (" + detail + ")"));
  if (!axioms.passed) {
    ++report.violations;
  }

  for (const auto& spec : config.qualification) {
    const auto cert = certify_qualification(scheme, spec.build(), grid);
    report.table.add({scheme.name(), std::string("qualification"), spec.label(), cert.passed,
                      cert.c_phi, cert.c_phi_refined, opt(cert.transfer_bound),
                      std::string(cert.passed ? "" : "constant grows under refinement")});
    report.notes.push_back("qualification: " + std::string(cert.passed ? "PASSED" : "FAILED") +
                           " (" + spec.label() + ", C_phi " + format_double(cert.c_phi) +
                           ", refined " + format_double(cert.c_phi_refined) + ")");
    if (!cert.passed) {
      ++report.violations;
    }
  }
  if (report.violations > 0) {
    mark(report, "violation", exit_code::violation);
  }
}

IllposednessProfile white_profile(const MultiplicationOperator& op, AlphaBracket bracket) {
  return effective_illposedness(op, log_grid(bracket.lo, op.sup_bound(), 256));
}

void run_reconstruct(const ExperimentConfig& config, ExperimentReport& report) {
  const auto op = build_problem(config);
  const auto scheme = resolve_scheme(config);
  const auto phi = config.index_function.build();
  const double delta = config.deltas.empty() ? 0.0 : config.deltas.front();
  if (config.deltas.size() > 1) {
    report.notes.push_back("reconstruct uses the first noise level only");
  }
  report.table.columns = {"node", "weight", "solution", "data", "estimate", "status"};
  AlphaBracket bracket;
  bracket.hi = op.sup_bound();
  try {
    double alpha = 0.0;
    if (config.alpha) {
      alpha = *config.alpha;
    } else if (delta == 0.0) {
      config_fail(config, "/alpha", "noise-free reconstruction needs an explicit alpha");
    } else if (config.mode == NoiseMode::deterministic) {
      alpha = choose_alpha_deterministic(phi, delta, bracket);
    } else {
      alpha = choose_alpha_white(phi, white_profile(op, bracket), delta, bracket);
    }
    const auto problem = source_problem(op, phi);
    const auto& f = problem.solution;
    std::vector<double> xi(f.size(), 0.0);
    if (delta > 0.0) {
      if (config.mode == NoiseMode::deterministic) {
        xi = adversarial_noise(scheme, alpha, op, f).values;
      } else {
        xi = sample_white(WhiteNoiseSampler(config.seed, 0), op.space());
      }
    }
    auto g = op.apply(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] += delta * xi[i];
    }
    const auto rec = reconstruct(scheme, alpha, op, g);
    std::vector<double> diff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      diff[i] = rec.estimate[i] - f[i];
    }
    const auto nodes = op.space().nodes();
    const auto weights = op.weights();
    for (std::size_t i = 0; i < f.size(); ++i) {
      report.table.add({nodes[i], weights[i], f[i], g[i], rec.estimate[i], std::string("ok")});
    }
    report.extra["alpha"] = alpha;
    report.extra["delta"] = delta;
    report.extra["error"] = op.norm(diff);
    report.notes.push_back("alpha " + format_double(alpha) + ", error " +
                           format_double(op.norm(diff)));
  } catch (const RearrangementUndefined& e) {
    report.table.add({std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                      std::monostate{}, failure_status(e)});
    report.notes.push_back(std::string("reconstruct: DIVERGENT (") + e.what() + ")");
    mark(report, "divergent", exit_code::divergent);
  } catch (const DivergentProfile& e) {
    report.table.add({std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                      std::monostate{}, failure_status(e)});
    report.notes.push_back(std::string("reconstruct: DIVERGENT (") + e.what() + ")");
    mark(report, "divergent", exit_code::divergent);
  }
}

void run_rates(const ExperimentConfig& config, ExperimentReport& report) {
  if (config.deltas.empty()) {
    config_fail(config, "/noise/deltas", "a rate study needs noise levels");
  }
  const auto op = build_problem(config);
  const auto scheme = resolve_scheme(config);
  const auto phi = config.index_function.build();
  report.table.columns = {"delta",         "alpha_star", "error",      "stderr",
                          "bias",          "variance_term", "bound",   "violated",
                          "cross_mean",    "cross_stderr",  "status"};

  const auto grid = default_probe_grid(op.sup_bound());
  const auto axioms = certify_axioms(scheme, grid);
  const auto cert = certify_qualification(scheme, phi, grid);
  report.extra["scheme"] = scheme.name();
  report.extra["index_function"] = config.index_function.label();
  report.extra["noise_mode"] = to_string(config.mode);
  report.extra["axioms_passed"] = axioms.passed;
  report.extra["qualification_passed"] = cert.passed;
  if (!axioms.passed || !cert.passed) {
    report.notes.push_back(std::string("certification: FAILED (axioms ") +
                           (axioms.passed ? "passed" : "failed") + ", qualification " +
                           (cert.passed ? "passed" : "failed") + ")");
    mark(report, "violation", exit_code::violation);
  }

  RateStudyConfig rc;
  rc.mode = config.mode;
  rc.deltas = config.deltas;
  rc.replications = config.replications;
  rc.seed = config.seed;
  rc.threads = config.threads;
  rc.alpha_grid = config.alpha_grid;

  auto divergent = [&](const std::exception& e) {
    for (double d : config.deltas) {
      report.table.add({d, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                        std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                        std::monostate{}, failure_status(e)});
    }
    report.notes.push_back(std::string("rates: DIVERGENT (") + e.what() + ")");
    mark(report, "divergent", exit_code::divergent);
  };

  try {
    const auto problem = source_problem(op, phi);
    const auto rr = evaluate_rates(problem, scheme, phi, rc);
    for (const auto& row : rr.rows) {
      report.table.add({row.delta, row.alpha_star, row.error, row.stderr, row.bias,
                        row.variance_term, row.bound, row.violated, row.cross_mean,
                        row.cross_stderr, std::string(row.violated ? "violated" : "ok")});
    }
    report.slope = rr.slope;
    report.theoretical_slope = rr.theoretical_slope;
    report.violations = rr.violations;
    report.extra["c_phi"] = rr.c_phi;
    std::string line = "rates: " + std::to_string(rr.rows.size()) + " noise levels, " +
                       std::to_string(rr.violations) + " bound violations, slope ";
    line += rr.slope ? format_double(*rr.slope) : std::string("n/a");
    if (rr.theoretical_slope) {
      line += " (theory " + format_double(*rr.theoretical_slope) + ")";
    }
    report.notes.push_back(line);
    if (rr.violations > 0) {
      mark(report, "violation", exit_code::violation);
    }
  } catch (const DivergentProfile& e) {
    divergent(e);
  } catch (const RearrangementUndefined& e) {
    divergent(e);
  }
}

}  // namespace

ExperimentReport run(Subcommand sub, const ExperimentConfig& config) {
  ExperimentReport report;
  report.subcommand = sub;
  report.seed = config.seed;
  report.digest = config_digest(config);
  switch (sub) {
    case Subcommand::rearrange:
      run_rearrange(config, report);
      break;
    case Subcommand::dalpha:
      run_dalpha(config, report);
      break;
    case Subcommand::check_scheme:
      run_check_scheme(config, report);
      break;
    case Subcommand::reconstruct:
      run_reconstruct(config, report);
      break;
    case Subcommand::rates:
      run_rates(config, report);
      break;
  }
  return report;
}

std::filesystem::path write_outputs(const ExperimentReport& report,
                                    const std::filesystem::path& dir, Format format) {
  std::filesystem::create_directories(dir);
  const auto stem = to_string(report.subcommand);
  const auto table_path = dir / (stem + (format == Format::csv ? ".csv" : ".json"));
  {
    std::ofstream out(table_path, std::ios::binary);
    if (format == Format::csv) {
      write_csv(out, report.table);
    } else {
      out << to_json(report.table).dump(2) << '\n';
    }
    if (!out) {
      throw std::runtime_error("cannot write " + table_path.string());
    }
  }
  std::ofstream summary(dir / "summary.json", std::ios::binary);
  summary << report.summary().dump(2) << '\n';
  if (!summary) {
    throw std::runtime_error("cannot write " + (dir / "summary.json").string());
  }
  return table_path;
}

}  // namespace specreg::experiments
