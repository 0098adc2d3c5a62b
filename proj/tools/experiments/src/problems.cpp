#include <cmath>
#include <fstream>
#include <sstream>

#include "specreg/errors.hpp"
#include "specreg/experiments/runner.hpp"
#include "specreg/gallery.hpp"

namespace specreg::experiments {

namespace {

using nlohmann::json;

class Params {
 public:
  Params(const ExperimentConfig& config, std::initializer_list<std::string_view> allowed)
      : config_(config), p_(config.problem.parameters) {
    for (const auto& [key, value] : p_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(key, "unknown parameter for '" + config.problem.gallery + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    config_fail(config_, "/problem/" + key, what);
  }

  double number(const std::string& key, double fallback) const {
    if (!p_.contains(key)) {
      return fallback;
    }
    if (!p_[key].is_number() || !std::isfinite(p_[key].get<double>())) {
      fail(key, "expected a finite number");
    }
    return p_[key].get<double>();
  }

  double positive(const std::string& key, double fallback) const {
    const double x = number(key, fallback);
    if (!(x > 0.0)) {
      fail(key, "must be > 0");
    }
    return x;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!p_.contains(key)) {
      return fallback;
    }
    if (!p_[key].is_number_integer() || p_[key].get<std::int64_t>() < 1) {
      fail(key, "expected a positive integer");
    }
    return p_[key].get<std::size_t>();
  }

  std::string text(const std::string& key, std::string fallback) const {
    if (!p_.contains(key)) {
      return fallback;
    }
    if (!p_[key].is_string()) {
      fail(key, "expected a string");
    }
    return p_[key].get<std::string>();
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!p_.contains(key)) {
      return fallback;
    }
    if (!p_[key].is_boolean()) {
      fail(key, "expected true or false");
    }
    return p_[key].get<bool>();
  }

  // Discretization overrides win over per-problem values.
  std::size_t nodes(std::size_t fallback) const {
    return config_.discretization.nodes.value_or(count("n", fallback));
  }
  double radius(double fallback) const {
    return config_.discretization.radius.value_or(positive("radius", fallback));
  }

 private:
  const ExperimentConfig& config_;
  const json& p_;
};

MultiplicationOperator load_tabulated(const ExperimentConfig& config) {
  const Params p(config, {"path", "measure", "tail_vanishes"});
  const auto path = p.text("path", "");
  if (path.empty()) {
    p.fail("path", "missing");
  }
  std::ifstream in(path);
  if (!in) {
    p.fail("path", "cannot open '" + path + "'");
  }
  std::vector<double> nodes;
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    double s = 0.0;
    double v = 0.0;
    if (!(row >> s)) {
      continue;  // blank or comment-only
    }
    if (!(row >> v) || !std::isfinite(s) || !std::isfinite(v)) {
      p.fail("path", path + ":" + std::to_string(line_no) + ": expected two numbers");
    }
    if (!nodes.empty() && !(s > nodes.back())) {
      p.fail("path", path + ":" + std::to_string(line_no) + ": nodes must increase");
    }
    nodes.push_back(s);
    values.push_back(v);
  }
  if (nodes.size() < 2) {
    p.fail("path", "need at least two rows");
  }
  const auto kind = p.text("measure", "interval");
  const bool tail = p.flag("tail_vanishes", true);
  if (kind == "counting") {
    auto space = MeasureSpace::counting(nodes.size());
    return MultiplicationOperator(Multiplier::tabulated(space, std::move(values), tail), space);
  }
  MeasureKind mk;
  if (kind == "interval") {
    mk = MeasureKind::lebesgue_interval;
  } else if (kind == "halfline") {
    mk = MeasureKind::lebesgue_halfline;
  } else if (kind == "line") {
    mk = MeasureKind::lebesgue_line;
  } else {
    p.fail("measure", "expected counting, interval, halfline or line");
  }
  // Cells reach halfway to the neighbours; the end cells mirror their
  // inner half.
  std::vector<double> weights(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double left = i > 0 ? nodes[i] - nodes[i - 1] : nodes[1] - nodes[0];
    const double right = i + 1 < nodes.size() ? nodes[i + 1] - nodes[i] : left;
    weights[i] = 0.5 * (left + right);
  }
  const double radius = std::max(std::abs(nodes.front()), std::abs(nodes.back()));
  auto space = MeasureSpace::from_nodes(mk, nodes, std::move(weights),
                                        mk == MeasureKind::lebesgue_interval ? 0.0 : radius);
  return MultiplicationOperator(Multiplier::tabulated(std::move(nodes), std::move(values), tail),
                                std::move(space));
}

}  // namespace

MultiplicationOperator build_problem(const ExperimentConfig& config) {
  const auto& g = config.problem.gallery;
  if (g.empty()) {
    config_fail(config, "/problem", "missing");
  }
  try {
    if (g == "counting_power") {
      const Params p(config, {"n", "kappa"});
      const std::size_t n = p.nodes(500);
      const double kappa = p.positive("kappa", 1.0);
      std::vector<double> b(n);
      for (std::size_t j = 0; j < n; ++j) {
        b[j] = std::pow(static_cast<double>(j + 1), -kappa);
      }
      auto inst = compact_case(std::move(b), n);
      return MultiplicationOperator(inst.multiplier, inst.space);
    }
    if (g == "exponential_halfline") {
      const Params p(config, {"n", "radius"});
      return MultiplicationOperator(
          Multiplier::custom("exp(-s)", [](double s) { return std::exp(-s); }, 1.0),
          MeasureSpace::halfline(p.radius(20.0), p.nodes(1u << 16)));
    }
    if (g == "power_decay") {
      const Params p(config, {"n", "radius", "kappa", "domain"});
      const auto domain = p.text("domain", "halfline");
      const double radius = p.radius(100.0);
      const std::size_t n = p.nodes(1u << 14);
      if (domain != "halfline" && domain != "line") {
        p.fail("domain", "expected halfline or line");
      }
      return MultiplicationOperator(
          Multiplier::power_decay(p.positive("kappa", 1.0)),
          domain == "line" ? MeasureSpace::line(radius, n) : MeasureSpace::halfline(radius, n));
    }
    if (g == "pure_power") {
      const Params p(config, {"n", "kappa", "hi", "grid"});
      const auto grid = p.text("grid", "uniform");
      if (grid != "uniform" && grid != "geometric") {
        p.fail("grid", "expected uniform or geometric");
      }
      const double hi = p.positive("hi", 1.0);
      return MultiplicationOperator(
          Multiplier::pure_power(p.positive("kappa", 1.0), hi),
          MeasureSpace::interval(0.0, hi, p.nodes(1u << 14),
                                 grid == "uniform" ? GridKind::uniform : GridKind::geometric));
    }
    if (g == "gaussian_frequency") {
      const Params p(config, {"n", "radius", "c", "tau", "dimension"});
      const auto dim = static_cast<int>(p.count("dimension", 1));
      return MultiplicationOperator(
          Multiplier::gaussian_frequency(p.positive("c", 1.0), p.positive("tau", 1.0), dim),
          dim == 1 ? MeasureSpace::line(p.radius(6.0), p.nodes(4096))
                   : MeasureSpace::halfline(p.radius(6.0), p.nodes(4096)));
    }
    if (g == "plateau_counterexample") {
      const Params p(config, {"n", "radius"});
      return MultiplicationOperator(Multiplier::plateau_counterexample(),
                                    MeasureSpace::line(p.radius(4.0), p.nodes(4096)));
    }
    if (g == "fvp_bounded") {
      const Params p(config, {"n", "c", "tau", "standard_exponent"});
      auto inst = fvp_multiplier(BoundedDomainFvp{p.positive("c", 1.0), p.positive("tau", 1.0),
                                                  linear_eigenvalues(p.nodes(64)),
                                                  p.flag("standard_exponent", false)});
      return MultiplicationOperator(inst.multiplier, inst.space);
    }
    if (g == "fvp_whole_space") {
      const Params p(config, {"n", "radius", "c", "tau", "dimension"});
      auto inst = fvp_multiplier(WholeSpaceFvp{p.positive("c", 1.0), p.positive("tau", 1.0),
                                               static_cast<int>(p.count("dimension", 1)),
                                               p.radius(8.0), p.nodes(4096)});
      return MultiplicationOperator(inst.multiplier, inst.space);
    }
    if (g == "deconvolution") {
      const Params p(config, {"n", "kernel", "width", "half_width"});
      const auto kernel = p.text("kernel", "exponential");
      KernelFamily family = KernelFamily::exponential;
      if (kernel == "gaussian") {
        family = KernelFamily::gaussian;
      } else if (kernel != "exponential") {
        p.fail("kernel", "expected exponential or gaussian");
      }
      const DeconvolutionProblem problem({family, p.positive("width", 1.0)},
                                         p.positive("half_width", 40.0), p.nodes(2048));
      return MultiplicationOperator(problem.multiplier(), problem.frequency_space());
    }
    return load_tabulated(config);
  } catch (const PreconditionFailed& e) {
    config_fail(config, "/problem", e.what());
  } catch (const EigenvaluesNotDivergent& e) {
    config_fail(config, "/problem", e.what());
  }
}

}  // namespace specreg::experiments
