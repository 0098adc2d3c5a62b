#include "specreg/experiments/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specreg/measure.hpp"

namespace specreg::experiments {

using nlohmann::json;

ConfigError::ConfigError(std::string message, std::string field, std::size_t line,
                         std::size_t column)
    : std::runtime_error(std::move(message)),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

namespace {

constexpr std::array kGalleries = {
    "counting_power", "exponential_halfline", "power_decay",     "pure_power",
    "gaussian_frequency", "plateau_counterexample", "fvp_bounded", "fvp_whole_space",
    "deconvolution",  "tabulated"};

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Best effort: walk the object keys of the pointer through the raw text.
// Repeated key names in sibling objects can fool it; array indices are
// skipped.
Position locate(std::string_view text, const std::string& pointer) {
  std::size_t offset = 0;
  bool found = false;
  std::stringstream ss(pointer);
  std::string token;
  while (std::getline(ss, token, '/')) {
    if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) {
      continue;
    }
    const auto at = text.find("\"" + token + "\"", offset);
    if (at == std::string_view::npos) {
      break;
    }
    offset = at + 1;
    found = true;
  }
  return found ? position_of(text, offset) : Position{};
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    const auto pos = locate(text_, pointer);
    std::string message = pointer + ": " + what;
    if (pos.line > 0) {
      message = "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                ": " + message;
    }
    throw ConfigError(message, pointer, pos.line, pos.column);
  }

  void only_keys(const json& obj, const std::string& at,
                 std::initializer_list<std::string_view> allowed) const {
    if (!obj.is_object()) {
      fail(at, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(at + "/" + key, "unknown key");
      }
    }
  }

  double number(const json& v, const std::string& at) const {
    if (!v.is_number()) {
      fail(at, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(at, "expected a finite number");
    }
    return x;
  }

  double positive(const json& v, const std::string& at) const {
    const double x = number(v, at);
    if (!(x > 0.0)) {
      fail(at, "must be > 0");
    }
    return x;
  }

  std::uint64_t unsigned_integer(const json& v, const std::string& at) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(at, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string(const json& v, const std::string& at) const {
    if (!v.is_string()) {
      fail(at, "expected a string");
    }
    return v.get<std::string>();
  }

  // Either an explicit list or {"from", "to", "points"} on a log scale.
  std::vector<double> positive_list(const json& v, const std::string& at) const {
    std::vector<double> out;
    if (v.is_array()) {
      if (v.empty()) {
        fail(at, "list must not be empty");
      }
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(positive(v[i], at + "/" + std::to_string(i)));
      }
      return out;
    }
    only_keys(v, at, {"from", "to", "points"});
    for (const char* key : {"from", "to", "points"}) {
      if (!v.contains(key)) {
        fail(at + "/" + key, "missing");
      }
    }
    const double from = positive(v["from"], at + "/from");
    const double to = positive(v["to"], at + "/to");
    const auto points = unsigned_integer(v["points"], at + "/points");
    if (points < 1) {
      fail(at + "/points", "must be >= 1");
    }
    if (points == 1) {
      return {from};
    }
    const double step = std::log(to / from) / static_cast<double>(points - 1);
    for (std::uint64_t i = 0; i < points; ++i) {
      out.push_back(from * std::exp(step * static_cast<double>(i)));
    }
    out.back() = to;
    return out;
  }

  IndexSpec index_spec(const json& v, const std::string& at) const {
    only_keys(v, at, {"family", "nu", "beta", "scale"});
    IndexSpec spec;
    if (v.contains("family")) {
      spec.family = string(v["family"], at + "/family");
    }
    if (spec.family != "power" && spec.family != "log_power") {
      fail(at + "/family", "unknown index function family '" + spec.family + "'");
    }
    if (v.contains("nu")) {
      spec.nu = positive(v["nu"], at + "/nu");
    }
    if (v.contains("beta")) {
      spec.beta = number(v["beta"], at + "/beta");
    }
    if (v.contains("scale")) {
      spec.scale = positive(v["scale"], at + "/scale");
    }
    return spec;
  }

 private:
  std::string_view text_;
};

}  // namespace

IndexFunction IndexSpec::build() const {
  if (family == "log_power") {
    return IndexFunction::log_power(nu, beta);
  }
  return IndexFunction::power(nu, scale);
}

std::string IndexSpec::label() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  if (family == "log_power") {
    os << "log_power(" << nu << "," << beta << ")";
  } else {
    os << "power(" << nu << ")";
  }
  return os.str();
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto pos = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("line " + std::to_string(pos.line) + ", column " +
                          std::to_string(pos.column) + ": " + e.what(),
                      "", pos.line, pos.column);
  }
  const Reader r(text);
  r.only_keys(doc, "",
              {"problem", "scheme", "index_function", "qualification", "noise", "replications",
               "seed", "threads", "output_dir", "discretization", "alpha_grid", "alpha",
               "table_points"});

  ExperimentConfig cfg;
  // check-scheme needs no problem; the runner insists where one is needed.
  if (doc.contains("problem")) {
    const auto& problem = doc["problem"];
    if (!problem.is_object()) {
      r.fail("/problem", "expected an object");
    }
    if (!problem.contains("gallery")) {
      r.fail("/problem/gallery", "missing");
    }
    cfg.problem.gallery = r.string(problem["gallery"], "/problem/gallery");
    if (std::find(kGalleries.begin(), kGalleries.end(), cfg.problem.gallery) ==
        kGalleries.end()) {
      r.fail("/problem/gallery", "unknown gallery problem '" + cfg.problem.gallery + "'");
    }
    cfg.problem.parameters = problem;
    cfg.problem.parameters.erase("gallery");
  }

  if (doc.contains("scheme")) {
    cfg.scheme = r.string(doc["scheme"], "/scheme");
  }
  if (doc.contains("index_function")) {
    cfg.index_function = r.index_spec(doc["index_function"], "/index_function");
  }
  if (doc.contains("qualification")) {
    const auto& q = doc["qualification"];
    if (!q.is_array() || q.empty()) {
      r.fail("/qualification", "expected a non-empty list");
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      cfg.qualification.push_back(r.index_spec(q[i], "/qualification/" + std::to_string(i)));
    }
  } else {
    cfg.qualification.push_back(cfg.index_function);
  }

  if (doc.contains("noise")) {
    const auto& noise = doc["noise"];
    r.only_keys(noise, "/noise", {"mode", "deltas"});
    if (noise.contains("mode")) {
      const auto mode = r.string(noise["mode"], "/noise/mode");
      if (mode == "white") {
        cfg.mode = NoiseMode::white;
      } else if (mode != "deterministic") {
        r.fail("/noise/mode", "expected 'deterministic' or 'white'");
      }
    }
    if (noise.contains("deltas")) {
      cfg.deltas = r.positive_list(noise["deltas"], "/noise/deltas");
    }
  }
  if (doc.contains("replications")) {
    cfg.replications = r.unsigned_integer(doc["replications"], "/replications");
    if (cfg.replications < 1) {
      r.fail("/replications", "must be >= 1");
    }
  }
  if (doc.contains("seed")) {
    cfg.seed = r.unsigned_integer(doc["seed"], "/seed");
  }
  if (doc.contains("threads")) {
    cfg.threads = r.unsigned_integer(doc["threads"], "/threads");
    if (cfg.threads < 1) {
      r.fail("/threads", "must be >= 1");
    }
  }
  if (doc.contains("output_dir")) {
    cfg.output_dir = r.string(doc["output_dir"], "/output_dir");
  }
  if (doc.contains("discretization")) {
    const auto& d = doc["discretization"];
    r.only_keys(d, "/discretization", {"nodes", "radius"});
    if (d.contains("nodes")) {
      cfg.discretization.nodes = r.unsigned_integer(d["nodes"], "/discretization/nodes");
      if (*cfg.discretization.nodes < 2) {
        r.fail("/discretization/nodes", "must be >= 2");
      }
    }
    if (d.contains("radius")) {
      cfg.discretization.radius = r.positive(d["radius"], "/discretization/radius");
    }
  }
  if (doc.contains("alpha_grid")) {
    cfg.alpha_grid = r.positive_list(doc["alpha_grid"], "/alpha_grid");
    std::sort(cfg.alpha_grid.begin(), cfg.alpha_grid.end());
    if (std::adjacent_find(cfg.alpha_grid.begin(), cfg.alpha_grid.end()) !=
        cfg.alpha_grid.end()) {
      r.fail("/alpha_grid", "values must be distinct");
    }
  }
  if (doc.contains("alpha")) {
    cfg.alpha = r.positive(doc["alpha"], "/alpha");
  }
  if (doc.contains("table_points")) {
    cfg.table_points = r.unsigned_integer(doc["table_points"], "/table_points");
    if (cfg.table_points < 2) {
      r.fail("/table_points", "must be >= 2");
    }
  }
  cfg.canonical = std::move(doc);
  cfg.source_text = std::string(text);
  return cfg;
}

void config_fail(const ExperimentConfig& config, const std::string& pointer,
                 const std::string& what) {
  Reader(config.source_text).fail(pointer, what);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_digest(const ExperimentConfig& config) {
  json canonical = config.canonical;
  canonical["seed"] = config.seed;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace specreg::experiments
