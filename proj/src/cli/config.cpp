#include "pi2ch/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pi2ch::cli {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Typed access to one JSON object, remembering its dotted path.
class Section {
 public:
  Section(const json& node, std::string path, std::set<std::string> allowed) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + " must be an object");
    for (const auto& [key, value] : node_.items()) {
      if (!allowed.count(key)) throw ConfigError("unknown key \"" + join(path_, key) + "\"");
    }
  }

  const json* find(const std::string& key) const {
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }
  std::string path(const std::string& key) const { return join(path_, key); }

  void number(const std::string& key, double& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(path(key) + " must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(path(key) + " must be finite");
    }
  }
  void number(const std::string& key, std::optional<double>& out) const {
    if (find(key)) {
      double v = 0.0;
      number(key, v);
      out = v;
    }
  }
  template <class Int>
  void integer(const std::string& key, Int& out) const {
    if (const json* v = find(key)) out = as_integer<Int>(*v, path(key));
  }
  void boolean(const std::string& key, bool& out) const {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key) + " must be true or false");
      out = v->get<bool>();
    }
  }
  void string(const std::string& key, std::string& out) const {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(path(key) + " must be a string");
      out = v->get<std::string>();
    }
  }

  template <class Int>
  static Int as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + " must be an integer");
    if (v.is_number_unsigned()) {
      const auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) throw ConfigError(path + " is out of range");
      return static_cast<Int>(u);
    }
    const auto i = v.get<std::int64_t>();
    if constexpr (std::is_unsigned_v<Int>) {
      if (i < 0) throw ConfigError(path + " must be non-negative");
    } else {
      if (i < std::numeric_limits<Int>::min() || i > std::numeric_limits<Int>::max())
        throw ConfigError(path + " is out of range");
    }
    return static_cast<Int>(i);
  }

 private:
  std::string where() const { return path_.empty() ? "configuration" : path_; }

  const json& node_;
  std::string path_;
};

Fraction parse_fraction(const json& v, const std::string& path) {
  Fraction f;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::istringstream in(s);
    char slash = 0;
    if (!(in >> f.num >> slash >> f.den) || slash != '/' || !(in >> std::ws).eof())
      throw ConfigError(path + " must look like \"2/3\"");
  } else if (v.is_array() && v.size() == 2) {
    f.num = Section::as_integer<long>(v[0], path + "[0]");
    f.den = Section::as_integer<long>(v[1], path + "[1]");
  } else {
    throw ConfigError(path + " must be a string \"p/q\" or an array [p, q]");
  }
  if (f.num <= 0 || f.den <= 0 || f.num > f.den) throw ConfigError(path + " must lie in (0, 1]");
  return f;
}

std::vector<FourierMode> parse_modes(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + " must be an array of modes");
  std::vector<FourierMode> modes;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Section m(v[i], path + "[" + std::to_string(i) + "]", {"k", "cos", "sin"});
    FourierMode mode{.k = -1};
    if (!m.find("k")) throw ConfigError(m.path("k") + " is required");
    m.integer("k", mode.k);
    m.number("cos", mode.cos_coeff);
    m.number("sin", mode.sin_coeff);
    modes.push_back(mode);
  }
  return modes;
}

ProfileSpec parse_profile(const json& v, const std::string& path) {
  ProfileSpec p;
  if (v.is_string()) {
    p.preset = v.get<std::string>();
    return p;
  }
  if (v.is_array()) {
    p.preset = "modes";
    p.modes = parse_modes(v, path);
    return p;
  }
  const Section s(v, path, {"preset", "amplitude", "offset", "shift", "center", "width", "modes"});
  if (s.find("modes") && !s.find("preset")) p.preset = "modes";
  s.string("preset", p.preset);
  s.number("amplitude", p.amplitude);
  s.number("offset", p.offset);
  s.number("shift", p.shift);
  s.number("center", p.center);
  s.number("width", p.width);
  if (const json* m = s.find("modes")) p.modes = parse_modes(*m, s.path("modes"));
  return p;
}

}  // namespace

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }

  RunConfig c;
  const Section top(root, "", {"grid", "time", "scheme", "initial", "output", "seed", "solver", "curvature", "verify"});
  top.string("scheme", c.scheme);
  top.integer("seed", c.seed);

  if (const json* v = top.find("grid")) {
    const Section s(*v, "grid", {"n", "dealias_fraction"});
    s.integer("n", c.n);
    if (const json* f = s.find("dealias_fraction")) c.dealias_fraction = parse_fraction(*f, s.path("dealias_fraction"));
  }
  if (const json* v = top.find("time")) {
    const Section s(*v, "time", {"dt", "t_end", "snapshot_stride"});
    s.number("dt", c.dt);
    s.number("t_end", c.t_end);
    s.integer("snapshot_stride", c.snapshot_stride);
  }
  if (const json* v = top.find("initial")) {
    const Section s(*v, "initial", {"u", "rho"});
    if (const json* u = s.find("u")) c.initial_u = parse_profile(*u, "initial.u");
    if (const json* r = s.find("rho")) c.initial_rho = parse_profile(*r, "initial.rho");
  }
  if (const json* v = top.find("output")) {
    const Section s(*v, "output", {"directory", "formats"});
    std::string dir = c.output_directory.string();
    s.string("directory", dir);
    c.output_directory = dir;
    if (const json* f = s.find("formats")) {
      if (!f->is_array()) throw ConfigError("output.formats must be an array");
      c.formats.clear();
      for (const auto& item : *f) {
        if (!item.is_string()) throw ConfigError("output.formats entries must be strings");
        c.formats.push_back(item.get<std::string>());
      }
    }
  }
  if (const json* v = top.find("solver")) {
    const Section s(*v, "solver",
                    {"min_phix_floor", "field_ceiling", "diagnostics_stride", "interpolation", "density_coupling"});
    s.number("min_phix_floor", c.min_phix_floor);
    s.number("field_ceiling", c.field_ceiling);
    s.integer("diagnostics_stride", c.diagnostics_stride);
    s.boolean("density_coupling", c.density_coupling);
    std::string kind;
    s.string("interpolation", kind);
    if (kind == "trigonometric") {
      c.interpolation = InterpolationKind::trigonometric;
    } else if (kind == "cubic_spline") {
      c.interpolation = InterpolationKind::cubic_spline;
    } else if (!kind.empty()) {
      throw ConfigError("solver.interpolation must be \"trigonometric\" or \"cubic_spline\"");
    }
  }
  if (const json* v = top.find("curvature")) {
    const Section s(*v, "curvature", {"pair_count", "max_mode", "pairs", "include_counterexample"});
    s.integer("pair_count", c.curvature.pair_count);
    s.integer("max_mode", c.curvature.max_mode);
    s.boolean("include_counterexample", c.curvature.include_counterexample);
    std::string pairs;
    s.string("pairs", pairs);
    if (pairs == "random") {
      c.curvature.pairs = ScanPairKind::random;
    } else if (pairs == "ch_reduced") {
      c.curvature.pairs = ScanPairKind::ch_reduced;
    } else if (pairs == "degenerate") {
      c.curvature.pairs = ScanPairKind::degenerate;
    } else if (!pairs.empty()) {
      throw ConfigError("curvature.pairs must be \"random\", \"ch_reduced\" or \"degenerate\"");
    }
  }
  if (const json* v = top.find("verify")) {
    const Section s(*v, "verify", {"trials", "max_mode", "inject_fault"});
    s.integer("trials", c.verify.trials);
    s.integer("max_mode", c.verify.max_mode);
    s.string("inject_fault", c.verify.inject_fault);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void apply_overrides(RunConfig& config, const Overrides& o) {
  if (o.seed) config.seed = *o.seed;
  if (o.n) config.n = *o.n;
  if (o.dt) config.dt = *o.dt;
  if (o.t_end) config.t_end = *o.t_end;
  if (o.out) config.output_directory = *o.out;
}

GridSpec grid_of(const RunConfig& config) {
  try {
    return GridSpec(config.n, config.dealias_fraction);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid.n: ") + e.what());
  }
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.grid = grid_of(c);
  s.dt = c.dt;
  s.t_end = c.t_end;
  s.scheme = Scheme::rk4;
  s.min_phix_floor = c.min_phix_floor;
  s.field_ceiling = c.field_ceiling;
  s.snapshot_stride = c.snapshot_stride;
  s.diagnostics_stride = c.diagnostics_stride;
  s.density_coupling = c.density_coupling;
  s.interpolation = c.interpolation;
  return s;
}

void validate(const RunConfig& c) {
  const GridSpec grid = grid_of(c);
  if (c.scheme != "rk4") throw ConfigError("scheme must be \"rk4\"");
  for (const auto& f : c.formats)
    if (f != "csv" && f != "json") throw ConfigError("output.formats entries must be \"csv\" or \"json\"");
  if (c.output_directory.empty()) throw ConfigError("output.directory must not be empty");
  try {
    solver_config(c).validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  try {
    validate_profile(c.initial_u, grid);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("initial.u: ") + e.what());
  }
  try {
    validate_profile(c.initial_rho, grid);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("initial.rho: ") + e.what());
  }
  const int top_mode = static_cast<int>(grid.nyquist()) - 1;
  if (c.curvature.pair_count < 1) throw ConfigError("curvature.pair_count must be >= 1");
  if (c.curvature.max_mode < 0 || c.curvature.max_mode > top_mode)
    throw ConfigError("curvature.max_mode must lie in [0, n/2 - 1]");
  if (c.verify.trials < 1) throw ConfigError("verify.trials must be >= 1");
  if (c.verify.max_mode < 1 || c.verify.max_mode > top_mode)
    throw ConfigError("verify.max_mode must lie in [1, n/2 - 1]");
  if (!c.verify.inject_fault.empty() && c.verify.inject_fault != "b_sign")
    throw ConfigError("verify.inject_fault must be \"\" or \"b_sign\"");
}

}  // namespace pi2ch::cli
