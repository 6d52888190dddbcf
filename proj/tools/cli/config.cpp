#include "config.hpp"

#include <cmath>
#include <fstream>

namespace evfield {

using evanescent::Index;
using nlohmann::json;

namespace {

constexpr double kGoldenAngle = 2.399963229728653;

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

Index get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
  return v.get<Index>();
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + " must be finite");
  return x;
}

bool get_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ConfigError(where + " must be true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + " must be a string");
  return v.get<std::string>();
}

std::uint64_t get_seed(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(where + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

evanescent::ProcessKind parse_process_kind(const std::string& s, const std::string& where) {
  if (s == "white") return evanescent::ProcessKind::white;
  if (s == "ar1") return evanescent::ProcessKind::ar1;
  throw ConfigError(where + " must be \"white\" or \"ar1\"");
}

std::pair<Index, Index> parse_slope(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(where + " must be an [a, b] pair");
  return {get_int(v[0], where + "[0]"), get_int(v[1], where + "[1]")};
}

ComponentConfig parse_component(const json& v, const std::string& where) {
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  ComponentConfig c;
  const json* a = find(v, "a");
  const json* b = find(v, "b");
  if (!a || !b) throw ConfigError(where + " needs integer fields a and b");
  c.a = get_int(*a, where + ".a");
  c.b = get_int(*b, where + ".b");
  if (const json* x = find(v, "c")) c.c = get_int(*x, where + ".c");
  if (const json* x = find(v, "d")) c.d = get_int(*x, where + ".d");
  if (c.c.has_value() != c.d.has_value()) throw ConfigError(where + ": give both c and d or neither");
  if (const json* x = find(v, "omega")) c.omega = get_number(*x, where + ".omega");
  if (const json* p = find(v, "process")) {
    if (p->is_string()) {
      c.process = parse_process_kind(get_string(*p, where + ".process"), where + ".process");
    } else if (p->is_object()) {
      if (const json* k = find(*p, "kind")) {
        c.process = parse_process_kind(get_string(*k, where + ".process.kind"), where + ".process.kind");
      }
      if (const json* x = find(*p, "variance")) c.variance = get_number(*x, where + ".process.variance");
      if (const json* x = find(*p, "ar")) c.ar_coefficient = get_number(*x, where + ".process.ar");
    } else {
      throw ConfigError(where + ".process must be a string or an object");
    }
  }
  return c;
}

evanescent::stap::Scenario parse_scenario(const json& v) {
  if (!v.is_object()) throw ConfigError("scenario must be an object");
  evanescent::stap::Scenario sc;
  const json* n = find(v, "antennas");
  const json* m = find(v, "pulses");
  if (!n || !m) throw ConfigError("scenario needs antennas and pulses");
  sc.antennas = get_int(*n, "scenario.antennas");
  sc.pulses = get_int(*m, "scenario.pulses");
  if (const json* x = find(v, "noise_power")) sc.noise_power = get_number(*x, "scenario.noise_power");
  if (const json* js = find(v, "jammers")) {
    if (!js->is_array()) throw ConfigError("scenario.jammers must be an array");
    for (std::size_t i = 0; i < js->size(); ++i) {
      const std::string where = "scenario.jammers[" + std::to_string(i) + "]";
      const json& j = (*js)[i];
      if (!j.is_object()) throw ConfigError(where + " must be an object");
      evanescent::stap::Jammer jam;
      const json* angle = find(j, "angle");
      if (!angle) throw ConfigError(where + " needs angle");
      jam.angle_frequency = get_number(*angle, where + ".angle");
      if (const json* p = find(j, "power")) jam.power = get_number(*p, where + ".power");
      if (const json* db = find(j, "jnr_db")) {
        jam.power = sc.noise_power * std::pow(10.0, get_number(*db, where + ".jnr_db") / 10.0);
      }
      sc.jammers.push_back(jam);
    }
  }
  if (const json* cl = find(v, "clutter")) {
    if (!cl->is_object()) throw ConfigError("scenario.clutter must be an object");
    evanescent::stap::Clutter c;
    if (const json* x = find(*cl, "beta")) c.beta = get_int(*x, "scenario.clutter.beta");
    if (const json* x = find(*cl, "power")) c.power = get_number(*x, "scenario.clutter.power");
    if (const json* x = find(*cl, "omega")) c.ridge_frequency = get_number(*x, "scenario.clutter.omega");
    if (const json* x = find(*cl, "process")) {
      c.process = parse_process_kind(get_string(*x, "scenario.clutter.process"), "scenario.clutter.process");
    }
    if (const json* x = find(*cl, "ar")) c.ar_coefficient = get_number(*x, "scenario.clutter.ar");
    sc.clutter = c;
  }
  if (const json* t = find(v, "target")) {
    if (!t->is_object()) throw ConfigError("scenario.target must be an object");
    evanescent::stap::Target tgt;
    if (const json* x = find(*t, "angle")) tgt.angle_frequency = get_number(*x, "scenario.target.angle");
    if (const json* x = find(*t, "doppler")) tgt.doppler_frequency = get_number(*x, "scenario.target.doppler");
    if (const json* x = find(*t, "amplitude")) tgt.amplitude = get_number(*x, "scenario.target.amplitude");
    sc.target = tgt;
  }
  return sc;
}

GridConfig parse_grid(const json& v) {
  if (!v.is_object()) throw ConfigError("grid must be an object");
  GridConfig g = GridConfig::defaults();
  auto read_sizes = [](const json& arr, const char* name) {
    if (!arr.is_array()) throw ConfigError(std::string("grid.") + name + " must be an array");
    std::vector<Index> out;
    for (const auto& x : arr) out.push_back(get_int(x, std::string("grid.") + name));
    return out;
  };
  if (const json* x = find(v, "rows")) g.rows = read_sizes(*x, "rows");
  if (const json* x = find(v, "cols")) g.cols = read_sizes(*x, "cols");
  if (const json* x = find(v, "sets")) {
    if (!x->is_array()) throw ConfigError("grid.sets must be an array of slope lists");
    g.sets.clear();
    for (std::size_t i = 0; i < x->size(); ++i) {
      const std::string where = "grid.sets[" + std::to_string(i) + "]";
      const json& set = (*x)[i];
      if (!set.is_array()) throw ConfigError(where + " must be an array of [a, b] pairs");
      std::vector<std::pair<Index, Index>> slopes;
      for (std::size_t k = 0; k < set.size(); ++k) {
        slopes.push_back(parse_slope(set[k], where + "[" + std::to_string(k) + "]"));
      }
      g.sets.push_back(std::move(slopes));
    }
  }
  if (const json* x = find(v, "process")) g.process = parse_process_kind(get_string(*x, "grid.process"), "grid.process");
  return g;
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::rank:
      return "rank";
    case Mode::verify:
      return "verify";
    case Mode::simulate:
      return "simulate";
    case Mode::stap:
      return "stap";
    case Mode::grid:
      return "grid";
  }
  return "unknown";
}

Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::rank, Mode::verify, Mode::simulate, Mode::stap, Mode::grid}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("unknown mode \"" + name + "\"");
}

GridConfig GridConfig::defaults() {
  GridConfig g;
  g.sets = {{{0, 1}}, {{1, 0}}, {{1, 1}}, {{1, 2}}, {{2, 1}}, {{3, 2}}, {{3, -2}}, {{2, -1}}};
  return g;
}

evanescent::LatticeRect RunConfig::rect() const {
  try {
    return evanescent::LatticeRect(rows, cols);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("rect: ") + e.what());
  }
}

std::vector<evanescent::EvanescentComponent> RunConfig::build_components() const {
  const std::uint64_t s = seed.value_or(0);
  std::vector<evanescent::EvanescentComponent> out;
  out.reserve(components.size());
  for (std::size_t q = 0; q < components.size(); ++q) {
    const ComponentConfig& c = components[q];
    const std::string where = "components[" + std::to_string(q) + "]";
    try {
      const auto slope = c.c ? evanescent::SlopePair::with_companion(c.a, c.b, *c.c, *c.d)
                             : evanescent::SlopePair::make(c.a, c.b);
      const auto spec = c.process == evanescent::ProcessKind::white
                            ? evanescent::ProcessSpec::white(c.variance, s)
                            : evanescent::ProcessSpec::ar1(c.variance, c.ar_coefficient, s);
      const double omega = c.omega.value_or(0.5 + kGoldenAngle * static_cast<double>(q));
      out.emplace_back(slope, omega, spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  try {
    evanescent::check_distinct_triples(out);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("components: ") + e.what());
  }
  return out;
}

void RunConfig::validate() const {
  if (!seed) throw ConfigError("seed is required (set \"seed\" in the config or pass --seed)");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (relative_tolerance && !(*relative_tolerance > 0.0 && *relative_tolerance < 1.0)) {
    throw ConfigError("tolerance must lie in (0, 1)");
  }
  if (!(certificate_tolerance > 0.0)) throw ConfigError("certificate_tolerance must be positive");
  if (certificate_cap < 1) throw ConfigError("certificate_cap must be at least 1");
  switch (mode) {
    case Mode::rank:
    case Mode::verify:
    case Mode::simulate:
      (void)rect();
      if (components.empty()) throw ConfigError("components must list at least one component");
      (void)build_components();
      if (mode == Mode::verify && real_valued) {
        throw ConfigError("verify works on the complex field model; drop --real");
      }
      break;
    case Mode::stap:
      if (!scenario) throw ConfigError("stap mode needs a scenario object");
      try {
        scenario->validate();
      } catch (const std::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
      }
      if (projection_rank && (*projection_rank < 0 || *projection_rank > scenario->antennas * scenario->pulses)) {
        throw ConfigError("projection_rank must lie in [0, antennas*pulses]");
      }
      break;
    case Mode::grid:
      if (grid) {
        for (Index n : grid->rows) {
          if (n < 1) throw ConfigError("grid.rows entries must be positive");
        }
        for (Index m : grid->cols) {
          if (m < 1) throw ConfigError("grid.cols entries must be positive");
        }
      }
      break;
  }
}

RunConfig parse_config(const json& doc, Mode mode) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  cfg.mode = mode;
  if (const json* x = find(doc, "mode")) {
    const Mode declared = parse_mode(get_string(*x, "mode"));
    if (declared != mode) {
      throw ConfigError(std::string("config declares mode \"") + to_string(declared) +
                        "\" but the command is \"" + to_string(mode) + "\"");
    }
  }
  if (const json* r = find(doc, "rect")) {
    if (!r->is_object() || !find(*r, "rows") || !find(*r, "cols")) {
      throw ConfigError("rect must be an object with rows and cols");
    }
    cfg.rows = get_int((*r)["rows"], "rect.rows");
    cfg.cols = get_int((*r)["cols"], "rect.cols");
  }
  if (const json* cs = find(doc, "components")) {
    if (!cs->is_array()) throw ConfigError("components must be an array");
    for (std::size_t i = 0; i < cs->size(); ++i) {
      cfg.components.push_back(parse_component((*cs)[i], "components[" + std::to_string(i) + "]"));
    }
  }
  if (const json* x = find(doc, "scenario")) cfg.scenario = parse_scenario(*x);
  if (const json* x = find(doc, "projection_rank")) cfg.projection_rank = get_int(*x, "projection_rank");
  if (const json* x = find(doc, "grid")) cfg.grid = parse_grid(*x);
  if (const json* x = find(doc, "seed")) cfg.seed = get_seed(*x, "seed");
  if (const json* x = find(doc, "trials")) cfg.trials = get_int(*x, "trials");
  if (const json* x = find(doc, "real")) cfg.real_valued = get_bool(*x, "real");
  if (const json* x = find(doc, "tolerance")) cfg.relative_tolerance = get_number(*x, "tolerance");
  if (const json* x = find(doc, "certificate_tolerance")) {
    cfg.certificate_tolerance = get_number(*x, "certificate_tolerance");
  }
  if (const json* x = find(doc, "certificate_cap")) cfg.certificate_cap = get_int(*x, "certificate_cap");
  if (const json* o = find(doc, "outputs")) {
    if (!o->is_object()) throw ConfigError("outputs must be an object");
    if (const json* x = find(*o, "report")) cfg.outputs.report = get_string(*x, "outputs.report");
    if (const json* x = find(*o, "gamma")) cfg.outputs.gamma = get_string(*x, "outputs.gamma");
    if (const json* x = find(*o, "snapshots")) cfg.outputs.snapshots = get_string(*x, "outputs.snapshots");
  }
  return cfg;
}

RunConfig load_config(const std::string& path, Mode mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc, mode);
}

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
  if (ov.seed) cfg.seed = ov.seed;
  if (ov.tolerance) cfg.relative_tolerance = ov.tolerance;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.real_valued) cfg.real_valued = true;
  if (ov.export_gamma) cfg.outputs.gamma = ov.export_gamma;
  if (ov.out) {
    if (cfg.mode == Mode::simulate) {
      cfg.outputs.snapshots = ov.out;
    } else {
      cfg.outputs.report = ov.out;
    }
  }
  if (cfg.scenario && cfg.seed) cfg.scenario->seed = *cfg.seed;
}

}  // namespace evfield
