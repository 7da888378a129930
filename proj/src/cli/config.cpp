#include "hybrid/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace hybrid::cli {
namespace {

using std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Longest numeric prefix; the rest is returned as the unit.
std::pair<double, std::string_view> split_number(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr == text.data()) throw ConfigError("expected a number, got '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw ConfigError("non-finite number '" + std::string(text) + "'");
  return {v, trim(text.substr(static_cast<std::size_t>(ptr - text.data())))};
}

double parse_number(std::string_view text) {
  const auto [v, rest] = split_number(text);
  if (!rest.empty()) throw ConfigError("unexpected trailing text '" + std::string(rest) + "'");
  return v;
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_steps(std::string_view text) {
  const long long v = parse_integer(text);
  if (v < 2 || v > 1000000) throw ConfigError("steps must be in [2, 1000000]");
  return static_cast<int>(v);
}

std::uint64_t parse_seed(std::string_view text) {
  const long long v = parse_integer(text);
  if (v < 0) throw ConfigError("seed must be non-negative");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "off" || text == "no" || text == "0") return false;
  throw ConfigError("expected a boolean, got '" + std::string(text) + "'");
}

double parse_counts(std::string_view text) {
  const double v = parse_number(text);
  if (!(v > 0.0)) throw ConfigError("counts must be > 0");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "geometry.a",      "geometry.d",       "geometry.lambda",  "geometry.z",
      "state",           "scan.kind",        "scan.start",       "scan.stop",
      "scan.steps",      "scan.fixed",       "scan.aperture",    "scan.bucket",
      "scan.analyzer",   "scan.counts",      "scan.seed",        "experiment.states",
      "experiment.counts", "experiment.seed", "experiment.aperture", "experiment.spatial_steps",
      "experiment.spatial_range", "experiment.polarization_steps", "experiment.threads", "output.dir"};
  return keys;
}

}  // namespace

double parse_length(std::string_view text) {
  const auto [v, unit] = split_number(text);
  if (unit.empty() || unit == "m") return v;
  if (unit == "cm") return v * 1e-2;
  if (unit == "mm") return v * 1e-3;
  if (unit == "um") return v * 1e-6;
  if (unit == "nm") return v * 1e-9;
  throw ConfigError("unknown length unit '" + std::string(unit) + "' (m, cm, mm, um, nm)");
}

double parse_angle(std::string_view text) {
  const auto [v, unit] = split_number(text);
  if (unit.empty() || unit == "deg") return v * pi / 180.0;
  if (unit == "rad") return v;
  throw ConfigError("unknown angle unit '" + std::string(unit) + "' (deg, rad)");
}

NamedState parse_state(std::string_view text) {
  text = trim(text);
  try {
    if (text == "left-circular") return {"left-circular", HybridState(PolarizationProjection::left_circular())};
    if (text.starts_with("xi:")) {
      const double xi = parse_angle(text.substr(3));
      return {std::string(text), hes_from_xi(xi)};
    }
    if (text.starts_with("proj:")) {
      const auto parts = split(text.substr(5), ',');
      if (parts.size() != 3) throw ConfigError("proj: needs alpha,beta,phi_p");
      const PolarizationProjection p(parse_number(parts[0]), parse_number(parts[1]), parse_angle(parts[2]));
      return {std::string(text), prepare_hybrid_state(p).state};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("state '" + std::string(text) + "': " + e.what());
  }
  throw ConfigError("unknown state '" + std::string(text) + "' (left-circular, xi:<deg>, proj:<a>,<b>,<phi deg>)");
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> values;
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw ConfigError(where + "unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
    if (!values.emplace(key, value).second) throw ConfigError(where + "duplicate key '" + key + "'");
    cfg.entries.emplace_back(key, value);
  }

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
  auto with_key = [](const std::string& key, auto&& fn) {
    try {
      return fn();
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  };
  auto apply = [&](const std::string& key, auto&& fn) {
    if (const auto v = get(key)) with_key(key, [&] { fn(*v); return 0; });
  };

  {
    const SlitGeometry p = SlitGeometry::standard();
    double a = p.a();
    double d = p.d();
    double lambda = p.lambda();
    double z = p.z();
    apply("geometry.a", [&](const std::string& v) { a = parse_length(v); });
    apply("geometry.d", [&](const std::string& v) { d = parse_length(v); });
    apply("geometry.lambda", [&](const std::string& v) { lambda = parse_length(v); });
    apply("geometry.z", [&](const std::string& v) { z = parse_length(v); });
    try {
      cfg.geometry = SlitGeometry(a, d, lambda, z);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("geometry: ") + e.what());
    }
  }

  apply("state", [&](const std::string& v) { cfg.state = parse_state(v); });

  ScanKind kind = ScanKind::Spatial;
  apply("scan.kind", [&](const std::string& v) {
    if (v == "spatial") {
      kind = ScanKind::Spatial;
    } else if (v == "polarization") {
      kind = ScanKind::Polarization;
    } else {
      throw ConfigError("expected spatial or polarization");
    }
  });
  const bool spatial = kind == ScanKind::Spatial;
  cfg.scan = spatial ? ScanConfig::spatial(pi / 2.0) : ScanConfig::polarization(0.0);
  const std::function<double(std::string_view)> scanned = spatial ? parse_length : parse_angle;
  const std::function<double(std::string_view)> fixed = spatial ? parse_angle : parse_length;
  apply("scan.start", [&](const std::string& v) { cfg.scan.start = scanned(v); });
  apply("scan.stop", [&](const std::string& v) { cfg.scan.stop = scanned(v); });
  apply("scan.steps", [&](const std::string& v) { cfg.scan.steps = parse_steps(v); });
  apply("scan.fixed", [&](const std::string& v) { cfg.scan.fixed_setting = fixed(v); });
  apply("scan.aperture", [&](const std::string& v) { cfg.scan.aperture_width = parse_length(v); });
  apply("scan.bucket", [&](const std::string& v) { cfg.scan.bucket = parse_bool(v); });
  apply("scan.analyzer", [&](const std::string& v) { cfg.scan.analyzer = parse_bool(v); });
  apply("scan.counts", [&](const std::string& v) { cfg.scan.expected_total_counts = parse_counts(v); });
  apply("scan.seed", [&](const std::string& v) { cfg.scan.seed = parse_seed(v); });
  try {
    cfg.scan.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scan: ") + e.what());
  }

  apply("experiment.states", [&](const std::string& v) {
    cfg.states.clear();
    for (std::string_view s : split(v, ';')) {
      if (!s.empty()) cfg.states.push_back(parse_state(s));
    }
    if (cfg.states.empty()) throw ConfigError("no states listed");
  });
  auto& ex = cfg.experiment;
  apply("experiment.counts", [&](const std::string& v) { ex.counts_per_curve = parse_counts(v); });
  apply("experiment.seed", [&](const std::string& v) { ex.seed = parse_seed(v); });
  apply("experiment.aperture", [&](const std::string& v) {
    ex.aperture_width = parse_length(v);
    if (ex.aperture_width < 0.0) throw ConfigError("aperture must be >= 0");
  });
  apply("experiment.spatial_steps", [&](const std::string& v) { ex.spatial_steps = parse_steps(v); });
  apply("experiment.spatial_range", [&](const std::string& v) {
    ex.spatial_half_range = parse_length(v);
    if (!(ex.spatial_half_range > 0.0)) throw ConfigError("range must be > 0");
  });
  apply("experiment.polarization_steps", [&](const std::string& v) { ex.polarization_steps = parse_steps(v); });
  apply("experiment.threads", [&](const std::string& v) {
    const long long t = parse_integer(v);
    if (t < 1 || t > 256) throw ConfigError("threads must be in [1, 256]");
    ex.threads = static_cast<unsigned>(t);
  });
  apply("output.dir", [&](const std::string& v) { cfg.output_dir = v; });
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> describe(const RunConfig& c) {
  const auto& g = c.geometry;
  const auto& s = c.scan;
  const auto& e = c.experiment;
  const char* scanned_unit = s.kind == ScanKind::Spatial ? " m" : " rad";
  const char* fixed_unit = s.kind == ScanKind::Spatial ? " rad" : " m";
  std::vector<std::string> out = {
      "geometry.a = " + format_number(g.a()) + " m",
      "geometry.d = " + format_number(g.d()) + " m",
      "geometry.lambda = " + format_number(g.lambda()) + " m",
      "geometry.z = " + format_number(g.z()) + " m",
      "state = " + c.state.id + " (alpha " + format_number(c.state.state.alpha()) + ", beta " +
          format_number(c.state.state.beta()) + ", phi_p " + format_number(c.state.state.phi_p()) + " rad)",
      "scan.kind = " + to_string(s.kind),
      "scan.start = " + format_number(s.start) + scanned_unit,
      "scan.stop = " + format_number(s.stop) + scanned_unit,
      "scan.steps = " + std::to_string(s.steps),
      "scan.fixed = " + format_number(s.fixed_setting) + fixed_unit,
      "scan.aperture = " + format_number(s.aperture_width) + " m",
      std::string("scan.bucket = ") + (s.bucket ? "true" : "false"),
      std::string("scan.analyzer = ") + (s.analyzer ? "true" : "false"),
      "scan.counts = " + format_number(s.expected_total_counts),
      "scan.seed = " + std::to_string(s.seed),
  };
  std::string ids;
  for (const auto& ns : c.states) ids += (ids.empty() ? "" : "; ") + ns.id;
  out.push_back("experiment.states = " + ids);
  out.push_back("experiment.counts = " + format_number(e.counts_per_curve));
  out.push_back("experiment.seed = " + std::to_string(e.seed));
  out.push_back("experiment.aperture = " + format_number(e.aperture_width) + " m");
  out.push_back("experiment.spatial_steps = " + std::to_string(e.spatial_steps));
  out.push_back("experiment.spatial_range = " + format_number(e.spatial_half_range) + " m");
  out.push_back("experiment.polarization_steps = " + std::to_string(e.polarization_steps));
  return out;
}

}  // namespace hybrid::cli
