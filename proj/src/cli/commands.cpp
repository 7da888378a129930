#include "hybrid/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "hybrid/cli/report.hpp"
#include "hybrid/patterns.hpp"

namespace hybrid::cli {
namespace {

// Fixed notation under the classic locale, whatever the global locale is.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {
    buf_.imbue(std::locale::classic());
    buf_ << std::fixed;
  }

  void comment(const std::string& line) { out_ << "# " << line << '\n'; }
  void header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      out_ << (first ? "" : ",") << c;
      first = false;
    }
    out_ << '\n';
  }
  CsvWriter& text(const std::string& s) {
    sep();
    out_ << s;
    return *this;
  }
  CsvWriter& num(double v, int precision = 12) {
    sep();
    if (!std::isfinite(v)) {
      out_ << "nan";
      return *this;
    }
    buf_.str({});
    buf_ << std::setprecision(precision) << v;
    out_ << buf_.str();
    return *this;
  }
  CsvWriter& integer(std::uint64_t v) {
    sep();
    out_ << v;
    return *this;
  }
  void end() {
    out_ << '\n';
    fresh_ = true;
  }

 private:
  void sep() {
    if (!fresh_) out_ << ',';
    fresh_ = false;
  }

  std::ostream& out_;
  std::ostringstream buf_;
  bool fresh_ = true;
};

void echo(CsvWriter& w, const RunConfig& config, const std::string& title) {
  w.comment(title);
  for (const std::string& line : describe(config)) w.comment(line);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

void write_pattern_csv(const RunConfig& config, std::ostream& out) {
  const ScanConfig& scan = config.scan;
  scan.validate();
  const HybridState& s = config.state.state;
  const SlitGeometry& g = config.geometry;
  const bool spatial = scan.kind == ScanKind::Spatial;

  CsvWriter w(out);
  echo(w, config, "hybridsim pattern");
  w.comment("densities are point values; p_cc and p_cc_corrected per (m rad), p_1s per m, p_1p per rad");
  if (spatial) {
    w.header({"x_m", "p_cc_per_m_rad", "p_1s_per_m", "p_cc_corrected_per_m_rad"});
  } else {
    w.header({"theta_s_rad", "p_cc_per_m_rad", "p_1p_per_rad", "p_cc_corrected_per_m_rad"});
  }
  const auto n = static_cast<std::size_t>(scan.steps);
  const double step = (scan.stop - scan.start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = scan.start + step * static_cast<double>(i);
    const double x = spatial ? v : scan.fixed_setting;
    const double theta = spatial ? scan.fixed_setting : v;
    w.num(v).num(p_cc(s, g, theta, x)).num(spatial ? p_1s(s, g, x) : p_1p(s, theta)).num(p_cc_corrected(s, g, theta, x));
    w.end();
  }
}

std::filesystem::path cmd_pattern(const RunConfig& config) {
  ensure_dir(config.output_dir);
  const auto path = config.output_dir / "pattern.csv";
  std::ofstream out = open_output(path);
  write_pattern_csv(config, out);
  finish(out, path);
  return path;
}

void write_curves_csv(const RunConfig& config, const ExperimentReport& report, bool max_setting, std::ostream& out) {
  CsvWriter w(out);
  echo(w, config, max_setting ? "hybridsim experiment: two-photon curves at the visibility-maximizing settings"
                              : "hybridsim experiment: measured curves");
  w.comment("setting is x in m for spatial curves and theta_s in rad for polarization curves");
  w.header({"state", "curve", "fixed_setting", "setting", "counts", "expected", "fit"});
  for (const StateReport& r : report.states) {
    for (const CurveRecord& c : max_setting ? r.max_setting_curves : r.curves) {
      const bool fitted = c.fit.params.size() > 0;
      for (std::size_t i = 0; i < c.curve.settings.size(); ++i) {
        const double x = c.curve.settings[i];
        w.text(r.id).text(c.name).num(c.curve.config.fixed_setting).num(x).integer(c.curve.counts[i]);
        w.num(c.curve.expected[i], 6);
        w.num(fitted ? model_value(c.fit.model, c.fit.params, report.geometry, x) : std::nan(""), 6);
        w.end();
      }
    }
  }
}

void write_corrected_csv(const RunConfig& config, const ExperimentReport& report, std::ostream& out) {
  CsvWriter w(out);
  echo(w, config, "hybridsim experiment: corrected two-photon curves");
  w.comment("value and sigma in units of the normalized corrected density");
  w.header({"state", "curve", "fixed_setting", "setting", "value", "sigma", "fit"});
  for (const StateReport& r : report.states) {
    for (const CorrectedRecord& c : r.corrected) {
      const bool fitted = c.fit.params.size() > 0;
      for (std::size_t i = 0; i < c.curve.settings.size(); ++i) {
        const double x = c.curve.settings[i];
        w.text(r.id).text(c.name).num(c.curve.fixed_setting).num(x).num(c.curve.values[i], 9).num(c.curve.sigmas[i], 9);
        w.num(fitted ? model_value(c.fit.model, c.fit.params, report.geometry, x) : std::nan(""), 9);
        w.end();
      }
    }
  }
}

ExperimentReport cmd_experiment(const RunConfig& config, std::ostream& log) {
  ensure_dir(config.output_dir);
  const ExperimentReport report = complementarity_experiment(config.states, config.geometry, config.experiment);

  auto emit = [&](const std::string& name, auto&& writer) {
    const auto path = config.output_dir / name;
    std::ofstream out = open_output(path);
    writer(out);
    finish(out, path);
  };
  emit("curves.csv", [&](std::ostream& o) { write_curves_csv(config, report, false, o); });
  emit("curves_max_setting.csv", [&](std::ostream& o) { write_curves_csv(config, report, true, o); });
  emit("corrected.csv", [&](std::ostream& o) { write_corrected_csv(config, report, o); });
  emit("report.json", [&](std::ostream& o) { o << to_json(summarize(report)).dump(2) << '\n'; });

  for (const StateReport& r : report.states) {
    for (const std::string& warning : r.warnings) log << "warning: " << r.id << ": " << warning << '\n';
  }
  return report;
}

int cmd_verify(Mutation mutation, std::ostream& out, const VerifyOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_invariant_suite(mutated(mutation), options);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all = true;
  char line[256];
  std::snprintf(line, sizeof line, "%-55s %12s %10s  %s\n", "check", "max error", "tolerance", "result");
  out << line;
  for (const CheckResult& r : results) {
    std::snprintf(line, sizeof line, "%-55s %12.3e %10.1e  %s\n", r.name.c_str(), r.max_error, r.tolerance,
                  r.passed ? "PASS" : "FAIL");
    out << line;
    all = all && r.passed;
  }
  std::snprintf(line, sizeof line, "%d random states, %.2f s: %s\n", options.random_states, elapsed,
                all ? "all checks passed" : "FAILED");
  out << line;
  return all ? 0 : 1;
}

}  // namespace hybrid::cli
