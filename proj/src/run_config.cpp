#include "run_config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"
#include "expression.hpp"

namespace gardner {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::kExample1:
      return "example1";
    case Experiment::kExample2:
      return "example2";
    case Experiment::kExample3:
      return "example3";
    case Experiment::kCustom:
      return "custom";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::size_t line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ParseError(key, line(key), what);
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return to_real(key, entries_.at(key).value);
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = entries_.at(key).value;
    errno = 0;
    char* end = nullptr;
    const long r = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno == ERANGE || r < -2147483647L || r > 2147483647L) {
      fail(key, "malformed integer '" + v + "'");
    }
    return static_cast<int>(r);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? entries_.at(key).value : fallback;
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    std::stringstream ss(entries_.at(key).value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_real(key, trim(item)));
    return out;
  }

 private:
  double to_real(const std::string& key, const std::string& v) const {
    errno = 0;
    char* end = nullptr;
    const double r = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(r)) {
      fail(key, "malformed number '" + v + "'");
    }
    return r;
  }

  std::map<std::string, Entry> entries_;
};

const char* const kTopKeys[] = {"experiment",       "N",          "dt",
                                "zeta",             "t_end",      "snapshot_times",
                                "report_times",     "output_dir", "snapshot_density",
                                "boundary_closure", "quadrature"};
const char* const kCustomKeys[] = {"a", "b", "mu1", "mu2", "mu3", "initial"};

template <std::size_t K>
bool known(const char* const (&keys)[K], const std::string& key) {
  for (const char* k : keys) {
    if (key == k) return true;
  }
  return false;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> top;
  std::map<std::string, Entry> custom;
  bool in_custom = false;
  std::size_t custom_line = 0;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[custom]") throw ParseError("", line_no, "unknown section '" + line + "'");
      if (in_custom) throw ParseError("", line_no, "duplicate [custom] section");
      in_custom = true;
      custom_line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("", line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto& target = in_custom ? custom : top;
    const bool ok = in_custom ? known(kCustomKeys, key) : known(kTopKeys, key);
    if (!ok) throw ParseError(key, line_no, "unknown key");
    if (target.count(key)) throw ParseError(key, line_no, "duplicate key");
    if (value.empty()) throw ParseError(key, line_no, "missing value");
    target[key] = {value, line_no};
  }

  const Reader r(std::move(top));
  RunConfig c;

  const std::string exp = r.text("experiment", "example1");
  if (exp == "example1") {
    c.experiment = Experiment::kExample1;
  } else if (exp == "example2") {
    c.experiment = Experiment::kExample2;
  } else if (exp == "example3") {
    c.experiment = Experiment::kExample3;
  } else if (exp == "custom") {
    c.experiment = Experiment::kCustom;
  } else {
    r.fail("experiment", "unknown experiment '" + exp + "'");
  }

  const int default_n = c.experiment == Experiment::kExample3 ? 200 : 100;
  double default_t_end = 5.0;
  if (c.experiment == Experiment::kExample2) default_t_end = 12.0;
  if (c.experiment == Experiment::kExample3) default_t_end = 15.0;
  if (c.experiment == Experiment::kCustom && !r.has("t_end")) {
    throw ParseError("t_end", 0, "required for a custom experiment");
  }

  c.n = r.integer("N", default_n);
  if (c.n < 4) r.fail("N", "must be at least 4");
  c.dt = r.real("dt", 0.1);
  if (!(c.dt > 0.0)) r.fail("dt", "must be positive");
  c.zeta = r.real("zeta", 1.0);
  if (!(c.zeta > 0.0)) r.fail("zeta", "must be positive");
  c.t_end = r.real("t_end", default_t_end);
  if (!(c.t_end >= 0.0)) r.fail("t_end", "must be non-negative");

  const double tol = 1e-9 * std::max(1.0, c.t_end);
  auto times = [&](const std::string& key, std::vector<double> fallback) {
    if (!r.has(key)) return fallback;
    auto v = r.list(key);
    for (double t : v) {
      if (t < -tol || t > c.t_end + tol) r.fail(key, "time " + format_real(t) + " outside [0, t_end]");
    }
    return v;
  };
  c.snapshot_times = times("snapshot_times", c.t_end > 0.0 ? std::vector<double>{0.0, c.t_end}
                                                           : std::vector<double>{0.0});
  c.report_times = times("report_times", {});

  c.output_dir = r.text("output_dir", "out");
  c.snapshot_density = r.real("snapshot_density", 5.0);
  if (!(c.snapshot_density > 0.0)) r.fail("snapshot_density", "must be positive");
  try {
    c.closure = boundary_closure_from_string(r.text("boundary_closure", "linear_extrapolation"));
  } catch (const DomainError& e) {
    r.fail("boundary_closure", e.what());
  }
  try {
    c.quadrature = quadrature_from_string(r.text("quadrature", "nodal_sum"));
  } catch (const DomainError& e) {
    r.fail("quadrature", e.what());
  }

  if (c.experiment == Experiment::kCustom) {
    if (!in_custom) throw ParseError("experiment", r.line("experiment"), "custom experiment needs a [custom] section");
    const Reader cr(std::move(custom));
    for (const char* key : kCustomKeys) {
      if (!cr.has(key) && std::string(key) != "mu1" && std::string(key) != "mu2") {
        throw ParseError(key, custom_line, "required in [custom]");
      }
    }
    CustomProblem p;
    p.a = cr.real("a", 0.0);
    p.b = cr.real("b", 0.0);
    if (!(p.a < p.b)) cr.fail("b", "requires a < b");
    p.mu1 = cr.real("mu1", 0.0);
    p.mu2 = cr.real("mu2", 0.0);
    p.mu3 = cr.real("mu3", 1.0);
    if (p.mu3 == 0.0) cr.fail("mu3", "must be nonzero");
    p.initial = cr.text("initial", "");
    try {
      (void)Expression::parse(p.initial);
    } catch (const DomainError& e) {
      cr.fail("initial", e.what());
    }
    c.custom = p;
  } else if (in_custom) {
    throw ParseError("", custom_line, "[custom] section requires experiment = custom");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("", 0, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  o << "experiment = " << to_string(c.experiment) << '\n';
  o << "N = " << c.n << '\n';
  o << "dt = " << format_real(c.dt) << '\n';
  o << "zeta = " << format_real(c.zeta) << '\n';
  o << "t_end = " << format_real(c.t_end) << '\n';
  o << "snapshot_times = " << format_list(c.snapshot_times) << '\n';
  if (!c.report_times.empty()) o << "report_times = " << format_list(c.report_times) << '\n';
  o << "output_dir = " << c.output_dir << '\n';
  o << "snapshot_density = " << format_real(c.snapshot_density) << '\n';
  o << "boundary_closure = " << to_string(c.closure) << '\n';
  o << "quadrature = " << to_string(c.quadrature) << '\n';
  if (c.custom) {
    o << "[custom]\n";
    o << "a = " << format_real(c.custom->a) << '\n';
    o << "b = " << format_real(c.custom->b) << '\n';
    o << "mu1 = " << format_real(c.custom->mu1) << '\n';
    o << "mu2 = " << format_real(c.custom->mu2) << '\n';
    o << "mu3 = " << format_real(c.custom->mu3) << '\n';
    o << "initial = " << c.custom->initial << '\n';
  }
  return o.str();
}

ProblemSpec make_problem(const RunConfig& c) {
  ProblemSpec spec;
  switch (c.experiment) {
    case Experiment::kExample1:
      spec = example1_spec(c.n, c.dt, c.zeta);
      break;
    case Experiment::kExample2:
      spec = example2_spec(c.n, c.dt, c.zeta);
      break;
    case Experiment::kExample3:
      spec = example3_spec(c.n, c.dt, c.zeta);
      break;
    case Experiment::kCustom: {
      if (!c.custom) throw DomainError("custom experiment without problem data");
      const auto expr = Expression::parse(c.custom->initial);
      spec = custom_spec("custom", {c.custom->mu1, c.custom->mu2, c.custom->mu3},
                         Grid(c.custom->a, c.custom->b, c.n), c.dt, c.zeta, c.t_end,
                         [expr](double x) { return expr(x); });
      break;
    }
  }
  spec.t_end = c.t_end;
  spec.closure = c.closure;
  spec.validate();
  return spec;
}

}  // namespace gardner
