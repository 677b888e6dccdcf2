#include "faddeev/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "faddeev/io.hpp"

namespace faddeev {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError(key, "not a number: '" + text + "'");
  return x;
}

std::size_t to_count(const std::string& key, const std::string& text) {
  std::size_t x = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError(key, "not a non-negative integer: '" + text + "'");
  return x;
}

int to_int(const std::string& key, const std::string& text) {
  int x = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError(key, "not an integer: '" + text + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key, "not a boolean: '" + text + "'");
}

struct Field {
  std::function<void(AppConfig&, const std::string& key, const std::string&)> set;
  std::function<std::string(const AppConfig&)> get;
};

std::string fmt(double x) { return format_double(x); }
std::string fmt(bool b) { return b ? "true" : "false"; }

// Ordered table of every key.
const std::vector<std::pair<std::string, Field>>& table() {
  static const std::vector<std::pair<std::string, Field>> t = [] {
    std::vector<std::pair<std::string, Field>> v;
    auto real = [&](const char* key, double RunConfig::*m) {
      v.push_back({key, {[m](AppConfig& c, const std::string& k, const std::string& s) { c.run.*m = to_double(k, s); },
                         [m](const AppConfig& c) { return fmt(c.run.*m); }}});
    };
    auto count = [&](const char* key, std::size_t RunConfig::*m) {
      v.push_back({key, {[m](AppConfig& c, const std::string& k, const std::string& s) { c.run.*m = to_count(k, s); },
                         [m](const AppConfig& c) { return std::to_string(c.run.*m); }}});
    };
    auto flag = [&](const char* key, bool RunConfig::*m) {
      v.push_back({key, {[m](AppConfig& c, const std::string& k, const std::string& s) { c.run.*m = to_bool(k, s); },
                         [m](const AppConfig& c) { return fmt(c.run.*m); }}});
    };
    auto init = [&](const char* key, double InitialDataSpec::*m) {
      v.push_back({key, {[m](AppConfig& c, const std::string& k, const std::string& s) { c.run.initial.*m = to_double(k, s); },
                         [m](const AppConfig& c) { return fmt(c.run.initial.*m); }}});
    };

    count("grid.n_cells", &RunConfig::n_cells);
    real("grid.r_max", &RunConfig::r_max);

    v.push_back({"integrator.kind", {[](AppConfig& c, const std::string&, const std::string& s) { c.run.integrator = s; },
                                     [](const AppConfig& c) { return c.run.integrator; }}});
    real("integrator.t_end", &RunConfig::t_end);
    real("integrator.cfl", &RunConfig::cfl);
    real("integrator.dt", &RunConfig::dt);
    flag("integrator.nonlinear", &RunConfig::nonlinear);
    v.push_back({"integrator.exec",
                 {[](AppConfig& c, const std::string& k, const std::string& s) {
                    if (s == "serial") c.run.exec = Exec::serial;
                    else if (s == "parallel") c.run.exec = Exec::parallel;
                    else throw ConfigError(k, "expected serial or parallel, got '" + s + "'");
                  },
                  [](const AppConfig& c) { return std::string(c.run.exec == Exec::serial ? "serial" : "parallel"); }}});

    v.push_back({"sponge.start", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.sponge.start = to_double(k, s); },
                                  [](const AppConfig& c) { return fmt(c.run.sponge.start); }}});
    v.push_back({"sponge.strength", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.sponge.strength = to_double(k, s); },
                                     [](const AppConfig& c) { return fmt(c.run.sponge.strength); }}});

    v.push_back({"initial_data.family",
                 {[](AppConfig& c, const std::string& k, const std::string& s) {
                    if (s == "gaussian_v") c.run.initial.family = InitialDataSpec::Family::gaussian_v;
                    else if (s == "profile_u") c.run.initial.family = InitialDataSpec::Family::profile_u;
                    else throw ConfigError(k, "expected gaussian_v or profile_u, got '" + s + "'");
                  },
                  [](const AppConfig& c) {
                    return std::string(c.run.initial.family == InitialDataSpec::Family::gaussian_v ? "gaussian_v" : "profile_u");
                  }}});
    init("initial_data.amplitude", &InitialDataSpec::amplitude);
    init("initial_data.center", &InitialDataSpec::center);
    init("initial_data.width", &InitialDataSpec::width);
    init("initial_data.velocity_amplitude", &InitialDataSpec::velocity_amplitude);
    init("initial_data.velocity_center", &InitialDataSpec::velocity_center);
    init("initial_data.velocity_width", &InitialDataSpec::velocity_width);
    v.push_back({"initial_data.profile_path",
                 {[](AppConfig& c, const std::string&, const std::string& s) { c.run.initial.profile_path = s; },
                  [](const AppConfig& c) { return c.run.initial.profile_path; }}});

    v.push_back({"kernels.alpha", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.kernels.alpha = to_double(k, s); },
                                   [](const AppConfig& c) { return fmt(c.run.kernels.alpha); }}});
    v.push_back({"kernels.x_switch", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.kernels.x_switch = to_double(k, s); },
                                      [](const AppConfig& c) { return fmt(c.run.kernels.x_switch); }}});
    v.push_back({"kernels.series_terms", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.kernels.series_terms = to_int(k, s); },
                                          [](const AppConfig& c) { return std::to_string(c.run.kernels.series_terms); }}});
    v.push_back({"kernels.cutoff_order", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.kernels.cutoff.order = to_int(k, s); },
                                          [](const AppConfig& c) { return std::to_string(c.run.kernels.cutoff.order); }}});

    count("diagnostics.every", &RunConfig::diag_every);
    flag("diagnostics.phi", &RunConfig::diag_phi);
    v.push_back({"diagnostics.decay_s", {[](AppConfig& c, const std::string& k, const std::string& s) { c.run.decay_s = to_int(k, s); },
                                         [](const AppConfig& c) { return std::to_string(c.run.decay_s); }}});
    real("diagnostics.monitor_ceiling", &RunConfig::monitor_ceiling);
    real("diagnostics.drift_ceiling", &RunConfig::drift_ceiling);

    count("output.snapshot_every", &RunConfig::snapshot_every);
    v.push_back({"output.checkpoint_every",
                 {[](AppConfig& c, const std::string& k, const std::string& s) { c.checkpoint_every = to_count(k, s); },
                  [](const AppConfig& c) { return std::to_string(c.checkpoint_every); }}});
    return v;
  }();
  return t;
}

const Field* find(const std::string& key) {
  for (const auto& [k, f] : table())
    if (k == key) return &f;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, f] : table()) out.push_back(k);
    return out;
  }();
  return keys;
}

void apply_setting(AppConfig& cfg, const std::string& key, const std::string& value) {
  const Field* f = find(key);
  if (!f) throw ConfigError(key, "unknown key");
  f->set(cfg, key, value);
}

AppConfig parse_config(const std::string& text, AppConfig base) {
  std::istringstream is(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no), "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.find('.') == std::string::npos && !section.empty()) key = section + "." + key;
    apply_setting(base, key, trim(line.substr(eq + 1)));
  }
  return base;
}

AppConfig load_config(const std::string& path, AppConfig base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void apply_override(AppConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(assignment, "override must read key=value");
  apply_setting(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string effective_config_text(const AppConfig& cfg) {
  std::ostringstream os;
  std::string section;
  for (const auto& [key, f] : table()) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      os << (section.empty() ? "" : "\n") << '[' << sec << "]\n";
      section = sec;
    }
    os << key.substr(dot + 1) << " = " << f.get(cfg) << '\n';
  }
  return os.str();
}

std::string config_hash(const AppConfig& cfg) { return fnv1a_hex(effective_config_text(cfg)); }

}  // namespace faddeev
