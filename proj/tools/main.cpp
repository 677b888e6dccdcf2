// faddeev: batch driver for runs, verification suites, sweeps and kernel tables.
//
// Exit codes: 0 ok, 1 config error, 2 blow-up, 3 verify failure. Errors are
// reported on stderr as one `error kind=... key=... reason="..."` line.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "faddeev/config.hpp"
#include "faddeev/io.hpp"
#include "faddeev/transform.hpp"
#include "faddeev/verify.hpp"

namespace fs = std::filesystem;
using namespace faddeev;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kBlowup = 2;
constexpr int kVerifyFail = 3;

std::string quote(std::string s) {
  for (char& c : s)
    if (c == '"' || c == '\n') c = '\'';
  return '"' + s + '"';
}

void report(const std::string& kind, const std::string& key, const std::string& reason) {
  std::cerr << "error kind=" << kind << " key=" << (key.empty() ? "-" : key) << " reason=" << quote(reason) << '\n';
}

// RunConfig::validate prefixes its messages with the key.
std::pair<std::string, std::string> split_reason(const std::string& what) {
  const auto colon = what.find(": ");
  if (colon == std::string::npos) return {"", what};
  return {what.substr(0, colon), what.substr(colon + 2)};
}

AppConfig assemble(const std::string& path, const std::vector<std::string>& overrides) {
  AppConfig cfg = path.empty() ? AppConfig{} : load_config(path);
  for (const auto& o : overrides) apply_override(cfg, o);
  cfg.run.validate();
  return cfg;
}

std::string step_tag(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08zu", step);
  return buf;
}

void write_checkpoint(const fs::path& dir, const FieldState& s, std::size_t step, const std::string& hash) {
  fs::create_directories(dir);
  write_field_csv((dir / "v.csv").string(), s.f);
  write_field_csv((dir / "v_t.csv").string(), s.f_t);
  write_key_values((dir / "meta.txt").string(),
                   {{"time", format_double(s.time)}, {"step", std::to_string(step)}, {"config_hash", hash}});
}

struct RunSummary {
  int exit_code = kOk;
  std::string status;
  double final_time = 0.0;
  std::size_t steps = 0;
  ContinuationMonitor max_monitor{};
  double max_drift = 0.0;
};

// Runs one configuration into `out`. Throws on I/O or config errors.
RunSummary execute_run(const AppConfig& cfg, const fs::path& out) {
  fs::create_directories(out);
  const std::string hash = config_hash(cfg);
  {
    std::ofstream os(out / "effective.cfg");
    os << effective_config_text(cfg);
  }
  std::ofstream diag(out / "diagnostics.csv");
  if (!diag) throw std::runtime_error("cannot write " + (out / "diagnostics.csv").string());
  write_diagnostics_header(diag, default_spacetime_pairs());

  RunHooks hooks;
  hooks.on_record = [&](const DiagnosticsRecord& rec) { write_diagnostics_row(diag, rec); };
  hooks.on_snapshot = [&](std::size_t step, const FieldState& s) {
    fs::create_directories(out / "snapshots");
    write_bundle_csv((out / "snapshots" / ("bundle_" + step_tag(step) + ".csv")).string(),
                     make_bundle(s, cfg.run.kernels));
    if (cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0)
      write_checkpoint(out / "checkpoints" / step_tag(step), s, step, hash);
  };
  const RunResult res = run(cfg.run, hooks);
  diag.close();
  write_checkpoint(out / "checkpoints" / "final", res.final_state, res.steps, hash);

  RunSummary sum;
  sum.status = to_string(res.status);
  sum.final_time = res.final_state.time;
  sum.steps = res.steps;
  for (const auto& r : res.records) {
    sum.max_monitor.v = std::max(sum.max_monitor.v, r.monitor.v);
    sum.max_monitor.v_t = std::max(sum.max_monitor.v_t, r.monitor.v_t);
    sum.max_monitor.grad_v = std::max(sum.max_monitor.grad_v, r.monitor.grad_v);
    if (std::isfinite(r.energy_drift)) sum.max_drift = std::max(sum.max_drift, r.energy_drift);
  }
  write_key_values((out / "run.meta").string(), {{"status", sum.status},
                                                 {"reason", res.reason.empty() ? "-" : res.reason},
                                                 {"steps", std::to_string(res.steps)},
                                                 {"dt", format_double(res.dt)},
                                                 {"time", format_double(sum.final_time)},
                                                 {"config_hash", hash}});
  if (res.status != RunStatus::completed) {
    sum.exit_code = kBlowup;
    std::cerr << "blowup status=" << sum.status << " detail=" << quote(res.reason) << '\n';
  }
  return sum;
}

int cmd_run(const std::string& config, const std::vector<std::string>& sets, const std::string& out) {
  AppConfig cfg;
  try {
    cfg = assemble(config, sets);
  } catch (const ConfigError& e) {
    report("config", e.key(), split_reason(e.what()).second);
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    const auto [key, why] = split_reason(e.what());
    report("config", key, why);
    return kConfigError;
  }
  try {
    const RunSummary s = execute_run(cfg, out);
    std::cout << "run status=" << s.status << " steps=" << s.steps << " time=" << format_double(s.final_time)
              << " max_drift=" << format_double(s.max_drift) << '\n';
    return s.exit_code;
  } catch (const std::invalid_argument& e) {
    const auto [key, why] = split_reason(e.what());
    report("config", key, why);
    return kConfigError;
  } catch (const std::exception& e) {
    report("runtime", "", e.what());
    return kConfigError;
  }
}

int cmd_verify(const std::string& suite, const std::string& out) {
  std::vector<CheckRow> rows;
  std::vector<StudyReport> studies;
  try {
    rows = run_suite(suite, Exec::parallel, &studies);
  } catch (const std::invalid_argument& e) {
    report("config", "suite", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    report("verify", suite, e.what());
    return kVerifyFail;
  }
  fs::create_directories(out);
  std::ofstream os(fs::path(out) / ("verify_" + suite + ".csv"));
  write_check_header(os);
  std::size_t failed = 0;
  for (const auto& r : rows) {
    write_check_row(os, r);
    write_check_row(std::cout, r);
    if (!r.pass) ++failed;
  }
  if (!studies.empty()) {
    std::ofstream ss(fs::path(out) / ("study_" + suite + ".csv"));
    write_study_header(ss);
    for (const auto& s : studies) write_study_rows(ss, s);
  }
  if (failed > 0) {
    std::cerr << "error kind=verify key=" << suite << " reason=" << quote(std::to_string(failed) + " check(s) failed")
              << '\n';
    return kVerifyFail;
  }
  return kOk;
}

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError(spec, "sweep axis must read key=v1,v2,...");
  SweepAxis axis{spec.substr(0, eq), {}};
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) axis.values.push_back(item);
  if (axis.values.empty()) throw ConfigError(axis.key, "sweep axis has no values");
  return axis;
}

int cmd_sweep(const std::string& config, const std::vector<std::string>& sets, const std::vector<std::string>& axes_spec,
              const std::string& out, std::size_t jobs) {
  std::vector<SweepAxis> axes;
  AppConfig base;
  try {
    base = assemble(config, sets);
    for (const auto& a : axes_spec) {
      axes.push_back(parse_axis(a));
      AppConfig probe = base;
      apply_setting(probe, axes.back().key, axes.back().values.front());
    }
  } catch (const ConfigError& e) {
    report("config", e.key(), split_reason(e.what()).second);
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    const auto [key, why] = split_reason(e.what());
    report("config", key, why);
    return kConfigError;
  }

  // Cartesian product, last axis fastest.
  std::vector<std::vector<std::string>> points{{}};
  for (const auto& a : axes) {
    std::vector<std::vector<std::string>> next;
    for (const auto& p : points)
      for (const auto& v : a.values) {
        next.push_back(p);
        next.back().push_back(v);
      }
    points = std::move(next);
  }

  struct Row {
    std::string status = "pending";
    RunSummary sum;
    std::string detail;
  };
  std::vector<Row> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      Row& row = rows[k];
      try {
        AppConfig cfg = base;
        for (std::size_t a = 0; a < axes.size(); ++a) apply_setting(cfg, axes[a].key, points[k][a]);
        if (jobs > 1) cfg.run.exec = Exec::serial;
        cfg.run.validate();
        row.sum = execute_run(cfg, fs::path(out) / ("run_" + step_tag(k)));
        row.status = row.sum.status;
      } catch (const std::exception& e) {
        row.status = "error";
        row.detail = e.what();
        std::lock_guard lock(log_mutex);
        report("sweep", "run_" + step_tag(k), e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < std::max<std::size_t>(1, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  fs::create_directories(out);
  std::ofstream os(fs::path(out) / "summary.csv");
  os << "run";
  for (const auto& a : axes) os << ',' << a.key;
  os << ",status,final_time,steps,max_monitor_v,max_monitor_vt,max_monitor_gradv,max_drift\n";
  bool blowup = false;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& r = rows[k];
    os << "run_" << step_tag(k);
    for (const auto& v : points[k]) os << ',' << v;
    os << ',' << r.status << ',' << format_double(r.sum.final_time) << ',' << r.sum.steps << ','
       << format_double(r.sum.max_monitor.v) << ',' << format_double(r.sum.max_monitor.v_t) << ','
       << format_double(r.sum.max_monitor.grad_v) << ',' << format_double(r.sum.max_drift) << '\n';
    if (r.sum.exit_code == kBlowup) blowup = true;
  }
  std::cout << "sweep runs=" << rows.size() << " out=" << out << '\n';
  return blowup ? kBlowup : kOk;
}

int cmd_kernels_table(const std::vector<std::string>& sets, double x_max, std::size_t samples, const std::string& out) {
  AppConfig cfg;
  try {
    for (const auto& o : sets) apply_override(cfg, o);
    cfg.run.kernels.validate();
  } catch (const ConfigError& e) {
    report("config", e.key(), split_reason(e.what()).second);
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    report("config", "kernels", e.what());
    return kConfigError;
  }
  std::ofstream file;
  if (!out.empty()) {
    const fs::path p(out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    file.open(p);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  const KernelParams& p = cfg.run.kernels;
  os << "x,F0,F1,F2,F3,F4,sinc,A4_y1\n";
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = samples > 1 ? x_max * static_cast<double>(k) / static_cast<double>(samples - 1) : 0.0;
    const auto f = eval_ftilde_all(x, p);
    os << format_double(x);
    for (double y : f) os << ',' << format_double(y);
    os << ',' << format_double(sinc(x, p)) << ',' << format_double(eval_a4(1.0, x, p)) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Faddeev model: lifted radial evolution and verification"};
  app.require_subcommand(1);

  std::string config, out = "out";
  std::vector<std::string> sets, axes;
  std::size_t jobs = 1;

  auto* run = app.add_subcommand("run", "evolve one configuration");
  run->add_option("--config", config, "config file");
  run->add_option("--set", sets, "key=value override (repeatable)");
  run->add_option("--out", out, "output directory");
  run->add_option("--jobs", jobs, "accepted for symmetry; runs use OpenMP threads");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "kernels | transforms | convergence | energy")->required();
  verify->add_option("--out", out, "report directory");
  verify->add_option("--jobs", jobs, "unused; suites use OpenMP threads");

  auto* sweep = app.add_subcommand("sweep", "independent runs over a parameter grid");
  sweep->add_option("--config", config, "template config file");
  sweep->add_option("--set", sets, "key=value override (repeatable)");
  sweep->add_option("--sweep", axes, "key=v1,v2,... axis (repeatable; cartesian product)");
  sweep->add_option("--out", out, "output directory");
  sweep->add_option("--jobs", jobs, "concurrent runs");

  double x_max = 4.0;
  std::size_t samples = 401;
  std::string table_out;
  auto* table = app.add_subcommand("kernels-table", "CSV of the F~ kernels and A4 on a uniform x grid");
  table->add_option("--set", sets, "kernels.* override (repeatable)");
  table->add_option("--x-max", x_max, "largest x");
  table->add_option("--samples", samples, "number of samples");
  table->add_option("--out", table_out, "output file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report("usage", "-", e.what());
    return kConfigError;
  }

  if (*run) return cmd_run(config, sets, out);
  if (*verify) return cmd_verify(suite, out);
  if (*sweep) return cmd_sweep(config, sets, axes, out, jobs);
  if (*table) return cmd_kernels_table(sets, x_max, samples, table_out);
  return kConfigError;
}
