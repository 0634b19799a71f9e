// nonoverlap: verification suites, boundary traces and sample clouds from the command line.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonoverlap/nonoverlap.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kGeneric = 1, kConfig = 2, kTraceAbort = 3, kOracle = 4, kIo = 5 };

struct RunConfig {
  std::string mode = "all";
  std::string functional = "w1/w3";
  double r = 0.5;
  double rho = 2.0;
  int alpha_steps = 360;
  double solver_tol = 1e-10;
  double closure_tol = 1e-6;
  double oracle_tol = 1e-8;
  std::uint64_t seed = 20240601;
  int samples = 10000;
  std::string out_dir = ".";
};

struct Failure {
  int exit_code;
  std::string kind;
  int status;
  std::string message;
};

int emit_error(const Failure& f) {
  json err;
  err["error"] = {{"kind", f.kind}, {"status", f.status}, {"exit_code", f.exit_code}, {"message", f.message}};
  std::cerr << err.dump() << "\n";
  return f.exit_code;
}

Failure config_error(const std::string& message) { return {kConfig, "config", NOV_ERR_CONFIG, message}; }

Failure from_status(nov_status s) {
  int code = kGeneric;
  switch (s) {
    case NOV_ERR_CONFIG:
    case NOV_ERR_SYNTAX:
    case NOV_ERR_CONSTANT_FUNCTIONAL:
      code = kConfig;
      break;
    case NOV_ERR_TRACE_ABORT:
      code = kTraceAbort;
      break;
    case NOV_ERR_IO:
      code = kIo;
      break;
    default:
      break;
  }
  return {code, nov_status_name(s), static_cast<int>(s), nov_last_error()};
}

struct CallFailed {
  Failure failure;
};

void check(nov_status s) {
  if (s != NOV_OK) throw CallFailed{from_status(s)};
}

std::string take(char* s) {
  std::string out(s);
  nov_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

void validate(const RunConfig& c) {
  if (c.mode != "verify" && c.mode != "trace" && c.mode != "sample" && c.mode != "all")
    throw CallFailed{config_error("mode must be one of verify, trace, sample, all")};
  if (!(c.r > 0.0 && c.r < 1.0)) throw CallFailed{config_error("r must lie in (0, 1)")};
  if (!(c.rho > 1.0 && std::isfinite(c.rho))) throw CallFailed{config_error("rho must lie in (1, inf)")};
  if (c.alpha_steps < 8) throw CallFailed{config_error("alpha_steps must be at least 8")};
  if (!(c.solver_tol > 0.0) || !(c.closure_tol > 0.0) || !(c.oracle_tol > 0.0))
    throw CallFailed{config_error("tolerances must be positive")};
  if (c.samples < 1) throw CallFailed{config_error("samples must be at least 1")};
}

// Keys of the config file mirror the long flag names with '-' replaced by '_'.
void apply_file(RunConfig& c, const std::string& path, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw CallFailed{config_error("cannot read config file " + path)};
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw CallFailed{config_error(std::string("config file is not valid JSON: ") + e.what())};
  }
  if (!j.is_object()) throw CallFailed{config_error("config file must hold a JSON object")};
  auto from_file = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || app.count(flag) > 0) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception&) {
      throw CallFailed{config_error(std::string("config key has the wrong type: ") + key)};
    }
  };
  for (auto& [key, _] : j.items()) {
    static const char* known[] = {"mode",        "functional", "r",    "rho",     "alpha_steps", "solver_tol",
                                  "closure_tol", "oracle_tol", "seed", "samples", "out_dir"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw CallFailed{config_error("unknown config key: " + key)};
  }
  from_file("mode", "--mode", c.mode);
  from_file("functional", "--functional", c.functional);
  from_file("r", "--r", c.r);
  from_file("rho", "--rho", c.rho);
  from_file("alpha_steps", "--alpha-steps", c.alpha_steps);
  from_file("solver_tol", "--solver-tol", c.solver_tol);
  from_file("closure_tol", "--closure-tol", c.closure_tol);
  from_file("oracle_tol", "--oracle-tol", c.oracle_tol);
  from_file("seed", "--seed", c.seed);
  from_file("samples", "--samples", c.samples);
  from_file("out_dir", "--out-dir", c.out_dir);
}

json echo(const RunConfig& c) {
  return {{"mode", c.mode},
          {"functional", c.functional},
          {"r", c.r},
          {"rho", c.rho},
          {"alpha_steps", c.alpha_steps},
          {"solver_tol", c.solver_tol},
          {"closure_tol", c.closure_tol},
          {"oracle_tol", c.oracle_tol},
          {"seed", c.seed},
          {"samples", c.samples},
          {"out_dir", c.out_dir}};
}

void write(const RunConfig& c, const std::string& name, const std::string& content) {
  check(nov_write_file((std::filesystem::path(c.out_dir) / name).string().c_str(), content.c_str()));
}

int run(const RunConfig& c) {
  const nov_config cfg{c.r, c.rho};
  const bool want_verify = c.mode == "verify" || c.mode == "all";
  const bool want_trace = c.mode == "trace" || c.mode == "all";
  const bool want_sample = c.mode == "sample" || c.mode == "all";

  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  if (ec) return emit_error({kIo, "io", NOV_ERR_IO, "cannot create output directory " + c.out_dir});

  Handle<nov_functional, nov_functional_free> fn;
  check(nov_functional_parse(c.functional.c_str(), &fn.p));

  json summary;
  summary["config"] = echo(c);
  bool oracle_ok = true;

  if (want_verify) {
    nov_verify_options vo;
    nov_verify_options_default(&vo);
    vo.seed = c.seed;
    vo.tolerance = c.oracle_tol;
    char* report = nullptr;
    int passed = 0;
    check(nov_verify(cfg, &vo, &report, &passed));
    write(c, "verify_report.json", take(report));
    oracle_ok = passed != 0;
    summary["verify"] = {{"all_passed", oracle_ok}, {"report", "verify_report.json"}};
  }

  Handle<nov_cloud, nov_cloud_free> cloud;
  if (want_sample) {
    check(nov_cloud_sample(fn.p, cfg, c.samples, c.seed, &cloud.p));
    char* csv = nullptr;
    check(nov_cloud_csv(cloud.p, &csv));
    write(c, "cloud.csv", take(csv));
    summary["sample"] = {{"count", nov_cloud_size(cloud.p)}, {"csv", "cloud.csv"}};
  }

  if (want_trace) {
    nov_trace_options to;
    nov_trace_options_default(&to);
    to.alpha_steps = c.alpha_steps;
    to.solver_tol = c.solver_tol;
    to.closure_tol = c.closure_tol;
    Handle<nov_trace, nov_trace_free> tr;
    check(nov_trace_run(fn.p, cfg, &to, &tr.p));
    char* s = nullptr;
    check(nov_trace_csv(tr.p, &s));
    write(c, "trace.csv", take(s));
    check(nov_trace_json(tr.p, &s));
    write(c, "trace.json", take(s));
    check(nov_trace_svg(tr.p, cloud.p, &s));
    write(c, "trace.svg", take(s));
    summary["trace"] = {{"points", nov_trace_point_count(tr.p)},
                        {"failures", nov_trace_failure_count(tr.p)},
                        {"closed", nov_trace_closed(tr.p) != 0},
                        {"closure_defect", nov_trace_closure_defect(tr.p)},
                        {"diameter", nov_trace_diameter(tr.p)}};

    if (c.mode == "all") {
      if (!nov_trace_closed(tr.p)) {
        summary["containment"] = {{"error", "trace is not closed"}};
      } else {
        std::size_t counts[3] = {0, 0, 0};
        for (std::size_t i = 0; i < nov_cloud_size(cloud.p); ++i) {
          nov_complex z;
          nov_containment where;
          check(nov_cloud_value(cloud.p, i, &z));
          check(nov_trace_contains(tr.p, z, &where));
          ++counts[where];
        }
        json cont = {{"inside", counts[NOV_INSIDE]},
                     {"near_boundary", counts[NOV_NEAR_BOUNDARY]},
                     {"outside", counts[NOV_OUTSIDE]}};
        write(c, "containment.json", cont.dump(2) + "\n");
        summary["containment"] = cont;
      }
    }
  }

  std::cout << summary.dump(2) << "\n";
  if (!oracle_ok)
    return emit_error({kOracle, "oracle_failure", 0, "verification report has failing checks; see verify_report.json"});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Boundary curves of a two-point functional over non-overlapping univalent pairs"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--mode", c.mode, "verify | trace | sample | all");
  app.add_option("--functional", c.functional, "rational functional in w1..w4");
  app.add_option("--r", c.r, "interior radius, 0 < r < 1");
  app.add_option("--rho", c.rho, "exterior radius, rho > 1");
  app.add_option("--alpha-steps", c.alpha_steps, "grid size of the sweep parameter");
  app.add_option("--solver-tol", c.solver_tol, "Newton residual target (max-norm)");
  app.add_option("--closure-tol", c.closure_tol, "closure defect allowed, relative to the diameter");
  app.add_option("--oracle-tol", c.oracle_tol, "relative tolerance of the reduction checks");
  app.add_option("--seed", c.seed, "RNG seed for sampling and verification");
  app.add_option("--samples", c.samples, "cloud size");
  app.add_option("--out-dir", c.out_dir, "directory for the output files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(config_error(e.what()));
  }

  try {
    if (!config_path.empty()) apply_file(c, config_path, app);
    validate(c);
    return run(c);
  } catch (const CallFailed& f) {
    return emit_error(f.failure);
  } catch (const std::exception& e) {
    return emit_error({kGeneric, "internal", NOV_ERR_INTERNAL, e.what()});
  }
}
