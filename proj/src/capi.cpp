#include "nonoverlap/nonoverlap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "nonoverlap/error.hpp"
#include "nonoverlap/functional.hpp"
#include "nonoverlap/oracle.hpp"
#include "nonoverlap/output.hpp"
#include "nonoverlap/sampler.hpp"
#include "nonoverlap/tracer.hpp"

struct nov_functional {
  std::string text;
  nov::FunctionalSpec spec;
};

struct nov_trace {
  nov::TraceResult result;
};

struct nov_cloud {
  std::vector<nov::CloudPoint> points;
};

namespace {

thread_local std::string g_last_error;

nov_status fail(nov_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
nov_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return NOV_OK;
  } catch (const nov::Error& e) {
    return fail(static_cast<nov_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NOV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NOV_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nov::cplx in(nov_complex z) { return {z.re, z.im}; }
nov_complex out_c(nov::cplx z) { return {z.real(), z.imag()}; }
nov::ProblemConfig in(nov_config c) { return {c.r, c.rho}; }

}  // namespace

extern "C" {

const char* nov_version(void) { return "1.0.0"; }

const char* nov_status_name(nov_status status) {
  switch (status) {
    case NOV_OK:
      return "ok";
    case NOV_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case NOV_ERR_INTERNAL:
      return "internal";
    default:
      if (status >= NOV_ERR_SYNTAX && status <= NOV_ERR_IO)
        return nov::error_code_name(static_cast<nov::ErrorCode>(status));
      return "unknown";
  }
}

const char* nov_last_error(void) { return g_last_error.c_str(); }

void nov_string_free(char* s) { std::free(s); }

nov_status nov_functional_parse(const char* text, nov_functional** out) {
  if (!text || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new nov_functional{text, nov::parse_functional(text)}; });
}

void nov_functional_free(nov_functional* f) { delete f; }

nov_status nov_functional_to_string(const nov_functional* f, char** out) {
  if (!f || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(f->spec.to_string()); });
}

nov_status nov_functional_eval(const nov_functional* f, nov_complex w1, nov_complex w2, nov_complex* out) {
  if (!f || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = out_c(nov::eval_functional(f->spec, {in(w1), in(w2)})); });
}

nov_status nov_functional_gradient(const nov_functional* f, nov_complex w1, nov_complex w2, nov_complex out[4]) {
  if (!f || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto g = nov::gradient(f->spec, {in(w1), in(w2)});
    for (int i = 0; i < 4; ++i) out[i] = out_c(g[static_cast<std::size_t>(i)]);
  });
}

nov_status nov_functional_pq(const nov_functional* f, nov_complex w1, nov_complex w2, double alpha, nov_complex* p,
                             nov_complex* q) {
  if (!f || !p || !q) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const nov::GradientPair gp = nov::pq(f->spec, {in(w1), in(w2)}, alpha);
    *p = out_c(gp.p);
    *q = out_c(gp.q);
  });
}

void nov_trace_options_default(nov_trace_options* opts) {
  if (!opts) return;
  const nov::TraceOptions d;
  opts->alpha_steps = d.steps;
  opts->solver_tol = d.solver_tol;
  opts->closure_tol = d.closure_tol;
}

nov_status nov_trace_run(const nov_functional* f, nov_config cfg, const nov_trace_options* opts, nov_trace** out) {
  if (!f || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    nov::TraceOptions o;
    if (opts) {
      if (!(opts->solver_tol > 0.0) || !(opts->closure_tol > 0.0))
        throw nov::Error(nov::ErrorCode::Config, "tolerances must be positive");
      o.steps = opts->alpha_steps;
      o.solver_tol = opts->solver_tol;
      o.accept_tol = 10.0 * opts->solver_tol;
      o.closure_tol = opts->closure_tol;
    }
    *out = new nov_trace{nov::trace_curve(f->spec, f->text, in(cfg), o)};
  });
}

void nov_trace_free(nov_trace* t) { delete t; }

size_t nov_trace_point_count(const nov_trace* t) { return t ? t->result.points.size() : 0; }

nov_status nov_trace_point(const nov_trace* t, size_t index, nov_point* out) {
  if (!t || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= t->result.points.size()) return fail(NOV_ERR_INVALID_ARGUMENT, "point index out of range");
  const nov::BoundaryPoint& p = t->result.points[index];
  *out = {p.alpha, p.normal_angle, out_c(p.I0), out_c(p.w1), out_c(p.w2), p.A, p.B, p.residual_norm};
  return NOV_OK;
}

size_t nov_trace_failure_count(const nov_trace* t) { return t ? t->result.failures.size() : 0; }
int nov_trace_closed(const nov_trace* t) { return t && t->result.closed ? 1 : 0; }
double nov_trace_closure_defect(const nov_trace* t) { return t ? t->result.closure_defect : 0.0; }
double nov_trace_diameter(const nov_trace* t) { return t ? t->result.diameter : 0.0; }

nov_status nov_trace_contains(const nov_trace* t, nov_complex z, nov_containment* out) {
  if (!t || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    switch (nov::contains(t->result, in(z))) {
      case nov::Containment::Inside:
        *out = NOV_INSIDE;
        break;
      case nov::Containment::Outside:
        *out = NOV_OUTSIDE;
        break;
      case nov::Containment::NearBoundary:
        *out = NOV_NEAR_BOUNDARY;
        break;
    }
  });
}

nov_status nov_trace_csv(const nov_trace* t, char** out) {
  if (!t || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(nov::trace_csv(t->result)); });
}

nov_status nov_trace_json(const nov_trace* t, char** out) {
  if (!t || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(nov::trace_json(t->result)); });
}

nov_status nov_trace_svg(const nov_trace* t, const nov_cloud* cloud, char** out) {
  if (!t || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(nov::render_svg(t->result, cloud ? &cloud->points : nullptr)); });
}

nov_status nov_cloud_sample(const nov_functional* f, nov_config cfg, int count, uint64_t seed, nov_cloud** out) {
  if (!f || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new nov_cloud{nov::sample_cloud(f->spec, in(cfg), count, seed)}; });
}

void nov_cloud_free(nov_cloud* c) { delete c; }

size_t nov_cloud_size(const nov_cloud* c) { return c ? c->points.size() : 0; }

nov_status nov_cloud_value(const nov_cloud* c, size_t index, nov_complex* out) {
  if (!c || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= c->points.size()) return fail(NOV_ERR_INVALID_ARGUMENT, "sample index out of range");
  *out = out_c(c->points[index].I);
  return NOV_OK;
}

nov_status nov_cloud_csv(const nov_cloud* c, char** out) {
  if (!c || !out) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(nov::cloud_csv(c->points)); });
}

void nov_verify_options_default(nov_verify_options* opts) {
  if (!opts) return;
  const nov::VerifyOptions d;
  opts->seed = d.seed;
  opts->tuples = d.tuples;
  opts->elliptic_args = d.elliptic_args;
  opts->tolerance = d.tolerance;
}

nov_status nov_verify(nov_config cfg, const nov_verify_options* opts, char** report_json, int* all_passed) {
  if (!report_json || !all_passed) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    nov::VerifyOptions o;
    if (opts) {
      if (!(opts->tolerance > 0.0)) throw nov::Error(nov::ErrorCode::Config, "oracle tolerance must be positive");
      o.seed = opts->seed;
      o.tuples = opts->tuples;
      o.elliptic_args = opts->elliptic_args;
      o.tolerance = opts->tolerance;
    }
    const nov::VerifyReport report = nov::run_verification(in(cfg), o);
    *report_json = dup_string(report.to_json());
    *all_passed = report.all_passed ? 1 : 0;
  });
}

nov_status nov_write_file(const char* path, const char* content) {
  if (!path || !content) return fail(NOV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { nov::write_text_file(path, content); });
}

}  // extern "C"
