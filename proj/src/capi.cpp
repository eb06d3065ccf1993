// SPDX-License-Identifier: Apache-2.0
#include "siegert/siegert.h"

#include <cmath>
#include <cstring>
#include <string>

#include "pipeline.hpp"

using namespace siegert;

namespace {

thread_local std::string g_last_error;

sgt_status fail(sgt_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

sgt_status copy_out(const std::string& s, char* buf, size_t len) {
  if (!buf || len == 0 || s.size() + 1 > len)
    return fail(SGT_ERR_BUFFER, "buffer too small (" + std::to_string(s.size() + 1) +
                                    " bytes needed)");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SGT_OK;
}

// Exception boundary: every C entry point funnels through here.
template <typename Fn> sgt_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    return fail(SGT_ERR_USAGE, e.what());
  } catch (const PrecisionExhausted& e) {
    return fail(SGT_ERR_PRECISION_EXHAUSTED, e.what());
  } catch (const SingularToPrecision& e) {
    return fail(SGT_ERR_SINGULAR, e.what());
  } catch (const NoConvergence& e) {
    return fail(SGT_ERR_NO_CONVERGENCE, e.what());
  } catch (const InsufficientOrder& e) {
    return fail(SGT_ERR_INSUFFICIENT_ORDER, e.what());
  } catch (const PoleEncountered& e) {
    return fail(SGT_ERR_POLE, e.what());
  } catch (const TooShort& e) {
    return fail(SGT_ERR_TOO_SHORT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SGT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SGT_ERR_INTERNAL, e.what());
  }
}

} // namespace

struct sgt_potential {
  PotentialModel model;
};

struct sgt_series {
  SeriesEvaluation ev;
};

struct sgt_run {
  RunResult result;
};

extern "C" {

const char* sgt_version(void) { return "1.0.0"; }

const char* sgt_last_error(void) { return g_last_error.c_str(); }

sgt_status sgt_potential_create(const char* v0, const char* z, sgt_potential** out) {
  return guarded([&]() {
    if (!v0 || !z || !out)
      return fail(SGT_ERR_USAGE, "null argument");
    *out = new sgt_potential{make_paper_potential(decimal_to_mpq(v0), decimal_to_mpq(z))};
    return SGT_OK;
  });
}

void sgt_potential_free(sgt_potential* p) { delete p; }

sgt_status sgt_potential_coefficient(const sgt_potential* p, unsigned j, int digits,
                                     char* buf, size_t len) {
  return guarded([&]() {
    if (!p)
      return fail(SGT_ERR_USAGE, "null potential");
    return copy_out(p->model.coefficient_real(j, digits).to_string(), buf, len);
  });
}

sgt_status sgt_series_eval(const sgt_potential* p, int l, const char* e_re,
                           const char* e_im, int order, int digits,
                           sgt_series** out) {
  return guarded([&]() {
    if (!p || !e_re || !e_im || !out)
      return fail(SGT_ERR_USAGE, "null argument");
    SeriesRequest req{&p->model, l, BigComplex(e_re, e_im, digits), order, digits};
    *out = new sgt_series{riccati_coefficients(req)};
    return SGT_OK;
  });
}

void sgt_series_free(sgt_series* s) { delete s; }

int sgt_series_order(const sgt_series* s) { return s ? s->ev.order() : -1; }

static sgt_status series_value(const sgt_series* s, int j, bool derivative, char* re,
                               char* im, size_t len) {
  return guarded([&]() {
    if (!s)
      return fail(SGT_ERR_USAGE, "null series");
    if (j < 0 || j > s->ev.order())
      return fail(SGT_ERR_USAGE, "coefficient index out of range");
    const BigComplex& z = derivative ? s->ev.df_dE[(size_t)j] : s->ev.f[(size_t)j];
    sgt_status rc = copy_out(z.re().to_string(), re, len);
    if (rc != SGT_OK)
      return rc;
    return copy_out(z.im().to_string(), im, len);
  });
}

sgt_status sgt_series_f(const sgt_series* s, int j, char* re, char* im, size_t len) {
  return series_value(s, j, false, re, im, len);
}

sgt_status sgt_series_df(const sgt_series* s, int j, char* re, char* im, size_t len) {
  return series_value(s, j, true, re, im, len);
}

sgt_status sgt_hankel_eval(const sgt_series* s, int D, int d, char* value_re,
                           char* value_im, char* dlog_re, char* dlog_im, size_t len,
                           double* condition_estimate, int* exact_zero) {
  return guarded([&]() {
    if (!s)
      return fail(SGT_ERR_USAGE, "null series");
    HankelEvaluation h = hankel_evaluate(s->ev, D, d);
    if (condition_estimate)
      *condition_estimate = h.condition_estimate;
    if (exact_zero)
      *exact_zero = h.exact_zero ? 1 : 0;
    sgt_status rc = copy_out(h.value.re().to_string(), value_re, len);
    if (rc == SGT_OK)
      rc = copy_out(h.value.im().to_string(), value_im, len);
    if (rc == SGT_OK)
      rc = copy_out(h.has_dlog ? h.dlog.re().to_string() : "nan", dlog_re, len);
    if (rc == SGT_OK)
      rc = copy_out(h.has_dlog ? h.dlog.im().to_string() : "nan", dlog_im, len);
    return rc;
  });
}

sgt_status sgt_hankel_residual(const sgt_series* s, int D, int d, double* out) {
  return guarded([&]() {
    if (!s || !out)
      return fail(SGT_ERR_USAGE, "null argument");
    *out = root_condition_residual(s->ev, D, d);
    return SGT_OK;
  });
}

sgt_status sgt_newton_polish(const sgt_potential* p, int l, int d, int D,
                             const char* seed_re, const char* seed_im, double tol,
                             char* root_re, char* root_im, size_t len) {
  return guarded([&]() {
    if (!p || !seed_re || !seed_im)
      return fail(SGT_ERR_USAGE, "null argument");
    PrecisionPolicy policy;
    BigComplex seed(seed_re, seed_im, policy.working_digits(D));
    NewtonResult r = newton_polish(p->model, l, d, D, seed, policy, tol);
    sgt_status rc = copy_out(r.root.re().to_string(), root_re, len);
    if (rc != SGT_OK)
      return rc;
    return copy_out(r.root.im().to_string(), root_im, len);
  });
}

sgt_status sgt_hydrogen_level(int l, int n, char* buf, size_t len) {
  return guarded([&]() {
    if (n < l + 1)
      return fail(SGT_ERR_USAGE, "principal quantum number must be at least l+1");
    auto levels = hydrogen_levels(l, n);
    return copy_out(BigReal::from_mpq(levels.back().get_mpq_t(), 40).to_string(),
                    buf, len);
  });
}

sgt_status sgt_siegert_residual(const sgt_potential* p, int l, const char* e_re,
                                const char* e_im, double r0, double R, int steps,
                                double* residual) {
  return guarded([&]() {
    if (!p || !e_re || !e_im || !residual)
      return fail(SGT_ERR_USAGE, "null argument");
    SiegertResidual r =
        siegert_residual(p->model, l, BigComplex(e_re, e_im, 60), r0, R, steps);
    *residual = r.residual;
    return SGT_OK;
  });
}

void sgt_run_config_defaults(sgt_run_config* cfg) {
  if (!cfg)
    return;
  static const RunConfig defaults;
  std::memset(cfg, 0, sizeof(*cfg));
  cfg->v0 = nullptr; /* "7.5" */
  cfg->z = nullptr;  /* "-1" */
  cfg->waves = nullptr;
  cfg->n_waves = 0;
  cfg->d = defaults.d;
  cfg->D_min = defaults.D_min;
  cfg->D_max = defaults.D_max;
  cfg->scan_dimension = defaults.scan_dimension;
  cfg->re_min = defaults.region.re_min;
  cfg->re_max = defaults.region.re_max;
  cfg->im_min = defaults.region.im_min;
  cfg->im_max = defaults.region.im_max;
  cfg->grid_re = defaults.region.grid_re;
  cfg->grid_im = defaults.region.grid_im;
  cfg->tol = defaults.tol_target;
  cfg->base_digits = defaults.precision.base_digits;
  cfg->digits_per_dimension = defaults.precision.digits_per_dimension;
  cfg->max_digits = defaults.precision.max_digits;
  cfg->verify = defaults.verify ? 1 : 0;
}

sgt_status sgt_run_execute(const sgt_run_config* cfg, sgt_run** out) {
  return guarded([&]() {
    if (!cfg || !out)
      return fail(SGT_ERR_USAGE, "null argument");
    RunConfig config;
    if (cfg->v0)
      config.V0 = cfg->v0;
    if (cfg->z)
      config.Z = cfg->z;
    if (cfg->waves && cfg->n_waves > 0)
      config.waves.assign(cfg->waves, cfg->waves + cfg->n_waves);
    config.d = cfg->d;
    config.D_min = cfg->D_min;
    config.D_max = cfg->D_max;
    config.scan_dimension = cfg->scan_dimension;
    config.region.re_min = cfg->re_min;
    config.region.re_max = cfg->re_max;
    config.region.im_min = cfg->im_min;
    config.region.im_max = cfg->im_max;
    config.region.grid_re = cfg->grid_re;
    config.region.grid_im = cfg->grid_im;
    config.tol_target = cfg->tol;
    config.precision.base_digits = cfg->base_digits;
    config.precision.digits_per_dimension = cfg->digits_per_dimension;
    config.precision.max_digits = cfg->max_digits;
    config.verify = cfg->verify != 0;
    *out = new sgt_run{run_pipeline(config)};
    return SGT_OK;
  });
}

void sgt_run_free(sgt_run* r) { delete r; }

int sgt_run_trace_count(const sgt_run* r) {
  return r ? (int)r->result.traces.size() : 0;
}

int sgt_run_converged_count(const sgt_run* r) { return r ? r->result.converged : 0; }

int sgt_run_precision_exhausted(const sgt_run* r) {
  return r && r->result.precision_exhausted ? 1 : 0;
}

namespace {
const TraceResult* trace_at(const sgt_run* r, int i) {
  if (!r || i < 0 || i >= (int)r->result.traces.size())
    return nullptr;
  return &r->result.traces[(size_t)i];
}
} // namespace

int sgt_run_trace_l(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.l : -1;
}

int sgt_run_trace_d(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.d : -1;
}

int sgt_run_trace_nu(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.nu : -1;
}

const char* sgt_run_trace_status(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? to_string(t->trace.status) : "invalid";
}

int sgt_run_trace_digits(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.digits_used : 0;
}

int sgt_run_trace_verify_state(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  if (!t || !t->verified)
    return -1;
  return t->verify_pass ? 1 : 0;
}

double sgt_run_trace_uncertainty(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.best_uncertainty.to_double() : NAN;
}

sgt_status sgt_run_trace_best(const sgt_run* r, int i, char* re, char* im,
                              size_t len) {
  return guarded([&]() {
    const TraceResult* t = trace_at(r, i);
    if (!t)
      return fail(SGT_ERR_USAGE, "trace index out of range");
    sgt_status rc = copy_out(t->trace.best.re().to_string(), re, len);
    if (rc != SGT_OK)
      return rc;
    return copy_out(t->trace.best.im().to_string(), im, len);
  });
}

int sgt_run_trace_first_dimension(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.D_first : -1;
}

int sgt_run_trace_last_dimension(const sgt_run* r, int i) {
  const TraceResult* t = trace_at(r, i);
  return t ? t->trace.D_last() : -1;
}

sgt_status sgt_run_trace_root(const sgt_run* r, int i, int D, char* re, char* im,
                              size_t len) {
  return guarded([&]() {
    const TraceResult* t = trace_at(r, i);
    if (!t)
      return fail(SGT_ERR_USAGE, "trace index out of range");
    if (!t->trace.has(D))
      return fail(SGT_ERR_USAGE, "dimension not recorded for this trace");
    const BigComplex& z = t->trace.root_at(D);
    sgt_status rc = copy_out(z.re().to_string(), re, len);
    if (rc != SGT_OK)
      return rc;
    return copy_out(z.im().to_string(), im, len);
  });
}

int sgt_run_trace_convergence(const sgt_run* r, int i, int* D, double* l_re,
                              double* l_im, int cap) {
  const TraceResult* t = trace_at(r, i);
  if (!t)
    return -(int)SGT_ERR_USAGE;
  try {
    auto rows = convergence_report(t->trace);
    int n = std::min<int>((int)rows.size(), cap);
    for (int k = 0; k < n; ++k) {
      if (D)
        D[k] = rows[(size_t)k].D;
      if (l_re)
        l_re[k] = rows[(size_t)k].L_re;
      if (l_im)
        l_im[k] = rows[(size_t)k].L_im;
    }
    return n;
  } catch (const TooShort&) {
    return -(int)SGT_ERR_TOO_SHORT;
  } catch (const std::exception&) {
    return -(int)SGT_ERR_INTERNAL;
  }
}

} // extern "C"
