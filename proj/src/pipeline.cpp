// SPDX-License-Identifier: Apache-2.0
#include "pipeline.hpp"

#include <algorithm>
#include <future>

namespace siegert {

void RunConfig::validate() const {
  if (D_min < 2)
    throw UsageError("D_min must be at least 2");
  if (D_max < D_min)
    throw UsageError("D_max must not be below D_min");
  if (scan_dimension < D_min || scan_dimension > D_max)
    throw UsageError("scan dimension must lie within [D_min, D_max]");
  if (!(tol_target > 0.0))
    throw UsageError("tol_target must be positive");
  if (waves.empty())
    throw UsageError("at least one partial wave is required");
  for (int l : waves)
    if (l < 0)
      throw UsageError("partial waves must be nonnegative");
  region.validate();
  precision.validate();
  decimal_to_mpq(V0); // throws on malformed input
  decimal_to_mpq(Z);
}

RunResult run_pipeline(const RunConfig& config) {
  config.validate();
  PotentialModel model = make_paper_potential(decimal_to_mpq(config.V0),
                                              decimal_to_mpq(config.Z));

  struct WaveOut {
    std::vector<ResonanceTrace> traces;
  };
  std::vector<std::future<WaveOut>> jobs;
  for (int l : config.waves) {
    jobs.push_back(std::async(std::launch::async, [&, l]() {
      auto seeds = seed_scan(model, l, config.d, config.scan_dimension,
                             config.region, config.precision);
      auto traces =
          continue_in_D(model, l, config.d, seeds, config.D_min, config.D_max,
                        config.precision, config.tol_target, config.scan_dimension);
      return WaveOut{std::move(traces)};
    }));
  }

  RunResult out;
  for (auto& j : jobs) {
    WaveOut w = j.get();
    for (auto& tr : w.traces) {
      TraceResult res;
      res.trace = std::move(tr);
      out.traces.push_back(std::move(res));
    }
  }

  for (auto& res : out.traces) {
    if (res.trace.status == TraceStatus::converged)
      ++out.converged;
    if (res.trace.precision_exhausted)
      out.precision_exhausted = true;
  }

  if (config.verify) {
    std::vector<std::future<void>> vjobs;
    for (auto& res : out.traces) {
      if (res.trace.status != TraceStatus::converged)
        continue;
      vjobs.push_back(std::async(std::launch::async, [&]() {
        res.verified = true;
        try {
          res.report = verify_trace(res.trace, model, config.verifier);
          res.verify_pass = res.report.pass;
        } catch (const Error& e) {
          res.verify_pass = false;
          res.report.message = e.what();
        }
      }));
    }
    for (auto& j : vjobs)
      j.get();
  }

  std::sort(out.traces.begin(), out.traces.end(),
            [](const TraceResult& a, const TraceResult& b) {
              if (a.trace.l != b.trace.l)
                return a.trace.l < b.trace.l;
              bool ca = a.trace.status == TraceStatus::converged;
              bool cb = b.trace.status == TraceStatus::converged;
              if (ca != cb)
                return ca;
              if (ca && cb && a.trace.nu != b.trace.nu)
                return a.trace.nu < b.trace.nu;
              return a.trace.best.re().to_double() < b.trace.best.re().to_double();
            });
  return out;
}

} // namespace siegert
