#include "stmhd.h"

#include <new>
#include <string>
#include <vector>

#include "stmhd/errors.hpp"
#include "stmhd/sweep.hpp"
#include "stmhd/verify.hpp"

struct stmhd_config {
  stmhd::ExperimentConfig cfg;
};

struct stmhd_results {
  std::vector<stmhd::ResultRow> rows;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

template <class F>
stmhd_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return STMHD_OK;
  } catch (const stmhd::ConfigError& e) {
    g_last_error = e.what();
    return STMHD_ERR_CONFIG;
  } catch (const stmhd::IoError& e) {
    g_last_error = e.what();
    return STMHD_ERR_IO;
  } catch (const stmhd::SingularMatrixError& e) {
    g_last_error = e.what();
    return STMHD_ERR_SINGULAR;
  } catch (const stmhd::BreakdownError& e) {
    g_last_error = e.what();
    return STMHD_ERR_BREAKDOWN;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return STMHD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STMHD_ERR_INTERNAL;
  }
}

stmhd_status invalid(const char* what) {
  g_last_error = what;
  return STMHD_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* stmhd_last_error(void) { return g_last_error.c_str(); }

const char* stmhd_version(void) { return "1.0.0"; }

stmhd_status stmhd_config_from_file(const char* path, stmhd_config** out) {
  if (!path || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new stmhd_config{stmhd::load_config(path)}; });
}

stmhd_status stmhd_config_from_string(const char* text, stmhd_config** out) {
  if (!text || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = new stmhd_config{stmhd::parse_config(text)}; });
}

stmhd_status stmhd_config_set(stmhd_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid("null argument");
  return guarded([&] { cfg->cfg.set(key, value); });
}

stmhd_status stmhd_config_validate(const stmhd_config* cfg) {
  if (!cfg) return invalid("null argument");
  return guarded([&] { cfg->cfg.validate(); });
}

const char* stmhd_config_output_path(const stmhd_config* cfg) { return cfg ? cfg->cfg.out.c_str() : ""; }

void stmhd_config_free(stmhd_config* cfg) { delete cfg; }

stmhd_status stmhd_run_sweep(const stmhd_config* cfg, stmhd_results** out) {
  if (!cfg || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto res = new stmhd_results{stmhd::run_sweep(cfg->cfg), {}};
    res->csv = stmhd::format_csv(res->rows);
    *out = res;
  });
}

size_t stmhd_results_count(const stmhd_results* res) { return res ? res->rows.size() : 0; }

stmhd_status stmhd_results_get(const stmhd_results* res, size_t index, stmhd_row* row) {
  if (!res || !row) return invalid("null argument");
  if (index >= res->rows.size()) return invalid("row index out of range");
  const stmhd::ResultRow& r = res->rows[index];
  row->problem = r.problem.c_str();
  row->dx = r.dx;
  row->dt = r.dt;
  row->T = r.T;
  row->nt = r.nt;
  row->mode = r.mode.c_str();
  row->newton = r.newton;
  row->avg_gmres = r.avg_gmres;
  row->has_effective_steps = r.effective_steps.has_value();
  row->effective_steps = r.effective_steps.value_or(0);
  row->has_ratios = r.newton_ratio.has_value() && r.gmres_ratio.has_value();
  row->newton_ratio = r.newton_ratio.value_or(0.0);
  row->gmres_ratio = r.gmres_ratio.value_or(0.0);
  row->status = r.status.c_str();
  row->converged = r.converged();
  row->has_wall_s = r.wall_s.has_value();
  row->wall_s = r.wall_s.value_or(0.0);
  g_last_error.clear();
  return STMHD_OK;
}

int stmhd_results_all_converged(const stmhd_results* res) {
  if (!res) return 0;
  for (const auto& r : res->rows)
    if (!r.converged()) return 0;
  return 1;
}

stmhd_status stmhd_results_write_csv(const stmhd_results* res, const char* path) {
  if (!res || !path) return invalid("null argument");
  return guarded([&] { stmhd::emit_csv(res->rows, path); });
}

const char* stmhd_results_csv(const stmhd_results* res) { return res ? res->csv.c_str() : ""; }

void stmhd_results_free(stmhd_results* res) { delete res; }

stmhd_status stmhd_verify(stmhd_line_callback cb, void* user, int* failures) {
  return guarded([&] {
    const int n = stmhd::run_verification([&](const std::string& line) {
      if (cb) cb(line.c_str(), user);
    });
    if (failures) *failures = n;
  });
}

}  // extern "C"
