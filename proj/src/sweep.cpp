#include "stmhd/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stmhd/errors.hpp"

namespace stmhd {

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::SpaceTime: return "spacetime";
    case RunMode::Sequential: return "sequential";
    case RunMode::Both: return "both";
  }
  return "?";
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok) {
  const std::string t = trim(tok);
  try {
    const auto caret = t.find('^');
    std::size_t used = 0;
    if (caret != std::string::npos) {
      const std::string base = t.substr(0, caret), expo = t.substr(caret + 1);
      const double b = std::stod(base, &used);
      if (used != base.size()) throw std::invalid_argument(t);
      const double e = std::stod(expo, &used);
      if (used != expo.size()) throw std::invalid_argument(t);
      return std::pow(b, e);
    }
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("not a number: '" + t + "'");
  }
}

std::vector<double> parse_list(const std::string& value) {
  std::string v = value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream is(v);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(parse_number(tok));
  return out;
}

int parse_int(const std::string& value) {
  const double d = parse_number(value);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError("not an integer: '" + value + "'");
  return static_cast<int>(d);
}

bool parse_bool(const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("not a boolean: '" + value + "'");
}

}  // namespace

RunMode parse_run_mode(std::string_view name) {
  const std::string s = lower(std::string(name));
  if (s == "spacetime" || s == "space-time" || s == "all-at-once") return RunMode::SpaceTime;
  if (s == "sequential") return RunMode::Sequential;
  if (s == "both") return RunMode::Both;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

void ExperimentConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = lower(trim(key_in));
  const std::string value = trim(value_in);
  if (key == "problem") problem = parse_problem_kind(value);
  else if (key == "dx") dx = parse_list(value);
  else if (key == "dt") dt = parse_list(value);
  else if (key == "t") T = parse_list(value);
  else if (key == "mode") mode = parse_run_mode(value);
  else if (key == "precond" || key == "preconditioner") newton.variant = parse_precond_variant(value);
  else if (key == "newton_tol") newton.abs_tol = parse_number(value);
  else if (key == "newton_max_iters") newton.max_iters = parse_int(value);
  else if (key == "gmres_rel_tol") newton.gmres.rel_tol = parse_number(value);
  else if (key == "gmres_abs_tol") newton.gmres.abs_tol = parse_number(value);
  else if (key == "gmres_max_iters") newton.gmres.max_iters = parse_int(value);
  else if (key == "gmres_restart") newton.gmres.restart = parse_int(value);
  else if (key == "epsilon") epsilon = parse_number(value);
  else if (key == "forcing") forcing = parse_forcing_mode(value);
  else if (key == "timing") timing = parse_bool(value);
  else if (key == "out") out = value;
  else if (key == "seed") seed = static_cast<unsigned long>(parse_int(value));
  else throw ConfigError("unknown configuration key '" + key_in + "'");
}

void ExperimentConfig::validate() const {
  if (dx.empty() || dt.empty() || T.empty()) throw ConfigError("dx, dt and T lists must be nonempty");
  for (double v : dx) if (!(v > 0.0)) throw ConfigError("dx values must be positive");
  for (double v : dt) if (!(v > 0.0)) throw ConfigError("dt values must be positive");
  for (double v : T) if (!(v > 0.0)) throw ConfigError("T values must be positive");
  if (!(newton.abs_tol > 0.0) || newton.max_iters < 1) throw ConfigError("Newton tolerance and iteration limit must be positive");
  if (!(newton.gmres.rel_tol > 0.0) || !(newton.gmres.abs_tol > 0.0) || newton.gmres.max_iters < 1 || newton.gmres.restart < 0)
    throw ConfigError("invalid GMRES settings");
  const ProblemSpec p = make_problem(problem, epsilon);
  for (double h : dx) build_rect_mesh(p.x0, p.x1, p.y0, p.y1, h);
  for (double step : dt)
    for (double t : T) {
      if (step > t * (1.0 + 1e-12)) throw ConfigError("dt must not exceed T");
      const double r = t / step;
      if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r)) throw ConfigError("T is not an integer multiple of dt");
    }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    cfg.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

ResultRow base_row(const ExperimentConfig& cfg, double dx, double dt, double T, RunMode mode) {
  ResultRow r;
  r.problem = std::string(to_string(cfg.problem));
  r.dx = dx;
  r.dt = dt;
  r.T = T;
  r.nt = static_cast<int>(std::lround(T / dt));
  r.mode = std::string(to_string(mode));
  return r;
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ResultRow> rows;
  const ProblemSpec problem = make_problem(cfg.problem, cfg.epsilon);
  for (double dx : cfg.dx)
    for (double dt : cfg.dt)
      for (double T : cfg.T) {
        const bool st = cfg.mode != RunMode::Sequential, seq = cfg.mode != RunMode::SpaceTime;
        std::optional<SolveStats> st_stats, seq_stats;
        std::string failure;
        std::optional<Discretization> disc;
        try {
          disc.emplace(problem, dx, dt, T, cfg.forcing);
        } catch (const Error& e) {
          failure = std::string("failed: ") + e.what();
        }
        auto record = [&](RunMode mode, auto&& solve) {
          ResultRow r = base_row(cfg, dx, dt, T, mode);
          if (!disc) {
            r.status = sanitize(failure);
            rows.push_back(r);
            return;
          }
          try {
            SolveResult res = solve(*disc);
            r.newton = res.stats.newton_iters;
            r.avg_gmres = res.stats.avg_gmres();
            if (mode == RunMode::Sequential) r.effective_steps = res.stats.effective_steps;
            r.status = res.stats.converged ? "converged" : "not_converged";
            if (cfg.timing) r.wall_s = res.stats.wall_seconds;
            (mode == RunMode::Sequential ? seq_stats : st_stats) = std::move(res.stats);
          } catch (const Error& e) {
            r.status = sanitize(std::string("failed: ") + e.what());
          }
          rows.push_back(r);
        };
        if (st) record(RunMode::SpaceTime, [&](const Discretization& d) { return solve_all_at_once(d, cfg.newton); });
        if (seq) record(RunMode::Sequential, [&](const Discretization& d) { return solve_sequential(d, cfg.newton); });
        if (cfg.mode == RunMode::Both) {
          ResultRow r = base_row(cfg, dx, dt, T, RunMode::Both);
          if (st_stats && seq_stats) {
            r.newton = st_stats->newton_iters;
            r.avg_gmres = st_stats->avg_gmres();
            r.effective_steps = seq_stats->effective_steps;
            const bool ok = st_stats->converged && seq_stats->converged;
            r.status = ok ? "converged" : "not_converged";
            try {
              const OverheadRatios ratios = compute_overhead_ratios(*st_stats, *seq_stats);
              r.newton_ratio = ratios.newton;
              r.gmres_ratio = ratios.gmres;
            } catch (const Error& e) {
              r.status = sanitize(std::string("failed: ") + e.what());
            }
            if (cfg.timing) r.wall_s = st_stats->wall_seconds + seq_stats->wall_seconds;
          } else {
            r.status = "failed: a component run did not complete";
          }
          rows.push_back(r);
        }
      }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string s = std::string(kCsvHeader) + "\n";
  for (const ResultRow& r : rows) {
    s += r.problem + "," + fmt(r.dx) + "," + fmt(r.dt) + "," + fmt(r.T) + "," + std::to_string(r.nt) + "," + r.mode + "," +
         std::to_string(r.newton) + "," + fmt(r.avg_gmres) + "," +
         (r.effective_steps ? std::to_string(*r.effective_steps) : "") + "," +
         (r.newton_ratio ? fmt(*r.newton_ratio) : "") + "," + (r.gmres_ratio ? fmt(*r.gmres_ratio) : "") + "," +
         sanitize(r.status) + "," + (r.wall_s ? fmt(*r.wall_s) : "") + "\n";
  }
  return s;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw ConfigError("no result rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << format_csv(rows);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw IoError("CSV header mismatch");
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 13) throw IoError("CSV row has " + std::to_string(f.size()) + " fields, expected 13");
    try {
      ResultRow r;
      r.problem = f[0];
      r.dx = std::stod(f[1]);
      r.dt = std::stod(f[2]);
      r.T = std::stod(f[3]);
      r.nt = std::stoi(f[4]);
      r.mode = f[5];
      r.newton = std::stoi(f[6]);
      r.avg_gmres = std::stod(f[7]);
      if (!f[8].empty()) r.effective_steps = std::stoi(f[8]);
      if (!f[9].empty()) r.newton_ratio = std::stod(f[9]);
      if (!f[10].empty()) r.gmres_ratio = std::stod(f[10]);
      r.status = f[11];
      if (!f[12].empty()) r.wall_s = std::stod(f[12]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw IoError("malformed CSV row: " + line);
    }
  }
  return rows;
}

}  // namespace stmhd
