#include "mhd25/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mhd25/errors.hpp"
#include "mhd25/linear_oracle.hpp"
#include "mhd25/spectral_ops.hpp"

namespace mhd25 {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + v + "'");
  }
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* scheme_name(Scheme s) {
  return s == Scheme::if_ssprk3 ? "if_ssprk3" : "if_rk2";
}
const char* kind_name(InitKind k) {
  switch (k) {
    case InitKind::random_spectrum: return "random_spectrum";
    case InitKind::single_mode: return "single_mode";
    default: return "gaussian_blob";
  }
}
const char* polarization_name(Polarization p) {
  return p == Polarization::compressible ? "compressible" : "solenoidal";
}
const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::nonlinear: return "nonlinear";
    case RunMode::linear_oracle: return "linear_oracle";
    default: return "heat_reference";
  }
}

Scheme scheme_from(const std::string& v) {
  if (v == "if_ssprk3") return Scheme::if_ssprk3;
  if (v == "if_rk2") return Scheme::if_rk2;
  throw ConfigError("unknown time.scheme '" + v + "'");
}
InitKind kind_from(const std::string& v) {
  if (v == "random_spectrum") return InitKind::random_spectrum;
  if (v == "single_mode") return InitKind::single_mode;
  if (v == "gaussian_blob") return InitKind::gaussian_blob;
  throw ConfigError("unknown init.kind '" + v + "'");
}
Polarization polarization_from(const std::string& v) {
  if (v == "compressible") return Polarization::compressible;
  if (v == "solenoidal") return Polarization::solenoidal;
  throw ConfigError("unknown init.polarization '" + v + "'");
}
RunMode mode_from(const std::string& v) {
  if (v == "nonlinear") return RunMode::nonlinear;
  if (v == "linear_oracle") return RunMode::linear_oracle;
  if (v == "heat_reference") return RunMode::heat_reference;
  throw ConfigError("unknown run.mode '" + v + "'");
}

}  // namespace

StepControl ExperimentConfig::step_control() const {
  StepControl ctl;
  ctl.cfl_advective = cfl;
  ctl.dt_max = dt_max;
  ctl.t_end = t_end;
  ctl.scheme = scheme;
  return ctl;
}

void ExperimentConfig::validate() const {
  params.validate();
  step_control().validate();
  if (t_end < 0.0) throw ConfigError("time.t_end must be >= 0");
  if (!(amplitude >= 0.0)) throw ConfigError("init.amplitude must be >= 0");
  if (!(sigma > 0.0)) throw ConfigError("init.sigma must be positive");
  if (!(cutoff > 0.0)) throw ConfigError("init.cutoff must be positive");
  if (!(lp_sigma > 0.0) || lp_sigma > 1.0)
    throw ConfigError("lp.sigma must lie in (0, 1]");
  if (stride < 1) throw ConfigError("output.stride must be >= 1");
  if (out_path.empty()) throw ConfigError("output.path must be non-empty");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not 'section.key = value': '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        " has an empty key or value");

    if (key == "grid.n") cfg.n = int(parse_int(key, val));
    else if (key == "grid.box_length") cfg.box_length = parse_double(key, val);
    else if (key == "params.mu") cfg.params.mu = parse_double(key, val);
    else if (key == "params.lambda") cfg.params.lambda = parse_double(key, val);
    else if (key == "params.A") cfg.params.A = parse_double(key, val);
    else if (key == "params.gamma") cfg.params.gamma = parse_double(key, val);
    else if (key == "time.t_end") cfg.t_end = parse_double(key, val);
    else if (key == "time.cfl") cfg.cfl = parse_double(key, val);
    else if (key == "time.dt_max") cfg.dt_max = parse_double(key, val);
    else if (key == "time.scheme") cfg.scheme = scheme_from(val);
    else if (key == "init.kind") cfg.kind = kind_from(val);
    else if (key == "init.amplitude") cfg.amplitude = parse_double(key, val);
    else if (key == "init.sigma") cfg.sigma = parse_double(key, val);
    else if (key == "init.seed") cfg.seed = std::uint64_t(parse_int(key, val));
    else if (key == "init.cutoff") cfg.cutoff = parse_double(key, val);
    else if (key == "init.mean_a") cfg.mean_a = parse_double(key, val);
    else if (key == "init.mean_b") cfg.mean_b = parse_double(key, val);
    else if (key == "init.mode_kx") cfg.mode_kx = int(parse_int(key, val));
    else if (key == "init.mode_ky") cfg.mode_ky = int(parse_int(key, val));
    else if (key == "init.polarization") cfg.polarization = polarization_from(val);
    else if (key == "lp.j0") cfg.j0 = int(parse_int(key, val));
    else if (key == "lp.sigma") cfg.lp_sigma = parse_double(key, val);
    else if (key == "output.path") cfg.out_path = val;
    else if (key == "output.stride") cfg.stride = int(parse_int(key, val));
    else if (key == "run.mode") cfg.mode = mode_from(val);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string write_config_echo(const ExperimentConfig& cfg) {
  std::ostringstream o;
  o << "grid.n = " << cfg.n << "\n";
  o << "grid.box_length = " << fmt17(cfg.box_length) << "\n";
  o << "params.mu = " << fmt17(cfg.params.mu) << "\n";
  o << "params.lambda = " << fmt17(cfg.params.lambda) << "\n";
  o << "params.A = " << fmt17(cfg.params.A) << "\n";
  o << "params.gamma = " << fmt17(cfg.params.gamma) << "\n";
  o << "time.t_end = " << fmt17(cfg.t_end) << "\n";
  o << "time.cfl = " << fmt17(cfg.cfl) << "\n";
  o << "time.dt_max = " << fmt17(cfg.dt_max) << "\n";
  o << "time.scheme = " << scheme_name(cfg.scheme) << "\n";
  o << "init.kind = " << kind_name(cfg.kind) << "\n";
  o << "init.amplitude = " << fmt17(cfg.amplitude) << "\n";
  o << "init.sigma = " << fmt17(cfg.sigma) << "\n";
  o << "init.seed = " << cfg.seed << "\n";
  o << "init.cutoff = " << fmt17(cfg.cutoff) << "\n";
  o << "init.mean_a = " << fmt17(cfg.mean_a) << "\n";
  o << "init.mean_b = " << fmt17(cfg.mean_b) << "\n";
  o << "init.mode_kx = " << cfg.mode_kx << "\n";
  o << "init.mode_ky = " << cfg.mode_ky << "\n";
  o << "init.polarization = " << polarization_name(cfg.polarization) << "\n";
  o << "lp.j0 = " << cfg.j0 << "\n";
  o << "lp.sigma = " << fmt17(cfg.lp_sigma) << "\n";
  o << "output.path = " << cfg.out_path << "\n";
  o << "output.stride = " << cfg.stride << "\n";
  o << "run.mode = " << mode_name(cfg.mode) << "\n";
  return o.str();
}

namespace {

// Writes c at integer lattice frequency (kx, ky), kx >= 0, together with the
// stored conjugate partner when the column is self-conjugate (kx = 0 or n/2),
// keeping the coefficient array Hermitian.
void set_mode(ScalarField& f, int kx, int ky, std::complex<double> c) {
  const auto& g = f.grid();
  const int n = g.n;
  auto& cf = f.coeffs_mut();
  const int row = (ky % n + n) % n;
  cf[g.idx(row, kx)] = c;
  if ((kx == 0 || kx == n / 2) && row != 0) {
    const int mrow = (n - row) % n;
    if (mrow != row) cf[g.idx(mrow, kx)] = std::conj(c);
  }
}

double x0_style_norm(const PerturbationState& s, const LittlewoodPaley& lp) {
  const HelmholtzParts parts = helmholtz_project(s.u);
  const BesovSpec b0{0.0, 2.0, 1.0};
  const BesovSpec b1{1.0, 2.0, 1.0};
  return lp.besov_norm(s.a, b0, Part::low) +
         lp.besov_norm(parts.potential, b0, Part::low) +
         lp.besov_norm(s.b, b0, Part::low) + lp.besov_norm(s.a, b1, Part::high) +
         lp.besov_norm(s.b, b1, Part::high) +
         lp.besov_norm(parts.solenoidal, b0, Part::full) +
         lp.besov_norm(parts.potential, b0, Part::high);
}

}  // namespace

PerturbationState generate_initial_data(const ExperimentConfig& cfg,
                                        std::shared_ptr<const SpectralGrid> grid) {
  cfg.validate();
  PerturbationState s(grid);
  const int n = grid->n;
  const int nkx = grid->nkx();

  if (cfg.amplitude > 0.0) {
    switch (cfg.kind) {
      case InitKind::random_spectrum: {
        std::mt19937_64 rng(cfg.seed);
        // fixed mapping to [0,1): top 53 bits; avoids distribution
        // implementation differences across standard libraries
        auto unit = [&rng]() { return double(rng() >> 11) * 0x1p-53; };
        const double two_pi = 8.0 * std::atan(1.0);
        auto& ca = s.a.coeffs_mut();
        auto& c1 = s.u.x.coeffs_mut();
        auto& c2 = s.u.y.coeffs_mut();
        auto& cb = s.b.coeffs_mut();
        for (int iy = 0; iy < n; ++iy) {
          for (int ix = 0; ix < nkx; ++ix) {
            // draw in fixed order whether or not the mode is kept
            const double pa = two_pi * unit();
            const double p1 = two_pi * unit();
            const double p2 = two_pi * unit();
            const double pb = two_pi * unit();
            if (ix == 0 && iy == 0) continue;
            if (!grid->dealias_pass(iy, ix)) continue;
            const double r = std::sqrt(grid->xi_abs2(iy, ix));
            if (r > cfg.cutoff) continue;
            const double mod = std::pow(r, cfg.sigma - 1.0);
            const std::size_t k = grid->idx(iy, ix);
            ca[k] = std::polar(mod, pa);
            c1[k] = std::polar(mod, p1);
            c2[k] = std::polar(mod, p2);
            cb[k] = std::polar(mod, pb);
          }
        }
        // Hermitian closure of the self-conjugate columns
        for (auto* f : {&s.a, &s.u.x, &s.u.y, &s.b}) {
          auto& c = f->coeffs_mut();
          for (int ix : {0, n / 2}) {
            for (int iy = 1; iy < n / 2; ++iy)
              c[grid->idx(n - iy, ix)] = std::conj(c[grid->idx(iy, ix)]);
            c[grid->idx(0, ix)] = c[grid->idx(0, ix)].real();
            c[grid->idx(n / 2, ix)] = c[grid->idx(n / 2, ix)].real();
          }
        }
        LittlewoodPaley lp(grid, build_cutoffs(), cfg.j0);
        const double x0 = x0_style_norm(s, lp);
        if (!(x0 > 0.0))
          throw ConfigError(
              "init.cutoff excludes every lattice mode; nothing to scale");
        const double scale = cfg.amplitude / x0;
        s.a *= scale;
        s.u *= scale;
        s.b *= scale;
        break;
      }
      case InitKind::single_mode: {
        int kx = cfg.mode_kx, ky = cfg.mode_ky;
        if (kx == 0 && ky == 0)
          throw ConfigError("init.mode_kx/ky must not both be zero");
        if (kx < 0) {
          kx = -kx;
          ky = -ky;
        }
        const int row = (ky % n + n) % n;
        if (kx >= nkx || !grid->dealias_pass(row, kx))
          throw ConfigError("single_mode frequency is outside the dealiased grid");
        const double x1 = grid->dxi() * kx;
        const double x2 = grid->dxi() * ky;
        const double r = std::hypot(x1, x2);
        double d1, d2;
        if (cfg.polarization == Polarization::compressible) {
          d1 = x1 / r;
          d2 = x2 / r;
        } else {
          d1 = -x2 / r;
          d2 = x1 / r;
        }
        // both storage layouts carry two lattice copies of the mode
        const double c = cfg.amplitude / (grid->box_length * std::sqrt(2.0));
        set_mode(s.u.x, kx, ky, c * d1);
        set_mode(s.u.y, kx, ky, c * d2);
        break;
      }
      case InitKind::gaussian_blob: {
        const double L = grid->box_length;
        const double w = L / 16.0;
        std::vector<double> bump(grid->real_size());
        for (int iy = 0; iy < n; ++iy) {
          for (int ix = 0; ix < n; ++ix) {
            double dx = std::fabs(ix * grid->dx() - 0.5 * L);
            double dy = std::fabs(iy * grid->dx() - 0.5 * L);
            dx = std::min(dx, L - dx);
            dy = std::min(dy, L - dy);
            bump[std::size_t(iy) * n + ix] =
                cfg.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
          }
        }
        s.a = dealias(ScalarField::from_samples(grid, bump));
        s.b = dealias(ScalarField::from_samples(grid, std::move(bump)));
        break;
      }
    }
  }

  s.a.coeffs_mut()[0] = cfg.mean_a;
  s.b.coeffs_mut()[0] = cfg.mean_b;
  s.t = 0.0;

  if (s.a.max_abs() > 0.5)
    throw ConfigError(
        "initial data violates sup|a0| <= 1/2; lower init.amplitude or mean_a");
  validate_state(s);
  return s;
}

const char* const kCsvHeader =
    "t,l2_phi,l2_u,l2_a,l2_b,besov_low_phi_u_B0,besov_high_phi_B1,"
    "besov_high_u_B0,besov_low_phi_u_B2,besov_high_u_B2,lyapunov,X_t,"
    "neg_idx_a,neg_idx_b,neg_idx_phi,neg_idx_u,total_a,total_b,min_rho";

std::string format_records_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    const double cols[19] = {r.t,
                             r.l2_phi,
                             r.l2_u,
                             r.l2_a,
                             r.l2_b,
                             r.besov_panel.at(kPanelLowPhiUB0),
                             r.besov_panel.at(kPanelHighPhiB1),
                             r.besov_panel.at(kPanelHighUB0),
                             r.besov_panel.at(kPanelLowPhiUB2),
                             r.besov_panel.at(kPanelHighUB2),
                             r.lyapunov,
                             r.x_t,
                             r.neg_idx_a,
                             r.neg_idx_b,
                             r.neg_idx_phi,
                             r.neg_idx_u,
                             r.total_a,
                             r.total_b,
                             r.min_rho};
    for (int i = 0; i < 19; ++i) {
      if (i) out += ',';
      out += fmt17(cols[i]);
    }
    out += '\n';
  }
  return out;
}

void write_records_csv(const std::string& path,
                       const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << format_records_csv(records);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<std::pair<double, double>> read_csv_column(const std::string& path,
                                                       const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> names;
  std::istringstream hs(line);
  std::string tok;
  while (std::getline(hs, tok, ',')) names.push_back(trim(tok));
  int col = -1;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == column) col = int(i);
  if (col < 0)
    throw ConfigError("CSV '" + path + "' has no column '" + column + "'");

  std::vector<std::pair<double, double>> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, tok, ','))
      row.push_back(parse_double("csv line " + std::to_string(lineno), tok));
    if (int(row.size()) <= col)
      throw ConfigError("CSV line " + std::to_string(lineno) + " is short");
    out.emplace_back(row[0], row[std::size_t(col)]);
  }
  return out;
}

namespace {

nlohmann::ordered_json fit_to_json(const DecayFit& f) {
  return nlohmann::ordered_json{{"exponent", f.exponent},
                                {"r_squared", f.r_squared},
                                {"t_min", f.t_min},
                                {"t_max", f.t_max},
                                {"n_samples", f.n_samples}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  auto grid = make_grid(cfg.n, cfg.box_length);
  const LittlewoodPaley lp(grid, build_cutoffs(), cfg.j0);
  const StepControl ctl = cfg.step_control();

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_path, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory '" + cfg.out_path +
                             "': " + ec.message());

  PerturbationState state = generate_initial_data(cfg, grid);
  std::vector<DiagnosticsRecord> records;
  auto observe = [&](const PerturbationState& st, std::size_t) {
    records.push_back(build_record(st, cfg.params, lp, cfg.lp_sigma));
    records.back().x_t = solution_norm_X(records);
  };

  const std::string csv_path = (fs::path(cfg.out_path) / "records.csv").string();
  const std::string echo_path =
      (fs::path(cfg.out_path) / "config_echo.cfg").string();
  const std::string summary_path =
      (fs::path(cfg.out_path) / "summary.json").string();

  std::string gate_error;
  double gate_time = 0.0;
  try {
    if (cfg.mode == RunMode::nonlinear) {
      state = integrate(std::move(state), cfg.params, ctl, cfg.stride, observe);
    } else {
      observe(state, 0);
      const double tol = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
      const double chunk = compute_dt(state, cfg.params, ctl) * cfg.stride;
      std::size_t k = 0;
      while (state.t < cfg.t_end - tol) {
        const double target = std::min(state.t + chunk, cfg.t_end);
        const double dur = target - state.t;
        state = (cfg.mode == RunMode::linear_oracle)
                    ? evolve_linear_exact(state, cfg.params, dur)
                    : evolve_heat(state, cfg.params, dur);
        state.t = target;
        observe(state, ++k);
      }
    }
  } catch (const ValidityError& e) {
    gate_error = e.what();
    gate_time = e.last_good_time;
  }

  RunReport report{std::move(records), std::move(state), {}, {}, csv_path,
                   echo_path, summary_path};

  // decay fit of the combined (phi, u) L2 norm over the standard window
  if (cfg.t_end > 10.0 && gate_error.empty()) {
    std::vector<std::pair<double, double>> series;
    series.reserve(report.records.size());
    for (const auto& r : report.records)
      series.emplace_back(r.t, r.l2_phi + r.l2_u);
    try {
      report.fits["l2_phi_u"] = fit_decay_exponent(
          series, 10.0, std::min(cfg.t_end, 200.0), "l2_phi_u");
    } catch (const ConfigError& e) {
      report.fit_errors["l2_phi_u"] = e.what();
    }
  }

  write_records_csv(csv_path, report.records);
  write_text_file(echo_path, write_config_echo(cfg));

  nlohmann::ordered_json j;
  j["schema"] = "mhd25-summary-1";
  {
    nlohmann::ordered_json c;
    std::istringstream echo(write_config_echo(cfg));
    std::string line;
    while (std::getline(echo, line)) {
      const auto eq = line.find('=');
      c[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    j["config"] = c;
  }
  j["n_records"] = report.records.size();
  if (!report.records.empty()) {
    const auto& first = report.records.front();
    const auto& last = report.records.back();
    j["initial"] = {{"t", first.t},
                    {"x_t", first.x_t},
                    {"lyapunov", first.lyapunov},
                    {"total_a", first.total_a},
                    {"total_b", first.total_b}};
    j["final"] = {{"t", last.t},
                  {"x_t", last.x_t},
                  {"lyapunov", last.lyapunov},
                  {"total_a", last.total_a},
                  {"total_b", last.total_b},
                  {"min_rho", last.min_rho}};

    double x_max = 0.0, min_rho = std::numeric_limits<double>::infinity();
    double drift_a = 0.0, drift_b = 0.0, worst_lyap_rise = 0.0;
    nlohmann::ordered_json ratios;
    for (const auto& r : report.records) {
      x_max = std::max(x_max, r.x_t);
      min_rho = std::min(min_rho, r.min_rho);
      drift_a = std::max(drift_a, std::fabs(r.total_a - first.total_a));
      drift_b = std::max(drift_b, std::fabs(r.total_b - first.total_b));
    }
    for (std::size_t i = 1; i < report.records.size(); ++i) {
      const auto& prev = report.records[i - 1];
      const auto& cur = report.records[i];
      if (prev.t >= 1.0 && prev.lyapunov > 0.0)
        worst_lyap_rise = std::max(
            worst_lyap_rise, (cur.lyapunov - prev.lyapunov) / prev.lyapunov);
    }
    auto ratio = [&](double now, double init) {
      return init > 0.0 ? now / init : 0.0;
    };
    double ra = 0.0, rb = 0.0, rphi = 0.0, ru = 0.0;
    for (const auto& r : report.records) {
      ra = std::max(ra, ratio(r.neg_idx_a, first.neg_idx_a));
      rb = std::max(rb, ratio(r.neg_idx_b, first.neg_idx_b));
      rphi = std::max(rphi, ratio(r.neg_idx_phi, first.neg_idx_phi));
      ru = std::max(ru, ratio(r.neg_idx_u, first.neg_idx_u));
    }
    ratios["a"] = ra;
    ratios["b"] = rb;
    ratios["phi"] = rphi;
    ratios["u"] = ru;
    j["invariants"] = {{"x_max", x_max},
                       {"x_ratio_vs_initial",
                        first.x_t > 0.0 ? x_max / first.x_t : 0.0},
                       {"min_rho", min_rho},
                       {"total_a_max_drift", drift_a},
                       {"total_b_max_drift", drift_b},
                       {"lyapunov_max_rel_increase_after_t1", worst_lyap_rise},
                       {"neg_index_max_ratio", ratios}};
  }
  {
    nlohmann::ordered_json fits;
    for (const auto& [name, fit] : report.fits) fits[name] = fit_to_json(fit);
    for (const auto& [name, err] : report.fit_errors)
      fits[name] = {{"error", err}};
    j["fits"] = fits;
  }
  if (!gate_error.empty())
    j["validity_gate"] = {{"tripped", true},
                          {"last_good_time", gate_time},
                          {"message", gate_error}};
  write_text_file(summary_path, j.dump(2) + "\n");

  if (!gate_error.empty()) throw ValidityError(gate_error, gate_time);
  return report;
}

}  // namespace mhd25
