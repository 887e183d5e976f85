// gravent: gravitational entanglement of two trapped particles, Gaussian
// covariance-matrix simulation and analysis CLI.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravent/gravent.hpp"

namespace {

using gravent::json;
using gravent::Table;

struct CommonOpts {
  std::string format = "csv";
  std::string out;
  int precision = 16;  // decimal digits; <= 16 selects binary64
  std::uint64_t seed = 42;
  int jobs = 1;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output path (default: stdout)");
  sub->add_option("--precision", c.precision,
                  "working precision in decimal digits; <=16 binary64, else 30/50/100")
      ->check(CLI::Range(1, 100));
  sub->add_option("--seed", c.seed, "RNG seed for sampling subcommands");
  sub->add_option("--jobs", c.jobs, "worker threads (output is identical for any value)")
      ->check(CLI::Range(1, 256));
}

struct PhysicalOpts {
  double m = 1e-15;       // kg
  double omega = 1e3;     // rad/s (angular frequency)
  double d = 1e-4;        // m
  double temperature = -1;  // K; negative = unset
  double r = 0;
  bool r_set = false;
};

void add_physical(CLI::App* sub, PhysicalOpts& p, bool need_omega = true) {
  sub->add_option("--m", p.m, "particle mass [kg]");
  if (need_omega) sub->add_option("--omega", p.omega, "trap angular frequency [rad/s]");
  sub->add_option("--d", p.d, "trap separation [m]");
  sub->add_option("--T", p.temperature, "temperature [K]");
  sub->add_option("--r", p.r, "two-mode squeezing parameter")
      ->each([&p](const std::string&) { p.r_set = true; });
}

template <class Real>
gravent::SystemParams<Real> to_system(const PhysicalOpts& p) {
  gravent::SystemParams<Real> s;
  s.mass = Real(p.m);
  s.omega = Real(p.omega);
  s.separation = Real(p.d);
  if (p.temperature >= 0) s.temperature = Real(p.temperature);
  if (p.r_set) s.squeezing = Real(p.r);
  return s;
}

Table key_value_table() {
  Table t;
  t.columns = {"key", "value"};
  return t;
}

std::vector<std::string> provenance_from_meta(const json& meta) {
  std::vector<std::string> lines;
  lines.push_back(std::string("gravent ") + gravent::version);
  for (const auto& [key, value] : meta.items()) {
    if (value.is_string())
      lines.push_back(key + ": " + value.get<std::string>());
    else
      lines.push_back(key + ": " + value.dump());
  }
  return lines;
}

void write_output(const CommonOpts& c, const Table& table, const json& meta) {
  const std::string payload = c.format == "json"
                                  ? gravent::emit_json(table, meta)
                                  : gravent::emit_csv(table, provenance_from_meta(meta));
  if (c.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw gravent::io_error("cannot open output file: " + c.out);
  f << payload;
  if (!f) throw gravent::io_error("failed writing output file: " + c.out);
}

template <class Real>
void fill_precision_meta(json& meta, int requested) {
  meta["precision"] = json{{"requested_digits", requested},
                           {"effective_digits", gravent::decimal_digits<Real>()},
                           {"mode", gravent::is_extended_v<Real> ? "decimal" : "binary64"}};
}

json constants_meta() {
  gravent::PhysicalConstants<double> k;
  return json{{"G", k.G}, {"hbar", k.hbar}, {"k_B", k.k_B}, {"c", k.c}};
}

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

// ---------------------------------------------------------------- params ---

template <class Real>
void run_params(const PhysicalOpts& phys, const CommonOpts& common, json meta) {
  const auto sp = to_system<Real>(phys);
  const auto dp = gravent::derive_params(sp);
  Table t = key_value_table();
  t.rows.push_back({json("omega_prime"), gravent::num_cell(dp.omega_prime)});
  t.rows.push_back({json("epsilon"), gravent::num_cell(dp.epsilon)});
  t.rows.push_back({json("epsilon_hat"), gravent::num_cell(dp.epsilon_hat)});
  if (dp.displacement)
    t.rows.push_back({json("delta"), gravent::num_cell(*dp.displacement)});
  else
    t.rows.push_back({json("delta"), json("singular")});
  if (dp.thermal) {
    t.rows.push_back({json("theta"), gravent::num_cell(dp.thermal->theta)});
    t.rows.push_back(
        {json("theta_minus_one"), gravent::num_cell(dp.thermal->theta_minus_one)});
  }
  write_output(common, t, meta);
}

// ---------------------------------------------------------------- evolve ---

struct EvolveOpts {
  double t_seconds = -1;  // negative = use phase
  double phase = 1.5707963267948966;
  std::string state = "auto";  // auto|thermal|squeezed|standard-form
  double sf[4] = {0.5, 0.5, 0, 0};
};

template <class Real>
void run_evolve(const PhysicalOpts& phys, const EvolveOpts& ev, const CommonOpts& common,
                json meta) {
  const auto sp = to_system<Real>(phys);
  const auto dp = gravent::derive_params(sp);

  std::string state = ev.state;
  if (state == "auto") state = phys.r_set ? "squeezed" : "thermal";

  gravent::CovarianceMatrix<Real> sigma0 = [&] {
    if (state == "squeezed")
      return gravent::two_mode_squeezed_state(Real(phys.r));
    if (state == "standard-form")
      return gravent::standard_form_state(gravent::StandardFormParams<Real>{
          Real(ev.sf[0]), Real(ev.sf[1]), Real(ev.sf[2]), Real(ev.sf[3])});
    const Real theta = dp.thermal ? dp.thermal->theta : Real(1);
    return gravent::thermal_state(theta);
  }();

  const Real phase =
      ev.t_seconds >= 0 ? dp.omega_prime * Real(ev.t_seconds) : Real(ev.phase);
  const auto prop = gravent::propagator_closed_form(dp.epsilon, phase);
  const auto before = gravent::symplectic_eigenvalue(sigma0);
  const auto after = gravent::symplectic_eigenvalue(gravent::evolve(sigma0, prop));

  Table t = key_value_table();
  t.rows.push_back({json("state"), json(state)});
  t.rows.push_back({json("omega_prime_t"), gravent::num_cell(phase)});
  if (ev.t_seconds >= 0)
    t.rows.push_back({json("time_seconds"), gravent::num_cell(Real(ev.t_seconds))});
  t.rows.push_back({json("nu0"), gravent::num_cell(before.nu)});
  t.rows.push_back({json("nu"), gravent::num_cell(after.nu)});
  t.rows.push_back({json("one_minus_nu"), gravent::num_cell(after.one_minus_nu)});
  t.rows.push_back({json("negativity"), gravent::num_cell(after.negativity)});
  t.rows.push_back({json("log_negativity"), gravent::num_cell(after.log_negativity)});
  t.rows.push_back({json("Delta"), gravent::num_cell(*after.Delta)});
  t.rows.push_back({json("det_sigma"), gravent::num_cell(*after.det_sigma)});
  t.rows.push_back(
      {json("relative_change"),
       gravent::num_cell((before.one_minus_nu - after.one_minus_nu) / before.nu)});
  t.rows.push_back(
      {json("symplectic_defect"), gravent::num_cell(prop.symplectic_defect)});
  write_output(common, t, meta);
}

// ----------------------------------------------------------------- sweep ---

struct SweepOpts {
  std::string var = "omega";
  double lo = 5e2, hi = 3e3;
  int points = 200;
  std::string spacing = "log";
  std::string engine = "first-order";
  double phase = -1;  // negative = maximize over time
  int phase_grid = 64;
};

template <class Real>
void run_sweep_cmd(const PhysicalOpts& phys, const SweepOpts& so, const CommonOpts& common,
                   json meta) {
  gravent::SweepSpec<Real> spec;
  const std::string v = so.var;
  spec.variable = v == "omega"       ? gravent::SweepVariable::omega
                  : v == "T"         ? gravent::SweepVariable::temperature
                  : v == "m"         ? gravent::SweepVariable::mass
                  : v == "d"         ? gravent::SweepVariable::separation
                  : v == "r"         ? gravent::SweepVariable::squeezing
                                     : throw gravent::invalid_argument_error(
                                           "unknown sweep variable: " + v);
  spec.lo = Real(so.lo);
  spec.hi = Real(so.hi);
  spec.points = so.points;
  spec.log_spacing = so.spacing == "log";
  spec.fixed = to_system<Real>(phys);
  spec.engine = so.engine == "exact" ? gravent::SweepEngine::exact
                                     : gravent::SweepEngine::first_order;
  spec.maximize_over_time = so.phase < 0;
  if (so.phase >= 0) spec.phase = Real(so.phase);
  spec.phase_grid_points = so.phase_grid;

  const auto points = gravent::run_sweep(spec, common.jobs);
  meta["nu_below_0p95_count"] = gravent::detectable_count(points);
  const char* x_unit = v == "omega" ? "rad/s"
                       : v == "T"   ? "K"
                       : v == "m"   ? "kg"
                       : v == "d"   ? "m"
                                    : "dimensionless";
  meta["units"] = json{{"x", x_unit},
                       {"nu", "dimensionless"},
                       {"one_minus_nu", "dimensionless"},
                       {"log_negativity", "bits"}};
  write_output(common, gravent::curve_table(points), meta);
}

// ------------------------------------------------------------- omega-opt ---

template <class Real>
void run_omega_opt(const PhysicalOpts& phys, double lo, double hi, const CommonOpts& common,
                   json meta) {
  auto sp = to_system<Real>(phys);
  Real blo(lo), bhi(hi);
  if (lo <= 0 || hi <= 0) {
    if (!sp.temperature)
      throw gravent::invalid_argument_error("--T required when no bracket is given");
    const auto br = gravent::omega_opt_bracket(*sp.temperature);
    blo = br.first;
    bhi = br.second;
  }
  const auto opt = gravent::find_omega_opt(sp, blo, bhi);
  Table t = key_value_table();
  t.rows.push_back({json("omega_opt"), gravent::num_cell(opt.first)});
  t.rows.push_back({json("log_negativity_max"), gravent::num_cell(opt.second)});
  try {
    const Real w_min = gravent::find_omega_min(sp, blo, opt.first);
    t.rows.push_back({json("omega_min"), gravent::num_cell(w_min)});
  } catch (const gravent::no_sign_change&) {
    // entangled across the whole bracket: no onset to report
    t.rows.push_back({json("omega_min"), json("below_bracket")});
  }
  write_output(common, t, meta);
}

// ------------------------------------------------------------------ tmax ---

template <class Real>
void run_tmax(const PhysicalOpts& phys, const CommonOpts& common, json meta) {
  auto sp = to_system<Real>(phys);
  const Real closed = gravent::t_max_thermal(sp);
  const Real numeric = gravent::t_max_numeric(sp, closed / 10, closed * 10);
  using std::fabs;
  Table t = key_value_table();
  t.rows.push_back({json("t_max_closed_form"), gravent::num_cell(closed)});
  t.rows.push_back({json("t_max_numeric"), gravent::num_cell(numeric)});
  t.rows.push_back(
      {json("relative_difference"), gravent::num_cell(fabs(numeric - closed) / closed)});
  write_output(common, t, meta);
}

// -------------------------------------------------------------- squeezed ---

template <class Real>
void run_squeezed(const PhysicalOpts& phys, double eps_flag, double phase,
                  const CommonOpts& common, json meta) {
  using std::exp;
  using std::fabs;
  const Real r(phys.r);
  Real eps;
  if (eps_flag >= 0) {
    eps = Real(eps_flag);
  } else {
    const auto dp = gravent::derive_params(to_system<Real>(phys));
    eps = dp.epsilon_hat;
  }
  const Real ph = phase >= 0 ? Real(phase) : gravent::pi<Real>() / 2;
  const auto first = gravent::nu_squeezed_first_order(r, eps, ph);
  Table t = key_value_table();
  t.rows.push_back({json("r"), gravent::num_cell(r)});
  t.rows.push_back({json("eps"), gravent::num_cell(eps)});
  t.rows.push_back({json("phase"), gravent::num_cell(ph)});
  t.rows.push_back({json("nu0"), gravent::num_cell(exp(-fabs(r)))});
  t.rows.push_back({json("nu"), gravent::num_cell(first.nu)});
  t.rows.push_back({json("one_minus_nu"), gravent::num_cell(first.one_minus_nu)});
  t.rows.push_back({json("log_negativity"), gravent::num_cell(first.log_negativity)});
  t.rows.push_back({json("delta_second_order"),
                    gravent::num_cell(gravent::delta_squeezed_second_order(r, eps, ph))});
  try {
    t.rows.push_back({json("t_max_squeezed"),
                      gravent::num_cell(gravent::t_max_squeezed(r, eps, Real(phys.omega)))});
  } catch (const gravent::error&) {
    // no finite threshold for r <= 0 at vanishing coupling
    t.rows.push_back({json("t_max_squeezed"), json("undefined")});
  }
  write_output(common, t, meta);
}

// ----------------------------------------------------------- bound-check ---

template <class Real>
void run_bound_check(int n, double eps, const std::vector<double>& phases, double a_max,
                     const CommonOpts& common, json meta) {
  std::vector<Real> ph;
  for (double p : phases) ph.push_back(Real(p));
  if (ph.empty()) {
    ph.push_back(gravent::pi<Real>() / 4);
    ph.push_back(gravent::pi<Real>() / 2);
    ph.push_back(Real(1));
  }
  const auto report =
      gravent::verify_bound(common.seed, n, Real(eps), ph, a_max, common.jobs);
  write_output(common, gravent::report_table(report), meta);
}

// --------------------------------------------------------------- casimir ---

template <class Real>
void run_casimir(const PhysicalOpts& phys, double rho, double eps_r, double ratio,
                 double at_distance, const CommonOpts& common, json meta) {
  using std::pow;
  const Real mass(phys.m);
  const Real crossover =
      gravent::casimir_crossover_distance(mass, Real(rho), Real(eps_r), Real(ratio));
  const Real radius = pow(Real(3) * mass / (Real(4) * gravent::pi<Real>() * Real(rho)),
                          Real(1) / Real(3));
  Table t = key_value_table();
  t.rows.push_back({json("sphere_radius"), gravent::num_cell(radius)});
  t.rows.push_back({json("crossover_distance"), gravent::num_cell(crossover)});
  if (at_distance > 0) {
    const Real v =
        gravent::casimir_polder_potential(radius, Real(at_distance), Real(eps_r));
    gravent::PhysicalConstants<Real> k;
    const Real grav = k.G * mass * mass / Real(at_distance);
    t.rows.push_back({json("potential_at_distance"), gravent::num_cell(v)});
    t.rows.push_back({json("gravitational_at_distance"), gravent::num_cell(grav)});
    t.rows.push_back({json("casimir_to_gravity_ratio"), gravent::num_cell(v / grav)});
  }
  write_output(common, t, meta);
}

// ------------------------------------------------------------------- fit ---

template <class Real>
void run_fit(const PhysicalOpts& phys, double t_lo, double t_hi, int points,
             const CommonOpts& common, json meta) {
  using std::exp;
  using std::log;
  std::vector<Real> temps;
  for (int i = 0; i < points; ++i)
    temps.push_back(Real(t_lo) *
                    exp(Real(i) / Real(points - 1) * log(Real(t_hi) / Real(t_lo))));
  const auto fit = gravent::fit_omega_opt_powerlaw(temps, to_system<Real>(phys));
  write_output(common, gravent::fit_table(fit), meta);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gravitationally induced entanglement of trapped particles: "
               "Gaussian covariance simulation, sweeps and bound checks"};
  app.require_subcommand(1);

  CommonOpts common;
  PhysicalOpts phys;
  EvolveOpts ev;
  SweepOpts so;
  double bracket_lo = -1, bracket_hi = -1;
  double eps_flag = -1, phase_flag = -1;
  int n_samples = 10000;
  double eps_mc = 1e-3, a_max = 3.0;
  std::vector<double> phases;
  double rho = 2200, eps_r = std::numeric_limits<double>::infinity(), ratio = 0.1;
  double at_distance = -1;
  double t_lo = 1e-15, t_hi = 1.0;
  int fit_points = 16;

  auto* c_params = app.add_subcommand("params", "derived physical parameters");
  add_physical(c_params, phys);
  add_common(c_params, common);

  auto* c_evolve = app.add_subcommand("evolve", "evolve an initial state and report nu");
  add_physical(c_evolve, phys);
  c_evolve->add_option("--t", ev.t_seconds, "evolution time [s]");
  c_evolve->add_option("--phase", ev.phase, "evolution phase omega' t [rad]");
  c_evolve->add_option("--state", ev.state, "thermal|squeezed|standard-form")
      ->check(CLI::IsMember({"auto", "thermal", "squeezed", "standard-form"}));
  c_evolve->add_option("--sf-a", ev.sf[0], "standard form a");
  c_evolve->add_option("--sf-b", ev.sf[1], "standard form b");
  c_evolve->add_option("--sf-c", ev.sf[2], "standard form c");
  c_evolve->add_option("--sf-d", ev.sf[3], "standard form d");
  add_common(c_evolve, common);

  auto* c_sweep = app.add_subcommand("sweep", "parameter sweep of the entanglement curve");
  c_sweep->add_option("--var", so.var)->check(CLI::IsMember({"omega", "T", "m", "d", "r"}));
  c_sweep->add_option("--lo", so.lo)->required();
  c_sweep->add_option("--hi", so.hi)->required();
  c_sweep->add_option("--points", so.points)->check(CLI::Range(2, 1000000));
  c_sweep->add_option("--spacing", so.spacing)->check(CLI::IsMember({"log", "linear"}));
  c_sweep->add_option("--engine", so.engine)->check(CLI::IsMember({"first-order", "exact"}));
  c_sweep->add_option("--phase", so.phase, "fixed phase [rad]; omit to maximize over time");
  c_sweep->add_option("--phase-grid", so.phase_grid, "phase points for exact maximization");
  add_physical(c_sweep, phys);
  add_common(c_sweep, common);

  auto* c_opt = app.add_subcommand("omega-opt", "optimal and minimal trap frequency");
  add_physical(c_opt, phys, /*need_omega=*/false);
  c_opt->add_option("--lo", bracket_lo, "bracket low [rad/s]");
  c_opt->add_option("--hi", bracket_hi, "bracket high [rad/s]");
  add_common(c_opt, common);

  auto* c_tmax = app.add_subcommand("tmax", "threshold temperature, closed form vs numeric");
  add_physical(c_tmax, phys);
  add_common(c_tmax, common);

  auto* c_sq = app.add_subcommand("squeezed", "squeezed-state first-order analytics");
  add_physical(c_sq, phys);
  c_sq->add_option("--eps", eps_flag, "coupling eps (overrides m, d, omega)");
  c_sq->add_option("--phase", phase_flag, "phase [rad], default pi/2");
  add_common(c_sq, common);

  auto* c_bound = app.add_subcommand("bound-check", "Monte-Carlo bound verification");
  c_bound->add_option("--n", n_samples)->check(CLI::Range(1, 10000000));
  c_bound->add_option("--eps", eps_mc);
  c_bound->add_option("--phases", phases, "phases [rad]")->delimiter(',');
  c_bound->add_option("--a-max", a_max);
  add_common(c_bound, common);

  auto* c_cas = app.add_subcommand("casimir", "Casimir-Polder crossover distance");
  c_cas->add_option("--m", phys.m, "sphere mass [kg]");
  c_cas->add_option("--rho", rho, "sphere density [kg/m^3]");
  c_cas->add_option("--eps-r", eps_r, "relative permittivity (inf = perfect reflector)");
  c_cas->add_option("--ratio", ratio, "Casimir-to-gravity energy ratio");
  c_cas->add_option("--D", at_distance, "also evaluate the potential at this separation [m]");
  add_common(c_cas, common);

  auto* c_fit = app.add_subcommand("fit", "power-law fit of omega_opt(T)");
  add_physical(c_fit, phys, /*need_omega=*/false);
  c_fit->add_option("--t-lo", t_lo);
  c_fit->add_option("--t-hi", t_hi);
  c_fit->add_option("--points", fit_points)->check(CLI::Range(2, 10000));
  add_common(c_fit, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json meta;
    meta["tool"] = "gravent";
    meta["version"] = gravent::version;
    meta["command"] = command_echo(argc, argv);
    meta["constants"] = constants_meta();
    meta["seed"] = common.seed;
    meta["jobs"] = common.jobs;
    meta["format"] = common.format;

    const int effective = gravent::dispatch_precision(common.precision, [&](auto tag) {
      using Real = typename decltype(tag)::type;
      fill_precision_meta<Real>(meta, common.precision);
      if (app.got_subcommand(c_params)) {
        meta["subcommand"] = "params";
        run_params<Real>(phys, common, meta);
      } else if (app.got_subcommand(c_evolve)) {
        meta["subcommand"] = "evolve";
        run_evolve<Real>(phys, ev, common, meta);
      } else if (app.got_subcommand(c_sweep)) {
        meta["subcommand"] = "sweep";
        meta["engine"] = so.engine;
        meta["variable"] = so.var;
        run_sweep_cmd<Real>(phys, so, common, meta);
      } else if (app.got_subcommand(c_opt)) {
        meta["subcommand"] = "omega-opt";
        run_omega_opt<Real>(phys, bracket_lo, bracket_hi, common, meta);
      } else if (app.got_subcommand(c_tmax)) {
        meta["subcommand"] = "tmax";
        run_tmax<Real>(phys, common, meta);
      } else if (app.got_subcommand(c_sq)) {
        meta["subcommand"] = "squeezed";
        run_squeezed<Real>(phys, eps_flag, phase_flag, common, meta);
      } else if (app.got_subcommand(c_bound)) {
        meta["subcommand"] = "bound-check";
        run_bound_check<Real>(n_samples, eps_mc, phases, a_max, common, meta);
      } else if (app.got_subcommand(c_cas)) {
        meta["subcommand"] = "casimir";
        run_casimir<Real>(phys, rho, eps_r, ratio, at_distance, common, meta);
      } else if (app.got_subcommand(c_fit)) {
        meta["subcommand"] = "fit";
        run_fit<Real>(phys, t_lo, t_hi, fit_points, common, meta);
      }
    });
    if (effective < 0) {
      std::cerr << json{{"error", "InvalidArgument"},
                        {"message", "supported precision: <=100 decimal digits"}}
                       .dump()
                << "\n";
      return 2;
    }
  } catch (const gravent::error& e) {
    std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
