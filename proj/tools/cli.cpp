#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "halfinv/io.hpp"
#include "halfinv/spectral_functions.hpp"

#ifndef HALFINV_VERSION
#define HALFINV_VERSION "unknown"
#endif
#ifndef HALFINV_BUILD_TYPE
#define HALFINV_BUILD_TYPE "unknown"
#endif

namespace halfinv::cli {

namespace {

template <class F>
auto read_file(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw io::FormatError("cannot open " + path);
  return f(in);
}

template <class F>
void write_output(const std::string& path, F&& f) {
  if (path == "-") {
    f(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::FormatError("cannot write " + path);
  f(out);
}

io::PotentialFile load_potential(const std::string& path) {
  return read_file(path, [](std::istream& in) { return io::read_potential(in); });
}

double true_omega(const io::PotentialFile& p) { return omega_of(p.q, p.h, p.H); }

// Omega for experiments whose ground truth is known.
SolveConfig with_truth(const RunConfig& cfg, const io::PotentialFile& p) {
  SolveConfig c = cfg.overrides;
  if (cfg.omega_from_input) c.omega_mode = OmegaMode::exact(true_omega(p));
  return c;
}

int run_direct(const RunConfig& cfg) {
  const auto p = load_potential(cfg.input_path);
  const auto rhos = eigenvalues_full(p.q, {p.h, p.H}, cfg.overrides.n_eigs);
  const auto d = decompose_spectrum(rhos, OmegaMode::exact(true_omega(p)));
  write_output(cfg.output_path, [&](std::ostream& out) { io::write_spectrum_csv(out, rhos, d); });
  return ok;
}

int run_synth(const RunConfig& cfg) {
  const auto p = load_potential(cfg.input_path);
  const auto S = synthesize_mixed_data(p.q, p.h, p.H, cfg.overrides.n_eigs);
  write_output(cfg.output_path, [&](std::ostream& out) {
    io::write_mixed_data(out, {S, true_omega(p)});
  });
  return ok;
}

int run_solve(const RunConfig& cfg) {
  const auto m =
      read_file(cfg.input_path, [](std::istream& in) { return io::read_mixed_data(in); });
  SolveConfig c = cfg.overrides;
  if (cfg.omega_from_input) {
    if (!m.omega) throw io::FormatError("--omega-mode exact needs an \"omega\" field in the input");
    c.omega_mode = OmegaMode::exact(*m.omega);
  }
  const auto report = solve_half_inverse(m.data, c);
  write_output(cfg.output_path, [&](std::ostream& out) { io::write_report(out, report); });
  return ok;
}

int run_stability(const RunConfig& cfg) {
  const auto p = load_potential(cfg.input_path);
  const auto& s = cfg.stability;
  Perturbation pert;
  pert.q_amplitude = s.q_amplitude;
  pert.h_amplitude = s.h_amplitude;
  pert.H_amplitude = s.H_amplitude;
  pert.ball_radius = s.ball_radius;
  pert.seed = cfg.seed;
  SolveConfig c = cfg.overrides;
  if (cfg.omega_from_input) c.omega_mode = OmegaMode::exact(0.0);  // per triple
  const auto result = stability_sweep(p.q, p.h, p.H, pert, s.trials, c, s.threads);
  write_output(cfg.output_path, [&](std::ostream& out) { io::write_sweep_csv(out, result); });
  return ok;
}

struct CheckRow {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

int run_check(const RunConfig& cfg, std::ostream& err) {
  const auto p = load_potential(cfg.input_path);
  const SolveConfig c = with_truth(cfg, p);
  const std::size_t N = c.n_eigs;
  const BoundaryParams bp{p.h, p.H};
  std::vector<CheckRow> rows;
  auto guarded = [&](const std::string& name, double threshold, bool at_most,
                     const std::function<double()>& f) {
    try {
      const double v = f();
      rows.push_back({name, v, threshold, at_most ? v <= threshold : v >= threshold});
    } catch (const std::exception& e) {
      err << name << ": " << e.what() << '\n';
      rows.push_back({name, std::nan(""), threshold, false});
    }
  };

  const auto rhos = eigenvalues_full(p.q, bp, N);
  guarded("eigenvalue_count", 0.0, true, [&] {
    double bad = 0;
    for (std::size_t n = 1; n < N; ++n) {
      const double mid = 0.5 * (signed_square(rhos[n - 1]) + signed_square(rhos[n]));
      if (detail::count_below_full(p.q, bp, mid) != static_cast<long>(n)) ++bad;
    }
    return bad;
  });
  guarded("product_representation", 1e-3, true, [&] {
    const ZeroProductFunction zpf(rhos, true_omega(p));
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double r = 0.05 * i;
      worst = std::max(worst, std::abs(zpf(r * r) - char_value(p.q, bp, r * r)) / (1 + r));
    }
    return worst;
  });
  const auto S = synthesize_mixed_data(p.q, p.h, p.H, N);
  const auto aux = aux_spectra(S.q_right(), p.H, c.resolved_n_aux());
  guarded("aux_interlacing", 0.0, true, [&] {
    double bad = 0;
    for (std::size_t i = 0; i < aux.mus.size(); ++i) {
      if (!(aux.nus[i] < aux.mus[i])) ++bad;
      if (i + 1 < aux.nus.size() && !(aux.mus[i] < aux.nus[i + 1])) ++bad;
    }
    return bad;
  });
  guarded("riesz_conditioning", c.tolerances.gram_floor, false, [&] {
    const double s = select_shift(aux);
    return std::min(
        riesz_bounds(shift_spectrum(aux.mus, s), TrigKind::sine).smallest_singular_value,
        riesz_bounds(shift_spectrum(aux.nus, s), TrigKind::cosine).smallest_singular_value);
  });
  std::optional<SolveReport> report;
  guarded("moment_consistency", 1e-8, true, [&] {
    report = solve_half_inverse(S, c);
    return report->diagnostics.residual_sine + report->diagnostics.residual_cosine;
  });
  guarded("shift_invariance", 1e-6, true, [&] {
    if (!report) throw NumericalError(ErrorCode::InvalidArgument, "no base solve");
    const GridFunction q1 = p.q + 1.0;
    SolveConfig c1 = c;
    if (cfg.omega_from_input) c1.omega_mode = OmegaMode::exact(omega_of(q1, p.h, p.H));
    const auto r1 = solve_half_inverse(synthesize_mixed_data(q1, p.h, p.H, N), c1);
    return l2_distance(r1.q_left + (-1.0), report->q_left) + std::abs(r1.h - report->h);
  });

  bool all = true;
  write_output(cfg.output_path, [&](std::ostream& out) {
    out << "check,value,threshold,status\n";
    for (const auto& r : rows) {
      out << r.name << ',' << io::format_double(r.value) << ','
          << io::format_double(r.threshold) << ',' << (r.pass ? "pass" : "fail") << '\n';
      all = all && r.pass;
    }
  });
  return all ? ok : check_failed;
}

ShiftPolicy parse_shift(const std::string& s) {
  if (s == "auto") return ShiftPolicy::automatic();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw CLI::ValidationError("--shift", "expected 'auto' or a number, got '" + s + "'");
  }
  return ShiftPolicy::fixed(v);
}

// "estimate", "exact" or "exact:<value>".
void parse_omega_mode(const std::string& s, RunConfig& cfg) {
  cfg.omega_from_input = false;
  if (s == "estimate") {
    cfg.overrides.omega_mode = OmegaMode::estimate();
  } else if (s == "exact") {
    cfg.omega_from_input = true;
  } else if (s.rfind("exact:", 0) == 0) {
    const std::string num = s.substr(6);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (num.empty() || used != num.size() || !std::isfinite(v)) {
      throw CLI::ValidationError("--omega-mode", "bad value in '" + s + "'");
    }
    cfg.overrides.omega_mode = OmegaMode::exact(v);
  } else {
    throw CLI::ValidationError("--omega-mode", "expected estimate, exact or exact:<value>");
  }
}

}  // namespace

std::string version_string() {
  std::ostringstream s;
  s << "halfinv " << HALFINV_VERSION << " (" << HALFINV_BUILD_TYPE << ", "
#if defined(__clang__)
    << "clang " << __clang_major__ << '.' << __clang_minor__
#elif defined(__GNUC__)
    << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__
#else
    << "unknown compiler"
#endif
    << ", C++ " << __cplusplus << ")";
  return s.str();
}

int run(const RunConfig& cfg, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::direct: return run_direct(cfg);
      case Command::synth: return run_synth(cfg);
      case Command::solve: return run_solve(cfg);
      case Command::stability: return run_stability(cfg);
      case Command::check: return run_check(cfg, err);
    }
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return parse_error;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
  return ok;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Half-inverse Sturm-Liouville solver: direct problems, synthesis, "
               "reconstruction and stability sweeps"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  RunConfig cfg;
  std::string shift = "auto";
  std::string omega_mode;
  std::size_t n_eigs = 0;

  auto add_common = [&](CLI::App* sub, std::size_t default_n) {
    sub->add_option("input", cfg.input_path, "Input JSON document")->required();
    sub->add_option("-o,--output", cfg.output_path, "Output path ('-' for standard output)")
        ->capture_default_str();
    sub->add_option("--n-eigs", n_eigs, "Number of eigenvalues")
        ->default_val(default_n)
        ->check(CLI::PositiveNumber);
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--grid-size", cfg.overrides.grid_size, "Output grid nodes on (0, pi)")
        ->capture_default_str();
    sub->add_option("--shift", shift, "Spectral shift: 'auto' or a number")
        ->capture_default_str();
    sub->add_option("--omega-mode", omega_mode, "estimate | exact | exact:<value>");
    sub->add_option("--n-aux", cfg.overrides.n_aux, "Moment equations per kernel (0: 3N/4)")
        ->capture_default_str();
    sub->add_option("--n-gl", cfg.overrides.n_gl, "Eigenvalues for Gelfand-Levitan (0: N/2)")
        ->capture_default_str();
  };

  auto* direct = app.add_subcommand("direct", "Eigenvalues of the full problem, CSV");
  add_common(direct, 64);
  auto* synth = app.add_subcommand("synth", "Mixed data from a potential file, JSON");
  add_common(synth, 64);
  auto* solve = app.add_subcommand("solve", "Recover q on (0, pi) and h from mixed data, JSON");
  add_common(solve, 64);
  add_solver(solve);
  auto* stability = app.add_subcommand("stability", "Perturbation sweep around a potential, CSV");
  add_common(stability, 32);
  add_solver(stability);
  auto& st = cfg.stability;
  stability->add_option("--trials", st.trials)->capture_default_str()->check(CLI::PositiveNumber);
  stability->add_option("--q-amplitude", st.q_amplitude)->capture_default_str();
  stability->add_option("--h-amplitude", st.h_amplitude)->capture_default_str();
  stability->add_option("--H-amplitude", st.H_amplitude)->capture_default_str();
  stability->add_option("--ball-radius", st.ball_radius)->capture_default_str();
  stability->add_option("--threads", st.threads, "0: hardware concurrency")->capture_default_str();
  stability->add_option("--seed", cfg.seed)->capture_default_str();
  auto* check = app.add_subcommand("check", "Invariant suite on a potential file, CSV");
  add_common(check, 32);
  add_solver(check);

  try {
    app.parse(argc, argv);
    cfg.overrides.n_eigs = n_eigs;
    cfg.overrides.shift_policy = parse_shift(shift);
    if (omega_mode.empty()) {
      // Synthetic experiments know omega; real mixed data do not.
      omega_mode = solve->parsed() ? "estimate" : "exact";
    }
    parse_omega_mode(omega_mode, cfg);
    if (direct->parsed()) cfg.command = Command::direct;
    if (synth->parsed()) cfg.command = Command::synth;
    if (solve->parsed()) cfg.command = Command::solve;
    if (stability->parsed()) cfg.command = Command::stability;
    if (check->parsed()) cfg.command = Command::check;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  }
  return run(cfg, err);
}

}  // namespace halfinv::cli
