// Command-line front end: symbolic derivation reports, identity checks, and
// the random-matrix sampling pipeline, with deterministic JSON/CSV outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "freereg/bimodule.hpp"
#include "freereg/calculus.hpp"
#include "freereg/eigensolver.hpp"
#include "freereg/errors.hpp"
#include "freereg/matrix.hpp"
#include "freereg/measure.hpp"
#include "freereg/parser.hpp"
#include "freereg/rmt.hpp"
#include "freereg/serialize.hpp"
#include "freereg/spectral.hpp"
#include "freereg/trace.hpp"

namespace {

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

using freereg::NcPoly;
using nlohmann::json;

// All file output lands via a temp file + rename, so readers never see a
// half-written artifact even if we die mid-dump.
void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw freereg::InvalidArgumentError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.flush()) throw freereg::InvalidArgumentError("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw freereg::InvalidArgumentError("cannot move '" + tmp + "' into place");
}

void emit_json(const json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text += '\n';
  if (out_path.empty())
    std::cout << text;
  else
    atomic_write(out_path, text);
}

struct SamplingArgs {
  std::string expr;
  int n = 0;  // 0: infer
  int N = 500;
  int trials = 5;
  std::uint64_t seed = 1;
  std::string out;
};

void add_sampling_options(CLI::App* cmd, SamplingArgs& a, bool expr_required = true) {
  auto* pos = cmd->add_option("expr", a.expr, "polynomial in x1..x99");
  if (expr_required) pos->required();
  cmd->add_option("--n", a.n, "generator count (default: inferred from expr)");
  cmd->add_option("--N", a.N, "matrix dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", a.trials, "independent samples pooled")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "master RNG seed");
  cmd->add_option("--out", a.out, "write JSON here instead of stdout");
}

NcPoly parse_arg_poly(const SamplingArgs& a) { return freereg::parse_poly(a.expr, a.n); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

json base_report(const char* command, const NcPoly& p) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"expr", freereg::format(p)},
          {"n", p.var_count()}};
}

// ---- derive -------------------------------------------------------------

int cmd_derive(const SamplingArgs& a, int j_only) {
  NcPoly p = parse_arg_poly(a);
  if (j_only != 0 && (j_only < 1 || j_only > p.var_count()))
    throw freereg::InvalidArgumentError("--j " + std::to_string(j_only) +
                                        " is outside 1.." + std::to_string(p.var_count()));
  json report = base_report("derive", p);

  json derivatives = json::array();
  for (int j = 1; j <= p.var_count(); ++j) {
    if (j_only != 0 && j != j_only) continue;
    derivatives.push_back({{"j", j}, {"tensor", freereg::tensor_to_json(freereg::diff(p, j))}});
  }
  report["derivatives"] = std::move(derivatives);
  report["number_op"] = freereg::poly_to_json(freereg::number_op(p));

  json homogeneous = json::array();
  int deg = p.degree();
  if (deg != freereg::kDegreeOfZero) {
    for (int m = 0; m <= deg; ++m) {
      NcPoly part = p.homogeneous_part(m);
      if (!part.is_zero()) homogeneous.push_back({{"m", m}, {"poly", freereg::poly_to_json(part)}});
    }
  }
  report["homogeneous"] = std::move(homogeneous);

  json twists = json::array();
  for (int k = 0; k < 8; ++k) {
    double t = k / 8.0;
    twists.push_back({{"t", t}, {"poly", freereg::cpoly_to_json(freereg::phi_t(p, t))}});
  }
  report["twists"] = std::move(twists);

  emit_json(report, a.out);
  return kExitOk;
}

// ---- check ---------------------------------------------------------------

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

int cmd_check(const SamplingArgs& a, int exact_N, int float_N) {
  NcPoly p = parse_arg_poly(a);
  int n = p.var_count();
  std::vector<CheckLine> lines;
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    lines.push_back({std::move(name), pass, std::move(detail)});
  };

  // Symbolic identities, all in exact arithmetic.
  add("hochschild defect vanishes", freereg::hochschild_defect(p).is_zero());

  {
    NcPoly q = p * p;
    freereg::TensorPoly lhs = freereg::diff(q, 1);
    freereg::TensorPoly rhs =
        freereg::sharp(freereg::TensorPoly::tensor_of(NcPoly::constant(n, freereg::Scalar(1)), p),
                       freereg::diff(p, 1)) +
        freereg::sharp(freereg::TensorPoly::tensor_of(p, NcPoly::constant(n, freereg::Scalar(1))),
                       freereg::diff(p, 1));
    add("product rule for the difference quotient", lhs == rhs);
  }

  {
    NcPoly assembled(n);
    for (int j = 1; j <= n; ++j)
      assembled += freereg::sharp(freereg::diff(p, j), NcPoly::generator(n, j));
    add("number operator assembles from the quotients", assembled == freereg::number_op(p));
  }

  {
    bool ok = true;
    std::string detail;
    for (int i = 1; i <= n; ++i) {
      NcPoly probe = freereg::sharp(freereg::flip(freereg::diff(p, i)), p.adjoint());
      bool uses_xi = p.degree_in(i) > 0;
      if (probe.is_zero() == uses_xi) {
        ok = false;
        detail = "generator x" + std::to_string(i);
        break;
      }
    }
    add("flipped quotient against the adjoint detects dependence", ok, detail);
  }

  {
    int deg = p.degree();
    bool ok = true;
    if (deg != freereg::kDegreeOfZero) {
      NcPoly total(n);
      for (int m = 0; m <= deg; ++m) {
        NcPoly part = freereg::fourier_extract(p, m);
        if (part != p.homogeneous_part(m)) ok = false;
        total += part;
      }
      if (total != p) ok = false;
      if (freereg::fourier_extract(p, deg + 3) != NcPoly::zero(n)) ok = false;
    }
    add("root-of-unity averaging recovers the grading", ok);
  }

  {
    double t = 1.0 / 3.0;
    freereg::CPoly lhs = freereg::phi_t(p * p, t);
    freereg::CPoly rhs = freereg::phi_t(p, t) * freereg::phi_t(p, t);
    double gap = freereg::max_coeff_dist(lhs, rhs);
    add("degree twist is multiplicative", gap <= 1e-12, "gap " + sci(gap));
  }

  // Matrix-level derivation identity: exact rationals first, then float.
  {
    freereg::RngStream rng = freereg::RngStream::substream(a.seed, 0);
    freereg::QMatrixTuple tuple = freereg::random_rational_tuple(n, exact_N, rng);
    freereg::QMatrix u = freereg::random_rational_matrix(exact_N, rng);
    freereg::QMatrix v = freereg::random_rational_matrix(exact_N, rng);
    mpq_class defect = freereg::bimodule_defect_norm_sq(p, tuple, u, v);
    add("derivation identity on rational matrices is exact", sgn(defect) == 0);
  }

  {
    freereg::RngStream rng = freereg::RngStream::substream(a.seed, 1);
    freereg::MatrixTuple tuple = freereg::sample_gue_tuple(n, float_N, rng);
    freereg::CMatrix u = freereg::sample_gue(float_N, rng);
    freereg::CMatrix v = freereg::sample_gue(float_N, rng);
    freereg::BimoduleResidual res = freereg::bimodule_commutator_residual(p, tuple, u, v);
    add("derivation identity on float matrices is at round-off",
        res.relative() <= 1e-9, "relative " + sci(res.relative()));
  }

  bool all_pass = true;
  json rows = json::array();
  for (const auto& line : lines) {
    all_pass = all_pass && line.pass;
    std::cout << (line.pass ? "[PASS] " : "[FAIL] ") << line.name;
    if (!line.detail.empty()) std::cout << " (" << line.detail << ")";
    std::cout << "\n";
    rows.push_back({{"name", line.name}, {"pass", line.pass}, {"detail", line.detail}});
  }
  if (!a.out.empty()) {
    json report = base_report("check", p);
    report["checks"] = std::move(rows);
    report["all_pass"] = all_pass;
    emit_json(report, a.out);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---- simulate -------------------------------------------------------------

int cmd_simulate(const SamplingArgs& a, int bins, std::optional<std::pair<double, double>> range) {
  NcPoly p = parse_arg_poly(a);
  if (a.out.empty())
    throw freereg::InvalidArgumentError("simulate needs --out BASE for its CSV outputs");
  freereg::EmpiricalMeasure measure =
      freereg::sample_spectrum(p, a.N, a.trials, a.seed, freereg::format(p));
  freereg::Histogram hist = freereg::histogram(measure, bins, range);

  std::ostringstream measure_csv;
  freereg::write_measure_csv(measure, measure_csv);
  atomic_write(a.out + ".measure.csv", measure_csv.str());

  std::ostringstream hist_csv;
  freereg::write_histogram_csv(hist, hist_csv);
  atomic_write(a.out + ".hist.csv", hist_csv.str());

  json meta = base_report("simulate", p);
  meta["measure"] = freereg::measure_meta_json(measure);
  meta["bins"] = bins;
  meta["support"] = {measure.min(), measure.max()};
  emit_json(meta, a.out + ".meta.json");

  std::cout << "wrote " << measure.size() << " eigenvalues to " << a.out << ".measure.csv"
            << " (support [" << measure.min() << ", " << measure.max() << "])\n";
  return kExitOk;
}

// ---- moments ---------------------------------------------------------------

int cmd_moments(const SamplingArgs& a, int k, std::size_t budget, const std::string& table_path) {
  NcPoly p = parse_arg_poly(a);
  freereg::TraceFunctional tau = freereg::TraceFunctional::semicircular();
  if (!table_path.empty()) {
    std::ifstream in(table_path);
    if (!in) throw freereg::InvalidArgumentError("cannot read trace table '" + table_path + "'");
    json j = json::parse(in);
    tau = freereg::trace_table_from_json(j);
  }
  std::vector<freereg::Scalar> exact = freereg::moments(p, k, tau, budget);
  std::vector<double> sampled = freereg::sampled_moments(p, k, a.N, a.trials, a.seed);

  json report = base_report("moments", p);
  report["k"] = k;
  report["N"] = a.N;
  report["trials"] = a.trials;
  report["seed"] = a.seed;
  json rows = json::array();
  double max_gap = 0.0;
  for (int j = 1; j <= k; ++j) {
    double ex = exact[j - 1].to_complex().real();
    double gap = std::abs(ex - sampled[j - 1]);
    max_gap = std::max(max_gap, gap);
    rows.push_back({{"order", j},
                    {"exact", exact[j - 1].re_string()},
                    {"exact_float", ex},
                    {"sampled", sampled[j - 1]},
                    {"gap", gap}});
  }
  report["moments"] = std::move(rows);
  report["max_gap"] = max_gap;
  emit_json(report, a.out);
  return kExitOk;
}

// ---- entropy / decay / atoms ----------------------------------------------

int cmd_entropy(const SamplingArgs& a) {
  NcPoly p = parse_arg_poly(a);
  freereg::EmpiricalMeasure measure =
      freereg::sample_spectrum(p, a.N, a.trials, a.seed, freereg::format(p));
  freereg::EntropyEstimate est = freereg::log_energy(measure);
  json report = base_report("entropy", p);
  report.update(freereg::entropy_json(est, measure));
  report["schema_version"] = kSchemaVersion;
  emit_json(report, a.out);
  return kExitOk;
}

int cmd_decay(const SamplingArgs& a, double t, double eps_start, double eps_ratio, int eps_count,
              bool one_sided) {
  NcPoly p = parse_arg_poly(a);
  freereg::EmpiricalMeasure measure =
      freereg::sample_spectrum(p, a.N, a.trials, a.seed, freereg::format(p));
  std::vector<double> grid = freereg::geometric_grid(eps_start, eps_ratio, eps_count);
  freereg::DecayReport r = freereg::decay_exponent(measure, t, grid, !one_sided);
  json report = base_report("decay", p);
  report.update(freereg::decay_report_json(r, measure));
  report["schema_version"] = kSchemaVersion;
  emit_json(report, a.out);
  return kExitOk;
}

int cmd_atoms(const SamplingArgs& a, double eps, double theta_scale, double theta_power,
              bool control) {
  json report;
  freereg::AtomReport r;
  if (control) {
    freereg::EmpiricalMeasure measure = freereg::bernoulli_control(a.N, a.trials, a.seed);
    r = freereg::max_window_mass(measure, eps, theta_scale, theta_power);
    report = {{"schema_version", kSchemaVersion}, {"command", "atoms"}, {"expr", "bernoulli"}};
    report.update(freereg::atom_report_json(r, measure));
  } else {
    NcPoly p = parse_arg_poly(a);
    freereg::EmpiricalMeasure measure =
        freereg::sample_spectrum(p, a.N, a.trials, a.seed, freereg::format(p));
    r = freereg::max_window_mass(measure, eps, theta_scale, theta_power);
    report = base_report("atoms", p);
    report.update(freereg::atom_report_json(r, measure));
  }
  report["schema_version"] = kSchemaVersion;
  emit_json(report, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "freereg: calculus on polynomials in noncommuting variables, with "
      "random-matrix checks of their spectral regularity.\n"
      "Set FREEREG_THREADS to cap worker threads; outputs are identical for "
      "any thread count."};
  app.require_subcommand(1);

  SamplingArgs derive_args;
  int derive_j = 0;
  auto* derive = app.add_subcommand("derive", "difference quotients, number operator, grading");
  add_sampling_options(derive, derive_args);
  derive->add_option("--j", derive_j, "only this quotient (default: all)");

  SamplingArgs check_args;
  int check_exact_N = 3, check_float_N = 50;
  auto* check = app.add_subcommand("check", "verify the derivation identities; exit 1 on failure");
  add_sampling_options(check, check_args);
  check->add_option("--exact-N", check_exact_N, "dimension for the exact rational matrix check")
      ->check(CLI::Range(1, 6));
  check->add_option("--float-N", check_float_N, "dimension for the float matrix check")
      ->check(CLI::PositiveNumber);

  SamplingArgs sim_args;
  int sim_bins = 50;
  double sim_lo = 0.0, sim_hi = 0.0;
  bool sim_has_range = false;
  auto* simulate = app.add_subcommand("simulate", "sample the spectral distribution to CSV");
  add_sampling_options(simulate, sim_args);
  simulate->add_option("--bins", sim_bins, "histogram bins")->check(CLI::PositiveNumber);
  auto* lo_opt = simulate->add_option("--lo", sim_lo, "histogram range low edge");
  simulate->add_option("--hi", sim_hi, "histogram range high edge")->needs(lo_opt);

  SamplingArgs mom_args;
  int mom_k = 8;
  std::size_t mom_budget = freereg::kDefaultMomentBudget;
  std::string mom_table;
  auto* moments_cmd = app.add_subcommand("moments", "exact trace moments vs sampled moments");
  add_sampling_options(moments_cmd, mom_args);
  moments_cmd->add_option("--k", mom_k, "highest moment order")->check(CLI::PositiveNumber);
  moments_cmd->add_option("--budget", mom_budget, "symbolic term budget");
  moments_cmd->add_option("--trace-table", mom_table, "JSON word-moment table instead of the semicircular trace");

  SamplingArgs ent_args;
  auto* entropy = app.add_subcommand("entropy", "pairwise log-energy of the sampled spectrum");
  add_sampling_options(entropy, ent_args);

  SamplingArgs dec_args;
  double dec_t = 0.0, dec_eps_start = 0.4, dec_eps_ratio = 0.7;
  int dec_eps_count = 8;
  bool dec_one_sided = false;
  auto* decay = app.add_subcommand("decay", "local mass-decay exponent at a point");
  add_sampling_options(decay, dec_args);
  decay->add_option("--t", dec_t, "point of interest")->required();
  decay->add_option("--eps-start", dec_eps_start, "largest window half-width");
  decay->add_option("--eps-ratio", dec_eps_ratio, "geometric shrink factor in (0,1)");
  decay->add_option("--eps-count", dec_eps_count, "number of windows")->check(CLI::PositiveNumber);
  decay->add_flag("--one-sided", dec_one_sided, "use [t, t+eps] windows instead of [t-eps, t+eps]");

  SamplingArgs atom_args;
  double atom_eps = 0.05, atom_scale = 5.0, atom_power = 0.4;
  bool atom_control = false;
  auto* atoms = app.add_subcommand("atoms", "sliding-window atom scan");
  add_sampling_options(atoms, atom_args, /*expr_required=*/false);
  atoms->add_option("--eps", atom_eps, "window width");
  atoms->add_option("--theta-scale", atom_scale, "threshold scale");
  atoms->add_option("--theta-power", atom_power, "threshold exponent");
  atoms->add_flag("--control", atom_control, "scan the +-1 diagonal control instead of expr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (derive->parsed()) return cmd_derive(derive_args, derive_j);
    if (check->parsed()) return cmd_check(check_args, check_exact_N, check_float_N);
    if (simulate->parsed()) {
      sim_has_range = simulate->count("--lo") > 0 && simulate->count("--hi") > 0;
      std::optional<std::pair<double, double>> range;
      if (sim_has_range) range = {sim_lo, sim_hi};
      return cmd_simulate(sim_args, sim_bins, range);
    }
    if (moments_cmd->parsed()) return cmd_moments(mom_args, mom_k, mom_budget, mom_table);
    if (entropy->parsed()) return cmd_entropy(ent_args);
    if (decay->parsed())
      return cmd_decay(dec_args, dec_t, dec_eps_start, dec_eps_ratio, dec_eps_count, dec_one_sided);
    if (atoms->parsed()) {
      if (!atom_control && atom_args.expr.empty())
        throw freereg::InvalidArgumentError("atoms needs an expression or --control");
      return cmd_atoms(atom_args, atom_eps, atom_scale, atom_power, atom_control);
    }
  } catch (const freereg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const freereg::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const freereg::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const freereg::SparseMassError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const freereg::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const freereg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}
