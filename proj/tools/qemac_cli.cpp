// Command-line surface for scheme synthesis, verification, capacity
// evaluation, dense-oracle certification, and the shipped example schemes.
//
// Exit codes: 0 ok, 1 usage/other error, 2 verification failure,
// 3 infeasible parameters, 4 synthesis retry budget exhausted.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <numeric>

#include "qemac/capacity.hpp"
#include "qemac/hilbert.hpp"
#include "qemac/serialize.hpp"
#include "qemac/sim.hpp"
#include "qemac/util.hpp"

using namespace qemac;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QEMAC_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::infeasible:
    case errc::infeasible_parameters:
    case errc::field_too_small:
      return 3;
    case errc::retry_exhausted:
      return 4;
    default:
      return 1;
  }
}

std::string tuple_str(const std::vector<Rat>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + t[i].str();
  return out + ")";
}

long long gcd_ll(long long a, long long b) { return b ? gcd_ll(b, a % b) : (a < 0 ? -a : a); }

/// Uniform allocation hitting the smallest per-server cost that keeps the
/// tuple (delta0, delta, ..., delta) inside the entanglement-assisted region.
struct SymmetricPlan {
  std::vector<Eigen::Index> allocation;  // N_0..N_S
  Eigen::Index l;
  Rat delta;
  Rat delta0;
};

SymmetricPlan symmetric_ame_plan(int S, int alpha, int beta, const Rat& delta0) {
  const Rat floor = Rat(1, 2LL * (alpha - beta));
  Rat delta;
  if (S > 2 * beta) {
    delta = Rat::max(floor, (Rat(1) - delta0) / Rat(S - 2 * beta));
  } else if (S == 2 * beta) {
    require(delta0 >= Rat(1), errc::infeasible,
            "pure entanglement-assisted scheme needs Delta_0 >= 1 when S = 2 beta");
    delta = floor;
  } else {
    require(delta0 >= Rat(1) + Rat(2 * beta - S) * floor, errc::infeasible,
            "pure entanglement-assisted scheme infeasible at this Delta_0");
    delta = floor;
  }
  // Integerize: delta = a/b gives N_s = a m, l = b m; pick the smallest m
  // that also makes N_0 = delta0 * l integral.
  const long long a = delta.num(), b = delta.den();
  const long long c = delta0.num(), e = delta0.den();
  const long long m = c == 0 ? 1 : e / gcd_ll(b * c, e);
  SymmetricPlan plan;
  plan.l = static_cast<Eigen::Index>(b * m);
  plan.delta = delta;
  plan.delta0 = delta0;
  const Rat n0 = delta0 * Rat(plan.l);
  plan.allocation.assign(static_cast<std::size_t>(S) + 1, static_cast<Eigen::Index>(a * m));
  plan.allocation[0] = static_cast<Eigen::Index>(n0.num() / n0.den());
  require(Rat(plan.allocation[0]) == n0, errc::infeasible, "Delta_0 not integerizable");
  return plan;
}

void print_scheme_summary(const Scheme& sc, const QemacInstance& inst) {
  const auto tuple = cost_tuple(sc);
  std::cout << "cost tuple (Delta_0..Delta_S): " << tuple_str(tuple) << "\n";
  std::cout << "data-server rate R = " << scheme_rate(sc).str() << "\n";
  std::cout << "in AME region: " << (in_region_ame(tuple, inst) ? "yes" : "no")
            << "; in TQC region: " << (in_region_tqc(tuple, inst) ? "yes" : "no")
            << "; in achievable hull: " << (in_achievable_hull(tuple, inst) ? "yes" : "no")
            << "\n";
}

void write_scheme(const Scheme& sc, const std::string& path) {
  write_text_atomic(path, scheme_to_json(sc).dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
}

std::vector<Rat> parse_grid(const std::string& grid) {
  const auto c1 = grid.find(':'), c2 = grid.rfind(':');
  require(c1 != std::string::npos && c2 != c1, errc::invalid_argument,
          "grid must be start:end:step");
  const Rat start = Rat::parse(grid.substr(0, c1));
  const Rat end = Rat::parse(grid.substr(c1 + 1, c2 - c1 - 1));
  const Rat step = Rat::parse(grid.substr(c2 + 1));
  require(step > Rat(0), errc::invalid_argument, "grid step must be positive");
  std::vector<Rat> out;
  for (Rat v = start; v <= end; v += step) out.push_back(v);
  return out;
}

int cmd_synth(const std::string& spec_path, const std::vector<std::string>& sym,
              const std::string& mode, std::uint64_t seed, const std::string& out,
              const std::string& delta0_str, long l_override, long lambda_override) {
  QemacInstance inst;
  std::optional<Rat> delta0;
  std::optional<std::vector<Eigen::Index>> allocation;
  if (!spec_path.empty()) {
    const ParsedSpec spec = parse_instance_spec(Json::parse(read_text(spec_path)));
    inst = spec.inst;
    delta0 = spec.delta0;
    allocation = spec.allocation;
  } else {
    require(sym.size() == 4, errc::invalid_argument, "--sym needs d S alpha beta");
    inst = build_symmetric_instance(static_cast<std::uint32_t>(std::stoul(sym[0])),
                                    std::stoi(sym[1]), std::stoi(sym[2]), std::stoi(sym[3]));
  }
  if (!delta0_str.empty()) delta0 = Rat::parse(delta0_str);

  Scheme scheme;
  if (mode == "ame") {
    std::vector<Eigen::Index> alloc;
    if (allocation) {
      alloc = *allocation;
    } else if (inst.symmetric) {
      const auto [alpha, beta] = *inst.symmetric;
      alloc = symmetric_ame_plan(inst.servers, alpha, beta, delta0.value_or(Rat(0))).allocation;
    } else {
      alloc.assign(static_cast<std::size_t>(inst.servers) + 1, 1);
      alloc[0] = 0;
    }
    const SchemeDims dims = plan_dimensions(
        inst, alloc, l_override > 0 ? std::optional<Eigen::Index>(l_override) : std::nullopt,
        lambda_override > 0 ? std::optional<std::uint32_t>(
                                  static_cast<std::uint32_t>(lambda_override))
                            : std::nullopt);
    std::cout << "plan: q = " << dims.field->q() << " (lambda " << dims.lambda << "), l = "
              << dims.l << ", N = " << dims.n_total << "\n";
    scheme = synthesize_ame(inst, dims, seed);
  } else if (mode == "tqc") {
    std::vector<Eigen::Index> alloc;
    if (allocation) {
      alloc = *allocation;
    } else {
      alloc.assign(static_cast<std::size_t>(inst.servers) + 1, 1);
      alloc[0] = 0;
    }
    scheme = synthesize_tqc(
        inst, alloc, seed,
        l_override > 0 ? std::optional<Eigen::Index>(l_override) : std::nullopt);
  } else {
    fail(errc::invalid_argument, "--mode must be ame or tqc");
  }
  print_scheme_summary(scheme, inst);
  if (!out.empty()) write_scheme(scheme, out);
  return 0;
}

Json report_to_json(const VerificationReport& r) {
  Json patterns = Json::array();
  for (const auto& p : r.patterns)
    patterns.push_back(Json{{"pattern", p.pattern}, {"trials", p.trials},
                            {"failures", p.failures}});
  return Json{{"format", "qemac-report/1"},
              {"tool_version", kToolVersion},
              {"scheme_id", r.scheme_id},
              {"seed", r.seed},
              {"policy", r.policy},
              {"trials_per_pattern", r.trials_per_pattern},
              {"exhaustive", r.exhaustive},
              {"patterns", patterns},
              {"kernel_noise_ok", r.kernel_noise_ok},
              {"kernel_decode_ok", r.kernel_decode_ok},
              {"pass", r.pass()}};
}

int cmd_verify(const std::string& scheme_path, const std::string& policy, long trials,
               std::uint64_t seed, const std::string& out) {
  const Json scheme_json = Json::parse(read_text(scheme_path));
  const Scheme scheme = scheme_from_json(scheme_json);
  VerifyPolicy vp;
  vp.seed = seed;
  vp.trials = trials;
  if (policy == "exhaustive")
    vp.kind = VerifyPolicy::Kind::exhaustive;
  else if (policy == "random")
    vp.kind = VerifyPolicy::Kind::random;
  else
    vp.kind = VerifyPolicy::Kind::automatic;
  const VerificationReport report = verify_scheme(scheme, vp);
  Json j = report_to_json(report);
  j["spec_hash"] = scheme_json.value("spec_hash", "");
  if (!out.empty()) write_text_atomic(out, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return report.pass() ? 0 : 2;
}

int cmd_capacity(const std::vector<std::string>& sym, const std::string& delta0_str,
                 const std::string& grid_str, const std::string& sweep_alpha,
                 const std::string& csv_path) {
  require(sym.size() == 3, errc::invalid_argument, "--sym needs S alpha beta");
  const int S = std::stoi(sym[0]);
  const int beta = std::stoi(sym[2]);

  std::ostringstream csv;
  csv << "S,alpha,beta,delta0_num,delta0_den,delta_star_num,delta_star_den,"
         "capacity_num,capacity_den,regime\n";

  if (!sweep_alpha.empty()) {
    const auto colon = sweep_alpha.find(':');
    require(colon != std::string::npos, errc::invalid_argument, "--sweep-alpha needs lo:hi");
    const int lo = std::stoi(sweep_alpha.substr(0, colon));
    const int hi = std::stoi(sweep_alpha.substr(colon + 1));
    std::cout << "S=" << S << " beta=" << beta << " Delta_0=0\n";
    std::cout << "alpha\tC(0)\tR_AME\tR_TQC\tregime\n";
    for (int alpha = lo; alpha <= hi; ++alpha) {
      if (alpha <= beta || alpha > S) continue;
      const NoHelperCapacity c = capacity_no_helper(S, alpha, beta);
      const Rat dstar = Rat(1) / (Rat(S) * c.capacity);
      std::cout << alpha << '\t' << c.capacity.str() << '\t' << c.r_ame.str() << '\t'
                << c.r_tqc.str() << '\t' << c.regime << "\n";
      csv << S << ',' << alpha << ',' << beta << ",0,1," << dstar.num() << ',' << dstar.den()
          << ',' << c.capacity.num() << ',' << c.capacity.den() << ',' << c.regime << '\n';
    }
  } else {
    const int alpha = std::stoi(sym[1]);
    std::vector<Rat> grid;
    if (!grid_str.empty())
      grid = parse_grid(grid_str);
    else
      grid = {delta0_str.empty() ? Rat(0) : Rat::parse(delta0_str)};
    const auto points = curve(S, alpha, beta, grid);
    std::cout << "S=" << S << " alpha=" << alpha << " beta=" << beta << "\n";
    std::cout << "Delta_0\tDelta*\tC\tR_AME\tR_TQC\tregime\n";
    for (const auto& p : points)
      std::cout << p.delta0.str() << '\t' << p.delta_star.str() << '\t' << p.capacity.str()
                << '\t' << p.r_ame.str() << '\t' << p.r_tqc.str() << '\t' << p.regime << "\n";
    csv.str("");
    csv << curve_csv(S, alpha, beta, points);
  }
  if (!csv_path.empty()) {
    write_text_atomic(csv_path, csv.str());
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int cmd_hilbert(const std::string& scheme_path, const std::string& builtin, std::uint32_t q,
                long trials, std::uint64_t seed, const std::string& out) {
  Json metrics;
  metrics["format"] = "qemac-hilbert/1";
  metrics["tool_version"] = kToolVersion;
  metrics["seed"] = seed;
  bool pass = true;

  if (!scheme_path.empty()) {
    const Json scheme_json = Json::parse(read_text(scheme_path));
    const Scheme scheme = scheme_from_json(scheme_json);
    metrics["spec_hash"] = scheme_json.value("spec_hash", "");
    const auto* ame = std::get_if<AmeScheme>(&scheme);
    require(ame != nullptr, errc::invalid_argument,
            "dense certification applies to entanglement-assisted schemes");
    const StabilizerBasis basis = stabilizer_basis(ame->m);
    const double gram = gram_deviation(basis);
    const double evo = verify_box_evolution(basis, trials, seed);
    const auto rec = verify_erasure_recovery(*ame, 27, seed);
    metrics["gram_deviation"] = gram;
    metrics["evolution_max_deviation"] = evo;
    metrics["erasure_min_success"] = rec.min_success;
    metrics["erasure_cases"] = rec.cases;
    pass = gram < 1e-8 && evo < 1e-9 && rec.min_success >= 1.0 - 1e-9;
  } else if (builtin == "bell") {
    const Field& f = Field::get(q, 1);
    TransferMatrix bell{fq_from_ints(f, 2, 4, {1, 1, 0, 0, 0, 0, 1, -1})};
    const StabilizerBasis basis = stabilizer_basis(bell);
    const double gram = gram_deviation(basis);
    const double evo = verify_box_evolution(basis, 0, seed);  // exhaustive
    metrics["builtin"] = "bell";
    metrics["q"] = q;
    metrics["gram_deviation"] = gram;
    metrics["evolution_max_deviation"] = evo;
    pass = gram < 1e-8 && evo < 1e-9;
  } else if (builtin == "example52") {
    TransferMatrix m{golden_f5_transfer()};
    const StabilizerBasis basis = stabilizer_basis(m);
    const double gram = gram_deviation(basis);
    const double evo = verify_box_evolution(basis, trials > 0 ? trials : 200, seed);
    metrics["builtin"] = "example52";
    metrics["gram_deviation"] = gram;
    metrics["evolution_max_deviation"] = evo;
    pass = gram < 1e-8 && evo < 1e-9;
  } else if (builtin == "twirl") {
    const Field& f = Field::get(q, 1);
    const auto qi = static_cast<Eigen::Index>(q);
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(qi * qi);
    for (Eigen::Index i = 0; i < qi; ++i)
      phi(i * qi + i) = 1.0 / std::sqrt(static_cast<double>(q));
    const Eigen::MatrixXcd rho = phi * phi.adjoint();
    const double dist = verify_twirl(rho, f);
    metrics["builtin"] = "twirl";
    metrics["q"] = q;
    metrics["trace_distance"] = dist;
    pass = dist < 1e-10;
  } else {
    fail(errc::invalid_argument, "hilbert needs --scheme or --builtin bell|example52|twirl");
  }
  metrics["pass"] = pass;
  if (!out.empty()) write_text_atomic(out, metrics.dump(2) + "\n");
  std::cout << metrics.dump(2) << "\n";
  return pass ? 0 : 2;
}

int cmd_example(const std::string& which, std::uint64_t seed, const std::string& out) {
  if (which == "fig1") {
    const QemacInstance inst = build_symmetric_instance(5, 4, 2, 1);
    const auto plan = symmetric_ame_plan(4, 2, 1, Rat(0));
    const SchemeDims dims = plan_dimensions(inst, plan.allocation);
    const Scheme scheme = synthesize_ame(inst, dims, seed);
    print_scheme_summary(scheme, inst);
    if (!out.empty()) write_scheme(scheme, out);
    return 0;
  }
  if (which == "sec52") {
    const QemacInstance inst = build_symmetric_instance(5, 4, 2, 1);
    const SchemeDims dims =
        plan_dimensions(inst, {0, 1, 1, 1, 1}, std::nullopt, std::uint32_t{1});
    const Scheme scheme =
        synthesize_ame(inst, dims, seed, golden_f5_transfer(), golden_f5_protection());
    print_scheme_summary(scheme, inst);
    if (!out.empty()) write_scheme(scheme, out);
    return 0;
  }
  if (which == "appA") {
    const Scheme scheme = build_cutset_scheme(2, 3);
    const auto tuple = cost_tuple(scheme);
    std::cout << "cost tuple: " << tuple_str(tuple) << "\n";
    std::cout << "per-server download cost: 3/4\n";
    if (!out.empty()) write_scheme(scheme, out);
    return 0;
  }
  fail(errc::invalid_argument, "--which must be fig1, sec52, or appA");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erasure-tolerant sum computation: synthesis, verification, capacity"};
  app.require_subcommand(1);

  std::string spec_path, mode = "ame", out, delta0_str, grid_str, sweep_alpha, csv_path;
  std::string scheme_path, policy = "auto", builtin, which;
  std::vector<std::string> sym;
  std::uint64_t seed = default_seed();
  long trials = 1000, l_override = 0, lambda_override = 0;
  std::uint32_t q = 3;

  auto* synth = app.add_subcommand("synth", "synthesize a coding scheme");
  synth->add_option("--spec", spec_path, "instance spec JSON file");
  synth->add_option("--sym", sym, "symmetric instance: d S alpha beta")->expected(4);
  synth->add_option("--mode", mode, "ame | tqc");
  synth->add_option("--seed", seed, "RNG seed (default: QEMAC_SEED or 0)");
  synth->add_option("--out", out, "output scheme JSON path");
  synth->add_option("--delta0", delta0_str, "helper cost Delta_0 (rational)");
  synth->add_option("--l", l_override, "override block length l");
  synth->add_option("--lambda", lambda_override, "override extension degree lambda");

  auto* verify = app.add_subcommand("verify", "verify a scheme file");
  verify->add_option("scheme", scheme_path, "scheme JSON file")->required();
  verify->add_option("--policy", policy, "auto | exhaustive | random");
  verify->add_option("--trials", trials, "trials per pattern (random policy)");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--out", out, "report JSON path");

  auto* capacity = app.add_subcommand("capacity", "capacity and cost-region evaluation");
  capacity->add_option("--sym", sym, "S alpha beta (alpha may be '.' with --sweep-alpha)")
      ->expected(3);
  capacity->add_option("--delta0", delta0_str, "helper cost Delta_0 (rational)");
  capacity->add_option("--grid", grid_str, "Delta_0 grid start:end:step");
  capacity->add_option("--sweep-alpha", sweep_alpha, "sweep alpha lo:hi at Delta_0 = 0");
  capacity->add_option("--csv", csv_path, "CSV output path");

  auto* hilbert = app.add_subcommand("hilbert", "dense-oracle certification");
  hilbert->add_option("--scheme", scheme_path, "scheme JSON file");
  hilbert->add_option("--builtin", builtin, "bell | example52 | twirl");
  hilbert->add_option("--q", q, "qudit dimension for builtins");
  hilbert->add_option("--trials", trials, "evolution trials (0 = exhaustive)");
  hilbert->add_option("--seed", seed, "RNG seed");
  hilbert->add_option("--out", out, "metrics JSON path");

  auto* example = app.add_subcommand("example", "reproduce a shipped example scheme");
  example->add_option("--which", which, "fig1 | sec52 | appA")->required();
  example->add_option("--seed", seed, "RNG seed");
  example->add_option("--out", out, "output scheme JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return cmd_synth(spec_path, sym, mode, seed, out, delta0_str, l_override,
                       lambda_override);
    if (verify->parsed()) return cmd_verify(scheme_path, policy, trials, seed, out);
    if (capacity->parsed())
      return cmd_capacity(sym, delta0_str, grid_str, sweep_alpha, csv_path);
    if (hilbert->parsed()) return cmd_hilbert(scheme_path, builtin, q, trials, seed, out);
    if (example->parsed()) return cmd_example(which, seed, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
