// Acceptance suite: one criterion per entry, each printing a single
// [PASS]/[FAIL] line with its wall time. Run all with no arguments or a
// single one with --criterion N. Any failure makes the process exit 1.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>
#include <vector>

#include "qemac/capacity.hpp"
#include "qemac/hilbert.hpp"
#include "qemac/serialize.hpp"
#include "qemac/sim.hpp"

using namespace qemac;

namespace {

const std::string kCli = QEMAC_CLI_PATH;
const std::string kWork = QEMAC_WORK_DIR;

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void()> body;  // throws std::runtime_error on failure
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

int run_cli(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >" + kWork + "/acc_out.txt 2>&1";
  const int status = std::system(cmd.c_str());
  expect(status != -1, "could not spawn CLI");
  return WEXITSTATUS(status);
}

AmeScheme golden_scheme(std::uint64_t seed) {
  const QemacInstance inst = build_symmetric_instance(5, 4, 2, 1);
  const SchemeDims dims = plan_dimensions(inst, {0, 1, 1, 1, 1}, std::nullopt, std::uint32_t{1});
  return synthesize_ame(inst, dims, seed, golden_f5_transfer(), golden_f5_protection());
}

// --- criterion bodies -------------------------------------------------------

void criterion1_golden_reproduction() {
  const AmeScheme sc = golden_scheme(0);
  expect(check_sso(sc.m.m), "transfer matrix fails SSO");
  // Property P1 on all subsystem subsets; Property P2 on all erased pairs.
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<Eigen::Index> subs;
    for (Eigen::Index i = 0; i < 4; ++i)
      if (mask & (1 << i)) subs.push_back(i);
    expect(rank_of(sc.m.subsystem_columns(subs)) ==
               std::min<Eigen::Index>(4, 2 * static_cast<Eigen::Index>(subs.size())),
           "P1 rank assertion failed");
  }
  for (Eigen::Index t = 0; t < 4; ++t)
    expect(rank_of(hcat(sc.u, sc.m.subsystem_columns({t}))) == 4, "P2 rank assertion failed");

  const auto report = verify_scheme(Scheme{sc}, VerifyPolicy::random(1000, 12345));
  expect(report.total_failures() == 0, "trial failures in golden scheme");
  expect(report.kernel_noise_ok && report.kernel_decode_ok, "kernel check failed");
  for (const auto& p : report.patterns)
    expect(p.trials == 1000, "expected 1000 trials per pattern");
  expect(scheme_rate(Scheme{sc}) == Rat(1, 2), "rate is not exactly 1/2");
}

void criterion2_fig3() {
  expect(run_cli("capacity --sym 4 3 2 --grid 0:2:1 --csv " + kWork + "/acc_fig3.csv") == 0,
         "capacity command failed");
  const std::string csv = read_text(kWork + "/acc_fig3.csv");
  expect(csv.find("4,3,2,0,1,1,1,1,4,") != std::string::npos, "Delta*(0) != 1");
  expect(csv.find("4,3,2,1,1,1,2,1,2,") != std::string::npos, "Delta*(1) != 1/2");
  expect(csv.find("4,3,2,2,1,1,2,1,2,") != std::string::npos, "Delta*(2) != 1/2");
}

void criterion3_fig4() {
  const std::vector<Rat> beta1 = {Rat(1, 4), Rat(2, 4), Rat(3, 4), Rat(3, 4),
                                  Rat(3, 4), Rat(3, 4), Rat(7, 8)};
  for (int alpha = 2; alpha <= 8; ++alpha)
    expect(capacity_no_helper(8, alpha, 1).capacity == beta1[static_cast<std::size_t>(alpha - 2)],
           "beta=1 capacity mismatch at alpha=" + std::to_string(alpha));
  const std::vector<Rat> beta2 = {Rat(1, 4), Rat(2, 4), Rat(2, 4),
                                  Rat(2, 4), Rat(5, 8), Rat(6, 8)};
  for (int alpha = 3; alpha <= 8; ++alpha)
    expect(capacity_no_helper(8, alpha, 2).capacity == beta2[static_cast<std::size_t>(alpha - 3)],
           "beta=2 capacity mismatch at alpha=" + std::to_string(alpha));
  // Spot the named plotted points.
  expect(capacity_no_helper(8, 4, 1).capacity == Rat(3, 4), "(alpha=4, beta=1) != 3/4");
  expect(capacity_no_helper(8, 8, 2).capacity == Rat(6, 8), "(alpha=8, beta=2) != 6/8");
}

void criterion4_ame_sweep() {
  for (int S = 1; S <= 5; ++S)
    for (int alpha = 1; alpha <= S; ++alpha)
      for (int beta = 0; beta < alpha; ++beta) {
        const QemacInstance inst = build_symmetric_instance(5, S, alpha, beta);
        std::vector<Eigen::Index> alloc(static_cast<std::size_t>(S) + 1, 1);
        alloc[0] = std::max(0, 2 * alpha - S);  // Delta_0 at the saturation threshold
        const SchemeDims dims = plan_dimensions(inst, alloc);
        expect(dims.l == 2 * (alpha - beta), "unexpected block length in sweep");
        const AmeScheme sc = synthesize_ame(inst, dims, 2024);
        const auto report = verify_scheme(Scheme{sc}, VerifyPolicy{});
        expect(report.pass(), "verification failed for (" + std::to_string(S) + "," +
                                  std::to_string(alpha) + "," + std::to_string(beta) + ")");
        const auto tuple = cost_tuple(Scheme{sc});
        expect(tuple[0] == saturation_threshold(S, alpha, beta),
               "helper cost is not the saturation threshold");
        expect(in_region_ame(tuple, inst), "achieved tuple outside the AME region");
      }
}

void criterion5_tqc_sweep() {
  for (int S = 1; S <= 5; ++S)
    for (int alpha = 1; alpha <= S; ++alpha)
      for (int beta = 0; beta < alpha; ++beta) {
        const QemacInstance inst = build_symmetric_instance(5, S, alpha, beta);
        std::vector<Eigen::Index> alloc(static_cast<std::size_t>(S) + 1, 1);
        alloc[0] = 0;
        const TqcScheme sc =
            synthesize_tqc(inst, alloc, 2024, static_cast<Eigen::Index>(alpha - beta));
        const auto report = verify_scheme(Scheme{sc}, VerifyPolicy{});
        expect(report.pass(), "verification failed for (" + std::to_string(S) + "," +
                                  std::to_string(alpha) + "," + std::to_string(beta) + ")");
        expect(in_region_tqc(cost_tuple(Scheme{sc}), inst),
               "achieved tuple outside the TQC region");
      }
}

void criterion6_hull_agreement() {
  const Rat res(1, 1 << 12);
  for (auto [S, alpha, beta] :
       {std::tuple<int, int, int>{3, 2, 1}, {4, 2, 1}, {4, 3, 2}, {5, 3, 1}}) {
    const QemacInstance inst = build_symmetric_instance(5, S, alpha, beta);
    const Rat limit = Rat(2) * saturation_threshold(S, alpha, beta) + Rat(1);
    for (Rat d0(0); d0 <= limit; d0 += Rat(1, 8)) {
      auto uniform = [&](const Rat& d) {
        CostTuple t{d0};
        for (int s = 0; s < S; ++s) t.push_back(d);
        return t;
      };
      Rat lo(0), hi(1);
      expect(in_achievable_hull(uniform(hi), inst), "Delta = 1 must be achievable");
      while (hi - lo > res) {
        const Rat mid = (lo + hi) / Rat(2);
        if (in_achievable_hull(uniform(mid), inst))
          hi = mid;
        else
          lo = mid;
      }
      const Rat closed = symmetric_delta_star(S, alpha, beta, d0).delta_star;
      const Rat gap = hi > closed ? hi - closed : closed - hi;
      expect(gap <= res, "hull boundary disagrees with the closed form at (" +
                             std::to_string(S) + "," + std::to_string(alpha) + "," +
                             std::to_string(beta) + "), Delta_0 = " + d0.str());
    }
  }
}

void criterion7_hilbert() {
  // (a) Bell box over GF(3), exhaustive evolution.
  {
    const Field& f3 = construct_field(3, 1);
    TransferMatrix bell{fq_from_ints(f3, 2, 4, {1, 1, 0, 0, 0, 0, 1, -1})};
    const StabilizerBasis basis = stabilizer_basis(bell);
    expect(verify_box_evolution(basis, 0, 0) < 1e-9, "Bell-box evolution deviation");
  }
  // (b) 625-state basis of the F_5 worked-example box.
  {
    TransferMatrix m{golden_f5_transfer()};
    const StabilizerBasis basis = stabilizer_basis(m);
    expect(basis.dim() == 625, "expected a 625-dimensional basis");
    expect(gram_deviation(basis) < 1e-8, "625-state orthonormality");
    expect(verify_box_evolution(basis, 200, 7) < 1e-9, "625-state evolution deviation");
  }
  // (c) Twirl of a maximally entangled GF(3) pair.
  {
    const Field& f3 = construct_field(3, 1);
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(9);
    for (int i = 0; i < 3; ++i) phi(i * 3 + i) = 1.0 / std::sqrt(3.0);
    expect(verify_twirl(phi * phi.adjoint(), f3) < 1e-10, "twirl trace distance");
  }
  // (d) Erasure recovery with maximally mixed ancillas on the tiny scheme.
  {
    const QemacInstance inst = build_symmetric_instance(3, 3, 2, 1);
    const SchemeDims dims =
        plan_dimensions(inst, {0, 1, 1, 1}, std::nullopt, std::uint32_t{1});
    const AmeScheme sc = synthesize_ame(inst, dims, 0);
    expect(verify_scheme(Scheme{sc}, VerifyPolicy::exhaustive()).pass(),
           "tiny scheme fails frame verification");
    const auto rec = verify_erasure_recovery(sc, 27, 1);
    expect(rec.min_success >= 1.0 - 1e-9,
           "erasure recovery success " + std::to_string(rec.min_success));
  }
}

void criterion8_cutset() {
  const CutSetScheme sc = build_cutset_scheme(2, 3);
  expect(sc.field->q() == 8, "expected GF(8)");
  const auto report = verify_scheme(Scheme{sc}, VerifyPolicy::random(100, 77));
  expect(report.pass(), "cut-set verification failed");
  for (const auto& p : report.patterns) expect(p.trials == 100, "expected 100 draws");

  const auto tuple = cost_tuple(Scheme{sc});
  Rat worst(0);
  for (std::size_t s = 1; s < tuple.size(); ++s) worst = Rat::max(worst, tuple[s]);
  expect(worst == Rat(3, 4), "per-server cost is not exactly 3/4");

  // Singleton-type bounds at the uniformized tuple (0, 3/4, 3/4, 3/4).
  const auto verdict = eacq_check({Rat(0), Rat(3, 4), Rat(3, 4), Rat(3, 4)}, 3, 1);
  expect(verdict.all_ok(), "converse bounds violated at the cut-set tuple");
}

void criterion9_negative_controls() {
  // Corrupt one entry of the decoder projection of the golden scheme.
  {
    const std::string path = kWork + "/acc_neg_ame.json";
    expect(run_cli("example --which sec52 --out " + path) == 0, "fixture synthesis failed");
    Json j = Json::parse(read_text(path));
    auto codes = j["v_dec"]["codes"].get<std::vector<std::uint32_t>>();
    codes[0] = (codes[0] + 1) % 5;
    j["v_dec"]["codes"] = codes;
    write_text_atomic(path, j.dump(2) + "\n");
    expect(run_cli("verify " + path + " --policy random --trials 100") == 2,
           "corrupted V_dec not detected");
  }
  // Corrupt one entry of a classical per-pattern decoder.
  {
    const std::string path = kWork + "/acc_neg_tqc.json";
    expect(run_cli("synth --sym 5 3 2 1 --mode tqc --seed 5 --out " + path) == 0,
           "tqc synthesis failed");
    Json j = Json::parse(read_text(path));
    auto codes = j["d_t"][0]["codes"].get<std::vector<std::uint32_t>>();
    codes[0] = (codes[0] + 1) % 5;
    j["d_t"][0]["codes"] = codes;
    write_text_atomic(path, j.dump(2) + "\n");
    expect(run_cli("verify " + path) == 2, "corrupted D_t not detected");
  }
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--criterion") only = std::atoi(argv[i + 1]);

  const std::vector<Criterion> criteria = {
      {1, "worked-example golden reproduction (rate exactly 1/2)", 5.0,
       criterion1_golden_reproduction},
      {2, "Delta*(Delta_0) curve for (4,3,2): points (0,1), (1,1/2), (2,1/2)", 1.0,
       criterion2_fig3},
      {3, "S=8 capacity sweep, beta in {1,2}, alpha 2..8", 1.0, criterion3_fig4},
      {4, "entanglement-assisted synthesis sweep, S <= 5, d = 5", 120.0, criterion4_ame_sweep},
      {5, "classical synthesis sweep at l = alpha - beta", 60.0, criterion5_tqc_sweep},
      {6, "hull bisection matches the closed form to 2^-12", 120.0, criterion6_hull_agreement},
      {7, "dense-oracle certification (evolution, Gram, twirl, erasure recovery)", 180.0,
       criterion7_hilbert},
      {8, "cut-set scheme over GF(8), cost 3/4, converse bounds", 10.0, criterion8_cutset},
      {9, "negative controls: single-entry corruptions fail verification", 30.0,
       criterion9_negative_controls},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      c.body();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && secs > c.budget_seconds) {
      std::ostringstream os;
      os << "runtime " << secs << " s exceeds budget " << c.budget_seconds << " s";
      failure = os.str();
    }
    std::ostringstream line;
    line << (failure.empty() ? "[PASS]" : "[FAIL]") << " criterion " << c.id << " ("
         << std::fixed;
    line.precision(2);
    line << secs << " s): " << c.name;
    if (!failure.empty()) line << " -- " << failure;
    std::cout << line.str() << std::endl;
    all_ok = all_ok && failure.empty();
  }
  return all_ok ? 0 : 1;
}
