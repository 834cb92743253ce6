#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qemac/scheme.hpp"
#include "qemac/util.hpp"

namespace qemac {

struct TrialRecord {
  std::vector<FqVector> data;  // K stream blocks (one 1x4 row for cut-set)
  int pattern = 0;
  FqVector noise;     // erased-subsystem (x~, z~) stack; empty for classical paths
  FqVector measured;  // label / received stack / surviving coded symbols
  FqVector decoded;
  FqVector expected;  // componentwise sum of the blocks
  bool pass = false;
};

struct PatternStats {
  int pattern = 0;
  long trials = 0;
  long failures = 0;
};

struct VerificationReport {
  std::string scheme_id;
  std::string policy;  // "exhaustive" or "random"
  long trials_per_pattern = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::vector<PatternStats> patterns;
  // Exact algebraic certificates: noise annihilation (decoder ∘ E_t = 0) and
  // per-stream decode identity for the entanglement-assisted path, decoder
  // identity for the classical path, minor invertibility for cut-set. These
  // quantify over all data and all noise, unlike the sampled trials.
  bool kernel_noise_ok = false;
  bool kernel_decode_ok = false;

  long total_failures() const {
    long n = 0;
    for (const auto& p : patterns) n += p.failures;
    return n;
  }
  bool pass() const { return total_failures() == 0 && kernel_noise_ok && kernel_decode_ok; }
};

struct VerifyPolicy {
  enum class Kind { automatic, exhaustive, random };
  Kind kind = Kind::automatic;
  long trials = 1000;  // per pattern, random policy
  std::uint64_t seed = 0;

  static VerifyPolicy random(long n, std::uint64_t seed) {
    return {Kind::random, n, seed};
  }
  static VerifyPolicy exhaustive() { return {Kind::exhaustive, 0, 0}; }
};

/// One end-to-end pipeline run: encode at every server, evolve the box label
/// (or stack classical symbols), inject noise on the erased subsystems, and
/// decode. The verdict compares against the exact block sum.
TrialRecord run_trial(const Scheme& sc, const std::vector<FqVector>& data, int pattern,
                      Rng& rng);

/// run_trial with explicit erased-subsystem noise (entanglement-assisted path).
TrialRecord run_trial_with_noise(const AmeScheme& sc, const std::vector<FqVector>& data,
                                 int pattern, const FqVector& noise);

/// Exact matrix-identity certificates (see VerificationReport).
bool kernel_noise_check(const Scheme& sc);
bool kernel_decode_check(const Scheme& sc);

/// Runs trials over every pattern per the policy, plus the kernel checks.
/// Failures are reported, never thrown. The automatic policy upgrades to
/// exhaustive data enumeration when q^(K l) <= 1e5.
VerificationReport verify_scheme(const Scheme& sc, VerifyPolicy policy);

/// Uniform random stream blocks for a scheme.
std::vector<FqVector> random_stream_data(const Scheme& sc, Rng& rng);

}  // namespace qemac
