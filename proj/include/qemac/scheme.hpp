#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qemac/instance.hpp"
#include "qemac/nsum_box.hpp"
#include "qemac/rational.hpp"

namespace qemac {

/// Dimension plan shared by the entanglement-assisted scheme: q = d^lambda,
/// l sum instances per block over F_q, N_s subsystems per server (Server 0
/// first), and the subsystem index sets I_s partitioning [0, N).
struct SchemeDims {
  std::uint32_t lambda = 1;
  const Field* field = nullptr;  // GF(d^lambda)
  Eigen::Index l = 0;
  std::vector<Eigen::Index> ns;                       // size S+1, Server 0 first
  Eigen::Index n_total = 0;                           // N = sum ns
  std::vector<std::vector<Eigen::Index>> subsystems;  // I_s, consecutive 0-based

  Eigen::Index batch() const { return static_cast<Eigen::Index>(lambda) * l; }
};

/// Chooses l as the feasibility maximum
///   l = min_k min{N, sum_{s in W(k)} 2 N_s} - max_t sum_{s in E(t)} 2 N_s
/// and lambda as the smallest power with d^lambda > max(T*N, K*l, N), which
/// covers every randomized-existence bound used by synthesize_ame. Both can
/// be overridden (smaller fields often work; witnesses are verified either
/// way). Throws errc::infeasible when the l bound is <= 0.
SchemeDims plan_dimensions(const QemacInstance& inst, const std::vector<Eigen::Index>& allocation,
                           std::optional<Eigen::Index> l_override = std::nullopt,
                           std::optional<std::uint32_t> lambda_override = std::nullopt);

/// The entanglement-assisted scheme: transfer matrix M, erasure-protection
/// matrix U, per-stream alignment matrices, and per-pattern decoders.
struct AmeScheme {
  QemacInstance inst;
  SchemeDims dims;
  std::uint64_t seed = 0;

  TransferMatrix m;
  FqMatrix u;  // N x u_cols, u_cols = N - max_t sum_{E(t)} 2 N_s

  std::vector<FqMatrix> m_k;       // N x 2 n_k, paired columns of W(k) subsystems
  std::vector<FqMatrix> u_k;       // basis of span(U) ∩ span(M_k)
  std::vector<FqMatrix> vprime_k;  // rk(U_k) x l, identity embedding
  std::vector<FqMatrix> v_k;       // 2 n_k x l with M_k V_k = U_k V'_k
  std::vector<FqMatrix> r_k;       // l x l invertible
  std::vector<FqMatrix> r_k_inv;
  FqMatrix v_dec;  // l x N

  std::vector<FqMatrix> e_t;         // per pattern, N x 2 n_t
  std::vector<FqMatrix> left_inv_t;  // per pattern, (u_cols + 2 n_t) x N

  Eigen::Index u_cols() const { return u.cols(); }
  std::vector<Eigen::Index> stream_subsystems(int k) const;
  std::vector<Eigen::Index> pattern_subsystems(int t) const;
};

/// Stages: (1) M via sample_sso_transfer with per-stream rank specs (or an
/// injected witness, which is verified against the same specs); (2) U sampled
/// until every [U, E_t] has full column rank (witness verified likewise);
/// (3..5) per-stream alignment U_k, V'_k, V_k; (6) V_dec sampled until every
/// R_k = V_dec U_k V'_k is invertible; (7) per-pattern left inverses.
AmeScheme synthesize_ame(const QemacInstance& inst, const SchemeDims& dims, std::uint64_t seed,
                         std::optional<FqMatrix> witness_m = std::nullopt,
                         std::optional<FqMatrix> witness_u = std::nullopt, int budget = 256);

/// Per-subsystem (x_i, z_i) operations for one server, in I_s order. `blocks`
/// holds the server's available stream blocks (ascending stream index), each
/// of length l. Server 0 takes no blocks and always emits zeros.
std::vector<std::pair<Fq, Fq>> encode_ame(const AmeScheme& sc, int server,
                                          const std::vector<FqVector>& blocks);

/// Recovers sum_k W_k from a measured label, for erasure pattern t. Noise in
/// span(E_t) is annihilated exactly.
FqVector decode_ame(const AmeScheme& sc, int t, const FqVector& label);

/// Classical baseline: per-(server, stream) random linear encoders and
/// per-pattern decoders D_t with D_t A_t = [I ... I].
struct TqcScheme {
  QemacInstance inst;
  std::uint32_t lambda = 1;
  const Field* field = nullptr;
  Eigen::Index l = 0;
  std::vector<Eigen::Index> ns;  // size S+1; Server 0 recorded but carries no data

  // g[k][j]: encoder of the j-th server of W(k), shape N_s x l.
  std::vector<std::vector<FqMatrix>> g;
  std::vector<FqMatrix> d_t;  // l x (sum of surviving N_s)
  std::uint64_t seed = 0;
};

/// Feasibility from the restated sum-network condition: q > N and
/// max_t sum_{E(t)} N_s <= min_k sum_{W(k)} N_s - l. l defaults to the
/// maximum; decoders are solved per pattern and certified exactly, with
/// whole-scheme resampling on an infeasible draw.
TqcScheme synthesize_tqc(const QemacInstance& inst, const std::vector<Eigen::Index>& allocation,
                         std::uint64_t seed,
                         std::optional<Eigen::Index> l_override = std::nullopt, int budget = 256);

/// The N_s q-ary symbols server s transmits for its available blocks.
FqVector encode_tqc(const TqcScheme& sc, int server, const std::vector<FqVector>& blocks);

/// Surviving symbols are stacked over servers not in E(t), ascending index.
FqVector decode_tqc(const TqcScheme& sc, int t, const FqVector& received);

/// Exact decoder identity D_t A_t = [I ... I] for every pattern, where A_t
/// stacks the surviving encoders.
bool tqc_decoders_certified(const TqcScheme& sc);

/// Cut-set communication scheme: an (A_1..A_4) block is spread over 8 coded
/// symbols by a (4,8) MDS generator; two superdense pairs carry two symbols
/// each, four qudits carry one classically. Any single-server erasure leaves
/// an invertible 4-column set.
struct CutSetScheme {
  std::uint32_t d = 2;
  std::uint32_t z = 1;
  const Field* field = nullptr;  // GF(d^z)
  FqMatrix gen;                  // 4 x 8 MDS generator
  TransferMatrix pair_box;       // 2-sum box [[1,1,0,0],[0,0,1,-1]]

  // Option t = erased server t+1. symbols[t]: available coded-symbol indices;
  // dec[t]: inverse of the matching generator columns.
  std::vector<std::vector<int>> option_symbols;
  std::vector<FqMatrix> option_dec;

  static constexpr int kServers = 3;
  std::vector<int> qudits_per_server() const { return {3, 3, 2}; }
};

CutSetScheme build_cutset_scheme(std::uint32_t d, std::uint32_t z);

/// Data row (1x4) -> coded row (1x8).
FqMatrix cutset_encode(const CutSetScheme& sc, const FqMatrix& data_row);

/// Recovers the data row from the 4 coded symbols of one decode option.
FqMatrix cutset_decode(const CutSetScheme& sc, int option, const FqMatrix& coded_row);

using Scheme = std::variant<AmeScheme, TqcScheme, CutSetScheme>;

/// Download-cost tuple (Delta_0, ..., Delta_S) in exact rationals.
std::vector<Rat> cost_tuple(const Scheme& sc);

/// Data-server rate R = (Delta_1 + ... + Delta_S)^{-1}.
Rat scheme_rate(const Scheme& sc);

/// Shipped witnesses for the F_5 worked example (N = 4 box, two Vandermonde
/// blocks; protection matrix chosen so every [U, m_tx, m_tz] is invertible).
FqMatrix golden_f5_transfer();
FqMatrix golden_f5_protection();

}  // namespace qemac
