#pragma once

#include <cstdint>
#include <vector>

#include "qemac/linalg.hpp"

namespace qemac {

/// Transfer matrix of an N-sum box: M = [M_l, M_r] is N x 2N, has full row
/// rank, and satisfies M_r M_l^T = M_l M_r^T (strong self-orthogonality).
/// Box semantics: applying X(x_i)Z(z_i) on subsystem i shifts the logical
/// label by M [x; z].
struct TransferMatrix {
  FqMatrix m;

  Eigen::Index n() const { return m.rows(); }
  const Field& field() const { return m(0, 0).field(); }
  FqMatrix left() const { return m.leftCols(n()); }
  FqMatrix right() const { return m.rightCols(n()); }

  /// Columns (i, i+N) for each 0-based subsystem index, x block first.
  FqMatrix subsystem_columns(const std::vector<Eigen::Index>& subsystems) const;
};

/// Column indices (subsystems, then subsystems + N) into a 2N-column layout.
std::vector<Eigen::Index> paired_column_indices(const std::vector<Eigen::Index>& subsystems,
                                                Eigen::Index n);

/// true iff rank(M) = N and M_r M_l^T = M_l M_r^T. Throws on a non-N x 2N shape.
bool check_sso(const FqMatrix& m);

/// The 2N x 2N symplectic form [[0, -I], [I, 0]].
FqMatrix symplectic_j(const Field& f, Eigen::Index n);

struct SymplecticData {
  FqMatrix g;      // 2N x N, SSO: G^T J G = 0, full column rank
  FqMatrix h;      // completion
  FqMatrix f;      // [G, H], symplectic
  FqMatrix f_inv;  // closed form [[D^T, -C^T], [-B^T, A^T]]
  FqMatrix j;

  /// Bottom N rows of F^{-1}; equals the transfer matrix when G was built
  /// from one.
  FqMatrix recovered_transfer() const { return f_inv.bottomRows(g.cols()); }
};

/// Completes an SSO matrix G to a symplectic basis F = [G, H]. Both defining
/// identities (F^T J F = J and the closed-form inverse) are re-verified
/// before returning. Throws errc::not_sso if G is not SSO.
SymplecticData symplectic_complete(const FqMatrix& g);

/// G = [M_r^T; -M_l^T] for a transfer matrix, then complete.
SymplecticData symplectic_from_transfer(const TransferMatrix& m);

struct RankSpec {
  std::vector<Eigen::Index> subsystems;  // 0-based box subsystem indices
  Eigen::Index required_rank = 0;
};

/// Samples an SSO transfer matrix as [0, I] F^{-1} for F a product of 2N^2
/// seeded random symplectic transvections, rejecting until every rank spec
/// holds on the paired column submatrix. Throws errc::retry_exhausted after
/// `budget` attempts.
TransferMatrix sample_sso_transfer(Eigen::Index n, const Field& f,
                                   const std::vector<RankSpec>& specs, std::uint64_t seed,
                                   int budget = 256);

struct BoxOp {
  Eigen::Index subsystem = 0;  // 0-based
  Fq x, z;
};

/// Exact Pauli-frame label evolution: a -> a + M [x; z], with unlisted
/// subsystems contributing zero. Repeated subsystems accumulate additively.
FqVector box_apply(const FqVector& label, const std::vector<BoxOp>& ops,
                   const TransferMatrix& m);

}  // namespace qemac
