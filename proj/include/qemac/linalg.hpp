#pragma once

#include <optional>
#include <vector>

#include "qemac/fq.hpp"

namespace qemac {

/// Reduced row echelon form. Pivot rule: first nonzero entry scanning down
/// the current column, row swaps only, pivots normalised to 1 and cleared
/// above and below. Deterministic, so everything derived from it is too.
struct Rref {
  FqMatrix R;
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index rank = 0;
};

Rref rref(const FqMatrix& m);

Eigen::Index rank_of(const FqMatrix& m);

/// L with L * M = I_{cols(M)}; requires full column rank.
FqMatrix left_inverse(const FqMatrix& m);

/// Any X with A * X = C, free variables set to zero; nullopt if inconsistent.
std::optional<FqMatrix> try_solve_right(const FqMatrix& a, const FqMatrix& c);

/// Throwing flavour of try_solve_right (errc::infeasible).
FqMatrix solve_right(const FqMatrix& a, const FqMatrix& c);

/// Basis of the right null space of A as columns (0 columns if trivial).
FqMatrix kernel(const FqMatrix& a);

/// Basis matrix of span(A) ∩ span(B), via the kernel of [A | -B]. The column
/// count always equals rank(A) + rank(B) - rank([A B]).
FqMatrix intersect_column_spans(const FqMatrix& a, const FqMatrix& b);

/// Square-matrix inverse (full-rank required).
FqMatrix inverse(const FqMatrix& m);

/// k x n Reed-Solomon / Vandermonde generator on the first n field elements;
/// every k x k minor is invertible. Requires q >= n.
FqMatrix mds_generator(Eigen::Index k, Eigen::Index n, const Field& f);

}  // namespace qemac
