#include "qemac/linalg.hpp"

#include <string>

namespace qemac {

Rref rref(const FqMatrix& m) {
  Rref out;
  out.R = m;
  FqMatrix& r = out.R;
  const Eigen::Index rows = r.rows(), cols = r.cols();
  Eigen::Index cur = 0;
  for (Eigen::Index col = 0; col < cols && cur < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = cur; i < rows; ++i)
      if (!r(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != cur) r.row(cur).swap(r.row(piv));
    const Fq inv = r(cur, col).inverse();
    for (Eigen::Index j = col; j < cols; ++j) r(cur, j) = r(cur, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == cur || r(i, col).is_zero()) continue;
      const Fq factor = r(i, col);
      for (Eigen::Index j = col; j < cols; ++j) r(i, j) = r(i, j) - factor * r(cur, j);
    }
    out.pivot_cols.push_back(col);
    ++cur;
  }
  out.rank = cur;
  return out;
}

Eigen::Index rank_of(const FqMatrix& m) { return rref(m).rank; }

FqMatrix left_inverse(const FqMatrix& m) {
  require(m.rows() > 0 && m.cols() > 0, errc::not_full_column_rank, "left_inverse: empty matrix");
  const Field& f = m(0, 0).field();
  const Rref rr = rref(hcat(m, fq_identity(f, m.rows())));
  // Full column rank iff the first cols(M) columns are all pivots.
  bool full = rr.rank >= m.cols();
  for (Eigen::Index j = 0; full && j < m.cols(); ++j) full = rr.pivot_cols[j] == j;
  require(full, errc::not_full_column_rank, "left_inverse: matrix lacks full column rank");
  return rr.R.block(0, m.cols(), m.cols(), m.rows());
}

std::optional<FqMatrix> try_solve_right(const FqMatrix& a, const FqMatrix& c) {
  require(a.rows() == c.rows(), errc::shape_mismatch, "solve_right: row count mismatch");
  require(a.rows() > 0, errc::shape_mismatch, "solve_right: empty system");
  if (c.cols() == 0) return FqMatrix(a.cols(), 0);
  if (a.cols() == 0) {
    if (!fq_is_zero(c)) return std::nullopt;
    return FqMatrix(0, c.cols());
  }
  const Field& f = a(0, 0).field();
  const Rref rr = rref(hcat(a, c));
  for (Eigen::Index i = 0; i < rr.rank; ++i)
    if (rr.pivot_cols[static_cast<std::size_t>(i)] >= a.cols()) return std::nullopt;
  FqMatrix x = fq_zeros(f, a.cols(), c.cols());
  for (Eigen::Index i = 0; i < rr.rank; ++i)
    x.row(rr.pivot_cols[static_cast<std::size_t>(i)]) =
        rr.R.block(i, a.cols(), 1, c.cols());
  return x;
}

FqMatrix solve_right(const FqMatrix& a, const FqMatrix& c) {
  auto x = try_solve_right(a, c);
  require(x.has_value(), errc::infeasible, "solve_right: system is inconsistent");
  return *x;
}

FqMatrix kernel(const FqMatrix& a) {
  require(a.rows() > 0, errc::shape_mismatch, "kernel: empty matrix");
  const Field& f = a(0, 0).field();
  const Rref rr = rref(a);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index c : rr.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  FqMatrix k = fq_zeros(f, n, n - rr.rank);
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    k(free, out) = Fq(f, 1);
    for (Eigen::Index i = 0; i < rr.rank; ++i)
      k(rr.pivot_cols[static_cast<std::size_t>(i)], out) = -rr.R(i, free);
    ++out;
  }
  return k;
}

FqMatrix intersect_column_spans(const FqMatrix& a, const FqMatrix& b) {
  require(a.rows() == b.rows(), errc::shape_mismatch, "intersect: row count mismatch");
  require(a.rows() > 0, errc::shape_mismatch, "intersect: empty matrices");
  const Field& f = (a.cols() > 0 ? a(0, 0) : b(0, 0)).field();
  if (a.cols() == 0 || b.cols() == 0) return fq_zeros(f, a.rows(), 0);
  FqMatrix stacked = hcat(a, FqMatrix(-b));
  const FqMatrix k = kernel(stacked);
  const FqMatrix w = a * k.topRows(a.cols());
  // w spans the intersection; keep its pivot columns as the basis.
  const Rref rr = rref(w);
  FqMatrix basis(a.rows(), rr.rank);
  for (Eigen::Index j = 0; j < rr.rank; ++j)
    basis.col(j) = w.col(rr.pivot_cols[static_cast<std::size_t>(j)]);
  return basis;
}

FqMatrix inverse(const FqMatrix& m) {
  require(m.rows() == m.cols(), errc::shape_mismatch, "inverse: matrix not square");
  return left_inverse(m);
}

FqMatrix mds_generator(Eigen::Index k, Eigen::Index n, const Field& f) {
  require(k >= 1 && k <= n, errc::invalid_argument, "mds_generator: need 1 <= k <= n");
  require(f.q() >= static_cast<std::uint64_t>(n), errc::field_too_small,
          "mds_generator: field order " + std::to_string(f.q()) + " below code length " +
              std::to_string(n));
  FqMatrix g(k, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto alpha = static_cast<std::uint32_t>(j);
    std::uint32_t power = 1;
    for (Eigen::Index i = 0; i < k; ++i) {
      g(i, j) = Fq(f, power);
      power = f.mul(power, alpha);
    }
  }
  return g;
}

}  // namespace qemac
