#include "qemac/nsum_box.hpp"

#include <string>

#include "qemac/util.hpp"

namespace qemac {

std::vector<Eigen::Index> paired_column_indices(const std::vector<Eigen::Index>& subsystems,
                                                Eigen::Index n) {
  std::vector<Eigen::Index> cols;
  cols.reserve(2 * subsystems.size());
  for (Eigen::Index i : subsystems) {
    require(i >= 0 && i < n, errc::index_out_of_range,
            "subsystem index " + std::to_string(i) + " outside [0, " + std::to_string(n) + ")");
    cols.push_back(i);
  }
  for (Eigen::Index i : subsystems) cols.push_back(i + n);
  return cols;
}

FqMatrix TransferMatrix::subsystem_columns(const std::vector<Eigen::Index>& subsystems) const {
  const auto cols = paired_column_indices(subsystems, n());
  FqMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  return out;
}

bool check_sso(const FqMatrix& m) {
  require(m.rows() > 0 && m.cols() == 2 * m.rows(), errc::shape_mismatch,
          "transfer matrix must be N x 2N");
  const Eigen::Index n = m.rows();
  if (rank_of(m) != n) return false;
  const FqMatrix ml = m.leftCols(n), mr = m.rightCols(n);
  return fq_equal(mr * ml.transpose(), ml * mr.transpose());
}

FqMatrix symplectic_j(const Field& f, Eigen::Index n) {
  FqMatrix j = fq_zeros(f, 2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    j(i, n + i) = -Fq(f, 1);
    j(n + i, i) = Fq(f, 1);
  }
  return j;
}

SymplecticData symplectic_complete(const FqMatrix& g) {
  require(g.rows() > 0 && g.rows() % 2 == 0 && g.cols() * 2 == g.rows(), errc::shape_mismatch,
          "G must be 2N x N");
  const Eigen::Index n = g.cols();
  const Field& f = g(0, 0).field();
  const FqMatrix j = symplectic_j(f, n);
  require(rank_of(g) == n, errc::not_sso, "G lacks full column rank");
  require(fq_is_zero(g.transpose() * j * g), errc::not_sso, "G^T J G != 0");

  // Any H0 with G^T J H0 = -I, then an isotropy correction H = H0 + G * S
  // with S - S^T = -(H0^T J H0); adding columns of G never disturbs
  // G^T J H = -I because G is isotropic.
  const FqMatrix gtj = g.transpose() * j;
  const FqMatrix h0 = solve_right(gtj, FqMatrix(-fq_identity(f, n)));
  const FqMatrix k = h0.transpose() * j * h0;
  FqMatrix s = fq_zeros(f, n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < i; ++c) s(i, c) = -k(i, c);
  const FqMatrix h = h0 + g * s;

  SymplecticData out;
  out.g = g;
  out.h = h;
  out.j = j;
  out.f = hcat(g, h);
  require(fq_equal(out.f.transpose() * j * out.f, j), errc::not_sso,
          "symplectic completion failed F^T J F = J");

  const FqMatrix a = g.topRows(n), b = g.bottomRows(n);
  const FqMatrix c = h.topRows(n), d = h.bottomRows(n);
  out.f_inv = vcat(hcat(d.transpose(), FqMatrix(-c.transpose())),
                   hcat(FqMatrix(-b.transpose()), a.transpose()));
  require(fq_equal(out.f_inv * out.f, fq_identity(f, 2 * n)), errc::not_sso,
          "closed-form inverse check failed");
  return out;
}

SymplecticData symplectic_from_transfer(const TransferMatrix& m) {
  require(check_sso(m.m), errc::not_sso, "transfer matrix is not SSO");
  const FqMatrix g = vcat(m.right().transpose(), FqMatrix(-m.left().transpose()));
  return symplectic_complete(g);
}

TransferMatrix sample_sso_transfer(Eigen::Index n, const Field& f,
                                   const std::vector<RankSpec>& specs, std::uint64_t seed,
                                   int budget) {
  require(n >= 1, errc::invalid_argument, "box size must be >= 1");
  require(f.q() >= static_cast<std::uint64_t>(n), errc::infeasible,
          "sampling needs q >= N");
  for (const auto& spec : specs)
    require(spec.required_rank <=
                std::min<Eigen::Index>(n, 2 * static_cast<Eigen::Index>(spec.subsystems.size())),
            errc::infeasible, "rank spec exceeds min(N, 2|I|)");

  Rng rng(seed);
  const FqMatrix j = symplectic_j(f, n);
  for (int attempt = 0; attempt < budget; ++attempt) {
    // F = product of 2N^2 symplectic transvections x -> x + lambda (x^T J v) v,
    // i.e. left-multiplications by T = I - lambda v v^T J. Each T is exactly
    // symplectic, so F is too.
    FqMatrix fmat = fq_identity(f, 2 * n);
    for (Eigen::Index t = 0; t < 2 * n * n; ++t) {
      FqVector v(2 * n);
      bool nonzero = false;
      for (Eigen::Index i = 0; i < 2 * n; ++i) {
        v(i) = Fq(f, static_cast<std::uint32_t>(rng.below(f.q())));
        nonzero = nonzero || !v(i).is_zero();
      }
      const Fq lambda(f, static_cast<std::uint32_t>(rng.below(f.q())));
      if (!nonzero || lambda.is_zero()) continue;
      const FqMatrix vrow = v.transpose() * j * fmat;  // 1 x 2N
      fmat = fmat - FqMatrix(v * lambda) * vrow;
    }
    // M = [0, I] F^{-1}, with F^{-1} = -J F^T J for symplectic F.
    const FqMatrix finv = FqMatrix(-j) * fmat.transpose() * j;
    TransferMatrix out{finv.bottomRows(n)};
    if (!check_sso(out.m)) continue;
    bool ok = true;
    for (const auto& spec : specs)
      if (rank_of(out.subsystem_columns(spec.subsystems)) != spec.required_rank) {
        ok = false;
        break;
      }
    if (ok) return out;
  }
  fail(errc::retry_exhausted, "sample_sso_transfer: retry budget exhausted");
}

FqVector box_apply(const FqVector& label, const std::vector<BoxOp>& ops,
                   const TransferMatrix& m) {
  const Eigen::Index n = m.n();
  require(label.rows() == n, errc::shape_mismatch, "label length must equal N");
  const Field& f = m.field();
  FqVector xz = fq_zeros(f, 2 * n, 1);
  for (const auto& op : ops) {
    require(op.subsystem >= 0 && op.subsystem < n, errc::index_out_of_range,
            "box_apply: subsystem index out of range");
    xz(op.subsystem) = xz(op.subsystem) + op.x;
    xz(op.subsystem + n) = xz(op.subsystem + n) + op.z;
  }
  return label + m.m * xz;
}

}  // namespace qemac
