#include "qemac/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "qemac/sim.hpp"
#include "qemac/util.hpp"

namespace qemac {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

Eigen::Index pow_index(std::uint64_t q, Eigen::Index n) {
  long double v = 1.0L;
  for (Eigen::Index i = 0; i < n; ++i) v *= static_cast<long double>(q);
  require(v <= static_cast<long double>(kMaxDenseDim), errc::too_large,
          "dense oracle dimension exceeds 4096");
  std::uint64_t out = 1;
  for (Eigen::Index i = 0; i < n; ++i) out *= q;
  return static_cast<Eigen::Index>(out);
}

// Big-endian digit decomposition of a basis index into subsystem codes.
void index_digits(Eigen::Index idx, std::uint64_t q, Eigen::Index n,
                  std::vector<std::uint32_t>& out) {
  out.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = n; i-- > 0;) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx % q);
    idx /= static_cast<Eigen::Index>(q);
  }
}

Eigen::Index digits_index(const std::vector<std::uint32_t>& digits, std::uint64_t q) {
  Eigen::Index idx = 0;
  for (std::uint32_t d : digits) idx = idx * static_cast<Eigen::Index>(q) + d;
  return idx;
}

cd root_of_unity(std::uint32_t p, std::uint32_t e) {
  const double angle = 2.0 * kPi * static_cast<double>(e % p) / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

void require_odd(const Field& f) {
  require(f.p() != 2, errc::even_characteristic_unsupported,
          "dense oracle requires odd characteristic");
}

// Weyl group phase exponent: 2^{-1} tr(sum_i x_i z_i), an element of GF(p).
std::uint32_t group_phase_exp(const Field& f, const std::vector<std::uint32_t>& x,
                              const std::vector<std::uint32_t>& z) {
  const std::uint32_t half = f.inv(f.from_int(2));  // odd p, so 2 is invertible
  std::uint32_t dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) dot = f.add(dot, f.mul(x[i], z[i]));
  return f.mul(half, f.from_int(static_cast<std::int64_t>(f.trace(dot))));
}

// Sparse action of (phase) * prod_i X(x_i)Z(z_i) on a dense vector.
Eigen::VectorXcd apply_weyl(const Field& f, const std::vector<std::uint32_t>& x,
                            const std::vector<std::uint32_t>& z, const Eigen::VectorXcd& in,
                            cd phase) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index dim = in.rows();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  std::vector<std::uint32_t> digits;
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    if (in(idx) == cd{0.0, 0.0}) continue;
    index_digits(idx, f.q(), n, digits);
    std::uint32_t zp = 0;
    for (std::size_t i = 0; i < digits.size(); ++i)
      zp = static_cast<std::uint32_t>((zp + f.trace(f.mul(digits[i], z[i]))) % f.p());
    std::vector<std::uint32_t> shifted = digits;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = f.add(shifted[i], x[i]);
    out(digits_index(shifted, f.q())) += phase * root_of_unity(f.p(), zp) * in(idx);
  }
  return out;
}

std::vector<std::uint32_t> column_codes(const FqMatrix& m, Eigen::Index col, Eigen::Index from,
                                        Eigen::Index count) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = m(from + i, col).code();
  return out;
}

}  // namespace

Eigen::MatrixXcd weyl(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& z,
                      const Field& f) {
  require_odd(f);
  require(x.size() == z.size() && !x.empty(), errc::dimension_mismatch,
          "x and z exponent vectors must have equal positive length");
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index dim = pow_index(f.q(), n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<std::uint32_t> digits;
  for (Eigen::Index col = 0; col < dim; ++col) {
    index_digits(col, f.q(), n, digits);
    std::uint32_t zp = 0;
    for (std::size_t i = 0; i < digits.size(); ++i)
      zp = static_cast<std::uint32_t>((zp + f.trace(f.mul(digits[i], z[i]))) % f.p());
    std::vector<std::uint32_t> shifted = digits;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = f.add(shifted[i], x[i]);
    u(digits_index(shifted, f.q()), col) = root_of_unity(f.p(), zp);
  }
  return u;
}

Eigen::VectorXcd weyl_apply(const std::vector<std::uint32_t>& x,
                            const std::vector<std::uint32_t>& z, const Field& f,
                            const Eigen::VectorXcd& state) {
  require_odd(f);
  return apply_weyl(f, x, z, state, cd{1.0, 0.0});
}

Eigen::Index StabilizerBasis::label_index(const FqVector& a) const {
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) digits[static_cast<std::size_t>(i)] = a(i).code();
  return digits_index(digits, field->q());
}

FqVector StabilizerBasis::label_of_index(Eigen::Index idx) const {
  std::vector<std::uint32_t> digits;
  index_digits(idx, field->q(), m.n(), digits);
  FqVector a(m.n());
  for (Eigen::Index i = 0; i < m.n(); ++i)
    a(i) = Fq(*field, digits[static_cast<std::size_t>(i)]);
  return a;
}

StabilizerBasis stabilizer_basis(const TransferMatrix& m) {
  const Field& f = m.field();
  require_odd(f);
  require(check_sso(m.m), errc::not_sso, "stabilizer basis needs an SSO transfer matrix");
  const Eigen::Index n = m.n();
  const Eigen::Index dim = pow_index(f.q(), n);
  const SymplecticData sd = symplectic_from_transfer(m);

  // Enumerate span(G) once as (x, z, group phase) triples.
  struct SpanElem {
    std::vector<std::uint32_t> x, z;
    cd phase;
  };
  std::vector<SpanElem> span;
  span.reserve(static_cast<std::size_t>(dim));
  std::vector<std::uint32_t> coeff(static_cast<std::size_t>(n), 0);
  for (;;) {
    FqVector c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = Fq(f, coeff[static_cast<std::size_t>(i)]);
    const FqVector v = sd.g * c;
    SpanElem el;
    el.x.resize(static_cast<std::size_t>(n));
    el.z.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      el.x[static_cast<std::size_t>(i)] = v(i).code();
      el.z[static_cast<std::size_t>(i)] = v(n + i).code();
    }
    el.phase = root_of_unity(f.p(), group_phase_exp(f, el.x, el.z));
    span.push_back(std::move(el));
    std::size_t pos = 0;
    for (;; ++pos) {
      if (pos == coeff.size()) break;
      if (++coeff[pos] < f.q()) break;
      coeff[pos] = 0;
    }
    if (pos == coeff.size()) break;
  }

  // Abelian-group guard on the generators: phased Weyl ops over span(G) must
  // compose exactly, else the basis construction below is meaningless.
  {
    Rng rng(0x9e3779b9);
    Eigen::VectorXcd probe = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      probe(i) = cd{static_cast<double>(rng.below(1000)) / 1000.0 - 0.5,
                    static_cast<double>(rng.below(1000)) / 1000.0 - 0.5};
    probe.normalize();
    for (Eigen::Index gi = 0; gi < n; ++gi)
      for (Eigen::Index gj = 0; gj < n; ++gj) {
        const FqVector vi = sd.g.col(gi), vj = sd.g.col(gj);
        FqVector vsum(2 * n);
        for (Eigen::Index i = 0; i < 2 * n; ++i) vsum(i) = vi(i) + vj(i);
        auto codes = [&](const FqVector& v) {
          SpanElem el;
          el.x.resize(static_cast<std::size_t>(n));
          el.z.resize(static_cast<std::size_t>(n));
          for (Eigen::Index i = 0; i < n; ++i) {
            el.x[static_cast<std::size_t>(i)] = v(i).code();
            el.z[static_cast<std::size_t>(i)] = v(n + i).code();
          }
          el.phase = root_of_unity(f.p(), group_phase_exp(f, el.x, el.z));
          return el;
        };
        const SpanElem a = codes(vi), b = codes(vj), ab = codes(vsum);
        const Eigen::VectorXcd lhs =
            apply_weyl(f, a.x, a.z, apply_weyl(f, b.x, b.z, probe, b.phase), a.phase);
        const Eigen::VectorXcd rhs = apply_weyl(f, ab.x, ab.z, probe, ab.phase);
        require((lhs - rhs).norm() < 1e-9, errc::phase_inconsistency,
                "phased Weyl operators over span(G) do not compose");
      }
  }

  // Projector onto the label-0 state, accumulated column by column.
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<std::uint32_t> digits;
  for (const auto& el : span) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      index_digits(col, f.q(), n, digits);
      std::uint32_t zp = 0;
      for (std::size_t i = 0; i < digits.size(); ++i)
        zp = static_cast<std::uint32_t>((zp + f.trace(f.mul(digits[i], el.z[i]))) % f.p());
      std::vector<std::uint32_t> shifted = digits;
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = f.add(shifted[i], el.x[i]);
      p0(digits_index(shifted, f.q()), col) +=
          el.phase * root_of_unity(f.p(), zp) / static_cast<double>(dim);
    }
  }
  require((p0 * p0 - p0).norm() < 1e-8 && std::abs(p0.trace().real() - 1.0) < 1e-8,
          errc::phase_inconsistency, "stabilizer projector is not a rank-1 projector");

  // Fiducial state: dominant column of the projector, eigensolver fallback.
  Eigen::VectorXcd fiducial;
  {
    Eigen::Index best = 0;
    double best_norm = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c)
      if (p0.col(c).norm() > best_norm) {
        best_norm = p0.col(c).norm();
        best = c;
      }
    if (best_norm > 1e-8) {
      fiducial = p0.col(best) / best_norm;
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p0);
      Eigen::Index top;
      es.eigenvalues().maxCoeff(&top);
      require(es.eigenvalues()(top) > 1e-8, errc::phase_inconsistency,
              "projector is numerically rank-deficient");
      fiducial = es.eigenvectors().col(top);
    }
  }

  StabilizerBasis basis;
  basis.field = &f;
  basis.m = m;
  basis.states.resize(dim, dim);
  // |a>_M = phased Weyl displacement of the fiducial state by any s with
  // M s = a (label of the fiducial state is 0).
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const FqVector a = [&] {
      std::vector<std::uint32_t> dg;
      index_digits(idx, f.q(), n, dg);
      FqVector out(n);
      for (Eigen::Index i = 0; i < n; ++i) out(i) = Fq(f, dg[static_cast<std::size_t>(i)]);
      return out;
    }();
    const FqVector s = solve_right(m.m, FqMatrix(a));
    std::vector<std::uint32_t> x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = s(i).code();
      z[static_cast<std::size_t>(i)] = s(n + i).code();
    }
    basis.states.col(idx) =
        apply_weyl(f, x, z, fiducial, root_of_unity(f.p(), group_phase_exp(f, x, z)));
  }
  return basis;
}

double gram_deviation(const StabilizerBasis& basis) {
  const Eigen::MatrixXcd gram = basis.states.adjoint() * basis.states;
  return (gram - Eigen::MatrixXcd::Identity(basis.dim(), basis.dim())).norm();
}

double verify_box_evolution(const StabilizerBasis& basis, long trials, std::uint64_t seed) {
  const Field& f = *basis.field;
  const Eigen::Index n = basis.m.n();
  const Eigen::Index dim = basis.dim();

  auto deviation = [&](Eigen::Index label_idx, const std::vector<std::uint32_t>& x,
                       const std::vector<std::uint32_t>& z) {
    FqVector a = basis.label_of_index(label_idx);
    FqVector xz(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      xz(i) = Fq(f, x[static_cast<std::size_t>(i)]);
      xz(n + i) = Fq(f, z[static_cast<std::size_t>(i)]);
    }
    const FqVector b = a + basis.m.m * xz;
    const Eigen::VectorXcd evolved =
        weyl_apply(x, z, f, basis.states.col(label_idx));
    const double fid = std::abs(basis.states.col(basis.label_index(b)).dot(evolved));
    return std::abs(1.0 - fid);
  };

  double worst = 0.0;
  if (trials <= 0) {
    std::vector<std::uint32_t> x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
    const Eigen::Index ops = pow_index(f.q(), n);  // enumerate (x, z) separately
    for (Eigen::Index a = 0; a < dim; ++a)
      for (Eigen::Index xi = 0; xi < ops; ++xi)
        for (Eigen::Index zi = 0; zi < ops; ++zi) {
          index_digits(xi, f.q(), n, x);
          index_digits(zi, f.q(), n, z);
          worst = std::max(worst, deviation(a, x, z));
        }
    return worst;
  }
  Rng rng(seed);
  std::vector<std::uint32_t> x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
  for (long i = 0; i < trials; ++i) {
    const auto a = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(dim)));
    for (Eigen::Index j = 0; j < n; ++j) {
      x[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(rng.below(f.q()));
      z[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(rng.below(f.q()));
    }
    worst = std::max(worst, deviation(a, x, z));
  }
  return worst;
}

double verify_twirl(const Eigen::MatrixXcd& rho_ab, const Field& f) {
  require_odd(f);
  const auto q = static_cast<Eigen::Index>(f.q());
  require(rho_ab.rows() == rho_ab.cols() && rho_ab.rows() % q == 0, errc::dimension_mismatch,
          "joint state dimension must be a multiple of q");
  const Eigen::Index dim_a = rho_ab.rows() / q;
  require(rho_ab.rows() <= kMaxDenseDim, errc::too_large, "joint dimension exceeds 4096");

  // Average over all I tensor X(x)Z(z) conjugations.
  Eigen::MatrixXcd twirled = Eigen::MatrixXcd::Zero(rho_ab.rows(), rho_ab.cols());
  for (std::uint32_t x = 0; x < f.q(); ++x)
    for (std::uint32_t z = 0; z < f.q(); ++z) {
      const Eigen::MatrixXcd w = weyl({x}, {z}, f);
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(rho_ab.rows(), rho_ab.cols());
      for (Eigen::Index i = 0; i < dim_a; ++i)
        full.block(i * q, i * q, q, q) = w;  // I_A tensor W acts block-diagonally
      twirled += full * rho_ab * full.adjoint();
    }
  twirled /= static_cast<double>(f.q()) * static_cast<double>(f.q());

  // Tr_B(rho) tensor I/q.
  Eigen::MatrixXcd rho_a = Eigen::MatrixXcd::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index j = 0; j < dim_a; ++j)
      rho_a(i, j) = rho_ab.block(i * q, j * q, q, q).trace();
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(rho_ab.rows(), rho_ab.cols());
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index j = 0; j < dim_a; ++j)
      target.block(i * q, j * q, q, q) =
          rho_a(i, j) / static_cast<double>(q) * Eigen::MatrixXcd::Identity(q, q);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(twirled - target);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

ErasureRecoveryResult verify_erasure_recovery(const AmeScheme& sc, long data_samples,
                                              std::uint64_t seed) {
  const Field& f = *sc.dims.field;
  require_odd(f);
  const Eigen::Index n = sc.dims.n_total;
  const Eigen::Index dim = pow_index(f.q(), n);
  const StabilizerBasis basis = stabilizer_basis(sc.m);

  ErasureRecoveryResult result;
  Rng rng(seed);
  const auto [blocks, len] = std::pair<int, Eigen::Index>{sc.inst.stream_count(), sc.dims.l};
  const long double space =
      std::pow(static_cast<long double>(f.q()), static_cast<long double>(blocks) * len);
  const bool exhaustive = space <= static_cast<long double>(data_samples);

  std::vector<std::uint32_t> odo(static_cast<std::size_t>(blocks * len), 0);
  const long cases = exhaustive ? static_cast<long>(space) : data_samples;

  for (int t = 0; t < sc.inst.pattern_count(); ++t) {
    const auto erased = sc.pattern_subsystems(t);
    for (long c = 0; c < cases; ++c) {
      // Draw or enumerate the data.
      std::vector<FqVector> data;
      if (exhaustive) {
        for (int k = 0; k < blocks; ++k) {
          FqVector w(len);
          for (Eigen::Index i = 0; i < len; ++i)
            w(i) = Fq(f, odo[static_cast<std::size_t>(k * len + i)]);
          data.push_back(w);
        }
        std::size_t pos = 0;
        while (pos < odo.size() && ++odo[pos] == f.q()) odo[pos++] = 0;
      } else {
        for (int k = 0; k < blocks; ++k) data.push_back(fq_random(f, len, 1, rng));
      }

      // Encoded pure state via the bare per-server operations.
      std::vector<std::uint32_t> x(static_cast<std::size_t>(n), 0),
          z(static_cast<std::size_t>(n), 0);
      for (int s = 0; s <= sc.inst.servers; ++s) {
        std::vector<FqVector> blocks_s;
        if (s > 0)
          for (int k = 0; k < sc.inst.stream_count(); ++k) {
            const auto& w = sc.inst.streams[static_cast<std::size_t>(k)];
            if (std::find(w.begin(), w.end(), s) != w.end())
              blocks_s.push_back(data[static_cast<std::size_t>(k)]);
          }
        const auto pairs = encode_ame(sc, s, blocks_s);
        const auto& subs = sc.dims.subsystems[static_cast<std::size_t>(s)];
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          x[static_cast<std::size_t>(subs[i])] = pairs[i].first.code();
          z[static_cast<std::size_t>(subs[i])] = pairs[i].second.code();
        }
      }
      const Eigen::VectorXcd psi = weyl_apply(x, z, f, basis.states.col(0));

      // rho' = Tr_erased(psi psi^dagger) tensor (I/q per erased subsystem),
      // re-inserted at the original positions.
      const auto qe = static_cast<Eigen::Index>(f.q());
      Eigen::MatrixXcd rho_full = Eigen::MatrixXcd::Zero(dim, dim);
      std::vector<std::uint32_t> di, dj;
      const double mix = std::pow(static_cast<double>(qe), -static_cast<double>(erased.size()));
      for (Eigen::Index i = 0; i < dim; ++i) {
        index_digits(i, f.q(), n, di);
        for (Eigen::Index j = 0; j < dim; ++j) {
          index_digits(j, f.q(), n, dj);
          bool lost_diag = true;
          for (Eigen::Index e : erased)
            lost_diag = lost_diag && di[static_cast<std::size_t>(e)] ==
                                         dj[static_cast<std::size_t>(e)];
          if (!lost_diag) continue;
          // Sum over the traced-out digits of the erased subsystems.
          cd acc{0.0, 0.0};
          std::vector<std::uint32_t> bi = di, bj = dj;
          std::vector<std::uint32_t> sweep(erased.size(), 0);
          for (;;) {
            for (std::size_t e = 0; e < erased.size(); ++e) {
              bi[static_cast<std::size_t>(erased[e])] = sweep[e];
              bj[static_cast<std::size_t>(erased[e])] = sweep[e];
            }
            acc += psi(digits_index(bi, f.q())) * std::conj(psi(digits_index(bj, f.q())));
            std::size_t pos = 0;
            while (pos < sweep.size() && ++sweep[pos] == f.q()) sweep[pos++] = 0;
            if (sweep.size() == 0 || pos == sweep.size()) break;
          }
          rho_full(i, j) = acc * mix;
        }
      }

      // Measure in the box basis, decode outcomes classically.
      FqVector expected = fq_zeros(f, len, 1);
      for (const auto& w : data) expected = expected + w;
      double success = 0.0;
      for (Eigen::Index a = 0; a < dim; ++a) {
        const double prob =
            std::real(basis.states.col(a).dot(rho_full * basis.states.col(a)));
        if (prob < 1e-15) continue;
        const FqVector decoded = decode_ame(sc, t, basis.label_of_index(a));
        if (fq_equal(decoded, expected)) success += prob;
      }
      result.min_success = std::min(result.min_success, success);
      ++result.cases;
    }
  }
  return result;
}

}  // namespace qemac
