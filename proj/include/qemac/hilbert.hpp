#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qemac/scheme.hpp"

namespace qemac {

/// Dense complex-vector oracle for small boxes (q^N <= 4096, odd
/// characteristic). Everything here exists to certify that the exact
/// Pauli-frame simulation is faithful to actual quantum states.
///
/// Conventions: basis index of |a_1 ... a_N> is big-endian in the subsystem
/// element codes; X(x)|a> = |a+x>, Z(z)|b> = w^tr(bz) |b> with w = e^{2 pi i/p}.
/// Weyl phases are fixed as c_{x,z} = w^{2^{-1} tr(x.z)} (X-before-Z order),
/// which makes the restricted Weyl operators over a self-orthogonal span an
/// abelian group; a guard validates that and throws errc::phase_inconsistency
/// if the convention were ever broken.

constexpr Eigen::Index kMaxDenseDim = 4096;

/// Bare tensor product of single-qudit X(x_i)Z(z_i) (no Weyl phase).
Eigen::MatrixXcd weyl(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& z,
                      const Field& f);

/// Applies the bare Weyl operator to a state without materialising the matrix.
Eigen::VectorXcd weyl_apply(const std::vector<std::uint32_t>& x,
                            const std::vector<std::uint32_t>& z, const Field& f,
                            const Eigen::VectorXcd& state);

/// The q^N orthonormal stabilizer states |a>_M, column-indexed by the
/// big-endian code of the label a.
struct StabilizerBasis {
  const Field* field = nullptr;
  TransferMatrix m;
  Eigen::MatrixXcd states;  // q^N x q^N

  Eigen::Index dim() const { return states.rows(); }
  Eigen::Index label_index(const FqVector& a) const;
  FqVector label_of_index(Eigen::Index idx) const;
};

StabilizerBasis stabilizer_basis(const TransferMatrix& m);

/// Frobenius distance of the Gram matrix from the identity.
double gram_deviation(const StabilizerBasis& basis);

/// max |1 - |<a + M[x;z]| W(x,z) |a>|| over random draws (trials > 0) or the
/// whole (a, x, z) space (trials <= 0).
double verify_box_evolution(const StabilizerBasis& basis, long trials, std::uint64_t seed);

/// Twirl of the last q-dimensional subsystem: trace distance between the
/// average over all X(x)Z(z) conjugations and Tr_B(rho) tensor I/q.
double verify_twirl(const Eigen::MatrixXcd& rho_ab, const Field& f);

struct ErasureRecoveryResult {
  double min_success = 1.0;  // over all patterns and sampled data
  long cases = 0;
};

/// Full density-matrix simulation of the erasure protocol: encode, trace out
/// the erased subsystems, substitute maximally mixed ancillas, measure in the
/// box basis, and push outcomes through the classical decoder. The success
/// probability of recovering the block sum must be 1 for a sound scheme.
ErasureRecoveryResult verify_erasure_recovery(const AmeScheme& sc, long data_samples,
                                              std::uint64_t seed);

}  // namespace qemac
