#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qemac/hilbert.hpp"
#include "qemac/sim.hpp"

using namespace qemac;

namespace {

TransferMatrix bell_box(const Field& f) {
  return TransferMatrix{fq_from_ints(f, 2, 4, {1, 1, 0, 0, 0, 0, 1, -1})};
}

}  // namespace

TEST_CASE("single-qudit operators") {
  const Field& f3 = construct_field(3, 1);

  SUBCASE("x = z = 0 is the identity") {
    CHECK((weyl({0}, {0}, f3) - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);
  }
  SUBCASE("X(1) is the cyclic shift") {
    const Eigen::MatrixXcd x = weyl({1}, {0}, f3);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(1, 0) = expect(2, 1) = expect(0, 2) = 1.0;
    CHECK((x - expect).norm() < 1e-14);
  }
  SUBCASE("Z(1) over GF(5) is diag(1, w, w^2, w^3, w^4)") {
    const Field& f5 = construct_field(5, 1);
    const Eigen::MatrixXcd z = weyl({0}, {1}, f5);
    for (int b = 0; b < 5; ++b) {
      const double ang = 2.0 * 3.14159265358979323846 * b / 5.0;
      CHECK(std::abs(z(b, b) - std::complex<double>(std::cos(ang), std::sin(ang))) < 1e-12);
    }
    CHECK(std::abs(z.norm() * z.norm() - 5.0) < 1e-9);  // diagonal unitary
  }
  SUBCASE("unitarity") {
    const Eigen::MatrixXcd w = weyl({2}, {1}, f3);
    CHECK((w.adjoint() * w - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("characteristic 2 is rejected") {
    CHECK_THROWS_AS((void)weyl({1}, {0}, construct_field(2, 1)), Error);
  }
}

TEST_CASE("stabilizer basis: single qudit X-shift box") {
  const Field& f3 = construct_field(3, 1);
  TransferMatrix m{fq_from_ints(f3, 1, 2, {1, 0})};
  const StabilizerBasis basis = stabilizer_basis(m);
  CHECK(gram_deviation(basis) < 1e-10);
  CHECK(verify_box_evolution(basis, 0, 0) < 1e-9);
}

TEST_CASE("stabilizer basis: Bell box over GF(3), exhaustive evolution") {
  const Field& f3 = construct_field(3, 1);
  const StabilizerBasis basis = stabilizer_basis(bell_box(f3));
  CHECK(basis.dim() == 9);
  CHECK(gram_deviation(basis) < 1e-9);
  CHECK(verify_box_evolution(basis, 0, 0) < 1e-9);
}

TEST_CASE("superdense link at the dense level: one qudit carries two dits") {
  // Encode (x, z) on the first subsystem of a Bell pair; measuring in the box
  // basis must land on label (x, z) with probability 1.
  const Field& f3 = construct_field(3, 1);
  const StabilizerBasis basis = stabilizer_basis(bell_box(f3));
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t z = 0; z < 3; ++z) {
      const Eigen::VectorXcd sent = weyl_apply({x, 0}, {z, 0}, f3, basis.states.col(0));
      FqVector label(2);
      label(0) = Fq(f3, x);
      label(1) = Fq(f3, z);
      const double p = std::norm(basis.states.col(basis.label_index(label)).dot(sent));
      CHECK(p > 1.0 - 1e-10);
    }
}

TEST_CASE("twirl") {
  const Field& f3 = construct_field(3, 1);

  SUBCASE("maximally entangled pair becomes I/9") {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(9);
    for (int i = 0; i < 3; ++i) phi(i * 3 + i) = 1.0 / std::sqrt(3.0);
    CHECK(verify_twirl(phi * phi.adjoint(), f3) < 1e-10);
  }
  SUBCASE("product state keeps its A marginal") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
    psi(0 * 3 + 0) = std::sqrt(0.5);
    psi(2 * 3 + 0) = std::sqrt(0.5);  // (|0> + |2>)/sqrt2 on A, |0> on B
    CHECK(verify_twirl(psi * psi.adjoint(), f3) < 1e-10);
  }
  SUBCASE("already maximally mixed on B is a fixed point") {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(9, 9);
    for (int i = 0; i < 3; ++i) rho(i, i) = 1.0 / 9.0;          // |0><0| on A part...
    for (int i = 0; i < 9; ++i) rho(i, i) = 1.0 / 9.0;          // fully mixed joint
    CHECK(verify_twirl(rho, f3) < 1e-12);
  }
}

TEST_CASE("erasure recovery with maximally mixed ancillas, tiny q=3 scheme") {
  const QemacInstance inst = build_symmetric_instance(3, 3, 2, 1);
  const SchemeDims dims = plan_dimensions(inst, {0, 1, 1, 1}, std::nullopt, std::uint32_t{1});
  const AmeScheme sc = synthesize_ame(inst, dims, 0);
  REQUIRE(verify_scheme(Scheme{sc}, VerifyPolicy::exhaustive()).pass());
  const auto rec = verify_erasure_recovery(sc, 27, 1);
  CHECK(rec.min_success >= 1.0 - 1e-9);
  CHECK(rec.cases == 81);  // 3 patterns x 27 exhaustive data draws
}

TEST_CASE("no-erasure pattern recovers trivially") {
  const QemacInstance inst = build_symmetric_instance(3, 1, 1, 0);
  const SchemeDims dims = plan_dimensions(inst, {1, 1}, std::nullopt, std::uint32_t{1});
  const AmeScheme sc = synthesize_ame(inst, dims, 2);
  const auto rec = verify_erasure_recovery(sc, 9, 1);
  CHECK(rec.min_success >= 1.0 - 1e-12);
}

TEST_CASE("extension field GF(9): trace phases and box evolution") {
  const Field& f9 = construct_field(3, 2);

  // Z(z) diagonal phases use the field trace into GF(3).
  const Eigen::MatrixXcd z1 = weyl({0}, {1}, f9);
  for (std::uint32_t b = 0; b < 9; ++b) {
    const double ang = 2.0 * 3.14159265358979323846 *
                       static_cast<double>(f9.trace(f9.mul(b, 1))) / 3.0;
    CHECK(std::abs(z1(b, b) - std::complex<double>(std::cos(ang), std::sin(ang))) < 1e-12);
  }

  const StabilizerBasis basis = stabilizer_basis(bell_box(f9));
  CHECK(basis.dim() == 81);
  CHECK(gram_deviation(basis) < 1e-9);
  CHECK(verify_box_evolution(basis, 500, 3) < 1e-9);

  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(81);
  for (int i = 0; i < 9; ++i) phi(i * 9 + i) = 1.0 / 3.0;
  CHECK(verify_twirl(phi * phi.adjoint(), f9) < 1e-10);
}

TEST_CASE("dense oracle guards") {
  const Field& f2 = construct_field(2, 1);
  TransferMatrix m{hcat(fq_identity(f2, 2), fq_zeros(f2, 2, 2))};
  CHECK_THROWS_AS((void)stabilizer_basis(m), Error);  // even characteristic

  const Field& f5 = construct_field(5, 1);
  TransferMatrix big{hcat(fq_identity(f5, 6), fq_zeros(f5, 6, 6))};
  CHECK_THROWS_AS((void)stabilizer_basis(big), Error);  // 5^6 > 4096
}
