#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qemac/nsum_box.hpp"
#include "qemac/util.hpp"

using namespace qemac;

namespace {

FqMatrix example_m() {
  const Field& f = construct_field(5, 1);
  return fq_from_ints(f, 4, 8,
                      {1, 1, 1, 1, 0, 0, 0, 0,  //
                       1, 2, 3, 4, 0, 0, 0, 0,  //
                       0, 0, 0, 0, 1, 2, 3, 4,  //
                       0, 0, 0, 0, 1, 4, 4, 1});
}

FqMatrix bell_m(const Field& f) {
  return fq_from_ints(f, 2, 4, {1, 1, 0, 0, 0, 0, 1, -1});
}

}  // namespace

TEST_CASE("check_sso") {
  const Field& f5 = construct_field(5, 1);
  CHECK(check_sso(example_m()));

  // [I | 0] is SSO.
  CHECK(check_sso(hcat(fq_identity(f5, 3), fq_zeros(f5, 3, 3))));

  CHECK(check_sso(bell_m(f5)));

  // Full-rank but not self-orthogonal.
  FqMatrix bad = hcat(fq_identity(f5, 2), fq_identity(f5, 2));
  bad(0, 3) = Fq(f5, 1);
  CHECK(!check_sso(bad));

  // Rank-deficient.
  FqMatrix flat = fq_zeros(f5, 2, 4);
  flat(0, 0) = Fq(f5, 1);
  CHECK(!check_sso(flat));

  CHECK_THROWS_AS((void)check_sso(fq_zeros(f5, 2, 3)), Error);

  // M J M^T = 0 is an equivalent reading of the SSO product condition.
  const FqMatrix m = example_m();
  CHECK(fq_is_zero(m * symplectic_j(f5, 4) * m.transpose()));
}

TEST_CASE("symplectic completion identities") {
  const Field& f5 = construct_field(5, 1);

  SUBCASE("from [I | 0]") {
    TransferMatrix m{hcat(fq_identity(f5, 3), fq_zeros(f5, 3, 3))};
    const SymplecticData sd = symplectic_from_transfer(m);
    CHECK(fq_equal(sd.f.transpose() * sd.j * sd.f, sd.j));
    CHECK(fq_equal(sd.recovered_transfer(), m.m));
  }

  SUBCASE("N=1 over GF(5)") {
    TransferMatrix m{fq_from_ints(f5, 1, 2, {1, 0})};
    const SymplecticData sd = symplectic_from_transfer(m);
    CHECK(fq_equal(sd.f.transpose() * sd.j * sd.f, sd.j));
    CHECK(fq_equal(sd.recovered_transfer(), m.m));
  }

  SUBCASE("from the worked F_5 example") {
    TransferMatrix m{example_m()};
    const SymplecticData sd = symplectic_from_transfer(m);
    CHECK(fq_equal(sd.f.transpose() * sd.j * sd.f, sd.j));
    CHECK(fq_equal(sd.f_inv * sd.f, fq_identity(f5, 8)));
    CHECK(fq_equal(sd.recovered_transfer(), m.m));
  }

  SUBCASE("rejects non-SSO input") {
    FqMatrix g = fq_zeros(f5, 4, 2);
    g(0, 0) = Fq(f5, 1);
    g(2, 0) = Fq(f5, 1);  // g_1^T J g_1 != 0 would need a pair; use two columns
    g(1, 1) = Fq(f5, 1);
    g(3, 0) = Fq(f5, 1);
    if (fq_is_zero(g.transpose() * symplectic_j(f5, 2) * g)) {
      g(3, 1) = Fq(f5, 1);  // force a nonzero pairing
    }
    CHECK_THROWS_AS((void)symplectic_complete(g), Error);
  }
}

TEST_CASE("symplectic completion in characteristic 2") {
  const Field& f8 = construct_field(2, 3);
  TransferMatrix m{bell_m(f8)};
  CHECK(check_sso(m.m));
  const SymplecticData sd = symplectic_from_transfer(m);
  CHECK(fq_equal(sd.f.transpose() * sd.j * sd.f, sd.j));
  CHECK(fq_equal(sd.recovered_transfer(), m.m));
}

TEST_CASE("sample_sso_transfer honors rank specs") {
  const Field& f5 = construct_field(5, 1);

  SUBCASE("no specs") {
    const TransferMatrix m = sample_sso_transfer(3, f5, {}, 42);
    CHECK(check_sso(m.m));
  }

  SUBCASE("worked-example spec family") {
    // Streams on server pairs need rank 4; single-server pairs rank 2.
    std::vector<RankSpec> specs;
    for (Eigen::Index a = 0; a < 4; ++a) {
      specs.push_back({{a}, 2});
      for (Eigen::Index b = a + 1; b < 4; ++b) specs.push_back({{a, b}, 4});
    }
    const TransferMatrix m = sample_sso_transfer(4, f5, specs, 1);
    CHECK(check_sso(m.m));
    for (const auto& s : specs) CHECK(rank_of(m.subsystem_columns(s.subsystems)) == s.required_rank);
  }

  SUBCASE("symmetric (3,2,1) specs over GF(25)") {
    const Field& f25 = construct_field(5, 2);
    std::vector<RankSpec> specs = {{{0, 1}, 3}, {{0, 2}, 3}, {{1, 2}, 3}};
    const TransferMatrix m = sample_sso_transfer(3, f25, specs, 7);
    CHECK(check_sso(m.m));
    for (const auto& s : specs) CHECK(rank_of(m.subsystem_columns(s.subsystems)) == s.required_rank);
  }

  SUBCASE("impossible spec exhausts retries") {
    CHECK_THROWS_AS((void)sample_sso_transfer(2, f5, {{{0}, 3}}, 0, 4), Error);
  }
}

TEST_CASE("box_apply semantics") {
  const Field& f5 = construct_field(5, 1);
  TransferMatrix m{example_m()};
  const FqVector zero = fq_zeros(f5, 4, 1);

  CHECK(fq_equal(box_apply(zero, {}, m), zero));

  // One X on subsystem 0 lands on the first column of M.
  const FqVector shifted = box_apply(zero, {{0, Fq(f5, 1), Fq(f5, 0)}}, m);
  CHECK(fq_equal(shifted, m.m.col(0)));

  CHECK_THROWS_AS((void)box_apply(zero, {{9, Fq(f5, 1), Fq(f5, 0)}}, m), Error);
}

TEST_CASE("box_apply is a homomorphism in the exponents") {
  const Field& f5 = construct_field(5, 1);

  // Exhaustive for the Bell box over F_5 (N=2): two sequential applications
  // equal the combined application.
  TransferMatrix bell{bell_m(f5)};
  for (std::uint32_t a0 = 0; a0 < 5; ++a0)
    for (std::uint32_t u = 0; u < 5; ++u)
      for (std::uint32_t v = 0; v < 5; ++v)
        for (std::uint32_t w = 0; w < 5; ++w) {
          FqVector label = fq_zeros(f5, 2, 1);
          label(0) = Fq(f5, a0);
          std::vector<BoxOp> first = {{0, Fq(f5, u), Fq(f5, v)}};
          std::vector<BoxOp> second = {{1, Fq(f5, w), Fq(f5, u)}};
          std::vector<BoxOp> both = {{0, Fq(f5, u), Fq(f5, v)}, {1, Fq(f5, w), Fq(f5, u)}};
          CHECK(fq_equal(box_apply(box_apply(label, first, bell), second, bell),
                         box_apply(label, both, bell)));
        }

  // Randomized on the worked example.
  TransferMatrix m{example_m()};
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    FqVector label = fq_random(f5, 4, 1, rng);
    std::vector<BoxOp> u, v, uv;
    for (Eigen::Index i = 0; i < 4; ++i) {
      BoxOp a{i, Fq(f5, static_cast<std::uint32_t>(rng.below(5))),
              Fq(f5, static_cast<std::uint32_t>(rng.below(5)))};
      BoxOp b{i, Fq(f5, static_cast<std::uint32_t>(rng.below(5))),
              Fq(f5, static_cast<std::uint32_t>(rng.below(5)))};
      u.push_back(a);
      v.push_back(b);
      uv.push_back({i, a.x + b.x, a.z + b.z});
    }
    CHECK(fq_equal(box_apply(box_apply(label, u, m), v, m), box_apply(label, uv, m)));
  }
}
