#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qemac/fq.hpp"
#include "qemac/util.hpp"

using namespace qemac;

TEST_CASE("prime field GF(5)") {
  const Field& f = construct_field(5, 1);
  CHECK(f.q() == 5);
  CHECK(f.modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(f.add(3, 4) == 2);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.inv(2) == 3);
  // Trace is the identity on a prime field.
  for (std::uint32_t x = 0; x < 5; ++x) CHECK(f.trace(x) == x);
}

TEST_CASE("GF(4) has modulus x^2+x+1") {
  const Field& f = construct_field(2, 2);
  CHECK(f.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(f.trace(0) == 0);
  CHECK(f.trace(1) == 0);  // 1 + 1^2 = 0 in GF(2)
  // x (code 2) has trace x + x^2 = x + (x+1) = 1.
  CHECK(f.trace(2) == 1);
  CHECK(field_trace(Fq(f, 2)) == 1);
}

TEST_CASE("GF(25): every nonzero element invertible") {
  const Field& f = construct_field(5, 2);
  CHECK(f.q() == 25);
  for (std::uint32_t a = 1; a < 25; ++a) {
    const std::uint32_t b = f.inv(a);
    CHECK(f.mul(a, b) == 1);
  }
  CHECK_THROWS_AS((void)f.inv(0), Error);
}

TEST_CASE("field axioms, exhaustive for q <= 25") {
  for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 2},
                      {3, 1},
                      {2, 3},
                      {3, 2},
                      {5, 2}}) {
    const Field& f = construct_field(p, r);
    const auto q = static_cast<std::uint32_t>(f.q());
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint32_t c = 0; c < q; c += 3) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
  }
}

TEST_CASE("field axioms, randomized on a larger field") {
  const Field& f = construct_field(5, 3);  // GF(125)
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<std::uint32_t>(rng.below(f.q()));
    const auto b = static_cast<std::uint32_t>(rng.below(f.q()));
    const auto c = static_cast<std::uint32_t>(rng.below(f.q()));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("trace is additive and Frobenius-invariant (q <= 25)") {
  for (auto [p, r] :
       {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {2, 4}, {3, 2}, {5, 2}}) {
    const Field& f = construct_field(p, r);
    const auto q = static_cast<std::uint32_t>(f.q());
    for (std::uint32_t x = 0; x < q; ++x) {
      CHECK(f.trace(f.pow(x, p)) == f.trace(x));
      for (std::uint32_t y = 0; y < q; ++y)
        CHECK(f.trace(f.add(x, y)) == (f.trace(x) + f.trace(y)) % p);
    }
  }
}

TEST_CASE("deterministic moduli match hand-computed first irreducibles") {
  // Order: low coefficients (c_0, ..., c_{r-1}) read as base-p digits.
  CHECK(construct_field(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});   // x^3+x+1
  CHECK(construct_field(2, 4).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});  // x^4+x+1
  CHECK(construct_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});      // x^2+1
  CHECK(construct_field(3, 3).modulus() == std::vector<std::uint32_t>{1, 2, 0, 1});   // x^3+2x+1
  CHECK(construct_field(5, 2).modulus() == std::vector<std::uint32_t>{2, 0, 1});      // x^2+2
}

TEST_CASE("construct_field rejects bad parameters") {
  CHECK_THROWS_AS((void)construct_field(6, 1), Error);
  CHECK_THROWS_AS((void)construct_field(1, 1), Error);
  CHECK_THROWS_AS((void)construct_field(2, 40), Error);
  try {
    (void)construct_field(9, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_prime_characteristic);
  }
}

TEST_CASE("Fq scalars behave inside Eigen matrices") {
  const Field& f = construct_field(5, 1);
  const FqMatrix a = fq_from_ints(f, 2, 2, {1, 2, 3, 4});
  const FqMatrix b = fq_from_ints(f, 2, 2, {0, 1, 1, 0});
  const FqMatrix prod = a * b;
  CHECK(fq_equal(prod, fq_from_ints(f, 2, 2, {2, 1, 4, 3})));
  const FqMatrix sum = a + b;
  CHECK(fq_equal(sum, fq_from_ints(f, 2, 2, {1, 3, 4, 4})));
  CHECK(fq_equal(a.transpose(), fq_from_ints(f, 2, 2, {1, 3, 2, 4})));
  CHECK(fq_equal(FqMatrix(-b), fq_from_ints(f, 2, 2, {0, 4, 4, 0})));
  // Products against a zeros matrix stay well-formed.
  const FqMatrix z = fq_zeros(f, 2, 2);
  CHECK(fq_is_zero(a * z));
  CHECK(fq_equal(hcat(a, b).block(0, 2, 2, 2), b));
}

TEST_CASE("unbound literals bind on contact") {
  const Field& f = construct_field(7, 1);
  Fq x(f, 3);
  Fq acc;  // unbound zero, as Eigen produces internally
  acc += x * Fq(f, 4);
  CHECK(acc == Fq(f, 5));
  CHECK(Fq(0) == Fq(f, 0));
  CHECK(Fq(1) * x == x);
}
