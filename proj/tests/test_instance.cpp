#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qemac/instance.hpp"

using namespace qemac;

TEST_CASE("prime_power") {
  std::uint32_t p = 0, r = 0;
  CHECK(prime_power(5, &p, &r));
  CHECK(p == 5);
  CHECK(r == 1);
  CHECK(prime_power(8, &p, &r));
  CHECK(p == 2);
  CHECK(r == 3);
  CHECK(prime_power(25, &p, &r));
  CHECK(p == 5);
  CHECK(r == 2);
  CHECK(!prime_power(6));
  CHECK(!prime_power(12));
  CHECK(!prime_power(1));
}

TEST_CASE("symmetric (5,4,2,1): replica sets in lexicographic order") {
  const QemacInstance inst = build_symmetric_instance(5, 4, 2, 1);
  CHECK(inst.stream_count() == 6);
  CHECK(inst.pattern_count() == 4);
  const std::vector<std::vector<int>> expect = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  CHECK(inst.streams == expect);
  CHECK(inst.erasures == std::vector<std::vector<int>>{{1}, {2}, {3}, {4}});
}

TEST_CASE("symmetric (2,3,2,1)") {
  const QemacInstance inst = build_symmetric_instance(2, 3, 2, 1);
  CHECK(inst.stream_count() == 3);
  CHECK(inst.pattern_count() == 3);
  CHECK(inst.streams == std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("no-erasure reduction: beta = 0 gives one empty pattern") {
  const QemacInstance inst = build_symmetric_instance(3, 4, 4, 0);
  CHECK(inst.stream_count() == 1);
  CHECK(inst.pattern_count() == 1);
  CHECK(inst.erasures == std::vector<std::vector<int>>{{}});
}

TEST_CASE("validation failures") {
  CHECK_THROWS_AS((void)build_symmetric_instance(5, 2, 3, 1), Error);   // alpha > S
  CHECK_THROWS_AS((void)build_symmetric_instance(5, 3, 2, 2), Error);   // alpha == beta
  CHECK_THROWS_AS((void)build_symmetric_instance(6, 3, 2, 1), Error);   // d not prime power

  QemacInstance inst = build_symmetric_instance(5, 3, 2, 1);
  inst.streams[0] = {0, 2};  // index below 1
  CHECK_THROWS_AS(inst.validate(), Error);
  inst = build_symmetric_instance(5, 3, 2, 1);
  inst.streams[0] = {2, 2};  // not strictly increasing
  CHECK_THROWS_AS(inst.validate(), Error);
  inst = build_symmetric_instance(5, 3, 2, 1);
  inst.erasures[0] = {4};  // beyond S
  CHECK_THROWS_AS(inst.validate(), Error);
}
