#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qemac/serialize.hpp"
#include "qemac/sim.hpp"

using namespace qemac;

namespace {

Scheme golden_scheme() {
  const QemacInstance inst = build_symmetric_instance(5, 4, 2, 1);
  const SchemeDims dims = plan_dimensions(inst, {0, 1, 1, 1, 1}, std::nullopt, std::uint32_t{1});
  return synthesize_ame(inst, dims, 0, golden_f5_transfer(), golden_f5_protection());
}

}  // namespace

TEST_CASE("instance round trip") {
  const QemacInstance inst = build_symmetric_instance(5, 4, 2, 1);
  const Json j = instance_to_json(inst);
  const QemacInstance back = instance_from_json(j);
  CHECK(instance_to_json(back).dump() == j.dump());
  CHECK(back.streams == inst.streams);
  CHECK(back.symmetric == inst.symmetric);
}

TEST_CASE("scheme files round trip byte-exactly") {
  SUBCASE("ame") {
    const Json j = scheme_to_json(golden_scheme());
    const std::string text = j.dump(2);
    const Scheme back = scheme_from_json(Json::parse(text));
    CHECK(scheme_to_json(back).dump(2) == text);
    // The reloaded scheme still verifies.
    CHECK(verify_scheme(back, VerifyPolicy::random(50, 3)).pass());
  }
  SUBCASE("tqc") {
    const QemacInstance inst = build_symmetric_instance(5, 3, 2, 1);
    const Json j = scheme_to_json(synthesize_tqc(inst, {0, 1, 1, 1}, 9));
    const Scheme back = scheme_from_json(Json::parse(j.dump()));
    CHECK(scheme_to_json(back).dump() == j.dump());
    CHECK(verify_scheme(back, VerifyPolicy{}).pass());
  }
  SUBCASE("cutset") {
    const Json j = scheme_to_json(build_cutset_scheme(2, 3));
    const Scheme back = scheme_from_json(Json::parse(j.dump()));
    CHECK(scheme_to_json(back).dump() == j.dump());
    CHECK(verify_scheme(back, VerifyPolicy::random(50, 1)).pass());
  }
}

TEST_CASE("spec hash: stable, mode-sensitive") {
  const QemacInstance a = build_symmetric_instance(5, 4, 2, 1);
  const QemacInstance b = build_symmetric_instance(5, 4, 2, 1);
  CHECK(spec_hash(a, "ame") == spec_hash(b, "ame"));
  CHECK(spec_hash(a, "ame") != spec_hash(a, "tqc"));
  CHECK(spec_hash(a, "ame").rfind("fnv1a:", 0) == 0);
}

TEST_CASE("field modulus mismatch is rejected") {
  Json j = field_to_json(construct_field(5, 2));
  j["modulus"] = std::vector<std::uint32_t>{1, 0, 1};  // not the deterministic modulus
  CHECK_THROWS_AS((void)field_from_json(j), Error);
}

TEST_CASE("parse_instance_spec") {
  SUBCASE("symmetric form") {
    const Json j = Json::parse(R"({"symmetric": {"d": 5, "S": 4, "alpha": 2, "beta": 1,
                                   "delta0": "1/2"}})");
    const ParsedSpec spec = parse_instance_spec(j);
    CHECK(spec.inst.stream_count() == 6);
    CHECK(spec.delta0 == Rat(1, 2));
  }
  SUBCASE("general form") {
    const Json j = Json::parse(R"({"d": 5, "servers": 3, "helper": false,
      "streams": [{"id": "A", "replicas": [1, 2]}, {"id": "B", "replicas": [2, 3]}],
      "erasures": [[1], [3]],
      "allocation": [0, 1, 1, 1]})");
    const ParsedSpec spec = parse_instance_spec(j);
    CHECK(spec.inst.stream_count() == 2);
    CHECK(spec.inst.streams == std::vector<std::vector<int>>{{1, 2}, {2, 3}});
    CHECK(!spec.inst.helper);
    REQUIRE(spec.allocation.has_value());
    CHECK(spec.allocation->size() == 4);
  }
  SUBCASE("mixed forms are rejected") {
    const Json j = Json::parse(R"({"symmetric": {"d": 5, "S": 3, "alpha": 2, "beta": 1},
                                   "streams": []})");
    CHECK_THROWS_AS((void)parse_instance_spec(j), Error);
  }
}
