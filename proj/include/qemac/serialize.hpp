#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "qemac/capacity.hpp"
#include "qemac/scheme.hpp"

namespace qemac {

using Json = nlohmann::ordered_json;

Json field_to_json(const Field& f);
const Field& field_from_json(const Json& j);

Json matrix_to_json(const FqMatrix& m);
FqMatrix matrix_from_json(const Json& j, const Field& f);

Json instance_to_json(const QemacInstance& inst);
QemacInstance instance_from_json(const Json& j);

/// Hash embedded in every output artifact: canonical instance JSON plus the
/// scheme kind, so re-runs with the same spec and seed are byte-identical.
std::string spec_hash(const QemacInstance& inst, const std::string& kind);

/// Full scheme document (format, tool version, spec hash, seed, every
/// matrix as integer code arrays, witness ranks). Parsing the dump
/// reproduces the dump byte-for-byte.
Json scheme_to_json(const Scheme& sc);
Scheme scheme_from_json(const Json& j);

/// fnv1a over the serialized document.
std::string json_id(const Json& j);

/// Instance spec file: either {"symmetric": {d,S,alpha,beta,delta0?}} fields
/// inline or the general stream/erasure form. See README for the schema.
struct ParsedSpec {
  QemacInstance inst;
  std::optional<Rat> delta0;
  std::optional<std::vector<Eigen::Index>> allocation;  // N_0..N_S
};

ParsedSpec parse_instance_spec(const Json& j);

void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace qemac
