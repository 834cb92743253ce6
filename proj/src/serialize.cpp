#include "qemac/serialize.hpp"

#include <cstdio>
#include <fstream>

#include "qemac/util.hpp"

namespace qemac {

namespace {

std::vector<Eigen::Index> ns_from_json(const Json& j) {
  std::vector<Eigen::Index> ns;
  for (const auto& v : j) ns.push_back(v.get<Eigen::Index>());
  return ns;
}

Json matrices_to_json(const std::vector<FqMatrix>& ms) {
  Json arr = Json::array();
  for (const auto& m : ms) arr.push_back(matrix_to_json(m));
  return arr;
}

std::vector<FqMatrix> matrices_from_json(const Json& j, const Field& f) {
  std::vector<FqMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m, f));
  return out;
}

}  // namespace

Json field_to_json(const Field& f) {
  return Json{{"p", f.p()}, {"r", f.r()}, {"modulus", f.modulus()}};
}

const Field& field_from_json(const Json& j) {
  const Field& f = Field::get(j.at("p").get<std::uint32_t>(), j.at("r").get<std::uint32_t>());
  require(f.modulus() == j.at("modulus").get<std::vector<std::uint32_t>>(), errc::io,
          "field modulus in file does not match the deterministic modulus");
  return f;
}

Json matrix_to_json(const FqMatrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"codes", fq_codes(m)}};
}

FqMatrix matrix_from_json(const Json& j, const Field& f) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  return fq_from_codes(f, rows, cols, j.at("codes").get<std::vector<std::uint32_t>>());
}

Json instance_to_json(const QemacInstance& inst) {
  Json j{{"d", inst.d},
         {"servers", inst.servers},
         {"helper", inst.helper},
         {"streams", inst.streams},
         {"erasures", inst.erasures}};
  if (inst.symmetric)
    j["symmetric"] = Json{{"alpha", inst.symmetric->first}, {"beta", inst.symmetric->second}};
  else
    j["symmetric"] = nullptr;
  return j;
}

QemacInstance instance_from_json(const Json& j) {
  QemacInstance inst;
  inst.d = j.at("d").get<std::uint32_t>();
  inst.servers = j.at("servers").get<int>();
  inst.helper = j.at("helper").get<bool>();
  inst.streams = j.at("streams").get<std::vector<std::vector<int>>>();
  inst.erasures = j.at("erasures").get<std::vector<std::vector<int>>>();
  if (j.contains("symmetric") && !j.at("symmetric").is_null())
    inst.symmetric = std::make_pair(j.at("symmetric").at("alpha").get<int>(),
                                    j.at("symmetric").at("beta").get<int>());
  inst.validate();
  return inst;
}

std::string spec_hash(const QemacInstance& inst, const std::string& kind) {
  return "fnv1a:" + hex_u64(fnv1a64(instance_to_json(inst).dump() + "|" + kind));
}

std::string json_id(const Json& j) { return "fnv1a:" + hex_u64(fnv1a64(j.dump())); }

Json scheme_to_json(const Scheme& sc) {
  Json j;
  j["format"] = "qemac-scheme/1";
  j["tool_version"] = kToolVersion;
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) {
    j["spec_hash"] = spec_hash(ame->inst, "ame");
    j["seed"] = ame->seed;
    j["type"] = "ame";
    j["instance"] = instance_to_json(ame->inst);
    j["field"] = field_to_json(*ame->dims.field);
    j["lambda"] = ame->dims.lambda;
    j["l"] = ame->dims.l;
    j["ns"] = ame->dims.ns;
    j["m"] = matrix_to_json(ame->m.m);
    j["u"] = matrix_to_json(ame->u);
    j["u_k"] = matrices_to_json(ame->u_k);
    j["vprime_k"] = matrices_to_json(ame->vprime_k);
    j["v_k"] = matrices_to_json(ame->v_k);
    j["r_k"] = matrices_to_json(ame->r_k);
    j["r_k_inv"] = matrices_to_json(ame->r_k_inv);
    j["v_dec"] = matrix_to_json(ame->v_dec);
    j["e_t"] = matrices_to_json(ame->e_t);
    j["left_inv_t"] = matrices_to_json(ame->left_inv_t);
    Json ranks;
    ranks["m"] = rank_of(ame->m.m);
    Json mk = Json::array(), uet = Json::array();
    for (const auto& m : ame->m_k) mk.push_back(rank_of(m));
    for (std::size_t t = 0; t < ame->e_t.size(); ++t)
      uet.push_back(rank_of(hcat(ame->u, ame->e_t[t])));
    ranks["m_k"] = mk;
    ranks["u_e_t"] = uet;
    j["witness_ranks"] = ranks;
  } else if (const auto* tqc = std::get_if<TqcScheme>(&sc)) {
    j["spec_hash"] = spec_hash(tqc->inst, "tqc");
    j["seed"] = tqc->seed;
    j["type"] = "tqc";
    j["instance"] = instance_to_json(tqc->inst);
    j["field"] = field_to_json(*tqc->field);
    j["lambda"] = tqc->lambda;
    j["l"] = tqc->l;
    j["ns"] = tqc->ns;
    Json g = Json::array();
    for (const auto& per_stream : tqc->g) g.push_back(matrices_to_json(per_stream));
    j["g"] = g;
    j["d_t"] = matrices_to_json(tqc->d_t);
    Json ranks;
    Json dt = Json::array();
    for (const auto& d : tqc->d_t) dt.push_back(rank_of(d));
    ranks["d_t"] = dt;
    j["witness_ranks"] = ranks;
  } else {
    const auto& cut = std::get<CutSetScheme>(sc);
    QemacInstance reduced;  // the 3-server single-stream communication instance
    reduced.d = cut.d;
    reduced.servers = 3;
    reduced.helper = false;
    reduced.streams = {{1, 2}};
    reduced.erasures = {{1}, {2}, {3}};
    j["spec_hash"] = spec_hash(reduced, "cutset");
    j["seed"] = 0;
    j["type"] = "cutset";
    j["d"] = cut.d;
    j["z"] = cut.z;
    j["field"] = field_to_json(*cut.field);
    j["gen"] = matrix_to_json(cut.gen);
    j["pair_box"] = matrix_to_json(cut.pair_box.m);
    j["option_symbols"] = cut.option_symbols;
    j["option_dec"] = matrices_to_json(cut.option_dec);
    Json ranks;
    Json opts = Json::array();
    for (const auto& d : cut.option_dec) opts.push_back(rank_of(d));
    ranks["option_dec"] = opts;
    j["witness_ranks"] = ranks;
  }
  return j;
}

Scheme scheme_from_json(const Json& j) {
  require(j.at("format").get<std::string>() == "qemac-scheme/1", errc::io,
          "unknown scheme file format");
  const std::string type = j.at("type").get<std::string>();
  if (type == "ame") {
    AmeScheme sc;
    sc.inst = instance_from_json(j.at("instance"));
    sc.seed = j.at("seed").get<std::uint64_t>();
    const Field& f = field_from_json(j.at("field"));
    sc.dims.field = &f;
    sc.dims.lambda = j.at("lambda").get<std::uint32_t>();
    sc.dims.l = j.at("l").get<Eigen::Index>();
    sc.dims.ns = ns_from_json(j.at("ns"));
    sc.dims.n_total = 0;
    sc.dims.subsystems.resize(sc.dims.ns.size());
    for (std::size_t s = 0; s < sc.dims.ns.size(); ++s)
      for (Eigen::Index i = 0; i < sc.dims.ns[s]; ++i)
        sc.dims.subsystems[s].push_back(sc.dims.n_total++);
    sc.m = TransferMatrix{matrix_from_json(j.at("m"), f)};
    sc.u = matrix_from_json(j.at("u"), f);
    sc.u_k = matrices_from_json(j.at("u_k"), f);
    sc.vprime_k = matrices_from_json(j.at("vprime_k"), f);
    sc.v_k = matrices_from_json(j.at("v_k"), f);
    sc.r_k = matrices_from_json(j.at("r_k"), f);
    sc.r_k_inv = matrices_from_json(j.at("r_k_inv"), f);
    sc.v_dec = matrix_from_json(j.at("v_dec"), f);
    sc.e_t = matrices_from_json(j.at("e_t"), f);
    sc.left_inv_t = matrices_from_json(j.at("left_inv_t"), f);
    for (int k = 0; k < sc.inst.stream_count(); ++k)
      sc.m_k.push_back(sc.m.subsystem_columns(sc.stream_subsystems(k)));
    return sc;
  }
  if (type == "tqc") {
    TqcScheme sc;
    sc.inst = instance_from_json(j.at("instance"));
    sc.seed = j.at("seed").get<std::uint64_t>();
    const Field& f = field_from_json(j.at("field"));
    sc.field = &f;
    sc.lambda = j.at("lambda").get<std::uint32_t>();
    sc.l = j.at("l").get<Eigen::Index>();
    sc.ns = ns_from_json(j.at("ns"));
    for (const auto& per_stream : j.at("g")) sc.g.push_back(matrices_from_json(per_stream, f));
    sc.d_t = matrices_from_json(j.at("d_t"), f);
    return sc;
  }
  if (type == "cutset") {
    CutSetScheme sc;
    sc.d = j.at("d").get<std::uint32_t>();
    sc.z = j.at("z").get<std::uint32_t>();
    const Field& f = field_from_json(j.at("field"));
    sc.field = &f;
    sc.gen = matrix_from_json(j.at("gen"), f);
    sc.pair_box = TransferMatrix{matrix_from_json(j.at("pair_box"), f)};
    sc.option_symbols = j.at("option_symbols").get<std::vector<std::vector<int>>>();
    sc.option_dec = matrices_from_json(j.at("option_dec"), f);
    return sc;
  }
  fail(errc::io, "unknown scheme type: " + type);
}

ParsedSpec parse_instance_spec(const Json& j) {
  ParsedSpec spec;
  const bool has_sym = j.contains("symmetric");
  const bool has_general = j.contains("streams") || j.contains("erasures");
  require(has_sym != has_general, errc::invalid_argument,
          "spec must be either symmetric or general, not both");
  if (has_sym) {
    const Json& s = j.at("symmetric");
    spec.inst = build_symmetric_instance(
        s.at("d").get<std::uint32_t>(), s.at("S").get<int>(), s.at("alpha").get<int>(),
        s.at("beta").get<int>());
    if (s.contains("delta0")) {
      const Json& d0 = s.at("delta0");
      spec.delta0 = d0.is_string() ? Rat::parse(d0.get<std::string>())
                                   : Rat(d0.get<long long>(), 1);
    }
  } else {
    QemacInstance inst;
    inst.d = j.at("d").get<std::uint32_t>();
    inst.servers = j.at("servers").get<int>();
    inst.helper = j.value("helper", true);
    for (const auto& st : j.at("streams"))
      inst.streams.push_back(st.at("replicas").get<std::vector<int>>());
    inst.erasures = j.at("erasures").get<std::vector<std::vector<int>>>();
    if (inst.erasures.empty()) inst.erasures = {{}};
    inst.validate();
    spec.inst = inst;
  }
  if (j.contains("allocation")) {
    std::vector<Eigen::Index> alloc;
    for (const auto& v : j.at("allocation")) alloc.push_back(v.get<Eigen::Index>());
    spec.allocation = alloc;
  }
  return spec;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), errc::io, "cannot open " + tmp);
    out << content;
    require(out.good(), errc::io, "short write to " + tmp);
  }
  require(std::rename(tmp.c_str(), path.c_str()) == 0, errc::io, "cannot move scheme into place");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io, "cannot open " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

}  // namespace qemac
