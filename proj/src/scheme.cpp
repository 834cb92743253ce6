#include "qemac/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qemac/util.hpp"

namespace qemac {

namespace {

bool synthesize_tqc_at_field(const QemacInstance& inst,
                             const std::vector<Eigen::Index>& allocation, std::uint64_t seed,
                             int budget, TqcScheme& sc);

const Field& extension_field(std::uint32_t d, std::uint32_t lambda) {
  std::uint32_t p = 0, r = 0;
  require(prime_power(d, &p, &r), errc::infeasible_parameters, "d is not a prime power");
  return Field::get(p, r * lambda);
}

std::vector<Eigen::Index> union_subsystems(const SchemeDims& dims, const std::vector<int>& servers) {
  std::vector<Eigen::Index> out;
  for (int s : servers)
    for (Eigen::Index i : dims.subsystems[static_cast<std::size_t>(s)]) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Eigen::Index> AmeScheme::stream_subsystems(int k) const {
  return union_subsystems(dims, inst.streams[static_cast<std::size_t>(k)]);
}

std::vector<Eigen::Index> AmeScheme::pattern_subsystems(int t) const {
  return union_subsystems(dims, inst.erasures[static_cast<std::size_t>(t)]);
}

SchemeDims plan_dimensions(const QemacInstance& inst, const std::vector<Eigen::Index>& allocation,
                           std::optional<Eigen::Index> l_override,
                           std::optional<std::uint32_t> lambda_override) {
  inst.validate();
  require(allocation.size() == static_cast<std::size_t>(inst.servers) + 1, errc::length_mismatch,
          "allocation must list N_s for servers 0..S");
  for (Eigen::Index ns : allocation)
    require(ns >= 0, errc::invalid_argument, "allocation entries must be >= 0");

  SchemeDims dims;
  dims.ns = allocation;
  dims.n_total = std::accumulate(allocation.begin(), allocation.end(), Eigen::Index{0});
  require(dims.n_total >= 1, errc::infeasible, "empty allocation");
  dims.subsystems.resize(allocation.size());
  Eigen::Index next = 0;
  for (std::size_t s = 0; s < allocation.size(); ++s)
    for (Eigen::Index i = 0; i < allocation[s]; ++i) dims.subsystems[s].push_back(next++);

  auto doubled = [&](const std::vector<int>& servers) {
    Eigen::Index sum = 0;
    for (int s : servers) sum += 2 * allocation[static_cast<std::size_t>(s)];
    return sum;
  };
  Eigen::Index stream_cap = dims.n_total;
  for (const auto& w : inst.streams)
    stream_cap = std::min(stream_cap, std::min(dims.n_total, doubled(w)));
  Eigen::Index erased_max = 0;
  for (const auto& e : inst.erasures) erased_max = std::max(erased_max, doubled(e));

  const Eigen::Index l_max = stream_cap - erased_max;
  require(l_max >= 1, errc::infeasible,
          "no positive block length: min_k min{N, 2 sum N_s} - max_t 2 sum N_s = " +
              std::to_string(l_max));
  dims.l = l_override.value_or(l_max);
  require(dims.l >= 1 && dims.l <= l_max, errc::infeasible, "requested l outside (0, l_max]");

  if (lambda_override) {
    dims.lambda = *lambda_override;
    require(dims.lambda >= 1, errc::invalid_argument, "lambda must be >= 1");
  } else {
    // Smallest q = d^lambda clearing every randomized-existence bound:
    // q > max(T*N, K*l, N).
    const long double target = std::max<long double>(
        {static_cast<long double>(inst.pattern_count()) * dims.n_total,
         static_cast<long double>(inst.stream_count()) * dims.l,
         static_cast<long double>(dims.n_total)});
    std::uint32_t lambda = 1;
    long double q = inst.d;
    while (q <= target) {
      q *= inst.d;
      ++lambda;
    }
    dims.lambda = lambda;
  }
  dims.field = &extension_field(inst.d, dims.lambda);
  require(dims.field->q() >= static_cast<std::uint64_t>(dims.n_total), errc::infeasible,
          "q = d^lambda must be at least N");
  return dims;
}

AmeScheme synthesize_ame(const QemacInstance& inst, const SchemeDims& dims, std::uint64_t seed,
                         std::optional<FqMatrix> witness_m, std::optional<FqMatrix> witness_u,
                         int budget) {
  AmeScheme sc;
  sc.inst = inst;
  sc.dims = dims;
  sc.seed = seed;
  const Field& f = *dims.field;
  const Eigen::Index n = dims.n_total;
  const int K = inst.stream_count(), T = inst.pattern_count();
  Rng rng(seed);

  // Stage 1: transfer matrix with per-stream rank guarantees.
  std::vector<RankSpec> specs;
  for (int k = 0; k < K; ++k) {
    const auto subs = sc.stream_subsystems(k);
    specs.push_back(
        {subs, std::min<Eigen::Index>(n, 2 * static_cast<Eigen::Index>(subs.size()))});
  }
  if (witness_m) {
    require(witness_m->rows() == n && witness_m->cols() == 2 * n, errc::shape_mismatch,
            "witness transfer matrix has wrong shape");
    require(check_sso(*witness_m), errc::not_sso, "witness transfer matrix is not SSO");
    sc.m = TransferMatrix{*witness_m};
    for (const auto& spec : specs)
      require(rank_of(sc.m.subsystem_columns(spec.subsystems)) == spec.required_rank,
              errc::infeasible, "witness transfer matrix misses a stream rank requirement");
  } else {
    sc.m = sample_sso_transfer(n, f, specs, rng.next(), budget);
  }

  // Erased-column submatrices, fixed before protection sampling.
  Eigen::Index erased_max = 0;
  for (int t = 0; t < T; ++t) {
    sc.e_t.push_back(sc.m.subsystem_columns(sc.pattern_subsystems(t)));
    erased_max = std::max(erased_max, sc.e_t.back().cols());
  }
  const Eigen::Index u_cols = n - erased_max;
  require(u_cols >= dims.l, errc::infeasible, "protection width below block length");

  // Stage 2: U with every [U, E_t] of full column rank.
  auto u_ok = [&](const FqMatrix& u) {
    for (int t = 0; t < T; ++t)
      if (rank_of(hcat(u, sc.e_t[static_cast<std::size_t>(t)])) !=
          u_cols + sc.e_t[static_cast<std::size_t>(t)].cols())
        return false;
    return true;
  };
  if (witness_u) {
    require(witness_u->rows() == n && witness_u->cols() == u_cols, errc::shape_mismatch,
            "witness protection matrix has wrong shape");
    require(u_ok(*witness_u), errc::infeasible,
            "witness protection matrix leaves some [U, E_t] rank-deficient");
    sc.u = *witness_u;
  } else {
    bool found = false;
    for (int attempt = 0; attempt < budget && !found; ++attempt) {
      FqMatrix u = fq_random(f, n, u_cols, rng);
      if (u_ok(u)) {
        sc.u = u;
        found = true;
      }
    }
    require(found, errc::retry_exhausted, "protection matrix sampling exhausted retries");
  }

  // Stages 3-5: per-stream alignment.
  for (int k = 0; k < K; ++k) {
    sc.m_k.push_back(sc.m.subsystem_columns(sc.stream_subsystems(k)));
    FqMatrix uk = intersect_column_spans(sc.u, sc.m_k.back());
    require(uk.cols() >= dims.l, errc::infeasible,
            "intersection rank below block length for a stream");
    sc.u_k.push_back(uk);
    FqMatrix vp = fq_zeros(f, uk.cols(), dims.l);
    for (Eigen::Index i = 0; i < dims.l; ++i) vp(i, i) = Fq(f, 1);
    sc.vprime_k.push_back(vp);
    sc.v_k.push_back(solve_right(sc.m_k.back(), FqMatrix(uk * vp)));
  }

  // Stage 6: decoder projection with every R_k invertible.
  {
    bool found = false;
    for (int attempt = 0; attempt < budget && !found; ++attempt) {
      FqMatrix vdec = fq_random(f, dims.l, n, rng);
      std::vector<FqMatrix> rk;
      bool ok = true;
      for (int k = 0; k < K && ok; ++k) {
        FqMatrix r = vdec * sc.u_k[static_cast<std::size_t>(k)] *
                     sc.vprime_k[static_cast<std::size_t>(k)];
        ok = rank_of(r) == dims.l;
        rk.push_back(std::move(r));
      }
      if (!ok) continue;
      sc.v_dec = vdec;
      sc.r_k = rk;
      for (const auto& r : rk) sc.r_k_inv.push_back(inverse(r));
      found = true;
    }
    require(found, errc::retry_exhausted, "decoder projection sampling exhausted retries");
  }

  // Stage 7: per-pattern left inverses of [U, E_t].
  for (int t = 0; t < T; ++t)
    sc.left_inv_t.push_back(left_inverse(hcat(sc.u, sc.e_t[static_cast<std::size_t>(t)])));

  return sc;
}

std::vector<std::pair<Fq, Fq>> encode_ame(const AmeScheme& sc, int server,
                                          const std::vector<FqVector>& blocks) {
  require(server >= 0 && server <= sc.inst.servers, errc::unknown_server,
          "server index out of range");
  const Field& f = *sc.dims.field;
  const auto& own = sc.dims.subsystems[static_cast<std::size_t>(server)];
  std::vector<std::pair<Fq, Fq>> ops(own.size(), {Fq(f, 0), Fq(f, 0)});
  if (server == 0) {
    require(blocks.empty(), errc::wrong_block_length, "Server 0 has no data");
    return ops;
  }

  std::vector<int> owned_streams;
  for (int k = 0; k < sc.inst.stream_count(); ++k) {
    const auto& w = sc.inst.streams[static_cast<std::size_t>(k)];
    if (std::find(w.begin(), w.end(), server) != w.end()) owned_streams.push_back(k);
  }
  require(blocks.size() == owned_streams.size(), errc::wrong_block_length,
          "expected one block per stream available to this server");

  for (std::size_t j = 0; j < owned_streams.size(); ++j) {
    const int k = owned_streams[j];
    require(blocks[j].rows() == sc.dims.l, errc::wrong_block_length,
            "stream block must have length l");
    if (own.empty()) continue;  // server holds streams but no subsystems
    // Pre-compensation: treat W_k as R_k^{-1} W_k.
    const FqVector comp = sc.r_k_inv[static_cast<std::size_t>(k)] * blocks[j];
    const FqVector contrib = sc.v_k[static_cast<std::size_t>(k)] * comp;
    const auto subs = sc.stream_subsystems(k);
    const auto n_k = static_cast<Eigen::Index>(subs.size());
    for (Eigen::Index pos = 0; pos < n_k; ++pos) {
      const Eigen::Index i = subs[static_cast<std::size_t>(pos)];  // I_s is contiguous
      if (i < own.front() || i > own.back()) continue;
      const std::size_t slot = static_cast<std::size_t>(i - own.front());
      ops[slot].first = ops[slot].first + contrib(pos);
      ops[slot].second = ops[slot].second + contrib(n_k + pos);
    }
  }
  return ops;
}

FqVector decode_ame(const AmeScheme& sc, int t, const FqVector& label) {
  require(t >= 0 && t < sc.inst.pattern_count(), errc::invalid_pattern,
          "erasure pattern index out of range");
  require(label.rows() == sc.dims.n_total, errc::shape_mismatch,
          "label must have length N");
  const FqVector c = sc.left_inv_t[static_cast<std::size_t>(t)] * label;
  const FqVector v_u = sc.u * c.head(sc.u_cols());
  return sc.v_dec * v_u;
}

TqcScheme synthesize_tqc(const QemacInstance& inst, const std::vector<Eigen::Index>& allocation,
                         std::uint64_t seed, std::optional<Eigen::Index> l_override, int budget) {
  inst.validate();
  require(allocation.size() == static_cast<std::size_t>(inst.servers) + 1, errc::length_mismatch,
          "allocation must list N_s for servers 0..S");
  TqcScheme sc;
  sc.inst = inst;
  sc.ns = allocation;
  sc.seed = seed;

  auto summed = [&](const std::vector<int>& servers) {
    Eigen::Index sum = 0;
    for (int s : servers) sum += allocation[static_cast<std::size_t>(s)];
    return sum;
  };
  Eigen::Index min_stream = summed(inst.streams[0]);
  for (const auto& w : inst.streams) min_stream = std::min(min_stream, summed(w));
  Eigen::Index max_erased = 0;
  for (const auto& e : inst.erasures) max_erased = std::max(max_erased, summed(e));
  const Eigen::Index l_max = min_stream - max_erased;
  require(l_max >= 1, errc::infeasible,
          "classical condition fails: max_t sum N_s > min_k sum N_s - 1");
  sc.l = l_override.value_or(l_max);
  require(sc.l >= 1 && sc.l <= l_max, errc::infeasible, "requested l outside (0, l_max]");

  const Eigen::Index n_total =
      std::accumulate(allocation.begin(), allocation.end(), Eigen::Index{0});
  std::uint32_t lambda0 = 1;
  long double q = inst.d;
  while (q <= static_cast<long double>(n_total)) {
    q *= inst.d;
    ++lambda0;
  }

  // Existence only needs q > N; the sampling below can still be unlucky at
  // the smallest field, so escalate lambda a couple of times before giving up.
  for (std::uint32_t lambda = lambda0; lambda < lambda0 + 3; ++lambda) {
    sc.lambda = lambda;
    sc.field = &extension_field(inst.d, lambda);
    if (synthesize_tqc_at_field(inst, allocation, seed, budget, sc)) return sc;
  }
  fail(errc::retry_exhausted, "classical scheme sampling exhausted retries");
}

namespace {

// One field-size attempt of the classical synthesis; fills g and d_t on
// success. Mirrors the entanglement-assisted construction with the received
// symbol vector playing the role of the box label.
bool synthesize_tqc_at_field(const QemacInstance& inst,
                             const std::vector<Eigen::Index>& allocation, std::uint64_t seed,
                             int budget, TqcScheme& sc) {
  const Field& f = *sc.field;
  const int K = inst.stream_count(), T = inst.pattern_count();

  // Classical analogue of the entanglement-assisted construction, with the
  // received symbol vector playing the role of the box label: find a
  // protection matrix whose rows survive every erasure at full column rank,
  // align each stream inside its replica support, and project with a common
  // decoder. Erased symbols are annihilated exactly, so decoders only read
  // surviving positions.

  // Global symbol index ranges per data-server (Server 0 carries no data).
  std::vector<Eigen::Index> sym_start(static_cast<std::size_t>(inst.servers) + 1, 0);
  Eigen::Index n_sym = 0;
  for (int s = 1; s <= inst.servers; ++s) {
    sym_start[static_cast<std::size_t>(s)] = n_sym;
    n_sym += allocation[static_cast<std::size_t>(s)];
  }
  auto symbol_set = [&](const std::vector<int>& servers) {
    std::vector<Eigen::Index> out;
    for (int s : servers)
      for (Eigen::Index i = 0; i < allocation[static_cast<std::size_t>(s)]; ++i)
        out.push_back(sym_start[static_cast<std::size_t>(s)] + i);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto unit_columns = [&](const std::vector<Eigen::Index>& symbols) {
    FqMatrix m = fq_zeros(f, n_sym, static_cast<Eigen::Index>(symbols.size()));
    for (std::size_t j = 0; j < symbols.size(); ++j) m(symbols[j], static_cast<Eigen::Index>(j)) = Fq(f, 1);
    return m;
  };

  Eigen::Index erased_sym_max = 0;
  std::vector<FqMatrix> e_cols;
  std::vector<std::vector<Eigen::Index>> surviving_syms;
  for (int t = 0; t < T; ++t) {
    const auto erased = symbol_set(inst.erasures[static_cast<std::size_t>(t)]);
    erased_sym_max = std::max(erased_sym_max, static_cast<Eigen::Index>(erased.size()));
    e_cols.push_back(unit_columns(erased));
    std::vector<Eigen::Index> surv;
    for (Eigen::Index i = 0; i < n_sym; ++i)
      if (std::find(erased.begin(), erased.end(), i) == erased.end()) surv.push_back(i);
    surviving_syms.push_back(surv);
  }
  const Eigen::Index u_cols = n_sym - erased_sym_max;

  Rng rng(seed);
  for (int attempt = 0; attempt < budget; ++attempt) {
    // Protection matrix: [U, E_t] full column rank for every pattern.
    FqMatrix u = fq_random(f, n_sym, u_cols, rng);
    bool ok = true;
    for (int t = 0; t < T && ok; ++t)
      ok = rank_of(hcat(u, e_cols[static_cast<std::size_t>(t)])) ==
           u_cols + e_cols[static_cast<std::size_t>(t)].cols();
    if (!ok) continue;

    // Per-stream alignment inside the replica symbol support.
    std::vector<FqMatrix> enc_k;
    for (int k = 0; k < K && ok; ++k) {
      const FqMatrix support = unit_columns(symbol_set(inst.streams[static_cast<std::size_t>(k)]));
      const FqMatrix uk = intersect_column_spans(u, support);
      if (uk.cols() < sc.l) {
        ok = false;
        break;
      }
      FqMatrix vp = fq_zeros(f, uk.cols(), sc.l);
      for (Eigen::Index i = 0; i < sc.l; ++i) vp(i, i) = Fq(f, 1);
      enc_k.push_back(FqMatrix(uk * vp));  // n_sym x l, supported on the replicas
    }
    if (!ok) continue;

    // Common decoder projection with every R_k invertible.
    FqMatrix v_dec;
    std::vector<FqMatrix> r_inv;
    bool found = false;
    for (int inner = 0; inner < budget && !found; ++inner) {
      FqMatrix cand = fq_random(f, sc.l, n_sym, rng);
      std::vector<FqMatrix> inv;
      bool all = true;
      for (int k = 0; k < K && all; ++k) {
        FqMatrix r = cand * enc_k[static_cast<std::size_t>(k)];
        all = rank_of(r) == sc.l;
        if (all) inv.push_back(inverse(r));
      }
      if (all) {
        v_dec = cand;
        r_inv = std::move(inv);
        found = true;
      }
    }
    if (!found) continue;

    // Encoders: rows of the pre-compensated stream contributions.
    std::vector<std::vector<FqMatrix>> g(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
      const FqMatrix contrib = enc_k[static_cast<std::size_t>(k)] * r_inv[static_cast<std::size_t>(k)];
      for (int s : inst.streams[static_cast<std::size_t>(k)]) {
        const Eigen::Index ns = allocation[static_cast<std::size_t>(s)];
        g[static_cast<std::size_t>(k)].push_back(
            contrib.block(sym_start[static_cast<std::size_t>(s)], 0, ns, sc.l));
      }
    }

    // Per-pattern decoders: extract the span(U) component (erased coordinates
    // are annihilated), project, and keep the surviving columns.
    std::vector<FqMatrix> d_t;
    for (int t = 0; t < T; ++t) {
      const FqMatrix linv = left_inverse(hcat(u, e_cols[static_cast<std::size_t>(t)]));
      const FqMatrix full = v_dec * u * linv.topRows(u_cols);  // l x n_sym
      const auto& surv = surviving_syms[static_cast<std::size_t>(t)];
      FqMatrix d(sc.l, static_cast<Eigen::Index>(surv.size()));
      for (std::size_t j = 0; j < surv.size(); ++j)
        d.col(static_cast<Eigen::Index>(j)) = full.col(surv[j]);
      d_t.push_back(std::move(d));
    }

    sc.g = std::move(g);
    sc.d_t = std::move(d_t);
    // Exact certification of every decoder identity before returning.
    require(tqc_decoders_certified(sc), errc::infeasible, "decoder certification failed");
    return true;
  }
  return false;
}

}  // namespace

FqVector encode_tqc(const TqcScheme& sc, int server, const std::vector<FqVector>& blocks) {
  require(server >= 0 && server <= sc.inst.servers, errc::unknown_server,
          "server index out of range");
  const Field& f = *sc.field;
  FqVector out = fq_zeros(f, sc.ns[static_cast<std::size_t>(server)], 1);
  if (server == 0) {
    require(blocks.empty(), errc::wrong_block_length, "Server 0 has no data");
    return out;
  }
  std::size_t used = 0;
  for (int k = 0; k < sc.inst.stream_count(); ++k) {
    const auto& w = sc.inst.streams[static_cast<std::size_t>(k)];
    const auto it = std::find(w.begin(), w.end(), server);
    if (it == w.end()) continue;
    require(used < blocks.size(), errc::wrong_block_length, "missing stream block");
    require(blocks[used].rows() == sc.l, errc::wrong_block_length,
            "stream block must have length l");
    const auto j = static_cast<std::size_t>(std::distance(w.begin(), it));
    out = out + sc.g[static_cast<std::size_t>(k)][j] * blocks[used];
    ++used;
  }
  require(used == blocks.size(), errc::wrong_block_length, "too many stream blocks");
  return out;
}

FqVector decode_tqc(const TqcScheme& sc, int t, const FqVector& received) {
  require(t >= 0 && t < sc.inst.pattern_count(), errc::invalid_pattern,
          "erasure pattern index out of range");
  const auto& d = sc.d_t[static_cast<std::size_t>(t)];
  require(received.rows() == d.cols(), errc::length_mismatch,
          "received vector does not match surviving-server layout");
  return d * received;
}

bool tqc_decoders_certified(const TqcScheme& sc) {
  const Field& f = *sc.field;
  const int K = sc.inst.stream_count();
  for (int t = 0; t < sc.inst.pattern_count(); ++t) {
    const auto& erased = sc.inst.erasures[static_cast<std::size_t>(t)];
    std::vector<int> survivors;
    for (int s = 1; s <= sc.inst.servers; ++s)
      if (std::find(erased.begin(), erased.end(), s) == erased.end()) survivors.push_back(s);
    Eigen::Index rows = 0;
    for (int s : survivors) rows += sc.ns[static_cast<std::size_t>(s)];
    FqMatrix a = fq_zeros(f, rows, static_cast<Eigen::Index>(K) * sc.l);
    Eigen::Index off = 0;
    for (int s : survivors) {
      const Eigen::Index ns = sc.ns[static_cast<std::size_t>(s)];
      for (int k = 0; k < K; ++k) {
        const auto& w = sc.inst.streams[static_cast<std::size_t>(k)];
        const auto it = std::find(w.begin(), w.end(), s);
        if (it != w.end())
          a.block(off, static_cast<Eigen::Index>(k) * sc.l, ns, sc.l) =
              sc.g[static_cast<std::size_t>(k)]
                  [static_cast<std::size_t>(std::distance(w.begin(), it))];
      }
      off += ns;
    }
    FqMatrix want = fq_zeros(f, sc.l, static_cast<Eigen::Index>(K) * sc.l);
    for (int k = 0; k < K; ++k)
      want.block(0, static_cast<Eigen::Index>(k) * sc.l, sc.l, sc.l) = fq_identity(f, sc.l);
    if (!fq_equal(sc.d_t[static_cast<std::size_t>(t)] * a, want)) return false;
  }
  return true;
}

CutSetScheme build_cutset_scheme(std::uint32_t d, std::uint32_t z) {
  CutSetScheme sc;
  sc.d = d;
  sc.z = z;
  require(z >= 1, errc::invalid_argument, "extension degree must be >= 1");
  const Field& f = extension_field(d, z);
  require(f.q() >= 8, errc::field_too_small, "cut-set scheme needs d^z >= 8");
  sc.field = &f;
  sc.gen = mds_generator(4, 8, f);
  sc.pair_box = TransferMatrix{fq_from_ints(f, 2, 4, {1, 1, 0, 0, 0, 0, 1, -1})};

  // Erasing server 1 ruins Q1..Q3 plus the pair partner of Q7; the surviving
  // coded symbols are A'_5..A'_8, and symmetrically for the other options.
  sc.option_symbols = {{4, 5, 6, 7}, {0, 1, 2, 3}, {2, 3, 6, 7}};
  for (const auto& symbols : sc.option_symbols) {
    FqMatrix cols(4, 4);
    for (int j = 0; j < 4; ++j) cols.col(j) = sc.gen.col(symbols[static_cast<std::size_t>(j)]);
    sc.option_dec.push_back(inverse(cols));
  }
  return sc;
}

FqMatrix cutset_encode(const CutSetScheme& sc, const FqMatrix& data_row) {
  require(data_row.rows() == 1 && data_row.cols() == 4, errc::shape_mismatch,
          "cut-set data must be a 1x4 row");
  return data_row * sc.gen;
}

FqMatrix cutset_decode(const CutSetScheme& sc, int option, const FqMatrix& coded_row) {
  require(option >= 0 && option < 3, errc::invalid_pattern, "decode option out of range");
  require(coded_row.rows() == 1 && coded_row.cols() == 4, errc::shape_mismatch,
          "option decode takes the 4 surviving coded symbols");
  return coded_row * sc.option_dec[static_cast<std::size_t>(option)];
}

std::vector<Rat> cost_tuple(const Scheme& sc) {
  std::vector<Rat> out;
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) {
    for (Eigen::Index ns : ame->dims.ns) out.emplace_back(Rat(ns) / Rat(ame->dims.l));
  } else if (const auto* tqc = std::get_if<TqcScheme>(&sc)) {
    for (Eigen::Index ns : tqc->ns) out.emplace_back(Rat(ns) / Rat(tqc->l));
  } else {
    const auto& cut = std::get<CutSetScheme>(sc);
    out.emplace_back(0);
    for (int n : cut.qudits_per_server()) out.emplace_back(Rat(n, 4));
  }
  return out;
}

Rat scheme_rate(const Scheme& sc) {
  const auto tuple = cost_tuple(sc);
  Rat sum(0);
  for (std::size_t s = 1; s < tuple.size(); ++s) sum += tuple[s];
  require(!sum.is_zero(), errc::infeasible, "zero download cost");
  return Rat(1) / sum;
}

FqMatrix golden_f5_transfer() {
  const Field& f = construct_field(5, 1);
  return fq_from_ints(f, 4, 8,
                      {1, 1, 1, 1, 0, 0, 0, 0,  //
                       1, 2, 3, 4, 0, 0, 0, 0,  //
                       0, 0, 0, 0, 1, 2, 3, 4,  //
                       0, 0, 0, 0, 1, 4, 4, 1});
}

FqMatrix golden_f5_protection() {
  const Field& f = construct_field(5, 1);
  return fq_from_ints(f, 4, 2, {0, 3, 1, 1, 2, 2, 1, 3});
}

}  // namespace qemac
