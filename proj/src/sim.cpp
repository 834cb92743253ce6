#include "qemac/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qemac/serialize.hpp"

namespace qemac {

namespace {

FqVector block_sum(const Field& f, const std::vector<FqVector>& data, Eigen::Index l) {
  FqVector sum = fq_zeros(f, l, 1);
  for (const auto& w : data) sum = sum + w;
  return sum;
}

std::vector<FqVector> server_blocks(const QemacInstance& inst, int server,
                                    const std::vector<FqVector>& data) {
  std::vector<FqVector> blocks;
  for (int k = 0; k < inst.stream_count(); ++k) {
    const auto& w = inst.streams[static_cast<std::size_t>(k)];
    if (std::find(w.begin(), w.end(), server) != w.end())
      blocks.push_back(data[static_cast<std::size_t>(k)]);
  }
  return blocks;
}

TrialRecord ame_trial(const AmeScheme& sc, const std::vector<FqVector>& data, int pattern,
                      const FqVector& noise) {
  require(data.size() == static_cast<std::size_t>(sc.inst.stream_count()), errc::shape_mismatch,
          "need one block per stream");
  for (const auto& w : data)
    require(w.rows() == sc.dims.l, errc::shape_mismatch, "stream block must have length l");
  const Field& f = *sc.dims.field;

  TrialRecord rec;
  rec.data = data;
  rec.pattern = pattern;
  rec.noise = noise;

  std::vector<BoxOp> ops;
  for (int s = 0; s <= sc.inst.servers; ++s) {
    const auto pairs = encode_ame(sc, s, s == 0 ? std::vector<FqVector>{}
                                                : server_blocks(sc.inst, s, data));
    const auto& subs = sc.dims.subsystems[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < pairs.size(); ++i)
      ops.push_back({subs[i], pairs[i].first, pairs[i].second});
  }
  FqVector label = box_apply(fq_zeros(f, sc.dims.n_total, 1), ops, sc.m);

  const auto& e = sc.e_t[static_cast<std::size_t>(pattern)];
  require(noise.rows() == e.cols(), errc::shape_mismatch,
          "noise vector must match the erased column count");
  if (e.cols() > 0) label = label + e * noise;

  rec.measured = label;
  rec.decoded = decode_ame(sc, pattern, label);
  rec.expected = block_sum(f, data, sc.dims.l);
  rec.pass = fq_equal(rec.decoded, rec.expected);
  return rec;
}

TrialRecord tqc_trial(const TqcScheme& sc, const std::vector<FqVector>& data, int pattern) {
  require(data.size() == static_cast<std::size_t>(sc.inst.stream_count()), errc::shape_mismatch,
          "need one block per stream");
  const Field& f = *sc.field;

  TrialRecord rec;
  rec.data = data;
  rec.pattern = pattern;

  const auto& erased = sc.inst.erasures[static_cast<std::size_t>(pattern)];
  std::vector<Fq> received;
  for (int s = 1; s <= sc.inst.servers; ++s) {
    const FqVector symbols = encode_tqc(sc, s, server_blocks(sc.inst, s, data));
    if (std::find(erased.begin(), erased.end(), s) != erased.end()) continue;
    for (Eigen::Index i = 0; i < symbols.rows(); ++i) received.push_back(symbols(i));
  }
  FqVector stacked(static_cast<Eigen::Index>(received.size()));
  for (std::size_t i = 0; i < received.size(); ++i)
    stacked(static_cast<Eigen::Index>(i)) = received[i];

  rec.measured = stacked;
  rec.decoded = decode_tqc(sc, pattern, stacked);
  rec.expected = block_sum(f, data, sc.l);
  rec.pass = fq_equal(rec.decoded, rec.expected);
  return rec;
}

TrialRecord cutset_trial(const CutSetScheme& sc, const std::vector<FqVector>& data, int option) {
  require(data.size() == 1 && data[0].rows() == 4, errc::shape_mismatch,
          "cut-set data is one block of 4 symbols");
  const Field& f = *sc.field;
  require(option >= 0 && option < 3, errc::invalid_pattern, "decode option out of range");

  TrialRecord rec;
  rec.data = data;
  rec.pattern = option;

  FqMatrix row(1, 4);
  for (int i = 0; i < 4; ++i) row(0, i) = data[0](i);
  const FqMatrix coded = cutset_encode(sc, row);

  // Coded symbols 0,1 and 4,5 travel through the two superdense pairs: the
  // server-side qudit gets X(c0)Z(c1), and the measured pair label is the
  // transfer-matrix image. Symbols 2,3,6,7 ride qudits classically.
  const FqVector zero2 = fq_zeros(f, 2, 1);
  const FqVector pair1 =
      box_apply(zero2, {{0, coded(0, 0), coded(0, 1)}}, sc.pair_box);
  const FqVector pair2 =
      box_apply(zero2, {{0, coded(0, 4), coded(0, 5)}}, sc.pair_box);
  auto symbol_value = [&](int idx) {
    switch (idx) {
      case 0: return pair1(0);
      case 1: return pair1(1);
      case 4: return pair2(0);
      case 5: return pair2(1);
      default: return coded(0, idx);
    }
  };

  const auto& symbols = sc.option_symbols[static_cast<std::size_t>(option)];
  FqMatrix surviving(1, 4);
  FqVector measured(4);
  for (int j = 0; j < 4; ++j) {
    surviving(0, j) = symbol_value(symbols[static_cast<std::size_t>(j)]);
    measured(j) = surviving(0, j);
  }
  const FqMatrix decoded = cutset_decode(sc, option, surviving);

  rec.measured = measured;
  rec.decoded = FqVector(4);
  for (int i = 0; i < 4; ++i) rec.decoded(i) = decoded(0, i);
  rec.expected = data[0];
  rec.pass = fq_equal(rec.decoded, rec.expected);
  return rec;
}

int pattern_count(const Scheme& sc) {
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) return ame->inst.pattern_count();
  if (const auto* tqc = std::get_if<TqcScheme>(&sc)) return tqc->inst.pattern_count();
  return 3;
}

const Field& scheme_field(const Scheme& sc) {
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) return *ame->dims.field;
  if (const auto* tqc = std::get_if<TqcScheme>(&sc)) return *tqc->field;
  return *std::get<CutSetScheme>(sc).field;
}

// Shape of the data space: (number of blocks, block length).
std::pair<int, Eigen::Index> data_shape(const Scheme& sc) {
  if (const auto* ame = std::get_if<AmeScheme>(&sc))
    return {ame->inst.stream_count(), ame->dims.l};
  if (const auto* tqc = std::get_if<TqcScheme>(&sc)) return {tqc->inst.stream_count(), tqc->l};
  return {1, 4};
}

}  // namespace

std::vector<FqVector> random_stream_data(const Scheme& sc, Rng& rng) {
  const Field& f = scheme_field(sc);
  const auto [blocks, len] = data_shape(sc);
  std::vector<FqVector> data;
  for (int k = 0; k < blocks; ++k) data.push_back(fq_random(f, len, 1, rng));
  return data;
}

TrialRecord run_trial(const Scheme& sc, const std::vector<FqVector>& data, int pattern,
                      Rng& rng) {
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) {
    const auto cols = ame->e_t[static_cast<std::size_t>(pattern)].cols();
    return ame_trial(*ame, data, pattern, fq_random(*ame->dims.field, cols, 1, rng));
  }
  if (const auto* tqc = std::get_if<TqcScheme>(&sc)) return tqc_trial(*tqc, data, pattern);
  return cutset_trial(std::get<CutSetScheme>(sc), data, pattern);
}

TrialRecord run_trial_with_noise(const AmeScheme& sc, const std::vector<FqVector>& data,
                                 int pattern, const FqVector& noise) {
  return ame_trial(sc, data, pattern, noise);
}

bool kernel_noise_check(const Scheme& sc) {
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) {
    for (int t = 0; t < ame->inst.pattern_count(); ++t) {
      const auto& e = ame->e_t[static_cast<std::size_t>(t)];
      if (e.cols() == 0) continue;
      const FqMatrix dec = ame->v_dec * ame->u *
                           ame->left_inv_t[static_cast<std::size_t>(t)].topRows(ame->u_cols());
      if (!fq_is_zero(dec * e)) return false;
    }
    return true;
  }
  // Classical paths drop erased symbols instead of absorbing noise.
  return true;
}

bool kernel_decode_check(const Scheme& sc) {
  if (const auto* ame = std::get_if<AmeScheme>(&sc)) {
    const Field& f = *ame->dims.field;
    const FqMatrix eye = fq_identity(f, ame->dims.l);
    for (int t = 0; t < ame->inst.pattern_count(); ++t) {
      const FqMatrix dec = ame->v_dec * ame->u *
                           ame->left_inv_t[static_cast<std::size_t>(t)].topRows(ame->u_cols());
      for (int k = 0; k < ame->inst.stream_count(); ++k) {
        const FqMatrix enc = ame->m_k[static_cast<std::size_t>(k)] *
                             ame->v_k[static_cast<std::size_t>(k)] *
                             ame->r_k_inv[static_cast<std::size_t>(k)];
        if (!fq_equal(dec * enc, eye)) return false;
      }
    }
    return true;
  }
  if (const auto* tqc = std::get_if<TqcScheme>(&sc)) return tqc_decoders_certified(*tqc);
  const auto& cut = std::get<CutSetScheme>(sc);
  const FqMatrix eye = fq_identity(*cut.field, 4);
  for (int opt = 0; opt < 3; ++opt) {
    FqMatrix cols(4, 4);
    for (int j = 0; j < 4; ++j)
      cols.col(j) = cut.gen.col(cut.option_symbols[static_cast<std::size_t>(opt)]
                                                  [static_cast<std::size_t>(j)]);
    if (!fq_equal(cols * cut.option_dec[static_cast<std::size_t>(opt)], eye)) return false;
  }
  return true;
}

VerificationReport verify_scheme(const Scheme& sc, VerifyPolicy policy) {
  VerificationReport report;
  report.scheme_id = json_id(scheme_to_json(sc));
  report.seed = policy.seed;
  report.kernel_noise_ok = kernel_noise_check(sc);
  report.kernel_decode_ok = kernel_decode_check(sc);

  const Field& f = scheme_field(sc);
  const auto [blocks, len] = data_shape(sc);
  const long double space = std::pow(static_cast<long double>(f.q()),
                                     static_cast<long double>(blocks) * len);
  bool exhaustive = policy.kind == VerifyPolicy::Kind::exhaustive;
  if (policy.kind == VerifyPolicy::Kind::automatic) exhaustive = space <= 1e5L;
  report.exhaustive = exhaustive;
  report.policy = exhaustive ? "exhaustive" : "random";
  report.trials_per_pattern =
      exhaustive ? static_cast<long>(space) : policy.trials;

  Rng rng(policy.seed);
  const int T = pattern_count(sc);
  for (int t = 0; t < T; ++t) {
    PatternStats stats;
    stats.pattern = t;
    if (exhaustive) {
      std::vector<std::uint32_t> odo(static_cast<std::size_t>(blocks) * len, 0);
      bool done = false;
      while (!done) {
        std::vector<FqVector> data;
        for (int k = 0; k < blocks; ++k) {
          FqVector w(len);
          for (Eigen::Index i = 0; i < len; ++i)
            w(i) = Fq(f, odo[static_cast<std::size_t>(k * len + i)]);
          data.push_back(w);
        }
        ++stats.trials;
        if (!run_trial(sc, data, t, rng).pass) ++stats.failures;
        // odometer increment
        std::size_t pos = 0;
        for (;; ++pos) {
          if (pos == odo.size()) {
            done = true;
            break;
          }
          if (++odo[pos] < f.q()) break;
          odo[pos] = 0;
        }
      }
    } else {
      for (long i = 0; i < policy.trials; ++i) {
        const auto data = random_stream_data(sc, rng);
        ++stats.trials;
        if (!run_trial(sc, data, t, rng).pass) ++stats.failures;
      }
    }
    report.patterns.push_back(stats);
  }
  return report;
}

}  // namespace qemac
