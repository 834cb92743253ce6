#pragma once

#include <string>
#include <vector>

#include "qemac/instance.hpp"
#include "qemac/rational.hpp"

namespace qemac {

/// Download costs (Delta_0, Delta_1, ..., Delta_S), Server 0 first.
using CostTuple = std::vector<Rat>;

/// Entanglement-assisted region: for all streams k and patterns t,
///   min{ sum_{s in {0}∪[S]} Delta_s, sum_{s in W(k)} 2 Delta_s }
///     - sum_{s in E(t)} 2 Delta_s >= 1.
bool in_region_ame(const CostTuple& delta, const QemacInstance& inst);

/// Classical region: sum_{W(k)} Delta_s - sum_{E(t)} Delta_s >= 1 for all k, t.
bool in_region_tqc(const CostTuple& delta, const QemacInstance& inst);

/// Membership in conv(AME^+ ∪ TQC^+): exact LP feasibility of a split
/// u + v <= Delta with u meeting the AME constraints at right side lambda and
/// v the TQC constraints at right side 1 - lambda, lambda in [0, 1]. All
/// pivoting is rational (Bland's rule).
bool in_achievable_hull(const CostTuple& delta, const QemacInstance& inst);

struct CapacityResult {
  Rat delta_star;
  Rat capacity;         // 1 / (S * delta_star)
  std::string regime;   // "S>=a+b" or "S<a+b", then "ame-floor" or "entanglement-limited"
};

/// Two-case closed form of the optimal per-server cost at helper cost Delta_0:
///   S >= alpha+beta: max{ 1/(2(alpha-beta)), (1-Delta_0)/(S-2beta) }
///   S <  alpha+beta: max{ 1/(2(alpha-beta)), 1/(alpha-beta) - Delta_0/(2alpha-S) }
CapacityResult symmetric_delta_star(int S, int alpha, int beta, const Rat& delta0);

struct NoHelperCapacity {
  Rat capacity;  // max{ min{2(a-b)/S, (S-2b)/S}, (a-b)/S }
  Rat r_ame;     // min{2(a-b)/S, (S-2b)/S}
  Rat r_tqc;     // (a-b)/S
  std::string regime;  // "ame-replication" | "ame-erasure" | "tqc"
};

NoHelperCapacity capacity_no_helper(int S, int alpha, int beta);

/// max{0, (2 alpha - S) / (2 (alpha - beta))}; beyond it the capacity is flat
/// at 2(alpha-beta)/S.
Rat saturation_threshold(int S, int alpha, int beta);

struct EacqVerdict {
  bool subset_bound_ok;  // every (S-beta)-subset sums to >= 1/2
  bool total_bound_ok;   // Delta_0 + ... + Delta_S >= S/(S-beta)
  bool all_ok() const { return subset_bound_ok && total_bound_ok; }
};

/// Single-stream (alpha = S) converse bounds evaluated at a cost tuple.
EacqVerdict eacq_check(const CostTuple& delta, int S, int beta);

struct CurvePoint {
  Rat delta0;
  Rat delta_star;
  Rat capacity;
  Rat r_ame;
  Rat r_tqc;
  std::string regime;
};

std::vector<CurvePoint> curve(int S, int alpha, int beta, const std::vector<Rat>& delta0_grid);

/// CSV with exact integer rationals:
/// S,alpha,beta,delta0_num,delta0_den,delta_star_num,delta_star_den,
/// capacity_num,capacity_den,regime
std::string curve_csv(int S, int alpha, int beta, const std::vector<CurvePoint>& points);

}  // namespace qemac
