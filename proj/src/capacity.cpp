#include "qemac/capacity.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qemac {

namespace {

Rat sum_over(const CostTuple& delta, const std::vector<int>& servers, const Rat& scale) {
  Rat sum(0);
  for (int s : servers) sum += delta[static_cast<std::size_t>(s)] * scale;
  return sum;
}

bool tuple_sane(const CostTuple& delta, const QemacInstance& inst) {
  require(delta.size() == static_cast<std::size_t>(inst.servers) + 1, errc::length_mismatch,
          "cost tuple must have S+1 entries (Server 0 first)");
  for (const Rat& x : delta)
    if (x.is_negative()) return false;
  return true;
}

// --- exact phase-1 simplex ------------------------------------------------

enum class Rel { le, ge };

struct Constraint {
  std::vector<Rat> coeff;  // one per structural variable
  Rel rel;
  Rat rhs;
};

// Feasibility of { x >= 0 : constraints } by minimizing artificial mass with
// Bland's rule; exact rational arithmetic throughout.
bool lp_feasible(std::size_t nvars, std::vector<Constraint> cons) {
  // Deduplicate identical rows (symmetric instances generate many).
  {
    std::map<std::string, bool> seen;
    std::vector<Constraint> unique_cons;
    for (auto& c : cons) {
      std::ostringstream key;
      key << static_cast<int>(c.rel) << '|' << c.rhs.str();
      for (const Rat& v : c.coeff) key << ',' << v.str();
      if (seen.emplace(key.str(), true).second) unique_cons.push_back(std::move(c));
    }
    cons = std::move(unique_cons);
  }

  for (auto& c : cons)  // normalise to rhs >= 0
    if (c.rhs.is_negative()) {
      for (Rat& v : c.coeff) v = -v;
      c.rhs = -c.rhs;
      c.rel = c.rel == Rel::le ? Rel::ge : Rel::le;
    }

  const std::size_t m = cons.size();
  std::size_t n_art = 0;
  for (const auto& c : cons)
    if (c.rel == Rel::ge && !c.rhs.is_zero()) ++n_art;
  // Columns: structural | slack/surplus (one per row) | artificial | rhs.
  const std::size_t ncols = nvars + m + n_art;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(ncols + 1, Rat(0)));
  std::vector<std::size_t> basis(m);
  std::vector<bool> is_art(ncols, false);

  std::size_t art_next = nvars + m;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nvars; ++j) t[i][j] = cons[i].coeff[j];
    t[i][ncols] = cons[i].rhs;
    if (cons[i].rel == Rel::le) {
      t[i][nvars + i] = Rat(1);
      basis[i] = nvars + i;
    } else {
      t[i][nvars + i] = Rat(-1);
      if (cons[i].rhs.is_zero()) {
        // Degenerate >= 0 row: the surplus itself can be basic at zero.
        t[i][nvars + i] = Rat(-1);
        basis[i] = nvars + i;
        // Make the basic column +1 by negating the row.
        for (std::size_t j = 0; j <= ncols; ++j) t[i][j] = -t[i][j];
      } else {
        t[i][art_next] = Rat(1);
        is_art[art_next] = true;
        basis[i] = art_next;
        ++art_next;
      }
    }
  }

  auto objective = [&]() {
    Rat v(0);
    for (std::size_t i = 0; i < m; ++i)
      if (is_art[basis[i]]) v += t[i][ncols];
    return v;
  };

  for (;;) {
    if (objective().is_zero()) return true;
    // Reduced cost r_j = c_j - sum over artificial-basic rows of t[i][j].
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols && enter == ncols; ++j) {
      bool basic = false;
      for (std::size_t i = 0; i < m; ++i) basic = basic || basis[i] == j;
      if (basic) continue;
      Rat r = is_art[j] ? Rat(1) : Rat(0);
      for (std::size_t i = 0; i < m; ++i)
        if (is_art[basis[i]]) r -= t[i][j];
      if (r.is_negative()) enter = j;  // Bland: first improving column
    }
    if (enter == ncols) return objective().is_zero();
    std::size_t leave = m;
    Rat best(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > Rat(0))) continue;
      const Rat ratio = t[i][ncols] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {  // Bland tie-break
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return objective().is_zero();  // unbounded improving ray: cannot happen
    // Pivot.
    const Rat piv = t[leave][enter];
    for (std::size_t j = 0; j <= ncols; ++j) t[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Rat factor = t[i][enter];
      for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
}

}  // namespace

bool in_region_ame(const CostTuple& delta, const QemacInstance& inst) {
  if (!tuple_sane(delta, inst)) return false;
  Rat total(0);
  for (const Rat& x : delta) total += x;
  for (const auto& w : inst.streams) {
    const Rat stream = sum_over(delta, w, Rat(2));
    const Rat cap = Rat::min(total, stream);
    for (const auto& e : inst.erasures)
      if (cap - sum_over(delta, e, Rat(2)) < Rat(1)) return false;
  }
  return true;
}

bool in_region_tqc(const CostTuple& delta, const QemacInstance& inst) {
  if (!tuple_sane(delta, inst)) return false;
  for (const auto& w : inst.streams) {
    const Rat stream = sum_over(delta, w, Rat(1));
    for (const auto& e : inst.erasures)
      if (stream - sum_over(delta, e, Rat(1)) < Rat(1)) return false;
  }
  return true;
}

bool in_achievable_hull(const CostTuple& delta, const QemacInstance& inst) {
  if (!tuple_sane(delta, inst)) return false;
  // Pure-region membership is a witness with lambda in {0, 1}.
  if (in_region_ame(delta, inst) || in_region_tqc(delta, inst)) return true;

  const std::size_t sp1 = delta.size();
  const std::size_t nvars = 1 + 2 * sp1;  // lambda, u_0..u_S, v_0..v_S
  auto u_of = [&](int s) { return 1 + static_cast<std::size_t>(s); };
  auto v_of = [&](int s) { return 1 + sp1 + static_cast<std::size_t>(s); };

  std::vector<Constraint> cons;
  {
    Constraint c{std::vector<Rat>(nvars, Rat(0)), Rel::le, Rat(1)};
    c.coeff[0] = Rat(1);
    cons.push_back(c);  // lambda <= 1
  }
  for (std::size_t s = 0; s < sp1; ++s) {
    Constraint c{std::vector<Rat>(nvars, Rat(0)), Rel::le, delta[s]};
    c.coeff[u_of(static_cast<int>(s))] = Rat(1);
    c.coeff[v_of(static_cast<int>(s))] = Rat(1);
    cons.push_back(c);  // u_s + v_s <= Delta_s
  }
  for (const auto& e : inst.erasures) {
    // sum_s u_s - 2 sum_{E(t)} u_s - lambda >= 0
    Constraint c{std::vector<Rat>(nvars, Rat(0)), Rel::ge, Rat(0)};
    for (std::size_t s = 0; s < sp1; ++s) c.coeff[u_of(static_cast<int>(s))] = Rat(1);
    for (int s : e) c.coeff[u_of(s)] -= Rat(2);
    c.coeff[0] = Rat(-1);
    cons.push_back(c);
  }
  for (const auto& w : inst.streams)
    for (const auto& e : inst.erasures) {
      // 2 sum_{W(k)} u_s - 2 sum_{E(t)} u_s - lambda >= 0
      Constraint c{std::vector<Rat>(nvars, Rat(0)), Rel::ge, Rat(0)};
      for (int s : w) c.coeff[u_of(s)] += Rat(2);
      for (int s : e) c.coeff[u_of(s)] -= Rat(2);
      c.coeff[0] = Rat(-1);
      cons.push_back(c);

      // sum_{W(k)} v_s - sum_{E(t)} v_s + lambda >= 1
      Constraint ct{std::vector<Rat>(nvars, Rat(0)), Rel::ge, Rat(1)};
      for (int s : w) ct.coeff[v_of(s)] += Rat(1);
      for (int s : e) ct.coeff[v_of(s)] -= Rat(1);
      ct.coeff[0] = Rat(1);
      cons.push_back(ct);
    }
  return lp_feasible(nvars, std::move(cons));
}

CapacityResult symmetric_delta_star(int S, int alpha, int beta, const Rat& delta0) {
  require(S >= alpha && alpha > beta && beta >= 0, errc::infeasible_parameters,
          "need S >= alpha > beta >= 0");
  require(!delta0.is_negative(), errc::infeasible_parameters, "Delta_0 must be >= 0");
  const Rat floor = Rat(1, 2LL * (alpha - beta));
  CapacityResult out;
  Rat other;
  if (S >= alpha + beta) {
    other = (Rat(1) - delta0) / Rat(S - 2 * beta);
    out.regime = "S>=a+b";
  } else {
    other = Rat(1, alpha - beta) - delta0 / Rat(2 * alpha - S);
    out.regime = "S<a+b";
  }
  out.delta_star = Rat::max(floor, other);
  out.regime += floor >= other ? "/ame-floor" : "/entanglement-limited";
  out.capacity = Rat(1) / (Rat(S) * out.delta_star);
  return out;
}

NoHelperCapacity capacity_no_helper(int S, int alpha, int beta) {
  require(S >= alpha && alpha > beta && beta >= 0, errc::infeasible_parameters,
          "need S >= alpha > beta >= 0");
  NoHelperCapacity out;
  out.r_ame = Rat::min(Rat(2LL * (alpha - beta), S), Rat(S - 2 * beta, S));
  out.r_tqc = Rat(alpha - beta, S);
  out.capacity = Rat::max(out.r_ame, out.r_tqc);
  if (S >= alpha + beta && S <= 2 * alpha)
    out.regime = "ame-erasure";  // (S-2b)/S branch; owns the S = 2a boundary
  else if (S > 2 * alpha)
    out.regime = "ame-replication";
  else
    out.regime = "tqc";
  return out;
}

Rat saturation_threshold(int S, int alpha, int beta) {
  require(S >= alpha && alpha > beta && beta >= 0, errc::infeasible_parameters,
          "need S >= alpha > beta >= 0");
  return Rat::max(Rat(0), Rat(2 * alpha - S, 2LL * (alpha - beta)));
}

EacqVerdict eacq_check(const CostTuple& delta, int S, int beta) {
  require(delta.size() == static_cast<std::size_t>(S) + 1, errc::length_mismatch,
          "cost tuple must have S+1 entries");
  require(beta >= 0 && beta < S, errc::infeasible_parameters, "need 0 <= beta < S");
  EacqVerdict verdict{true, true};
  for (const auto& subset : subsets_lex(S, S - beta)) {
    Rat sum(0);
    for (int s : subset) sum += delta[static_cast<std::size_t>(s)];
    if (sum < Rat(1, 2)) {
      verdict.subset_bound_ok = false;
      break;
    }
  }
  Rat total(0);
  for (const Rat& x : delta) total += x;
  verdict.total_bound_ok = total >= Rat(S, S - beta);
  return verdict;
}

std::vector<CurvePoint> curve(int S, int alpha, int beta, const std::vector<Rat>& delta0_grid) {
  const NoHelperCapacity base = capacity_no_helper(S, alpha, beta);
  std::vector<CurvePoint> out;
  out.reserve(delta0_grid.size());
  for (const Rat& d0 : delta0_grid) {
    const CapacityResult r = symmetric_delta_star(S, alpha, beta, d0);
    out.push_back({d0, r.delta_star, r.capacity, base.r_ame, base.r_tqc, r.regime});
  }
  return out;
}

std::string curve_csv(int S, int alpha, int beta, const std::vector<CurvePoint>& points) {
  std::ostringstream os;
  os << "S,alpha,beta,delta0_num,delta0_den,delta_star_num,delta_star_den,"
        "capacity_num,capacity_den,regime\n";
  for (const auto& p : points)
    os << S << ',' << alpha << ',' << beta << ',' << p.delta0.num() << ',' << p.delta0.den()
       << ',' << p.delta_star.num() << ',' << p.delta_star.den() << ',' << p.capacity.num()
       << ',' << p.capacity.den() << ',' << p.regime << '\n';
  return os.str();
}

}  // namespace qemac
