#include "qemac/instance.hpp"

#include <algorithm>
#include <string>

namespace qemac {

bool prime_power(std::uint32_t d, std::uint32_t* p_out, std::uint32_t* r_out) {
  if (d < 2) return false;
  std::uint32_t p = d;
  for (std::uint32_t f = 2; f * f <= d; ++f)
    if (d % f == 0) {
      p = f;
      break;
    }
  std::uint32_t r = 0;
  std::uint32_t rest = d;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = p;
  if (r_out) *r_out = r;
  return true;
}

std::vector<std::vector<int>> subsets_lex(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m < 0 || m > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (m - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  if (m == 0) out = {{}};
  return out;
}

void QemacInstance::validate() const {
  require(prime_power(d), errc::infeasible_parameters,
          "base field size " + std::to_string(d) + " is not a prime power");
  require(servers >= 1, errc::infeasible_parameters, "need at least one data-server");
  require(!streams.empty(), errc::infeasible_parameters, "need at least one data stream");
  require(!erasures.empty(), errc::infeasible_parameters,
          "need at least one erasure pattern (possibly empty)");
  auto check_set = [&](const std::vector<int>& set, bool allow_empty, const char* what) {
    require(allow_empty || !set.empty(), errc::infeasible_parameters,
            std::string(what) + " must be nonempty");
    for (std::size_t i = 0; i < set.size(); ++i) {
      require(set[i] >= 1 && set[i] <= servers, errc::infeasible_parameters,
              std::string(what) + " index out of [1, S]");
      require(i == 0 || set[i] > set[i - 1], errc::infeasible_parameters,
              std::string(what) + " must be strictly increasing");
    }
  };
  for (const auto& w : streams) check_set(w, false, "replica set");
  for (const auto& e : erasures) check_set(e, true, "erasure set");
}

QemacInstance build_symmetric_instance(std::uint32_t d, int S, int alpha, int beta) {
  require(S >= alpha && alpha > beta && beta >= 0, errc::infeasible_parameters,
          "symmetric setting needs S >= alpha > beta >= 0");
  QemacInstance inst;
  inst.d = d;
  inst.servers = S;
  inst.helper = true;
  inst.streams = subsets_lex(S, alpha);
  inst.erasures = subsets_lex(S, beta);
  inst.symmetric = std::make_pair(alpha, beta);
  inst.validate();
  return inst;
}

}  // namespace qemac
