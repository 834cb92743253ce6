#pragma once

#include <stdexcept>
#include <string>

namespace qemac {

/// Error categories surfaced by the library. The CLI maps these to exit codes.
enum class errc {
  non_prime_characteristic,
  unsupported_size,
  not_full_column_rank,
  infeasible,
  retry_exhausted,
  shape_mismatch,
  not_sso,
  index_out_of_range,
  unknown_server,
  wrong_block_length,
  invalid_pattern,
  length_mismatch,
  field_too_small,
  infeasible_parameters,
  too_large,
  even_characteristic_unsupported,
  phase_inconsistency,
  dimension_mismatch,
  division_by_zero,
  overflow,
  invalid_argument,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

}  // namespace qemac
