#pragma once
#include <stdexcept>
#include <string>

namespace dnls {

// Error taxonomy for the whole library. Every throw site uses fail() so the
// condition name travels with the message and callers can switch on code().
enum class errc {
  not_power_of_two,
  bad_domain,
  regime_unsupported,
  tail_too_fat,
  left_tail_not_decayed,
  step_breaks_regime,
  grid_mismatch,
  non_finite,
  no_convergence,
  regime_lost,
  separation_too_small,
  rank_deficient,
  io_failure,
  bad_config,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

}  // namespace dnls
