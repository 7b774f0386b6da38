#pragma once

#include <stdexcept>
#include <string>

namespace flagcalc {

// Error codes shared by the C++ core and the C API surface.
enum class errc {
  invalid_argument,
  bad_diagonal,
  bad_pair,
  asymmetric_zero,
  not_symmetrizable,
  unclassifiable_component,
  unsupported_type,
  index_out_of_range,
  non_integral,
  non_terminating,
  not_reduced,
  not_found,
  capacity_exceeded,
  budget_exceeded,
  inconsistent_derivation,
  checkpoint_corrupt,
  io_error,
  parse_error,
  internal_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::bad_diagonal: return "bad_diagonal";
    case errc::bad_pair: return "bad_pair";
    case errc::asymmetric_zero: return "asymmetric_zero";
    case errc::not_symmetrizable: return "not_symmetrizable";
    case errc::unclassifiable_component: return "unclassifiable_component";
    case errc::unsupported_type: return "unsupported_type";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::non_integral: return "non_integral";
    case errc::non_terminating: return "non_terminating";
    case errc::not_reduced: return "not_reduced";
    case errc::not_found: return "not_found";
    case errc::capacity_exceeded: return "capacity_exceeded";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::inconsistent_derivation: return "inconsistent_derivation";
    case errc::checkpoint_corrupt: return "checkpoint_corrupt";
    case errc::io_error: return "io_error";
    case errc::parse_error: return "parse_error";
    case errc::internal_error: return "internal_error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace flagcalc
