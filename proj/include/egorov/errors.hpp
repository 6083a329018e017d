#pragma once

#include <stdexcept>
#include <string>

namespace egorov {

// Every way an operation in this library can reject its input.  Kept as a
// closed enum so callers (and the CLI) can map failures to stable names.
enum class Errc {
  non_prime,
  mixed_rings,
  mixed_spaces,
  dimension_mismatch,
  not_splittable,
  index_zero,
  not_separable,
  not_compactly_supported,
  malformed_certificate,
  invalid_phi,
  precondition_violated,
  not_representable,
  not_supported,
  not_invertible,
  parse_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_prime: return "non_prime";
    case Errc::mixed_rings: return "mixed_rings";
    case Errc::mixed_spaces: return "mixed_spaces";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::not_splittable: return "not_splittable";
    case Errc::index_zero: return "index_zero";
    case Errc::not_separable: return "not_separable";
    case Errc::not_compactly_supported: return "not_compactly_supported";
    case Errc::malformed_certificate: return "malformed_certificate";
    case Errc::invalid_phi: return "invalid_phi";
    case Errc::precondition_violated: return "precondition_violated";
    case Errc::not_representable: return "not_representable";
    case Errc::not_supported: return "not_supported";
    case Errc::not_invertible: return "not_invertible";
    case Errc::parse_error: return "parse_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace egorov
