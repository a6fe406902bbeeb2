#pragma once

// Shared error types, numeric constants and small utilities.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wgband {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Error hierarchy; the CLI maps these onto process exit codes
// (config error -> 2, solver failure -> 3, verification failure -> 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GeometryError : ConfigError {  // bad geometric input is a config problem
  using ConfigError::ConfigError;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative agreement helper used all over the tests and verify suites.
inline double rel_err(double value, double reference) {
  const double scale = std::abs(reference);
  return scale > 0 ? std::abs(value - reference) / scale : std::abs(value);
}

// FNV-1a 64-bit; used to fingerprint config files in reports.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string format_sig(double v, int significant_digits = 12);

}  // namespace wgband
