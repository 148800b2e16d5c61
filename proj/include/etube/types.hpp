#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace etube {

// Homogeneous vectors have at most kMaxHomogeneous entries (n <= 7). Using a
// fixed maximum keeps every vector on the stack in the sampling loops.
inline constexpr int kMaxHomogeneous = 8;

using Complex = std::complex<double>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxHomogeneous, 1>;
using CVec = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, kMaxHomogeneous, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxHomogeneous,
                          kMaxHomogeneous>;
using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxHomogeneous,
                           kMaxHomogeneous>;

enum class ErrorCode {
  InvalidArgument = 1,
  RealPoint,
  Collinearity,
  Degenerate,
  Infinity,
  NotInterior,
  Validation,
  InsideTube,
  NotBoundary,
  Representation,
  EmptySlice,
  OutsideTube,
  UnsupportedConfiguration,
  RealInput,
  ZeroDirection,
  Resolution,
  GroupValidation,
  Parse,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline CVec complexify(const Vec& v) { return v.cast<Complex>(); }

inline Vec real_part(const CVec& v) { return v.real(); }
inline Vec imag_part(const CVec& v) { return v.imag(); }

}  // namespace etube
