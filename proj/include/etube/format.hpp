#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <string>

namespace etube {

/// Locale-independent decimal with 15 significant digits.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

/// `a+bi` with no spaces.
inline std::string format_complex(std::complex<double> z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    out += "-" + format_double(-im);
  } else {
    out += "+" + format_double(im);
  }
  return out + "i";
}

}  // namespace etube
