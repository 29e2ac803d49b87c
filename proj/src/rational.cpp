#include "pgcl/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pgcl {

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Int int_from_digits(const std::string& digits) {
  Int v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("int_from_digits: non-digit input");
    v = v * 10 + (c - '0');
  }
  return v;
}

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') {
    neg = true;
    ++i;
  }
  auto digits = [&](std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  std::string whole = digits(i);
  if (whole.empty()) return std::nullopt;
  if (i == text.size()) {
    Rat r{int_from_digits(whole)};
    return neg ? Rat(-r) : r;
  }
  if (text[i] == '/') {
    ++i;
    std::string den = digits(i);
    if (den.empty() || i != text.size()) return std::nullopt;
    Int d = int_from_digits(den);
    if (d == 0) return std::nullopt;
    Rat r{int_from_digits(whole), d};
    return neg ? Rat(-r) : r;
  }
  if (text[i] == '.') {
    ++i;
    std::string frac = digits(i);
    if (frac.empty() || i != text.size()) return std::nullopt;
    Int num = int_from_digits(whole + frac);
    Int den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    Rat r{num, den};
    return neg ? Rat(-r) : r;
  }
  return std::nullopt;
}

Rat rationalize(double x, const Int& max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite value");
  bool neg = x < 0;
  double v = neg ? -x : x;
  // Continued-fraction convergents p/q with q bounded by max_den.
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 1e18) break;
    Int a{static_cast<long long>(fl)};
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r = (q1 == 0) ? Rat(p0, q0) : Rat(p1, q1);
  return neg ? Rat(-r) : r;
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  Int num = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rat r{num};
  if (exp >= 0) {
    r *= Rat(Int(1) << exp);
  } else {
    r /= Rat(Int(1) << -exp);
  }
  return r;
}

double rat_to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace pgcl
