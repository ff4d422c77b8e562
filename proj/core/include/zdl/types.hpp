#pragma once

#include <cmath>
#include <complex>

namespace zdl {

using Complex = std::complex<double>;

/// A point s = re + i*im of the complex plane; the argument of every series.
struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;

  constexpr ComplexPoint() = default;
  constexpr ComplexPoint(double r, double i = 0.0) : re(r), im(i) {}
  explicit ComplexPoint(Complex z) : re(z.real()), im(z.imag()) {}

  Complex value() const { return {re, im}; }
  bool finite() const { return std::isfinite(re) && std::isfinite(im); }
  ComplexPoint conj() const { return {re, -im}; }

  friend constexpr bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

/// Diameter bound of a point set: the diagonal of its bounding box.
/// Never smaller than the true diameter and at most sqrt(2) times it.
template <class It>
double bounding_diameter(It first, It last) {
  if (first == last) return 0.0;
  double re_lo = first->real(), re_hi = re_lo;
  double im_lo = first->imag(), im_hi = im_lo;
  for (auto it = first; it != last; ++it) {
    re_lo = std::min(re_lo, it->real());
    re_hi = std::max(re_hi, it->real());
    im_lo = std::min(im_lo, it->imag());
    im_hi = std::max(im_hi, it->imag());
  }
  return std::hypot(re_hi - re_lo, im_hi - im_lo);
}

}  // namespace zdl
