#pragma once

// Test-only reference evaluators. They work on std::complex entries directly
// and never touch the realified coordinates the library uses, so they stay
// independent of the code they check.

#include "wigner/space.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using CVec = std::vector<C>;

inline CVec entries(const wigner::Vector& x) {
  CVec out;
  for (std::size_t k = 0; k < x.dim(); ++k) out.push_back(x.entry(k));
  return out;
}

// Re sum_k x_k conj(y_k), scalar by scalar.
inline double real_inner(const CVec& x, const CVec& y) {
  C sum{0.0, 0.0};
  for (std::size_t k = 0; k < x.size(); ++k) sum += x[k] * std::conj(y[k]);
  return sum.real();
}

inline double norm(const CVec& x) { return std::sqrt(real_inner(x, x)); }

inline CVec add(const CVec& x, const CVec& y, C beta = 1.0) {
  CVec out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + beta * y[k];
  return out;
}

inline CVec scale(const CVec& x, C beta) {
  CVec out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = beta * x[k];
  return out;
}

// (x1, x2) -> (x1, conj x2)
inline CVec ratz(const CVec& x) { return {x[0], std::conj(x[1])}; }

// Residual of the two-norm set equation by enumerating both assignments of
// the image pair to the domain pair.
inline double set_equation_residual(double image_plus, double image_minus, double dom_plus,
                                    double dom_minus) {
  const double straight =
      std::max(std::abs(image_plus - dom_plus), std::abs(image_minus - dom_minus));
  const double crossed =
      std::max(std::abs(image_plus - dom_minus), std::abs(image_minus - dom_plus));
  return std::min(straight, crossed);
}

}  // namespace oracle
