#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace adacut::detail {

//! Integral of a smooth real function over [a, b] as a sum of fixed-order
//! Gauss-Kronrod panels no wider than `panel`.
template<class F>
double integrate_panels(F&& f, double a, double b, double panel = 0.5)
{
  if (!(b > a))
    return 0.0;
  const auto count = static_cast<long>(std::ceil((b - a) / panel));
  const double width = (b - a) / static_cast<double>(count);
  double sum = 0.0;
  for (long p = 0; p < count; ++p) {
    const double lo = a + static_cast<double>(p) * width;
    const double hi = (p + 1 == count) ? b : lo + width;
    sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0);
  }
  return sum;
}

} // namespace adacut::detail
