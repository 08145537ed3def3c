#pragma once

#include <cmath>
#include <span>

namespace adacut {

struct MeanStd
{
  double mean = 0.0;
  double std = 0.0; //!< sample standard deviation, 0 for fewer than 2 values
};

//! Two-pass mean and sample standard deviation, summed in index order.
inline MeanStd mean_std(std::span<const double> xs) noexcept
{
  MeanStd out;
  if (xs.empty())
    return out;
  double s = 0.0;
  for (double x : xs)
    s += x;
  out.mean = s / static_cast<double>(xs.size());
  if (xs.size() < 2)
    return out;
  double ss = 0.0;
  for (double x : xs)
    ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

} // namespace adacut
