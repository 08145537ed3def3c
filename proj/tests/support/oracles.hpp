#pragma once

// Reference computations written independently of the library code paths
// they check: closed forms, brute-force scans and naive quadrature.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

inline cplx gaussian_cf(double mu, double sigma, double u)
{
  return std::exp(cplx(-0.5 * sigma * sigma * u * u, mu * u));
}

inline cplx gaussian_cf_prime(double mu, double sigma, double u)
{
  return cplx(-sigma * sigma * u, mu) * gaussian_cf(mu, sigma, u);
}

inline cplx gamma_cf(double shape, double scale, double u)
{
  return std::pow(cplx(1.0, -scale * u), -shape);
}

inline double gaussian_pdf(double mu, double sigma, double x)
{
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * pi));
}

inline double cauchy_pdf(double loc, double scale, double x)
{
  const double z = (x - loc) / scale;
  return 1.0 / (pi * scale * (1.0 + z * z));
}

inline double gamma_pdf(double shape, double scale, double x)
{
  if (x <= 0.0)
    return 0.0;
  return std::pow(x, shape - 1.0) * std::exp(-x / scale) / (std::tgamma(shape) * std::pow(scale, shape));
}

// int_{|u|>m} (1 + s^2 u^2)^{-k} du for integer k >= 1, via the reduction
// I_{j+1}(t) = (2j-1)/(2j) I_j(t) - t / (2j (1+t^2)^j), I_1(t) = pi/2 - atan t.
inline double gamma_tail_recursion(int k, double scale, double m)
{
  const double t = scale * m;
  double I = 0.5 * pi - std::atan(t);
  for (int j = 1; j < k; ++j)
    I = (2.0 * j - 1.0) / (2.0 * j) * I - t / (2.0 * j * std::pow(1.0 + t * t, j));
  return 2.0 * I / scale;
}

// Compound Poisson increment cf and its derivative for N(mu, sigma) jumps.
inline cplx levy_gaussian(double lambda_delta, double mu, double sigma, double u)
{
  return std::exp(lambda_delta * (gaussian_cf(mu, sigma, u) - 1.0));
}

inline cplx levy_gaussian_prime(double lambda_delta, double mu, double sigma, double u)
{
  return lambda_delta * gaussian_cf_prime(mu, sigma, u) * levy_gaussian(lambda_delta, mu, sigma, u);
}

// Naive inversion (1/2pi) sum_i w_i h e^{-i u_i x} phi(u_i) over nodes u_i = i h,
// |i| <= k, trapezoid weights.
inline double naive_invert(const std::function<cplx(double)>& phi, double h, long k, double x)
{
  cplx s = 0.0;
  for (long i = -k; i <= k; ++i) {
    const double u = static_cast<double>(i) * h;
    const double w = (i == -k || i == k) ? 0.5 : 1.0;
    s += w * std::exp(cplx(0.0, -u * x)) * phi(u);
  }
  return (s * h / (2.0 * pi)).real();
}

// Trapezoid on a uniform x grid of sum (a - b)^2.
inline double spatial_l2(const std::vector<double>& a, const std::vector<double>& b, double dx)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
    s += w * d * d;
  }
  return s * dx;
}

// Largest index i in [0, last] with mod[i] >= level, or -1.
inline long brute_last_at_or_above(const std::vector<double>& mod, double level, long last)
{
  long best = -1;
  for (long i = 0; i <= last; ++i) {
    if (mod[static_cast<std::size_t>(i)] >= level)
      best = i;
  }
  return best;
}

#ifdef ADACUT_PYTHON
// Strict XML well-formedness through the Python expat parser.
inline bool xml_well_formed(const std::string& text, const std::string& scratch)
{
  {
    std::ofstream out(scratch, std::ios::binary);
    out << text;
  }
  const std::string cmd = std::string(ADACUT_PYTHON) +
                          " -c \"import sys, xml.dom.minidom; xml.dom.minidom.parse(sys.argv[1])\" " +
                          scratch + " >/dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}
#endif

} // namespace oracle
