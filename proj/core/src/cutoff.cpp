#include <adacut/cutoff.hpp>
#include <adacut/errors.hpp>

#include <algorithm>
#include <cmath>

namespace adacut {

CutoffResult last_node_at_or_above(const SpectralFunction& phi, double level, double cap)
{
  const auto& g = phi.grid();
  if (!(cap >= 0.0))
    throw ArgumentError("cutoff search: cap must be >= 0");
  const auto end = g.floor_offset(std::min(cap, g.u_max()));

  CutoffResult r;
  r.threshold = level;
  for (auto i = end; i >= 0; --i) {
    if (std::abs(phi.at(i)) >= level) {
      r.node = i;
      r.m_hat = g.node(i);
      r.capped = (i == end);
      return r;
    }
  }
  r.never_crossed = true;
  return r;
}

} // namespace adacut
