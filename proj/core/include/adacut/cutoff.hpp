#pragma once

#include <adacut/spectral.hpp>

namespace adacut {

//! Outcome of a threshold-crossing cutoff search.
struct CutoffResult
{
  double m_hat = 0.0;        //!< selected cutoff, a grid node
  std::ptrdiff_t node = 0;   //!< its non-negative node offset
  double threshold = 0.0;    //!< level the modulus was compared against
  bool capped = false;       //!< the search endpoint itself qualified
  bool never_crossed = false; //!< no node reached the threshold
};

//! Largest node u in [0, cap] with |phi(u)| >= level. cap is floored to the
//! grid and clipped to u_max. If no node qualifies the result is m_hat = 0
//! with never_crossed set.
CutoffResult last_node_at_or_above(const SpectralFunction& phi, double level, double cap);

} // namespace adacut
