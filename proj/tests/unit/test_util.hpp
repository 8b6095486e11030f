#pragma once

#include <algorithm>
#include <cmath>

namespace testutil {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// |got - want| / max(1, |want|)
inline double mixed_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace testutil
