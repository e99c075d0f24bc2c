#pragma once

#include <cmath>
#include <cstddef>

namespace testing {

// |freq - p| <= k * sqrt(p(1-p)/N)
inline bool within_binomial_sigma(double freq, double p, std::size_t trials, double k = 3.0) {
  return std::abs(freq - p) <= k * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

inline double frequency(std::size_t hits, std::size_t trials) {
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace testing
