#pragma once

#include <cstddef>
#include <span>

namespace fuzzyf {

// Selects between the OpenMP kernel and the plain serial reference.
// Both paths must produce bit-identical results; tests enforce this.
enum class Exec { serial, parallel };

// Summation with a fixed reduction tree. The tree shape depends only on the
// span length, never on thread count, so quadrature sums are reproducible
// bit-for-bit across schedules.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace fuzzyf
