#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fuzzyf/fmetric.hpp"
#include "fuzzyf/parallel.hpp"

namespace fuzzyf {

template <typename P>
struct FiniteSubset {
  std::vector<P> points;
  FMetricConfig<P> cfg;
};

// Certificate that a finite set is fuzzy-bounded at time t0: beta is the
// minimum pairwise grade and every pair satisfies M > 1 - r. Because beta can
// sit far below the spacing of doubles around 1, the complement 1 - r is
// carried explicitly instead of being recovered from r.
struct BoundednessWitness {
  double beta = 1.0;
  double r = 0.5;
  double one_minus_r = 0.5;
};

// Reference loop for the pairwise minimum grade.
template <typename P>
double pairwise_min_grade_serial(const FiniteSubset<P>& set, double t0) {
  const std::size_t n = set.points.size();
  double beta = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      beta = std::min(beta, set.cfg.metric(set.points[i], set.points[j], t0));
  return beta;
}

// Minimum over unordered pairs, parallel over rows. min is an exact
// reduction, so the schedule cannot change the result; round-robin rows
// balance the shrinking triangle.
template <typename P>
double pairwise_min_grade(const FiniteSubset<P>& set, double t0,
                          Exec exec = Exec::parallel) {
  if (exec == Exec::serial) return pairwise_min_grade_serial(set, t0);
  const long n = static_cast<long>(set.points.size());
  double beta = 1.0;
#pragma omp parallel for reduction(min : beta) schedule(static, 1)
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      beta = std::min(beta, set.cfg.metric(set.points[i], set.points[j], t0));
  return beta;
}

// beta = min pairwise grade at t0; any r with beta > 1 - r certifies
// boundedness. Returns r = 1 - beta/2 when beta < 1, else r = 1/2.
template <typename P>
BoundednessWitness boundedness_witness(const FiniteSubset<P>& set, double t0,
                                       Exec exec = Exec::parallel) {
  if (set.points.empty())
    throw std::invalid_argument("boundedness_witness: empty set");
  if (!(t0 > 0.0))
    throw std::invalid_argument("boundedness_witness: t0 must be > 0");
  BoundednessWitness w;
  w.beta = pairwise_min_grade(set, t0, exec);
  if (!(w.beta > 0.0))
    throw std::domain_error("boundedness_witness: grade floor reached 0");
  w.one_minus_r = w.beta < 1.0 ? w.beta / 2.0 : 0.5;
  w.r = 1.0 - w.one_minus_r;
  return w;
}

// Assignment of every set point to a net point that r-epsilon-covers it
// (M(a, b, epsilon) > 1 - r), or the first uncovered point.
template <typename P>
struct NetCertificate {
  bool covered = false;
  double r = 0.0;
  double epsilon = 0.0;
  std::vector<std::size_t> assignment;     // index into the net, per set point
  std::optional<std::size_t> uncovered;    // index into the set points
};

template <typename P>
NetCertificate<P> is_net(const FiniteSubset<P>& set, const std::vector<P>& net,
                         double r, double epsilon) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("is_net: r must be in (0,1)");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("is_net: epsilon must be > 0");
  NetCertificate<P> cert;
  cert.r = r;
  cert.epsilon = epsilon;
  cert.covered = true;
  cert.assignment.assign(set.points.size(), 0);
  for (std::size_t a = 0; a < set.points.size(); ++a) {
    bool found = false;
    for (std::size_t b = 0; b < net.size(); ++b) {
      if (set.cfg.metric(set.points[a], net[b], epsilon) > 1.0 - r) {
        cert.assignment[a] = b;
        found = true;
        break;
      }
    }
    if (!found) {
      cert.covered = false;
      cert.uncovered = a;
      cert.assignment.clear();
      return cert;
    }
  }
  return cert;
}

// Greedy covering construction: start from the first element, repeatedly
// add the first point not yet covered. Chosen
// points are pairwise separated (M <= 1 - r at epsilon). If max_points > 0
// and the budget is exhausted before covering, the partial separated family
// is returned with is_net = false.
template <typename P>
struct GreedyResult {
  bool is_net = false;
  std::vector<std::size_t> chosen;  // indices into the set points
};

template <typename P>
GreedyResult<P> greedy_separated_points(const FiniteSubset<P>& set, double r,
                                        double epsilon,
                                        std::size_t max_points = 0) {
  if (set.points.empty())
    throw std::invalid_argument("greedy_separated_points: empty set");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("greedy_separated_points: r must be in (0,1)");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("greedy_separated_points: epsilon must be > 0");

  GreedyResult<P> out;
  out.chosen.push_back(0);
  for (;;) {
    std::optional<std::size_t> next;
    for (std::size_t a = 0; a < set.points.size(); ++a) {
      bool covered = false;
      for (std::size_t c : out.chosen) {
        if (set.cfg.metric(set.points[a], set.points[c], epsilon) > 1.0 - r) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        next = a;
        break;
      }
    }
    if (!next) {
      out.is_net = true;
      return out;
    }
    if (max_points > 0 && out.chosen.size() >= max_points) return out;
    out.chosen.push_back(*next);
  }
}

template <typename P>
struct BruteForceResult {
  bool exists = false;
  std::vector<std::size_t> net;  // indices into the candidate pool
};

// Exhaustive minimum net over a candidate pool. Masks are scanned in value
// order keeping strict popcount improvements, so the winner is the smallest
// mask of minimal size and the result is deterministic. Throws
// std::length_error beyond 20 candidates.
template <typename P>
BruteForceResult<P> min_net_bruteforce(const FiniteSubset<P>& set,
                                       const std::vector<P>& candidates,
                                       double r, double epsilon) {
  if (candidates.size() > 20)
    throw std::length_error("min_net_bruteforce: more than 20 candidates");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("min_net_bruteforce: r must be in (0,1)");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("min_net_bruteforce: epsilon must be > 0");

  const std::size_t nc = candidates.size();
  const std::size_t na = set.points.size();
  // coverage bitmask blocks per candidate
  const std::size_t nb = (na + 63) / 64;
  std::vector<std::vector<std::uint64_t>> covers(
      nc, std::vector<std::uint64_t>(nb, 0));
  for (std::size_t b = 0; b < nc; ++b)
    for (std::size_t a = 0; a < na; ++a)
      if (set.cfg.metric(set.points[a], candidates[b], epsilon) > 1.0 - r)
        covers[b][a / 64] |= 1ull << (a % 64);
  std::vector<std::uint64_t> full(nb, 0);
  for (std::size_t a = 0; a < na; ++a) full[a / 64] |= 1ull << (a % 64);

  BruteForceResult<P> best;
  std::size_t best_size = nc + 1;
  unsigned best_mask = 0;
  const unsigned limit = 1u << nc;
  std::vector<std::uint64_t> acc(nb);
  for (unsigned mask = 1; mask < limit; ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best_size) continue;
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t b = 0; b < nc; ++b)
      if ((mask >> b) & 1u)
        for (std::size_t blk = 0; blk < nb; ++blk) acc[blk] |= covers[b][blk];
    if (acc == full) {
      best_size = size;
      best_mask = mask;
      best.exists = true;
    }
  }
  if (best.exists) {
    for (std::size_t b = 0; b < nc; ++b)
      if ((best_mask >> b) & 1u) best.net.push_back(b);
  }
  return best;
}

}  // namespace fuzzyf
