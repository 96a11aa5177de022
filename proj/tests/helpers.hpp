#pragma once

#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "greenseq/greenseq.hpp"

namespace testutil {

using greenseq::ExchangeMatrix;
using greenseq::Int;

// Random skew-symmetrizable principal part on labels 1..n, |entries| <= 5.
// Built from a random positive diagonal so the symmetrizer always exists.
inline ExchangeMatrix random_principal(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d_dist(1, 3);
  std::uniform_int_distribution<int> c_dist(-2, 2);
  std::vector<int> d(n);
  for (int& v : d) v = d_dist(rng);
  std::vector<std::vector<long>> b(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int c = c_dist(rng);
      if (c == 0) continue;
      int g = std::gcd(d[i], d[j]);
      long bij = static_cast<long>(c) * d[j] / g;
      long bji = -static_cast<long>(c) * d[i] / g;
      if (std::abs(bij) > 5 || std::abs(bji) > 5) {
        bij = c > 0 ? d[j] / g : -d[j] / g;
        bji = c > 0 ? -d[i] / g : d[i] / g;
      }
      b[i][j] = bij;
      b[j][i] = bji;
    }
  }
  return greenseq::square_matrix(b);
}

inline greenseq::ExchangeMatrix chain_matrix(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return greenseq::to_matrix(greenseq::chain_quiver(labels));
}

inline greenseq::Layering constant_layering(const std::vector<int>& labels,
                                            greenseq::LayeringMode mode) {
  std::map<int, long> eta;
  for (int v : labels) eta[v] = 0;
  return greenseq::Layering(std::move(eta), mode);
}

inline greenseq::Layering constant_layering(int n, greenseq::LayeringMode mode) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return constant_layering(labels, mode);
}

}  // namespace testutil
