#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcut/types.hpp"

namespace qcut {

/// Probability mass over bitstrings of fixed width, stored densely.
/// Index bit j corresponds to string position j (little-endian keys).
/// Reconstructed distributions may carry signed masses before clipping.
struct Distribution {
  int n_bits = 0;
  RealVector mass;  // size 1 << n_bits

  Distribution() : mass(RealVector::Zero(1)) {}
  explicit Distribution(int bits)
      : n_bits(bits), mass(RealVector::Zero(int64_t{1} << bits)) {}

  double total() const { return mass.sum(); }

  std::string key(int64_t index) const;
  std::map<std::string, double> as_map() const;
};

double l1_distance(const Distribution& p, const Distribution& q);

/// Hellinger fidelity (sum_i sqrt(p_i q_i))^2. Negative masses are clipped
/// to zero and both inputs renormalized first.
double fidelity(const Distribution& p, const Distribution& q);

/// Clips negative masses to zero and renormalizes to unit total.
Distribution clipped(const Distribution& p);

/// Independent readout bit-flip with probability p on every bit.
Distribution apply_readout_flip(const Distribution& d, double p);

/// Marginal over the given bit positions (in the given order).
Distribution marginalize(const Distribution& d, const std::vector<int>& bits);

/// JSON map bitstring -> float with 17 significant digits, keys in index order.
std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const std::string& text);

}  // namespace qcut
