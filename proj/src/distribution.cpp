#include "qcut/distribution.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace qcut {

std::string Distribution::key(int64_t index) const {
  std::string s(n_bits, '0');
  for (int j = 0; j < n_bits; ++j) {
    if ((index >> j) & 1) s[j] = '1';
  }
  return s;
}

std::map<std::string, double> Distribution::as_map() const {
  std::map<std::string, double> out;
  for (int64_t i = 0; i < mass.size(); ++i) out[key(i)] = mass[i];
  return out;
}

double l1_distance(const Distribution& p, const Distribution& q) {
  if (p.n_bits != q.n_bits) throw Error(ErrorCode::Invalid, "distribution width mismatch");
  return (p.mass - q.mass).cwiseAbs().sum();
}

Distribution clipped(const Distribution& p) {
  Distribution out = p;
  out.mass = out.mass.cwiseMax(0.0);
  double total = out.mass.sum();
  if (total <= 0.0) throw Error(ErrorCode::Invalid, "distribution is all-zero after clipping");
  out.mass /= total;
  return out;
}

double fidelity(const Distribution& p, const Distribution& q) {
  if (p.n_bits != q.n_bits) throw Error(ErrorCode::Invalid, "distribution width mismatch");
  Distribution cp = clipped(p), cq = clipped(q);
  double bc = (cp.mass.cwiseProduct(cq.mass)).cwiseSqrt().sum();
  return bc * bc;
}

Distribution apply_readout_flip(const Distribution& d, double p) {
  if (p == 0.0) return d;
  Distribution out = d;
  for (int j = 0; j < d.n_bits; ++j) {
    RealVector next = RealVector::Zero(out.mass.size());
    for (int64_t i = 0; i < out.mass.size(); ++i) {
      next[i] += (1.0 - p) * out.mass[i];
      next[i ^ (int64_t{1} << j)] += p * out.mass[i];
    }
    out.mass = std::move(next);
  }
  return out;
}

Distribution marginalize(const Distribution& d, const std::vector<int>& bits) {
  Distribution out(static_cast<int>(bits.size()));
  for (int64_t i = 0; i < d.mass.size(); ++i) {
    int64_t k = 0;
    for (size_t j = 0; j < bits.size(); ++j) {
      if ((i >> bits[j]) & 1) k |= int64_t{1} << j;
    }
    out.mass[k] += d.mass[i];
  }
  return out;
}

std::string distribution_to_json(const Distribution& d) {
  // Built by hand so golden files carry exactly 17 significant digits.
  std::string out = "{";
  char buf[64];
  for (int64_t i = 0; i < d.mass.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", d.mass[i]);
    if (i) out += ",";
    out += "\"" + d.key(i) + "\":" + buf;
  }
  out += "}";
  return out;
}

Distribution distribution_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int bits = j.empty() ? 0 : static_cast<int>(j.begin().key().size());
  Distribution d(bits);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (static_cast<int>(key.size()) != bits) {
      throw Error(ErrorCode::Invalid, "inconsistent bitstring width");
    }
    int64_t index = 0;
    for (int b = 0; b < bits; ++b) {
      if (key[b] == '1') index |= int64_t{1} << b;
    }
    d.mass[index] = it.value().get<double>();
  }
  return d;
}

}  // namespace qcut
