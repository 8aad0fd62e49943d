#include "qcut/metrics.hpp"

#include <cmath>
#include <map>

namespace qcut {

namespace {

int filtered_count(const Circuit& c, bool two_qubit_only) {
  return two_qubit_only ? c.two_qubit_count() : c.gate_count();
}

}  // namespace

AgtReport agt(const WirecutPlan& plan, const Circuit& uncut, bool two_qubit_only) {
  AgtReport report;
  report.uncut_total = filtered_count(uncut, two_qubit_only);

  std::map<VariantKey, const SubcircuitVariant*> index;
  for (const SubcircuitVariant& v : plan.variants) index[v.key] = &v;

  const int k = static_cast<int>(plan.part.cuts.size());
  const int n_frags = static_cast<int>(plan.part.fragments.size());
  std::vector<std::vector<double>> contrib(n_frags);  // per fragment, per local tuple
  std::vector<std::vector<int>> local_ids(n_frags);

  for (int fi = 0; fi < n_frags; ++fi) {
    const Fragment& f = plan.part.fragments[fi];
    local_ids[fi] = f.out_cut_ids;
    local_ids[fi].insert(local_ids[fi].end(), f.in_cut_ids.begin(), f.in_cut_ids.end());
    const int kf = static_cast<int>(local_ids[fi].size());
    const int n_outs = static_cast<int>(f.out_cut_ids.size());
    const size_t n_tuples = size_t{1} << (2 * kf);
    contrib[fi].assign(n_tuples, 0.0);

    for (size_t tau = 0; tau < n_tuples; ++tau) {
      std::vector<std::vector<UpEntry>> up;
      std::vector<std::vector<DownEntry>> down;
      for (int j = 0; j < kf; ++j) {
        int term = static_cast<int>((tau >> (2 * j)) & 3);
        Basis b = plan.biased[local_ids[fi][j]];
        if (j < n_outs) {
          up.push_back(upstream_entries(b, term, plan.msdo));
        } else {
          down.push_back(downstream_entries(b, term));
        }
      }
      double total = 0.0;
      std::vector<size_t> idx(kf, 0);
      while (true) {
        VariantKey key;
        key.fragment = fi;
        double w = 1.0;
        for (int j = 0; j < n_outs; ++j) {
          const UpEntry& e = up[j][idx[j]];
          key.outs.push_back(e.setting);
          // Postselected pairs are averaged; measured settings run once.
          if (e.setting.kind == OutKind::Postselect) w *= 0.5;
        }
        for (int j = n_outs; j < kf; ++j) {
          const DownEntry& e = down[j - n_outs][idx[j]];
          key.inits.push_back(e.label);
          w *= std::abs(e.coeff) / 2.0;
        }
        auto it = index.find(key);
        if (it == index.end()) throw Error(ErrorCode::Invalid, "plan/variant mismatch");
        total += w * filtered_count(it->second->optimized, two_qubit_only);

        int j = 0;
        for (; j < kf; ++j) {
          size_t width = j < n_outs ? up[j].size() : down[j - n_outs].size();
          if (++idx[j] < width) break;
          idx[j] = 0;
        }
        if (j == kf) break;
      }
      contrib[fi][tau] = total;
    }
    double mean = 0.0;
    for (double c : contrib[fi]) mean += c;
    report.total += mean / static_cast<double>(n_tuples);
  }

  if (k <= 8) {
    const size_t n_tuples = size_t{1} << (2 * k);
    report.per_term.assign(n_tuples, 0.0);
    for (size_t tau = 0; tau < n_tuples; ++tau) {
      for (int fi = 0; fi < n_frags; ++fi) {
        size_t local = 0;
        for (size_t j = 0; j < local_ids[fi].size(); ++j) {
          local |= ((tau >> (2 * local_ids[fi][j])) & 3) << (2 * j);
        }
        report.per_term[tau] += contrib[fi][local];
      }
    }
  }
  return report;
}

AgtReport agt(const NsccPlan& plan, const Circuit& uncut, bool two_qubit_only) {
  AgtReport report;
  report.uncut_total = filtered_count(uncut, two_qubit_only);

  const int k = static_cast<int>(plan.cuts.size());
  const size_t n_tuples = size_t{1} << (2 * k);
  report.per_term.assign(n_tuples, 0.0);
  double sum = 0.0;
  for (size_t tau = 0; tau < n_tuples; ++tau) {
    // Term digit per cut: 0 = I (run in the Z basis), 1 = Z, 2 = X, 3 = Y.
    std::vector<int> basis_idx(k);
    for (int c = 0; c < k; ++c) {
      int t = static_cast<int>((tau >> (2 * c)) & 3);
      basis_idx[c] = t == 0 ? 0 : t - 1;
    }
    double total = 0.0;
    for (size_t combo = 0; combo < (size_t{1} << (2 * k)); ++combo) {
      size_t variant = 0, stride = 1;
      size_t branch = 0;
      for (int c = 0; c < k; ++c) {
        int prep = static_cast<int>((combo >> (2 * c)) & 1);
        int mismatch = static_cast<int>((combo >> (2 * c + 1)) & 1);
        variant += stride * static_cast<size_t>(basis_idx[c] * 2 + prep);
        stride *= 6;
        branch |= static_cast<size_t>(mismatch) << c;
      }
      total += filtered_count(plan.variants[variant].branches[branch].optimized.circuit,
                              two_qubit_only);
    }
    total /= static_cast<double>(size_t{1} << (2 * k));
    report.per_term[tau] = total;
    sum += total;
  }
  report.total = sum / static_cast<double>(n_tuples);
  return report;
}

int64_t subcircuit_count(const WirecutPlan& plan) {
  return static_cast<int64_t>(plan.variants.size());
}

int64_t subcircuit_count(const NsccPlan& plan) {
  return static_cast<int64_t>(plan.variants.size());
}

}  // namespace qcut
