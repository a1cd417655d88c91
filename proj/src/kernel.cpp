#include "ilap/kernel.hpp"

#include <cmath>

#include "ilap/error.hpp"

namespace ilap {

KernelSpec KernelSpec::gaussian(double sigma) {
  KernelSpec k;
  k.family = KernelFamily::Gaussian;
  k.bandwidth = sigma;
  k.validate();
  return k;
}

KernelSpec KernelSpec::tent(double radius) {
  KernelSpec k;
  k.family = KernelFamily::Tent;
  k.bandwidth = radius;
  k.validate();
  return k;
}

KernelSpec KernelSpec::quartic_self_tuning(int k_sigma) {
  KernelSpec k;
  k.family = KernelFamily::QuarticSelfTuning;
  k.k_sigma = k_sigma;
  k.validate();
  return k;
}

KernelSpec KernelSpec::tabulated(std::vector<std::pair<double, double>> nodes) {
  KernelSpec k;
  k.family = KernelFamily::Tabulated;
  k.table = std::move(nodes);
  k.validate();
  return k;
}

void KernelSpec::validate() const {
  switch (family) {
    case KernelFamily::Gaussian:
    case KernelFamily::Tent:
      require(bandwidth > 0.0 && std::isfinite(bandwidth), "kernel bandwidth must be positive");
      break;
    case KernelFamily::QuarticSelfTuning:
      require(k_sigma >= 1, "k_sigma must be positive");
      break;
    case KernelFamily::Tabulated: {
      require(table.size() >= 2, "tabulated kernel needs at least two nodes");
      require(table.front().first == 0.0, "tabulated kernel must start at t = 0");
      require(table.front().second > 0.0, "tabulated kernel needs eta(0) > 0");
      for (std::size_t i = 1; i < table.size(); ++i) {
        require(table[i].first > table[i - 1].first, "tabulated nodes must be increasing in t");
        require(table[i].second <= table[i - 1].second && table[i].second >= 0.0,
                "tabulated kernel must be nonnegative and nonincreasing");
      }
      require(std::isfinite(table.back().first), "tabulated kernel support must be finite");
      break;
    }
  }
}

double KernelSpec::operator()(double t) const {
  switch (family) {
    case KernelFamily::Gaussian: {
      const double r = t / bandwidth;
      return std::exp(-r * r);
    }
    case KernelFamily::Tent:
      return t < bandwidth ? 1.0 - t / bandwidth : 0.0;
    case KernelFamily::QuarticSelfTuning:
      fail(ErrorKind::InvalidParameter,
           "self-tuning kernel has a per-row bandwidth; use self_tuning_weights");
    case KernelFamily::Tabulated: {
      if (t >= table.back().first) return 0.0;
      std::size_t hi = 1;
      while (table[hi].first <= t) ++hi;
      const auto& [t0, e0] = table[hi - 1];
      const auto& [t1, e1] = table[hi];
      return e0 + (e1 - e0) * (t - t0) / (t1 - t0);
    }
  }
  return 0.0;
}

double KernelSpec::support_radius() const {
  switch (family) {
    case KernelFamily::Tent: return bandwidth;
    case KernelFamily::Tabulated: {
      // Last node where eta is still positive bounds the support.
      for (std::size_t i = 0; i + 1 < table.size(); ++i)
        if (table[i + 1].second == 0.0) return table[i + 1].first;
      return table.back().first;
    }
    default: return std::numeric_limits<double>::infinity();
  }
}

}  // namespace ilap
