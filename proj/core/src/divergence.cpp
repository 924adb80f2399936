// Copyright 2026 The flsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flsim/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace flsim {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr int kBootstrapResamples = 100;
constexpr int kProjectionCount = 32;

double normal_pdf(double x, double mean, double variance) {
  const double z = x - mean;
  return std::exp(-z * z / (2.0 * variance)) /
         std::sqrt(2.0 * M_PI * variance);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Adaptive Simpson quadrature on |f_a - f_b|.
double simpson(const GaussianDist& a, const GaussianDist& b, double lo,
               double hi) {
  const double mid = 0.5 * (lo + hi);
  auto f = [&](double x) {
    return std::abs(normal_pdf(x, a.mean[0], a.variance) -
                    normal_pdf(x, b.mean[0], b.variance));
  };
  return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
}

double adaptive_simpson(const GaussianDist& a, const GaussianDist& b, double lo,
                        double hi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = simpson(a, b, lo, mid);
  const double right = simpson(a, b, mid, hi);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(a, b, lo, mid, left, tol / 2.0, depth - 1) +
         adaptive_simpson(a, b, mid, hi, right, tol / 2.0, depth - 1);
}

}  // namespace

DiscreteDist::DiscreteDist(std::map<int, double> masses)
    : masses_(std::move(masses)) {
  double total = 0.0;
  for (const auto& [outcome, mass] : masses_) {
    if (mass < 0.0) {
      throw std::invalid_argument("distribution masses must be nonnegative");
    }
    total += mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("distribution masses must sum to one");
  }
}

DiscreteDist DiscreteDist::from_weights(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("weights must not all be zero");
  std::map<int, double> masses;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    masses[static_cast<int>(i)] = weights[i] / total;
  }
  DiscreteDist dist;
  dist.masses_ = std::move(masses);
  return dist;
}

double DiscreteDist::mass(int outcome) const {
  auto it = masses_.find(outcome);
  return it == masses_.end() ? 0.0 : it->second;
}

std::vector<int> DiscreteDist::shared_support(const DiscreteDist& a,
                                              const DiscreteDist& b) {
  std::set<int> outcomes;
  for (const auto& [o, m] : a.masses()) outcomes.insert(o);
  for (const auto& [o, m] : b.masses()) outcomes.insert(o);
  return {outcomes.begin(), outcomes.end()};
}

double tv_discrete(const DiscreteDist& a, const DiscreteDist& b) {
  double total = 0.0;
  for (int o : DiscreteDist::shared_support(a, b)) {
    total += std::abs(a.mass(o) - b.mass(o));
  }
  return 0.5 * total;
}

double tv_gaussian_1d(const GaussianDist& a, const GaussianDist& b) {
  if (a.variance <= 0.0 || b.variance <= 0.0) {
    throw std::invalid_argument("Gaussian variance must be positive");
  }
  if (a.mean.dim() != 1 || b.mean.dim() != 1) {
    throw std::invalid_argument("tv_gaussian_1d requires dimension one");
  }
  if (a.variance == b.variance) {
    const double sigma = std::sqrt(a.variance);
    const double shift = std::abs(a.mean[0] - b.mean[0]);
    return 2.0 * normal_cdf(shift / (2.0 * sigma)) - 1.0;
  }
  const double spread =
      10.0 * std::sqrt(std::max(a.variance, b.variance));
  const double lo = std::min(a.mean[0], b.mean[0]) - spread;
  const double hi = std::max(a.mean[0], b.mean[0]) + spread;
  const double whole = simpson(a, b, lo, hi);
  return 0.5 * adaptive_simpson(a, b, lo, hi, whole, 1e-6, 40);
}

namespace {

// Shared equal-width binning over d <= 3 coordinates; cells are flattened
// to a single index.
struct Binning {
  std::vector<double> lo;
  std::vector<double> width;
  int bins_per_dim = 0;
  std::size_t dim = 0;

  std::size_t cell(const ParamVector& x) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      double t = (x[j] - lo[j]) / width[j];
      int b = static_cast<int>(t);
      b = std::clamp(b, 0, bins_per_dim - 1);
      idx = idx * static_cast<std::size_t>(bins_per_dim) +
            static_cast<std::size_t>(b);
    }
    return idx;
  }
};

Binning make_binning(const std::vector<ParamVector>& a,
                     const std::vector<ParamVector>& b, int bins_per_dim) {
  Binning bin;
  bin.dim = a.front().dim();
  bin.bins_per_dim = bins_per_dim;
  bin.lo.assign(bin.dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(bin.dim, -std::numeric_limits<double>::infinity());
  for (const auto* sample : {&a, &b}) {
    for (const ParamVector& x : *sample) {
      for (std::size_t j = 0; j < bin.dim; ++j) {
        bin.lo[j] = std::min(bin.lo[j], x[j]);
        hi[j] = std::max(hi[j], x[j]);
      }
    }
  }
  bin.width.resize(bin.dim);
  for (std::size_t j = 0; j < bin.dim; ++j) {
    const double span = hi[j] - bin.lo[j];
    const double scale =
        std::max({1.0, std::abs(bin.lo[j]), std::abs(hi[j])});
    if (span <= 1e-12 * scale) {
      // The coordinate is constant up to rounding noise; a single cell keeps
      // point masses from being split by that noise.
      bin.width[j] = std::numeric_limits<double>::max();
    } else {
      // Slight padding so the maximum lands inside the last cell.
      bin.width[j] = span * (1.0 + 1e-9) / bins_per_dim;
    }
  }
  return bin;
}

double histogram_tv(const std::vector<std::size_t>& cells_a,
                    const std::vector<std::size_t>& cells_b,
                    std::size_t n_cells) {
  std::vector<double> pa(n_cells, 0.0), pb(n_cells, 0.0);
  for (std::size_t c : cells_a) pa[c] += 1.0 / cells_a.size();
  for (std::size_t c : cells_b) pb[c] += 1.0 / cells_b.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n_cells; ++i) total += std::abs(pa[i] - pb[i]);
  return 0.5 * total;
}

std::vector<std::size_t> resample(const std::vector<std::size_t>& cells,
                                  RandomStream& stream) {
  std::vector<std::size_t> out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out[i] = cells[static_cast<std::size_t>(stream.uniform() * cells.size())];
  }
  return out;
}

// Bias-corrected histogram TV: subtracts the expected bin-noise inflation
// estimated by resampling both arms from the pooled sample (true TV zero),
// and reports the bootstrap standard error of the raw statistic.
TvEstimate corrected_tv(const std::vector<std::size_t>& cells_a,
                        const std::vector<std::size_t>& cells_b,
                        std::size_t n_cells, RandomStream& stream) {
  const double raw = histogram_tv(cells_a, cells_b, n_cells);

  std::vector<std::size_t> pooled = cells_a;
  pooled.insert(pooled.end(), cells_b.begin(), cells_b.end());

  double null_sum = 0.0;
  double boot_sum = 0.0, boot_sq = 0.0;
  for (int r = 0; r < kBootstrapResamples; ++r) {
    std::vector<std::size_t> na(cells_a.size()), nb(cells_b.size());
    for (auto& c : na) {
      c = pooled[static_cast<std::size_t>(stream.uniform() * pooled.size())];
    }
    for (auto& c : nb) {
      c = pooled[static_cast<std::size_t>(stream.uniform() * pooled.size())];
    }
    null_sum += histogram_tv(na, nb, n_cells);

    const double boot = histogram_tv(resample(cells_a, stream),
                                     resample(cells_b, stream), n_cells);
    boot_sum += boot;
    boot_sq += boot * boot;
  }
  const double null_bias = null_sum / kBootstrapResamples;
  const double boot_mean = boot_sum / kBootstrapResamples;
  const double boot_var =
      std::max(0.0, boot_sq / kBootstrapResamples - boot_mean * boot_mean);

  TvEstimate est;
  est.estimate = std::max(0.0, raw - null_bias);
  est.std_err = std::sqrt(boot_var * kBootstrapResamples /
                         (kBootstrapResamples - 1.0));
  return est;
}

int freedman_diaconis_bins(const std::vector<ParamVector>& a,
                           const std::vector<ParamVector>& b) {
  std::vector<double> pooled;
  pooled.reserve(a.size() + b.size());
  for (const auto& x : a) pooled.push_back(x[0]);
  for (const auto& x : b) pooled.push_back(x[0]);
  std::sort(pooled.begin(), pooled.end());
  const std::size_t n = pooled.size();
  const double q1 = pooled[n / 4];
  const double q3 = pooled[(3 * n) / 4];
  const double iqr = q3 - q1;
  const double span = pooled.back() - pooled.front();
  if (iqr <= 0.0 || span <= 0.0) return 16;
  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  return std::clamp(static_cast<int>(span / width), 16, 256);
}

}  // namespace

TvEstimate tv_monte_carlo(const std::vector<ParamVector>& sample_a,
                          const std::vector<ParamVector>& sample_b, int bins,
                          RandomStream& stream) {
  if (sample_a.empty() || sample_b.empty()) {
    throw std::invalid_argument("tv_monte_carlo needs nonempty samples");
  }
  if (bins == 0) bins = freedman_diaconis_bins(sample_a, sample_b);
  if (bins < 2) throw std::invalid_argument("tv_monte_carlo needs bins >= 2");

  const std::size_t d = sample_a.front().dim();
  if (d <= 3) {
    const Binning bin = make_binning(sample_a, sample_b, bins);
    std::vector<std::size_t> cells_a(sample_a.size()),
        cells_b(sample_b.size());
    for (std::size_t i = 0; i < sample_a.size(); ++i) {
      cells_a[i] = bin.cell(sample_a[i]);
    }
    for (std::size_t i = 0; i < sample_b.size(); ++i) {
      cells_b[i] = bin.cell(sample_b[i]);
    }
    std::size_t n_cells = 1;
    for (std::size_t j = 0; j < d; ++j) {
      n_cells *= static_cast<std::size_t>(bins);
    }
    return corrected_tv(cells_a, cells_b, n_cells, stream);
  }

  // d > 3: the max projected TV lower-bounds the true TV.
  TvEstimate best;
  for (int proj = 0; proj < kProjectionCount; ++proj) {
    ParamVector dir(d, 0.0);
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dir[j] = stream.normal();
      norm_sq += dir[j] * dir[j];
    }
    dir *= 1.0 / std::sqrt(norm_sq);

    std::vector<ParamVector> pa, pb;
    pa.reserve(sample_a.size());
    pb.reserve(sample_b.size());
    for (const ParamVector& x : sample_a) pa.push_back({dir.dot(x)});
    for (const ParamVector& x : sample_b) pb.push_back({dir.dot(x)});

    const Binning bin = make_binning(pa, pb, bins);
    std::vector<std::size_t> cells_a(pa.size()), cells_b(pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) cells_a[i] = bin.cell(pa[i]);
    for (std::size_t i = 0; i < pb.size(); ++i) cells_b[i] = bin.cell(pb[i]);

    TvEstimate est = corrected_tv(cells_a, cells_b,
                                  static_cast<std::size_t>(bins), stream);
    if (est.estimate > best.estimate || proj == 0) best = est;
  }
  return best;
}

KlResult kl_discrete(const DiscreteDist& a, const DiscreteDist& b) {
  KlResult result;
  for (int o : DiscreteDist::shared_support(a, b)) {
    const double pa = a.mass(o);
    const double pb = b.mass(o);
    if (pa == 0.0) continue;  // 0 ln 0 := 0
    if (pb == 0.0) {
      result.infinite = true;
      result.value = std::numeric_limits<double>::infinity();
      return result;
    }
    result.value += pa * std::log(pa / pb);
  }
  return result;
}

double js_discrete(const DiscreteDist& a, const DiscreteDist& b) {
  double js = 0.0;
  for (int o : DiscreteDist::shared_support(a, b)) {
    const double pa = a.mass(o);
    const double pb = b.mass(o);
    const double m = 0.5 * (pa + pb);
    if (pa > 0.0) js += 0.5 * pa * std::log(pa / m);
    if (pb > 0.0) js += 0.5 * pb * std::log(pb / m);
  }
  // The mixture dominates both arguments so the sum is finite; clamp the
  // tiny negative that summation order can produce at a = b.
  return std::max(0.0, js);
}

bool check_sqrt_js_triangle(const DiscreteDist& a, const DiscreteDist& b,
                            const DiscreteDist& c) {
  return std::sqrt(js_discrete(a, c)) <=
         std::sqrt(js_discrete(a, b)) + std::sqrt(js_discrete(b, c)) + 1e-12;
}

InequalityEntry check_js_tv_bound(const DiscreteDist& f_tilde,
                                  const DiscreteDist& f, double tv_pw,
                                  double tv_stderr, double xi) {
  InequalityEntry entry;
  entry.name = "js_tv_quadratic_bound";
  entry.lhs = js_discrete(f_tilde, f);
  const double c = std::exp(2.0 * xi) - 1.0;
  entry.rhs = 0.25 * c * c * tv_pw * tv_pw;
  entry.std_err = 0.5 * c * c * tv_pw * tv_stderr;
  entry.status =
      entry.lhs <= entry.rhs + 3.0 * entry.std_err + 1e-12 ? "pass" : "fail";
  return entry;
}

}  // namespace flsim
