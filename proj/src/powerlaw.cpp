// Copyright 2026 The crisisnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crisisnet/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "crisisnet/error.hpp"

namespace crisisnet {
namespace {

struct LineFit {
  double slope = 0;
  double r_squared = 0;
};

LineFit LeastSquares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  const double ss_res = std::max(0.0, syy - fit.slope * sxy);
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::vector<std::uint64_t> SortedTail(std::span<const std::uint64_t> degrees,
                                      std::uint64_t xmin) {
  std::vector<std::uint64_t> tail;
  for (std::uint64_t d : degrees) {
    if (d >= xmin) tail.push_back(d);
  }
  std::sort(tail.begin(), tail.end());
  return tail;
}

double KsOnSortedTail(std::span<const std::uint64_t> tail, double gamma,
                      std::uint64_t xmin) {
  const double n = static_cast<double>(tail.size());
  const double norm = HurwitzZeta(gamma, static_cast<double>(xmin));
  double worst = 0;
  std::size_t i = 0;
  while (i < tail.size()) {
    const std::uint64_t v = tail[i];
    // Empirical P(K >= v) and P(K >= v + 1).
    const double at = (n - static_cast<double>(i)) / n;
    std::size_t j = i;
    while (j < tail.size() && tail[j] == v) ++j;
    const double after = (n - static_cast<double>(j)) / n;
    const double fit_at = HurwitzZeta(gamma, static_cast<double>(v)) / norm;
    const double fit_after = HurwitzZeta(gamma, static_cast<double>(v + 1)) / norm;
    worst = std::max({worst, std::abs(at - fit_at), std::abs(after - fit_after)});
    i = j;
  }
  return worst;
}

PowerLawFit MleOnSortedTail(std::span<const std::uint64_t> tail,
                            std::uint64_t xmin) {
  const double shift = static_cast<double>(xmin) - 0.5;
  double log_sum = 0;
  for (std::uint64_t k : tail) log_sum += std::log(static_cast<double>(k) / shift);
  PowerLawFit fit;
  fit.method = FitMethod::kMle;
  fit.xmin = xmin;
  fit.n_tail = tail.size();
  fit.gamma = 1.0 + static_cast<double>(tail.size()) / log_sum;
  fit.ks_statistic = KsOnSortedTail(tail, fit.gamma, xmin);
  return fit;
}

}  // namespace

const char* FitMethodName(FitMethod method) {
  switch (method) {
    case FitMethod::kOlsPdf: return "ols-pdf";
    case FitMethod::kOlsCcdf: return "ols-ccdf";
    case FitMethod::kOlsBinned: return "ols-binned";
    case FitMethod::kMle: return "mle";
  }
  return "?";
}

DegreeHistogram Histogram(std::span<const std::uint64_t> degrees, bool drop_zeros) {
  std::vector<std::uint64_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  DegreeHistogram h;
  auto first = sorted.begin();
  if (drop_zeros) {
    first = std::upper_bound(sorted.begin(), sorted.end(), std::uint64_t{0});
    h.zero_count = static_cast<std::size_t>(first - sorted.begin());
  }
  h.n = static_cast<std::size_t>(sorted.end() - first);
  if (h.n == 0) {
    throw Error(ErrorCode::kEmptyHistogram, "no positive degrees to histogram");
  }
  const double n = static_cast<double>(h.n);
  std::size_t below = 0;
  for (auto it = first; it != sorted.end();) {
    auto next = std::upper_bound(it, sorted.end(), *it);
    const auto count = static_cast<std::size_t>(next - it);
    h.support.push_back(*it);
    h.pdf.push_back(static_cast<double>(count) / n);
    h.ccdf.push_back(static_cast<double>(h.n - below) / n);
    below += count;
    it = next;
  }
  return h;
}

DegreeHistogram Histogram(const DegreeMap& degrees, bool drop_zeros) {
  return Histogram(degrees.values(), drop_zeros);
}

std::vector<LogBin> LogBinHistogram(const DegreeHistogram& h, double ratio) {
  if (!(ratio > 1.0)) throw Error(ErrorCode::kInvalidArgument, "bin ratio must exceed 1");
  if (h.support.empty()) return {};
  if (h.support.front() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "log bins need positive support");
  }
  const double k0 = static_cast<double>(h.support.front());
  auto lower = [&](long i) { return k0 * std::pow(ratio, static_cast<double>(i)); };
  std::vector<LogBin> bins;
  long current = -1;
  double mass = 0;
  auto flush = [&] {
    if (current < 0) return;
    LogBin b;
    b.lower = lower(current);
    b.upper = lower(current + 1);
    b.center = std::sqrt(b.lower * b.upper);
    b.density = mass / (b.upper - b.lower);
    bins.push_back(b);
  };
  for (std::size_t i = 0; i < h.support.size(); ++i) {
    const double k = static_cast<double>(h.support[i]);
    long idx = static_cast<long>(std::floor(std::log(k / k0) / std::log(ratio)));
    while (idx > 0 && lower(idx) > k) --idx;
    while (lower(idx + 1) <= k) ++idx;
    if (idx != current) {
      flush();
      current = idx;
      mass = 0;
    }
    mass += h.pdf[i];
  }
  flush();
  return bins;
}

PowerLawFit FitOls(const DegreeHistogram& h, FitTarget target, std::uint64_t xmin) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.support.size(); ++i) {
    if (h.support[i] < xmin || h.support[i] == 0) continue;
    const double value = target == FitTarget::kPdf ? h.pdf[i] : h.ccdf[i];
    x.push_back(std::log10(static_cast<double>(h.support[i])));
    y.push_back(std::log10(value));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kInsufficientData,
                "OLS fit needs at least 3 support points >= xmin, have " +
                    std::to_string(x.size()));
  }
  const LineFit line = LeastSquares(x, y);
  PowerLawFit fit;
  fit.method = target == FitTarget::kPdf ? FitMethod::kOlsPdf : FitMethod::kOlsCcdf;
  fit.xmin = xmin;
  fit.gamma = target == FitTarget::kPdf ? -line.slope : 1.0 - line.slope;
  fit.r_squared = line.r_squared;
  fit.n_tail = 0;
  for (std::size_t i = 0; i < h.support.size(); ++i) {
    if (h.support[i] >= xmin && h.support[i] > 0) {
      fit.n_tail += static_cast<std::size_t>(std::llround(h.pdf[i] * static_cast<double>(h.n)));
    }
  }
  return fit;
}

PowerLawFit FitOlsBinned(std::span<const LogBin> bins, std::uint64_t xmin) {
  std::vector<double> x, y;
  for (const LogBin& b : bins) {
    if (b.lower + 1e-9 < static_cast<double>(xmin) || !(b.density > 0)) continue;
    x.push_back(std::log10(b.center));
    y.push_back(std::log10(b.density));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kInsufficientData,
                "binned OLS fit needs at least 3 occupied bins >= xmin, have " +
                    std::to_string(x.size()));
  }
  const LineFit line = LeastSquares(x, y);
  PowerLawFit fit;
  fit.method = FitMethod::kOlsBinned;
  fit.xmin = xmin;
  fit.gamma = -line.slope;
  fit.r_squared = line.r_squared;
  fit.n_tail = x.size();
  return fit;
}

PowerLawFit FitMle(std::span<const std::uint64_t> degrees, std::uint64_t xmin) {
  if (xmin == 0) throw Error(ErrorCode::kInvalidArgument, "MLE needs xmin >= 1");
  const auto tail = SortedTail(degrees, xmin);
  if (tail.size() < kMinMleTail) {
    throw Error(ErrorCode::kInsufficientData,
                "MLE fit needs at least " + std::to_string(kMinMleTail) +
                    " samples >= xmin, have " + std::to_string(tail.size()));
  }
  return MleOnSortedTail(tail, xmin);
}

PowerLawFit FitMleScanXmin(std::span<const std::uint64_t> degrees,
                           std::size_t min_tail) {
  min_tail = std::max(min_tail, kMinMleTail);
  const auto all = SortedTail(degrees, 1);
  if (all.size() < min_tail) {
    throw Error(ErrorCode::kInsufficientData,
                "xmin scan needs at least " + std::to_string(min_tail) +
                    " positive samples");
  }
  std::optional<PowerLawFit> best;
  for (std::size_t i = 0; i < all.size();) {
    const std::uint64_t xmin = all[i];
    const std::span<const std::uint64_t> tail(all.data() + i, all.size() - i);
    if (tail.size() < min_tail) break;
    const PowerLawFit fit = MleOnSortedTail(tail, xmin);
    if (!best || *fit.ks_statistic < *best->ks_statistic) best = fit;
    while (i < all.size() && all[i] == xmin) ++i;
  }
  return *best;
}

double KsDistance(std::span<const std::uint64_t> degrees, double gamma,
                  std::uint64_t xmin) {
  const auto tail = SortedTail(degrees, std::max<std::uint64_t>(xmin, 1));
  if (tail.empty()) throw Error(ErrorCode::kInsufficientData, "empty tail");
  return KsOnSortedTail(tail, gamma, std::max<std::uint64_t>(xmin, 1));
}

double HurwitzZeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Hurwitz zeta needs s > 1, q > 0");
  }
  // Euler-Maclaurin: direct sum of the first terms, then the integral,
  // half-term and Bernoulli corrections at a = q + N.
  constexpr int kDirect = 12;
  static constexpr double kBernoulliOverFactorial[] = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
      7.0 / 6.0 / 87178291200.0,
      -3617.0 / 510.0 / 20922789888000.0,
  };
  double sum = 0;
  for (int j = 0; j < kDirect; ++j) sum += std::pow(q + j, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  // rising = s (s+1) ... (s+2k-2); power = a^(-s-2k+1)
  double rising = s;
  double power = std::pow(a, -s - 1.0);
  for (int k = 1; k <= 8; ++k) {
    sum += kBernoulliOverFactorial[k - 1] * rising * power;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    power /= a * a;
  }
  return sum;
}

ChiSquareResult PoissonGoodnessOfFit(std::span<const std::uint64_t> samples,
                                     double min_expected) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "chi-square needs samples");
  }
  const double n = static_cast<double>(samples.size());
  double mean = 0;
  std::uint64_t max_value = 0;
  for (std::uint64_t s : samples) {
    mean += static_cast<double>(s);
    max_value = std::max(max_value, s);
  }
  mean /= n;
  if (!(mean > 0)) throw Error(ErrorCode::kInsufficientData, "all samples are zero");
  std::vector<double> observed(max_value + 1, 0.0);
  for (std::uint64_t s : samples) observed[s] += 1.0;

  const boost::math::poisson_distribution<double> poisson(mean);
  struct Bin {
    double observed = 0;
    double expected = 0;
  };
  std::vector<Bin> bins;
  Bin open;
  for (std::uint64_t k = 0; k <= max_value; ++k) {
    open.observed += observed[k];
    open.expected += n * boost::math::pdf(poisson, static_cast<double>(k));
    if (open.expected >= min_expected) {
      bins.push_back(open);
      open = {};
    }
  }
  // Upper tail P(K > max_value) has no observations.
  open.expected += n * boost::math::cdf(boost::math::complement(
                           poisson, static_cast<double>(max_value)));
  if (open.expected >= min_expected || bins.empty()) {
    bins.push_back(open);
  } else {
    bins.back().observed += open.observed;
    bins.back().expected += open.expected;
  }

  ChiSquareResult result;
  result.bins = bins.size();
  for (const Bin& b : bins) {
    const double d = b.observed - b.expected;
    result.statistic += d * d / b.expected;
  }
  if (bins.size() < 3) {
    throw Error(ErrorCode::kInsufficientData,
                "chi-square needs at least 3 pooled bins");
  }
  result.degrees_of_freedom = bins.size() - 2;
  const boost::math::chi_squared_distribution<double> chi(
      static_cast<double>(result.degrees_of_freedom));
  result.p_value = boost::math::cdf(boost::math::complement(chi, result.statistic));
  return result;
}

}  // namespace crisisnet
