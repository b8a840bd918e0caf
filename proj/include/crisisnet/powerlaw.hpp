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

// Degree distributions and power-law fits P(k) ~ k^-gamma.
//
// Two estimators are provided. The least-squares fits regress log P(k) (or
// log P(K >= k)) on log k and mirror the visual straight-line test. The
// maximum-likelihood fit uses the discrete approximation
//
//   gamma = 1 + n / sum_i ln(k_i / (xmin - 1/2)),
//
// and scores the result with the Kolmogorov-Smirnov distance between the
// empirical tail and the exact zeta-normalized discrete power law.

#ifndef CRISISNET_POWERLAW_HPP_
#define CRISISNET_POWERLAW_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crisisnet/centrality.hpp"

namespace crisisnet {

struct DegreeHistogram {
  std::vector<std::uint64_t> support;  // ascending, count > 0
  std::vector<double> pdf;             // fraction of samples at support[i]
  std::vector<double> ccdf;            // P(K >= support[i])
  std::size_t n = 0;                   // samples in the distribution
  std::size_t zero_count = 0;          // zero samples left out
};

// kEmptyHistogram when nothing remains after dropping zeros.
DegreeHistogram Histogram(std::span<const std::uint64_t> degrees,
                          bool drop_zeros = true);
DegreeHistogram Histogram(const DegreeMap& degrees, bool drop_zeros = true);

struct LogBin {
  double lower = 0;
  double upper = 0;
  double center = 0;   // geometric mean of the bounds
  double density = 0;  // pdf mass in the bin / (upper - lower)
};

// Geometric bins [k0 r^i, k0 r^(i+1)) anchored at the smallest support value.
// Only occupied bins are returned. Requires ratio > 1 and positive support.
std::vector<LogBin> LogBinHistogram(const DegreeHistogram& h, double ratio);

enum class FitTarget { kPdf, kCcdf };
enum class FitMethod { kOlsPdf, kOlsCcdf, kOlsBinned, kMle };

const char* FitMethodName(FitMethod method);

struct PowerLawFit {
  double gamma = 0;
  std::uint64_t xmin = 1;
  FitMethod method = FitMethod::kMle;
  std::optional<double> r_squared;     // OLS only
  std::optional<double> ks_statistic;  // MLE only
  std::size_t n_tail = 0;              // samples in the tail; bins for ols-binned
};

// Least squares on (log k, log target(k)) for support points k >= xmin.
// gamma = -slope for the pdf, 1 - slope for the ccdf. Needs at least three
// support points in the tail (kInsufficientData).
PowerLawFit FitOls(const DegreeHistogram& h, FitTarget target,
                   std::uint64_t xmin = 1);

// Least squares on (log center, log density) over the occupied log bins whose
// lower bound is >= xmin; gamma = -slope. Binning tames the noisy sparse tail
// that biases a raw-pdf fit. Needs at least three bins.
PowerLawFit FitOlsBinned(std::span<const LogBin> bins, std::uint64_t xmin = 1);

inline constexpr std::size_t kMinMleTail = 10;

// Discrete-approximation MLE over samples >= xmin (xmin >= 1). Needs at least
// kMinMleTail tail samples.
PowerLawFit FitMle(std::span<const std::uint64_t> degrees, std::uint64_t xmin = 1);

// Tries every distinct sample value as xmin (keeping at least `min_tail`
// samples in the tail) and returns the fit with the smallest KS distance.
// Ties go to the smaller xmin.
PowerLawFit FitMleScanXmin(std::span<const std::uint64_t> degrees,
                           std::size_t min_tail = kMinMleTail);

// KS distance between the empirical P(K >= k) of samples >= xmin and the
// discrete power law with exponent gamma truncated below at xmin.
double KsDistance(std::span<const std::uint64_t> degrees, double gamma,
                  std::uint64_t xmin);

// Hurwitz zeta sum_{j>=0} (j + q)^-s for s > 1, q > 0.
double HurwitzZeta(double s, double q);

struct ChiSquareResult {
  double statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0;
  std::size_t bins = 0;
};

// Pearson chi-square of integer samples against Poisson(sample mean). Bins
// are pooled left to right until each expects at least `min_expected`
// samples; the last bin absorbs the upper tail. One extra degree of freedom
// is spent on the estimated mean.
ChiSquareResult PoissonGoodnessOfFit(std::span<const std::uint64_t> samples,
                                     double min_expected = 5.0);

}  // namespace crisisnet

#endif  // CRISISNET_POWERLAW_HPP_
