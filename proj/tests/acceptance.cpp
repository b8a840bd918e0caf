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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crisisnet/centrality.hpp"
#include "crisisnet/dynamics.hpp"
#include "crisisnet/generators.hpp"
#include "crisisnet/ingest.hpp"
#include "crisisnet/pipeline.hpp"
#include "crisisnet/powerlaw.hpp"
#include "crisisnet/robustness.hpp"

namespace {

using namespace crisisnet;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::vector<std::uint64_t> Degrees(const UndirectedGraph& g) {
  std::vector<std::uint64_t> d(g.node_count());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = g.degree(i);
  return d;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// 1. OLS on noiseless C k^-g, k = 1..100.
Outcome OlsExactness() {
  double worst_error = 0, worst_r2 = 1;
  for (const double g : {1.5, 2.0, 2.5, 3.0}) {
    DegreeHistogram h;
    double norm = 0;
    for (int k = 1; k <= 100; ++k) norm += std::pow(k, -g);
    for (int k = 1; k <= 100; ++k) {
      h.support.push_back(static_cast<std::uint64_t>(k));
      h.pdf.push_back(std::pow(k, -g) / norm);
    }
    h.ccdf.assign(h.pdf.size(), 0.0);
    h.n = 1;
    const PowerLawFit fit = FitOls(h, FitTarget::kPdf);
    worst_error = std::max(worst_error, std::abs(fit.gamma - g));
    worst_r2 = std::min(worst_r2, *fit.r_squared);
  }
  return {worst_error <= 1e-6 && worst_r2 >= 0.999999,
          Format("max |gamma - g| = %.2e (<= 1e-6), min r2 = %.9f (>= 0.999999)", worst_error,
                 worst_r2)};
}

// 2. BA n = 1e4, m = 3: MLE at the KS-optimal xmin.
Outcome BaExponent() {
  int inside = 0;
  double lo = 1e9, hi = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto d = Degrees(GenerateBarabasiAlbert({10000, 3, {}, seed}));
    const double g = FitMleScanXmin(d).gamma;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
    if (g >= 2.6 && g <= 3.4) ++inside;
  }
  return {inside >= 18, Format("%d/20 seeds with gamma in [2.6, 3.4] (need 18); range %.3f..%.3f",
                               inside, lo, hi)};
}

// 3. G(n, p) n = 1e4, p = 1e-3: power law rejected, Poisson accepted.
Outcome ErBaseline() {
  int both = 0;
  double max_r2 = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto d = Degrees(GenerateErdosRenyi({10000, 1e-3, seed}));
    const double r2 = *FitOls(Histogram(d), FitTarget::kPdf).r_squared;
    const double p = PoissonGoodnessOfFit(d).p_value;
    max_r2 = std::max(max_r2, r2);
    if (r2 < 0.9 && p > 0.01) ++both;
  }
  return {both >= 18, Format("%d/20 seeds with pdf-OLS r2 < 0.9 and chi-square p > 0.01 "
                             "(need 18); max r2 %.3f",
                             both, max_r2)};
}

// 4. BA n = 2000, m = 3, 5% removal.
Outcome AttackVsFailure() {
  const std::vector<double> steps{0.05};
  CurveOptions options;
  options.path_lengths = false;
  int gap = 0, intact = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const UndirectedGraph g = GenerateBarabasiAlbert({2000, 3, {}, seed});
    const double random =
        ComputeRobustnessCurve(g, {RemovalKind::kRandom, true, seed}, steps, options)
            .points[0].giant_fraction;
    const double attack =
        ComputeRobustnessCurve(g, {RemovalKind::kTargeted, true, 0}, steps, options)
            .points[0].giant_fraction;
    if (attack < random) ++gap;
    if (random > 0.9) ++intact;
  }
  return {gap >= 19 && intact >= 18,
          Format("targeted < random in %d/20 (need 19); random > 0.9 in %d/20 (need 18)", gap,
                 intact)};
}

// 5. Planted-hub corpus through the full pipeline.
Outcome PlantedHubs() {
  PipelineConfig c;
  c.synthetic = HubCorpusParams{};
  c.synthetic->seed = 1;
  c.seed = 1;
  c.robustness.enabled = false;
  const json r = RunPipeline(c).report;
  const double median_r = r["correlation"]["median_r"].get<double>();
  const double control = r["correlation"]["shuffled_control"]["median_abs_r"].get<double>();
  const std::size_t count = r["consistency"]["count"].get<std::size_t>();
  const double share = r["concentration"]["share"].get<double>();
  return {median_r > 0.8 && control < 0.2 && count == 10 && share >= 0.5,
          Format("median r %.3f (> 0.8), shuffled median |r| %.3f (< 0.2), consistency %zu/10, "
                 "share %.3f (>= 0.5)",
                 median_r, control, count, share)};
}

// 6. Micro corpus against the brute-force oracle.
Outcome MicroCorpusOracle() {
  const auto stream =
      ParseEdgeLogFile(std::string(CRISISNET_TEST_DATA_DIR) + "/micro_corpus.csv").stream;
  std::ifstream in(std::string(CRISISNET_TEST_ORACLE_DIR) + "/micro_corpus_expected.json");
  const json want = json::parse(in);
  ObservationWindow w;
  w.first_day = *ParseCivilDay("2001-05-01");
  w.day_count = 3;
  const auto snaps = BuildSnapshots(stream, w);
  const AggregateGraph agg = Aggregate(snaps);

  double worst = 0;
  std::size_t checked = 0, mismatched = 0;
  auto compare = [&](double got, const json& expected) {
    ++checked;
    const double diff = std::abs(got - expected.get<double>());
    worst = std::max(worst, diff);
    if (!(diff <= 1e-9)) ++mismatched;
  };
  const std::pair<const char*, Direction> dirs[] = {
      {"out", Direction::kOut}, {"in", Direction::kIn}, {"total", Direction::kTotal}};
  const auto labels = want["labels"].get<std::vector<std::string>>();
  for (const auto& [name, dir] : dirs) {
    const json& e = want["directions"][name];
    for (std::size_t d = 0; d < snaps.size(); ++d) {
      const auto v = Degree(snaps[d].graph, dir).values();
      for (std::size_t i = 0; i < v.size(); ++i) compare(double(v[i]), e["daily_degrees"][d][i]);
    }
    const DegreeMap ad = Degree(agg, dir);
    for (std::size_t i = 0; i < ad.size(); ++i) compare(double(ad.values()[i]), e["aggregate_degrees"][i]);
    const auto corr = ConsecutiveDayCorrelation(snaps, dir);
    for (std::size_t t = 0; t < corr.pairs.size(); ++t) compare(*corr.pairs[t].r, e["r_registry"][t]);
    for (std::size_t k = 1; k <= 5; ++k) compare(DegreeShare(ad, TopK(ad, k)), e["shares"][k - 1]);
    const std::vector<std::size_t> ks{1, 2, 3, 4};
    const auto rows = OverlapVsK(snaps, ks, dir);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      compare(rows[i].mean_fraction, e["overlap_vs_k"][i]["mean_fraction"]);
    }
    for (std::size_t k = 1; k <= 3; ++k) {
      compare(double(DailyVsAggregateConsistency(snaps, agg, k, dir).overlap.count),
              e["consistency"][std::to_string(k)]["count"]);
    }
    for (NodeId id = 0; id < labels.size(); ++id) {
      const DegreeSeries s = NodeSeries(snaps, id, dir);
      const json& es = e["series"][labels[id]];
      compare(s.mean, es["mean"]);
      compare(s.stddev, es["stddev"]);
      if (s.cv.has_value() != !es["cv"].is_null()) {
        ++mismatched;
      } else if (s.cv) {
        compare(*s.cv, es["cv"]);
      }
    }
  }
  return {mismatched == 0, Format("%zu values, %zu mismatched, max |diff| %.2e (<= 1e-9)",
                                  checked, mismatched, worst)};
}

// 7. Closed forms.
Outcome ClosedForms() {
  double worst_cv = 0;
  for (const std::size_t n : {2u, 5u, 131u, 10000u}) {
    std::vector<double> v(n, 0.0);
    v[0] = 50;
    const double cv = *MakeDegreeSeries(0, v).cv;
    worst_cv = std::max(worst_cv, std::abs(cv - std::sqrt(double(n - 1))) / std::sqrt(double(n - 1)));
  }
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const UndirectedGraph star = UndirectedGraph::WithDenseNodes(5, edges);
  const double apl = *AveragePathLength(star);
  const std::vector<double> steps{0.2};
  const double giant =
      ComputeRobustnessCurve(star, {RemovalKind::kTargeted, true, 0}, steps).points[0].giant_fraction;
  return {worst_cv <= 1e-12 && apl == 1.6 && giant == 1.0 / 5,
          Format("one-hot CV rel. error %.1e, star path length %.17g, star attack giant %.17g",
                 worst_cv, apl, giant)};
}

// 8. Seeded runs repeat byte for byte.
Outcome Determinism() {
  namespace fs = std::filesystem;
  PipelineConfig c;
  c.synthetic = HubCorpusParams{};
  c.synthetic->seed = 3;
  c.seed = 3;
  const json first = RunPipeline(c).report;
  const json second = RunPipeline(c).report;
  const fs::path base = fs::temp_directory_path() / "crisisnet_acceptance";
  fs::remove_all(base);
  WriteOutputs(base / "a", first);
  WriteOutputs(base / "b", second);
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    ++files;
    std::ifstream x(entry.path()), y(base / "b" / entry.path().filename());
    std::stringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    if (sx.str() != sy.str()) ++differing;
  }
  fs::remove_all(base);
  const json rob = {{"ba", {{"n", 3000}, {"m", 3}}}, {"seed", 5}};
  const bool robustness_same = RunRobustness(rob).dump() == RunRobustness(rob).dump();
  const bool generators_same =
      GenerateBarabasiAlbert({5000, 3, {}, 4}) == GenerateBarabasiAlbert({5000, 3, {}, 4}) &&
      GenerateErdosRenyi({5000, 2e-3, 4}) == GenerateErdosRenyi({5000, 2e-3, 4});
  return {first.dump() == second.dump() && differing == 0 && files > 0 && robustness_same &&
              generators_same,
          Format("%zu output files, %zu differ; robustness %s; generators %s", files, differing,
                 robustness_same ? "identical" : "differ", generators_same ? "identical" : "differ")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "power-law OLS exactness", 1.0, OlsExactness},
      {2, "BA exponent recovery (MLE, KS-optimal xmin)", 30.0, BaExponent},
      {3, "G(n, p) baseline rejection", 0.0, ErBaseline},
      {4, "attack vs failure gap", 60.0, AttackVsFailure},
      {5, "planted-hub temporal pipeline", 30.0, PlantedHubs},
      {6, "micro-corpus oracle equivalence", 0.0, MicroCorpusOracle},
      {7, "closed-form spot checks", 0.0, ClosedForms},
      {8, "determinism", 0.0, Determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::string timing = Format("%.2fs", seconds);
    if (c.budget_seconds > 0) {
      timing += Format(" (< %.0fs)", c.budget_seconds);
      if (seconds >= c.budget_seconds) o.pass = false;
    }
    if (!o.pass) ++failed;
    std::printf("%s  [%d] %s: %s; %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
