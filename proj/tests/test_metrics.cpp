#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fairdpp/errors.hpp"
#include "fairdpp/metrics.hpp"
#include "test_helpers.hpp"

using namespace fairdpp;
using testhelp::randomMatrix;

TEST_SUITE_BEGIN("metrics");

namespace {

PartitionedDataset twoParts(int size1, int size2, int n, std::uint64_t seed = 3) {
  std::vector<int> labels(size1, 1);
  labels.insert(labels.end(), size2, 2);
  return PartitionedDataset(randomMatrix(size1 + size2, n, seed), labels);
}

SampleSet pick(std::vector<int> idx) { return SampleSet(std::move(idx)); }

DistributionTable tableOf(const std::vector<std::pair<std::vector<int>, double>>& entries) {
  DistributionTable t;
  for (const auto& [idx, p] : entries) t.entries[pick(idx)] = p;
  return t;
}

}  // namespace

TEST_CASE("unfairness anchor values") {
  // Realized frequencies are counts/|S|, so targets are checked against
  // samples engineered to produce the wanted s vector.
  const auto ds = twoParts(10, 10, 30);
  const auto even = pick({0, 1, 10, 11});  // s = (.5, .5)
  CHECK(unfairness(TargetFrequency::explicitVector({0.5, 0.5}), even, ds) == doctest::Approx(0.0));

  const double dPropEqualGender =
      unfairness(TargetFrequency::explicitVector({0.683, 0.317}), even, ds);
  CHECK(std::fabs(dPropEqualGender - 0.069) <= 0.001);

  const double dPropEqualRace =
      unfairness(TargetFrequency::explicitVector({0.857, 0.143}), even, ds);
  CHECK(std::fabs(dPropEqualRace - 0.282) <= 0.001);

  // Reverse directions against exact analytic values.
  const auto skewed = pick({0, 1, 2, 3, 4, 5, 10, 11});  // s = (.75, .25)
  CHECK(unfairness(TargetFrequency::explicitVector({0.5, 0.5}), skewed, ds) ==
        doctest::Approx(0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(0.5 / 0.25)).epsilon(1e-12));
}

TEST_CASE("unfairness conventions") {
  const auto ds = twoParts(5, 5, 12);
  const auto onlyPart1 = pick({0, 1});
  CHECK(unfairness(TargetFrequency::uniform(2), onlyPart1, ds) ==
        std::numeric_limits<double>::infinity());
  // Target zero on a part ignores that part entirely.
  CHECK(unfairness(TargetFrequency::explicitVector({1.0, 0.0}), onlyPart1, ds) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(unfairness(TargetFrequency::uniform(2), SampleSet{}, ds), std::domain_error);
}

TEST_CASE("logGeometricDiversity delegates to the Gram determinant") {
  Matrix f(3, 2);
  f << 2, 0, 0, 2, 3, 4;
  const auto ds = PartitionedDataset(f, {1, 1, 2});
  CHECK(logGeometricDiversity(ds, pick({0, 1})).logMagnitude == doctest::Approx(std::log(16.0)));
  CHECK(logGeometricDiversity(ds, pick({2})).logMagnitude == doctest::Approx(std::log(25.0)));
  Matrix dep(2, 2);
  dep << 1, 0, 2, 0;
  CHECK(logGeometricDiversity(PartitionedDataset(dep, {1, 2}), pick({0, 1})).isZero());
}

TEST_CASE("klDivergence on explicit tables") {
  const auto a = tableOf({{{0}, 0.75}, {{1}, 0.25}});
  const auto b = tableOf({{{0}, 0.5}, {{1}, 0.5}});
  CHECK(klDivergence(a, a) == doctest::Approx(0.0));
  CHECK(klDivergence(a, b) == doctest::Approx(0.1308).epsilon(1e-3));
  const auto c = tableOf({{{0}, 1.0}});
  CHECK(klDivergence(c, tableOf({{{1}, 1.0}})) == std::numeric_limits<double>::infinity());
}

TEST_CASE("conditioning identity: KL of a conditional to its base is -log mass") {
  const auto base = tableOf({{{0}, 0.1}, {{1}, 0.3}, {{2}, 0.15}, {{3}, 0.05}, {{4}, 0.4}});
  // Condition on the first three outcomes.
  const double mass = 0.1 + 0.3 + 0.15;
  const auto cond = tableOf({{{0}, 0.1 / mass}, {{1}, 0.3 / mass}, {{2}, 0.15 / mass}});
  CHECK(klDivergence(cond, base) == doctest::Approx(-std::log(mass)).epsilon(1e-12));
}

TEST_CASE("the conditional is KL-minimal among distributions on its support") {
  fairdpp::Rng rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const int total = 8 + static_cast<int>(rng.below(5));  // 8..12 outcomes
    std::vector<double> weights(total);
    double sum = 0.0;
    for (double& w : weights) {
      w = 0.05 + rng.uniform01();
      sum += w;
    }
    DistributionTable base;
    for (int i = 0; i < total; ++i) base.entries[pick({i})] = weights[i] / sum;

    const int supportSize = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - 2)));
    double mass = 0.0;
    for (int i = 0; i < supportSize; ++i) mass += base.entries.at(pick({i}));
    DistributionTable conditional;
    for (int i = 0; i < supportSize; ++i)
      conditional.entries[pick({i})] = base.entries.at(pick({i})) / mass;
    const double best = klDivergence(conditional, base);

    for (int candidate = 0; candidate < 10000; ++candidate) {
      DistributionTable q;
      double qsum = 0.0;
      std::vector<double> raw(supportSize);
      for (double& x : raw) {
        x = -std::log(1.0 - rng.uniform01());  // exponential
        qsum += x;
      }
      for (int i = 0; i < supportSize; ++i) q.entries[pick({i})] = raw[i] / qsum;
      CHECK(klDivergence(q, base) >= best - 1e-9);
    }
  }
}

TEST_CASE("totalVariation") {
  const auto a = tableOf({{{0}, 0.5}, {{1}, 0.5}});
  CHECK(totalVariation(a, a) == doctest::Approx(0.0));
  const auto b = tableOf({{{2}, 1.0}});
  CHECK(totalVariation(a, b) == doctest::Approx(1.0));
}

TEST_CASE("empiricalDistribution converges to the sampling law") {
  // Four known outcomes with probabilities 0.1/0.2/0.3/0.4.
  fairdpp::Rng rng(99);
  std::vector<SampleSet> draws;
  const double probs[] = {0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    int outcome = 0;
    double cum = 0.0;
    for (int j = 0; j < 4; ++j) {
      cum += probs[j];
      if (u < cum) {
        outcome = j;
        break;
      }
    }
    draws.push_back(pick({outcome}));
  }
  const auto table = empiricalDistribution(draws);
  DistributionTable truth;
  for (int j = 0; j < 4; ++j) truth.entries[pick({j})] = probs[j];
  CHECK(totalVariation(table, truth) <= 0.01);
}

TEST_CASE("summaryStats") {
  const auto st = summaryStats({1.0, 2.0, 3.0, 4.0});
  CHECK(st.mean == doctest::Approx(2.5));
  CHECK(st.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(st.sem == doctest::Approx(st.std / 2.0));
  CHECK(st.count == 4);
  CHECK(summaryStats({7.0}).std == 0.0);
  CHECK(summaryStats({}).count == 0);
}

TEST_SUITE_END();
