#include <doctest.h>

#include <cmath>
#include <numeric>

#include "athermal/errors.hpp"
#include "athermal/types.hpp"
#include "random_states.hpp"

using namespace athermal;

namespace {

double entropy_of(const TypeVector& t) {
  const auto q = t.probabilities();
  return shannon_entropy(q);
}

// Exact binomial entropy in bits, independent of the types engine.
double binomial_entropy(int n) {
  double h = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double lw = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * std::log(2.0);
    const double w = std::exp(lw);
    h -= w * lw / std::log(2.0);
  }
  return h;
}

}  // namespace

TEST_SUITE("types") {

TEST_CASE("enumeration order and counts") {
  const auto t22 = enumerate_types(2, 2);
  REQUIRE(t22.size() == 3);
  CHECK(t22[0] == TypeVector({0, 2}));
  CHECK(t22[1] == TypeVector({1, 1}));
  CHECK(t22[2] == TypeVector({2, 0}));
  CHECK(t22.size() <= 9);

  const auto t1 = enumerate_types(1, 4);
  CHECK(t1.size() == 4);
  for (const auto& t : t1) CHECK(std::accumulate(t.counts().begin(), t.counts().end(), 0) == 1);

  CHECK(enumerate_types(3, 3).size() == 10);
  CHECK(type_count(3, 3) == 10.0);
  for (int n : {1, 5, 12})
    for (int m : {1, 2, 3, 4}) {
      const auto all = enumerate_types(n, m);
      CHECK(all.size() == static_cast<std::size_t>(type_count(n, m)));
      CHECK(static_cast<double>(all.size()) <= std::pow(n + 1.0, m));
      CHECK(std::is_sorted(all.begin(), all.end()));
    }
}

TEST_CASE("enumeration refuses oversized type sets") {
  try {
    enumerate_types(2000, 5);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("multinomial log") {
  CHECK(multinomial_log(TypeVector({7, 0, 0})) == doctest::Approx(0.0));
  CHECK(multinomial_log(TypeVector({2, 2})) == doctest::Approx(std::log2(6.0)));
  const double v = multinomial_log(TypeVector({50, 50}));
  CHECK(v <= 100.0);
  CHECK(v >= 100.0 - 2.0 * std::log2(101.0));
}

TEST_CASE("type class size sandwich holds for every type") {
  for (int n : {3, 10, 40})
    for (int m : {2, 3, 4})
      for (const auto& t : enumerate_types(n, m)) {
        const double nh = n * entropy_of(t);
        const double v = multinomial_log(t);
        CHECK(v <= nh + 1e-9);
        CHECK(v >= nh - m * std::log2(n + 1.0) - 1e-9);
      }
}

TEST_CASE("type weights") {
  const ProbVector p({0.2, 0.5, 0.3});
  for (const auto& t : enumerate_types(1, 3)) {
    for (std::size_t x = 0; x < 3; ++x)
      if (t.count(x) == 1) CHECK(std::exp2(type_weight_log(t, p)) == doctest::Approx(p[x]));
  }
  const auto t22 = enumerate_types(2, 2);
  const ProbVector u({0.5, 0.5});
  CHECK(std::exp2(type_weight_log(t22[0], u)) == doctest::Approx(0.25));
  CHECK(std::exp2(type_weight_log(t22[1], u)) == doctest::Approx(0.5));
  CHECK(std::exp2(type_weight_log(t22[2], u)) == doctest::Approx(0.25));
  CHECK(std::isinf(type_weight_log(TypeVector({1, 1}), ProbVector({1.0, 0.0}))));

  // Upper/lower sandwich r <= 2^{-n D(t||p)}, r >= 2^{-n D}/(n+1)^m.
  const int n = 30;
  for (const auto& t : enumerate_types(n, 3)) {
    const auto q = t.probabilities();
    double d = 0.0;
    for (std::size_t x = 0; x < 3; ++x)
      if (q[x] > 0) d += q[x] * std::log2(q[x] / p[x]);
    const double lw = type_weight_log(t, p);
    CHECK(lw <= -n * d + 1e-9);
    CHECK(lw >= -n * d - 3 * std::log2(n + 1.0) - 1e-9);
  }
}

TEST_CASE("type weights sum to one") {
  struct Case {
    int n, m;
  };
  for (const Case c : {Case{200, 2}, Case{200, 3}, Case{120, 4}, Case{1, 4}}) {
    const ProbVector p = testing::random_prob(c.m);
    const HamiltonianSpec h = testing::random_levels(c.m);
    const TypedSpectrum s = typed_spectrum(c.n, p, h);
    CHECK(std::abs(std::exp2(s.log_mass) - 1.0) < 1e-9);
  }
}

TEST_CASE("type energy") {
  const HamiltonianSpec h({0.0, 1.0, 2.5});
  CHECK(type_energy(TypeVector({4, 0, 0}), h) == 0.0);
  CHECK(type_energy(TypeVector({0, 0, 4}), h) == doctest::Approx(10.0));
  CHECK(type_energy(TypeVector({1, 1}), HamiltonianSpec({0.0, 1.0})) == doctest::Approx(1.0));
  const auto s = typed_spectrum(6, ProbVector({0.3, 0.3, 0.4}), h);
  for (const auto& e : s.entries) {
    const auto q = e.type.probabilities();
    CHECK(e.energy == doctest::Approx(6 * (q[1] * 1.0 + q[2] * 2.5)));
  }
}

TEST_CASE("typical set") {
  const ProbVector half({0.5, 0.5});
  CHECK(typical_set(7, 1.0, half).size() == enumerate_types(7, 2).size());
  const auto single = typical_set(10, 1e-6, half);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == TypeVector({5, 5}));
  const auto ts = typical_set(100, 0.1, half);
  REQUIRE(ts.size() == 21);
  CHECK(ts.front() == TypeVector({40, 60}));
  CHECK(ts.back() == TypeVector({60, 40}));
}

TEST_CASE("tail mass and Pinsker-type bound") {
  const ProbVector half({0.5, 0.5});
  CHECK(tail_mass_and_bound(20, 1.0, half).tail == 0.0);
  const TailMass t = tail_mass_and_bound(50, 0.2, half);
  CHECK(t.bound == doctest::Approx(std::pow(2.0, -4.0) * 51 * 51));
  CHECK(t.tail <= t.bound);
  // Exact binomial tail |k/50 - 1/2| > 0.2, i.e. k <= 14 or k >= 36.
  double exact = 0.0;
  for (int k = 0; k <= 50; ++k)
    if (std::abs(k / 50.0 - 0.5) > 0.2 + 1e-12)
      exact += std::exp(std::lgamma(51.0) - std::lgamma(k + 1.0) - std::lgamma(51.0 - k) - 50 * std::log(2.0));
  CHECK(t.tail == doctest::Approx(exact).epsilon(1e-10));

  double prev = 1.0;
  for (int n = 40; n <= 400; n += 40) {
    const double tail = tail_mass_and_bound(n, 0.2, half).tail;
    CHECK(tail < prev);
    prev = tail;
  }
  for (int rep = 0; rep < 20; ++rep) {
    const ProbVector p = testing::random_prob(3);
    const int n = 10 + rep * 7;
    const double eps = testing::uniform(0.05, 0.4);
    const TailMass tm = tail_mass_and_bound(n, eps, p);
    CHECK(tm.tail <= tm.bound);
  }
}

TEST_CASE("chi state") {
  const ProbVector half({0.5, 0.5});
  const HamiltonianSpec h01({0.0, 1.0});
  const ChiState c75 = chi_state(100, 0.75, half, h01);
  CHECK(c75.spread_bound == doctest::Approx(4.0 * std::pow(100.0, 0.75)));
  CHECK(c75.energy_spread <= c75.spread_bound);
  const ChiState c60 = chi_state(100, 0.6, half, h01);
  CHECK(c60.spread_bound == doctest::Approx(4.0 * std::pow(100.0, 0.6)));
  CHECK(c60.energy_spread <= c60.spread_bound);
  CHECK(c60.energy_spread < 100.0);
  CHECK(c60.trace_distance == doctest::Approx(std::sqrt(c60.tail)));

  double weight = 0.0;
  for (const auto& e : c60.spectrum.entries) weight += std::exp2(e.log_weight);
  CHECK(weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c60.retained_mass + c60.tail == doctest::Approx(1.0).epsilon(1e-12));

  const ChiState big = chi_state(5000, 0.75, half, h01);
  CHECK(big.retained_mass > 1.0 - 1e-12);

  const ChiState one = chi_state(50, 0.7, ProbVector({1.0}), HamiltonianSpec({0.0}));
  CHECK(one.spectrum.entries.size() == 1);
  CHECK(one.energy_spread == 0.0);

  CHECK_THROWS_AS(chi_state(10, 0.4, half, h01), Error);
}

TEST_CASE("SLAR reference system") {
  const ProbVector half({0.5, 0.5});
  const HamiltonianSpec h01({0.0, 1.0});
  const SlarSpec trivial = slar_reference(40, 0.7, ProbVector({1.0}), HamiltonianSpec({0.0}));
  CHECK(trivial.levels.size() == 1);
  CHECK(trivial.levels[0] == 0.0);
  CHECK(slar_budget(trivial, 1.0).dmax_bound == 0.0);

  const SlarSpec spec = slar_reference(100, 0.75, half, h01);
  CHECK(spec.levels.size() <= 101);
  CHECK(spec.levels.front() == 0.0);
  CHECK(std::is_sorted(spec.levels.begin(), spec.levels.end()));
  CHECK(spec.levels.back() <= 4.0 * std::pow(100.0, 0.75));
  CHECK(spec.bound_holds);
  CHECK(spec.levels.back() <= spec.tight_bound + 1e-9);

  const ChiState chi = chi_state(100, 0.75, half, h01);
  const EnergyHistograms hist = slar_energy_histograms(spec, chi, h01);
  REQUIRE(hist.reference_with_z.size() == hist.ground_with_chi.size());
  for (std::size_t i = 0; i < hist.ground_with_chi.size(); ++i) {
    CHECK(std::abs(hist.reference_with_z[i].first - hist.ground_with_chi[i].first) < 1e-9);
    CHECK(std::abs(hist.reference_with_z[i].second - hist.ground_with_chi[i].second) < 1e-15);
  }

  const SlarBudget b = slar_budget(spec, 1.0);
  CHECK(b.limit == doctest::Approx(4.0 * std::pow(100.0, 0.75) * 1.0));
  CHECK(b.dmax_bound <= b.limit);
}

TEST_CASE("minimum-energy type tie handling") {
  // Degenerate levels: every type has energy 0, so all retained types tie.
  const HamiltonianSpec flat({0.0, 0.0});
  const SlarSpec spec = slar_reference(30, 0.75, ProbVector({0.5, 0.5}), flat);
  CHECK(spec.min_energy_tie);
  // Gibbs weights of equal-energy sequences coincide, so the cost cannot
  // depend on which tied type is taken.
  const std::vector<TypeVector> retained{TypeVector({2, 1}), TypeVector({1, 2})};
  bool tie = false;
  const TypeVector z = min_energy_type(retained, flat, ProbVector({0.5, 0.5}), &tie);
  CHECK(tie);
  CHECK(z == TypeVector({1, 2}));
}

TEST_CASE("pure cost per copy") {
  const ProbVector p({0.5, 0.5}), g({2.0 / 3.0, 1.0 / 3.0});
  const HamiltonianSpec h({0.0, std::log(2.0)});
  const double d = -0.5 * std::log2(2.0 / 3.0) - 0.5 * std::log2(1.0 / 3.0);
  CHECK(d == doctest::Approx(1.0849625007).epsilon(1e-9));
  double prev_gap = 1e9;
  for (int n : {100, 1000, 10000}) {
    const double c = pure_cost_per_copy(n, 0.75, p, g, h);
    const double gap = std::abs(c - d);
    // |t_min - p|_1 <= 2 eps_n drives the gap.
    CHECK(gap <= 2.0 * std::pow(n, -0.25) * std::log2(3.0) + 1e-12);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(pure_cost_per_copy(40, 0.75, ProbVector({1.0}), ProbVector({1.0}), HamiltonianSpec({0.0})) == 0.0);

  // p = g: value tends to H(g).
  const ProbVector gg({0.7, 0.3});
  const HamiltonianSpec hg({0.0, std::log(7.0 / 3.0)});
  const double c = pure_cost_per_copy(20000, 0.6, gg, gg, hg);
  CHECK(std::abs(c - shannon_entropy(gg.weights())) < 0.2);

  try {
    pure_cost_per_copy(10, 0.75, p, ProbVector({1.0, 0.0}), h);
    FAIL("expected SupportViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportViolation);
  }
}

TEST_CASE("energy classes") {
  const ProbVector half({0.5, 0.5});
  const auto cls = energy_classes(2, half, HamiltonianSpec({0.0, 1.0}));
  REQUIRE(cls.size() == 3);
  CHECK(cls[0].weight == doctest::Approx(0.25));
  CHECK(cls[1].weight == doctest::Approx(0.5));
  CHECK(cls[2].weight == doctest::Approx(0.25));

  // Integer ladder: types (2,0,2) and (0,4,0)... merge into one class.
  const auto ladder = energy_classes(4, ProbVector({0.3, 0.3, 0.4}), HamiltonianSpec({0.0, 1.0, 2.0}));
  CHECK(ladder.size() == 9);
  const auto generic = energy_classes(4, ProbVector({0.3, 0.3, 0.4}), HamiltonianSpec({0.0, 1.0, std::sqrt(5.0)}));
  CHECK(generic.size() == enumerate_types(4, 3).size());
}

TEST_CASE("distillation rate estimate") {
  const ProbVector p({0.3, 0.7}), g({0.6, 0.4});
  const HamiltonianSpec h({0.0, std::log(1.5)});
  const DistillRate r1 = distill_rate_estimate(1, p, g, h);
  const double d_classical = 0.3 * std::log2(0.3 / 0.6) + 0.7 * std::log2(0.7 / 0.4);
  CHECK(r1.value == doctest::Approx(d_classical).epsilon(1e-12));

  const ProbVector half({0.5, 0.5});
  const HamiltonianSpec h01({0.0, 1.0});
  for (int n : {10, 63, 200}) {
    const DistillRate r = distill_rate_estimate(n, half, half, h01);
    CHECK(r.value == doctest::Approx(1.0 - binomial_entropy(n) / n).epsilon(1e-10));
    CHECK(1.0 - r.value <= std::log2(n + 1.0) / n);
  }
  // Generic energies: pinched entropy is the entropy of the type weights.
  const ProbVector p3({0.2, 0.3, 0.5});
  const HamiltonianSpec hg({0.0, 1.0, std::sqrt(2.0)});
  const auto s = typed_spectrum(12, p3, hg);
  std::vector<double> w;
  for (const auto& e : s.entries) w.push_back(std::exp2(e.log_weight));
  CHECK(distill_rate_estimate(12, p3, testing::random_prob(3, 0.1), hg).pinched_entropy ==
        doctest::Approx(shannon_entropy(w)).epsilon(1e-12));
}

TEST_CASE("coherence growth") {
  const ProbVector half({0.5, 0.5});
  const HamiltonianSpec h01({0.0, 1.0});
  const CoherenceGrowth c1 = coherence_growth(1, half, h01);
  CHECK(c1.value == doctest::Approx(1.0));
  CHECK(c1.bound == doctest::Approx(2.0));
  CHECK(coherence_growth(9, ProbVector({1.0, 0.0}), h01).value == doctest::Approx(0.0));
  const CoherenceGrowth c63 = coherence_growth(63, half, h01);
  CHECK(c63.value == doctest::Approx(binomial_entropy(63)).epsilon(1e-10));
  CHECK(c63.bound == doctest::Approx(12.0));
}

}
