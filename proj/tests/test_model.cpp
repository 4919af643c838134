#include <doctest.h>

#include <cmath>
#include <random>

#include "spinrel/model.hpp"

using namespace spinrel;

TEST_CASE("regime classification of the reference parameter sets") {
  CHECK(classify_regime({0.5, 0.2, 0.5}).regime == Regime::Underdamped);
  CHECK(classify_regime({0.5, 3.0, 0.5}).regime == Regime::Overdamped);
  CHECK(classify_regime({0.1, 2.5, 1.0}).regime == Regime::Overdamped);
  // boundary |dgamma| = 4J = 2 exactly
  CHECK(classify_regime({0.5, 2.5, 0.5}).regime == Regime::Critical);
}

TEST_CASE("derived values, overdamped reference set") {
  const DerivedParams d = derived_values({0.5, 3.0, 0.5});
  CHECK(d.gbar == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(d.dgamma == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(d.lambda_or_omega == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(d.alpha == doctest::Approx(25.0 / 9.0).epsilon(1e-14));
  CHECK(d.k == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("derived values, underdamped reference set") {
  const DerivedParams d = derived_values({0.5, 0.2, 0.5});
  CHECK(d.gbar == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(d.dgamma == doctest::Approx(-0.3).epsilon(1e-15));
  // Omega = sqrt(3.91), high-precision reference value
  CHECK(d.lambda_or_omega == doctest::Approx(1.9773719933285189).epsilon(1e-14));
  CHECK(std::isnan(d.k));
}

TEST_CASE("uniform dissipation gives Omega = 4J and alpha = 0") {
  for (const double J : {0.1, 0.7, 2.3}) {
    const DerivedParams d = derived_values({J, 0.8, 0.8});
    CHECK(d.regime == Regime::Underdamped);
    CHECK(d.dgamma == 0.0);
    CHECK(d.lambda_or_omega == doctest::Approx(4.0 * J).epsilon(1e-15));
    CHECK(d.alpha == 0.0);
  }
}

TEST_CASE("critical regime marks alpha and k undefined") {
  const DerivedParams d = derived_values({0.5, 2.5, 0.5});
  CHECK(d.lambda_or_omega == 0.0);
  CHECK(std::isnan(d.alpha));
  CHECK(std::isnan(d.k));
}

TEST_CASE("validation rejects out-of-range fields by name") {
  CHECK_THROWS_WITH_AS(validate({-0.5, 1.0, 1.0}), doctest::Contains("J"), ValidationError);
  CHECK_THROWS_WITH_AS(validate({0.5, 0.0, 1.0}), doctest::Contains("gamma1"), ValidationError);
  CHECK_THROWS_WITH_AS(validate({0.5, 1.0, -2.0}), doctest::Contains("gamma2"), ValidationError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate({nan, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate({inf, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate({0.5, nan, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate({0.5, 1.0, inf}), ValidationError);
}

TEST_CASE("classification is exchange symmetric and exclusive") {
  std::mt19937_64 rng(991);
  std::uniform_real_distribution<double> gamma(0.05, 3.0);
  std::uniform_real_distribution<double> coupling(0.01, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ModelParams p{coupling(rng), gamma(rng), gamma(rng)};
    const DerivedParams a = classify_regime(p);
    const DerivedParams b = classify_regime({p.J, p.gamma2, p.gamma1});
    CHECK(a.regime == b.regime);
    CHECK(a.lambda_or_omega == doctest::Approx(b.lambda_or_omega).epsilon(1e-15));
    CHECK(a.dgamma == -b.dgamma);
  }
}

TEST_CASE("spectral identities hold to tight relative tolerance") {
  std::mt19937_64 rng(412);
  std::uniform_real_distribution<double> gamma(0.05, 3.0);
  std::uniform_real_distribution<double> coupling(0.01, 1.0);
  int overdamped_seen = 0;
  for (int i = 0; i < 2000; ++i) {
    const ModelParams p{coupling(rng), gamma(rng), gamma(rng)};
    const DerivedParams d = classify_regime(p);
    const double dg2 = d.dgamma * d.dgamma;
    const double w2 = d.lambda_or_omega * d.lambda_or_omega;
    if (d.regime == Regime::Overdamped) {
      ++overdamped_seen;
      CHECK(std::abs(dg2 - (w2 + 16.0 * p.J * p.J)) <= 1e-12 * dg2);
      CHECK(d.k * d.lambda_or_omega == doctest::Approx(2.0 * d.gbar).epsilon(1e-14));
      CHECK(d.alpha > 1.0);  // J > 0 strictly in these draws
      CHECK(d.k > 1.0);
    } else if (d.regime == Regime::Underdamped) {
      CHECK(std::abs(dg2 + w2 - 16.0 * p.J * p.J) <= 1e-12 * (16.0 * p.J * p.J));
      CHECK(d.alpha >= 0.0);
    }
  }
  CHECK(overdamped_seen > 100);
}
