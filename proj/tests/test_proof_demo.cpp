#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "levylab/proof_demo.hpp"
#include "levylab/rng.hpp"
#include "levylab/special.hpp"

using namespace levylab;

TEST_CASE("log gamma") {
  CHECK(std::abs(log_gamma(5.0).log_abs - std::log(24.0)) <= 1e-14);
  CHECK(log_gamma(5.0).sign == 1);
  // Gamma(-1/2) = -2 sqrt(pi)
  const auto g = log_gamma(-0.5);
  CHECK(g.sign == -1);
  CHECK(std::abs(std::exp(g.log_abs) - 2.0 * std::sqrt(std::numbers::pi)) <= 1e-14);
  // Gamma(-3/2) = 4 sqrt(pi) / 3
  const auto h = log_gamma(-1.5);
  CHECK(h.sign == 1);
  CHECK(std::abs(std::exp(h.log_abs) - 4.0 * std::sqrt(std::numbers::pi) / 3.0) <= 1e-13);
  for (double z : {-0.3, -1.7, -2.2, 0.1, 3.7}) {
    CHECK(std::abs(std::exp(log_gamma(z).log_abs) * log_gamma(z).sign - std::tgamma(z)) <=
          1e-13 * std::abs(std::tgamma(z)));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.0), std::domain_error);
}

TEST_CASE("fourier constant") {
  CHECK(std::abs(fourier_constant(1.0) + 2.0) <= 1e-12);
  for (int i = 1; i < 40; ++i) CHECK(fourier_constant(0.05 * i) < 0.0);
  // direct evaluation with tgamma at p = 1/2
  const double p = 0.5;
  const double direct = std::pow(2.0, p + 1) * std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (p + 1)) /
                        std::tgamma(-0.5 * p);
  CHECK(fourier_constant(p) == doctest::Approx(direct).epsilon(1e-13));
  CHECK_THROWS_AS(fourier_constant(2.0), std::domain_error);
  CHECK_THROWS_AS(fourier_constant(4.0), std::domain_error);
  CHECK_THROWS_AS(fourier_constant(-1.0), std::domain_error);
}

TEST_CASE("mollifier mass") {
  for (int n = 1; n <= 128; ++n) CHECK(std::abs(mollifier_mass(n) - 1.0) <= 1e-10);
  double previous = 1.0;
  for (int n : {1, 2, 4, 8, 16, 32, 64}) {
    const double tail = mollifier_tail_mass(n, 0.1);
    CHECK(std::abs(tail - std::erfc(0.1 * n / std::sqrt(2.0))) <= 1e-12);
    CHECK(tail < previous);
    previous = tail;
  }
  CHECK(mollifier_tail_mass(128, 0.1) == doctest::Approx(std::erfc(12.8 / std::sqrt(2.0))).epsilon(1e-6));
  CHECK(plane_gaussian(0.0, 0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
}

TEST_CASE("right-hand side") {
  const SphericalMeasure plane_atom({{make_vector({0, 1, 0}), 1.0}});
  for (int n : {1, 8, 1000}) {
    CHECK(rhs_value(0.5, n, plane_atom).value == 0.0);
    CHECK(rhs_value(0.5, n, plane_atom).lower_bound == 0.0);
  }

  const SphericalMeasure pole({{make_vector({1, 0, 0}), 1.0}});
  const double p = 0.5;
  const double prefactor = -std::pow(2.0, 1.0 - p / 2) * std::tgamma(1.0 - p / 2) * fourier_constant(p) /
                           (2.0 * std::numbers::pi);
  CHECK(rhs_prefactor(p) == doctest::Approx(prefactor).epsilon(1e-15));
  CHECK(rhs_prefactor(p) > 0.0);
  const auto at_pole = rhs_value(p, 2, pole);
  CHECK(at_pole.value == doctest::Approx(prefactor * std::pow(0.25, -0.75)).epsilon(1e-14));
  CHECK(at_pole.lower_bound == doctest::Approx(prefactor).epsilon(1e-14));
  // finite for large n even with an atom at e_1
  CHECK(std::isfinite(rhs_value(p, 1 << 20, pole).value));

  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Atom> atoms;
    const int count = 1 + static_cast<int>(rng.uniform() * 20);
    for (int j = 0; j < count; ++j) {
      VectorN xi = make_vector({rng.normal(), rng.normal(), rng.normal()});
      xi /= xi.norm();
      atoms.push_back({xi, rng.uniform()});
    }
    const SphericalMeasure mu(atoms);
    const double q = 0.05 + 1.9 * rng.uniform();
    const int n = 1 + static_cast<int>(rng.uniform() * 100);
    const auto r = rhs_value(q, n, mu);
    CHECK(r.lower_bound >= 0.0);
    CHECK(r.value >= r.lower_bound);
  }
  CHECK_THROWS_AS(rhs_value(2.0, 4, pole), std::invalid_argument);
  CHECK_THROWS_AS(rhs_value(0.5, 0, pole), std::invalid_argument);
}

TEST_CASE("left-hand side") {
  const auto l4 = NormSpec::lq(4.0, 3);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {2, 8, 32}) {
    const auto lhs = lhs_integral(l4, 0.5, n);
    INFO("n = " << n << " lhs = " << lhs.value << " err = " << lhs.error);
    CHECK(lhs.converged);
    CHECK(lhs.error <= 1e-4 * (std::abs(lhs.first_term) + std::abs(lhs.second_term)));
    CHECK(lhs.first_term <= 0.0);
    CHECK(lhs.second_term >= 0.0);
    CHECK(lhs.value < previous);
    previous = lhs.value;
  }

  const auto euclid = lhs_integral(NormSpec::euclidean(3), 0.5, 8);
  CHECK(euclid.converged);
  CHECK(euclid.value > 0.5);

  CHECK_THROWS_AS(lhs_integral(l4, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(lhs_integral(NormSpec::lq(4.0, 2), 0.5, 4), std::invalid_argument);
  CHECK_THROWS_AS(lhs_integral(NormSpec::lq(1.5, 3), 0.5, 4), std::invalid_argument);
}

TEST_CASE("identity for the euclidean norm") {
  const auto report = identity_check(0.5, {4, 8, 16, 32});
  for (const auto& row : report.rows) {
    INFO("n = " << row.n << " lhs = " << row.lhs << " rhs = " << row.rhs << " gap = " << row.relative_gap);
    CHECK(row.pass);
    CHECK(row.relative_gap <= 2e-2);
    CHECK(row.rhs >= row.lower_bound);
  }
  CHECK(report.pass);
}

TEST_CASE("demo report and csv") {
  const auto mu = calibrated_uniform_measure(0.5, 512);
  const auto report = run_demo(NormSpec::euclidean(3), 0.5, {2, 4}, mu);
  CHECK(report.all_converged);
  REQUIRE(report.rhs_lower_bound.has_value());
  const auto csv = demo_csv(report);
  CHECK(csv.rfind("n,lhs,lhs_err,rhs,lower_bound\n2,", 0) == 0);
  const auto plain = demo_csv(run_demo(NormSpec::lq(4.0, 3), 0.5, {2}));
  CHECK(plain.find(",,\n") != std::string::npos);
  CHECK(format_demo(report).find("truncation:") != std::string::npos);
}

TEST_CASE("near-plane mass") {
  const SphericalMeasure mu({{make_vector({0, 1, 0}), 3.0}, {make_vector({1, 0, 0}), 1.0}});
  CHECK(near_plane_mass_fraction(mu, 0.05) == 0.75);
  CHECK(near_plane_mass_fraction(SphericalMeasure{}, 0.05) == 0.0);
}
