#include <doctest.h>

#include <random>

#include "cat0/ann.hpp"
#include "cat0/metric_space.hpp"
#include "test_helpers.hpp"

using cat0::AnnCertificate;

namespace {

// Literal restatement of the inequality: margin = RHS - LHS.
double oracle_margin(const cat0::FiniteMetricSpace& space,
                     const AnnCertificate& cert,
                     const std::vector<int>& assign) {
  double rhs = 0.0, lhs = 0.0;
  for (int k = 0; k < cert.m(); ++k)
    for (int i = 0; i < cert.n(); ++i)
      for (int j = 0; j < cert.n(); ++j) {
        const double d = space.dist(assign[static_cast<size_t>(i)],
                                    assign[static_cast<size_t>(j)]);
        rhs += cert.c[k] * cert.p(k, i) * cert.q(k, j) * d * d;
        const double a = cert.A[k](i, j), b = cert.B[k](i, j);
        if (a + b > 0.0) lhs += cert.c[k] * a * b / (a + b) * d * d;
      }
  return rhs - lhs;
}

}  // namespace

TEST_CASE("sampled certificates are valid and deterministic") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const AnnCertificate cert = cat0::ann_sample(5, 3, seed);
    CHECK(cat0::ann_validate(cert).ok);
    const AnnCertificate again = cat0::ann_sample(5, 3, seed);
    CHECK((cert.c - again.c).norm() == 0.0);
    CHECK((cert.p - again.p).norm() == 0.0);
    for (int k = 0; k < 3; ++k)
      CHECK((cert.A[static_cast<size_t>(k)] - again.A[static_cast<size_t>(k)])
                .norm() == 0.0);
  }
  CHECK((cat0::ann_sample(5, 2, 1).p - cat0::ann_sample(5, 2, 2).p).norm() >
        0.0);
  CHECK_THROWS_AS((void)cat0::ann_sample(1, 1, 0), std::invalid_argument);
}

TEST_CASE("validator pinpoints broken certificates") {
  AnnCertificate cert = cat0::ann_sample(4, 2, 7);

  SUBCASE("negative weight") {
    cert.c[1] = -1.0;
    const auto report = cat0::ann_validate(cert);
    REQUIRE(!report.ok);
    CHECK(report.violations.front().kind == "c_positive");
  }
  SUBCASE("broken stochasticity") {
    cert.p(0, 0) += 0.5;
    const auto report = cat0::ann_validate(cert);
    REQUIRE(!report.ok);
    bool found = false;
    for (const auto& v : report.violations)
      if (v.kind == "p_stochastic") found = true;
    CHECK(found);
  }
  SUBCASE("broken coupling sums") {
    cert.A[0](2, 1) += 0.25;
    const auto report = cat0::ann_validate(cert);
    REQUIRE(!report.ok);
    bool found = false;
    for (const auto& v : report.violations)
      if (v.kind == "sum_condition") found = true;
    CHECK(found);
  }
}

TEST_CASE("margin matches the literal restatement") {
  std::mt19937_64 rng(61u);
  const auto space = testhelp::perturbed_metric(5, 3, 0.15, rng);
  const std::vector<int> assign{4, 2, 0, 3, 1};
  for (int rep = 0; rep < 50; ++rep) {
    const AnnCertificate cert = cat0::ann_sample(5, 1 + rep % 3, 600u + rep);
    CHECK(cat0::ann_margin(space, cert, assign) ==
          doctest::Approx(oracle_margin(space, cert, assign)).epsilon(1e-13));
  }
  const std::vector<int> wrong{0, 1};
  CHECK_THROWS_AS(
      (void)cat0::ann_margin(space, cat0::ann_sample(5, 1, 0), wrong),
      std::invalid_argument);
}

TEST_CASE("induced form reproduces the margin") {
  std::mt19937_64 rng(62u);
  const auto space = testhelp::perturbed_metric(6, 3, 0.1, rng);
  const std::vector<int> assign{5, 0, 3, 1, 4, 2};
  for (int rep = 0; rep < 25; ++rep) {
    const AnnCertificate cert = cat0::ann_sample(6, 2, 700u + rep);
    const auto form = cat0::ann_induced_form(cert);
    CHECK(cat0::evaluate_form(form, space, assign) ==
          doctest::Approx(cat0::ann_margin(space, cert, assign))
              .epsilon(1e-12));
  }
}

TEST_CASE("Euclidean spaces satisfy every sampled inequality") {
  std::mt19937_64 rng(63u);
  std::vector<int> identity{0, 1, 2, 3, 4, 5};
  for (int rep = 0; rep < 20; ++rep) {
    const auto space = testhelp::random_config(6, 3, rng).to_metric_space();
    for (int k = 0; k < 10; ++k) {
      const AnnCertificate cert = cat0::ann_sample(6, 1 + k % 3, 800u + k);
      CHECK(cat0::ann_margin(space, cert, identity) >= -1e-9);
    }
  }
}

TEST_CASE("the quadrilateral family embeds exactly") {
  std::mt19937_64 rng(64u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<int> identity{0, 1, 2, 3};
  for (int rep = 0; rep < 50; ++rep) {
    const cat0::BoxtimesParams bp{unit(rng), unit(rng)};
    const AnnCertificate cert = cat0::ann_from_boxtimes(bp);
    CHECK(cat0::ann_validate(cert).ok);
    // Coefficient-level identity with the quadrilateral form.
    const auto induced = cat0::ann_induced_form(cert);
    const auto direct = cat0::boxtimes_form(bp);
    CHECK((induced.coeff - direct.coeff).cwiseAbs().maxCoeff() <= 1e-12);
    // And therefore equal margins on any space.
    const auto space = testhelp::perturbed_metric(4, 3, 0.15, rng);
    CHECK(cat0::ann_margin(space, cert, identity) ==
          doctest::Approx(cat0::boxtimes_margin(space, {0, 1, 2, 3}, bp))
              .epsilon(1e-12));
  }
}
