#include <cmath>
#include <random>

#include "doctest.h"
#include "semitall/error.hpp"
#include "semitall/polyfactor.hpp"
#include "semitall/recurrence.hpp"

using namespace semitall;

TEST_CASE("lambda_seq unrolled values") {
  const double a1 = 0.7, a2 = -1.3;
  const std::vector<double> a{a1, a2};
  for (auto mode : {LambdaMode::Recurrence, LambdaMode::Determinant}) {
    const auto seq = lambda_seq(a, 4, mode);
    CHECK(seq.at(1) == 0.0);
    CHECK(seq.at(2) == 1.0);
    CHECK(seq.at(3) == doctest::Approx(a2));
    CHECK(seq.at(4) == doctest::Approx(a2 * a2 + a1));
  }
}

TEST_CASE("lambda_seq at a divisor point of y^4 + 1") {
  const std::vector<double> a{-1.0, std::sqrt(2.0)};
  const auto seq = lambda_seq(a, 6, LambdaMode::Recurrence);
  CHECK(seq.at(3) == doctest::Approx(std::sqrt(2.0)));
  CHECK(seq.at(4) == doctest::Approx(1.0));
  CHECK(std::abs(seq.at(5)) < 1e-14);
  CHECK(seq.at(6) == doctest::Approx(-1.0));
}

TEST_CASE("lambda_seq with zero coefficients") {
  const std::vector<double> a{0.0, 0.0, 0.0};
  const auto seq = lambda_seq(a, 6, LambdaMode::Determinant);
  CHECK(seq.values == std::vector<double>{0, 0, 1, 0, 0, 0});
  CHECK_THROWS_AS(lambda_seq(a, 2, LambdaMode::Recurrence), Error);
}

TEST_CASE("determinant and recurrence forms agree") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int m = 3; m <= 6; ++m)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> a(m - 1);
      for (double& x : a) x = 0.5 * normal(rng);
      const auto rec = lambda_seq(a, 40, LambdaMode::Recurrence);
      const auto det = lambda_seq(a, 40, LambdaMode::Determinant);
      for (int t = 1; t <= 40; ++t) {
        const double scale = std::max(1.0, std::abs(rec.at(t)));
        CHECK(std::abs(rec.at(t) - det.at(t)) < 1e-8 * scale);
      }
    }
}

TEST_CASE("build_N matches the displayed band structure") {
  const double s = std::sqrt(2.0);
  const std::vector<double> a{-1.0, s, -1.0};
  const Matrix N = build_N(a, 3, 3);
  Matrix expected(4, 3);
  expected << -1, 0, 1,
               s, -1, 0,
              -1, s, -1,
               0, -1, s;
  CHECK((N - expected).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::JacobiSVD<Matrix> svd(N);
  CHECK(svd.singularValues()(2) < 1e-10);

  const std::vector<double> zero{0.0, 0.0, -1.0};
  CHECK(Eigen::FullPivLU<Matrix>(build_N(zero, 3, 3)).rank() == 3);

  // y^2 + y + 1 divides y^3 - 1, not y^5 + 1.
  const std::vector<double> ones{-1.0, -1.0, -1.0};
  CHECK(Eigen::FullPivLU<Matrix>(build_N(ones, 3, 4)).rank() == 4);

  const std::vector<double> bad_chart{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(build_N(bad_chart, 3, 3), Error);
}

TEST_CASE("build_N equals the pencil of the base tensor") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int m = 3; m <= 5; ++m)
    for (int n = m; n <= 6; ++n) {
      std::vector<double> a(m);
      for (double& x : a) x = normal(rng);
      a.back() = -1.0;
      const Matrix N = build_N(a, m, n);
      const Matrix M = pencil_eval(Vector(Eigen::Map<Vector>(a.data(), m)), make_base_tensor(m, n));
      CHECK(N == M);
    }
}

TEST_CASE("rank conditions at divisor and non-divisor points") {
  const std::vector<double> divisor{-1.0, std::sqrt(2.0)};
  const auto yes = rank_conditions(divisor, 3, 3);
  CHECK(yes.c1);
  CHECK(yes.c2);
  CHECK(yes.c3);
  CHECK(yes.c4);
  CHECK(yes.c5);

  const std::vector<double> other{1.0, 1.0};
  const auto no = rank_conditions(other, 3, 3);
  CHECK_FALSE(no.c1);
  CHECK_FALSE(no.c2);
  CHECK_FALSE(no.c3);
  CHECK_FALSE(no.c4);
  CHECK_FALSE(no.c5);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(3);
    for (double& x : a) x = normal(rng);
    CHECK_FALSE(rank_conditions(a, 4, 4).c5);
  }
}

TEST_CASE("the five conditions agree") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  const std::vector<std::pair<int, int>> formats{{3, 3}, {3, 4}, {3, 5}, {4, 4}, {4, 5}, {5, 5}};
  for (const auto& [m, n] : formats) {
    const int u = m + n - 2;
    for (const auto& h : real_divisors(u, m - 1)) {
      const auto point = divisor_to_point(h, m);
      const std::vector<double> a(point.begin(), point.end() - 1);
      const auto rep = rank_conditions(a, m, n);
      CHECK(rep.c1);
      CHECK(rep.consistent());
    }
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> a(m - 1);
      for (double& x : a) x = normal(rng);
      const auto rep = rank_conditions(a, m, n);
      CHECK(rep.consistent());
    }
  }
}

TEST_CASE("trailing principal minors of U are lambda_{u+m-1-t} + [t == 0]") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  for (int m = 3; m <= 5; ++m)
    for (int n = m; n <= 6; ++n) {
      const int u = m + n - 2;
      std::vector<double> a(m - 1);
      for (double& x : a) x = 0.5 * normal(rng);
      // a_{m-1} on the diagonal, a_{m-1-d} on superdiagonal d, -1 below, 1 in the corner.
      Eigen::MatrixXd U = Eigen::MatrixXd::Zero(u, u);
      for (int i = 0; i < u; ++i) {
        for (int d = 0; d <= m - 2 && i + d < u; ++d) U(i, i + d) = a[m - 2 - d];
        if (i + 1 < u) U(i + 1, i) = -1.0;
      }
      U(0, u - 1) = 1.0;
      const auto lam = lambda_seq(a, u + m - 1, LambdaMode::Recurrence);
      for (int t = 0; t < u; ++t) {
        const double det = U.bottomRightCorner(u - t, u - t).determinant();
        const double expected = lam.at(u + m - 1 - t) + (t == 0 ? 1.0 : 0.0);
        CHECK(det == doctest::Approx(expected).epsilon(1e-9));
      }
      // At the divisor points both sides of the minor identity vanish.
      const auto rep = rank_conditions(a, m, n);
      if (rep.c1)
        for (int t = 0; t <= m - 2; ++t) CHECK(std::abs(rep.minors[t]) < 1e-8);
    }
}

TEST_CASE("h generates the ideal of relations") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  const std::vector<double> a{0.3, -0.8, 1.1};
  const ComplexPoly h = h_polynomial(a);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexPoly q;
    const int deg = 1 + trial % 6;
    for (int i = 0; i <= deg; ++i) q.coeffs.emplace_back(normal(rng), 0.0);
    const ComplexPoly f = poly_multiply(q, h);
    std::vector<double> fr;
    for (cplx c : f.coeffs) fr.push_back(c.real());
    CHECK(ideal_member(fr, a, 1e-9));
    // Adding a nonzero element of degree < m-1 leaves the ideal.
    fr[0] += 1.0;
    CHECK_FALSE(ideal_member(fr, a, 1e-9));
  }
}
