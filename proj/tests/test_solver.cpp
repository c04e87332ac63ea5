#include <algorithm>
#include <random>

#include "doctest.h"
#include "semitall/certifier.hpp"
#include "semitall/error.hpp"
#include "semitall/solver.hpp"

using namespace semitall;

namespace {

int count_real(const std::vector<Solution>& sols) {
  return static_cast<int>(std::count_if(sols.begin(), sols.end(), [](const Solution& s) { return s.is_real; }));
}

}  // namespace

TEST_CASE("start solutions: counts, residuals and real flags") {
  struct Case {
    int m, n, count, real;
  };
  for (const Case c : {Case{3, 3, 6, 2}, Case{3, 4, 10, 2}, Case{4, 4, 20, 0}}) {
    const auto starts = start_solutions(c.m, c.n, draw_chart(c.n, 3));
    CHECK(static_cast<int>(starts.size()) == c.count);
    CHECK(count_real(starts) == c.real);
    for (const auto& s : starts) {
      CHECK(s.residual < 1e-10);
      CHECK(s.a(c.m - 1) == cplx(-1.0));
      CHECK(s.source.has_value());
    }
  }
}

TEST_CASE("start residuals for all m <= n <= 7") {
  for (int m = 3; m <= 7; ++m)
    for (int n = m; n <= 7; ++n) {
      const auto starts = start_solutions(m, n, draw_chart(n, 1));
      CHECK(BigInt(starts.size()) == binomial(m + n - 2, m - 1));
      CHECK(BigInt(count_real(starts)) == alpha_closed(m, n));
      double worst = 0.0;
      for (const auto& s : starts) worst = std::max(worst, s.residual);
      CHECK(worst < 1e-10);
    }
}

TEST_CASE("real_filter on start solutions") {
  const auto starts = start_solutions(3, 3, draw_chart(3, 9));
  const auto real = real_filter(starts, 1e-8);
  REQUIRE(real.size() == 2);
  for (const auto& s : real) CHECK(s.source->conjugation_closed());

  // Conjugate pairs are accepted or rejected together.
  for (const auto& s : starts) {
    Solution c = s;
    c.a = s.a.conjugate();
    c.b = s.b.conjugate();
    CHECK(is_real_solution(s, 1e-8) == is_real_solution(c, 1e-8));
  }

  Solution pure;
  pure.a = CVector::Ones(3);
  pure.b = CVector::Ones(3);
  CHECK(is_real_solution(pure, 1e-300));
  CHECK_THROWS_AS(real_filter(starts, 0.0), Error);
}

TEST_CASE("identity path returns the start point") {
  const StartFrame frame = make_start_frame(3, 4);
  const Vector cb = draw_chart(4, 2);
  const auto starts = start_solutions(3, 4, cb);
  TrackOptions opts;
  opts.gamma = 1.0;
  for (const auto& s : starts) {
    const TrackResult r = track_path(frame.Aprime, frame.Aprime, s, opts, Chart::standard(3, cb));
    REQUIRE(r.status == PathStatus::Success);
    CHECK((r.solution->a - s.a).norm() < 1e-12);
    CHECK((r.solution->b - s.b).norm() < 1e-12);
  }
}

TEST_CASE("small perturbations of A': endpoints are verified solutions") {
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{3, 3}, {3, 5}, {4, 4}}) {
    const StartFrame frame = make_start_frame(m, n);
    const Tensor3 B = frame.Aprime + random_tensor(frame.format.u, n, m, 31) * 1e-3;
    SolveOptions opts;
    opts.seed = 5;
    const SolveReport rep = solve_all(B, opts);
    CHECK(rep.failures.empty());
    CHECK(rep.warnings.empty());
    CHECK(rep.solutions.size() == rep.n_paths);
    CHECK(BigInt(rep.real_count) == alpha_closed(m, n));
    const Chart chart = Chart::standard(m, rep.chart_b);
    for (const auto& s : rep.solutions) {
      CHECK(s.residual < 1e-9);
      Solution again = s;
      CHECK(refine(B, again, chart, 1e-14));
      CHECK(projective_distance(s, again) < 1e-9);
    }
    // Transversality: endpoints stay well separated.
    for (std::size_t i = 0; i < rep.solutions.size(); ++i)
      for (std::size_t j = i + 1; j < rep.solutions.size(); ++j)
        CHECK(projective_distance(rep.solutions[i], rep.solutions[j]) > 1e-6);
  }
}

TEST_CASE("real targets give conjugation-closed endpoint sets") {
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3, n = 3 + trial % 2;
    const Tensor3 B = random_tensor(m + n - 2, n, m, 500 + trial);
    SolveOptions opts;
    opts.seed = 900 + trial;
    const SolveReport rep = solve_all(B, opts);
    CHECK(rep.solutions.size() + rep.failures.size() == rep.n_paths);
    if (!rep.complete()) continue;
    CHECK(rep.real_count % 2 == static_cast<int>(rep.n_paths % 2));
    for (const auto& s : rep.solutions) {
      Solution c = s;
      c.a = s.a.conjugate();
      c.b = s.b.conjugate();
      double best = 1.0;
      for (const auto& t : rep.solutions) best = std::min(best, projective_distance(c, t));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("random (3,3) targets: six endpoints with an even real count") {
  for (int trial = 0; trial < 10; ++trial) {
    SolveOptions opts;
    opts.seed = trial + 1;
    const SolveReport rep = solve_all(random_tensor(4, 3, 3, 40 + trial), opts);
    CHECK(rep.n_paths == 6);
    CHECK(rep.solutions.size() + rep.failures.size() == 6);
    CHECK(rep.real_count % 2 == 0);
    CHECK(rep.real_count <= 6);
  }
}

TEST_CASE("solve_all on A' recovers the start solutions") {
  const StartFrame frame = make_start_frame(3, 4);
  SolveOptions opts;
  const SolveReport rep = solve_all(frame.Aprime, opts);
  REQUIRE(rep.solutions.size() == 10);
  const auto starts = start_solutions(3, 4, rep.chart_b);
  for (const auto& s : starts) {
    double best = 1.0;
    for (const auto& t : rep.solutions) best = std::min(best, projective_distance(s, t));
    CHECK(best < 1e-10);
  }
  CHECK(rep.real_count == 2);
}

TEST_CASE("solve_all input validation and determinism") {
  CHECK_THROWS_AS(solve_all(random_tensor(3, 3, 3, 1)), Error);
  SolveOptions tiny;
  tiny.path_budget = 5;
  CHECK_THROWS_AS(solve_all(make_start_frame(3, 3).Aprime, tiny), Error);

  const Tensor3 B = random_tensor(5, 4, 3, 12);
  SolveOptions opts;
  opts.seed = 77;
  const SolveReport r1 = solve_all(B, opts);
  opts.jobs = 3;
  const SolveReport r2 = solve_all(B, opts);
  REQUIRE(r1.solutions.size() == r2.solutions.size());
  for (std::size_t i = 0; i < r1.solutions.size(); ++i) {
    CHECK(r1.solutions[i].a == r2.solutions[i].a);
    CHECK(r1.solutions[i].b == r2.solutions[i].b);
  }
}

TEST_CASE("gamma avoids the real axis") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const cplx g = draw_gamma(seed);
    CHECK(std::abs(std::abs(g) - 1.0) < 1e-15);
    CHECK(std::abs(g.imag()) > std::sin(0.1) - 1e-12);
  }
}
