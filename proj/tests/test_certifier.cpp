#include <algorithm>

#include "doctest.h"
#include "semitall/certifier.hpp"
#include "semitall/error.hpp"

using namespace semitall;

TEST_CASE("near the base point of the (3,5) chart the rank exceeds p") {
  const Format fmt = Format::critical(3, 5);
  const StartFrame frame = make_start_frame(3, 5);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix R = random_matrix(fmt.u, fmt.p, 100 + trial);
    const RankCertificate c = certify(tau(frame.W0 + 1e-3 * R, fmt));
    CHECK(c.verdict == CertVerdict::RankGtP);
    CHECK(c.dim_U <= 3);
    CHECK(c.real_points == 3);
    CHECK(c.paths_total == 15);
  }
}

TEST_CASE("sums of p rank-one terms certify as rank p") {
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}}) {
    const Format fmt = Format::critical(m, n);
    int gt = 0, rank_p = 0;
    for (int trial = 0; trial < 100; ++trial) {
      try {
        const RankCertificate c = certify(random_low_rank_tensor(fmt, 7000 + trial));
        if (c.verdict == CertVerdict::RankGtP) ++gt;
        if (c.verdict == CertVerdict::RankP) ++rank_p;
        CHECK(c.dim_U <= std::min(c.real_points, fmt.p));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ChartViolation);
      }
    }
    CHECK(gt == 0);
    CHECK(rank_p >= 90);
  }
}

TEST_CASE("chart violation for tensors outside the sigma chart") {
  const Format fmt = Format::critical(3, 3);
  CHECK_THROWS_AS(certify(Tensor3(fmt.n, fmt.p, fmt.m)), Error);
  try {
    certify(Tensor3(fmt.n, fmt.p, fmt.m));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChartViolation);
  }
  CHECK_THROWS_AS(certify(random_tensor(3, 4, 3, 1)), Error);
}

TEST_CASE("verdict is invariant under the slice action") {
  const Format fmt = Format::critical(3, 3);
  int compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor3 T = trial % 2 ? random_low_rank_tensor(fmt, 300 + trial)
                                : random_tensor(fmt.n, fmt.p, fmt.m, 300 + trial);
    const Matrix P = random_matrix(fmt.n, fmt.n, 400 + trial);
    const Matrix Q = random_matrix(fmt.p, fmt.p, 500 + trial);
    const RankCertificate c1 = certify(T);
    const RankCertificate c2 = certify(T.slice_action(P, Q));
    if (c1.verdict == CertVerdict::Inconclusive || c2.verdict == CertVerdict::Inconclusive) continue;
    ++compared;
    CHECK(c1.verdict == c2.verdict);
  }
  CHECK(compared >= 15);
}

TEST_CASE("experiments: determinism and edge cases") {
  const Format fmt = Format::critical(3, 3);
  const auto a = perturb_experiment(fmt, 1e-2, 6, 11);
  const auto b = perturb_experiment(fmt, 1e-2, 6, 11, {}, 2);
  CHECK(a == b);
  CHECK(a.trials == 6);
  CHECK(a.rank_p + a.rank_gt_p + a.inconclusive == 6);

  const auto zero = perturb_experiment(fmt, 0.0, 4, 3);
  REQUIRE(zero.verdicts.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(zero.verdicts[i] == zero.verdicts[0]);
    CHECK(zero.dim_U[i] == zero.dim_U[0]);
  }

  const auto empty = global_experiment(fmt, 0, 1);
  CHECK(empty.trials == 0);
  CHECK(empty.verdicts.empty());
  CHECK(empty.rank_p + empty.rank_gt_p + empty.inconclusive == 0);

  CHECK_THROWS_AS(perturb_experiment(fmt, 1e-3, -1, 1), Error);
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("perturb experiments near A': (3,3) and (3,5)") {
  // alpha(3,3) = 2 < 5 and alpha(3,5) = 3 < 9: the span cannot reach p.
  for (const int n : {3, 5}) {
    const auto s = perturb_experiment(Format::critical(3, n), 1e-3, 50, 1);
    CHECK(s.rank_gt_p >= 45);
    CHECK(s.rank_p == 0);
    CHECK(s.max_dim_U <= (n == 3 ? 2 : 3));
  }
}

TEST_CASE("global (3,3) experiment sees both ranks") {
  const auto s = global_experiment(Format::critical(3, 3), 100, 1);
  CHECK(s.rank_p > 0);
  CHECK(s.rank_gt_p > 0);
  for (std::size_t i = 0; i < s.verdicts.size(); ++i)
    if (s.verdicts[i] == CertVerdict::RankP) CHECK(s.dim_U[i] == 5);
}
