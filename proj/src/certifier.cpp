#include "semitall/certifier.hpp"

#include <functional>
#include <random>

#include "semitall/error.hpp"
#include "semitall/parallel.hpp"

namespace semitall {

const char* to_string(CertVerdict v) {
  switch (v) {
    case CertVerdict::RankP: return "RANK_P";
    case CertVerdict::RankGtP: return "RANK_GT_P";
    case CertVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

RankCertificate certify_pencil(const Tensor3& Y, const Format& fmt, const CertifyOptions& opts) {
  RankCertificate cert;
  cert.format = fmt;
  cert.span_tol = opts.span_tol;
  cert.reality_tol = opts.solve.reality_tol;
  cert.kernel_tol = opts.solve.kernel_tol;

  const SolveReport rep = solve_all(Y, opts.solve);
  cert.paths_total = static_cast<int>(rep.n_paths);
  cert.paths_failed = static_cast<int>(rep.failures.size());
  cert.multiplicity_warnings = static_cast<int>(rep.warnings.size());

  std::vector<Vector> psis;
  for (const auto& s : rep.solutions) {
    if (!s.is_real) continue;
    ++cert.real_points;
    if (kernel_gap(Y, s.a) < opts.solve.kernel_tol) ++cert.degenerate_points;
    Vector v = psi(real_part_a(s), real_part_b(s), fmt);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    psis.push_back(std::move(v));
  }
  cert.psi_vectors = Matrix(fmt.p, static_cast<Eigen::Index>(psis.size()));
  for (std::size_t i = 0; i < psis.size(); ++i) cert.psi_vectors.col(static_cast<Eigen::Index>(i)) = psis[i];
  cert.dim_U = span_dim(psis, opts.span_tol);

  if (cert.paths_failed > 0) {
    cert.verdict = CertVerdict::Inconclusive;
    cert.reason = "path failures";
  } else if (cert.multiplicity_warnings > 0) {
    cert.verdict = CertVerdict::Inconclusive;
    cert.reason = "coinciding endpoints";
  } else if (cert.degenerate_points > 0) {
    cert.verdict = CertVerdict::Inconclusive;
    cert.reason = "real point with kernel of dimension >= 2";
  } else if (cert.dim_U == fmt.p) {
    cert.verdict = CertVerdict::RankP;
  } else {
    cert.verdict = CertVerdict::RankGtP;
  }
  return cert;
}

RankCertificate certify(const Tensor3& T, const CertifyOptions& opts) {
  const int n = T.dim(0);
  const int p = T.dim(1);
  const int m = T.dim(2);
  const Format fmt = Format::critical(m, n);
  if (p != fmt.p) fail(ErrorCode::Domain, "certify: T must be n x p x m with p = (m-1)(n-1)+1");
  const Matrix W = sigma(T, fmt, opts.max_condition);
  return certify_pencil(mu(W, fmt), fmt, opts);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x7472696cu};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix R(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) R(i, j) = normal(rng);
  return R;
}

Tensor3 random_tensor(int d1, int d2, int d3, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> data(static_cast<std::size_t>(d1) * d2 * d3);
  for (double& v : data) v = normal(rng);
  return Tensor3({d1, d2, d3}, std::move(data));
}

Tensor3 random_low_rank_tensor(const Format& fmt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix x = random_matrix(fmt.n, fmt.p, rng());
  const Matrix y = random_matrix(fmt.p, fmt.p, rng());
  const Matrix z = random_matrix(fmt.m, fmt.p, rng());
  return Tensor3::from_factors(x, y, z);
}

namespace {

ExperimentStats run_experiment(const std::string& kind, const Format& fmt, double eps, int trials,
                               std::uint64_t seed, const CertifyOptions& opts, int jobs,
                               const std::function<Tensor3(std::uint64_t)>& sample) {
  if (trials < 0) fail(ErrorCode::Domain, "experiment: trials must be >= 0");
  ExperimentStats stats;
  stats.kind = kind;
  stats.format = fmt;
  stats.eps = eps;
  stats.seed = seed;
  stats.trials = trials;
  stats.dim_U.assign(static_cast<std::size_t>(trials), 0);
  stats.verdicts.assign(static_cast<std::size_t>(trials), CertVerdict::Inconclusive);
  std::vector<char> chart_violation(static_cast<std::size_t>(trials), 0);

  parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t i) {
    const std::uint64_t s = trial_seed(seed, static_cast<int>(i));
    CertifyOptions local = opts;
    local.solve.seed = s;
    local.solve.jobs = 1;
    try {
      const RankCertificate cert = certify(sample(s), local);
      stats.verdicts[i] = cert.verdict;
      stats.dim_U[i] = cert.dim_U;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ChartViolation) throw;
      chart_violation[i] = 1;
    }
  });

  double total = 0.0;
  for (int i = 0; i < trials; ++i) {
    switch (stats.verdicts[i]) {
      case CertVerdict::RankP: ++stats.rank_p; break;
      case CertVerdict::RankGtP: ++stats.rank_gt_p; break;
      case CertVerdict::Inconclusive: ++stats.inconclusive; break;
    }
    stats.chart_violations += chart_violation[i];
    total += stats.dim_U[i];
    stats.max_dim_U = std::max(stats.max_dim_U, stats.dim_U[i]);
  }
  stats.mean_dim_U = trials > 0 ? total / trials : 0.0;
  return stats;
}

}  // namespace

ExperimentStats perturb_experiment(const Format& fmt, double eps, int trials, std::uint64_t seed,
                                   const CertifyOptions& opts, int jobs) {
  if (eps < 0.0) fail(ErrorCode::Domain, "perturb_experiment: eps must be >= 0");
  const StartFrame frame = make_start_frame(fmt.m, fmt.n);
  return run_experiment("perturb", fmt, eps, trials, seed, opts, jobs, [&](std::uint64_t s) {
    return tau(frame.W0 + eps * random_matrix(fmt.u, fmt.p, s), fmt);
  });
}

ExperimentStats global_experiment(const Format& fmt, int trials, std::uint64_t seed,
                                  const CertifyOptions& opts, int jobs) {
  return run_experiment("global", fmt, 0.0, trials, seed, opts, jobs,
                        [&](std::uint64_t s) { return random_tensor(fmt.n, fmt.p, fmt.m, s); });
}

ExperimentStats low_rank_experiment(const Format& fmt, int trials, std::uint64_t seed,
                                    const CertifyOptions& opts, int jobs) {
  return run_experiment("low_rank", fmt, 0.0, trials, seed, opts, jobs,
                        [&](std::uint64_t s) { return random_low_rank_tensor(fmt, s); });
}

}  // namespace semitall
