#pragma once

// Rank-p certificate for T in R^{n x p x m}: with Y = mu(sigma(T)), rank T = p
// exactly when the truncated Kronecker vectors psi(a, b) of the real kernel
// pairs M(a, Y) b = 0 span R^p. A RANK_GT_P claim needs every path of the
// solve accounted for; anything short of that is INCONCLUSIVE.

#include <cstdint>
#include <string>
#include <vector>

#include "semitall/solver.hpp"
#include "semitall/tensorcore.hpp"

namespace semitall {

enum class CertVerdict { RankP, RankGtP, Inconclusive };
const char* to_string(CertVerdict v);

struct CertifyOptions {
  SolveOptions solve;
  double span_tol = 1e-8;
  double max_condition = 1e12;
};

struct RankCertificate {
  Format format;
  CertVerdict verdict = CertVerdict::Inconclusive;
  std::string reason;
  int dim_U = 0;
  int real_points = 0;
  int paths_total = 0;
  int paths_failed = 0;
  int multiplicity_warnings = 0;
  int degenerate_points = 0;
  double span_tol = 0.0;
  double reality_tol = 0.0;
  double kernel_tol = 0.0;
  Matrix psi_vectors;  // p x real_points, unit columns
};

// Throws Error(ChartViolation) when T is outside the chart of sigma.
RankCertificate certify(const Tensor3& T, const CertifyOptions& opts = {});

// Certificate of the pencil Y directly, for Y already in the mu chart.
RankCertificate certify_pencil(const Tensor3& Y, const Format& fmt, const CertifyOptions& opts);

struct ExperimentStats {
  std::string kind;
  Format format;
  double eps = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  int rank_p = 0;
  int rank_gt_p = 0;
  int inconclusive = 0;
  int chart_violations = 0;  // counted within inconclusive
  double mean_dim_U = 0.0;
  int max_dim_U = 0;
  std::vector<int> dim_U;
  std::vector<CertVerdict> verdicts;

  bool operator==(const ExperimentStats&) const = default;
};

// T = tau(W0 + eps R), R standard normal.
ExperimentStats perturb_experiment(const Format& fmt, double eps, int trials, std::uint64_t seed,
                                   const CertifyOptions& opts = {}, int jobs = 1);

// T with i.i.d. standard normal entries.
ExperimentStats global_experiment(const Format& fmt, int trials, std::uint64_t seed,
                                  const CertifyOptions& opts = {}, int jobs = 1);

// T = sum of p rank-one tensors with standard normal factors (rank <= p).
ExperimentStats low_rank_experiment(const Format& fmt, int trials, std::uint64_t seed,
                                    const CertifyOptions& opts = {}, int jobs = 1);

// Trial-local generator derived from (seed, trial).
std::uint64_t trial_seed(std::uint64_t seed, int trial);

Tensor3 random_low_rank_tensor(const Format& fmt, std::uint64_t seed);
Tensor3 random_tensor(int d1, int d2, int d3, std::uint64_t seed);
Matrix random_matrix(int rows, int cols, std::uint64_t seed);

}  // namespace semitall
