#pragma once

// Homotopy continuation for the bilinear system M(a, B) b = 0, a in P^{m-1},
// b in P^{n-1}, with B in R^{u x n x m} at the critical format u = m+n-2.
//
// Start system: B = A' (the reordered base tensor), whose C(u, m-1)
// solutions are the monic degree-(m-1) divisors of y^u + 1. Paths follow
// B(t) = (1-t) gamma A' + t B with a in the chart ca.a = 1 (default a_m = -1)
// and b in a fixed random real chart cb.b = 1.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semitall/polyfactor.hpp"
#include "semitall/tensorcore.hpp"

namespace semitall {

struct TrackOptions {
  double initial_step = 0.02;
  double min_step = 1e-9;
  double max_step = 0.05;
  int max_newton = 3;
  double corrector_tol = 1e-10;  // Newton step norm relative to 1 + |z|
  double final_tol = 1e-13;
  cplx gamma{1.0, 0.0};
  int max_steps = 20000;
  double infinity_norm = 1e8;
};

struct Chart {
  CVector a;  // ca.a = 1
  CVector b;  // cb.b = 1

  // a_m = -1 and the given real chart for b.
  static Chart standard(int m, const Vector& cb);
};

struct Solution {
  CVector a;
  CVector b;
  double residual = 0.0;  // |M(a, B) b| / |b| with a_m = -1
  bool is_real = false;
  std::optional<DivisorSelection> source;  // empty for tracked endpoints
  bool chart_escape = false;               // a_m ~ 0; a kept in the tracking chart
  int path = -1;
};

enum class PathStatus { Success, Stall, Diverge, AtInfinity, MaxSteps };
const char* to_string(PathStatus s);

struct PathFailure {
  int path = -1;
  PathStatus reason = PathStatus::Stall;
  double t = 0.0;
};

struct TrackResult {
  PathStatus status = PathStatus::Success;
  std::optional<Solution> solution;
  double t_reached = 0.0;
  int steps = 0;
  int rejected = 0;
};

struct SolveOptions {
  TrackOptions track;
  std::uint64_t seed = 1;
  double reality_tol = 1e-8;
  double dedup_tol = 1e-6;
  double kernel_tol = 1e-8;
  std::uint64_t path_budget = 10000;
  int jobs = 1;
};

struct MultiplicityWarning {
  int first = -1;
  int second = -1;
  double distance = 0.0;
};

struct SolveReport {
  std::vector<Solution> solutions;
  std::uint64_t n_paths = 0;
  std::vector<PathFailure> failures;
  std::vector<MultiplicityWarning> warnings;  // WARN_MULTIPLICITY
  int real_count = 0;
  cplx gamma;
  Vector chart_b;
  int retracked = 0;

  bool complete() const { return failures.empty() && warnings.empty(); }
};

// The random quantities of a solve, derived from the seed.
cplx draw_gamma(std::uint64_t seed);
Vector draw_chart(int n, std::uint64_t seed);

std::vector<Solution> start_solutions(int m, int n, const Vector& chart_b,
                                      double kernel_tol = 1e-8);

TrackResult track_path(const Tensor3& from, const Tensor3& to, const Solution& start,
                       const TrackOptions& opts, const Chart& chart);

SolveReport solve_all(const Tensor3& B, const SolveOptions& opts = {});

bool is_real_solution(const Solution& s, double tol);
std::vector<Solution> real_filter(const std::vector<Solution>& solutions, double tol);

// Newton refinement at a fixed tensor; returns false when it fails to converge.
bool refine(const Tensor3& B, Solution& s, const Chart& chart, double tol, int max_iter = 20);

// Rescales to a_m = -1 (unless a_m ~ 0) and cb.b = 1, then recomputes the residual.
void normalize(Solution& s, const Tensor3& B, const Vector& chart_b);

double solution_residual(const Tensor3& B, const CVector& a, const CVector& b);

// Chart-independent distance between (a, b) pairs as points of P^{m-1} x P^{n-1}.
double projective_distance(const Solution& x, const Solution& y);

// Real representatives, each scaled by its largest-modulus entry.
Vector real_part_a(const Solution& s);
Vector real_part_b(const Solution& s);

// sigma_{n-1} / sigma_1 of M(a, B); small means a kernel of dimension >= 2.
double kernel_gap(const Tensor3& B, const CVector& a);

}  // namespace semitall
