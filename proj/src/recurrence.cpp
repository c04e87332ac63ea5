#include "semitall/recurrence.hpp"

#include <algorithm>
#include <cmath>

#include "semitall/error.hpp"

namespace semitall {

namespace {

double max_abs(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

// The s x s matrix whose determinant is lambda_{m-1+s}: a_{m-1} on the
// diagonal, a_{m-1-d} on the d-th superdiagonal, -1 on the subdiagonal.
double toeplitz_determinant(std::span<const double> a, int s) {
  const int m = static_cast<int>(a.size()) + 1;
  Matrix D = Matrix::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    for (int d = 0; d <= m - 2 && i + d < s; ++d) D(i, i + d) = a[static_cast<std::size_t>(m - 2 - d)];
    if (i > 0) D(i, i - 1) = -1.0;
  }
  return D.determinant();
}

}  // namespace

LambdaSeq lambda_seq(std::span<const double> a, int T, LambdaMode mode) {
  const int m = static_cast<int>(a.size()) + 1;
  if (m < 2) fail(ErrorCode::Domain, "lambda_seq: need at least one coefficient");
  if (T < m - 1) fail(ErrorCode::Domain, "lambda_seq: T must be >= m-1");
  LambdaSeq seq{{a.begin(), a.end()}, std::vector<double>(static_cast<std::size_t>(T), 0.0)};
  seq.values[static_cast<std::size_t>(m - 2)] = 1.0;
  for (int t = m; t <= T; ++t) {
    double v = 0.0;
    if (mode == LambdaMode::Recurrence) {
      for (int k = 1; k <= m - 1; ++k) v += a[static_cast<std::size_t>(m - k - 1)] * seq.at(t - k);
    } else {
      v = toeplitz_determinant(a, t - m + 1);
    }
    seq.values[static_cast<std::size_t>(t - 1)] = v;
  }
  return seq;
}

Matrix build_N(std::span<const double> a_full, int m, int n) {
  if (static_cast<int>(a_full.size()) != m) fail(ErrorCode::Domain, "build_N: a_full must have length m");
  if (a_full.back() != -1.0) fail(ErrorCode::ChartViolation, "build_N: last coordinate must be -1");
  const Tensor3 A = make_base_tensor(m, n);
  return pencil_eval(Vector(Eigen::Map<const Vector>(a_full.data(), m)), A);
}

ComplexPoly h_polynomial(std::span<const double> a) {
  ComplexPoly h;
  h.monic = true;
  for (double c : a) h.coeffs.emplace_back(-c, 0.0);
  h.coeffs.emplace_back(1.0, 0.0);
  return h;
}

namespace {

// Remainder of f mod h and the scale used to judge it zero.
std::pair<std::vector<double>, double> reduce(std::span<const double> f, std::span<const double> a) {
  const ComplexPoly h = h_polynomial(a);
  std::vector<cplx> fc(f.begin(), f.end());
  std::vector<cplx> q;
  const auto r = poly_remainder(fc, h, &q);
  double qmax = 0.0;
  for (cplx c : q) qmax = std::max(qmax, std::abs(c));
  std::vector<double> rem;
  for (cplx c : r) rem.push_back(c.real());
  const double scale = std::max({1.0, max_abs(f), qmax * std::max(1.0, max_abs(a))});
  return {rem, scale};
}

}  // namespace

bool ideal_member(std::span<const double> f, std::span<const double> a, double tol) {
  const auto [rem, scale] = reduce(f, a);
  return max_abs(rem) < tol * scale;
}

ConditionReport rank_conditions(std::span<const double> a, int m, int n, double tol) {
  if (tol <= 0.0) fail(ErrorCode::Domain, "rank_conditions: tol must be positive");
  if (static_cast<int>(a.size()) != m - 1) fail(ErrorCode::Domain, "rank_conditions: a must have length m-1");
  const Format fmt = Format::critical(m, n);
  const int u = fmt.u;
  ConditionReport rep;

  std::vector<double> a_full(a.begin(), a.end());
  a_full.push_back(-1.0);
  const Matrix N = build_N(a_full, m, n);

  Eigen::JacobiSVD<Matrix> svd(N);
  const auto& s = svd.singularValues();
  rep.sigma_ratio = s(0) > 0.0 ? s(n - 1) / s(0) : 0.0;
  rep.c1 = rep.sigma_ratio < tol;

  // Rows i and m..u (one-based) of N.
  rep.c2 = true;
  for (int i = 1; i <= m - 1; ++i) {
    Matrix sub(n, n);
    sub.row(0) = N.row(i - 1);
    for (int r = m; r <= u; ++r) sub.row(r - m + 1) = N.row(r - 1);
    double hadamard = 1.0;
    for (int r = 0; r < n; ++r) hadamard *= std::max(sub.row(r).norm(), 1e-300);
    const double minor = sub.determinant();
    rep.minors.push_back(minor);
    rep.c2 = rep.c2 && std::abs(minor) < tol * std::max(1.0, hadamard);
  }

  const int window = 2 * (m - 1);
  const LambdaSeq lam = lambda_seq(a, u + window, LambdaMode::Recurrence);
  const double lscale = std::max(1.0, max_abs(lam.values));
  rep.c3 = true;
  for (int t = 1; t <= m - 1; ++t) {
    const double v = lam.at(u + t);
    rep.lambda_tail.push_back(v);
    const double target = t == m - 1 ? -1.0 : 0.0;
    rep.c3 = rep.c3 && std::abs(v - target) < tol * lscale;
  }
  rep.c4 = true;
  for (int t = 1; t <= window; ++t)
    rep.c4 = rep.c4 && std::abs(lam.at(u + t) + lam.at(t)) < tol * lscale;

  std::vector<double> f(static_cast<std::size_t>(u + 1), 0.0);
  f.front() = 1.0;
  f.back() = 1.0;
  const auto [rem, scale] = reduce(f, a);
  rep.remainder = rem;
  rep.c5 = max_abs(rem) < tol * scale;
  return rep;
}

}  // namespace semitall
