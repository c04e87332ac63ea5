#pragma once

// The sequence lambda_t attached to a = (a_1, ..., a_{m-1}):
//   lambda_t = 0 (1 <= t <= m-2), lambda_{m-1} = 1,
//   lambda_t = sum_{k=1}^{m-1} a_{m-k} lambda_{t-k}  (t >= m),
// equivalently lambda_{m-1+s} is an s x s banded Toeplitz determinant.
// Together with N = M((a, -1), A) this gives five equivalent tests for
// h(y) = y^{m-1} - a_{m-1} y^{m-2} - ... - a_1 dividing y^u + 1.

#include <span>
#include <vector>

#include "semitall/polyfactor.hpp"
#include "semitall/tensorcore.hpp"

namespace semitall {

enum class LambdaMode { Recurrence, Determinant };

struct LambdaSeq {
  std::vector<double> a;       // a_1 .. a_{m-1}
  std::vector<double> values;  // values[t-1] = lambda_t, t = 1..T

  double at(int t) const { return values.at(static_cast<std::size_t>(t - 1)); }
  int length() const { return static_cast<int>(values.size()); }
};

LambdaSeq lambda_seq(std::span<const double> a, int T, LambdaMode mode);

// N = sum_k a_full[k] A_k for the base tensor A; a_full must end in -1.
Matrix build_N(std::span<const double> a_full, int m, int n);

// h(y) = y^{m-1} - a_{m-1} y^{m-2} - ... - a_2 y - a_1.
ComplexPoly h_polynomial(std::span<const double> a);

// True iff h divides f (remainder norm below tol relative to the division's scale).
bool ideal_member(std::span<const double> f, std::span<const double> a, double tol);

struct ConditionReport {
  bool c1 = false;  // rank N < n
  bool c2 = false;  // [i, m, m+1, ..., u]_N = 0 for 1 <= i <= m-1
  bool c3 = false;  // lambda_{u+t} = 0 (t <= m-2), lambda_{u+m-1} = -1
  bool c4 = false;  // lambda_{u+t} = -lambda_t on 1 <= t <= 2(m-1)
  bool c5 = false;  // y^u + 1 is divisible by h

  double sigma_ratio = 0.0;            // sigma_n / sigma_1 of N
  std::vector<double> minors;          // [i, m, ..., u]_N, i = 1..m-1
  std::vector<double> lambda_tail;     // lambda_{u+1} .. lambda_{u+m-1}
  std::vector<double> remainder;       // (y^u + 1) mod h, lowest degree first

  bool consistent() const { return c1 == c2 && c2 == c3 && c3 == c4 && c4 == c5; }
};

ConditionReport rank_conditions(std::span<const double> a, int m, int n, double tol = 1e-8);

}  // namespace semitall
