#pragma once

// Roots of y^u + 1 and the monic divisors built from them.
//
// The u roots are indexed exactly: k in [0, u) names exp(i*pi*(2k+1)/u).
// Complex conjugation acts on indices as k <-> u-1-k, so whether a divisor
// has real coefficients is decided on the index set, never on floats.

#include <complex>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace semitall {

using BigInt = boost::multiprecision::cpp_int;
using cplx = std::complex<double>;

struct RootIndex {
  int u = 1;
  int k = 0;

  cplx value() const;
  RootIndex conjugate() const { return {u, u - 1 - k}; }
};

// Coefficients lowest degree first.
struct ComplexPoly {
  std::vector<cplx> coeffs;
  bool monic = false;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_real(double tol = 1e-12) const;
  cplx operator()(cplx y) const;
};

struct DivisorSelection {
  int u = 1;
  std::vector<int> subset;  // sorted root indices

  bool conjugation_closed() const;
  ComplexPoly expand() const;
};

std::vector<cplx> neg_roots(int u);

// prod_{k in sel} (y - root_k), expanded in complex double precision.
ComplexPoly expand_roots(int u, const std::vector<int>& subset);

// y^u + 1 as a ComplexPoly.
ComplexPoly neg_unit_poly(int u);

// Polynomial long division by a monic divisor; returns the remainder.
std::vector<cplx> poly_remainder(const std::vector<cplx>& f,
                                 const ComplexPoly& divisor,
                                 std::vector<cplx>* quotient = nullptr);

ComplexPoly poly_multiply(const ComplexPoly& f, const ComplexPoly& g);

// All conjugation-closed d-subsets of the roots of y^u + 1.
std::vector<DivisorSelection> real_divisor_selections(int u, int d);

// Real monic degree-d divisors of y^u + 1, imaginary parts discarded after
// the combinatorial reality check.
std::vector<ComplexPoly> real_divisors(int u, int d);

// Number of real monic degree-(m-1) divisors of y^(m+n-2) + 1, closed form.
BigInt alpha_closed(int m, int n);

// Same count by enumerating all (m-1)-subsets of the roots. Throws
// ErrorCode::Resource when C(u, m-1) exceeds max_subsets.
std::uint64_t alpha_brute(int m, int n,
                          std::uint64_t max_subsets = 1'000'000'000ULL);

BigInt binomial(int n, int k);

// (a_1, ..., a_{m-1}, -1) with h(y) = y^{m-1} - a_{m-1} y^{m-2} - ... - a_1.
std::vector<double> divisor_to_point(const ComplexPoly& h, int m);

// Complex counterpart used for non-real divisors (start solutions).
std::vector<cplx> divisor_to_point_complex(const ComplexPoly& h, int m);

}  // namespace semitall
