#include "semitall/polyfactor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "semitall/error.hpp"

namespace semitall {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DOMAIN_ERROR";
    case ErrorCode::ChartViolation: return "CHART_VIOLATION";
    case ErrorCode::Resource: return "RESOURCE_ERROR";
    case ErrorCode::DegenerateStart: return "DEGENERATE_START";
    case ErrorCode::Internal: return "INTERNAL_ERROR";
  }
  return "UNKNOWN";
}

cplx RootIndex::value() const {
  return std::polar(1.0, std::numbers::pi * (2.0 * k + 1.0) / u);
}

bool ComplexPoly::is_real(double tol) const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [tol](cplx c) { return std::abs(c.imag()) < tol; });
}

cplx ComplexPoly::operator()(cplx y) const {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
  return acc;
}

bool DivisorSelection::conjugation_closed() const {
  return std::all_of(subset.begin(), subset.end(), [this](int k) {
    return std::binary_search(subset.begin(), subset.end(), u - 1 - k);
  });
}

ComplexPoly DivisorSelection::expand() const { return expand_roots(u, subset); }

std::vector<cplx> neg_roots(int u) {
  if (u < 1) fail(ErrorCode::Domain, "neg_roots: u must be >= 1");
  std::vector<cplx> roots;
  roots.reserve(u);
  for (int k = 0; k < u; ++k) roots.push_back(RootIndex{u, k}.value());
  return roots;
}

ComplexPoly expand_roots(int u, const std::vector<int>& subset) {
  ComplexPoly h{{cplx(1.0)}, true};
  for (int k : subset) {
    if (k < 0 || k >= u) fail(ErrorCode::Domain, "root index out of range");
    const cplx r = RootIndex{u, k}.value();
    std::vector<cplx> next(h.coeffs.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < h.coeffs.size(); ++i) {
      next[i + 1] += h.coeffs[i];
      next[i] -= r * h.coeffs[i];
    }
    h.coeffs = std::move(next);
  }
  return h;
}

ComplexPoly neg_unit_poly(int u) {
  ComplexPoly f{std::vector<cplx>(u + 1, cplx(0.0)), true};
  f.coeffs.front() = 1.0;
  f.coeffs.back() = 1.0;
  return f;
}

std::vector<cplx> poly_remainder(const std::vector<cplx>& f,
                                 const ComplexPoly& divisor,
                                 std::vector<cplx>* quotient) {
  const int d = divisor.degree();
  if (d < 0 || std::abs(divisor.coeffs.back() - cplx(1.0)) > 1e-14)
    fail(ErrorCode::Domain, "poly_remainder: divisor must be monic");
  std::vector<cplx> rem = f;
  const int deg_f = static_cast<int>(f.size()) - 1;
  if (quotient) quotient->assign(std::max(deg_f - d + 1, 0), cplx(0.0));
  for (int top = deg_f; top >= d; --top) {
    const cplx lead = rem[top];
    if (quotient) (*quotient)[top - d] = lead;
    for (int i = 0; i <= d; ++i) rem[top - d + i] -= lead * divisor.coeffs[i];
  }
  rem.resize(std::max(d, 0));
  return rem;
}

ComplexPoly poly_multiply(const ComplexPoly& f, const ComplexPoly& g) {
  ComplexPoly out{std::vector<cplx>(f.coeffs.size() + g.coeffs.size() - 1), f.monic && g.monic};
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    for (std::size_t j = 0; j < g.coeffs.size(); ++j)
      out.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
  return out;
}

namespace {

void choose_pairs(int n_pairs, int take, int start, std::vector<int>& picked,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(picked.size()) == take) {
    out.push_back(picked);
    return;
  }
  for (int i = start; i <= n_pairs - (take - static_cast<int>(picked.size())); ++i) {
    picked.push_back(i);
    choose_pairs(n_pairs, take, i + 1, picked, out);
    picked.pop_back();
  }
}

}  // namespace

std::vector<DivisorSelection> real_divisor_selections(int u, int d) {
  if (u < 1 || d < 1 || d > u)
    fail(ErrorCode::Domain, "real_divisors: need 1 <= d <= u");
  // Pairs {k, u-1-k} for k < u/2; when u is odd, k = (u-1)/2 is the root -1.
  const int n_pairs = u / 2;
  const bool has_self = (u % 2) == 1;
  std::vector<DivisorSelection> out;
  for (int self = 0; self <= (has_self ? 1 : 0); ++self) {
    if ((d - self) % 2 != 0) continue;
    const int take = (d - self) / 2;
    if (take > n_pairs) continue;
    std::vector<std::vector<int>> combos;
    std::vector<int> picked;
    choose_pairs(n_pairs, take, 0, picked, combos);
    for (const auto& combo : combos) {
      DivisorSelection sel{u, {}};
      for (int k : combo) {
        sel.subset.push_back(k);
        sel.subset.push_back(u - 1 - k);
      }
      if (self) sel.subset.push_back((u - 1) / 2);
      std::sort(sel.subset.begin(), sel.subset.end());
      out.push_back(std::move(sel));
    }
  }
  return out;
}

std::vector<ComplexPoly> real_divisors(int u, int d) {
  std::vector<ComplexPoly> out;
  for (const auto& sel : real_divisor_selections(u, d)) {
    ComplexPoly h = sel.expand();
    if (!h.is_real(1e-12)) fail(ErrorCode::Internal, "closed selection expanded to complex coefficients");
    for (auto& c : h.coeffs) c = cplx(c.real(), 0.0);
    out.push_back(std::move(h));
  }
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

BigInt alpha_closed(int m, int n) {
  if (m < 3 || m > n) fail(ErrorCode::Domain, "alpha: need 3 <= m <= n");
  const int u = m + n - 2;
  const bool m_odd = m % 2 == 1;
  const bool n_odd = n % 2 == 1;
  if (m_odd && n_odd) return binomial(u / 2, (m - 1) / 2);
  if (!m_odd && n_odd) return binomial((u - 1) / 2, (m - 2) / 2);
  if (m_odd && !n_odd) return binomial((u - 1) / 2, (m - 1) / 2);
  return 0;
}

namespace {

std::uint64_t reverse_bits(std::uint64_t x, int width) {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
  x = (x >> 32) | (x << 32);
  return x >> (64 - width);
}

}  // namespace

std::uint64_t alpha_brute(int m, int n, std::uint64_t max_subsets) {
  if (m < 3 || m > n) fail(ErrorCode::Domain, "alpha: need 3 <= m <= n");
  const int u = m + n - 2;
  const int d = m - 1;
  if (u > 62 || binomial(u, d) > max_subsets)
    fail(ErrorCode::Resource, "alpha_brute: C(" + std::to_string(u) + "," +
                                  std::to_string(d) + ") exceeds enumeration budget");
  // Bit k of a mask selects root k; conjugation k <-> u-1-k is bit reversal.
  const std::uint64_t limit = 1ULL << u;
  std::uint64_t mask = (1ULL << d) - 1;
  std::uint64_t count = 0;
  while (mask < limit) {
    if (reverse_bits(mask, u) == mask) ++count;
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  return count;
}

std::vector<cplx> divisor_to_point_complex(const ComplexPoly& h, int m) {
  if (h.degree() != m - 1 || std::abs(h.coeffs.back() - cplx(1.0)) > 1e-14)
    fail(ErrorCode::Domain, "divisor_to_point: h must be monic of degree m-1");
  std::vector<cplx> point(m);
  for (int j = 0; j < m - 1; ++j) point[j] = -h.coeffs[j];
  point[m - 1] = -1.0;
  return point;
}

std::vector<double> divisor_to_point(const ComplexPoly& h, int m) {
  if (!h.is_real(1e-12)) fail(ErrorCode::Domain, "divisor_to_point: h must be real");
  const auto z = divisor_to_point_complex(h, m);
  std::vector<double> point(m);
  std::transform(z.begin(), z.end(), point.begin(), [](cplx c) { return c.real(); });
  return point;
}

}  // namespace semitall
