#include "semitall/classifier.hpp"

#include <algorithm>

#include "semitall/error.hpp"

namespace semitall {

const char* to_string(TrankSet s) {
  switch (s) {
    case TrankSet::Single: return "SINGLE";
    case TrankSet::Plural: return "PLURAL";
    case TrankSet::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::Tall: return "TALL";
    case Reason::BitDisjointFail: return "BIT_DISJOINT_FAIL";
    case Reason::AlphaLtP: return "ALPHA_LT_P";
    case Reason::OutOfScopeMidrange: return "OUT_OF_SCOPE_MIDRANGE";
  }
  return "?";
}

bool Verdict::has(Reason r) const {
  return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

bool bit_disjoint(unsigned long long x, unsigned long long y) {
  if (x == 0 || y == 0) fail(ErrorCode::Domain, "bit_disjoint: arguments must be positive");
  return (x & y) == 0;
}

Verdict classify(int m, int n, int p) {
  if (m < 3 || m > n) fail(ErrorCode::Domain, "classify: need 3 <= m <= n");
  const int critical = (m - 1) * (n - 1) + 1;
  if (p < critical || p > m * n)
    fail(ErrorCode::Domain, "classify: need (m-1)(n-1)+1 <= p <= mn");

  Verdict v;
  v.m = m;
  v.n = n;
  v.p = p;
  v.grank = p;
  if (p > (m - 1) * n) {
    v.trank = TrankSet::Single;
    v.reasons.push_back(Reason::Tall);
    return v;
  }
  if (p != critical) {
    v.reasons.push_back(Reason::OutOfScopeMidrange);
    return v;
  }
  v.alpha = alpha_closed(m, n);
  v.bit_disjoint = bit_disjoint(m - 1, n - 1);
  if (!v.bit_disjoint) v.reasons.push_back(Reason::BitDisjointFail);
  if (v.alpha < p) v.reasons.push_back(Reason::AlphaLtP);
  v.trank = v.reasons.empty() ? TrankSet::Unknown : TrankSet::Plural;
  return v;
}

std::vector<Verdict> theorem_table(int m_max, int n_max) {
  if (m_max > 64 || n_max > 64) fail(ErrorCode::Domain, "theorem_table: bounds must be <= 64");
  std::vector<Verdict> rows;
  for (int m = 3; m <= m_max; ++m)
    for (int n = m; n <= n_max; ++n) rows.push_back(classify(m, n, (m - 1) * (n - 1) + 1));
  return rows;
}

}  // namespace semitall
