#pragma once

// Typical-rank verdicts for real n x p x m tensors from the decidable
// criteria: the tall rule, failure of bit-disjointness of m-1 and n-1, and
// alpha(m, n) < p at the critical p = (m-1)(n-1)+1.

#include <string>
#include <vector>

#include "semitall/polyfactor.hpp"

namespace semitall {

enum class TrankSet { Single, Plural, Unknown };
enum class Reason { Tall, BitDisjointFail, AlphaLtP, OutOfScopeMidrange };

const char* to_string(TrankSet s);
const char* to_string(Reason r);

struct Verdict {
  int m = 0;
  int n = 0;
  int p = 0;
  TrankSet trank = TrankSet::Unknown;
  std::vector<Reason> reasons;
  int grank = 0;
  // Evidence, filled whenever p is critical.
  BigInt alpha = 0;
  bool bit_disjoint = false;

  bool has(Reason r) const;
};

bool bit_disjoint(unsigned long long x, unsigned long long y);

Verdict classify(int m, int n, int p);

// Verdicts at p = (m-1)(n-1)+1 for all 3 <= m <= m_max, m <= n <= n_max.
std::vector<Verdict> theorem_table(int m_max, int n_max);

}  // namespace semitall
