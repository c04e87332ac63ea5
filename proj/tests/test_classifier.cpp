#include <set>
#include <utility>

#include "doctest.h"
#include "semitall/classifier.hpp"
#include "semitall/error.hpp"

using namespace semitall;

namespace {

int crit(int m, int n) { return (m - 1) * (n - 1) + 1; }

// The six listed cases of alpha(m, n) < p for 3 <= m <= 9, m <= n <= 40.
bool alpha_case(int m, int n) {
  if (m % 2 == 0 && n % 2 == 0) return true;  // alpha = 0
  switch (m) {
    case 3:
    case 4: return true;
    case 5: return n <= 26 || n == 28;
    case 6: return n <= 34;
    case 7: return n <= 12;
    case 8: return n <= 14;
    case 9: return n == 10;
    default: return false;
  }
}

}  // namespace

TEST_CASE("bit_disjoint") {
  CHECK(bit_disjoint(4, 26));
  CHECK(bit_disjoint(2, 4));
  CHECK_FALSE(bit_disjoint(3, 3));
  CHECK_FALSE(bit_disjoint(6, 15));
  CHECK(bit_disjoint(8, 7));
  CHECK_THROWS_AS(bit_disjoint(0, 3), Error);
}

TEST_CASE("classify examples") {
  Verdict v = classify(3, 5, 9);
  CHECK(v.trank == TrankSet::Plural);
  CHECK(v.reasons == std::vector<Reason>{Reason::AlphaLtP});
  CHECK(v.alpha == 3);
  CHECK(v.bit_disjoint);

  v = classify(4, 4, 10);
  CHECK(v.trank == TrankSet::Plural);
  CHECK(v.has(Reason::BitDisjointFail));
  CHECK(v.has(Reason::AlphaLtP));
  CHECK(v.alpha == 0);

  v = classify(5, 27, 105);
  CHECK(v.trank == TrankSet::Unknown);
  CHECK(v.reasons.empty());
  CHECK(v.alpha == 105);
  CHECK(v.bit_disjoint);

  v = classify(7, 16, 91);
  CHECK(v.trank == TrankSet::Plural);
  CHECK(v.reasons == std::vector<Reason>{Reason::BitDisjointFail});

  v = classify(3, 3, 8);
  CHECK(v.trank == TrankSet::Single);
  CHECK(v.reasons == std::vector<Reason>{Reason::Tall});
  CHECK(v.grank == 8);

  v = classify(4, 6, 17);
  CHECK(v.trank == TrankSet::Unknown);
  CHECK(v.reasons == std::vector<Reason>{Reason::OutOfScopeMidrange});

  CHECK_THROWS_AS(classify(2, 5, 5), Error);
  CHECK_THROWS_AS(classify(5, 4, 13), Error);
  CHECK_THROWS_AS(classify(3, 3, 4), Error);
  CHECK_THROWS_AS(classify(3, 3, 10), Error);
}

TEST_CASE("alpha < p exactly on the six listed cases") {
  for (int m = 3; m <= 9; ++m)
    for (int n = m; n <= 40; ++n) {
      const Verdict v = classify(m, n, crit(m, n));
      CHECK_MESSAGE(v.has(Reason::AlphaLtP) == alpha_case(m, n), "m=" << m << " n=" << n);
    }
}

TEST_CASE("residue classes with a shared bit") {
  const std::vector<std::pair<int, std::set<int>>> cases = {
      {5, {5, 6, 7, 0}}, {6, {2, 4, 5, 6, 7, 0}}, {7, {3, 4, 5, 6, 7, 0}}, {8, {2, 3, 4, 5, 6, 7, 0}}};
  for (const auto& [m, classes] : cases)
    for (int n = m; n <= 40; ++n)
      if (classes.count(n % 8)) CHECK_MESSAGE(!bit_disjoint(m - 1, n - 1), "m=" << m << " n=" << n);
  for (int n = 9; n <= 40; ++n)
    if (n % 16 >= 9 || n % 16 == 0) CHECK(!bit_disjoint(8, n - 1));
}

TEST_CASE("critical p is never SINGLE") {
  for (const Verdict& v : theorem_table(12, 64)) {
    CHECK(v.trank != TrankSet::Single);
    CHECK(v.grank == v.p);
    CHECK((v.trank == TrankSet::Plural) == !v.reasons.empty());
  }
}

TEST_CASE("theorem table rows") {
  const auto rows = theorem_table(9, 40);
  auto row = [&](int m, int n) -> const Verdict& {
    for (const auto& v : rows)
      if (v.m == m && v.n == n) return v;
    FAIL("missing row");
    return rows.front();
  };
  for (int n = 5; n <= 28; ++n) CHECK((row(5, n).trank == TrankSet::Plural) == (n != 27));
  for (int n = 7; n <= 16; ++n) {
    CHECK(row(7, n).trank == TrankSet::Plural);
    CHECK(row(7, n).has(Reason::AlphaLtP) == (n <= 12));
  }
  CHECK(row(7, 17).trank == TrankSet::Unknown);
  CHECK(row(9, 10).trank == TrankSet::Plural);
  CHECK(row(9, 10).has(Reason::AlphaLtP));
  CHECK(rows.size() == 7u * 38u - 21u);
  CHECK_THROWS_AS(theorem_table(65, 10), Error);
}
