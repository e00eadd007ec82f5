#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace pgchroma;

namespace {

const BaseTable& table() {
  static const BaseTable t = BaseTable::standard();
  return t;
}

Coloring scheduled(int n) { return replay(schedule(n, 2, 2, table()), table()); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(EdgeColoring, SymmetricAccess) {
  EdgeColoring e(5, 3);
  e.set(3, 1, 2);
  EXPECT_EQ(e.color(1, 3), 2);
  EXPECT_EQ(e.color(3, 1), 2);
  EXPECT_EQ(e.color(0, 4), 0);
  EXPECT_THROW(e.set(2, 2, 0), Error);
  EXPECT_THROW(e.set(2, 1, 3), Error);
}

TEST(TriangleCheck, MonochromaticK3) {
  const EdgeColoring e(3, 1);
  for (const auto& r : {verify_triangle_free(e), naive_triangle_check(e)}) {
    EXPECT_FALSE(r.triangle_free);
    EXPECT_EQ(*r.witness, (std::array<std::uint32_t, 3>{0, 1, 2}));
    EXPECT_EQ(r.triples, 1U);
  }
}

TEST(TriangleCheck, MatchesNaiveOracleOnRandomColorings) {
  pgtest::Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto N = static_cast<std::uint32_t>(pgtest::uniform(rng, 3, 64));
    const int k = pgtest::uniform(rng, 2, 6);
    EdgeColoring e(N, k);
    for (std::uint32_t u = 1; u < N; ++u)
      for (std::uint32_t v = 0; v < u; ++v) e.set(u, v, static_cast<Color>(pgtest::uniform(rng, 0, k - 1)));
    const auto fast = verify_triangle_free(e);
    const auto slow = naive_triangle_check(e);
    EXPECT_EQ(fast.triangle_free, slow.triangle_free) << i;
    EXPECT_EQ(fast.witness, slow.witness) << i;
  }
}

TEST(SchurLift, TwoColoringOfALine) {
  const Coloring c = scheduled(2);
  const EdgeColoring e = schur_lift(c);
  EXPECT_EQ(e.vertex_count(), 4U);
  EXPECT_TRUE(verify_triangle_free(e).triangle_free);
  EXPECT_TRUE(naive_triangle_check(e).triangle_free);
}

TEST(SchurLift, K16AndK128) {
  const auto k16 = verify_triangle_free(schur_lift(scheduled(4)));
  EXPECT_TRUE(k16.triangle_free);
  EXPECT_EQ(k16.triples, 560U);
  const auto k128 = verify_triangle_free(schur_lift(scheduled(7)));
  EXPECT_TRUE(k128.triangle_free);
  EXPECT_EQ(k128.triples, 341376U);
  // R(3;3) = 17: K_16 with 3 colors is the largest triangle-free case
  EXPECT_EQ(KnownRamseyTable::standard().entries[2].upper, 17);
}

TEST(SchurLift, EverySuiteColoringUpToTenLiftsCleanly) {
  for (int n = 2; n <= 10; ++n) {
    EXPECT_TRUE(verify_triangle_free(schur_lift(scheduled(n))).triangle_free) << n;
    EXPECT_TRUE(verify_triangle_free(schur_lift(iterated_hyperplane(ProjectiveSpace::create(n, 2)))).triangle_free) << n;
  }
}

TEST(SchurLift, ImproperSourceIsRejected) {
  const Coloring c = uniform_coloring(ProjectiveSpace::create(3, 2), 2);
  try {
    schur_lift(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ImproperSource);
  }
}

TEST(SchurLift, MonochromaticLineBecomesTriangleThroughZero) {
  // Recolor the line {x, y, x^y} of a proper coloring to one color.
  Coloring c = scheduled(5);
  const std::uint32_t x = 0b00110, y = 0b01001;
  for (std::uint32_t p : {x, y, x ^ y}) c.colors[p - 1] = 0;
  const auto r = verify_triangle_free(schur_lift_unchecked(c));
  ASSERT_FALSE(r.triangle_free);
  const auto w = *r.witness;
  EXPECT_EQ(w[0], 0U);
  EXPECT_EQ(c.colors[w[1] - 1], c.colors[w[2] - 1]);
  EXPECT_EQ(c.colors[(w[1] ^ w[2]) - 1], c.colors[w[1] - 1]);
}

TEST(SchurLift, WitnessIsTheRecoloredLine) {
  // Only one monochromatic line exists when it is forced into a fresh color.
  Coloring c = scheduled(6);
  Coloring wide(c.space, 2, c.k + 1, c.colors);
  const std::uint32_t x = 5, y = 40;
  for (std::uint32_t p : {x, y, x ^ y}) wide.colors[p - 1] = static_cast<Color>(c.k);
  const auto r = verify_triangle_free(schur_lift_unchecked(wide));
  ASSERT_FALSE(r.triangle_free);
  EXPECT_EQ(*r.witness, (std::array<std::uint32_t, 3>{0, x, y}));
}

TEST(SchurLift, TranslationInvarianceProperty) {
  const auto r = pgtest::lift_translation_invariance(0x7a11, 60, table());
  EXPECT_GE(r.cases, 200);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}

TEST(SchurLift, ExportFormat) {
  std::ostringstream s;
  write_edge_coloring(schur_lift(scheduled(2)), s);
  const Coloring c = scheduled(2);
  std::ostringstream want;
  want << "K n=2 k=2\n"
       << int{c.colors[0]} << '\n'
       << int{c.colors[1]} << int{c.colors[2]} << '\n'
       << int{c.colors[2]} << int{c.colors[1]} << int{c.colors[0]} << '\n';
  EXPECT_EQ(s.str(), want.str());
}

TEST(RamseyTable, Frozen) {
  for (const auto& e : KnownRamseyTable::standard().entries) EXPECT_LE(e.lower, e.upper);
}

TEST(ChiLower, Examples) {
  EXPECT_EQ(chi_lower_from_ramsey(2), 2);
  EXPECT_EQ(chi_lower_from_ramsey(5), 4);
  EXPECT_EQ(chi_lower_from_ramsey(6), 5);
  for (int n = 3; n <= 16; ++n) EXPECT_GE(chi_lower_from_ramsey(n), chi_lower_from_ramsey(n - 1));
}

TEST(BoundTable, MatchesGolden) {
  const BoundLedger ledger = bound_table(13, table());
  EXPECT_EQ(ledger.text(), slurp(std::string(PGCHROMA_GOLDEN_DIR) + "/ramsey_table_13.txt"));
  for (const auto& row : ledger.rows) {
    EXPECT_LE(row.lower, row.upper);
    EXPECT_TRUE(row.certified);
  }
  EXPECT_EQ(ledger.rows[6].lower, 5);
  EXPECT_EQ(ledger.rows[6].upper, 6);
}

TEST(BoundTable, Csv) {
  const std::string csv = bound_table(4, table()).csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,lower,upper,lower_source,upper_source,certified");
  EXPECT_NE(csv.find("\n4,3,3,"), std::string::npos);
}

TEST(RqLedger, Examples) {
  EXPECT_EQ(rq_ledger(3, 3, 4, table()).best, 8);
  EXPECT_EQ(rq_ledger(2, 2, 5, table()).best, 7);
  EXPECT_EQ(rq_ledger(2, 2, 1, table()).best, 1);
  EXPECT_EQ(rq_ledger(3, 3, 4, table()).text().substr(0, 12), "R_3(3;4) > 8");
}

TEST(RqLedger, BeatsLinearBoundAndBinaryClosedForm) {
  for (int q : {2, 3, 5})
    for (int t : {2, 3, 4})
      for (int k = 1; k <= 10; ++k) {
        const RqBound r = rq_ledger(q, t, k, table());
        EXPECT_GE(r.best, r.guaranteed);
        if (q == 2 && t == 2) EXPECT_GE(r.best, *r.closed_form);
      }
}
