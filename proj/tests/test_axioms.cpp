#include <gtest/gtest.h>

#include <cusg/cusg.hpp>

#include "oracle.hpp"

using namespace cusg;

namespace {

  std::string fixture(std::string const& name) {
    return std::string(CUSG_FIXTURES) + "/" + name;
  }

  FiniteCuTable load(std::string const& name) {
    return parse_table(read_file(fixture(name)));
  }

  // C_1 with 1 + 1 = 1
  FiniteCuTable c1() {
    return saturating_chain(1);
  }

}  // namespace

// Every table with at most 4 elements: the library agrees with the
// definitional oracle on each axiom.
TEST(Axioms, AgreeWithOracleOnSmallTables) {
  int tables = 0;
  for (int n = 1; n <= 4; ++n) {
    for (auto const& t : enumerate_tables(n, false)) {
      auto r  = oracle::raw(t);
      auto sc = full_scope(t);
      EXPECT_EQ(check_O5(t, sc, Mode::direct).holds(), oracle::o5(r));
      EXPECT_EQ(check_O6(t, sc, Mode::direct).holds(), oracle::o6(r));
      EXPECT_EQ(check_O7(t, sc, Mode::direct).holds(), oracle::o7(r));
      EXPECT_EQ(check_weak_cancellation(t, sc, Mode::direct).holds(), oracle::weakly_cancellative(r));
      EXPECT_EQ(check_simple(t, sc).holds(), oracle::simple(r));
      EXPECT_EQ(check_riesz_interpolation(t, sc).holds(), oracle::riesz(r));
      ++tables;
    }
  }
  EXPECT_EQ(tables, 1 + 1 + 4 + 48);
}

TEST(Axioms, BasisFormMatchesDirectForm) {
  for (int n = 1; n <= 4; ++n) {
    for (auto const& t : enumerate_tables(n)) {
      for (Mask b : enumerate_bases(t)) {
        auto sc = scope_of(t, b);
        EXPECT_EQ(check_O5(t, sc, Mode::basis).holds(), check_O5(t, full_scope(t), Mode::direct).holds());
        EXPECT_EQ(check_O6(t, sc, Mode::basis).holds(), check_O6(t, full_scope(t), Mode::direct).holds());
        EXPECT_EQ(check_O7(t, sc, Mode::basis).holds(), check_O7(t, full_scope(t), Mode::direct).holds());
      }
    }
  }
}

TEST(Axioms, ChainsSatisfyO5O6O7) {
  for (int m = 1; m <= 5; ++m) {
    auto t  = saturating_chain(m);
    auto sc = full_scope(t);
    EXPECT_TRUE(check_O5(t, sc, Mode::direct).holds()) << m;
    EXPECT_TRUE(check_O6(t, sc, Mode::direct).holds()) << m;
    EXPECT_TRUE(check_O7(t, sc, Mode::direct).holds()) << m;
    EXPECT_TRUE(check_riesz_interpolation(t, sc).holds()) << m;
  }
}

TEST(Axioms, O5FailureFixture) {
  auto t = load("o5_fail.cutable");
  EXPECT_FALSE(oracle::o5(oracle::raw(t)));
  auto v = check_O5(t, full_scope(t), Mode::direct);
  ASSERT_TRUE(v.fails());
  EXPECT_EQ(v.witness.size(), v.names.size());
  EXPECT_FALSE(v.formatted.empty());
}

TEST(Axioms, O6FailureFixture) {
  auto t = load("o6_fail.cutable");
  EXPECT_FALSE(oracle::o6(oracle::raw(t)));
  EXPECT_TRUE(check_O6(t, full_scope(t), Mode::direct).fails());
  // O5 holds here, so the two fixtures separate the axioms
  EXPECT_TRUE(check_O5(t, full_scope(t), Mode::direct).holds());
}

// Exhaustive over all 1244 tables with 5 elements: neither O7 nor
// interpolation ever fails, so no fixture exists at this size.
TEST(Axioms, NoO7OrInterpolationFailureUpToFive) {
  int seen = 0;
  for (int n = 1; n <= 5; ++n) {
    for (auto const& t : enumerate_tables(n, n <= 4)) {
      auto r = oracle::raw(t);
      EXPECT_TRUE(oracle::o7(r));
      EXPECT_TRUE(oracle::riesz(r));
      ++seen;
    }
  }
  EXPECT_EQ(seen, 1 + 1 + 2 + 9 + 1244);
}

TEST(Axioms, WeakCancellationFailsOnC2) {
  auto t = saturating_chain(2);
  auto v = check_weak_cancellation(t, full_scope(t), Mode::direct);
  ASSERT_TRUE(v.fails());
  // the witness replays: x + z << y + z but not x << y
  int x = v.witness[0], y = v.witness[1], z = v.witness[2];
  EXPECT_TRUE(t.waybelow(t.add(x, z), t.add(y, z)));
  EXPECT_FALSE(t.waybelow(x, y));
  EXPECT_TRUE(check_weak_cancellation(trivial_table(), full_scope(trivial_table()), Mode::direct).holds());
}

TEST(Axioms, SimpleExamples) {
  auto s = direct_sum(c1(), c1());
  auto v = check_simple(s, full_scope(s));
  ASSERT_TRUE(v.fails());
  EXPECT_EQ(v.formatted.size(), 2u);
  EXPECT_TRUE(check_simple(trivial_table(), full_scope(trivial_table())).holds());
  auto n  = make_nbar();
  auto sc = fuel_scope(*n, 5000, quantifier_count(Axiom::simple, Mode::direct));
  EXPECT_NE(check_simple(*n, sc).verdict, Verdict::fails);
}

TEST(Axioms, AlmostDivisible) {
  EXPECT_TRUE(check_almost_divisible(trivial_table(), full_scope(trivial_table()), 2).holds());
  EXPECT_TRUE(check_almost_divisible(c1(), full_scope(c1()), 3).holds());
  auto n  = make_nbar();
  auto sc = fuel_scope(*n, 5000, 2);
  auto v  = check_almost_divisible(*n, sc, 3);
  ASSERT_TRUE(v.fails());
  // smallest failing instance in the search order
  EXPECT_EQ(v.formatted, (std::vector<std::string>{"n=2", "x'=1", "x=1"}));
}

TEST(Axioms, NbarUpToFuel) {
  auto n = make_nbar();
  for (Axiom a : {Axiom::o5, Axiom::o6, Axiom::o7, Axiom::wc, Axiom::riesz}) {
    for (Mode m : {Mode::direct, Mode::basis}) {
      if ((a == Axiom::riesz) && m == Mode::basis) {
        continue;
      }
      auto sc = fuel_scope(*n, 20000, quantifier_count(a, m), m);
      auto v  = check_axiom(*n, a, sc, m, 3);
      EXPECT_EQ(v.verdict, Verdict::unknown) << to_string(a) << " " << to_string(m);
      EXPECT_FALSE(v.exhaustive);
      EXPECT_GT(v.bound, 0u);
    }
  }
}

TEST(Soft, Examples) {
  EXPECT_EQ(soft_part(c1()), Mask{0b11});
  for (auto const& st : suite()) {
    EXPECT_TRUE(is_soft(st.table, 0)) << st.name;
  }
  auto n = make_nbar();
  EXPECT_EQ(is_soft(*n, scalar(NatInf::infinity()), 50), Verdict::unknown);
  EXPECT_EQ(is_soft(*n, scalar(NatInf(3)), 50), Verdict::fails);
}
