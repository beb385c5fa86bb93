#include <gtest/gtest.h>

#include <cusg/cusg.hpp>

#include "oracle.hpp"

using namespace cusg;

namespace {

  constexpr int kInf = -1;

  struct Frozen {
    char const* name;
    int         dim;     // kInf: no n works
    char const* axioms;  // o5 o6 o7 wc simple riesz as 0/1
  };

  // Produced by the oracle in oracle.hpp (widths up to 4, n up to 4) on the
  // default suite, then frozen.
  constexpr Frozen kSuite[] = {
      {"iso1-0", 0, "111111"},     {"iso2-0", 0, "111011"},     {"iso3-0", 0, "111011"},
      {"iso3-1", 0, "111001"},     {"C3", 0, "111011"},         {"C4", 0, "111011"},
      {"C1+C1", 0, "111001"},      {"C1+C2", 0, "111001"},      {"random-0", 0, "111001"},
      {"random-1", kInf, "101011"}, {"random-2", 0, "111001"},   {"random-3", 1, "011011"},
      {"random-4", kInf, "001001"}, {"random-5", 0, "111001"},   {"random-6", kInf, "101001"},
      {"random-7", 0, "111001"},   {"random-8", 0, "011001"},   {"random-10", 1, "011011"},
      {"random-11", kInf, "001001"}, {"random-15", 1, "011011"}, {"random-16", 0, "011001"},
      {"random-18", kInf, "101001"}, {"random-19", kInf, "001001"},
      {"random-21", kInf, "001001"}, {"random-24", 0, "111001"}, {"random-26", 0, "111001"},
      {"random-30", 0, "111001"},  {"random-31", kInf, "101011"},
      {"random-34", 0, "111001"},  {"random-36", kInf, "101001"},
  };

  std::string axiom_bits(FiniteCuTable const& t) {
    auto        sc = full_scope(t);
    std::string s;
    s += check_O5(t, sc, Mode::direct).holds() ? '1' : '0';
    s += check_O6(t, sc, Mode::direct).holds() ? '1' : '0';
    s += check_O7(t, sc, Mode::direct).holds() ? '1' : '0';
    s += check_weak_cancellation(t, sc, Mode::direct).holds() ? '1' : '0';
    s += check_simple(t, sc).holds() ? '1' : '0';
    s += check_riesz_interpolation(t, sc).holds() ? '1' : '0';
    return s;
  }

  int library_dim(FiniteCuTable const& t) {
    auto v = dim(t, 4);
    return v.unbounded ? kInf : *v.value;
  }

}  // namespace

TEST(Dimension, SuiteMatchesFrozenValues) {
  auto s = suite();
  ASSERT_EQ(s.size(), std::size(kSuite));
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].name, kSuite[i].name);
    EXPECT_EQ(library_dim(s[i].table), kSuite[i].dim) << s[i].name;
    EXPECT_EQ(axiom_bits(s[i].table), kSuite[i].axioms) << s[i].name;
  }
}

TEST(Dimension, OracleReproducesFrozenValues) {
  auto s = suite();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto od = oracle::dim(oracle::raw(s[i].table), 3, 3);
    EXPECT_EQ(od ? *od : kInf, kSuite[i].dim) << s[i].name;
  }
}

TEST(Dimension, ChainsAreZeroDimensional) {
  for (int m = 1; m <= 4; ++m) {
    auto v = dim(saturating_chain(m));
    EXPECT_TRUE(v.exact);
    EXPECT_EQ(v.value, 0) << m;
    EXPECT_EQ(check_dim_at_most(saturating_chain(m), 0).answer, DimAnswer::yes);
  }
  EXPECT_EQ(dim(trivial_table()).value, 0);
}

TEST(Dimension, WitnessesReplay) {
  auto t = saturating_chain(3);
  auto c = check_dim_at_most(t, 0, 50);
  ASSERT_EQ(c.answer, DimAnswer::yes);
  ASSERT_FALSE(c.witnesses.empty());
  for (auto const& w : c.witnesses) {
    EXPECT_TRUE(replay_dim_witness(t, w));
  }
}

TEST(Dimension, CounterexampleHasNoRefinement) {
  auto s = suite();
  auto it = std::find_if(s.begin(), s.end(), [](auto const& st) { return st.name == "random-3"; });
  ASSERT_NE(it, s.end());
  auto c = check_dim_at_most(it->table, 0);
  ASSERT_EQ(c.answer, DimAnswer::no);
  ASSERT_TRUE(c.counterexample.has_value());
  EXPECT_TRUE(is_dim_instance(it->table, *c.counterexample));
  EXPECT_EQ(check_dim_at_most(it->table, 1).answer, DimAnswer::yes);
}

TEST(Dimension, OracleAgreesOnAllSmallTables) {
  for (int n = 1; n <= 4; ++n) {
    for (auto const& t : enumerate_tables(n)) {
      auto od = oracle::dim(oracle::raw(t), 3, 4);
      EXPECT_EQ(od ? *od : kInf, library_dim(t));
    }
  }
}

TEST(Dimension, NbarUpToFuel) {
  auto v = dim(*make_nbar(), 2, 2, 20000);
  ASSERT_TRUE(v.value.has_value());
  EXPECT_EQ(*v.value, 0);
  EXPECT_FALSE(v.exact);
  EXPECT_GT(v.bound, 0u);
  auto c = check_dim_at_most(*make_nbar(), 0, 2, 20000);
  EXPECT_EQ(c.answer, DimAnswer::up_to_bounds);
  for (auto const& w : c.witnesses) {
    EXPECT_TRUE(replay_dim_witness(*make_nbar(), w));
  }
}

TEST(Permanence, IdealsOfC2) {
  auto t      = saturating_chain(2);
  auto ideals = enumerate_ideals(t);
  // down-sets that are submonoids: {0} and everything ({0,1} misses 1+1)
  EXPECT_EQ(ideals, (std::vector<Mask>{0b001, 0b111}));
  auto q = quotient(t, 0b111);
  EXPECT_EQ(q.table.size(), 1);
  EXPECT_TRUE(validate_pom(quotient(t, 0b001).table).valid());
}

TEST(Permanence, SumsTakeTheMaximum) {
  auto c2 = saturating_chain(2);
  auto c3 = saturating_chain(3);
  auto r  = verify_sum_permanence(c2, c2);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.sum, 0);
  EXPECT_TRUE(verify_sum_permanence(c2, c3).ok);
  auto s   = suite();
  auto one = std::find_if(s.begin(), s.end(), [](auto const& st) { return st.name == "random-3"; });
  ASSERT_NE(one, s.end());
  auto r1 = verify_sum_permanence(one->table, saturating_chain(1));
  EXPECT_TRUE(r1.ok);
  EXPECT_EQ(r1.sum, 1);
}

TEST(Permanence, HoldsOnSuite) {
  for (auto const& st : suite()) {
    auto r = verify_permanence(st.table);
    EXPECT_TRUE(r.ok) << st.name;
    for (auto const& e : r.entries) {
      EXPECT_TRUE(is_ideal(st.table, e.ideal));
    }
  }
}

TEST(SoftPart, BoundsOnSuite) {
  for (auto const& st : suite()) {
    auto r = soft_dim_bounds(st.table);
    if (r.hypotheses_verified && r.soft_is_submonoid) {
      EXPECT_TRUE(r.lower_ok && r.upper_ok) << st.name;
    }
  }
  auto c1 = soft_dim_bounds(saturating_chain(1));
  EXPECT_EQ(c1.soft_part, "0,1");
}

TEST(SoftPart, Nbar) {
  auto r = soft_dim_bounds(*make_nbar(), 2, 20000);
  EXPECT_EQ(r.soft_part, "0,inf");
  EXPECT_EQ(r.soft_dim, 0);
  EXPECT_TRUE(r.lower_ok);
  EXPECT_TRUE(r.upper_ok);
}
