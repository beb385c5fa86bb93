#include <gtest/gtest.h>

#include <cusg/cusg.hpp>

#include "oracle.hpp"

using namespace cusg;

namespace {

  std::string fixture(std::string const& name) {
    return std::string(CUSG_FIXTURES) + "/" + name;
  }

  NbarSubset ns(std::string const& text) {
    return parse_nbar_subset(text);
  }

  SubMonoidRepr nr(std::string const& text) {
    return repr(parse_nbar_subset(text));
  }

  CarrierPtr const& nbar() {
    static CarrierPtr n = make_nbar();
    return n;
  }

}  // namespace

TEST(NbarSubset, GeneratedSubmonoids) {
  EXPECT_EQ(generated_submonoid(ns("2,3")), ns("0,2.."));
  EXPECT_EQ(generated_submonoid(ns("6,10,15")).str(),
            "{0, 6, 10, 12, 15, 16, 18, 20, 21, 22, 24, 25, 26, 27, 28, 30..}");
  EXPECT_EQ(generated_submonoid(ns("4,6,inf")).str(), "{0, 4.. step 2, inf}");
}

TEST(NbarSubset, PrintedFormParsesBack) {
  for (auto text : {"0,5..,inf", "2*N", "4..mod 6 in {0,2}", "{0, 6, 8, 12.. step 2, inf}", "N", "1..3"}) {
    auto s = ns(text);
    EXPECT_EQ(ns(s.str()), s) << text;
  }
  EXPECT_THROW(ns("1..step 0"), PreconditionError);
  EXPECT_THROW(ns("{1,2"), PreconditionError);
}

TEST(Closures, SequentialAndDerived) {
  auto const& n = *nbar();
  EXPECT_TRUE(same_set(seq_closure(n, nr("0,2..")), nr("0,2..,inf")));
  EXPECT_TRUE(same_set(derived(n, nr("N")), nr("N,inf")));
  EXPECT_TRUE(same_set(derived(n, nr("0,inf")), nr("0")));
  // finite part bounded: inf is not reached from below
  EXPECT_TRUE(same_set(seq_closure(n, nr("0,3")), nr("0,3")));
}

TEST(Closures, SupClosure) {
  auto const& n = *nbar();
  auto        t = sup_closure(n, nr("0,2.."), 16);
  EXPECT_TRUE(t.stabilized);
  EXPECT_TRUE(same_set(t, nr("0,2..,inf")));
  auto twice = sup_closure(n, t, 16);
  EXPECT_TRUE(same_set(twice, t));
}

TEST(Closures, Delta) {
  auto const& n = *nbar();
  auto        d = delta(n, nr("0,inf"), 16);
  EXPECT_TRUE(d.stabilized);
  EXPECT_TRUE(same_set(d, nr("0")));
  for (auto text : {"0,5..,inf", "2*N,inf", "0,3,6..", "0,inf"}) {
    auto t = generated_submonoid(n, nr(text));
    EXPECT_TRUE(is_subset(delta(n, t, 64), sup_closure(n, t, 64))) << text;
    EXPECT_TRUE(is_subset(delta(n, t, 64), derived(n, t))) << text;
    EXPECT_TRUE(is_sub_cu(n, delta(n, t, 64)).value()) << text;
  }
}

TEST(SubCu, NbarExamples) {
  auto const& n = *nbar();
  auto        a = is_sub_cu(n, nr("0,5..,inf"));
  EXPECT_TRUE(a.value());
  EXPECT_TRUE(a.agree());
  auto b = is_sub_cu(n, nr("0,inf"));
  EXPECT_FALSE(b.value());
  EXPECT_TRUE(b.agree());
  auto c = is_sub_cu(n, nr("N"));
  EXPECT_FALSE(c.value());
  EXPECT_TRUE(c.agree());
}

TEST(SubCu, FiniteTablesMatchSubmonoids) {
  for (int size = 1; size <= 4; ++size) {
    for (auto const& t : enumerate_tables(size)) {
      auto expected = oracle::submonoids(oracle::raw(t));
      auto got      = enumerate_sub_cu(t);
      std::vector<std::uint64_t> g(got.begin(), got.end());
      std::sort(g.begin(), g.end());
      EXPECT_EQ(g, expected);
    }
  }
}

TEST(Lattice, C2) {
  auto t   = saturating_chain(2);
  auto all = enumerate_sub_cu(t);
  EXPECT_EQ(all, (std::vector<Mask>{0b001, 0b101, 0b111}));
  auto c = make_finite(t);
  for (Mask a : all) {
    for (Mask b : all) {
      Mask sup = lattice_sup(*c, {repr(a), repr(b)}, 16).mask();
      Mask inf = lattice_inf(*c, {repr(a), repr(b)}, 16).mask();
      EXPECT_NE(std::find(all.begin(), all.end(), sup), all.end());
      EXPECT_NE(std::find(all.begin(), all.end(), inf), all.end());
      EXPECT_EQ(sup, a | b);  // a chain of submonoids
      EXPECT_EQ(inf, a & b);
    }
  }
}

TEST(Lattice, NbarSupAndInf) {
  auto const& n  = *nbar();
  auto        s2 = seq_closure(n, generated_submonoid(n, nr("2")));
  auto        s3 = seq_closure(n, generated_submonoid(n, nr("3")));
  EXPECT_TRUE(same_set(lattice_sup(n, {s2, s3}, 32), nr("0,2..,inf")));
  auto inf = lattice_inf(n, {nr("2*N,inf"), nr("3*N,inf")}, 32);
  EXPECT_TRUE(same_set(inf, nr("6*N,inf")));
  EXPECT_EQ(format_subset(n, inf), "{0.. step 6, inf}");
}

TEST(LowenheimSkolem, NbarSeeds) {
  auto const& n = *nbar();
  auto        g = gen_countably_based_sub(n, nr("inf"), 64);
  EXPECT_TRUE(same_set(g.result, nr("N,inf")));
  EXPECT_TRUE(is_sub_cu(n, g.result).value());
  auto g3 = gen_countably_based_sub(n, nr("3"), 64);
  EXPECT_TRUE(same_set(g3.result, nr("3*N,inf")));
  auto d = gen_sub_with_dim(n, nr("inf"), 0, 2, 20000);
  EXPECT_TRUE(same_set(d.result, nr("N,inf")));
  EXPECT_NE(d.answer, DimAnswer::no);
}

TEST(LowenheimSkolem, FiniteSeedsReachDimension) {
  for (auto const& st : suite()) {
    int d = dim_or_unbounded(st.table);
    if (d < 0) {
      continue;
    }
    auto c = make_finite(st.table);
    for (int e = 0; e < st.table.size(); ++e) {
      auto r = gen_sub_with_dim(*c, repr(bit(e)), d, 2, 20000);
      ASSERT_EQ(r.answer, DimAnswer::yes) << st.name;
      Mask m = r.result.mask();
      EXPECT_TRUE(contains(m, e));
      EXPECT_TRUE(is_submonoid(st.table, m));
      auto od = oracle::dim(oracle::raw(sub_table(st.table, m)), 3, 3);
      ASSERT_TRUE(od.has_value()) << st.name;
      EXPECT_LE(*od, d) << st.name;
    }
  }
}

// dim(S) <= n is equivalent to every finite subset lying in a sub-Cu of
// dimension <= n. Asking this of single elements only is weaker: the table
// below has no finite dimension, yet each element lies in a
// zero-dimensional sub-Cu.
TEST(CountableCharacterization, SingletonsDoNotSuffice) {
  auto t = parse_table(read_file(fixture("dim_singleton_gap.cutable")));
  EXPECT_FALSE(oracle::dim(oracle::raw(t), 3, 3).has_value());
  EXPECT_EQ(dim_or_unbounded(t), FiniteDimAnalysis::kUnbounded);
  for (int e = 0; e < t.size(); ++e) {
    auto ext = extend_with_dim(t, bit(0) | bit(e), 0);
    ASSERT_TRUE(ext.has_value()) << e;
    EXPECT_EQ(oracle::dim(oracle::raw(sub_table(t, *ext)), 0, 3), 0);
  }
  auto singletons = countable_characterization(t, 0, 1);
  EXPECT_FALSE(singletons.dim_at_most);
  EXPECT_TRUE(singletons.subsets_extend);
  auto full = countable_characterization(t, 0, t.size());
  EXPECT_FALSE(full.subsets_extend);
  ASSERT_TRUE(full.stuck.has_value());
}

TEST(CountableCharacterization, FiniteSubsetFormOnSuite) {
  for (auto const& st : suite()) {
    for (int n = 0; n <= 2; ++n) {
      auto r = countable_characterization(st.table, n, st.table.size());
      EXPECT_EQ(r.dim_at_most, r.subsets_extend) << st.name << " n=" << n;
    }
  }
}
