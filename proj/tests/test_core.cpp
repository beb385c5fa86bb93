#include <gtest/gtest.h>

#include <cusg/cusg.hpp>

#include "oracle.hpp"

using namespace cusg;

namespace {

  std::string fixture(std::string const& name) {
    return std::string(CUSG_FIXTURES) + "/" + name;
  }

  Element nb(std::uint64_t v) {
    return scalar(NatInf(v));
  }
  Element nb_inf() {
    return scalar(NatInf::infinity());
  }

}  // namespace

TEST(NatInf, ArithmeticAndOrder) {
  NatInf inf = NatInf::infinity();
  EXPECT_EQ(NatInf(2) + NatInf(3), NatInf(5));
  EXPECT_EQ(NatInf(2) + inf, inf);
  EXPECT_TRUE(NatInf(7) < inf);
  EXPECT_EQ(NatInf::parse("inf"), inf);
  EXPECT_EQ(NatInf::parse("12"), NatInf(12));
  EXPECT_FALSE(NatInf::parse("x1").has_value());
  EXPECT_EQ(inf.str(), "inf");
}

TEST(Table, ParsesC3Document) {
  auto t = parse_table(read_file(fixture("c3.cutable")));
  EXPECT_EQ(t.size(), 4);
  EXPECT_EQ(t, saturating_chain(3));
  EXPECT_TRUE(validate_pom(t).valid());
  EXPECT_EQ(t.add(1, 2), 3);
  EXPECT_TRUE(t.leq(1, 3));
  EXPECT_FALSE(t.leq(3, 1));
}

TEST(Table, ParseErrorsCarryPositions) {
  try {
    parse_table(read_file(fixture("bad_rows.cutable")));
    FAIL() << "accepted three add rows for n=2";
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 6);
    EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos);
  }
  try {
    parse_table(read_file(fixture("bad_version.cutable")));
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 1);
  }
  try {
    parse_table(read_file(fixture("bad_token.cutable")));
    FAIL();
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Table, RoundTripAndNormalize) {
  for (auto const& st : suite()) {
    auto text = serialize_table(st.table);
    EXPECT_EQ(parse_table(text), st.table) << st.name;
    EXPECT_EQ(normalize_table_text(text), text) << st.name;
  }
  EXPECT_EQ(normalize_table_text("CUTABLE v1\n n=2 \nadd=\n0   1\n1 1\nleq=\n1 1\n0 1\n\n\n"),
            serialize_table(saturating_chain(1)));
}

TEST(Table, ValidationNamesTheBrokenLaw) {
  // 1 + 1 = 0 is not allowed once 0 is least and the order is compatible
  FiniteCuTable t({{0, 1}, {1, 0}}, {{true, true}, {false, true}});
  auto          r = validate_pom(t);
  EXPECT_FALSE(r.valid());
  FiniteCuTable noncomm({{0, 1, 2}, {1, 2, 2}, {2, 1, 2}},
                        {{true, true, true}, {false, true, true}, {false, false, true}});
  EXPECT_TRUE(validate_pom(noncomm).violates("commutativity"));
}

TEST(Table, EnumerationCounts) {
  EXPECT_EQ(enumerate_conical_monoids(3).size(), 6u);
  EXPECT_EQ(enumerate_conical_monoids(4).size(), 63u);
  EXPECT_EQ(enumerate_pointed_orders(4).size(), 19u);
  EXPECT_EQ(enumerate_tables(3, false).size(), 4u);
  EXPECT_EQ(enumerate_tables(4, false).size(), 48u);
  EXPECT_EQ(enumerate_tables(3).size(), 2u);
  EXPECT_EQ(enumerate_tables(4).size(), 9u);
  // every enumerated table satisfies the laws by the oracle
  for (int n = 1; n <= 4; ++n) {
    for (auto const& t : enumerate_tables(n, false)) {
      EXPECT_TRUE(oracle::pom_laws(oracle::raw(t)));
      EXPECT_TRUE(validate_pom(t).valid());
    }
  }
}

TEST(Table, WaybelowIsOrderOnFiniteTables) {
  for (int n = 1; n <= 3; ++n) {
    for (auto const& t : enumerate_tables(n, false)) {
      auto r = oracle::raw(t);
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          EXPECT_EQ(t.waybelow(x, y), oracle::waybelow_by_sequences(r, x, y));
        }
      }
      EXPECT_TRUE(check_O1_to_O4(t).certified);
    }
  }
}

TEST(Table, DirectSumIsComponentwise) {
  auto s = direct_sum(saturating_chain(1), saturating_chain(2));
  EXPECT_EQ(s.size(), 6);
  EXPECT_TRUE(validate_pom(s).valid());
  auto iso = isomorphism(direct_sum(saturating_chain(2), saturating_chain(1)), s);
  EXPECT_TRUE(iso.has_value());
  EXPECT_FALSE(isomorphism(saturating_chain(3), s).has_value());
}

TEST(Nbar, WaybelowClosedForm) {
  auto n = make_nbar();
  EXPECT_TRUE(n->waybelow(nb(3), nb(5)));
  EXPECT_TRUE(n->waybelow(nb(5), nb(5)));
  EXPECT_FALSE(n->waybelow(nb_inf(), nb_inf()));
  EXPECT_TRUE(n->waybelow(nb(1000), nb_inf()));
  // definitional chain test agrees
  EXPECT_TRUE(waybelow_oracle(*n, nb(3), nb(5), 20).waybelow);
  auto r = waybelow_oracle(*n, nb_inf(), nb_inf(), 20);
  EXPECT_FALSE(r.waybelow);
  ASSERT_TRUE(r.refuter.has_value());
}

TEST(Nbar, WaybelowValidation) {
  auto r = validate_waybelow(*make_nbar(), 1000);
  EXPECT_TRUE(r.agreement);
  EXPECT_FALSE(r.discrepancy.has_value());
  EXPECT_GT(r.pairs, 0u);
  auto o = check_O1_to_O4(*make_nbar(), 1000);
  EXPECT_FALSE(o.violation);
}

TEST(Monotone, WaybelowOnTwoPointChain) {
  auto m = instantiate_catalog("mono:" + fixture("chain2.poset"));
  auto f = m->parse("(1,1)");
  auto g = m->parse("(1,inf)");
  auto h = m->parse("(0,inf)");
  EXPECT_TRUE(m->waybelow(f, g));
  EXPECT_TRUE(waybelow_oracle(*m, f, g, 6).waybelow);
  EXPECT_FALSE(m->waybelow(h, g));
  EXPECT_FALSE(waybelow_oracle(*m, h, g, 6).waybelow);
  EXPECT_TRUE(validate_waybelow(*m, 20000).agreement);
}

TEST(Monotone, AntichainIsSumOfTwoNbar) {
  auto m   = instantiate_catalog("mono:" + fixture("antichain2.poset"));
  auto sum = instantiate_catalog("sum:nbar+nbar");
  for (auto const& a : m->fragment(4)) {
    EXPECT_TRUE(sum->contains(a));
    for (auto const& b : m->fragment(4)) {
      EXPECT_EQ(m->add(a, b), sum->add(a, b));
      EXPECT_EQ(m->leq(a, b), sum->leq(a, b));
      EXPECT_EQ(m->waybelow(a, b), sum->waybelow(a, b));
    }
  }
}

TEST(Sum, WaybelowIsComponentwise) {
  auto s = instantiate_catalog("sum:nbar+chain:2");
  EXPECT_TRUE(s->waybelow(s->parse("(3,2)"), s->parse("(4,2)")));
  EXPECT_FALSE(s->waybelow(s->parse("(inf,0)"), s->parse("(inf,2)")));
  EXPECT_TRUE(validate_waybelow(*s, 20000).agreement);
}

TEST(Catalog, RejectsUnknownIds) {
  EXPECT_THROW(instantiate_catalog("chain:0"), PreconditionError);
  EXPECT_THROW(instantiate_catalog("no-such-carrier"), Error);
  EXPECT_EQ(instantiate_catalog("chain:3")->table()->size(), 4);
  EXPECT_EQ(catalog_entries().size(), 5u);
}

TEST(Chains, SupremaOnNbar) {
  auto n = make_nbar();
  EXPECT_EQ(sup_chain(*n, ChainDescriptor::counting()), nb_inf());
  EXPECT_EQ(sup_chain(*n, ChainDescriptor::eventually_constant({nb(1), nb(4)})), nb(4));
  EXPECT_THROW(validate_chain(*n, ChainDescriptor::eventually_constant({nb(4), nb(1)})),
               ChainError);
}
