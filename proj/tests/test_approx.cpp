#include <gtest/gtest.h>

#include <cusg/cusg.hpp>

using namespace cusg;

namespace {

  std::string fixture(std::string const& name) {
    return std::string(CUSG_FIXTURES) + "/" + name;
  }

  CuMorphism load_map(std::string const& file, CarrierPtr s, CarrierPtr t) {
    return parse_map(read_file(fixture(file)), s, t);
  }

}  // namespace

TEST(Morphism, DoublingOnNbar) {
  auto r = validate_morphism(nbar_scaling(NatInf(2)));
  EXPECT_TRUE(r.is_cu_morphism());
  EXPECT_EQ(r.embedding.verdict, Verdict::holds);
  EXPECT_EQ(r.embedding_waybelow.verdict, Verdict::holds);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_GT(r.bound, 0u);
  EXPECT_EQ(is_order_embedding(nbar_scaling(NatInf(2))).verdict, Verdict::holds);
}

TEST(Morphism, ZeroMapOnC2) {
  auto c2 = make_chain(2);
  auto r  = validate_morphism(zero_morphism(c2, c2));
  EXPECT_TRUE(r.is_cu_morphism());
  EXPECT_TRUE(r.exhaustive);
  ASSERT_EQ(r.embedding.verdict, Verdict::fails);
  // f(1) <= f(0) while 1 <= 0 fails
  EXPECT_EQ(r.embedding.formatted, "1, 0");
}

TEST(Morphism, CollapseIsNotAnEmbedding) {
  auto f = load_map("c2_collapse.cumap", make_chain(2), make_chain(1));
  auto r = validate_morphism(f);
  EXPECT_TRUE(r.is_cu_morphism());
  auto e = is_order_embedding(f);
  ASSERT_EQ(e.verdict, Verdict::fails);
  EXPECT_TRUE(e.forms_agree);
  EXPECT_EQ(r.embedding.formatted, "2, 1");
}

TEST(Morphism, NonAdditiveMapIsRejected) {
  auto c2 = make_chain(2);
  auto f  = finite_morphism(c2, c2, {0, 2, 2});  // 1 + 1 = 2 but f(1) + f(1) = 2 too
  EXPECT_TRUE(validate_morphism(f).is_cu_morphism());
  auto g = finite_morphism(c2, c2, {0, 1, 1});  // g(1 + 1) = 1 != g(1) + g(1)
  auto r = validate_morphism(g);
  EXPECT_EQ(r.monoid.verdict, Verdict::fails);
  EXPECT_FALSE(r.is_cu_morphism());
}

TEST(Formats, MapParsing) {
  auto f = load_map("nbar_double.cumap", make_nbar(), make_nbar());
  EXPECT_EQ(f(scalar(NatInf(7))), scalar(NatInf(14)));
  EXPECT_EQ(f(scalar(NatInf::infinity())), scalar(NatInf::infinity()));
  EXPECT_THROW(parse_map("CUMAP v1\n0 -> 0\n", make_chain(2), make_chain(2)), ParseError);
  EXPECT_THROW(parse_map("CUMAP v2\n", make_chain(2), make_chain(2)), ParseError);
  EXPECT_THROW(parse_map("CUMAP v1\n0 -> 0\n1 2\n", make_chain(1), make_chain(1)), ParseError);
}

TEST(Formats, ChainSystemRoundTrip) {
  auto c = parse_chain_system(read_file(fixture("doubling.cuchain")), CUSG_FIXTURES);
  ASSERT_EQ(c.stages.size(), 3u);
  EXPECT_EQ(serialize_chain_system(c), read_file(fixture("doubling.cuchain")));
  EXPECT_THROW(parse_chain_system("CUCHAIN v1\nstage chain:1\nstage chain:2\n"), ParseError);
  EXPECT_THROW(parse_chain_system("CUCHAIN v1\nstage nbar\n"), ParseError);
}

TEST(Approximation, IdentityFamilies) {
  for (auto spec : {"chain:2", "chain:4", "nbar"}) {
    auto r = check_approximates(identity_family(instantiate_catalog(spec)), QueryBounds{});
    EXPECT_EQ(r.verdict, Verdict::holds) << spec;
    EXPECT_GT(r.queries, 0u);
  }
}

TEST(Approximation, ZeroFamilyFails) {
  for (auto spec : {"chain:2", "nbar"}) {
    auto         s = instantiate_catalog(spec);
    ApproxFamily fam{s, {zero_morphism(make_finite(trivial_table()), s)}};
    auto         r = check_approximates(fam, QueryBounds{});
    EXPECT_EQ(r.verdict, Verdict::fails) << spec;
    ASSERT_TRUE(r.failing.has_value());
    EXPECT_TRUE(query_premise(*s, *r.failing));
  }
}

TEST(Approximation, QueriesReportTheirBounds) {
  QueryBounds b;
  b.j_max     = 2;
  b.k_max     = 2;
  b.coeff_max = 2;
  b.queries   = 50;
  auto r      = check_approximates(identity_family(make_nbar()), b);
  EXPECT_EQ(r.bounds.j_max, 2);
  EXPECT_EQ(r.bounds.queries, 50);
  EXPECT_EQ(query_corpus(*make_nbar(), b).size(), query_corpus(*make_nbar(), b).size());
}

TEST(Limit, DoublingChains) {
  for (int length = 1; length <= 4; ++length) {
    auto lim = build_limit(doubling_chain(length));
    EXPECT_TRUE(lim.ok()) << length;
    int top = 1 << (length - 1);
    EXPECT_TRUE(isomorphism(lim.limit, saturating_chain(top)).has_value()) << length;
    EXPECT_EQ(dim(lim.limit).value, 0);
  }
}

TEST(Limit, ConstantChainIsTheStage) {
  for (auto const& st : suite()) {
    if (st.table.size() > 4) {
      continue;
    }
    auto lim = build_limit(constant_chain(st.table, 3));
    EXPECT_TRUE(lim.l0 && lim.l1 && lim.l2) << st.name;
    EXPECT_TRUE(isomorphism(lim.limit, st.table).has_value()) << st.name;
  }
}

TEST(Transfer, NoViolationOnIdentityAndLimits) {
  for (auto p : {TransferProperty::o5, TransferProperty::o6, TransferProperty::o7,
                 TransferProperty::wc, TransferProperty::dim}) {
    auto r = transfer_check(identity_family(make_chain(3)), p);
    EXPECT_FALSE(r.violated) << to_string(p);
    auto lim = build_limit(doubling_chain(3));
    auto t   = transfer_check(
        ApproxFamily{make_finite(lim.limit), {identity_morphism(make_finite(lim.limit))}}, p);
    EXPECT_FALSE(t.violated) << to_string(p);
  }
}
