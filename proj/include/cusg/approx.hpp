#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "carrier.hpp"
#include "dimension.hpp"
#include "waybelow.hpp"

namespace cusg {

  ////////////////////////////////////////////////////////////////////////
  // Cu-morphisms
  ////////////////////////////////////////////////////////////////////////

  using ElementMap = std::function<Element(Element const&)>;

  struct CuMorphism {
    CarrierPtr  source;
    CarrierPtr  target;
    ElementMap  map;
    std::string name;

    Element operator()(Element const& e) const {
      source->require(e);
      Element v = map(e);
      target->require(v);
      return v;
    }
  };

  // Table-given map between finite carriers: source index i goes to image[i].
  inline CuMorphism finite_morphism(CarrierPtr       source,
                                    CarrierPtr       target,
                                    std::vector<int> image,
                                    std::string      name = "map") {
    auto const* s = source->table();
    if (!s || !target->table()) {
      throw PreconditionError("finite_morphism needs finite carriers");
    }
    if (static_cast<int>(image.size()) != s->size()) {
      throw PreconditionError("map has " + std::to_string(image.size()) + " entries, source has "
                              + std::to_string(s->size()) + " elements");
    }
    for (int v : image) {
      if (v < 0 || v >= target->table()->size()) {
        throw PreconditionError("map value " + std::to_string(v) + " is outside the target");
      }
    }
    return {source, target,
            [image](Element const& e) { return FiniteCarrier::wrap(image[FiniteCarrier::idx(e)]); },
            std::move(name)};
  }

  inline CuMorphism identity_morphism(CarrierPtr s) {
    return {s, s, [](Element const& e) { return e; }, "id"};
  }

  // The map from a carrier onto its zero.
  inline CuMorphism zero_morphism(CarrierPtr source, CarrierPtr target) {
    Element z = target->zero();
    return {source, target, [z](Element const&) { return z; }, "zero"};
  }

  // n -> k*n, inf -> inf (k*0 = 0) on nbar.
  inline CuMorphism nbar_scaling(NatInf k) {
    auto nb = make_nbar();
    return {nb, nb,
            [k](Element const& e) {
              if (e[0] == NatInf(0) || k == NatInf(0)) {
                return scalar(NatInf(0));
              }
              if (e[0].is_infinite() || k.is_infinite()) {
                return scalar(NatInf::infinity());
              }
              return scalar(NatInf(k.value() * e[0].value()));
            },
            "scale:" + k.str()};
  }

  struct PropertyCheck {
    std::string          property;
    Verdict              verdict = Verdict::holds;
    std::vector<Element> witness;
    std::string          formatted;
  };

  struct MorphismReport {
    std::string   name;
    PropertyCheck monoid{"monoid-morphism", Verdict::holds, {}, {}};
    PropertyCheck order{"order-preserving", Verdict::holds, {}, {}};
    PropertyCheck sup{"sup-preserving", Verdict::holds, {}, {}};
    PropertyCheck waybelow{"waybelow-preserving", Verdict::holds, {}, {}};
    PropertyCheck embedding{"order-embedding", Verdict::holds, {}, {}};          // <= reflected
    PropertyCheck embedding_waybelow{"waybelow-reflecting", Verdict::holds, {}, {}};
    bool          exhaustive = true;
    std::uint64_t bound      = 0;

    bool is_cu_morphism() const {
      return monoid.verdict != Verdict::fails && order.verdict != Verdict::fails
             && sup.verdict != Verdict::fails && waybelow.verdict != Verdict::fails;
    }
    std::vector<PropertyCheck const*> checks() const {
      return {&monoid, &order, &sup, &waybelow, &embedding, &embedding_waybelow};
    }
  };

  namespace detail {
    inline void fail(PropertyCheck&              c,
                     Carrier const&              s,
                     std::vector<Element> const& w) {
      if (c.verdict == Verdict::fails) {
        return;
      }
      c.verdict = Verdict::fails;
      c.witness = w;
      for (std::size_t i = 0; i < w.size(); ++i) {
        c.formatted += (i ? ", " : "") + s.format(w[i]);
      }
    }

    inline std::uint64_t pair_bound(Carrier const& s, std::uint64_t fuel) {
      if (s.is_finite()) {
        return 0;
      }
      std::uint64_t b = 0;
      while (b < 64) {
        auto f = s.fragment(b + 1).size();
        if (f * f * f > fuel) {  // the sup check is cubic in the fragment
          break;
        }
        ++b;
      }
      return b;
    }
  }  // namespace detail

  // Checks each defining property of a Cu-morphism, and order-embedding in
  // both its <= and << forms. Exhaustive on finite sources; on catalog
  // sources over a fragment sized by `fuel` (recorded in `bound`, with
  // `exhaustive` false).
  inline MorphismReport validate_morphism(CuMorphism const& f, std::uint64_t fuel = 20000) {
    Carrier const& s = *f.source;
    Carrier const& t = *f.target;
    MorphismReport r;
    r.name       = f.name;
    r.bound      = detail::pair_bound(s, fuel);
    r.exhaustive = s.is_finite();
    auto frag    = s.fragment(r.bound);

    if (f(s.zero()) != t.zero()) {
      detail::fail(r.monoid, s, {s.zero()});
    }
    for (auto const& x : frag) {
      for (auto const& y : frag) {
        Element fx = f(x);
        Element fy = f(y);
        if (f(s.add(x, y)) != t.add(fx, fy)) {
          detail::fail(r.monoid, s, {x, y});
        }
        if (s.leq(x, y) && !t.leq(fx, fy)) {
          detail::fail(r.order, s, {x, y});
        }
        if (s.waybelow(x, y) && !t.waybelow(fx, fy)) {
          detail::fail(r.waybelow, s, {x, y});
        }
        if (t.leq(fx, fy) && !s.leq(x, y)) {
          detail::fail(r.embedding, s, {x, y});
        }
        if (t.waybelow(fx, fy) && !s.waybelow(x, y)) {
          detail::fail(r.embedding_waybelow, s, {x, y});
        }
      }
    }
    // f(sup c) is the supremum of f(c_k) iff every w << f(sup c) is below
    // some f(c_k) (given monotonicity).
    auto h      = detail::horizon(s, r.bound);
    auto family = detail::chain_family(s, frag, h);
    auto tfrag  = t.fragment(r.bound);
    for (auto const& c : family) {
      Element fs = f(c.sup);
      for (auto const& w : tfrag) {
        if (!t.waybelow(w, fs)) {
          continue;
        }
        bool reached = false;
        for (auto const& term : c.terms) {
          reached = reached || t.leq(w, f(term));
        }
        if (!reached) {
          detail::fail(r.sup, s, {c.sup});
        }
      }
    }
    return r;
  }

  struct EmbeddingVerdict {
    Verdict              verdict = Verdict::holds;
    bool                 forms_agree = true;
    std::vector<Element> witness;
  };

  // Order-embedding via <=-reflection and via <<-reflection.
  inline EmbeddingVerdict is_order_embedding(CuMorphism const& f, std::uint64_t fuel = 20000) {
    auto             r = validate_morphism(f, fuel);
    EmbeddingVerdict out;
    out.verdict     = r.embedding.verdict;
    out.forms_agree = r.embedding.verdict == r.embedding_waybelow.verdict;
    out.witness     = r.embedding.witness;
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Approximation
  ////////////////////////////////////////////////////////////////////////

  struct ApproxFamily {
    CarrierPtr              target;
    std::vector<CuMorphism> members;
  };

  inline ApproxFamily identity_family(CarrierPtr s) {
    return {s, {identity_morphism(s)}};
  }

  struct ApproxQuery {
    std::vector<Element>                    xp;  // x'_j
    std::vector<Element>                    x;   // x_j
    std::vector<std::vector<std::uint64_t>> m;   // m_k(j)
    std::vector<std::vector<std::uint64_t>> n;   // n_k(j)
  };

  namespace detail {
    inline Element weighted_sum(Carrier const&                    s,
                                std::vector<std::uint64_t> const& coeff,
                                std::vector<Element> const&       xs) {
      Element out = s.zero();
      for (std::size_t j = 0; j < xs.size(); ++j) {
        out = s.add(out, s.multiple(coeff[j], xs[j]));
      }
      return out;
    }
  }  // namespace detail

  inline bool query_premise(Carrier const& s, ApproxQuery const& q) {
    if (q.xp.size() != q.x.size() || q.m.size() != q.n.size()) {
      return false;
    }
    for (std::size_t j = 0; j < q.x.size(); ++j) {
      if (!s.waybelow(q.xp[j], q.x[j])) {
        return false;
      }
    }
    for (std::size_t k = 0; k < q.m.size(); ++k) {
      if (q.m[k].size() != q.x.size() || q.n[k].size() != q.x.size()) {
        return false;
      }
      if (!s.waybelow(detail::weighted_sum(s, q.m[k], q.x), detail::weighted_sum(s, q.n[k], q.xp))) {
        return false;
      }
    }
    return true;
  }

  struct QueryAnswer {
    Verdict              verdict = Verdict::fails;
    int                  member  = -1;
    std::vector<Element> ys;
    std::uint64_t        tried = 0;
  };

  // Searches the members in order for y_j with x'_j << phi(y_j) << x_j and
  // sum m_k(j) y_j << sum n_k(j) y_j. Candidates come from the member's basis
  // fragment with the given bound.
  inline QueryAnswer answer_query(ApproxFamily const& fam,
                                  ApproxQuery const&  q,
                                  std::uint64_t       bound,
                                  std::uint64_t       fuel) {
    QueryAnswer out;
    bool        truncated = false;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      auto const&                       f = fam.members[i];
      Carrier const&                    src = *f.source;
      Carrier const&                    tgt = *f.target;
      auto                              dom = src.basis_fragment(bound);
      std::vector<std::vector<Element>> cand(q.x.size());
      bool                              empty = false;
      for (std::size_t j = 0; j < q.x.size(); ++j) {
        for (auto const& y : dom) {
          Element fy = f(y);
          if (tgt.waybelow(q.xp[j], fy) && tgt.waybelow(fy, q.x[j])) {
            cand[j].push_back(y);
          }
        }
        empty = empty || cand[j].empty();
      }
      if (empty) {
        continue;
      }
      std::vector<Element>         ys(q.x.size());
      std::function<bool(size_t)>  rec = [&](std::size_t j) -> bool {
        if (j == q.x.size()) {
          if (++out.tried > fuel) {
            truncated = true;
            return false;
          }
          for (std::size_t k = 0; k < q.m.size(); ++k) {
            if (!src.waybelow(detail::weighted_sum(src, q.m[k], ys),
                              detail::weighted_sum(src, q.n[k], ys))) {
              return false;
            }
          }
          return true;
        }
        for (auto const& y : cand[j]) {
          ys[j] = y;
          if (rec(j + 1)) {
            return true;
          }
          if (truncated) {
            return false;
          }
        }
        return false;
      };
      if (rec(0)) {
        out.verdict = Verdict::holds;
        out.member  = static_cast<int>(i);
        out.ys      = ys;
        return out;
      }
    }
    // A fragment-limited search proves nothing on catalog members.
    bool exact = !truncated;
    for (auto const& f : fam.members) {
      exact = exact && f.source->is_finite();
    }
    out.verdict = exact ? Verdict::fails : Verdict::unknown;
    return out;
  }

  struct QueryBounds {
    int           j_max       = 3;  // |J|
    int           k_max       = 3;  // |K|
    std::uint64_t coeff_max   = 3;
    int           queries     = 200;
    std::uint64_t element_bound = 4;  // fragment bound on catalog carriers
    std::uint32_t seed        = 1;
  };

  // A reproducible corpus of queries satisfying their premise: random
  // x'_j << x_j from the target fragment and random coefficient rows. The
  // corpus always includes the one-variable queries x' << x with K empty.
  inline std::vector<ApproxQuery> query_corpus(Carrier const& s, QueryBounds const& b) {
    std::vector<ApproxQuery> out;
    auto                     frag = s.fragment(b.element_bound);
    std::vector<std::pair<Element, Element>> pairs;
    for (auto const& x : frag) {
      for (auto const& xp : frag) {
        if (s.waybelow(xp, x)) {
          pairs.emplace_back(xp, x);
        }
      }
    }
    for (auto const& [xp, x] : pairs) {
      out.push_back({{xp}, {x}, {}, {}});
    }
    std::mt19937 rng(b.seed);
    auto pick = [&](std::uint64_t n) { return static_cast<std::uint64_t>(rng() % n); };
    int  made = 0;
    for (int attempt = 0; attempt < b.queries * 50 && made < b.queries; ++attempt) {
      ApproxQuery q;
      auto        nj = 1 + pick(static_cast<std::uint64_t>(b.j_max));
      auto        nk = 1 + pick(static_cast<std::uint64_t>(b.k_max));
      for (std::uint64_t j = 0; j < nj; ++j) {
        auto const& pr = pairs[pick(pairs.size())];
        q.xp.push_back(pr.first);
        q.x.push_back(pr.second);
      }
      for (std::uint64_t k = 0; k < nk; ++k) {
        std::vector<std::uint64_t> mk, nk_;
        for (std::uint64_t j = 0; j < nj; ++j) {
          mk.push_back(pick(b.coeff_max + 1));
          nk_.push_back(pick(b.coeff_max + 1));
        }
        q.m.push_back(mk);
        q.n.push_back(nk_);
      }
      if (query_premise(s, q)) {
        out.push_back(q);
        ++made;
      }
    }
    return out;
  }

  struct ApproxReport {
    Verdict                    verdict = Verdict::holds;
    std::size_t                queries = 0;
    std::size_t                rejected = 0;  // premise failed
    std::optional<ApproxQuery> failing;
    std::vector<QueryAnswer>   answers;
    QueryBounds                bounds;
    std::vector<MorphismReport> members;
  };

  // Validates every member, rejects queries whose premise fails, and answers
  // the rest. Fails on the first query without witnesses.
  inline ApproxReport check_approximates(ApproxFamily const&             fam,
                                         std::vector<ApproxQuery> const& queries,
                                         QueryBounds const&              bounds,
                                         std::uint64_t                   fuel = 100000) {
    ApproxReport r;
    r.bounds = bounds;
    for (auto const& f : fam.members) {
      if (f.target.get() != fam.target.get() && f.target->name() != fam.target->name()) {
        throw PreconditionError("member " + f.name + " does not map into " + fam.target->name());
      }
      r.members.push_back(validate_morphism(f));
      if (!r.members.back().is_cu_morphism()) {
        throw PreconditionError("member " + f.name + " is not a Cu-morphism");
      }
    }
    for (auto const& q : queries) {
      if (!query_premise(*fam.target, q)) {
        ++r.rejected;
        continue;
      }
      ++r.queries;
      auto a = answer_query(fam, q, bounds.element_bound + 1, fuel);
      r.answers.push_back(a);
      if (a.verdict == Verdict::fails) {
        r.verdict = Verdict::fails;
        r.failing = q;
        return r;
      }
      if (a.verdict == Verdict::unknown) {
        r.verdict = Verdict::unknown;
      }
    }
    return r;
  }

  inline ApproxReport check_approximates(ApproxFamily const& fam,
                                         QueryBounds const&  bounds,
                                         std::uint64_t       fuel = 100000) {
    return check_approximates(fam, query_corpus(*fam.target, bounds), bounds, fuel);
  }

  ////////////////////////////////////////////////////////////////////////
  // Inductive limits of finite chains
  ////////////////////////////////////////////////////////////////////////

  struct ChainSystem {
    std::vector<FiniteCuTable>    stages;
    std::vector<std::vector<int>> maps;  // maps[i]: stage i -> stage i+1
  };

  // C_1 -> C_2 -> C_4 -> ... with k -> 2k.
  inline ChainSystem doubling_chain(int length) {
    ChainSystem c;
    for (int i = 0; i < length; ++i) {
      c.stages.push_back(saturating_chain(1 << i));
    }
    for (int i = 0; i + 1 < length; ++i) {
      std::vector<int> m;
      for (int k = 0; k <= (1 << i); ++k) {
        m.push_back(2 * k);
      }
      c.maps.push_back(m);
    }
    return c;
  }

  inline ChainSystem constant_chain(FiniteCuTable const& s, int length) {
    ChainSystem c;
    std::vector<int> id(s.size());
    for (int i = 0; i < s.size(); ++i) {
      id[i] = i;
    }
    for (int i = 0; i < length; ++i) {
      c.stages.push_back(s);
      if (i + 1 < length) {
        c.maps.push_back(id);
      }
    }
    return c;
  }

  struct LimitReport {
    FiniteCuTable                 limit = trivial_table();
    std::vector<std::vector<int>> canonical;  // canonical[l]: stage l -> limit
    std::vector<MorphismReport>   connecting;
    bool                          l0 = true;
    bool                          l1 = true;
    bool                          l2 = true;
    std::string                   l1_witness;
    std::string                   l2_witness;
    ApproxReport                  approximation;

    bool ok() const {
      return l0 && l1 && l2 && approximation.verdict == Verdict::holds;
    }
  };

  namespace detail {
    // phi_{mu,lambda} as an index map.
    inline std::vector<int> connect(ChainSystem const& c, int lambda, int mu) {
      std::vector<int> out(c.stages[lambda].size());
      for (int x = 0; x < c.stages[lambda].size(); ++x) {
        int v = x;
        for (int i = lambda; i < mu; ++i) {
          v = c.maps[i][v];
        }
        out[x] = v;
      }
      return out;
    }
  }  // namespace detail

  // Threads (stage, element) are identified when their images agree at the
  // last stage, where the chain stabilizes; order and addition are read off
  // there. Then (L0)-(L2) are checked exhaustively and the canonical family
  // is checked to approximate the limit.
  inline LimitReport build_limit(ChainSystem const& c, QueryBounds const& bounds = {}) {
    if (c.stages.empty() || c.maps.size() + 1 != c.stages.size()) {
      throw ChainError("a chain system needs one map between consecutive stages");
    }
    LimitReport r;
    int const   last = static_cast<int>(c.stages.size()) - 1;
    std::vector<CarrierPtr> carriers;
    for (auto const& s : c.stages) {
      carriers.push_back(make_finite(s, "stage"));
    }
    for (int i = 0; i < last; ++i) {
      r.connecting.push_back(validate_morphism(finite_morphism(carriers[i], carriers[i + 1], c.maps[i])));
      if (!r.connecting.back().is_cu_morphism()) {
        throw ChainError("connecting map " + std::to_string(i) + " is not a Cu-morphism");
      }
    }

    Mask image = 0;
    std::vector<std::vector<int>> to_last;
    for (int l = 0; l <= last; ++l) {
      to_last.push_back(detail::connect(c, l, last));
      for (int v : to_last.back()) {
        image |= bit(v);
      }
    }
    std::vector<int> index;
    r.limit = sub_table(c.stages[last], image, &index);
    for (int l = 0; l <= last; ++l) {
      std::vector<int> m;
      for (int v : to_last[l]) {
        m.push_back(index[v]);
      }
      r.canonical.push_back(m);
    }

    // (L0)
    for (int l = 0; l <= last; ++l) {
      for (int mu = l; mu <= last; ++mu) {
        auto con = detail::connect(c, l, mu);
        for (int x = 0; x < c.stages[l].size(); ++x) {
          r.l0 = r.l0 && r.canonical[mu][con[x]] == r.canonical[l][x];
        }
      }
    }
    // (L1)
    for (int l = 0; l <= last && r.l1; ++l) {
      for (int mu = 0; mu <= last && r.l1; ++mu) {
        for (int a = 0; a < c.stages[l].size() && r.l1; ++a) {
          for (int b = 0; b < c.stages[mu].size() && r.l1; ++b) {
            if (!r.limit.waybelow(r.canonical[l][a], r.canonical[mu][b])) {
              continue;
            }
            bool found = false;
            for (int nu = std::max(l, mu); nu <= last && !found; ++nu) {
              found = c.stages[nu].waybelow(detail::connect(c, l, nu)[a],
                                            detail::connect(c, mu, nu)[b]);
            }
            if (!found) {
              r.l1         = false;
              r.l1_witness = "stage " + std::to_string(l) + " element " + std::to_string(a)
                             + ", stage " + std::to_string(mu) + " element " + std::to_string(b);
            }
          }
        }
      }
    }
    // (L2)
    for (int xp = 0; xp < r.limit.size() && r.l2; ++xp) {
      for (int x = 0; x < r.limit.size() && r.l2; ++x) {
        if (!r.limit.waybelow(xp, x)) {
          continue;
        }
        bool found = false;
        for (int l = 0; l <= last && !found; ++l) {
          for (int a = 0; a < c.stages[l].size() && !found; ++a) {
            int v = r.canonical[l][a];
            found = r.limit.waybelow(xp, v) && r.limit.waybelow(v, x);
          }
        }
        if (!found) {
          r.l2         = false;
          r.l2_witness = r.limit.label(xp) + " << " + r.limit.label(x);
        }
      }
    }

    auto         lim = std::make_shared<FiniteCarrier const>(r.limit, "limit", Backend::limit);
    ApproxFamily fam{lim, {}};
    for (int l = 0; l <= last; ++l) {
      fam.members.push_back(finite_morphism(carriers[l], lim, r.canonical[l],
                                            "stage" + std::to_string(l)));
    }
    r.approximation = check_approximates(fam, bounds);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Property transfer
  ////////////////////////////////////////////////////////////////////////

  enum class TransferProperty { o5, o6, o7, wc, dim };

  inline std::string to_string(TransferProperty p) {
    switch (p) {
      case TransferProperty::o5:
        return "o5";
      case TransferProperty::o6:
        return "o6";
      case TransferProperty::o7:
        return "o7";
      case TransferProperty::wc:
        return "wc";
      case TransferProperty::dim:
        return "dim";
    }
    return "?";
  }

  struct TransferReport {
    TransferProperty         property;
    std::vector<std::string> member_results;
    std::string              target_result;
    bool                     premise  = true;  // every member has the property
    bool                     violated = false;  // premise holds, target provably fails
    bool                     exact    = true;
  };

  // Evaluates the property on every member source and on the target, with
  // the same bounds, and checks the implication members => target. For dim
  // the bound transferred is the largest member dimension.
  inline TransferReport transfer_check(ApproxFamily const& fam,
                                       TransferProperty    p,
                                       std::uint64_t       fuel  = 20000,
                                       int                 max_n = 3,
                                       int                 width = 2) {
    TransferReport r{p, {}, {}};
    if (p == TransferProperty::dim) {
      int n = 0;
      for (auto const& f : fam.members) {
        auto d = dim(*f.source, max_n, width, fuel);
        r.member_results.push_back(d.str());
        r.exact = r.exact && d.exact;
        if (d.exceeds) {
          r.premise = false;
        } else {
          n = std::max(n, *d.value);
        }
      }
      auto check      = check_dim_at_most(*fam.target, n, width, fuel);
      r.target_result = "dim <= " + std::to_string(n) + ": " + to_string(check.answer);
      r.exact         = r.exact && check.answer != DimAnswer::up_to_bounds;
      r.violated      = r.premise && check.answer == DimAnswer::no;
      return r;
    }
    Axiom a = p == TransferProperty::o5   ? Axiom::o5
              : p == TransferProperty::o6 ? Axiom::o6
              : p == TransferProperty::o7 ? Axiom::o7
                                          : Axiom::wc;
    auto run = [&](Carrier const& s) {
      auto sc = fuel_scope(s, fuel, quantifier_count(a, Mode::direct));
      return check_axiom(s, a, sc, Mode::direct, 0);
    };
    for (auto const& f : fam.members) {
      auto v = run(*f.source);
      r.member_results.push_back(to_string(v.verdict));
      r.premise = r.premise && v.verdict != Verdict::fails;
      r.exact   = r.exact && v.verdict != Verdict::unknown;
    }
    auto t          = run(*fam.target);
    r.target_result = to_string(t.verdict);
    r.exact         = r.exact && t.verdict != Verdict::unknown;
    r.violated      = r.premise && t.verdict == Verdict::fails;
    return r;
  }

}  // namespace cusg
