#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "carrier.hpp"
#include "chain.hpp"
#include "dimension.hpp"
#include "nbar_subset.hpp"
#include "table.hpp"

namespace cusg {

  // A subset of a carrier: a bitmask on finite tables, an eventually
  // periodic set on nbar. `stabilized` is false when an iteration ran out of
  // fuel; such a value is a partial result, never the claimed closure.
  struct SubMonoidRepr {
    std::variant<Mask, NbarSubset> set;
    bool                           stabilized = true;
    int                            iterations = 0;

    bool is_finite_backend() const {
      return std::holds_alternative<Mask>(set);
    }
    Mask mask() const {
      return std::get<Mask>(set);
    }
    NbarSubset const& nbar() const {
      return std::get<NbarSubset>(set);
    }

    friend bool same_set(SubMonoidRepr const& a, SubMonoidRepr const& b) {
      return a.set == b.set;
    }
  };

  inline SubMonoidRepr repr(Mask m) {
    return {m, true, 0};
  }
  inline SubMonoidRepr repr(NbarSubset s) {
    return {std::move(s), true, 0};
  }

  inline std::string format_subset(FiniteCuTable const& t, Mask m) {
    std::string out = "{";
    bool        first = true;
    for_each_bit(m, [&](int e) {
      out += (first ? "" : ", ") + t.label(e);
      first = false;
    });
    return out + "}";
  }

  // Which backend a carrier uses for subsets.
  inline void require_subset_backend(Carrier const& s) {
    if (!s.is_finite() && s.name() != "nbar") {
      throw PreconditionError("subset operations are implemented for finite tables and nbar, not "
                              + s.name());
    }
  }

  inline std::string format_subset(Carrier const& s, SubMonoidRepr const& t) {
    if (t.is_finite_backend()) {
      return format_subset(*s.table(), t.mask());
    }
    return t.nbar().str();
  }

  // Parses a subset: element labels/indices for tables, nbar syntax otherwise.
  inline SubMonoidRepr parse_subset(Carrier const& s, std::string_view text) {
    require_subset_backend(s);
    if (auto const* t = s.table()) {
      Mask        m = 0;
      std::string str(text);
      std::replace(str.begin(), str.end(), '{', ' ');
      std::replace(str.begin(), str.end(), '}', ' ');
      std::stringstream in(str);
      std::string       tok;
      while (std::getline(in, tok, ',')) {
        tok = detail::trim(tok);
        if (tok.empty()) {
          continue;
        }
        int idx = -1;
        for (int i = 0; i < t->size(); ++i) {
          if (t->label(i) == tok) {
            idx = i;
          }
        }
        if (idx < 0) {
          idx = FiniteCarrier::idx(s.parse(tok));
        }
        m |= bit(idx);
      }
      return repr(m);
    }
    return repr(parse_nbar_subset(text));
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite tables
  ////////////////////////////////////////////////////////////////////////

  namespace finite_subsets {
    inline Mask generated(FiniteCuTable const& t, Mask seed) {
      return generate(t, seed);
    }
    // Increasing sequences in a finite poset are eventually constant, so the
    // supremum of a sequence from T is its final value, which lies in T.
    inline Mask seq_closure(FiniteCuTable const&, Mask m) {
      return m;
    }
    // A way-below increasing sequence is eventually constant at some c with
    // c << c.
    inline Mask derived(FiniteCuTable const& t, Mask m) {
      Mask out = 0;
      for_each_bit(m, [&](int c) {
        if (t.waybelow(c, c)) {
          out |= bit(c);
        }
      });
      return out;
    }
    // Closed under sequence suprema, and every x' << x with x in T has
    // y in T with x' << y << x.
    inline bool is_sub_cu_interpolation(FiniteCuTable const& t, Mask m) {
      if (!is_submonoid(t, m) || seq_closure(t, m) != m) {
        return false;
      }
      for (int xp = 0; xp < t.size(); ++xp) {
        bool ok = true;
        for_each_bit(m, [&](int x) {
          if (!t.waybelow(xp, x)) {
            return;
          }
          bool found = false;
          for_each_bit(m, [&](int y) { found = found || (t.waybelow(xp, y) && t.waybelow(y, x)); });
          ok = ok && found;
        });
        if (!ok) {
          return false;
        }
      }
      return true;
    }
    inline bool is_sub_cu_derived(FiniteCuTable const& t, Mask m) {
      return is_submonoid(t, m) && derived(t, m) == m;
    }
  }  // namespace finite_subsets

  ////////////////////////////////////////////////////////////////////////
  // {0, 1, ..., inf}
  ////////////////////////////////////////////////////////////////////////

  namespace nbar_subsets {
    inline NbarSubset generated(NbarSubset const& seed) {
      return generated_submonoid(seed);
    }
    // An increasing sequence from T is eventually constant (supremum in T)
    // or unbounded (supremum inf), the latter iff T has infinitely many
    // naturals.
    inline NbarSubset seq_closure(NbarSubset const& t) {
      return t.with_inf(t.has_inf() || t.finite_part_infinite());
    }
    // Each term of a way-below increasing sequence is finite (inf << inf
    // fails), so the suprema are the naturals of T plus inf when there are
    // infinitely many of them.
    inline NbarSubset derived(NbarSubset const& t) {
      return t.with_inf(t.finite_part_infinite());
    }
    inline bool is_sub_cu_interpolation(NbarSubset const& t) {
      if (!t.contains(NatInf(0)) || generated(t) != t || seq_closure(t) != t) {
        return false;
      }
      // x finite: y = x. x = inf: every natural x' needs a natural y >= x'
      // in T, i.e. T has unboundedly many naturals.
      return !t.has_inf() || t.finite_part_infinite();
    }
    inline bool is_sub_cu_derived(NbarSubset const& t) {
      return t.contains(NatInf(0)) && generated(t) == t && derived(t) == t;
    }
  }  // namespace nbar_subsets

  ////////////////////////////////////////////////////////////////////////
  // Backend-independent operations
  ////////////////////////////////////////////////////////////////////////

  inline SubMonoidRepr generated_submonoid(Carrier const& s, SubMonoidRepr const& seed) {
    require_subset_backend(s);
    if (seed.is_finite_backend()) {
      return repr(finite_subsets::generated(*s.table(), seed.mask()));
    }
    return repr(nbar_subsets::generated(seed.nbar()));
  }

  inline SubMonoidRepr seq_closure(Carrier const& s, SubMonoidRepr const& t) {
    require_subset_backend(s);
    if (t.is_finite_backend()) {
      return repr(finite_subsets::seq_closure(*s.table(), t.mask()));
    }
    return repr(nbar_subsets::seq_closure(t.nbar()));
  }

  inline SubMonoidRepr derived(Carrier const& s, SubMonoidRepr const& t) {
    require_subset_backend(s);
    if (t.is_finite_backend()) {
      return repr(finite_subsets::derived(*s.table(), t.mask()));
    }
    return repr(nbar_subsets::derived(t.nbar()));
  }

  // Iterates seq_closure to a fixpoint.
  inline SubMonoidRepr sup_closure(Carrier const& s, SubMonoidRepr const& t, int fuel) {
    SubMonoidRepr cur = t;
    for (int i = 1; i <= fuel; ++i) {
      SubMonoidRepr next = seq_closure(s, cur);
      next.iterations    = i;
      if (same_set(next, cur)) {
        return next;
      }
      cur = next;
    }
    cur.stabilized = false;
    cur.iterations = fuel;
    return cur;
  }

  // Iterates the derived set to a fixpoint: T, T', T'', ...
  inline SubMonoidRepr delta(Carrier const& s, SubMonoidRepr const& t, int fuel) {
    SubMonoidRepr cur = derived(s, t);
    for (int i = 1; i <= fuel; ++i) {
      SubMonoidRepr next = derived(s, cur);
      if (same_set(next, cur)) {
        cur.iterations = i;
        return cur;
      }
      cur = next;
    }
    cur.stabilized = false;
    cur.iterations = fuel;
    return cur;
  }

  struct SubCuVerdict {
    bool by_interpolation = false;  // sup-closed plus interpolation
    bool by_derived       = false;  // T = T'
    bool agree() const {
      return by_interpolation == by_derived;
    }
    bool value() const {
      return by_interpolation && by_derived;
    }
  };

  inline SubCuVerdict is_sub_cu(Carrier const& s, SubMonoidRepr const& t) {
    require_subset_backend(s);
    if (t.is_finite_backend()) {
      return {finite_subsets::is_sub_cu_interpolation(*s.table(), t.mask()),
              finite_subsets::is_sub_cu_derived(*s.table(), t.mask())};
    }
    return {nbar_subsets::is_sub_cu_interpolation(t.nbar()),
            nbar_subsets::is_sub_cu_derived(t.nbar())};
  }

  inline SubMonoidRepr set_union(std::vector<SubMonoidRepr> const& ts) {
    if (ts.empty()) {
      throw PreconditionError("empty family");
    }
    SubMonoidRepr out = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (out.is_finite_backend()) {
        out.set = out.mask() | ts[i].mask();
      } else {
        out.set = unite(out.nbar(), ts[i].nbar());
      }
    }
    return out;
  }

  inline SubMonoidRepr set_intersection(std::vector<SubMonoidRepr> const& ts) {
    if (ts.empty()) {
      throw PreconditionError("empty family");
    }
    SubMonoidRepr out = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (out.is_finite_backend()) {
        out.set = out.mask() & ts[i].mask();
      } else {
        out.set = intersect(out.nbar(), ts[i].nbar());
      }
    }
    return out;
  }

  inline bool is_subset(SubMonoidRepr const& a, SubMonoidRepr const& b) {
    if (a.is_finite_backend()) {
      return (a.mask() & ~b.mask()) == 0;
    }
    return subset_of(a.nbar(), b.nbar());
  }

  // The sup-closure of the submonoid generated by the union.
  inline SubMonoidRepr lattice_sup(Carrier const&                    s,
                                   std::vector<SubMonoidRepr> const& ts,
                                   int                               fuel) {
    return sup_closure(s, generated_submonoid(s, set_union(ts)), fuel);
  }

  // delta of the intersection.
  inline SubMonoidRepr lattice_inf(Carrier const&                    s,
                                   std::vector<SubMonoidRepr> const& ts,
                                   int                               fuel) {
    return delta(s, set_intersection(ts), fuel);
  }

  // All sub-Cu-semigroups of a table with at most `max_size` elements, each
  // verified through both characterizations.
  inline std::vector<Mask> enumerate_sub_cu(FiniteCuTable const& t, int max_size = 6) {
    if (t.size() > max_size) {
      throw PreconditionError("sub-Cu enumeration is limited to " + std::to_string(max_size)
                              + " elements");
    }
    std::vector<Mask> out;
    for (Mask m = 1; m <= t.all(); m += 2) {  // odd masks contain 0
      if (!is_submonoid(t, m)) {
        continue;
      }
      bool a = finite_subsets::is_sub_cu_interpolation(t, m);
      bool b = finite_subsets::is_sub_cu_derived(t, m);
      if (a != b) {
        throw Error("sub-Cu characterizations disagree on " + format_subset(t, m));
      }
      if (a) {
        out.push_back(m);
      }
      if (m == t.all()) {
        break;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Countably based sub-Cu-semigroups
  ////////////////////////////////////////////////////////////////////////

  struct GeneratedSub {
    SubMonoidRepr            result;
    std::vector<std::string> basis;  // descriptions of adjoined generators
    bool                     stabilized = true;
    int                      rounds     = 0;
  };

  namespace detail {
    // Terms of the chosen approximating chain of x, as a subset.
    inline NbarSubset chain_terms(NatInf x) {
      if (x.is_infinite()) {
        return NbarSubset::naturals();
      }
      return NbarSubset::of({x});
    }
  }  // namespace detail

  // Adjoins to the seed the terms of a chosen way-below increasing sequence
  // for every element, closes under addition, repeats until nothing changes,
  // and finally closes under sequence suprema. The chooser takes the counting
  // chain 0,1,2,... for inf and the constant chain otherwise.
  inline GeneratedSub gen_countably_based_sub(Carrier const&       s,
                                              SubMonoidRepr const& seed,
                                              int                  fuel) {
    require_subset_backend(s);
    GeneratedSub out;
    if (seed.is_finite_backend()) {
      Mask cur = generate(*s.table(), seed.mask());
      out.result = repr(cur);
      for_each_bit(cur, [&](int e) { out.basis.push_back(s.table()->label(e)); });
      out.rounds = 1;
      return out;
    }
    NbarSubset cur = generated_submonoid(seed.nbar());
    for (int round = 1; round <= fuel; ++round) {
      NbarSubset adjoined = cur;
      if (cur.has_inf()) {
        adjoined = unite(adjoined, detail::chain_terms(NatInf::infinity()));
      }
      NbarSubset next = generated_submonoid(adjoined);
      out.rounds      = round;
      if (next == cur) {
        break;
      }
      cur = next;
      if (round == fuel) {
        out.stabilized = false;
      }
    }
    out.result            = repr(nbar_subsets::seq_closure(cur));
    out.result.stabilized = out.stabilized;
    out.result.iterations = out.rounds;
    out.basis.push_back(cur.with_inf(false).str());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // nbar sub-Cu-semigroups as carriers
  ////////////////////////////////////////////////////////////////////////

  // A sub-Cu-semigroup of nbar with the induced order; way-below is the
  // ambient one because the inclusion is an order-embedding Cu-morphism.
  class NbarSubCarrier final : public Carrier {
   public:
    explicit NbarSubCarrier(NbarSubset t) : _t(std::move(t)) {}

    std::string name() const override {
      return "nbar-sub" + _t.str();
    }
    Backend backend() const override {
      return Backend::catalog;
    }
    std::size_t arity() const override {
      return 1;
    }
    bool contains(Element const& e) const override {
      return e.size() == 1 && _t.contains(e[0]);
    }
    std::vector<Element> fragment(std::uint64_t bound) const override {
      std::vector<Element> out;
      for (auto n : _t.finite_elements_below(bound + 1)) {
        out.push_back(scalar(NatInf(n)));
      }
      if (_t.has_inf()) {
        out.push_back(scalar(NatInf::infinity()));
      }
      return out;
    }
    Element do_add(Element const& a, Element const& b) const override {
      return scalar(a[0] + b[0]);
    }
    bool do_leq(Element const& a, Element const& b) const override {
      return a[0] <= b[0];
    }
    bool do_waybelow(Element const& a, Element const& b) const override {
      return a[0].is_finite() && a[0] <= b[0];
    }
    Element do_infinite_multiple(Element const& a) const override {
      return a[0] == NatInf(0) ? a : scalar(NatInf::infinity());
    }
    // Largest element of T below min(a, k).
    Element do_truncate(Element const& a, std::uint64_t k) const override {
      NatInf cap = min(a[0], NatInf(k));
      std::uint64_t v = cap.value();
      while (v > 0 && !_t.contains_finite(v)) {
        --v;
      }
      return scalar(NatInf(v));
    }

   private:
    NbarSubset _t;
  };

  ////////////////////////////////////////////////////////////////////////
  // Sub-Cu-semigroups with controlled dimension
  ////////////////////////////////////////////////////////////////////////

  struct DimSubResult {
    SubMonoidRepr result;
    DimAnswer     answer = DimAnswer::yes;  // dim(result) <= n
    int           rounds = 0;
    int           adjoined = 0;
    bool          stabilized = true;
  };

  // Starting from the generated sub-Cu-semigroup, repeatedly looks for an
  // instance inside T that has no refinement in T, adjoins a refinement
  // found in S, and regenerates. Requires dim(S) <= n.
  inline DimSubResult gen_sub_with_dim(Carrier const&       s,
                                       SubMonoidRepr const& seed,
                                       int                  n,
                                       int                  width,
                                       std::uint64_t        fuel) {
    require_subset_backend(s);
    DimSubResult out;
    if (auto const* t = s.table()) {
      std::vector<int> all = mask_elements(t->all());
      Mask             cur = generate(*t, seed.mask());
      for (int round = 1;; ++round) {
        out.rounds = round;
        std::vector<int> index;
        auto             sub = sub_table(*t, cur, &index);
        auto             cx  = FiniteDimAnalysis(sub).counterexample(n);
        if (!cx) {
          break;
        }
        auto elems = mask_elements(cur);
        std::vector<int> ys;
        for (int y : cx->ys) {
          ys.push_back(elems[y]);
        }
        auto w = solve_dim_instance(*t, elems[cx->xp], elems[cx->x], ys, n, all);
        if (!w) {
          throw PreconditionError("the ambient carrier does not have dimension <= "
                                  + std::to_string(n));
        }
        Mask add = 0;
        for (auto const& row : w->z) {
          for (int z : row) {
            add |= bit(z);
          }
        }
        out.adjoined += popcount(add & ~cur);
        cur = generate(*t, cur | add);
      }
      out.result = repr(cur);
      out.answer = DimAnswer::yes;
      return out;
    }
    // nbar: generate, then adjoin witnesses for counterexamples found in the
    // bounded basis of T.
    auto       gen = gen_countably_based_sub(s, seed, 64);
    NbarSubset cur = gen.result.nbar();
    for (int round = 1; round <= 64; ++round) {
      out.rounds = round;
      NbarSubCarrier sub(cur);
      auto           check = check_dim_at_most(sub, n, width, fuel);
      out.answer           = check.answer;
      if (check.answer != DimAnswer::no) {
        break;
      }
      auto const& cx  = *check.counterexample;
      auto        dom = s.basis_fragment(check.bound + 1);
      auto        w   = solve_dim_instance(s, cx.xp, cx.x, cx.ys, n, dom);
      if (!w) {
        throw PreconditionError("no refinement of a counterexample exists in nbar");
      }
      std::vector<NatInf> add;
      for (auto const& row : w->z) {
        for (auto const& z : row) {
          add.push_back(z[0]);
        }
      }
      out.adjoined += static_cast<int>(add.size());
      cur = nbar_subsets::seq_closure(
          generated_submonoid(unite(cur, NbarSubset::of(add))));
      if (round == 64) {
        out.stabilized = false;
      }
    }
    out.result            = repr(cur);
    out.result.stabilized = out.stabilized;
    out.result.iterations = out.rounds;
    return out;
  }

  // The smallest (then lexicographically first) sub-Cu-semigroup of a table
  // that contains `subset` and has dimension at most n.
  inline std::optional<Mask> extend_with_dim(FiniteCuTable const& t, Mask subset, int n) {
    std::optional<Mask> best;
    for (Mask m : enumerate_sub_cu(t)) {
      if ((subset & ~m) != 0) {
        continue;
      }
      int d = FiniteDimAnalysis(sub_table(t, m)).dim();
      if (d == FiniteDimAnalysis::kUnbounded || d > n) {
        continue;
      }
      if (!best || popcount(m) < popcount(*best)) {
        best = m;
      }
    }
    return best;
  }

  struct CountableCharReport {
    bool               dim_at_most = false;  // dim(S) <= n
    bool               subsets_extend = true;  // every subset of size <= k extends
    std::optional<Mask> stuck;               // a subset with no extension
    int                max_subset = 0;
  };

  // dim(S) <= n against: every subset with at most `max_subset` elements lies
  // in a sub-Cu-semigroup of dimension at most n. With max_subset = |S| this
  // is the finite form of the characterization and the two sides agree.
  inline CountableCharReport countable_characterization(FiniteCuTable const& t,
                                                        int                  n,
                                                        int                  max_subset) {
    CountableCharReport r;
    r.max_subset  = max_subset;
    int d         = FiniteDimAnalysis(t).dim();
    r.dim_at_most = d != FiniteDimAnalysis::kUnbounded && d <= n;
    for (Mask a = 0; a <= t.all() && r.subsets_extend; ++a) {
      if (popcount(a) <= max_subset && !extend_with_dim(t, a, n)) {
        r.subsets_extend = false;
        r.stuck          = a;
      }
      if (a == t.all()) {
        break;
      }
    }
    return r;
  }

}  // namespace cusg
