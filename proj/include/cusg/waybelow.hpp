#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "chain.hpp"

namespace cusg {

  namespace detail {
    // A chain together with its supremum and an initial segment of terms.
    struct SampledChain {
      ChainDescriptor      descr;
      Element              sup;
      std::vector<Element> terms;
    };

    inline std::uint64_t horizon(Carrier const& s, std::uint64_t bound) {
      std::uint64_t h = bound + 2;
      if (auto const* t = s.table()) {
        h = std::max<std::uint64_t>(h, static_cast<std::uint64_t>(t->size()) + 1);
      }
      return h;
    }

    inline SampledChain sample(Carrier const& s, ChainDescriptor c, std::uint64_t h) {
      SampledChain out{c, sup_chain(s, c), {}};
      for (std::uint64_t k = 0; k <= h; ++k) {
        out.terms.push_back(chain_term(s, c, k));
      }
      return out;
    }

    // Constant, truncation and arithmetic chains built from the fragment.
    inline std::vector<SampledChain> chain_family(Carrier const&              s,
                                                  std::vector<Element> const& frag,
                                                  std::uint64_t               h) {
      std::vector<SampledChain> out;
      for (auto const& e : frag) {
        out.push_back(sample(s, ChainDescriptor::eventually_constant({e}), h));
      }
      if (!s.is_finite()) {
        for (auto const& e : frag) {
          out.push_back(sample(s, ChainDescriptor::truncation(e), h));
        }
      }
      for (auto const& b : frag) {
        for (auto const& st : frag) {
          if (st != s.zero()) {
            out.push_back(sample(s, ChainDescriptor::arithmetic(b, st), h));
          }
        }
      }
      return out;
    }

    inline std::size_t family_size(Carrier const& s, std::size_t frag) {
      return frag + (s.is_finite() ? 0 : frag) + frag * (frag - 1);
    }

    // Definitional way-below against a chain family: x << y unless some chain
    // with supremum above y never dominates x.
    inline SampledChain const* refuting_chain(Carrier const&                   s,
                                              std::vector<SampledChain> const& family,
                                              Element const&                   x,
                                              Element const&                   y) {
      for (auto const& c : family) {
        if (!s.leq(y, c.sup)) {
          continue;
        }
        bool dominated = false;
        for (auto const& t : c.terms) {
          if (s.leq(x, t)) {
            dominated = true;
            break;
          }
        }
        if (!dominated) {
          return &c;
        }
      }
      return nullptr;
    }
  }  // namespace detail

  struct WaybelowDiscrepancy {
    std::string x;
    std::string y;
    bool        closed_form  = false;
    bool        definitional = false;
    std::string chain;
  };

  struct WaybelowReport {
    bool                               agreement = true;
    std::uint64_t                      bound     = 0;
    std::uint64_t                      pairs     = 0;
    std::uint64_t                      chains    = 0;
    std::optional<WaybelowDiscrepancy> discrepancy;
  };

  struct WaybelowOracleResult {
    bool                           waybelow = true;
    std::optional<ChainDescriptor> refuter;
  };

  // The definitional test for one pair, with chains drawn from the fragment
  // with the given bound plus the canonical chains of x and y.
  inline WaybelowOracleResult waybelow_oracle(Carrier const& s,
                                              Element const& x,
                                              Element const& y,
                                              std::uint64_t  bound) {
    s.require(x);
    s.require(y);
    std::uint64_t h = detail::horizon(s, bound);
    for (auto const& v : x) {
      if (v.is_finite()) {
        h = std::max<std::uint64_t>(h, v.value() + 2);
      }
    }
    auto family = detail::chain_family(s, s.fragment(bound), h);
    family.push_back(detail::sample(s, canonical_chain(s, y), h));
    family.push_back(detail::sample(s, ChainDescriptor::truncation(y), h));
    if (auto const* c = detail::refuting_chain(s, family, x, y)) {
      return {false, c->descr};
    }
    return {true, std::nullopt};
  }

  // Compares the carrier's closed-form way-below relation with the
  // definitional test on every pair of a fragment. The fragment bound is the
  // largest one for which pairs times chains fits in the fuel.
  inline WaybelowReport validate_waybelow(Carrier const& s, std::uint64_t fuel) {
    auto cost = [&s](std::uint64_t bound) {
      std::uint64_t f = s.fragment(bound).size();
      return f * f * detail::family_size(s, f);
    };
    if (cost(0) > fuel) {
      throw FuelError("fuel " + std::to_string(fuel)
                      + " is too small to test a single chain family");
    }
    std::uint64_t bound = 0;
    if (!s.is_finite()) {
      while (bound < 64 && cost(bound + 1) <= fuel) {
        ++bound;
      }
    }
    auto           frag   = s.fragment(bound);
    auto           family = detail::chain_family(s, frag, detail::horizon(s, bound));
    WaybelowReport r;
    r.bound  = bound;
    r.chains = family.size();
    for (auto const& x : frag) {
      for (auto const& y : frag) {
        ++r.pairs;
        bool closed = s.waybelow(x, y);
        auto const* c = detail::refuting_chain(s, family, x, y);
        bool defn   = c == nullptr;
        if (closed != defn) {
          r.agreement   = false;
          r.discrepancy = WaybelowDiscrepancy{
              s.format(x), s.format(y), closed, defn, c ? c->descr.describe(s) : ""};
          return r;
        }
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // O1 - O4
  ////////////////////////////////////////////////////////////////////////

  struct AxiomsO14Report {
    bool                     certified = false;  // exact proof (finite carriers)
    bool                     violation = false;
    std::string              axiom;
    std::vector<std::string> witness;
    std::string              method;
    std::uint64_t            bound   = 0;
    std::uint64_t            checked = 0;
  };

  namespace detail {
    // All increasing sequences of the given length in a finite table.
    inline void increasing_sequences(FiniteCuTable const&           t,
                                     int                            length,
                                     std::vector<int>&              cur,
                                     std::vector<std::vector<int>>& out) {
      if (static_cast<int>(cur.size()) == length) {
        out.push_back(cur);
        return;
      }
      for (int v = 0; v < t.size(); ++v) {
        if (cur.empty() || t.leq(cur.back(), v)) {
          cur.push_back(v);
          increasing_sequences(t, length, cur, out);
          cur.pop_back();
        }
      }
    }
  }  // namespace detail

  // On a finite table every increasing sequence is eventually constant, so its
  // supremum is its last value, way-below is the order, and O1-O4 reduce to
  // the monoid laws. The reduction is confirmed by brute force over short
  // chains (all lengths up to n when n <= 3, length 2 otherwise).
  inline AxiomsO14Report check_O1_to_O4(FiniteCuTable const& t) {
    AxiomsO14Report r;
    r.method = "finite";
    auto pom = validate_pom(t);
    if (pom.violates("order-compatibility")) {
      auto const& w = std::find_if(pom.violations.begin(),
                                   pom.violations.end(),
                                   [](auto const& v) {
                                     return v.law == "order-compatibility";
                                   })
                          ->witness;
      r.violation = true;
      r.axiom     = "O3";
      r.witness   = {"x'=" + t.label(w[0]),
                     "x=" + t.label(w[1]),
                     "y'=" + t.label(w[2]),
                     "y=" + t.label(w[2])};
      return r;
    }
    if (!pom.valid()) {
      r.violation = true;
      r.axiom     = "pom:" + pom.violations.front().law;
      for (int v : pom.violations.front().witness) {
        r.witness.push_back(t.label(v));
      }
      return r;
    }
    int const                     n = t.size();
    std::vector<std::vector<int>> chains;
    std::vector<int>              cur;
    int                           max_len = n <= 3 ? n : 2;
    for (int len = 1; len <= max_len; ++len) {
      detail::increasing_sequences(t, len, cur, chains);
    }
    // Definitional way-below: every chain whose supremum dominates y has a
    // term above x.
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        bool defn = true;
        for (auto const& c : chains) {
          ++r.checked;
          if (!t.leq(y, c.back())) {
            continue;
          }
          bool hit = false;
          for (int v : c) {
            hit = hit || t.leq(x, v);
          }
          if (!hit) {
            defn = false;
            break;
          }
        }
        if (defn != t.leq(x, y)) {
          r.violation = true;
          r.axiom     = "waybelow";
          r.witness   = {"x=" + t.label(x), "y=" + t.label(y)};
          return r;
        }
      }
    }
    // O1: the last term is the least upper bound. O2: constant chains are
    // way-below increasing. O3 and O4 on pairs of chains.
    for (auto const& c : chains) {
      for (int u = 0; u < n; ++u) {
        bool upper = true;
        for (int v : c) {
          upper = upper && t.leq(v, u);
        }
        if (upper && !t.leq(c.back(), u)) {
          r.violation = true;
          r.axiom     = "O1";
          r.witness   = {"upper=" + t.label(u)};
          return r;
        }
      }
    }
    for (int x = 0; x < n; ++x) {
      if (!t.waybelow(x, x)) {
        r.violation = true;
        r.axiom     = "O2";
        r.witness   = {"x=" + t.label(x)};
        return r;
      }
    }
    for (int xp = 0; xp < n; ++xp) {
      for (int x = 0; x < n; ++x) {
        for (int yp = 0; yp < n; ++yp) {
          for (int y = 0; y < n; ++y) {
            ++r.checked;
            if (t.waybelow(xp, x) && t.waybelow(yp, y)
                && !t.waybelow(t.add(xp, yp), t.add(x, y))) {
              r.violation = true;
              r.axiom     = "O3";
              r.witness   = {"x'=" + t.label(xp),
                             "x=" + t.label(x),
                             "y'=" + t.label(yp),
                             "y=" + t.label(y)};
              return r;
            }
          }
        }
      }
    }
    for (auto const& a : chains) {
      for (auto const& b : chains) {
        if (a.size() != b.size()) {
          continue;
        }
        ++r.checked;
        // The term sums must increase; their supremum is then the last one.
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
          if (!t.leq(t.add(a[i], b[i]), t.add(a[i + 1], b[i + 1]))) {
            r.violation = true;
            r.axiom     = "O4";
            return r;
          }
        }
      }
    }
    r.certified = true;
    return r;
  }

  // Sampled O2-O4 on a fragment of a catalog carrier; never certifies.
  inline AxiomsO14Report check_O1_to_O4(Carrier const& s, std::uint64_t fuel) {
    if (auto const* t = s.table()) {
      return check_O1_to_O4(*t);
    }
    AxiomsO14Report r;
    r.method = "sampled";
    std::uint64_t bound = 0;
    auto          size  = [&s](std::uint64_t b) {
      std::uint64_t f = s.fragment(b).size();
      return f * f * f * f;
    };
    if (size(0) > fuel) {
      throw FuelError("fuel " + std::to_string(fuel) + " too small for O1-O4 sampling");
    }
    while (bound < 64 && size(bound + 1) <= fuel) {
      ++bound;
    }
    r.bound        = bound;
    auto          frag = s.fragment(bound);
    std::uint64_t h    = detail::horizon(s, bound);
    auto fail = [&r](std::string ax, std::vector<std::string> w) {
      r.violation = true;
      r.axiom     = std::move(ax);
      r.witness   = std::move(w);
    };
    // O2: the canonical chain is way-below increasing with the right supremum.
    for (auto const& x : frag) {
      auto c = canonical_chain(s, x);
      if (sup_chain(s, c) != x) {
        fail("O2", {"x=" + s.format(x)});
        return r;
      }
      for (std::uint64_t k = 0; k < h; ++k) {
        ++r.checked;
        if (!s.waybelow(chain_term(s, c, k), chain_term(s, c, k + 1))) {
          fail("O2", {"x=" + s.format(x), "k=" + std::to_string(k)});
          return r;
        }
      }
    }
    for (auto const& xp : frag) {
      for (auto const& x : frag) {
        if (!s.waybelow(xp, x)) {
          continue;
        }
        for (auto const& yp : frag) {
          for (auto const& y : frag) {
            ++r.checked;
            if (s.waybelow(yp, y) && !s.waybelow(s.add(xp, yp), s.add(x, y))) {
              fail("O3",
                   {"x'=" + s.format(xp),
                    "x=" + s.format(x),
                    "y'=" + s.format(yp),
                    "y=" + s.format(y)});
              return r;
            }
          }
        }
      }
    }
    // O4 on pairs of canonical chains: the sum of suprema is an upper bound
    // of the term sums and every fragment element way-below it is dominated
    // by some term sum.
    for (auto const& a : frag) {
      for (auto const& b : frag) {
        auto ca  = canonical_chain(s, a);
        auto cb  = canonical_chain(s, b);
        auto sum = s.add(sup_chain(s, ca), sup_chain(s, cb));
        std::vector<Element> term_sums;
        for (std::uint64_t k = 0; k <= h; ++k) {
          term_sums.push_back(s.add(chain_term(s, ca, k), chain_term(s, cb, k)));
          if (!s.leq(term_sums.back(), sum)) {
            fail("O4", {"a=" + s.format(a), "b=" + s.format(b)});
            return r;
          }
        }
        for (auto const& w : frag) {
          ++r.checked;
          if (!s.waybelow(w, sum)) {
            continue;
          }
          bool hit = false;
          for (auto const& ts : term_sums) {
            hit = hit || s.leq(w, ts);
          }
          if (!hit) {
            fail("O4", {"a=" + s.format(a), "b=" + s.format(b), "w=" + s.format(w)});
            return r;
          }
        }
      }
    }
    return r;
  }

}  // namespace cusg
