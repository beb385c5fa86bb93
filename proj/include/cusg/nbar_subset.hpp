#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "natinf.hpp"

namespace cusg {

  // A subset of {0, 1, 2, ..., inf} whose finite part is eventually
  // periodic: below `start` membership is listed explicitly, from `start` on
  // n belongs iff n mod period is one of the tail residues.
  class NbarSubset {
   public:
    NbarSubset() : NbarSubset(std::vector<bool>{}, 1, {false}, false) {}

    NbarSubset(std::vector<bool> prefix,
               std::uint64_t     period,
               std::vector<bool> residues,
               bool              has_inf)
        : _prefix(std::move(prefix)),
          _period(period),
          _residues(std::move(residues)),
          _inf(has_inf) {
      if (_period == 0 || _residues.size() != _period) {
        throw PreconditionError("invalid periodic tail");
      }
      normalize();
    }

    static NbarSubset empty() {
      return NbarSubset();
    }
    static NbarSubset of(std::vector<NatInf> const& elems) {
      std::vector<bool> prefix;
      bool              inf = false;
      for (auto e : elems) {
        if (e.is_infinite()) {
          inf = true;
          continue;
        }
        if (prefix.size() <= e.value()) {
          prefix.resize(e.value() + 1, false);
        }
        prefix[e.value()] = true;
      }
      return NbarSubset(prefix, 1, {false}, inf);
    }
    // {from, from+1, ...}
    static NbarSubset from(std::uint64_t from) {
      return NbarSubset(std::vector<bool>(from, false), 1, {true}, false);
    }
    // {0, d, 2d, ...}
    static NbarSubset multiples(std::uint64_t d) {
      if (d == 0) {
        return of({NatInf(0)});
      }
      std::vector<bool> r(d, false);
      r[0] = true;
      return NbarSubset({}, d, r, false);
    }
    static NbarSubset naturals() {
      return from(0);
    }
    static NbarSubset everything() {
      return naturals().with_inf(true);
    }

    bool contains(NatInf v) const {
      if (v.is_infinite()) {
        return _inf;
      }
      return contains_finite(v.value());
    }
    bool contains_finite(std::uint64_t n) const {
      if (n < _prefix.size()) {
        return _prefix[n];
      }
      return _residues[n % _period];
    }
    bool has_inf() const {
      return _inf;
    }
    // Whether infinitely many naturals belong.
    bool finite_part_infinite() const {
      return std::any_of(_residues.begin(), _residues.end(), [](bool b) { return b; });
    }
    std::uint64_t start() const {
      return _prefix.size();
    }
    std::uint64_t period() const {
      return _period;
    }

    NbarSubset with_inf(bool inf) const {
      NbarSubset r = *this;
      r._inf       = inf;
      return r;
    }

    // Naturals below `limit` that belong, in increasing order.
    std::vector<std::uint64_t> finite_elements_below(std::uint64_t limit) const {
      std::vector<std::uint64_t> out;
      for (std::uint64_t n = 0; n < limit; ++n) {
        if (contains_finite(n)) {
          out.push_back(n);
        }
      }
      return out;
    }

    friend NbarSubset unite(NbarSubset const& a, NbarSubset const& b) {
      return combine(a, b, [](bool x, bool y) { return x || y; });
    }
    friend NbarSubset intersect(NbarSubset const& a, NbarSubset const& b) {
      return combine(a, b, [](bool x, bool y) { return x && y; });
    }
    friend bool subset_of(NbarSubset const& a, NbarSubset const& b) {
      return intersect(a, b) == a;
    }

    friend bool operator==(NbarSubset const& a, NbarSubset const& b) {
      return a._prefix == b._prefix && a._period == b._period
             && a._residues == b._residues && a._inf == b._inf;
    }

    // Canonical text: explicit elements, a tail such as `5..` or
    // `6.. step 3` or `4.. mod 6 in {0,2}`, then `inf`.
    std::string str() const {
      std::vector<std::string> parts;
      for (std::uint64_t n = 0; n < _prefix.size(); ++n) {
        if (_prefix[n]) {
          parts.push_back(std::to_string(n));
        }
      }
      if (finite_part_infinite()) {
        std::uint64_t s = _prefix.size();
        while (!contains_finite(s)) {
          ++s;
        }
        std::vector<std::uint64_t> rs;
        for (std::uint64_t r = 0; r < _period; ++r) {
          if (_residues[r]) {
            rs.push_back(r);
          }
        }
        if (_period == 1) {
          parts.push_back(std::to_string(s) + "..");
        } else if (rs.size() == 1) {
          parts.push_back(std::to_string(s) + ".. step " + std::to_string(_period));
        } else {
          std::string set;
          for (auto r : rs) {
            set += (set.empty() ? "" : ",") + std::to_string(r);
          }
          parts.push_back(std::to_string(s) + ".. mod " + std::to_string(_period)
                          + " in {" + set + "}");
        }
      }
      if (_inf) {
        parts.push_back("inf");
      }
      std::string out = "{";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? ", " : "") + parts[i];
      }
      return out + "}";
    }

   private:
    template <typename Op>
    static NbarSubset combine(NbarSubset const& a, NbarSubset const& b, Op op) {
      std::uint64_t     start  = std::max(a.start(), b.start());
      std::uint64_t     period = std::lcm(a._period, b._period);
      std::vector<bool> prefix(start);
      for (std::uint64_t n = 0; n < start; ++n) {
        prefix[n] = op(a.contains_finite(n), b.contains_finite(n));
      }
      std::vector<bool> residues(period);
      // residues are indexed by n mod period; pick a representative >= start
      for (std::uint64_t r = 0; r < period; ++r) {
        std::uint64_t n = start + ((r + period - start % period) % period);
        residues[r]     = op(a.contains_finite(n), b.contains_finite(n));
      }
      return NbarSubset(prefix, period, residues, op(a._inf, b._inf));
    }

    void normalize() {
      // smallest period
      for (std::uint64_t p = 1; p < _period; ++p) {
        if (_period % p != 0) {
          continue;
        }
        bool ok = true;
        for (std::uint64_t r = 0; r < _period && ok; ++r) {
          ok = _residues[r] == _residues[r % p];
        }
        if (ok) {
          _residues.resize(p);
          _period = p;
          break;
        }
      }
      // shortest prefix: drop trailing entries that agree with the tail
      while (!_prefix.empty()) {
        std::uint64_t n = _prefix.size() - 1;
        if (_prefix[n] != _residues[n % _period]) {
          break;
        }
        _prefix.pop_back();
      }
    }

    std::vector<bool> _prefix;
    std::uint64_t     _period;
    std::vector<bool> _residues;
    bool              _inf;
  };

  // The submonoid generated by a subset (always contains 0). The finite part
  // is a numerical monoid: with d the gcd of the generators, every large
  // enough multiple of d belongs, and a run of (smallest generator / d)
  // consecutive multiples of d proves that the tail has started.
  inline NbarSubset generated_submonoid(NbarSubset const& seed) {
    bool const    inf = seed.has_inf();
    std::uint64_t g   = 0;
    std::uint64_t lim = seed.start() + 2 * seed.period() + 1;
    std::vector<std::uint64_t> gens;
    for (auto n : seed.finite_elements_below(lim)) {
      if (n > 0) {
        gens.push_back(n);
        g = std::gcd(g, n);
      }
    }
    if (gens.empty()) {
      return NbarSubset::of({NatInf(0)}).with_inf(inf);
    }
    std::uint64_t const a_min = gens.front() / g;
    for (std::uint64_t bound = 64;; bound *= 2) {
      if (bound > (std::uint64_t(1) << 26)) {
        throw FuelError("numerical monoid saturation did not stabilize");
      }
      std::vector<bool> reach(bound + 1, false);
      reach[0] = true;
      for (std::uint64_t n = 1; n <= bound; ++n) {
        for (std::uint64_t a = 1; a <= n && !reach[n]; ++a) {
          reach[n] = reach[n - a] && seed.contains_finite(a);
        }
      }
      std::uint64_t run = 0;
      for (std::uint64_t n = 0; n <= bound; n += g) {
        run = reach[n] ? run + 1 : 0;
        if (run == a_min) {
          std::uint64_t     tail_start = n - (a_min - 1) * g;
          std::vector<bool> prefix(reach.begin(), reach.begin() + tail_start);
          std::vector<bool> residues(g, false);
          residues[tail_start % g] = true;
          return NbarSubset(prefix, g, residues, inf);
        }
      }
    }
  }

  // Syntax: comma-separated items, each `n`, `a..b`, `a..`, `a.. step d`,
  // `a.. mod p in {r,...}`, `inf`, `N` (all naturals) or `d*N` (multiples
  // of d). Outer braces are optional, so printed subsets parse back.
  // Example: `0,5..,inf`.
  inline NbarSubset parse_nbar_subset(std::string_view text) {
    NbarSubset  out = NbarSubset::empty();
    std::string s;
    for (char c : text) {
      if (c != ' ' && c != '\t') {
        s += c;
      }
    }
    if (s.size() >= 2 && s.front() == '{' && s.back() == '}') {
      s = s.substr(1, s.size() - 2);
    }
    auto fail = [&](std::string const& why) {
      return PreconditionError(why + " in subset '" + std::string(text) + "'");
    };
    auto number = [&](std::string const& t) {
      auto v = NatInf::parse(t);
      if (!v || v->is_infinite()) {
        throw fail("invalid number '" + t + "'");
      }
      return v->value();
    };
    // items split on commas outside braces
    std::vector<std::string> items;
    std::string              cur;
    int                      depth = 0;
    for (char c : s) {
      if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth < 0) {
          throw fail("unbalanced '}'");
        }
      }
      if (c == ',' && depth == 0) {
        items.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (depth != 0) {
      throw fail("unbalanced '{'");
    }
    items.push_back(cur);
    for (auto const& item : items) {
      if (item.empty()) {
        continue;
      }
      if (item == "inf" || item == "oo") {
        out = out.with_inf(true);
      } else if (item == "N") {
        out = unite(out, NbarSubset::naturals());
      } else if (item.size() > 2 && item.substr(item.size() - 2) == "*N") {
        out = unite(out, NbarSubset::multiples(number(item.substr(0, item.size() - 2))));
      } else if (auto dots = item.find(".."); dots != std::string::npos) {
        std::uint64_t a    = number(item.substr(0, dots));
        std::string   rest = item.substr(dots + 2);
        if (rest.empty()) {
          out = unite(out, NbarSubset::from(a));
        } else if (rest.rfind("step", 0) == 0 || rest.rfind("mod", 0) == 0) {
          std::uint64_t     period = 0;
          std::vector<bool> residues;
          if (rest[0] == 's') {
            period = number(rest.substr(4));
            if (period == 0) {
              throw fail("step must be positive");
            }
            residues.assign(period, false);
            residues[a % period] = true;
          } else {
            auto in = rest.find("in{");
            if (in == std::string::npos || rest.back() != '}') {
              throw fail("expected 'a.. mod p in {r,...}'");
            }
            period = number(rest.substr(3, in - 3));
            if (period == 0) {
              throw fail("modulus must be positive");
            }
            residues.assign(period, false);
            std::stringstream rs(rest.substr(in + 3, rest.size() - in - 4));
            std::string       r;
            while (std::getline(rs, r, ',')) {
              residues[number(r) % period] = true;
            }
          }
          out = unite(out, NbarSubset(std::vector<bool>(a, false), period, residues, false));
        } else {
          std::uint64_t       b = number(rest);
          std::vector<NatInf> r;
          for (std::uint64_t n = a; n <= b; ++n) {
            r.emplace_back(n);
          }
          out = unite(out, NbarSubset::of(r));
        }
      } else {
        out = unite(out, NbarSubset::of({NatInf(number(item))}));
      }
    }
    return out;
  }

}  // namespace cusg
