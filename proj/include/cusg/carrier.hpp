#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "natinf.hpp"
#include "table.hpp"

namespace cusg {

  enum class Backend { finite, catalog, limit };

  inline std::string to_string(Backend b) {
    switch (b) {
      case Backend::finite:
        return "finite";
      case Backend::catalog:
        return "catalog";
      case Backend::limit:
        return "limit";
    }
    return "?";
  }

  // Uniform interface over every concrete Cu-semigroup the library handles.
  // Elements are tuples of coordinates in {0,1,...,inf}; each backend decides
  // which tuples are valid. The public operations validate their arguments and
  // throw CarrierError on foreign elements.
  class Carrier {
   public:
    using element_type = Element;

    virtual ~Carrier() = default;

    virtual std::string name() const    = 0;
    virtual Backend     backend() const = 0;
    virtual std::size_t arity() const   = 0;
    virtual bool        contains(Element const& e) const = 0;

    // The underlying table when the carrier is finite.
    virtual FiniteCuTable const* table() const {
      return nullptr;
    }
    bool is_finite() const {
      return table() != nullptr;
    }

    Element zero() const {
      return Element(arity(), NatInf(0));
    }

    Element add(Element const& a, Element const& b) const {
      require(a);
      require(b);
      return do_add(a, b);
    }
    bool leq(Element const& a, Element const& b) const {
      require(a);
      require(b);
      return do_leq(a, b);
    }
    bool waybelow(Element const& a, Element const& b) const {
      require(a);
      require(b);
      return do_waybelow(a, b);
    }
    // The supremum of (n*a)_n.
    Element infinite_multiple(Element const& a) const {
      require(a);
      return do_infinite_multiple(a);
    }
    // The k-th term of the canonical approximating chain of `a`. The terms
    // increase with k, are way-below each other and have supremum `a`.
    Element truncate(Element const& a, std::uint64_t k) const {
      require(a);
      return do_truncate(a, k);
    }

    Element multiple(std::uint64_t k, Element const& a) const {
      Element r = zero();
      for (std::uint64_t i = 0; i < k; ++i) {
        r = add(r, a);
      }
      return r;
    }

    // Elements whose finite coordinates are at most `bound`, in
    // lexicographic order. Finite carriers ignore the bound.
    virtual std::vector<Element> fragment(std::uint64_t bound) const = 0;
    // The compact elements of fragment(bound); a basis fragment.
    virtual std::vector<Element> basis_fragment(std::uint64_t bound) const {
      std::vector<Element> out;
      for (auto& e : fragment(bound)) {
        if (do_waybelow(e, e)) {
          out.push_back(e);
        }
      }
      return out;
    }

    virtual std::string format(Element const& e) const {
      return format_tuple(e);
    }

    Element parse(std::string_view text) const {
      std::string s(text);
      s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }),
              s.end());
      if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        s = s.substr(1, s.size() - 2);
      }
      Element            e;
      std::stringstream  in(s);
      std::string        tok;
      while (std::getline(in, tok, ',')) {
        auto v = NatInf::parse(tok);
        if (!v) {
          throw CarrierError("cannot parse coordinate '" + tok + "' of element '"
                             + std::string(text) + "'");
        }
        e.push_back(*v);
      }
      if (!contains(e)) {
        throw CarrierError("'" + std::string(text) + "' is not an element of "
                           + name());
      }
      return e;
    }

    void require(Element const& e) const {
      if (!contains(e)) {
        throw CarrierError(format_tuple(e) + " is not an element of " + name());
      }
    }

    virtual Element do_add(Element const& a, Element const& b) const           = 0;
    virtual bool    do_leq(Element const& a, Element const& b) const           = 0;
    virtual bool    do_waybelow(Element const& a, Element const& b) const      = 0;
    virtual Element do_infinite_multiple(Element const& a) const               = 0;
    virtual Element do_truncate(Element const& a, std::uint64_t k) const       = 0;
  };

  using CarrierPtr = std::shared_ptr<Carrier const>;

  ////////////////////////////////////////////////////////////////////////
  // Finite tables
  ////////////////////////////////////////////////////////////////////////

  class FiniteCarrier final : public Carrier {
   public:
    explicit FiniteCarrier(FiniteCuTable t,
                           std::string   name    = "table",
                           Backend       backend = Backend::finite)
        : _t(std::move(t)), _name(std::move(name)), _backend(backend) {
      auto report = validate_pom(_t);
      if (!report.valid()) {
        throw StructureError("table violates " + report.violations.front().law);
      }
    }

    std::string name() const override {
      return _name;
    }
    Backend backend() const override {
      return _backend;
    }
    std::size_t arity() const override {
      return 1;
    }
    bool contains(Element const& e) const override {
      return e.size() == 1 && e[0].is_finite()
             && e[0].value() < static_cast<std::uint64_t>(_t.size());
    }
    FiniteCuTable const* table() const override {
      return &_t;
    }

    std::vector<Element> fragment(std::uint64_t) const override {
      std::vector<Element> out;
      for (int i = 0; i < _t.size(); ++i) {
        out.push_back(scalar(NatInf(static_cast<std::uint64_t>(i))));
      }
      return out;
    }

    Element do_add(Element const& a, Element const& b) const override {
      return wrap(_t.add(idx(a), idx(b)));
    }
    bool do_leq(Element const& a, Element const& b) const override {
      return _t.leq(idx(a), idx(b));
    }
    bool do_waybelow(Element const& a, Element const& b) const override {
      return _t.leq(idx(a), idx(b));
    }
    Element do_infinite_multiple(Element const& a) const override {
      return wrap(_t.infinite_multiple(idx(a)));
    }
    Element do_truncate(Element const& a, std::uint64_t) const override {
      return a;
    }

    static int idx(Element const& e) {
      return static_cast<int>(e[0].value());
    }
    static Element wrap(int i) {
      return scalar(NatInf(static_cast<std::uint64_t>(i)));
    }

   private:
    FiniteCuTable _t;
    std::string   _name;
    Backend       _backend;
  };

  ////////////////////////////////////////////////////////////////////////
  // {0, 1, 2, ..., inf}
  ////////////////////////////////////////////////////////////////////////

  class NbarCarrier final : public Carrier {
   public:
    std::string name() const override {
      return "nbar";
    }
    Backend backend() const override {
      return Backend::catalog;
    }
    std::size_t arity() const override {
      return 1;
    }
    bool contains(Element const& e) const override {
      return e.size() == 1;
    }

    std::vector<Element> fragment(std::uint64_t bound) const override {
      std::vector<Element> out;
      for (std::uint64_t i = 0; i <= bound; ++i) {
        out.push_back(scalar(NatInf(i)));
      }
      out.push_back(scalar(NatInf::infinity()));
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
    Element do_truncate(Element const& a, std::uint64_t k) const override {
      return scalar(min(a[0], NatInf(k)));
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Direct sums
  ////////////////////////////////////////////////////////////////////////

  class SumCarrier final : public Carrier {
   public:
    SumCarrier(CarrierPtr left, CarrierPtr right)
        : _left(std::move(left)), _right(std::move(right)) {}

    std::string name() const override {
      return "sum:" + _left->name() + "+" + _right->name();
    }
    Backend backend() const override {
      return Backend::catalog;
    }
    std::size_t arity() const override {
      return _left->arity() + _right->arity();
    }
    bool contains(Element const& e) const override {
      return e.size() == arity() && _left->contains(head(e))
             && _right->contains(tail(e));
    }
    CarrierPtr const& left() const {
      return _left;
    }
    CarrierPtr const& right() const {
      return _right;
    }

    std::vector<Element> fragment(std::uint64_t bound) const override {
      return product(_left->fragment(bound), _right->fragment(bound));
    }
    std::vector<Element> basis_fragment(std::uint64_t bound) const override {
      return product(_left->basis_fragment(bound), _right->basis_fragment(bound));
    }

    Element head(Element const& e) const {
      return Element(e.begin(), e.begin() + static_cast<long>(_left->arity()));
    }
    Element tail(Element const& e) const {
      return Element(e.begin() + static_cast<long>(_left->arity()), e.end());
    }
    static Element join(Element a, Element const& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }

    Element do_add(Element const& a, Element const& b) const override {
      return join(_left->do_add(head(a), head(b)), _right->do_add(tail(a), tail(b)));
    }
    bool do_leq(Element const& a, Element const& b) const override {
      return _left->do_leq(head(a), head(b)) && _right->do_leq(tail(a), tail(b));
    }
    bool do_waybelow(Element const& a, Element const& b) const override {
      return _left->do_waybelow(head(a), head(b))
             && _right->do_waybelow(tail(a), tail(b));
    }
    Element do_infinite_multiple(Element const& a) const override {
      return join(_left->do_infinite_multiple(head(a)),
                  _right->do_infinite_multiple(tail(a)));
    }
    Element do_truncate(Element const& a, std::uint64_t k) const override {
      return join(_left->do_truncate(head(a), k), _right->do_truncate(tail(a), k));
    }

   private:
    static std::vector<Element> product(std::vector<Element> const& a,
                                        std::vector<Element> const& b) {
      std::vector<Element> out;
      out.reserve(a.size() * b.size());
      for (auto const& x : a) {
        for (auto const& y : b) {
          out.push_back(join(x, y));
        }
      }
      return out;
    }

    CarrierPtr _left;
    CarrierPtr _right;
  };

  ////////////////////////////////////////////////////////////////////////
  // Monotone maps from a finite poset into {0, 1, ..., inf}
  ////////////////////////////////////////////////////////////////////////

  struct PosetDescr {
    int                            n = 0;
    std::vector<std::vector<bool>> leq;

    static PosetDescr antichain(int n) {
      PosetDescr p{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n))};
      for (int i = 0; i < n; ++i) {
        p.leq[i][i] = true;
      }
      return p;
    }
    static PosetDescr chain(int n) {
      PosetDescr p{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n))};
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          p.leq[i][j] = true;
        }
      }
      return p;
    }

    void validate() const {
      if (n <= 0 || static_cast<int>(leq.size()) != n) {
        throw StructureError("poset must have at least one point");
      }
      for (auto const& row : leq) {
        if (static_cast<int>(row.size()) != n) {
          throw StructureError("poset relation is not square");
        }
      }
      for (int a = 0; a < n; ++a) {
        if (!leq[a][a]) {
          throw StructureError("poset relation is not reflexive at "
                               + std::to_string(a));
        }
        for (int b = 0; b < n; ++b) {
          if (a != b && leq[a][b] && leq[b][a]) {
            throw StructureError("poset relation is not antisymmetric at ("
                                 + std::to_string(a) + "," + std::to_string(b)
                                 + ")");
          }
          for (int c = 0; c < n; ++c) {
            if (leq[a][b] && leq[b][c] && !leq[a][c]) {
              throw StructureError("poset relation is not transitive");
            }
          }
        }
      }
    }
  };

  // POSET v1: `POSET v1`, `n=<count>`, `leq=`, then n rows of 0/1.
  inline PosetDescr parse_poset(std::string_view text) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || detail::trim(lines[0]) != "POSET v1") {
      throw ParseError(1, 1, "expected 'POSET v1'");
    }
    if (lines.size() < 3 || detail::trim(lines[1]).rfind("n=", 0) != 0) {
      throw ParseError(2, 1, "expected 'n=<count>'");
    }
    int n = 0;
    try {
      n = std::stoi(detail::trim(lines[1]).substr(2));
    } catch (std::exception const&) {
      throw ParseError(2, 3, "point count must be a positive integer");
    }
    if (n <= 0) {
      throw ParseError(2, 3, "point count must be a positive integer");
    }
    if (detail::trim(lines[2]) != "leq=") {
      throw ParseError(3, 1, "expected 'leq='");
    }
    if (lines.size() != static_cast<std::size_t>(3 + n)) {
      throw ParseError(static_cast<int>(lines.size()),
                       1,
                       "dimension mismatch: expected " + std::to_string(n)
                           + " leq rows");
    }
    PosetDescr p{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n))};
    for (int i = 0; i < n; ++i) {
      auto tok = detail::tokens(lines[3 + i]);
      if (static_cast<int>(tok.size()) != n) {
        throw ParseError(4 + i, 1, "dimension mismatch");
      }
      for (int j = 0; j < n; ++j) {
        if (tok[j].first != "0" && tok[j].first != "1") {
          throw ParseError(4 + i, tok[j].second, "expected 0 or 1");
        }
        p.leq[i][j] = tok[j].first == "1";
      }
    }
    p.validate();
    return p;
  }

  // Order and addition are pointwise; x is way-below y when it is pointwise
  // way-below in {0,...,inf}, i.e. x <= y and x takes only finite values.
  class MonotoneCarrier final : public Carrier {
   public:
    explicit MonotoneCarrier(PosetDescr p, std::string label = "")
        : _p(std::move(p)), _label(std::move(label)) {
      _p.validate();
    }

    std::string name() const override {
      return "mono:" + (_label.empty() ? std::to_string(_p.n) + "pt" : _label);
    }
    Backend backend() const override {
      return Backend::catalog;
    }
    std::size_t arity() const override {
      return static_cast<std::size_t>(_p.n);
    }
    PosetDescr const& poset() const {
      return _p;
    }
    bool contains(Element const& e) const override {
      if (e.size() != arity()) {
        return false;
      }
      for (int a = 0; a < _p.n; ++a) {
        for (int b = 0; b < _p.n; ++b) {
          if (_p.leq[a][b] && e[a] > e[b]) {
            return false;
          }
        }
      }
      return true;
    }

    std::vector<Element> fragment(std::uint64_t bound) const override {
      std::vector<NatInf> values;
      for (std::uint64_t i = 0; i <= bound; ++i) {
        values.emplace_back(i);
      }
      values.push_back(NatInf::infinity());
      std::vector<Element> out;
      Element              cur(arity());
      extend(values, cur, 0, out);
      return out;
    }

    Element do_add(Element const& a, Element const& b) const override {
      Element r(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
      }
      return r;
    }
    bool do_leq(Element const& a, Element const& b) const override {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
          return false;
        }
      }
      return true;
    }
    bool do_waybelow(Element const& a, Element const& b) const override {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_infinite() || a[i] > b[i]) {
          return false;
        }
      }
      return true;
    }
    Element do_infinite_multiple(Element const& a) const override {
      Element r(a);
      for (auto& v : r) {
        if (v != NatInf(0)) {
          v = NatInf::infinity();
        }
      }
      return r;
    }
    Element do_truncate(Element const& a, std::uint64_t k) const override {
      Element r(a);
      for (auto& v : r) {
        v = min(v, NatInf(k));
      }
      return r;
    }

   private:
    void extend(std::vector<NatInf> const& values,
                Element&                   cur,
                int                        i,
                std::vector<Element>&      out) const {
      if (i == _p.n) {
        out.push_back(cur);
        return;
      }
      for (auto v : values) {
        bool ok = true;
        for (int j = 0; j < i && ok; ++j) {
          ok = !(_p.leq[j][i] && cur[j] > v) && !(_p.leq[i][j] && v > cur[j]);
        }
        if (ok) {
          cur[i] = v;
          extend(values, cur, i + 1, out);
        }
      }
    }

    PosetDescr  _p;
    std::string _label;
  };

  ////////////////////////////////////////////////////////////////////////
  // Registry
  ////////////////////////////////////////////////////////////////////////

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline CarrierPtr make_finite(FiniteCuTable t, std::string name = "table") {
    return std::make_shared<FiniteCarrier>(std::move(t), std::move(name));
  }

  inline CarrierPtr make_nbar() {
    return std::make_shared<NbarCarrier>();
  }

  inline CarrierPtr make_chain(int m) {
    if (m < 1) {
      throw PreconditionError("chain length must be at least 1");
    }
    return make_finite(saturating_chain(m), "chain:" + std::to_string(m));
  }

  // Two finite operands give a finite product table; otherwise the sum is a
  // catalog carrier with concatenated coordinates.
  inline CarrierPtr direct_sum(CarrierPtr const& a, CarrierPtr const& b) {
    if (a->is_finite() && b->is_finite()
        && a->table()->size() * b->table()->size() <= kMaxTableSize) {
      return make_finite(direct_sum(*a->table(), *b->table()),
                         "sum:" + a->name() + "+" + b->name());
    }
    return std::make_shared<SumCarrier>(a, b);
  }

  inline CarrierPtr make_monotone(PosetDescr p, std::string label = "") {
    return std::make_shared<MonotoneCarrier>(std::move(p), std::move(label));
  }

  // Accepts `nbar`, `chain:<m>`, `sum:<a>+<b>` (split at the first '+'),
  // `mono:<poset-file>`, or a path to a CUTABLE file.
  inline CarrierPtr instantiate_catalog(std::string const& spec) {
    if (spec == "nbar") {
      return make_nbar();
    }
    if (spec.rfind("chain:", 0) == 0) {
      int m = 0;
      try {
        std::size_t used = 0;
        m                = std::stoi(spec.substr(6), &used);
        if (used != spec.size() - 6) {
          throw std::invalid_argument("m");
        }
      } catch (std::exception const&) {
        throw PreconditionError("invalid chain length in '" + spec + "'");
      }
      return make_chain(m);
    }
    if (spec.rfind("sum:", 0) == 0) {
      auto rest = spec.substr(4);
      auto plus = rest.find('+');
      if (plus == std::string::npos || plus == 0 || plus + 1 == rest.size()) {
        throw PreconditionError("expected sum:<a>+<b>, got '" + spec + "'");
      }
      auto right = rest.substr(plus + 1);
      if (right.rfind("sum:", 0) != 0 && right.find('+') != std::string::npos) {
        right = "sum:" + right;
      }
      return direct_sum(instantiate_catalog(rest.substr(0, plus)),
                        instantiate_catalog(right));
    }
    if (spec.rfind("mono:", 0) == 0) {
      auto path = spec.substr(5);
      return make_monotone(parse_poset(read_file(path)), path);
    }
    return make_finite(parse_table(read_file(spec)), spec);
  }

  struct CatalogEntry {
    std::string syntax;
    std::string description;
  };

  inline std::vector<CatalogEntry> catalog_entries() {
    return {
        {"nbar", "{0,1,2,...,inf} with the usual order and addition"},
        {"chain:<m>", "{0,...,m} with addition saturating at m"},
        {"sum:<a>+<b>", "direct sum with componentwise order and addition"},
        {"mono:<poset-file>", "monotone maps from a finite poset into nbar"},
        {"<file>", "finite table in CUTABLE v1 format"},
    };
  }

}  // namespace cusg
