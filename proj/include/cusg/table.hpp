#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace cusg {

  // Bitset over the elements of a finite table. Tables are limited to 64
  // elements so that subsets fit in one word.
  using Mask = std::uint64_t;

  inline constexpr int kMaxTableSize = 64;

  inline constexpr Mask bit(int i) {
    return Mask(1) << i;
  }

  inline bool contains(Mask m, int i) {
    return (m >> i) & 1U;
  }

  inline int popcount(Mask m) {
    return __builtin_popcountll(m);
  }

  template <typename F>
  void for_each_bit(Mask m, F&& f) {
    while (m != 0) {
      int i = __builtin_ctzll(m);
      f(i);
      m &= m - 1;
    }
  }

  inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    for_each_bit(m, [&out](int i) { out.push_back(i); });
    return out;
  }

  // A finite positively ordered monoid given by its addition and order tables.
  // Element 0 is the additive identity. The constructor only checks the
  // structure (square, in range); the algebraic laws are checked by
  // validate_pom.
  class FiniteCuTable {
   public:
    using element_type = int;

    FiniteCuTable() : FiniteCuTable({{0}}, {{true}}) {}

    FiniteCuTable(std::vector<std::vector<int>> const&  add,
                  std::vector<std::vector<bool>> const& leq,
                  std::vector<std::string>              labels = {})
        : _n(static_cast<int>(add.size())), _labels(std::move(labels)) {
      if (_n == 0) {
        throw StructureError("table must have at least one element");
      }
      if (_n > kMaxTableSize) {
        throw StructureError("table has " + std::to_string(_n)
                             + " elements, at most "
                             + std::to_string(kMaxTableSize) + " supported");
      }
      if (leq.size() != add.size()) {
        throw StructureError("add and leq tables differ in size");
      }
      _add.resize(_n * _n);
      _leq.resize(_n * _n);
      for (int i = 0; i < _n; ++i) {
        if (static_cast<int>(add[i].size()) != _n
            || static_cast<int>(leq[i].size()) != _n) {
          throw StructureError("row " + std::to_string(i) + " is not of length "
                               + std::to_string(_n));
        }
        for (int j = 0; j < _n; ++j) {
          if (add[i][j] < 0 || add[i][j] >= _n) {
            throw StructureError("add(" + std::to_string(i) + ","
                                 + std::to_string(j)
                                 + ") = " + std::to_string(add[i][j])
                                 + " is out of range");
          }
          _add[i * _n + j] = add[i][j];
          _leq[i * _n + j] = leq[i][j];
        }
      }
      if (!_labels.empty() && static_cast<int>(_labels.size()) != _n) {
        throw StructureError("label count does not match element count");
      }
      _down.assign(_n, 0);
      _up.assign(_n, 0);
      for (int i = 0; i < _n; ++i) {
        for (int j = 0; j < _n; ++j) {
          if (this->leq(j, i)) {
            _down[i] |= bit(j);
            _up[j] |= bit(i);
          }
        }
      }
    }

    int size() const noexcept {
      return _n;
    }
    Mask all() const noexcept {
      return _n == 64 ? ~Mask(0) : bit(_n) - 1;
    }

    int zero() const noexcept {
      return 0;
    }
    int add(int a, int b) const {
      return _add[a * _n + b];
    }
    bool leq(int a, int b) const {
      return _leq[a * _n + b];
    }
    // In a finite poset every increasing sequence is eventually constant, so
    // way-below coincides with the order.
    bool waybelow(int a, int b) const {
      return leq(a, b);
    }
    bool contains(int a) const noexcept {
      return a >= 0 && a < _n;
    }

    Mask down(int a) const {
      return _down[a];
    }
    Mask up(int a) const {
      return _up[a];
    }

    int multiple(std::uint64_t k, int a) const {
      int r = 0;
      for (std::uint64_t i = 0; i < k; ++i) {
        int next = add(r, a);
        if (next == r && i > 0) {
          break;
        }
        r = next;
      }
      return r;
    }

    // Smallest m >= 1 with m*y = (m+1)*y.
    int stabilization_index(int y) const {
      int m = 1;
      int v = y;
      while (add(v, y) != v) {
        v = add(v, y);
        ++m;
      }
      return m;
    }

    // The supremum of (n*y)_n, i.e. the stabilized multiple.
    int infinite_multiple(int y) const {
      int v = y;
      while (add(v, y) != v) {
        v = add(v, y);
      }
      return v;
    }

    std::string label(int a) const {
      return _labels.empty() ? std::to_string(a) : _labels[a];
    }
    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }
    void set_labels(std::vector<std::string> labels) {
      if (!labels.empty() && static_cast<int>(labels.size()) != _n) {
        throw StructureError("label count does not match element count");
      }
      _labels = std::move(labels);
    }

    std::vector<std::vector<int>> add_rows() const {
      std::vector<std::vector<int>> rows(_n, std::vector<int>(_n));
      for (int i = 0; i < _n; ++i) {
        for (int j = 0; j < _n; ++j) {
          rows[i][j] = add(i, j);
        }
      }
      return rows;
    }
    std::vector<std::vector<bool>> leq_rows() const {
      std::vector<std::vector<bool>> rows(_n, std::vector<bool>(_n));
      for (int i = 0; i < _n; ++i) {
        for (int j = 0; j < _n; ++j) {
          rows[i][j] = leq(i, j);
        }
      }
      return rows;
    }

    // Tables compare by their operations; labels are presentation only.
    friend bool operator==(FiniteCuTable const& a, FiniteCuTable const& b) {
      return a._n == b._n && a._add == b._add && a._leq == b._leq;
    }

   private:
    int                      _n;
    std::vector<int>         _add;
    std::vector<bool>        _leq;
    std::vector<Mask>        _down;
    std::vector<Mask>        _up;
    std::vector<std::string> _labels;
  };

  struct LawViolation {
    std::string      law;
    std::vector<int> witness;
  };

  struct ValidationReport {
    std::vector<LawViolation> violations;

    bool valid() const noexcept {
      return violations.empty();
    }
    bool violates(std::string_view law) const {
      return std::any_of(violations.begin(),
                         violations.end(),
                         [law](auto const& v) { return v.law == law; });
    }
  };

  // Checks every positively-ordered-monoid law and reports, for each violated
  // law, the lexicographically first witness.
  inline ValidationReport validate_pom(FiniteCuTable const& t) {
    ValidationReport r;
    int const        n = t.size();
    auto first = [&r](std::string law, std::vector<int> w) {
      r.violations.push_back({std::move(law), std::move(w)});
    };
    auto scan2 = [n](auto&& pred) -> std::vector<int> {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (pred(a, b)) {
            return {a, b};
          }
        }
      }
      return {};
    };
    auto scan3 = [n](auto&& pred) -> std::vector<int> {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          for (int c = 0; c < n; ++c) {
            if (pred(a, b, c)) {
              return {a, b, c};
            }
          }
        }
      }
      return {};
    };
    if (auto w = scan2([&](int a, int b) { return t.add(a, b) != t.add(b, a); });
        !w.empty()) {
      first("commutativity", w);
    }
    if (auto w = scan3([&](int a, int b, int c) {
          return t.add(t.add(a, b), c) != t.add(a, t.add(b, c));
        });
        !w.empty()) {
      first("associativity", w);
    }
    for (int a = 0; a < n; ++a) {
      if (t.add(0, a) != a || t.add(a, 0) != a) {
        first("identity", {a});
        break;
      }
    }
    for (int a = 0; a < n; ++a) {
      if (!t.leq(a, a)) {
        first("reflexivity", {a});
        break;
      }
    }
    if (auto w = scan2([&](int a, int b) {
          return a != b && t.leq(a, b) && t.leq(b, a);
        });
        !w.empty()) {
      first("antisymmetry", w);
    }
    if (auto w = scan3([&](int a, int b, int c) {
          return t.leq(a, b) && t.leq(b, c) && !t.leq(a, c);
        });
        !w.empty()) {
      first("transitivity", w);
    }
    for (int a = 0; a < n; ++a) {
      if (!t.leq(0, a)) {
        first("least-zero", {a});
        break;
      }
    }
    if (auto w = scan3([&](int a, int b, int c) {
          return t.leq(a, b) && !t.leq(t.add(a, c), t.add(b, c));
        });
        !w.empty()) {
      first("order-compatibility", w);
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // CUTABLE v1
  ////////////////////////////////////////////////////////////////////////

  inline std::string serialize_table(FiniteCuTable const& t) {
    std::string out = "CUTABLE v1\nn=" + std::to_string(t.size()) + "\nadd=\n";
    for (int i = 0; i < t.size(); ++i) {
      for (int j = 0; j < t.size(); ++j) {
        out += (j == 0 ? "" : " ") + std::to_string(t.add(i, j));
      }
      out += '\n';
    }
    out += "leq=\n";
    for (int i = 0; i < t.size(); ++i) {
      for (int j = 0; j < t.size(); ++j) {
        out += (j == 0 ? "" : " ");
        out += t.leq(i, j) ? '1' : '0';
      }
      out += '\n';
    }
    return out;
  }

  namespace detail {
    inline std::vector<std::string> split_lines(std::string_view text) {
      std::vector<std::string> lines;
      std::string              cur;
      for (char c : text) {
        if (c == '\n') {
          lines.push_back(cur);
          cur.clear();
        } else if (c != '\r') {
          cur += c;
        }
      }
      if (!cur.empty()) {
        lines.push_back(cur);
      }
      // Trailing blank lines carry no content.
      while (!lines.empty()
             && lines.back().find_first_not_of(" \t") == std::string::npos) {
        lines.pop_back();
      }
      return lines;
    }

    inline std::string trim(std::string_view s) {
      auto b = s.find_first_not_of(" \t");
      if (b == std::string_view::npos) {
        return "";
      }
      auto e = s.find_last_not_of(" \t");
      return std::string(s.substr(b, e - b + 1));
    }

    // Whitespace-separated tokens with their 1-based starting columns.
    inline std::vector<std::pair<std::string, int>>
    tokens(std::string const& line) {
      std::vector<std::pair<std::string, int>> out;
      std::size_t                              i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
          ++i;
        }
        if (i == line.size()) {
          break;
        }
        std::size_t b = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
          ++i;
        }
        out.emplace_back(line.substr(b, i - b), static_cast<int>(b) + 1);
      }
      return out;
    }
  }  // namespace detail

  // Parses a CUTABLE v1 document. Structural problems raise ParseError with
  // the offending line and column; the algebraic laws are not checked here.
  inline FiniteCuTable parse_table(std::string_view text) {
    auto lines = detail::split_lines(text);
    auto line  = [&lines](std::size_t i) -> std::string const& {
      static std::string const empty;
      return i < lines.size() ? lines[i] : empty;
    };
    if (detail::trim(line(0)) != "CUTABLE v1") {
      throw ParseError(1, 1, "expected 'CUTABLE v1', found '" + line(0) + "'");
    }
    std::string header = detail::trim(line(1));
    if (header.rfind("n=", 0) != 0) {
      throw ParseError(2, 1, "expected 'n=<count>'");
    }
    int n = 0;
    try {
      std::size_t used = 0;
      n                = std::stoi(header.substr(2), &used);
      if (used != header.size() - 2 || n <= 0) {
        throw std::invalid_argument("count");
      }
    } catch (std::exception const&) {
      throw ParseError(2, 3, "element count must be a positive integer");
    }
    if (n > kMaxTableSize) {
      throw ParseError(2, 3, "element count exceeds " + std::to_string(kMaxTableSize));
    }
    if (detail::trim(line(2)) != "add=") {
      throw ParseError(3, 1, "expected 'add='");
    }
    std::vector<std::vector<int>>  add(n, std::vector<int>(n));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    std::size_t const              leq_line = 3 + static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      std::size_t li  = 3 + i;
      auto        tok = detail::tokens(line(li));
      if (li >= lines.size() || detail::trim(line(li)) == "leq=") {
        throw ParseError(static_cast<int>(li) + 1,
                         1,
                         "dimension mismatch: expected " + std::to_string(n)
                             + " add rows, found " + std::to_string(i));
      }
      if (static_cast<int>(tok.size()) != n) {
        throw ParseError(static_cast<int>(li) + 1,
                         1,
                         "dimension mismatch: expected " + std::to_string(n)
                             + " entries, found " + std::to_string(tok.size()));
      }
      for (int j = 0; j < n; ++j) {
        auto const& [s, col] = tok[j];
        int         v        = -1;
        if (s.empty()
            || s.find_first_not_of("0123456789") != std::string::npos) {
          throw ParseError(static_cast<int>(li) + 1, col, "non-numeric token '" + s + "'");
        }
        v = std::stoi(s);
        if (v >= n) {
          throw ParseError(static_cast<int>(li) + 1,
                           col,
                           "element index " + s + " out of range");
        }
        add[i][j] = v;
      }
    }
    if (detail::trim(line(leq_line)) != "leq=") {
      if (!detail::tokens(line(leq_line)).empty()
          && detail::trim(line(leq_line)).find('=') == std::string::npos) {
        throw ParseError(static_cast<int>(leq_line) + 1,
                         1,
                         "dimension mismatch: more than " + std::to_string(n)
                             + " add rows");
      }
      throw ParseError(static_cast<int>(leq_line) + 1, 1, "expected 'leq='");
    }
    for (int i = 0; i < n; ++i) {
      std::size_t li  = leq_line + 1 + i;
      auto        tok = detail::tokens(line(li));
      if (li >= lines.size()) {
        throw ParseError(static_cast<int>(li) + 1,
                         1,
                         "dimension mismatch: expected " + std::to_string(n)
                             + " leq rows, found " + std::to_string(i));
      }
      if (static_cast<int>(tok.size()) != n) {
        throw ParseError(static_cast<int>(li) + 1,
                         1,
                         "dimension mismatch: expected " + std::to_string(n)
                             + " entries, found " + std::to_string(tok.size()));
      }
      for (int j = 0; j < n; ++j) {
        auto const& [s, col] = tok[j];
        if (s != "0" && s != "1") {
          throw ParseError(static_cast<int>(li) + 1, col, "expected 0 or 1, found '" + s + "'");
        }
        leq[i][j] = (s == "1");
      }
    }
    std::size_t const end = leq_line + 1 + static_cast<std::size_t>(n);
    if (lines.size() > end) {
      throw ParseError(static_cast<int>(end) + 1,
                       1,
                       "dimension mismatch: more than " + std::to_string(n)
                           + " leq rows");
    }
    return FiniteCuTable(add, leq);
  }

  // Canonical whitespace form of a CUTABLE document (parse then serialize).
  inline std::string normalize_table_text(std::string_view text) {
    return serialize_table(parse_table(text));
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions on tables
  ////////////////////////////////////////////////////////////////////////

  // {0, 1, ..., m} with a + b = min(a + b, m).
  inline FiniteCuTable saturating_chain(int m) {
    if (m < 0 || m + 1 > kMaxTableSize) {
      throw PreconditionError("chain length out of range: " + std::to_string(m));
    }
    int                            n = m + 1;
    std::vector<std::vector<int>>  add(n, std::vector<int>(n));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        add[i][j] = std::min(i + j, m);
        leq[i][j] = i <= j;
      }
    }
    return FiniteCuTable(add, leq);
  }

  inline FiniteCuTable trivial_table() {
    return saturating_chain(0);
  }

  // Componentwise order and addition; element (i, j) has index i*|T| + j.
  inline FiniteCuTable direct_sum(FiniteCuTable const& s, FiniteCuTable const& t) {
    int n = s.size() * t.size();
    if (n > kMaxTableSize) {
      throw StructureError("direct sum has " + std::to_string(n)
                           + " elements, at most "
                           + std::to_string(kMaxTableSize) + " supported");
    }
    int                            m = t.size();
    std::vector<std::vector<int>>  add(n, std::vector<int>(n));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    std::vector<std::string>       labels(n);
    for (int a = 0; a < n; ++a) {
      labels[a] = "(" + s.label(a / m) + "," + t.label(a % m) + ")";
      for (int b = 0; b < n; ++b) {
        add[a][b] = s.add(a / m, b / m) * m + t.add(a % m, b % m);
        leq[a][b] = s.leq(a / m, b / m) && t.leq(a % m, b % m);
      }
    }
    return FiniteCuTable(add, leq, labels);
  }

  // The submonoid given by `subset` with the induced operations. Elements are
  // renumbered in increasing order; `index_of` receives the new index of each
  // old element (-1 when absent).
  inline FiniteCuTable sub_table(FiniteCuTable const& t,
                                 Mask                 subset,
                                 std::vector<int>*    index_of = nullptr) {
    if (!contains(subset, 0)) {
      throw PreconditionError("subset does not contain 0");
    }
    std::vector<int> elems = mask_elements(subset & t.all());
    std::vector<int> idx(t.size(), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      idx[elems[i]] = static_cast<int>(i);
    }
    int                            n = static_cast<int>(elems.size());
    std::vector<std::vector<int>>  add(n, std::vector<int>(n));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    std::vector<std::string>       labels(n);
    for (int i = 0; i < n; ++i) {
      labels[i] = t.label(elems[i]);
      for (int j = 0; j < n; ++j) {
        int s = t.add(elems[i], elems[j]);
        if (idx[s] < 0) {
          throw PreconditionError("subset is not closed under addition");
        }
        add[i][j] = idx[s];
        leq[i][j] = t.leq(elems[i], elems[j]);
      }
    }
    if (index_of != nullptr) {
      *index_of = idx;
    }
    return FiniteCuTable(add, leq, labels);
  }

  // The submonoid generated by `seed` (always contains 0).
  inline Mask generate(FiniteCuTable const& t, Mask seed) {
    Mask m       = (seed & t.all()) | bit(0);
    Mask pending = m;
    while (pending != 0) {
      int a = __builtin_ctzll(pending);
      pending &= pending - 1;
      for_each_bit(m, [&](int b) {
        int c = t.add(a, b);
        if (!contains(m, c)) {
          m |= bit(c);
          pending |= bit(c);
        }
      });
    }
    return m;
  }

  inline bool is_submonoid(FiniteCuTable const& t, Mask m) {
    if (!contains(m, 0)) {
      return false;
    }
    bool ok = true;
    for_each_bit(m, [&](int a) {
      for_each_bit(m, [&](int b) { ok = ok && contains(m, t.add(a, b)); });
    });
    return ok;
  }

  inline Mask down_closure(FiniteCuTable const& t, Mask m) {
    Mask out = 0;
    for_each_bit(m, [&](int a) { out |= t.down(a); });
    return out;
  }

  inline bool is_total_order(FiniteCuTable const& t) {
    for (int a = 0; a < t.size(); ++a) {
      for (int b = 0; b < t.size(); ++b) {
        if (!t.leq(a, b) && !t.leq(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  namespace detail {
    inline bool iso_extend(FiniteCuTable const& a,
                           FiniteCuTable const& b,
                           std::vector<int>&    f,
                           std::vector<bool>&   used,
                           int                  k) {
      int n = a.size();
      if (k == n) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (f[a.add(i, j)] != b.add(f[i], f[j])) {
              return false;
            }
          }
        }
        return true;
      }
      for (int c = 0; c < n; ++c) {
        if (used[c]) {
          continue;
        }
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
          ok = a.leq(i, k) == b.leq(f[i], c) && a.leq(k, i) == b.leq(c, f[i]);
        }
        if (!ok) {
          continue;
        }
        f[k]    = c;
        used[c] = true;
        if (iso_extend(a, b, f, used, k + 1)) {
          return true;
        }
        used[c] = false;
      }
      return false;
    }
  }  // namespace detail

  // Brute-force isomorphism test (order and addition). Returns the map when
  // one exists.
  inline std::optional<std::vector<int>> isomorphism(FiniteCuTable const& a,
                                                     FiniteCuTable const& b) {
    if (a.size() != b.size()) {
      return std::nullopt;
    }
    std::vector<int>  f(a.size(), -1);
    std::vector<bool> used(a.size(), false);
    f[0]    = 0;
    used[0] = true;
    if (detail::iso_extend(a, b, f, used, 1)) {
      return f;
    }
    return std::nullopt;
  }

}  // namespace cusg
