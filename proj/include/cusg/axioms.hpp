#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "table.hpp"

namespace cusg {

  template <typename S>
  concept CuStructure = requires(S const& s, typename S::element_type const& a) {
    { s.add(a, a) } -> std::convertible_to<typename S::element_type>;
    { s.leq(a, a) } -> std::convertible_to<bool>;
    { s.waybelow(a, a) } -> std::convertible_to<bool>;
    { s.infinite_multiple(a) } -> std::convertible_to<typename S::element_type>;
    { s.multiple(std::uint64_t{}, a) } -> std::convertible_to<typename S::element_type>;
    { s.zero() } -> std::convertible_to<typename S::element_type>;
  };

  inline std::string format_element(FiniteCuTable const& t, int a) {
    return t.label(a);
  }
  inline std::string format_element(Carrier const& s, Element const& a) {
    return s.format(a);
  }

  enum class Verdict { holds, fails, unknown };
  enum class Mode { direct, basis };

  inline std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::holds:
        return "holds";
      case Verdict::fails:
        return "fails";
      case Verdict::unknown:
        return "unknown";
    }
    return "?";
  }
  inline std::string to_string(Mode m) {
    return m == Mode::direct ? "direct" : "basis";
  }

  // The elements a check quantifies over. `exhaustive` means the universe is
  // the whole carrier (or the whole basis); otherwise the check is a bounded
  // search and can only report fails or unknown.
  template <typename E>
  struct Scope {
    std::vector<E> universe;
    bool           exhaustive = true;
    std::uint64_t  bound      = 0;
  };

  template <typename E>
  struct AxiomVerdict {
    std::string              axiom;
    Verdict                  verdict = Verdict::holds;
    Mode                     mode    = Mode::direct;
    std::vector<std::string> names;
    std::vector<E>           witness;
    std::vector<std::string> formatted;
    std::uint64_t            instances = 0;
    std::uint64_t            bound     = 0;
    bool                     exhaustive = true;

    bool holds() const {
      return verdict == Verdict::holds;
    }
    bool fails() const {
      return verdict == Verdict::fails;
    }
  };

  inline Scope<int> full_scope(FiniteCuTable const& t) {
    Scope<int> s;
    for (int i = 0; i < t.size(); ++i) {
      s.universe.push_back(i);
    }
    return s;
  }

  inline Scope<int> scope_of(FiniteCuTable const& t, Mask m) {
    Scope<int> s;
    s.universe = mask_elements(m & t.all());
    return s;
  }

  // For a catalog carrier, the fragment with the largest bound such that
  // |fragment|^arity fits in the fuel. Finite carriers get their full set.
  inline Scope<Element> fuel_scope(Carrier const& s,
                                   std::uint64_t  fuel,
                                   int            arity,
                                   Mode           mode = Mode::direct) {
    auto frag = [&](std::uint64_t b) {
      return mode == Mode::direct ? s.fragment(b) : s.basis_fragment(b);
    };
    Scope<Element> out;
    if (s.is_finite()) {
      out.universe = frag(0);
      return out;
    }
    auto cost = [&](std::uint64_t b) {
      double c = 1;
      double f = static_cast<double>(frag(b).size());
      for (int i = 0; i < arity; ++i) {
        c *= f;
      }
      return c;
    };
    if (cost(0) > static_cast<double>(fuel)) {
      throw FuelError("fuel " + std::to_string(fuel)
                      + " does not cover the smallest fragment");
    }
    std::uint64_t b = 0;
    while (b < 64 && cost(b + 1) <= static_cast<double>(fuel)) {
      ++b;
    }
    out.universe   = frag(b);
    out.exhaustive = false;
    out.bound      = b;
    return out;
  }

  namespace detail {
    // A universally quantified statement: every tuple over the universe that
    // satisfies the premise has a conclusion witness in the universe. The
    // premise is checked incrementally on prefixes so that loops prune early.
    template <typename S>
    struct Statement {
      using E = typename S::element_type;
      std::string                                                  tag;
      std::vector<std::string>                                     names;
      std::function<bool(S const&, std::vector<E> const&, std::size_t)> prefix;
      std::function<bool(S const&, std::vector<E> const&, std::vector<E> const&)>
          conclusion;
    };

    template <typename S>
    AxiomVerdict<typename S::element_type>
    decide(S const&                                       s,
           Statement<S> const&                            st,
           Scope<typename S::element_type> const&         scope,
           Mode                                           mode) {
      using E = typename S::element_type;
      AxiomVerdict<E> v;
      v.axiom      = st.tag;
      v.mode       = mode;
      v.names      = st.names;
      v.bound      = scope.bound;
      v.exhaustive = scope.exhaustive;
      std::size_t const q = st.names.size();
      std::vector<E>    t(q);
      bool              found = false;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (found) {
          return;
        }
        if (i == q) {
          ++v.instances;
          if (!st.conclusion(s, t, scope.universe)) {
            found     = true;
            v.witness = t;
          }
          return;
        }
        for (auto const& e : scope.universe) {
          t[i] = e;
          if (st.prefix(s, t, i + 1)) {
            rec(i + 1);
            if (found) {
              return;
            }
          }
        }
      };
      if (!scope.universe.empty()) {
        rec(0);
      }
      if (found) {
        v.verdict = Verdict::fails;
        for (std::size_t i = 0; i < q; ++i) {
          v.formatted.push_back(st.names[i] + "=" + format_element(s, v.witness[i]));
        }
      } else {
        v.verdict = scope.exhaustive ? Verdict::holds : Verdict::unknown;
      }
      return v;
    }

    template <typename S>
    Statement<S> o5_direct() {
      using E = typename S::element_type;
      // (x', x, y', y, z): x+y <= z, x' << x, y' << y.
      return {"o5",
              {"x'", "x", "y'", "y", "z"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.waybelow(t[2], t[3]));
                  case 5:
                    return static_cast<bool>(s.leq(s.add(t[1], t[3]), t[4]));
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                for (auto const& c : dom) {
                  if (s.leq(s.add(t[0], c), t[4]) && s.leq(t[4], s.add(t[1], c))
                      && s.waybelow(t[2], c)) {
                    return true;
                  }
                }
                return false;
              }};
    }

    template <typename S>
    Statement<S> o5_basis() {
      using E = typename S::element_type;
      // (x', x, y', y, z', z): x+y << z', x' << x, y' << y, z' << z.
      return {"o5",
              {"x'", "x", "y'", "y", "z'", "z"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.waybelow(t[2], t[3]));
                  case 5:
                    return static_cast<bool>(s.waybelow(s.add(t[1], t[3]), t[4]));
                  case 6:
                    return static_cast<bool>(s.waybelow(t[4], t[5]));
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                for (auto const& c : dom) {
                  if (s.waybelow(s.add(t[0], c), t[5]) && s.waybelow(t[4], s.add(t[1], c))
                      && s.waybelow(t[2], c)) {
                    return true;
                  }
                }
                return false;
              }};
    }

    template <typename S>
    Statement<S> o6_direct() {
      using E = typename S::element_type;
      // (x', x, y, z): x' << x <= y+z.
      return {"o6",
              {"x'", "x", "y", "z"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.leq(t[1], s.add(t[2], t[3])));
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                for (auto const& v : dom) {
                  if (!s.leq(v, t[1]) || !s.leq(v, t[2])) {
                    continue;
                  }
                  for (auto const& w : dom) {
                    if (s.leq(w, t[1]) && s.leq(w, t[3]) && s.leq(t[0], s.add(v, w))) {
                      return true;
                    }
                  }
                }
                return false;
              }};
    }

    template <typename S>
    Statement<S> o6_basis() {
      using E = typename S::element_type;
      // (x', x, y', y, z', z): x << y'+z', x' << x, y' << y, z' << z.
      return {"o6",
              {"x'", "x", "y'", "y", "z'", "z"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.waybelow(t[2], t[3]));
                  case 6:
                    return s.waybelow(t[4], t[5])
                           && s.waybelow(t[1], s.add(t[2], t[4]));
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                for (auto const& v : dom) {
                  if (!s.waybelow(v, t[1]) || !s.waybelow(v, t[3])) {
                    continue;
                  }
                  for (auto const& w : dom) {
                    if (s.waybelow(w, t[1]) && s.waybelow(w, t[5])
                        && s.waybelow(t[0], s.add(v, w))) {
                      return true;
                    }
                  }
                }
                return false;
              }};
    }

    template <typename S>
    Statement<S> o7_direct() {
      using E = typename S::element_type;
      // (x1', x1, x2', x2, w): x1' << x1 <= w, x2' << x2 <= w.
      return {"o7",
              {"x1'", "x1", "x2'", "x2", "w"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.waybelow(t[2], t[3]));
                  case 5:
                    return s.leq(t[1], t[4]) && s.leq(t[3], t[4]);
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                auto sum = s.add(t[1], t[3]);
                for (auto const& x : dom) {
                  if (s.waybelow(t[0], x) && s.waybelow(t[2], x) && s.leq(x, t[4])
                      && s.leq(x, sum)) {
                    return true;
                  }
                }
                return false;
              }};
    }

    template <typename S>
    Statement<S> o7_basis() {
      using E = typename S::element_type;
      // (x1', x1, x2', x2, w', w): x1' << x1 << w', x2' << x2 << w', w' << w.
      return {"o7",
              {"x1'", "x1", "x2'", "x2", "w'", "w"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.waybelow(t[2], t[3]));
                  case 5:
                    return s.waybelow(t[1], t[4]) && s.waybelow(t[3], t[4]);
                  case 6:
                    return static_cast<bool>(s.waybelow(t[4], t[5]));
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                auto sum = s.add(t[1], t[3]);
                for (auto const& x : dom) {
                  if (s.waybelow(t[0], x) && s.waybelow(t[2], x) && s.waybelow(x, t[5])
                      && s.waybelow(x, sum)) {
                    return true;
                  }
                }
                return false;
              }};
    }

    template <typename S>
    Statement<S> wc_direct() {
      using E = typename S::element_type;
      // (x, y, z): x+z << y+z implies x << y.
      return {"wc",
              {"x", "y", "z"},
              [](S const&, std::vector<E> const&, std::size_t) { return true; },
              [](S const& s, std::vector<E> const& t, std::vector<E> const&) {
                return !s.waybelow(s.add(t[0], t[2]), s.add(t[1], t[2]))
                       || s.waybelow(t[0], t[1]);
              }};
    }

    template <typename S>
    Statement<S> wc_basis() {
      using E = typename S::element_type;
      // (x', x, y', y, z', z): x' << x, y' << y, z' << z, x+z << y'+z'
      // implies x' << y.
      return {"wc",
              {"x'", "x", "y'", "y", "z'", "z"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                switch (n) {
                  case 2:
                    return static_cast<bool>(s.waybelow(t[0], t[1]));
                  case 4:
                    return static_cast<bool>(s.waybelow(t[2], t[3]));
                  case 6:
                    return s.waybelow(t[4], t[5])
                           && s.waybelow(s.add(t[1], t[5]), s.add(t[2], t[4]));
                  default:
                    return true;
                }
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const&) {
                return static_cast<bool>(s.waybelow(t[0], t[3]));
              }};
    }

    template <typename S>
    Statement<S> simple_statement() {
      using E = typename S::element_type;
      return {"simple",
              {"x", "y"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                return n < 2 || !(t[1] == s.zero());
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const&) {
                return static_cast<bool>(s.leq(t[0], s.infinite_multiple(t[1])));
              }};
    }

    template <typename S>
    Statement<S> riesz_statement() {
      using E = typename S::element_type;
      // (x0, x1, y0, y1): x_i <= y_j for all i, j.
      return {"riesz",
              {"x0", "x1", "y0", "y1"},
              [](S const& s, std::vector<E> const& t, std::size_t n) {
                if (n == 3) {
                  return s.leq(t[0], t[2]) && s.leq(t[1], t[2]);
                }
                if (n == 4) {
                  return s.leq(t[0], t[3]) && s.leq(t[1], t[3]);
                }
                return true;
              },
              [](S const& s, std::vector<E> const& t, std::vector<E> const& dom) {
                for (auto const& z : dom) {
                  if (s.leq(t[0], z) && s.leq(t[1], z) && s.leq(z, t[2])
                      && s.leq(z, t[3])) {
                    return true;
                  }
                }
                return false;
              }};
    }
  }  // namespace detail

  enum class Axiom { o5, o6, o7, wc, simple, riesz, div };

  inline std::string to_string(Axiom a) {
    switch (a) {
      case Axiom::o5:
        return "o5";
      case Axiom::o6:
        return "o6";
      case Axiom::o7:
        return "o7";
      case Axiom::wc:
        return "wc";
      case Axiom::simple:
        return "simple";
      case Axiom::riesz:
        return "riesz";
      case Axiom::div:
        return "div";
    }
    return "?";
  }

  inline std::optional<Axiom> parse_axiom(std::string_view s) {
    for (auto a : {Axiom::o5,
                   Axiom::o6,
                   Axiom::o7,
                   Axiom::wc,
                   Axiom::simple,
                   Axiom::riesz,
                   Axiom::div}) {
      if (to_string(a) == s) {
        return a;
      }
    }
    return std::nullopt;
  }

  // Number of universally quantified variables; used to size fuel scopes.
  inline int quantifier_count(Axiom a, Mode m) {
    switch (a) {
      case Axiom::o5:
        return m == Mode::direct ? 5 : 6;
      case Axiom::o6:
        return m == Mode::direct ? 4 : 6;
      case Axiom::o7:
        return m == Mode::direct ? 5 : 6;
      case Axiom::wc:
        return m == Mode::direct ? 3 : 6;
      case Axiom::simple:
        return 2;
      case Axiom::riesz:
        return 4;
      case Axiom::div:
        return 3;
    }
    return 1;
  }

  template <CuStructure S>
  using VerdictOf = AxiomVerdict<typename S::element_type>;

  template <CuStructure S>
  VerdictOf<S> check_O5(S const& s, Scope<typename S::element_type> const& sc, Mode m) {
    return detail::decide(s, m == Mode::direct ? detail::o5_direct<S>() : detail::o5_basis<S>(), sc, m);
  }
  template <CuStructure S>
  VerdictOf<S> check_O6(S const& s, Scope<typename S::element_type> const& sc, Mode m) {
    return detail::decide(s, m == Mode::direct ? detail::o6_direct<S>() : detail::o6_basis<S>(), sc, m);
  }
  template <CuStructure S>
  VerdictOf<S> check_O7(S const& s, Scope<typename S::element_type> const& sc, Mode m) {
    return detail::decide(s, m == Mode::direct ? detail::o7_direct<S>() : detail::o7_basis<S>(), sc, m);
  }
  template <CuStructure S>
  VerdictOf<S> check_weak_cancellation(S const&                               s,
                                       Scope<typename S::element_type> const& sc,
                                       Mode                                   m) {
    return detail::decide(s, m == Mode::direct ? detail::wc_direct<S>() : detail::wc_basis<S>(), sc, m);
  }
  template <CuStructure S>
  VerdictOf<S> check_simple(S const& s, Scope<typename S::element_type> const& sc) {
    return detail::decide(s, detail::simple_statement<S>(), sc, Mode::direct);
  }
  template <CuStructure S>
  VerdictOf<S> check_riesz_interpolation(S const&                               s,
                                         Scope<typename S::element_type> const& sc) {
    return detail::decide(s, detail::riesz_statement<S>(), sc, Mode::direct);
  }

  // For n >= 1 and x' << x, some z has n*z << x and x' << (n+1)*z. The
  // multiplier n runs up to `max_multiplier`; on finite carriers |S| covers
  // every case since multiples stabilize.
  template <CuStructure S>
  VerdictOf<S> check_almost_divisible(S const&                               s,
                                      Scope<typename S::element_type> const& sc,
                                      std::uint64_t                          max_multiplier) {
    VerdictOf<S> v;
    v.axiom      = "div";
    v.names      = {"n", "x'", "x"};
    v.bound      = sc.bound;
    v.exhaustive = sc.exhaustive;
    for (std::uint64_t n = 1; n <= max_multiplier; ++n) {
      for (auto const& xp : sc.universe) {
        for (auto const& x : sc.universe) {
          if (!s.waybelow(xp, x)) {
            continue;
          }
          ++v.instances;
          bool ok = false;
          for (auto const& z : sc.universe) {
            if (s.waybelow(s.multiple(n, z), x) && s.waybelow(xp, s.multiple(n + 1, z))) {
              ok = true;
              break;
            }
          }
          if (!ok) {
            v.verdict = Verdict::fails;
            v.witness = {xp, x};
            v.formatted = {"n=" + std::to_string(n),
                           "x'=" + format_element(s, xp),
                           "x=" + format_element(s, x)};
            return v;
          }
        }
      }
    }
    v.verdict = sc.exhaustive ? Verdict::holds : Verdict::unknown;
    return v;
  }

  template <CuStructure S>
  VerdictOf<S> check_axiom(S const&                               s,
                           Axiom                                  a,
                           Scope<typename S::element_type> const& sc,
                           Mode                                   m,
                           std::uint64_t                          max_multiplier) {
    switch (a) {
      case Axiom::o5:
        return check_O5(s, sc, m);
      case Axiom::o6:
        return check_O6(s, sc, m);
      case Axiom::o7:
        return check_O7(s, sc, m);
      case Axiom::wc:
        return check_weak_cancellation(s, sc, m);
      case Axiom::simple:
        return check_simple(s, sc);
      case Axiom::riesz:
        return check_riesz_interpolation(s, sc);
      case Axiom::div:
        return check_almost_divisible(s, sc, max_multiplier);
    }
    throw PreconditionError("unknown axiom");
  }

  // Re-runs the single instance recorded in a failing verdict against the
  // given universe; true when the violation reproduces.
  template <CuStructure S>
  bool replay(S const&                               s,
              VerdictOf<S> const&                    v,
              Scope<typename S::element_type> const& sc) {
    if (!v.fails()) {
      return false;
    }
    auto statement = [&]() -> std::optional<detail::Statement<S>> {
      bool d = v.mode == Mode::direct;
      if (v.axiom == "o5") return d ? detail::o5_direct<S>() : detail::o5_basis<S>();
      if (v.axiom == "o6") return d ? detail::o6_direct<S>() : detail::o6_basis<S>();
      if (v.axiom == "o7") return d ? detail::o7_direct<S>() : detail::o7_basis<S>();
      if (v.axiom == "wc") return d ? detail::wc_direct<S>() : detail::wc_basis<S>();
      if (v.axiom == "simple") return detail::simple_statement<S>();
      if (v.axiom == "riesz") return detail::riesz_statement<S>();
      return std::nullopt;
    }();
    if (!statement) {
      // almost divisibility: witness is (x', x) with n in the formatted text
      std::uint64_t n  = std::stoull(v.formatted[0].substr(2));
      auto const&   xp = v.witness[0];
      auto const&   x  = v.witness[1];
      if (!s.waybelow(xp, x)) {
        return false;
      }
      for (auto const& z : sc.universe) {
        if (s.waybelow(s.multiple(n, z), x) && s.waybelow(xp, s.multiple(n + 1, z))) {
          return false;
        }
      }
      return true;
    }
    for (std::size_t i = 1; i <= v.witness.size(); ++i) {
      if (!statement->prefix(s, v.witness, i)) {
        return false;
      }
    }
    return !statement->conclusion(s, v.witness, sc.universe);
  }

  ////////////////////////////////////////////////////////////////////////
  // Bases
  ////////////////////////////////////////////////////////////////////////

  // B is a basis when every x' << x admits y in B with x' << y << x.
  inline bool is_basis(FiniteCuTable const& t, Mask b) {
    for (int xp = 0; xp < t.size(); ++xp) {
      for (int x = 0; x < t.size(); ++x) {
        if (!t.waybelow(xp, x)) {
          continue;
        }
        if ((t.up(xp) & t.down(x) & b) == 0) {
          return false;
        }
      }
    }
    return true;
  }

  // Every basis of a table with at most `max_size` elements; larger tables
  // only report the whole carrier.
  inline std::vector<Mask> enumerate_bases(FiniteCuTable const& t, int max_size = 6) {
    std::vector<Mask> out;
    if (t.size() > max_size) {
      out.push_back(t.all());
      return out;
    }
    for (Mask m = 0; m <= t.all(); ++m) {
      if (is_basis(t, m)) {
        out.push_back(m);
      }
      if (m == t.all()) {
        break;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Soft elements
  ////////////////////////////////////////////////////////////////////////

  // Largest multiplier the soft test needs: nbar coordinates need k at most
  // the value of x', finite coordinates need the stabilization index.
  inline std::uint64_t soft_multiplier_bound(Carrier const& s, Element const& xp) {
    std::uint64_t k = kMaxTableSize + 1;
    if (auto const* t = s.table()) {
      return static_cast<std::uint64_t>(t->size()) + 1;
    }
    for (auto const& v : xp) {
      if (v.is_finite()) {
        k = std::max<std::uint64_t>(k, v.value() + kMaxTableSize + 1);
      }
    }
    return k;
  }

  template <CuStructure S>
  bool soft_instance(S const&                                s,
                     typename S::element_type const&         xp,
                     typename S::element_type const&         x,
                     std::uint64_t                           max_k) {
    auto lhs = s.add(xp, xp);  // (k+1) x'
    auto rhs = x;              // k x
    for (std::uint64_t k = 1; k <= max_k; ++k) {
      if (s.waybelow(lhs, rhs)) {
        return true;
      }
      lhs = s.add(lhs, xp);
      rhs = s.add(rhs, x);
    }
    // k = 0 requires x' << 0
    return s.waybelow(xp, s.zero());
  }

  // x is soft when every x' << x has some k with (k+1)x' << kx.
  inline bool is_soft(FiniteCuTable const& t, int x) {
    for (int xp = 0; xp < t.size(); ++xp) {
      if (t.waybelow(xp, x) && !soft_instance(t, xp, x, t.size() + 1)) {
        return false;
      }
    }
    return true;
  }

  inline Mask soft_part(FiniteCuTable const& t) {
    Mask m = 0;
    for (int x = 0; x < t.size(); ++x) {
      if (is_soft(t, x)) {
        m |= bit(x);
      }
    }
    return m;
  }

  // Soft test on a catalog carrier with x' ranging over a fragment. A
  // failure is exact; success is only up to the fragment bound.
  inline Verdict is_soft(Carrier const& s, Element const& x, std::uint64_t bound) {
    if (auto const* t = s.table()) {
      return is_soft(*t, FiniteCarrier::idx(x)) ? Verdict::holds : Verdict::fails;
    }
    for (auto const& xp : s.fragment(bound)) {
      if (s.waybelow(xp, x) && !soft_instance(s, xp, x, soft_multiplier_bound(s, xp))) {
        return Verdict::fails;
      }
    }
    return Verdict::unknown;
  }

}  // namespace cusg
