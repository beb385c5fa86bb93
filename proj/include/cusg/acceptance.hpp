#pragma once

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "approx.hpp"
#include "axioms.hpp"
#include "dimension.hpp"
#include "enumerate.hpp"
#include "subcu.hpp"
#include "waybelow.hpp"

namespace cusg {

  struct CriterionResult {
    int         id = 0;
    std::string title;
    bool        pass = false;
    std::string detail;
    double      seconds = 0;
  };

  inline std::string format_criterion(CriterionResult const& r) {
    std::ostringstream out;
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id;
    if (!r.title.empty()) {
      out << " (" << r.title << ")";
    }
    out << ": " << r.detail;
    return out.str();
  }

  namespace acceptance {

    // Frozen values of dim(C_m), m = 0..4, from the brute-force oracle in the
    // test suite.
    inline constexpr int kChainDims[] = {0, 0, 0, 0, 0};

    // Submonoids of nbar used by the closure checks: generated by small seeds,
    // with and without inf, and their sequence closures.
    inline std::vector<NbarSubset> nbar_corpus() {
      std::vector<NbarSubset>              out;
      std::vector<std::vector<NatInf>> seeds = {
          {},        {NatInf(1)}, {NatInf(2)}, {NatInf(3)},         {NatInf(2), NatInf(3)},
          {NatInf(4), NatInf(6)}, {NatInf(5), NatInf(7)}, {NatInf(6), NatInf(10), NatInf(15)}};
      for (auto const& s : seeds) {
        for (bool inf : {false, true}) {
          auto t = generated_submonoid(NbarSubset::of(s).with_inf(inf));
          out.push_back(t);
          out.push_back(nbar_subsets::seq_closure(t));
        }
      }
      out.push_back(generated_submonoid(parse_nbar_subset("0,5..,inf")));
      out.push_back(NbarSubset::of({NatInf(0)}).with_inf(true));
      return out;
    }

    inline std::vector<SuiteTable> small(std::vector<SuiteTable> const& s, int max_n) {
      std::vector<SuiteTable> out;
      for (auto const& e : s) {
        if (e.table.size() <= max_n) {
          out.push_back(e);
        }
      }
      return out;
    }

    // Collects failures; `detail` keeps the first few.
    struct Tally {
      std::size_t checked = 0;
      std::size_t failed  = 0;
      std::string first;

      void check(bool ok, std::string const& what) {
        ++checked;
        if (!ok) {
          if (failed < 3) {
            first += (first.empty() ? "" : "; ") + what;
          }
          ++failed;
        }
      }
      bool ok() const {
        return failed == 0;
      }
      std::string str(std::string const& unit) const {
        if (ok()) {
          return std::to_string(checked) + " " + unit;
        }
        return std::to_string(failed) + "/" + std::to_string(checked) + " failed: " + first;
      }
    };

    inline CriterionResult c1_foundation() {
      Tally tally;
      auto  run = [&](FiniteCuTable const& t, std::string const& name) {
        auto o14 = check_O1_to_O4(t);
        tally.check(o14.certified, name + " O1-O4");
        FiniteCarrier c(t, name);
        auto          wb = validate_waybelow(c, 1u << 24);
        tally.check(wb.agreement, name + " waybelow");
      };
      for (int n = 1; n <= 3; ++n) {
        int i = 0;
        for (auto const& t : enumerate_tables(n, false)) {
          run(t, "n" + std::to_string(n) + "#" + std::to_string(i++));
        }
      }
      int i = 0;
      for (auto const& t : random_tables(500, 1, 5, 2024)) {
        run(t, "random#" + std::to_string(i++));
      }
      return {1, "finite-carrier foundation", tally.ok(), tally.str("checks")};
    }

    inline CriterionResult c2_basis_equivalence(std::vector<SuiteTable> const& suite) {
      Tally tally;
      for (auto const& e : small(suite, 5)) {
        auto full = full_scope(e.table);
        for (Axiom a : {Axiom::o5, Axiom::o6, Axiom::o7, Axiom::wc}) {
          auto direct = check_axiom(e.table, a, full, Mode::direct, 0).verdict;
          for (Mask b : enumerate_bases(e.table, 6)) {
            auto basis = check_axiom(e.table, a, scope_of(e.table, b), Mode::basis, 0).verdict;
            tally.check(basis == direct, e.name + " " + to_string(a));
          }
        }
      }
      return {2, "basis characterizations", tally.ok(), tally.str("comparisons")};
    }

    inline CriterionResult c3_dimension_fixtures() {
      Tally tally;
      tally.check(dim(trivial_table()).value == std::optional<int>(0), "dim {0}");
      for (int m = 1; m <= 4; ++m) {
        auto d = dim(saturating_chain(m));
        tally.check(d.value == std::optional<int>(kChainDims[m]), "dim C" + std::to_string(m));
      }
      for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
          auto r = verify_sum_permanence(saturating_chain(a), saturating_chain(b));
          tally.check(r.ok, "C" + std::to_string(a) + "+C" + std::to_string(b));
        }
      }
      return {3, "dimension fixtures", tally.ok(), tally.str("values")};
    }

    inline CriterionResult c4_permanence(std::vector<SuiteTable> const& suite) {
      Tally tally;
      for (auto const& e : suite) {
        auto r = verify_permanence(e.table);
        tally.check(r.ok, e.name);
      }
      return {4, "ideal and quotient permanence", tally.ok(), tally.str("tables")};
    }

    inline CriterionResult c5_sub_cu(std::vector<SuiteTable> const& suite) {
      Tally tally;
      auto  nb  = make_nbar();
      auto  set = [&](char const* text) { return parse_subset(*nb, text); };

      auto naturals = set("N");
      tally.check(!is_sub_cu(*nb, naturals).by_interpolation && !is_sub_cu(*nb, naturals).by_derived,
                  "N is not sub-Cu");
      auto zinf = set("0,inf");
      tally.check(!is_sub_cu(*nb, zinf).value() && is_sub_cu(*nb, zinf).agree(), "{0,inf}");
      tally.check(same_set(derived(*nb, zinf), set("0")), "{0,inf}' = {0}");
      auto tail = set("0,5..,inf");
      tally.check(is_sub_cu(*nb, tail).by_interpolation && is_sub_cu(*nb, tail).by_derived,
                  "{0,5..,inf} is sub-Cu");

      for (auto const& t : nbar_corpus()) {
        auto r = repr(t);
        auto v = is_sub_cu(*nb, r);
        tally.check(v.agree() && v.value() == same_set(derived(*nb, r), r), t.str());
      }
      for (auto const& e : small(suite, 5)) {
        auto c = make_finite(e.table);
        for (Mask m = 1; m <= e.table.all(); m += 2) {
          if (is_submonoid(e.table, m)) {
            auto v = is_sub_cu(*c, repr(m));
            tally.check(v.agree() && v.value() == same_set(derived(*c, repr(m)), repr(m)),
                        e.name + " " + format_subset(e.table, m));
          }
          if (m == e.table.all()) {
            break;
          }
        }
      }
      return {5, "sub-Cu characterizations", tally.ok(), tally.str("subsets")};
    }

    inline CriterionResult c6_delta_lattice(std::vector<SuiteTable> const& suite) {
      Tally     tally;
      auto      nb   = make_nbar();
      int const fuel = 16;
      auto      kernel_laws = [&](Carrier const& s, SubMonoidRepr const& t, std::string const& name) {
        auto d = delta(s, t, fuel);
        if (!d.stabilized) {
          return;
        }
        tally.check(is_subset(d, sup_closure(s, t, fuel)), name + " delta within sup-closure");
        tally.check(same_set(delta(s, d, fuel), d), name + " delta idempotent");
        tally.check(is_sub_cu(s, d).value(), name + " delta is sub-Cu");
      };
      for (auto const& t : nbar_corpus()) {
        kernel_laws(*nb, repr(t), t.str());
        kernel_laws(*nb, repr(t.with_inf(false)), t.with_inf(false).str());
      }
      for (auto const& e : small(suite, 4)) {
        auto c   = make_finite(e.table);
        auto all = enumerate_sub_cu(e.table);
        for (Mask m = 1; m <= e.table.all(); m += 2) {
          if (is_submonoid(e.table, m)) {
            kernel_laws(*c, repr(m), e.name);
          }
          if (m == e.table.all()) {
            break;
          }
        }
        for (Mask a : all) {
          for (Mask b : all) {
            // least member of `all` above both, greatest below both
            std::optional<Mask> lub, glb;
            for (Mask u : all) {
              if ((a & ~u) == 0 && (b & ~u) == 0 && (!lub || (u & ~*lub) == 0)) {
                lub = u;
              }
              if ((u & ~a) == 0 && (u & ~b) == 0 && (!glb || (*glb & ~u) == 0)) {
                glb = u;
              }
            }
            auto sup = lattice_sup(*c, {repr(a), repr(b)}, fuel);
            auto inf = lattice_inf(*c, {repr(a), repr(b)}, fuel);
            tally.check(lub && sup.mask() == *lub, e.name + " sup");
            tally.check(glb && inf.mask() == *glb, e.name + " inf");
          }
        }
      }
      auto evens  = parse_subset(*nb, "2*N,inf");
      auto threes = parse_subset(*nb, "3*N,inf");
      tally.check(same_set(lattice_inf(*nb, {evens, threes}, fuel), parse_subset(*nb, "6*N,inf")),
                  "evens and multiples of 3");
      return {6, "delta and lattice operations", tally.ok(), tally.str("checks")};
    }

    inline CriterionResult c7_approximation(std::vector<SuiteTable> const& suite) {
      Tally       tally;
      QueryBounds bounds;
      for (auto const& e : suite) {
        auto r = check_approximates(identity_family(make_finite(e.table, e.name)), bounds);
        tally.check(r.verdict == Verdict::holds, e.name + " identity family");
      }
      auto nb = make_nbar();
      tally.check(check_approximates(identity_family(nb), bounds).verdict == Verdict::holds,
                  "nbar identity family");
      for (int length = 1; length <= 4; ++length) {
        auto system = doubling_chain(length);
        auto lim    = build_limit(system, bounds);
        auto name   = "doubling chain of length " + std::to_string(length);
        tally.check(lim.ok(), name + " (L0)-(L2)");
        tally.check(isomorphism(lim.limit, saturating_chain(1 << (length - 1))).has_value(),
                    name + " limit");
        auto         target = std::make_shared<FiniteCarrier const>(lim.limit, "limit", Backend::limit);
        ApproxFamily fam{target, {}};
        for (std::size_t l = 0; l < system.stages.size(); ++l) {
          fam.members.push_back(
              finite_morphism(make_finite(system.stages[l]), target, lim.canonical[l]));
        }
        for (auto p : {TransferProperty::o5, TransferProperty::o6, TransferProperty::o7,
                       TransferProperty::wc, TransferProperty::dim}) {
          auto t = transfer_check(fam, p);
          tally.check(!t.violated, name + " transfer " + to_string(p));
        }
      }
      for (auto const& e : small(suite, 4)) {
        auto lim = build_limit(constant_chain(e.table, 3), bounds);
        tally.check(lim.ok() && isomorphism(lim.limit, e.table).has_value(), e.name + " constant chain");
      }
      return {7, "approximation and limits", tally.ok(), tally.str("checks")};
    }

    inline CriterionResult c8_lowenheim_skolem(std::vector<SuiteTable> const& suite) {
      Tally tally;
      auto  nb  = make_nbar();
      auto  gen = gen_countably_based_sub(*nb, parse_subset(*nb, "inf"), 16);
      tally.check(gen.result.stabilized && same_set(gen.result, repr(NbarSubset::everything())),
                  "closure of {inf} is nbar");
      tally.check(is_sub_cu(*nb, gen.result).value(), "closure of {inf} is sub-Cu");

      auto ambient = check_dim_at_most(*nb, 0, 2, 20000);
      for (char const* seed : {"inf", "3", "2,inf", "0"}) {
        auto r = gen_sub_with_dim(*nb, parse_subset(*nb, seed), 0, 2, 20000);
        tally.check(r.answer != DimAnswer::no && ambient.answer != DimAnswer::no,
                    std::string("nbar seed ") + seed);
        tally.check(is_subset(parse_subset(*nb, seed), r.result), std::string("contains ") + seed);
      }
      for (auto const& e : small(suite, 5)) {
        int d = FiniteDimAnalysis(e.table).dim();
        if (d != FiniteDimAnalysis::kUnbounded) {
          auto c = make_finite(e.table);
          for (int x = 0; x < e.table.size(); ++x) {
            auto r  = gen_sub_with_dim(*c, repr(bit(x)), d, 2, 0);
            int  dt = FiniteDimAnalysis(sub_table(e.table, r.result.mask())).dim();
            tally.check(contains(r.result.mask(), x) && dt != FiniteDimAnalysis::kUnbounded && dt <= d,
                        e.name + " seed " + e.table.label(x));
          }
        }
        for (int n = 0; n <= 2; ++n) {
          auto r = countable_characterization(e.table, n, e.table.size());
          tally.check(r.dim_at_most == r.subsets_extend, e.name + " n=" + std::to_string(n));
        }
      }
      return {8, "Lowenheim-Skolem closures", tally.ok(), tally.str("checks")};
    }

    inline CriterionResult c9_interpolation(std::vector<SuiteTable> const& suite) {
      Tally       tally;
      std::size_t qualifying = 0;
      for (auto const& e : suite) {
        auto sc = full_scope(e.table);
        if (!check_simple(e.table, sc).holds() || !check_weak_cancellation(e.table, sc, Mode::direct).holds()
            || !check_O5(e.table, sc, Mode::direct).holds() || dim(e.table).value != std::optional<int>(0)) {
          continue;
        }
        ++qualifying;
        tally.check(check_riesz_interpolation(e.table, sc).holds(), e.name);
      }
      // nbar qualifies on every fragment the fuel reaches
      auto nb = make_nbar();
      auto f  = [&](int arity) { return fuel_scope(*nb, 20000, arity); };
      if (!check_simple(*nb, f(2)).fails() && !check_weak_cancellation(*nb, f(3), Mode::direct).fails()
          && !check_O5(*nb, f(6), Mode::direct).fails()
          && check_dim_at_most(*nb, 0, 2, 20000).answer != DimAnswer::no) {
        ++qualifying;
        tally.check(!check_riesz_interpolation(*nb, f(4)).fails(), "nbar");
      }
      return {9, "interpolation from dimension zero", tally.ok(),
              tally.str("qualifying carriers") + " of " + std::to_string(suite.size() + 1)};
    }

    inline CriterionResult c10_soft_part(std::vector<SuiteTable> const& suite) {
      Tally tally;
      auto  nb   = make_nbar();
      auto  frag = nb->fragment(8);
      for (auto const& x : frag) {
        bool expect = x[0] == NatInf(0) || x[0].is_infinite();
        auto v      = is_soft(*nb, x, 8);
        tally.check(expect ? v != Verdict::fails : v == Verdict::fails, "nbar soft " + nb->format(x));
      }
      auto rn = soft_dim_bounds(*nb, 2, 20000);
      tally.check(rn.soft_part == "0,inf", "nbar soft part");
      tally.check(rn.lower_ok && rn.upper_ok, "nbar bounds");
      std::size_t qualifying = 0;
      for (auto const& e : suite) {
        auto r = soft_dim_bounds(e.table);
        if (!r.hypotheses_verified) {
          continue;
        }
        ++qualifying;
        tally.check(r.lower_ok && r.upper_ok, e.name);
      }
      return {10, "soft part dimension bounds", tally.ok(),
              tally.str("checks") + ", " + std::to_string(qualifying) + " finite table(s) qualify"};
    }

    template <typename F>
    CriterionResult timed(F&& f) {
      auto            start = std::chrono::steady_clock::now();
      CriterionResult r;
      try {
        r = f();
      } catch (std::exception const& e) {
        r.pass   = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }

  }  // namespace acceptance

  // Criteria 1-10; the CLI layer adds 11.
  inline std::vector<CriterionResult> run_core_criteria(std::ostream* log = nullptr) {
    using namespace acceptance;
    auto                                         s = suite();
    std::vector<std::function<CriterionResult()>> all = {
        [] { return c1_foundation(); },
        [&] { return c2_basis_equivalence(s); },
        [] { return c3_dimension_fixtures(); },
        [&] { return c4_permanence(s); },
        [&] { return c5_sub_cu(s); },
        [&] { return c6_delta_lattice(s); },
        [&] { return c7_approximation(s); },
        [&] { return c8_lowenheim_skolem(s); },
        [&] { return c9_interpolation(s); },
        [&] { return c10_soft_part(s); },
    };
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
      auto r = timed(all[i]);
      r.id   = static_cast<int>(i) + 1;
      out.push_back(r);
      if (log) {
        *log << format_criterion(r) << std::endl;
      }
    }
    return out;
  }

}  // namespace cusg
