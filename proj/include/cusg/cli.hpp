#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "approx.hpp"
#include "axioms.hpp"
#include "carrier.hpp"
#include "dimension.hpp"
#include "formats.hpp"
#include "report.hpp"
#include "subcu.hpp"
#include "waybelow.hpp"

namespace cusg {

  namespace cli {

    enum ExitCode { kHolds = 0, kFails = 1, kUsage = 2, kInconclusive = 3 };

    inline int exit_code(Verdict v) {
      switch (v) {
        case Verdict::holds:
          return kHolds;
        case Verdict::fails:
          return kFails;
        case Verdict::unknown:
          return kInconclusive;
      }
      return kUsage;
    }

    // Worst of two exit codes: fails beats inconclusive beats holds.
    inline int combine(int a, int b) {
      auto rank = [](int c) { return c == kFails ? 2 : c == kInconclusive ? 1 : 0; };
      return rank(a) >= rank(b) ? a : b;
    }

    inline std::uint64_t default_fuel() {
      if (char const* env = std::getenv("CUSG_FUEL")) {
        try {
          return std::stoull(env);
        } catch (std::exception const&) {
          throw PreconditionError(std::string("CUSG_FUEL is not a number: ") + env);
        }
      }
      return 20000;
    }

    inline bool is_file(std::string const& spec) {
      std::error_code ec;
      return std::filesystem::is_regular_file(spec, ec);
    }

    // Digest of what an argument denotes: file contents for paths, the text
    // itself for catalog ids.
    inline std::string input_text(std::string const& spec) {
      if (is_file(spec)) {
        return read_file(spec);
      }
      if (spec.rfind("mono:", 0) == 0 && is_file(spec.substr(5))) {
        return "mono:" + read_file(spec.substr(5));
      }
      return spec;
    }

    inline Json witness_json(std::vector<std::string> const& names,
                             std::vector<std::string> const& values) {
      Json j = Json::object();
      for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
        auto v = values[i];
        if (v.rfind(names[i] + "=", 0) == 0) {
          v = v.substr(names[i].size() + 1);
        }
        j[names[i]] = v;
      }
      return j;
    }

    template <typename E, typename Fmt>
    Json dim_witness_json(DimWitness<E> const& w, Fmt fmt) {
      Json j;
      j["x'"] = fmt(w.xp);
      j["x"]  = fmt(w.x);
      Json ys = Json::array();
      for (auto const& y : w.ys) {
        ys.push_back(fmt(y));
      }
      j["y"] = ys;
      if (!w.z.empty()) {
        Json z = Json::array();
        for (auto const& row : w.z) {
          Json r = Json::array();
          for (auto const& e : row) {
            r.push_back(fmt(e));
          }
          z.push_back(r);
        }
        j["z"] = z;
      }
      return j;
    }

    struct Context {
      std::ostream& out;
      std::ostream& err;
      bool          json = false;
    };

    ////////////////////////////////////////////////////////////////////
    // Commands. Each returns a report; the caller prints it.
    ////////////////////////////////////////////////////////////////////

    inline RunReport cmd_check(std::string const& spec, std::uint64_t fuel) {
      RunReport r;
      r.command         = "check";
      r.bounds["fuel"]  = fuel;
      auto c            = instantiate_catalog(spec);
      r.bounds["carrier"] = c->name();
      int code          = kHolds;
      if (auto const* t = c->table()) {
        auto o14 = check_O1_to_O4(*t);
        r.verdicts["pom"]   = "holds";
        r.verdicts["o1_o4"] = o14.certified ? "holds" : (o14.violation ? "fails" : "unknown");
        if (o14.violation) {
          r.witnesses["o1_o4"] = {{"axiom", o14.axiom}, {"instance", o14.witness}};
        }
        code = o14.certified ? kHolds : (o14.violation ? kFails : kInconclusive);
      } else {
        auto o14 = check_O1_to_O4(*c, fuel);
        r.verdicts["o1_o4"] = o14.violation ? "fails" : "unknown";
        r.bounds["o1_o4_bound"] = o14.bound;
        if (o14.violation) {
          r.witnesses["o1_o4"] = {{"axiom", o14.axiom}, {"instance", o14.witness}};
        }
        code = o14.violation ? kFails : kInconclusive;
      }
      auto wb = validate_waybelow(*c, fuel);
      r.verdicts["waybelow"]       = wb.agreement ? (c->is_finite() ? "holds" : "unknown") : "fails";
      r.bounds["waybelow_bound"]   = wb.bound;
      r.bounds["waybelow_pairs"]   = wb.pairs;
      r.bounds["waybelow_chains"]  = wb.chains;
      if (wb.discrepancy) {
        r.witnesses["waybelow"] = {{"x", wb.discrepancy->x},
                                   {"y", wb.discrepancy->y},
                                   {"closed_form", wb.discrepancy->closed_form},
                                   {"definitional", wb.discrepancy->definitional},
                                   {"chain", wb.discrepancy->chain}};
        code = kFails;
      } else if (!c->is_finite()) {
        code = combine(code, kInconclusive);
      }
      r.exit_code = code;
      return r;
    }

    inline RunReport cmd_axioms(std::string const&              spec,
                                std::vector<std::string> const& axioms,
                                std::string const&              mode_text,
                                std::uint64_t                   fuel) {
      RunReport r;
      r.command = "axioms";
      auto c    = instantiate_catalog(spec);
      if (mode_text != "direct" && mode_text != "basis") {
        throw PreconditionError("unknown mode '" + mode_text + "'");
      }
      Mode mode          = mode_text == "direct" ? Mode::direct : Mode::basis;
      r.bounds["mode"]   = mode_text;
      r.bounds["fuel"]   = fuel;
      r.bounds["carrier"] = c->name();
      std::vector<Axiom> list;
      if (axioms.empty()) {
        list = {Axiom::o5, Axiom::o6, Axiom::o7, Axiom::wc, Axiom::simple, Axiom::riesz, Axiom::div};
      }
      for (auto const& a : axioms) {
        auto parsed = parse_axiom(a);
        if (!parsed) {
          throw PreconditionError("unknown axiom '" + a + "'");
        }
        list.push_back(*parsed);
      }
      int code = kHolds;
      for (Axiom a : list) {
        Mode m   = (a == Axiom::simple || a == Axiom::riesz || a == Axiom::div) ? Mode::direct : mode;
        auto sc  = fuel_scope(*c, fuel, quantifier_count(a, m), m);
        auto v   = check_axiom(*c, a, sc, m, 4);
        auto key = to_string(a);
        r.verdicts[key] = to_string(v.verdict);
        r.bounds["fragment_" + key] = v.exhaustive ? Json("exhaustive") : Json(v.bound);
        if (v.fails()) {
          r.witnesses[key] = witness_json(v.names, v.formatted);
        }
        code = combine(code, exit_code(v.verdict));
      }
      r.exit_code = code;
      return r;
    }

    inline RunReport cmd_dim(std::string const& spec,
                             int                max_n,
                             int                width,
                             std::uint64_t      fuel,
                             std::string const& witness_path) {
      RunReport r;
      r.command          = "dim";
      auto c             = instantiate_catalog(spec);
      r.bounds["max"]    = max_n;
      r.bounds["width"]  = width;
      r.bounds["fuel"]   = fuel;
      r.bounds["carrier"] = c->name();
      Json witness_file  = Json::array();
      if (auto const* t = c->table()) {
        auto v            = dim(*t, max_n);
        r.verdicts["dim"] = v.str();
        r.verdicts["exact"] = true;
        r.bounds["method"]  = v.method;
        auto fmt          = [&](int e) { return t->label(e); };
        if (v.exceeds) {
          auto chk                   = check_dim_at_most(*t, max_n);
          r.witnesses["counterexample"] = dim_witness_json(*chk.counterexample, fmt);
        } else {
          auto chk = check_dim_at_most(*t, *v.value, witness_path.empty() ? 0 : 1000);
          for (auto const& w : chk.witnesses) {
            witness_file.push_back(dim_witness_json(w, fmt));
          }
        }
        r.exit_code = kHolds;
      } else {
        auto v              = dim(*c, max_n, width, fuel);
        r.verdicts["dim"]   = v.str();
        r.verdicts["exact"] = v.exact;
        r.bounds["method"]  = v.method;
        r.bounds["bound"]   = v.bound;
        auto fmt            = [&](Element const& e) { return c->format(e); };
        if (v.exceeds) {
          auto chk = check_dim_at_most(*c, max_n, width, fuel);
          if (chk.counterexample) {
            r.witnesses["counterexample"] = dim_witness_json(*chk.counterexample, fmt);
          }
        } else if (!witness_path.empty()) {
          auto chk = check_dim_at_most(*c, *v.value, width, fuel);
          for (auto const& w : chk.witnesses) {
            witness_file.push_back(dim_witness_json(w, fmt));
          }
        }
        r.exit_code = v.exact ? kHolds : kInconclusive;
      }
      if (!witness_path.empty()) {
        std::ofstream f(witness_path);
        if (!f) {
          throw Error("cannot write '" + witness_path + "'");
        }
        f << witness_file.dump(2) << "\n";
        r.bounds["witnesses_written"] = witness_file.size();
      }
      return r;
    }

    inline RunReport cmd_permanence(std::string const& spec) {
      RunReport r;
      r.command = "permanence";
      auto c    = instantiate_catalog(spec);
      if (!c->is_finite()) {
        throw PreconditionError("permanence needs a finite table");
      }
      auto const& t   = *c->table();
      auto        rep = verify_permanence(t);
      auto        str = [](std::optional<int> d) { return d ? std::to_string(*d) : std::string("inf"); };
      r.verdicts["permanence"] = rep.ok ? "holds" : "fails";
      r.verdicts["dim"]        = str(rep.dim);
      Json entries             = Json::array();
      for (auto const& e : rep.entries) {
        entries.push_back({{"ideal", format_subset(t, e.ideal)},
                           {"ideal_dim", str(e.ideal_dim)},
                           {"quotient_dim", str(e.quotient_dim)},
                           {"ok", e.ok}});
      }
      r.witnesses["ideals"] = entries;
      r.exit_code           = rep.ok ? kHolds : kFails;
      return r;
    }

    inline RunReport cmd_closure(std::string const& spec,
                                 std::string const& op,
                                 std::string const& subset,
                                 std::uint64_t      fuel) {
      RunReport r;
      r.command         = "closure";
      auto c            = instantiate_catalog(spec);
      r.bounds["op"]    = op;
      r.bounds["fuel"]  = fuel;
      r.bounds["subset"] = subset;
      auto t            = parse_subset(*c, subset);
      if ((op == "sup" || op == "delta") && !same_set(generated_submonoid(*c, t), t)) {
        // both are defined on submonoids
        t                      = generated_submonoid(*c, t);
        r.bounds["generated"] = format_subset(*c, t);
      }
      int  iterations   = static_cast<int>(std::min<std::uint64_t>(fuel, 1u << 20));
      SubMonoidRepr out;
      if (op == "seq") {
        out = seq_closure(*c, t);
      } else if (op == "sup") {
        out = sup_closure(*c, t, iterations);
      } else if (op == "derived") {
        out = derived(*c, t);
      } else if (op == "delta") {
        out = delta(*c, t, iterations);
      } else if (op == "generate") {
        out = generated_submonoid(*c, t);
      } else {
        throw PreconditionError("unknown closure op '" + op + "'");
      }
      r.verdicts["result"]     = format_subset(*c, out);
      r.verdicts["stabilized"] = out.stabilized;
      r.verdicts["iterations"] = out.iterations;
      bool monoid = same_set(generated_submonoid(*c, out), out);
      r.verdicts["submonoid"] = monoid;
      if (monoid) {
        auto v                  = is_sub_cu(*c, out);
        r.verdicts["sub_cu"]    = v.value();
        r.verdicts["sub_cu_forms_agree"] = v.agree();
      }
      r.exit_code = out.stabilized ? kHolds : kInconclusive;
      return r;
    }

    inline RunReport cmd_lattice(std::string const& spec, bool pairs) {
      RunReport r;
      r.command        = "lattice";
      auto c           = instantiate_catalog(spec);
      r.bounds["pairs"] = pairs;
      if (!c->is_finite()) {
        throw PreconditionError("lattice enumeration needs a finite table");
      }
      auto const& t   = *c->table();
      auto        all = enumerate_sub_cu(t);
      Json        list = Json::array();
      for (Mask m : all) {
        list.push_back(format_subset(t, m));
      }
      r.verdicts["count"]      = all.size();
      r.witnesses["sub_cu"]    = list;
      if (pairs) {
        Json table = Json::array();
        for (Mask a : all) {
          for (Mask b : all) {
            table.push_back({{"a", format_subset(t, a)},
                             {"b", format_subset(t, b)},
                             {"sup", format_subset(t, lattice_sup(*c, {repr(a), repr(b)}, 64).mask())},
                             {"inf", format_subset(t, lattice_inf(*c, {repr(a), repr(b)}, 64).mask())}});
          }
        }
        r.witnesses["pairs"] = table;
      }
      r.exit_code = kHolds;
      return r;
    }

    inline RunReport cmd_lowenheim(std::string const&        spec,
                                   std::string const&        seed,
                                   std::optional<int> const& n,
                                   int                       width,
                                   std::uint64_t             fuel) {
      RunReport r;
      r.command         = "lowenheim";
      auto c            = instantiate_catalog(spec);
      r.bounds["seed"]  = seed;
      r.bounds["fuel"]  = fuel;
      auto s            = parse_subset(*c, seed);
      int  rounds       = static_cast<int>(std::min<std::uint64_t>(fuel, 256));
      if (!n) {
        auto g                    = gen_countably_based_sub(*c, s, rounds);
        r.verdicts["result"]      = format_subset(*c, g.result);
        r.verdicts["stabilized"]  = g.stabilized;
        r.verdicts["sub_cu"]      = is_sub_cu(*c, g.result).value();
        r.witnesses["generators"] = g.basis;
        r.exit_code               = g.stabilized ? kHolds : kInconclusive;
        return r;
      }
      r.bounds["dim"]   = *n;
      r.bounds["width"] = width;
      auto d                   = gen_sub_with_dim(*c, s, *n, width, fuel);
      r.verdicts["result"]     = format_subset(*c, d.result);
      r.verdicts["stabilized"] = d.stabilized;
      r.verdicts["dim_at_most"] = to_string(d.answer);
      r.verdicts["adjoined"]   = d.adjoined;
      r.exit_code = d.answer == DimAnswer::no      ? kFails
                    : d.answer == DimAnswer::yes   ? (d.stabilized ? kHolds : kInconclusive)
                                                   : kInconclusive;
      return r;
    }

    inline Json query_json(Carrier const& s, ApproxQuery const& q) {
      Json j;
      Json xp = Json::array(), x = Json::array();
      for (std::size_t i = 0; i < q.x.size(); ++i) {
        xp.push_back(s.format(q.xp[i]));
        x.push_back(s.format(q.x[i]));
      }
      j["x'"] = xp;
      j["x"]  = x;
      j["m"]  = q.m;
      j["n"]  = q.n;
      return j;
    }

    inline RunReport cmd_approx(std::string const&              target_spec,
                                std::vector<std::string> const& members,
                                std::string const&              bounds_text,
                                std::uint64_t                   fuel,
                                std::string&                    digest_extra) {
      RunReport r;
      r.command  = "approx";
      auto target = instantiate_catalog(target_spec);
      QueryBounds b;
      if (!bounds_text.empty()) {
        int j = 0, k = 0, coeff = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(bounds_text);
        if (!(in >> j >> c1 >> k >> c2 >> coeff) || c1 != ',' || c2 != ',' || j < 1 || k < 1
            || coeff < 0) {
          throw PreconditionError("--bounds expects J,K,C with J,K >= 1");
        }
        b.j_max     = j;
        b.k_max     = k;
        b.coeff_max = static_cast<std::uint64_t>(coeff);
      }
      r.bounds["J"]     = b.j_max;
      r.bounds["K"]     = b.k_max;
      r.bounds["C"]     = b.coeff_max;
      r.bounds["queries"] = b.queries;
      r.bounds["element_bound"] = b.element_bound;
      r.bounds["seed"]  = b.seed;
      r.bounds["fuel"]  = fuel;
      ApproxFamily fam{target, {}};
      Json         names = Json::array();
      for (auto const& m : members) {
        auto colon = m.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == m.size()) {
          throw PreconditionError("--member expects SOURCE:MAPFILE, got '" + m + "'");
        }
        auto src     = instantiate_catalog(m.substr(0, colon));
        auto maptext = read_file(m.substr(colon + 1));
        digest_extra += input_text(m.substr(0, colon)) + "\n" + maptext + "\n";
        auto f       = parse_map(maptext, src, target);
        f.name       = m;
        fam.members.push_back(f);
        names.push_back(m);
      }
      if (fam.members.empty()) {
        fam = identity_family(target);
        names.push_back("id");
      }
      r.bounds["members"] = names;
      auto rep = check_approximates(fam, b, fuel);
      r.verdicts["approximates"] = to_string(rep.verdict);
      r.verdicts["queries"]      = rep.queries;
      r.verdicts["rejected"]     = rep.rejected;
      if (rep.failing) {
        r.witnesses["failing_query"] = query_json(*target, *rep.failing);
      }
      r.exit_code = exit_code(rep.verdict);
      return r;
    }

    inline RunReport cmd_limit(std::string const& path) {
      RunReport r;
      r.command   = "limit";
      auto system = parse_chain_system(read_file(path), std::filesystem::path(path).parent_path());
      QueryBounds b;
      auto        lim = build_limit(system, b);
      r.bounds["stages"]  = system.stages.size();
      r.bounds["queries"] = b.queries;
      r.bounds["seed"]    = b.seed;
      r.verdicts["l0"]    = lim.l0;
      r.verdicts["l1"]    = lim.l1;
      r.verdicts["l2"]    = lim.l2;
      r.verdicts["approximates"] = to_string(lim.approximation.verdict);
      r.verdicts["limit_size"]   = lim.limit.size();
      r.witnesses["limit"]       = serialize_table(lim.limit);
      r.witnesses["canonical_maps"] = lim.canonical;
      if (!lim.l1) {
        r.witnesses["l1"] = lim.l1_witness;
      }
      if (!lim.l2) {
        r.witnesses["l2"] = lim.l2_witness;
      }
      r.exit_code = lim.ok() ? kHolds : kFails;
      return r;
    }

    inline RunReport cmd_catalog() {
      RunReport r;
      r.command = "catalog";
      Json list = Json::array();
      for (auto const& e : catalog_entries()) {
        list.push_back({{"id", e.syntax}, {"description", e.description}});
      }
      r.verdicts["entries"] = list;
      r.exit_code           = kHolds;
      return r;
    }

    std::vector<CriterionResult> run_all_criteria(std::ostream* log);

    inline RunReport cmd_selftest(std::ostream* log) {
      RunReport r;
      r.command   = "selftest";
      auto crit   = run_all_criteria(log);
      bool all_ok = true;
      for (auto const& c : crit) {
        r.verdicts[std::to_string(c.id)]  = c.pass ? "holds" : "fails";
        r.witnesses[std::to_string(c.id)] = c.detail;
        all_ok                            = all_ok && c.pass;
      }
      r.exit_code = all_ok ? kHolds : kFails;
      return r;
    }

    inline void print_text(std::ostream& out, RunReport const& r) {
      out << r.command << ":";
      for (auto const& [k, v] : r.verdicts.items()) {
        out << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      out << "\n";
      for (auto const& [k, v] : r.witnesses.items()) {
        out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }

  }  // namespace cli

  // Runs one command line (without the program name). Output goes to `out`;
  // diagnostics to `err`. Returns the process exit code.
  inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    CLI::App app{"Cu-semigroup toolkit: axioms, dimension, sub-Cu closures and approximation"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    bool        json    = false;
    bool        timing  = false;
    bool        verify  = false;
    std::string cache_dir;
    std::optional<std::uint64_t> fuel_opt;
    auto        common = [&](CLI::App* sub) {
      sub->add_flag("--json", json, "emit the JSON run report");
      sub->add_flag("--timing", timing, "include timing in the report");
      sub->add_option("--cache", cache_dir, "result cache directory");
      sub->add_flag("--verify-cache", verify, "recompute and compare against the cache");
    };
    auto with_fuel = [&](CLI::App* sub) { sub->add_option("--fuel", fuel_opt, "search budget"); };

    std::string carrier, op, subset, seed, witnesses, mode = "direct", bounds_text, target;
    std::vector<std::string> axioms, members;
    int                      max_n = 3, width = 2;
    std::optional<int>       dim_n;
    bool                     enumerate = false, pairs = false;

    auto* check = app.add_subcommand("check", "validate a carrier and its way-below relation");
    check->add_option("carrier", carrier, "table file or catalog id")->required();
    common(check);
    with_fuel(check);

    auto* ax = app.add_subcommand("axioms", "check O5, O6, O7, weak cancellation and more");
    ax->add_option("carrier", carrier)->required();
    ax->add_option("--axiom", axioms, "o5|o6|o7|wc|simple|riesz|div (repeatable)");
    ax->add_option("--mode", mode, "direct|basis");
    common(ax);
    with_fuel(ax);

    auto* dm = app.add_subcommand("dim", "covering dimension");
    dm->add_option("carrier", carrier)->required();
    dm->add_option("--max", max_n, "largest dimension tried");
    dm->add_option("--width", width, "largest number of summands (catalog carriers)");
    dm->add_option("--witnesses", witnesses, "write refinements to this JSON file");
    common(dm);
    with_fuel(dm);

    auto* perm = app.add_subcommand("permanence", "dimension of ideals and quotients");
    perm->add_option("carrier", carrier)->required();
    common(perm);

    auto* cl = app.add_subcommand("closure", "seq, sup, derived and delta closures");
    cl->add_option("carrier", carrier)->required();
    cl->add_option("--op", op, "seq|sup|derived|delta|generate")->required();
    cl->add_option("--subset", subset, "elements, e.g. 0,5..,inf")->required();
    common(cl);
    with_fuel(cl);

    auto* lat = app.add_subcommand("lattice", "sub-Cu-semigroups of a finite table");
    lat->add_option("carrier", carrier)->required();
    lat->add_flag("--enumerate", enumerate, "list every sub-Cu-semigroup")->required();
    lat->add_flag("--pairs", pairs, "also list suprema and infima of pairs");
    common(lat);

    auto* lw = app.add_subcommand("lowenheim", "countably based sub-Cu-semigroup around a seed");
    lw->add_option("carrier", carrier)->required();
    lw->add_option("--seed", seed, "seed elements")->required();
    lw->add_option("--dim", dim_n, "keep dimension at most N");
    lw->add_option("--width", width, "largest number of summands");
    common(lw);
    with_fuel(lw);

    auto* ap = app.add_subcommand("approx", "check that a family approximates a carrier");
    ap->add_option("--target", target, "table file or catalog id")->required();
    ap->add_option("--member", members, "SOURCE:MAPFILE (repeatable); default identity");
    ap->add_option("--bounds", bounds_text, "J,K,C query bounds");
    common(ap);
    with_fuel(ap);

    auto* lim = app.add_subcommand("limit", "inductive limit of a finite chain system");
    lim->add_option("chainfile", carrier, "CUCHAIN v1 file")->required();
    common(lim);

    auto* cat = app.add_subcommand("catalog", "list catalog carriers");
    common(cat);

    auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
    common(self);

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (CLI::CallForHelp const& e) {
      out << app.help();
      return kHolds;
    } catch (CLI::CallForAllHelp const& e) {
      out << app.help("", CLI::AppFormatMode::All);
      return kHolds;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n" << app.help();
      return kUsage;
    }

    try {
      std::uint64_t fuel   = fuel_opt ? *fuel_opt : default_fuel();
      CLI::App*     chosen = app.get_subcommands().front();
      std::string   name   = chosen->get_name();
      std::string   digest_text = name + "\n";
      auto          started = std::chrono::steady_clock::now();

      std::function<RunReport()> compute;
      std::string                extra;
      if (name == "check") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_check(carrier, fuel); };
      } else if (name == "axioms") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_axioms(carrier, axioms, mode, fuel); };
      } else if (name == "dim") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_dim(carrier, max_n, width, fuel, witnesses); };
      } else if (name == "permanence") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_permanence(carrier); };
      } else if (name == "closure") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_closure(carrier, op, subset, fuel); };
      } else if (name == "lattice") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_lattice(carrier, pairs); };
      } else if (name == "lowenheim") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_lowenheim(carrier, seed, dim_n, width, fuel); };
      } else if (name == "approx") {
        digest_text += input_text(target);
        for (auto const& m : members) {
          auto colon = m.rfind(':');
          digest_text += "\n" + m + "\n";
          if (colon != std::string::npos) {
            digest_text += input_text(m.substr(0, colon)) + "\n" + input_text(m.substr(colon + 1));
          }
        }
        compute = [&] { return cmd_approx(target, members, bounds_text, fuel, extra); };
      } else if (name == "limit") {
        digest_text += input_text(carrier);
        compute = [&] { return cmd_limit(carrier); };
      } else if (name == "catalog") {
        compute = [&] { return cmd_catalog(); };
      } else {
        compute = [&] { return cmd_selftest(json ? nullptr : &out); };
      }
      auto finish = [&](RunReport r) {
        r.input_digest = fnv1a(digest_text);
        return r;
      };

      RunReport report;
      bool      from_cache = false;
      if (!cache_dir.empty() && name != "selftest") {
        ResultCache cache(cache_dir);
        RunReport   probe = finish(RunReport{});
        // bounds are only known after computing, so the key covers the
        // command line instead
        std::string args_text;
        for (auto it = args.rbegin(); it != args.rend(); ++it) {
          if (*it != "--verify-cache" && *it != "--timing") {
            args_text += *it + "\n";
          }
        }
        auto key    = ResultCache::key(probe.input_digest, name, Json(args_text));
        auto cached = cache.load(key);
        if (cached && !verify) {
          report     = *cached;
          from_cache = true;
        } else {
          report = finish(compute());
          if (cached && !same_result(*cached, report)) {
            err << "error: cached report differs from fresh computation\n";
            return kFails;
          }
          cache.store(key, report);
        }
      } else {
        report = finish(compute());
      }
      if (timing) {
        report.timing_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      }
      if (json) {
        out << report.dump();
      } else if (name != "selftest") {
        print_text(out, report);
        if (from_cache) {
          out << "  (from cache)\n";
        }
      }
      return report.exit_code;
    } catch (ParseError const& e) {
      err << "parse error: " << e.what() << "\n";
      return kUsage;
    } catch (PreconditionError const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (FuelError const& e) {
      err << "fuel exhausted: " << e.what() << "\n";
      return kInconclusive;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

  namespace cli {

    // Determinism, cache coherence and table round-trips. `core` holds the
    // results of criteria 1-10, which make up the rest of selftest.
    inline CriterionResult criterion_11(std::vector<CriterionResult> const& core) {
      namespace fs = std::filesystem;
      CriterionResult r;
      r.id    = 11;
      r.title = "CLI determinism";
      std::vector<std::string> problems;

      bool core_ok = std::all_of(core.begin(), core.end(), [](auto const& c) { return c.pass; });
      if (!core_ok) {
        problems.push_back("selftest criteria failing");
      }

      auto dir = fs::temp_directory_path()
                 / ("cusg-selftest-" + fnv1a(std::to_string(reinterpret_cast<std::uintptr_t>(&r))));
      fs::create_directories(dir);
      auto table_path = (dir / "c3.cutable").string();
      auto cst = std::ofstream(table_path);
      cst << serialize_table(saturating_chain(3));
      cst.close();
      auto map_path = (dir / "double.cumap").string();
      auto mst = std::ofstream(map_path);
      mst << "CUMAP v1\n1 -> 2\n";
      mst.close();
      auto chain_path = (dir / "doubling.cuchain").string();
      auto hst = std::ofstream(chain_path);
      hst << serialize_chain_system(doubling_chain(3));
      hst.close();

      std::vector<std::vector<std::string>> commands = {
          {"check", table_path},
          {"axioms", table_path},
          {"axioms", "nbar", "--fuel", "5000"},
          {"dim", "chain:3", "--max", "1"},
          {"dim", "nbar", "--max", "1", "--fuel", "5000"},
          {"permanence", table_path},
          {"closure", "nbar", "--op", "delta", "--subset", "0,5..,inf"},
          {"lattice", table_path, "--enumerate", "--pairs"},
          {"lowenheim", table_path, "--seed", "1", "--dim", "0"},
          {"approx", "--target", "nbar", "--member", "nbar:" + map_path},
          {"limit", chain_path},
          {"catalog"},
      };
      int runs = 0;
      for (auto cmd : commands) {
        cmd.push_back("--json");
        std::string first, second;
        int         codes[2];
        for (int k = 0; k < 2; ++k) {
          std::ostringstream out, err;
          codes[k] = run_cli(cmd, out, err);
          (k ? second : first) = out.str();
          ++runs;
        }
        if (first != second || codes[0] != codes[1] || first.empty()) {
          problems.push_back("nondeterministic: " + cmd[0] + " " + (cmd.size() > 1 ? cmd[1] : ""));
        }
        // timing is the only field allowed to differ
        auto timed_cmd = cmd;
        timed_cmd.push_back("--timing");
        std::ostringstream out, err;
        run_cli(timed_cmd, out, err);
        auto j = Json::parse(out.str(), nullptr, false);
        if (j.is_discarded() || !j.contains("timing_ms")) {
          problems.push_back("no timing: " + cmd[0]);
        } else {
          j.erase("timing_ms");
          if (j.dump(2) + "\n" != first) {
            problems.push_back("timing changes the report: " + cmd[0]);
          }
        }
        // a cache hit, and a verified hit, reproduce the fresh report
        auto cached_cmd = cmd;
        cached_cmd.push_back("--cache");
        cached_cmd.push_back((dir / "cache").string());
        std::string hits[2];
        for (int k = 0; k < 2; ++k) {
          std::ostringstream o, e;
          run_cli(cached_cmd, o, e);
          hits[k] = o.str();
        }
        cached_cmd.push_back("--verify-cache");
        std::ostringstream vo, ve;
        int                vcode = run_cli(cached_cmd, vo, ve);
        if (hits[0] != first || hits[1] != first || vo.str() != first || vcode != codes[0]) {
          problems.push_back("cache incoherent: " + cmd[0]);
        }
      }

      int trips = 0;
      for (auto const& st : suite()) {
        auto text = serialize_table(st.table);
        auto back = parse_table(text);
        if (!(back == st.table) || serialize_table(back) != text
            || normalize_table_text(text) != text) {
          problems.push_back("round-trip: " + st.name);
        }
        ++trips;
      }
      // whitespace and comments normalize away
      auto loose = std::string("CUTABLE v1  \r\n  n=2\nadd=\n0 1\n1   1\nleq=\n1 1\n0 1\n\n");
      if (normalize_table_text(loose) != serialize_table(saturating_chain(1))) {
        problems.push_back("normalize");
      }
      ++trips;

      std::error_code ec;
      fs::remove_all(dir, ec);
      r.pass = problems.empty();
      std::ostringstream d;
      d << "selftest " << (core_ok ? "green" : "red") << ", " << commands.size() << " commands x "
        << runs / static_cast<int>(commands.size()) << " runs byte-identical with cache checks, "
        << trips << " table round-trips";
      for (auto const& p : problems) {
        d << "; " << p;
      }
      r.detail = d.str();
      return r;
    }

    inline std::vector<CriterionResult> run_all_criteria(std::ostream* log) {
      auto out = run_core_criteria(log);
      auto r   = acceptance::timed([&] { return criterion_11(out); });
      r.id     = 11;
      r.title  = "CLI determinism";
      if (log) {
        *log << format_criterion(r) << std::endl;
      }
      out.push_back(r);
      return out;
    }

  }  // namespace cli

  inline int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
  }

}  // namespace cusg
