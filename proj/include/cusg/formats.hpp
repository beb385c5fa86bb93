#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "approx.hpp"
#include "carrier.hpp"
#include "error.hpp"
#include "table.hpp"

namespace cusg {

  namespace detail {
    struct MapEntry {
      std::string from, to;
      int         line;
    };

    // `i -> j`
    inline MapEntry parse_arrow(std::string const& line, int lineno) {
      auto arrow = line.find("->");
      if (arrow == std::string::npos) {
        throw ParseError(lineno, 1, "expected 'i -> j'");
      }
      MapEntry e{trim(line.substr(0, arrow)), trim(line.substr(arrow + 2)), lineno};
      if (e.from.empty() || e.to.empty()) {
        throw ParseError(lineno, static_cast<int>(arrow) + 1, "missing side of '->'");
      }
      return e;
    }

    inline bool is_blank_or_comment(std::string const& line) {
      auto t = trim(line);
      return t.empty() || t[0] == '#';
    }

    inline std::vector<int> finite_image(std::vector<MapEntry> const& entries,
                                         Carrier const&               source,
                                         Carrier const&               target) {
      int              n = source.table()->size();
      std::vector<int> image(n, -1);
      for (auto const& e : entries) {
        int i = 0;
        int j = 0;
        try {
          i = FiniteCarrier::idx(source.parse(e.from));
          j = FiniteCarrier::idx(target.parse(e.to));
        } catch (CarrierError const& err) {
          throw ParseError(e.line, 1, err.what());
        }
        if (image[i] >= 0 && image[i] != j) {
          throw ParseError(e.line, 1, "element " + e.from + " is mapped twice");
        }
        image[i] = j;
      }
      for (int i = 0; i < n; ++i) {
        if (image[i] < 0) {
          throw ParseError(static_cast<int>(entries.empty() ? 1 : entries.back().line), 1,
                           "no image for element " + std::to_string(i));
        }
      }
      return image;
    }
  }  // namespace detail

  // CUMAP v1: a header line, then `i -> j` lines. On finite sources every
  // element needs an image. On nbar the map is given on the generator 1
  // (`1 -> v`), optionally with `0 -> 0`, and extended additively and by
  // suprema; the extension is validated like any other map.
  inline CuMorphism parse_map(std::string_view text, CarrierPtr source, CarrierPtr target) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || detail::trim(lines[0]) != "CUMAP v1") {
      throw ParseError(1, 1, "expected 'CUMAP v1'");
    }
    std::vector<detail::MapEntry> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (!detail::is_blank_or_comment(lines[i])) {
        entries.push_back(detail::parse_arrow(lines[i], static_cast<int>(i) + 1));
      }
    }
    if (source->is_finite()) {
      if (!target->is_finite()) {
        std::vector<Element> image(source->table()->size());
        std::vector<bool>    seen(image.size(), false);
        for (auto const& e : entries) {
          int i    = FiniteCarrier::idx(source->parse(e.from));
          image[i] = target->parse(e.to);
          seen[i]  = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i) {
          if (!seen[i]) {
            throw ParseError(1, 1, "no image for element " + std::to_string(i));
          }
        }
        return {source, target,
                [image](Element const& x) { return image[FiniteCarrier::idx(x)]; }, "map"};
      }
      return finite_morphism(source, target, detail::finite_image(entries, *source, *target));
    }
    if (source->name() != "nbar") {
      throw PreconditionError("maps are read for finite sources and nbar, not " + source->name());
    }
    std::optional<Element> gen;
    for (auto const& e : entries) {
      auto from = source->parse(e.from);
      auto to   = target->parse(e.to);
      if (from == scalar(NatInf(1))) {
        gen = to;
      } else if (from == scalar(NatInf(0))) {
        if (to != target->zero()) {
          throw ParseError(e.line, 1, "0 must map to 0");
        }
      } else {
        throw ParseError(e.line, 1, "maps on nbar are given on the generator 1");
      }
    }
    if (!gen) {
      throw ParseError(1, 1, "missing image of 1");
    }
    Element    v = *gen;
    CarrierPtr t = target;
    return {source, target,
            [v, t](Element const& x) {
              if (x[0].is_infinite()) {
                return t->infinite_multiple(v);
              }
              return t->multiple(x[0].value(), v);
            },
            "map"};
  }

  // CUCHAIN v1:
  //   CUCHAIN v1
  //   stage <catalog id or CUTABLE path>     (one per stage, finite)
  //   map                                    (one block per consecutive pair)
  //   i -> j
  // Paths are resolved relative to `base_dir`.
  inline ChainSystem parse_chain_system(std::string_view             text,
                                        std::filesystem::path const& base_dir = {}) {
    auto lines = detail::split_lines(text);
    if (lines.empty() || detail::trim(lines[0]) != "CUCHAIN v1") {
      throw ParseError(1, 1, "expected 'CUCHAIN v1'");
    }
    std::vector<CarrierPtr>                    stages;
    std::vector<std::vector<detail::MapEntry>> blocks;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      int  lineno = static_cast<int>(i) + 1;
      auto line   = detail::trim(lines[i]);
      if (detail::is_blank_or_comment(line)) {
        continue;
      }
      if (line.rfind("stage", 0) == 0) {
        auto spec = detail::trim(line.substr(5));
        if (spec.empty()) {
          throw ParseError(lineno, 6, "missing stage");
        }
        bool catalog = spec == "nbar" || spec.rfind("chain:", 0) == 0 || spec.rfind("sum:", 0) == 0;
        if (!catalog && !base_dir.empty() && std::filesystem::path(spec).is_relative()) {
          spec = (base_dir / spec).string();
        }
        auto c = instantiate_catalog(spec);
        if (!c->is_finite()) {
          throw ParseError(lineno, 7, "stages must be finite, got " + c->name());
        }
        stages.push_back(c);
      } else if (line == "map") {
        blocks.emplace_back();
      } else {
        if (blocks.empty()) {
          throw ParseError(lineno, 1, "map entry outside a map block");
        }
        blocks.back().push_back(detail::parse_arrow(line, lineno));
      }
    }
    if (stages.empty()) {
      throw ParseError(static_cast<int>(lines.size()), 1, "no stages");
    }
    if (blocks.size() + 1 != stages.size()) {
      throw ParseError(static_cast<int>(lines.size()), 1,
                       std::to_string(stages.size()) + " stages need "
                           + std::to_string(stages.size() - 1) + " map blocks, found "
                           + std::to_string(blocks.size()));
    }
    ChainSystem c;
    for (auto const& s : stages) {
      c.stages.push_back(*s->table());
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      c.maps.push_back(detail::finite_image(blocks[i], *stages[i], *stages[i + 1]));
    }
    return c;
  }

  inline std::string serialize_chain_system(ChainSystem const& c) {
    std::string out = "CUCHAIN v1\n";
    for (auto const& s : c.stages) {
      if (s.size() > 1 && s == saturating_chain(s.size() - 1)) {
        out += "stage chain:" + std::to_string(s.size() - 1) + "\n";
      } else {
        throw PreconditionError("only saturating chains serialize inline");
      }
    }
    for (auto const& m : c.maps) {
      out += "map\n";
      for (std::size_t i = 0; i < m.size(); ++i) {
        out += std::to_string(i) + " -> " + std::to_string(m[i]) + "\n";
      }
    }
    return out;
  }

}  // namespace cusg
