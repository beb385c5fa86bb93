#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carrier.hpp"

namespace cusg {

  // A finite description of an increasing sequence.
  //   constant    terms[0], terms[1], ..., terms.back(), terms.back(), ...
  //   counting    0, 1, 2, ... (nbar only)
  //   arithmetic  base, base+step, base+2*step, ...
  //   truncation  the canonical approximating chain of `target`
  //   componentwise  one descriptor per summand of a direct sum
  struct ChainDescriptor {
    enum class Kind { constant, counting, arithmetic, truncation, componentwise };

    Kind                         kind = Kind::constant;
    std::vector<Element>         terms;
    Element                      base;
    Element                      step;
    Element                      target;
    std::vector<ChainDescriptor> parts;

    static ChainDescriptor eventually_constant(std::vector<Element> terms) {
      ChainDescriptor c;
      c.kind  = Kind::constant;
      c.terms = std::move(terms);
      return c;
    }
    static ChainDescriptor counting() {
      ChainDescriptor c;
      c.kind = Kind::counting;
      return c;
    }
    static ChainDescriptor arithmetic(Element base, Element step) {
      ChainDescriptor c;
      c.kind = Kind::arithmetic;
      c.base = std::move(base);
      c.step = std::move(step);
      return c;
    }
    static ChainDescriptor truncation(Element target) {
      ChainDescriptor c;
      c.kind   = Kind::truncation;
      c.target = std::move(target);
      return c;
    }
    static ChainDescriptor componentwise(ChainDescriptor a, ChainDescriptor b) {
      ChainDescriptor c;
      c.kind  = Kind::componentwise;
      c.parts = {std::move(a), std::move(b)};
      return c;
    }

    std::string describe(Carrier const& s) const {
      switch (kind) {
        case Kind::constant: {
          std::string out = "[";
          for (std::size_t i = 0; i < terms.size(); ++i) {
            out += (i ? "," : "") + s.format(terms[i]);
          }
          return out + ",...]";
        }
        case Kind::counting:
          return "0,1,2,...";
        case Kind::arithmetic:
          return s.format(base) + "+k*" + s.format(step);
        case Kind::truncation:
          return "trunc(" + s.format(target) + ")";
        case Kind::componentwise:
          return "componentwise";
      }
      return "?";
    }
  };

  namespace detail {
    inline SumCarrier const& as_sum(Carrier const& s) {
      auto const* sum = dynamic_cast<SumCarrier const*>(&s);
      if (sum == nullptr) {
        throw ChainError("componentwise chain on a carrier that is not a direct sum");
      }
      return *sum;
    }
  }  // namespace detail

  // Throws ChainError when the descriptor is not increasing or has no
  // supremum form on this carrier.
  inline void validate_chain(Carrier const& s, ChainDescriptor const& c) {
    using K = ChainDescriptor::Kind;
    switch (c.kind) {
      case K::constant:
        if (c.terms.empty()) {
          throw ChainError("empty chain");
        }
        for (auto const& t : c.terms) {
          s.require(t);
        }
        for (std::size_t i = 0; i + 1 < c.terms.size(); ++i) {
          if (!s.leq(c.terms[i], c.terms[i + 1])) {
            throw ChainError("chain is not increasing at position "
                             + std::to_string(i));
          }
        }
        return;
      case K::counting:
        if (s.name() != "nbar") {
          throw ChainError("unbounded chain has no limit form on " + s.name());
        }
        return;
      case K::arithmetic:
        s.require(c.base);
        s.require(c.step);
        return;
      case K::truncation:
        s.require(c.target);
        return;
      case K::componentwise: {
        auto const& sum = detail::as_sum(s);
        if (c.parts.size() != 2) {
          throw ChainError("componentwise chain needs one part per summand");
        }
        validate_chain(*sum.left(), c.parts[0]);
        validate_chain(*sum.right(), c.parts[1]);
        return;
      }
    }
  }

  inline Element chain_term(Carrier const& s, ChainDescriptor const& c, std::uint64_t k) {
    using K = ChainDescriptor::Kind;
    switch (c.kind) {
      case K::constant:
        return c.terms[std::min<std::size_t>(k, c.terms.size() - 1)];
      case K::counting:
        return scalar(NatInf(k));
      case K::arithmetic:
        return s.add(c.base, s.multiple(k, c.step));
      case K::truncation:
        return s.truncate(c.target, k);
      case K::componentwise: {
        auto const& sum = detail::as_sum(s);
        return SumCarrier::join(chain_term(*sum.left(), c.parts[0], k),
                                chain_term(*sum.right(), c.parts[1], k));
      }
    }
    throw ChainError("unknown chain kind");
  }

  inline Element sup_chain(Carrier const& s, ChainDescriptor const& c) {
    validate_chain(s, c);
    using K = ChainDescriptor::Kind;
    switch (c.kind) {
      case K::constant:
        return c.terms.back();
      case K::counting:
        return scalar(NatInf::infinity());
      case K::arithmetic:
        return s.add(c.base, s.infinite_multiple(c.step));
      case K::truncation:
        return c.target;
      case K::componentwise: {
        auto const& sum = detail::as_sum(s);
        return SumCarrier::join(sup_chain(*sum.left(), c.parts[0]),
                                sup_chain(*sum.right(), c.parts[1]));
      }
    }
    throw ChainError("unknown chain kind");
  }

  // The chain the library uses whenever it must pick a way-below increasing
  // sequence with a given supremum.
  inline ChainDescriptor canonical_chain(Carrier const& s, Element const& x) {
    s.require(x);
    if (s.name() == "nbar" && x[0].is_infinite()) {
      return ChainDescriptor::counting();
    }
    return ChainDescriptor::truncation(x);
  }

}  // namespace cusg
