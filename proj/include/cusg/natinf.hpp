#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace cusg {

  // An element of {0, 1, 2, ..., inf}. Addition saturates at inf; the order is
  // the usual one with inf on top.
  class NatInf {
   public:
    using value_type = std::uint64_t;

    constexpr NatInf() noexcept = default;
    constexpr NatInf(value_type v) : _v(v) {  // NOLINT(runtime/explicit)
      if (v == kInf) {
        throw Error("NatInf: finite value out of range");
      }
    }

    static constexpr NatInf infinity() noexcept {
      NatInf r;
      r._v = kInf;
      return r;
    }

    constexpr bool is_infinite() const noexcept {
      return _v == kInf;
    }
    constexpr bool is_finite() const noexcept {
      return _v != kInf;
    }
    constexpr value_type value() const {
      if (is_infinite()) {
        throw Error("NatInf: value() of inf");
      }
      return _v;
    }

    constexpr auto operator<=>(NatInf const&) const noexcept = default;

    friend constexpr NatInf operator+(NatInf a, NatInf b) {
      if (a.is_infinite() || b.is_infinite()) {
        return infinity();
      }
      if (a._v > kInf - 1 - b._v) {
        throw Error("NatInf: addition overflow");
      }
      return NatInf(a._v + b._v);
    }

    friend constexpr NatInf operator*(value_type k, NatInf a) {
      if (k == 0) {
        return NatInf(0);
      }
      if (a.is_infinite()) {
        return infinity();
      }
      if (a._v > (kInf - 1) / k) {
        throw Error("NatInf: multiplication overflow");
      }
      return NatInf(k * a._v);
    }

    std::string str() const {
      return is_infinite() ? std::string("inf") : std::to_string(_v);
    }

    static std::optional<NatInf> parse(std::string_view s) {
      if (s == "inf" || s == "oo" || s == "∞") {
        return infinity();
      }
      value_type v = 0;
      auto const* end = s.data() + s.size();
      auto [p, ec] = std::from_chars(s.data(), end, v);
      if (s.empty() || ec != std::errc() || p != end || v == kInf) {
        return std::nullopt;
      }
      return NatInf(v);
    }

   private:
    static constexpr value_type kInf = std::numeric_limits<value_type>::max();
    value_type _v = 0;
  };

  inline NatInf min(NatInf a, NatInf b) {
    return a < b ? a : b;
  }

  // Elements of every carrier are tuples of coordinates. Finite tables use a
  // single coordinate holding the element index.
  using Element = std::vector<NatInf>;

  inline Element scalar(NatInf v) {
    return Element{v};
  }

  inline std::string format_tuple(Element const& e) {
    if (e.size() == 1) {
      return e[0].str();
    }
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
      out += (i == 0 ? "" : ",") + e[i].str();
    }
    return out + ")";
  }

}  // namespace cusg
