#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "table.hpp"

namespace cusg {

  // Commutative monoids on {0, ..., n-1} with identity 0 and no nonzero
  // element summing to 0 (a compatible order with 0 least forces this).
  // Returned as full addition tables.
  inline std::vector<std::vector<std::vector<int>>> enumerate_conical_monoids(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    if (n < 1 || n > 6) {
      throw PreconditionError("monoid enumeration supports 1 <= n <= 6");
    }
    std::vector<std::vector<int>> add(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
      add[0][i] = add[i][0] = i;
    }
    std::vector<std::pair<int, int>> cells;
    for (int i = 1; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        cells.emplace_back(i, j);
      }
    }
    // associativity on every triple whose entries are all known
    auto consistent = [&]() {
      for (int a = 1; a < n; ++a) {
        for (int b = 1; b < n; ++b) {
          int ab = add[a][b];
          if (ab < 0) {
            continue;
          }
          for (int c = 1; c < n; ++c) {
            int bc = add[b][c];
            if (bc < 0) {
              continue;
            }
            int l = add[ab][c];
            int r = add[a][bc];
            if (l >= 0 && r >= 0 && l != r) {
              return false;
            }
          }
        }
      }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == cells.size()) {
        out.push_back(add);
        return;
      }
      auto [i, j] = cells[k];
      for (int v = 1; v < n; ++v) {
        add[i][j] = add[j][i] = v;
        if (consistent()) {
          self(self, k + 1);
        }
      }
      add[i][j] = add[j][i] = -1;
    };
    rec(rec, 0);
    return out;
  }

  // Partial orders on {0, ..., n-1} with 0 least.
  inline std::vector<std::vector<std::vector<bool>>> enumerate_pointed_orders(int n) {
    std::vector<std::vector<std::vector<bool>>> out;
    std::vector<std::pair<int, int>>            pairs;
    for (int i = 1; i < n; ++i) {
      for (int j = 1; j < n; ++j) {
        if (i != j) {
          pairs.emplace_back(i, j);
        }
      }
    }
    if (pairs.size() > 20) {
      throw PreconditionError("order enumeration supports n <= 5");
    }
    for (std::uint32_t m = 0; m < (1u << pairs.size()); ++m) {
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (int i = 0; i < n; ++i) {
        leq[i][i] = true;
        leq[0][i] = true;
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (m >> p & 1u) {
          leq[pairs[p].first][pairs[p].second] = true;
        }
      }
      bool ok = true;
      for (int a = 1; a < n && ok; ++a) {
        for (int b = 1; b < n && ok; ++b) {
          if (a != b && leq[a][b] && leq[b][a]) {
            ok = false;
          }
          for (int c = 1; c < n && ok; ++c) {
            if (leq[a][b] && leq[b][c] && !leq[a][c]) {
              ok = false;
            }
          }
        }
      }
      if (ok) {
        out.push_back(leq);
      }
    }
    return out;
  }

  inline bool order_compatible(std::vector<std::vector<int>> const&  add,
                               std::vector<std::vector<bool>> const& leq) {
    int n = static_cast<int>(add.size());
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (!leq[a][b]) {
          continue;
        }
        for (int c = 0; c < n; ++c) {
          if (!leq[add[a][c]][add[b][c]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // A string that two tables share iff they are isomorphic (minimum over
  // relabelings fixing 0).
  inline std::string canonical_key(FiniteCuTable const& t) {
    int              n = t.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      std::vector<int> inv(n);
      for (int i = 0; i < n; ++i) {
        inv[perm[i]] = i;
      }
      std::string key;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          key += static_cast<char>('0' + inv[t.add(perm[i], perm[j])]);
          key += t.leq(perm[i], perm[j]) ? '1' : '0';
        }
      }
      if (best.empty() || key < best) {
        best = key;
      }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
  }

  // Every valid table with exactly n elements. With `up_to_iso`, one
  // representative per isomorphism class.
  inline std::vector<FiniteCuTable> enumerate_tables(int n, bool up_to_iso = true) {
    std::vector<FiniteCuTable> out;
    std::map<std::string, int> seen;
    auto                       orders = enumerate_pointed_orders(n);
    for (auto const& add : enumerate_conical_monoids(n)) {
      for (auto const& leq : orders) {
        if (!order_compatible(add, leq)) {
          continue;
        }
        FiniteCuTable t(add, leq);
        if (up_to_iso && !seen.emplace(canonical_key(t), 0).second) {
          continue;
        }
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  // `count` tables drawn from the valid tables on min_n..max_n elements:
  // a random conical monoid and a random pointed order, kept when
  // compatible. Reproducible for a fixed seed.
  inline std::vector<FiniteCuTable> random_tables(int           count,
                                                  int           min_n,
                                                  int           max_n,
                                                  std::uint32_t seed) {
    std::vector<std::vector<std::vector<std::vector<int>>>>  monoids(max_n + 1);
    std::vector<std::vector<std::vector<std::vector<bool>>>> orders(max_n + 1);
    for (int n = min_n; n <= max_n; ++n) {
      monoids[n] = enumerate_conical_monoids(n);
      orders[n]  = enumerate_pointed_orders(n);
    }
    std::mt19937               rng(seed);
    std::vector<FiniteCuTable> out;
    while (static_cast<int>(out.size()) < count) {
      int         n   = min_n + static_cast<int>(rng() % static_cast<unsigned>(max_n - min_n + 1));
      auto const& add = monoids[n][rng() % monoids[n].size()];
      // orders containing the algebraic preorder are the only candidates
      std::vector<std::size_t> fit;
      for (std::size_t i = 0; i < orders[n].size(); ++i) {
        if (order_compatible(add, orders[n][i])) {
          fit.push_back(i);
        }
      }
      if (fit.empty()) {
        continue;
      }
      out.emplace_back(add, orders[n][fit[rng() % fit.size()]]);
    }
    return out;
  }

  struct SuiteTable {
    std::string   name;
    FiniteCuTable table;
  };

  // Tables on which the theorem checks run: every isomorphism class with at
  // most 3 elements, the chains C_1..C_4, small direct sums, and a
  // reproducible random sample with 4 or 5 elements.
  inline std::vector<SuiteTable> suite(int random_count = 40, std::uint32_t seed = 7) {
    std::vector<SuiteTable> out;
    std::map<std::string, int> seen;
    auto add = [&](std::string name, FiniteCuTable t) {
      if (seen.emplace(canonical_key(t), 0).second) {
        out.push_back({std::move(name), std::move(t)});
      }
    };
    for (int n = 1; n <= 3; ++n) {
      int i = 0;
      for (auto& t : enumerate_tables(n)) {
        add("iso" + std::to_string(n) + "-" + std::to_string(i++), std::move(t));
      }
    }
    for (int m = 1; m <= 4; ++m) {
      add("C" + std::to_string(m), saturating_chain(m));
    }
    add("C1+C1", direct_sum(saturating_chain(1), saturating_chain(1)));
    add("C1+C2", direct_sum(saturating_chain(1), saturating_chain(2)));
    int i = 0;
    for (auto& t : random_tables(random_count, 4, 5, seed)) {
      add("random-" + std::to_string(i++), std::move(t));
    }
    return out;
  }

}  // namespace cusg
