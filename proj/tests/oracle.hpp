#pragma once

// Brute-force reference implementations used to derive expected values.
// They work on plain add/leq arrays and quantify over every tuple, so they
// share no code with the library beyond the table accessors.

#include <functional>
#include <optional>
#include <vector>

#include <cusg/table.hpp>

namespace oracle {

  struct Raw {
    int                            n;
    std::vector<std::vector<int>>  add;
    std::vector<std::vector<bool>> leq;
  };

  inline Raw raw(cusg::FiniteCuTable const& t) {
    Raw r{t.size(), {}, {}};
    r.add.assign(r.n, std::vector<int>(r.n));
    r.leq.assign(r.n, std::vector<bool>(r.n));
    for (int a = 0; a < r.n; ++a) {
      for (int b = 0; b < r.n; ++b) {
        r.add[a][b] = t.add(a, b);
        r.leq[a][b] = t.leq(a, b);
      }
    }
    return r;
  }

  // In a finite poset every increasing sequence is eventually constant, so
  // x << y means: every increasing sequence with supremum >= y has a term
  // >= x. Checked over all increasing sequences of length <= n.
  inline bool waybelow_by_sequences(Raw const& r, int x, int y) {
    bool ok = true;
    std::vector<int> seq;
    std::function<void()> rec = [&] {
      if (!ok) {
        return;
      }
      if (!seq.empty() && r.leq[y][seq.back()]) {
        bool dominated = false;
        for (int s : seq) {
          dominated = dominated || r.leq[x][s];
        }
        if (!dominated) {
          ok = false;
        }
      }
      if (static_cast<int>(seq.size()) == r.n) {
        return;
      }
      for (int c = 0; c < r.n; ++c) {
        if (seq.empty() || r.leq[seq.back()][c]) {
          seq.push_back(c);
          rec();
          seq.pop_back();
        }
      }
    };
    rec();
    return ok;
  }

  inline bool pom_laws(Raw const& r) {
    for (int a = 0; a < r.n; ++a) {
      if (r.add[0][a] != a || !r.leq[0][a] || !r.leq[a][a]) {
        return false;
      }
      for (int b = 0; b < r.n; ++b) {
        if (r.add[a][b] != r.add[b][a]) {
          return false;
        }
        if (a != b && r.leq[a][b] && r.leq[b][a]) {
          return false;
        }
        for (int c = 0; c < r.n; ++c) {
          if (r.add[r.add[a][b]][c] != r.add[a][r.add[b][c]]) {
            return false;
          }
          if (r.leq[a][b] && r.leq[b][c] && !r.leq[a][c]) {
            return false;
          }
          if (r.leq[a][b] && !r.leq[r.add[a][c]][r.add[b][c]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // On finite tables << coincides with <=, which the tests confirm with
  // waybelow_by_sequences; the axioms below use <= for <<.

  inline bool o5(Raw const& r) {
    for (int x = 0; x < r.n; ++x)
      for (int y = 0; y < r.n; ++y)
        for (int z = 0; z < r.n; ++z) {
          if (!r.leq[r.add[x][y]][z]) continue;
          for (int xp = 0; xp < r.n; ++xp) {
            if (!r.leq[xp][x]) continue;
            for (int yp = 0; yp < r.n; ++yp) {
              if (!r.leq[yp][y]) continue;
              bool found = false;
              for (int c = 0; c < r.n && !found; ++c) {
                found = r.leq[r.add[xp][c]][z] && r.leq[z][r.add[x][c]] && r.leq[yp][c];
              }
              if (!found) return false;
            }
          }
        }
    return true;
  }

  inline bool o6(Raw const& r) {
    for (int x = 0; x < r.n; ++x)
      for (int y = 0; y < r.n; ++y)
        for (int z = 0; z < r.n; ++z) {
          if (!r.leq[x][r.add[y][z]]) continue;
          for (int xp = 0; xp < r.n; ++xp) {
            if (!r.leq[xp][x]) continue;
            bool found = false;
            for (int v = 0; v < r.n && !found; ++v) {
              if (!r.leq[v][x] || !r.leq[v][y]) continue;
              for (int w = 0; w < r.n && !found; ++w) {
                found = r.leq[w][x] && r.leq[w][z] && r.leq[xp][r.add[v][w]];
              }
            }
            if (!found) return false;
          }
        }
    return true;
  }

  inline bool o7(Raw const& r) {
    for (int w = 0; w < r.n; ++w)
      for (int x1 = 0; x1 < r.n; ++x1) {
        if (!r.leq[x1][w]) continue;
        for (int x2 = 0; x2 < r.n; ++x2) {
          if (!r.leq[x2][w]) continue;
          for (int p1 = 0; p1 < r.n; ++p1) {
            if (!r.leq[p1][x1]) continue;
            for (int p2 = 0; p2 < r.n; ++p2) {
              if (!r.leq[p2][x2]) continue;
              bool found = false;
              for (int x = 0; x < r.n && !found; ++x) {
                found = r.leq[p1][x] && r.leq[p2][x] && r.leq[x][w] && r.leq[x][r.add[x1][x2]];
              }
              if (!found) return false;
            }
          }
        }
      }
    return true;
  }

  inline bool weakly_cancellative(Raw const& r) {
    for (int x = 0; x < r.n; ++x)
      for (int y = 0; y < r.n; ++y)
        for (int z = 0; z < r.n; ++z)
          if (r.leq[r.add[x][z]][r.add[y][z]] && !r.leq[x][y]) return false;
    return true;
  }

  inline int infinite_multiple(Raw const& r, int y) {
    int m = y;
    for (int k = 0; k <= r.n; ++k) {
      m = r.add[m][y];
    }
    return m;
  }

  inline bool simple(Raw const& r) {
    for (int x = 0; x < r.n; ++x)
      for (int y = 1; y < r.n; ++y)
        if (!r.leq[x][infinite_multiple(r, y)]) return false;
    return true;
  }

  inline bool riesz(Raw const& r) {
    for (int a = 0; a < r.n; ++a)
      for (int b = 0; b < r.n; ++b)
        for (int c = 0; c < r.n; ++c)
          for (int d = 0; d < r.n; ++d) {
            if (!(r.leq[a][c] && r.leq[a][d] && r.leq[b][c] && r.leq[b][d])) continue;
            bool found = false;
            for (int z = 0; z < r.n && !found; ++z) {
              found = r.leq[a][z] && r.leq[b][z] && r.leq[z][c] && r.leq[z][d];
            }
            if (!found) return false;
          }
    return true;
  }

  // dim <= n against every instance x' <= x <= y_1 + ... + y_r with r <= max_r.
  // The refinement z[j][k] <= y_j only matters through the column sums
  // s_k = z[1][k] + ... + z[r][k], which must lie below x; x' must lie below
  // s_0 + ... + s_n.
  inline bool dim_at_most(Raw const& r, int n, int max_r) {
    std::vector<int> ys;
    std::function<bool()> instances = [&]() -> bool {
      if (!ys.empty()) {
        int sum = 0;
        for (int y : ys) sum = r.add[sum][y];
        for (int x = 0; x < r.n; ++x) {
          if (!r.leq[x][sum]) continue;
          // column sums below x
          std::vector<bool> cols(r.n, false);
          std::function<void(std::size_t, int)> col = [&](std::size_t j, int acc) {
            if (!r.leq[acc][x]) return;  // partial sums only grow
            if (j == ys.size()) {
              cols[acc] = true;
              return;
            }
            for (int z = 0; z < r.n; ++z) {
              if (r.leq[z][ys[j]]) col(j + 1, r.add[acc][z]);
            }
          };
          col(0, 0);
          // sums of n+1 columns
          std::vector<bool> reach(r.n, false);
          reach[0] = true;
          for (int k = 0; k <= n; ++k) {
            std::vector<bool> next(r.n, false);
            for (int a = 0; a < r.n; ++a)
              if (reach[a])
                for (int c = 0; c < r.n; ++c)
                  if (cols[c]) next[r.add[a][c]] = true;
            reach = next;
          }
          for (int xp = 0; xp < r.n; ++xp) {
            if (!r.leq[xp][x]) continue;
            bool found = false;
            for (int s = 0; s < r.n && !found; ++s) {
              found = reach[s] && r.leq[xp][s];
            }
            if (!found) return false;
          }
        }
      }
      if (static_cast<int>(ys.size()) == max_r) return true;
      int from = ys.empty() ? 0 : ys.back();  // multisets
      for (int y = from; y < r.n; ++y) {
        ys.push_back(y);
        bool ok = instances();
        ys.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    return instances();
  }

  // Least n <= max_n with dim <= n against widths up to max_r; nullopt when
  // none.
  inline std::optional<int> dim(Raw const& r, int max_n, int max_r) {
    for (int n = 0; n <= max_n; ++n) {
      if (dim_at_most(r, n, max_r)) return n;
    }
    return std::nullopt;
  }

  inline bool is_submonoid(Raw const& r, std::uint64_t m) {
    if (!(m & 1u)) return false;
    for (int a = 0; a < r.n; ++a)
      for (int b = 0; b < r.n; ++b)
        if ((m >> a & 1u) && (m >> b & 1u) && !(m >> r.add[a][b] & 1u)) return false;
    return true;
  }

  // Every submonoid of a finite table, as bitmasks in increasing order.
  inline std::vector<std::uint64_t> submonoids(Raw const& r) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << r.n); ++m) {
      if (is_submonoid(r, m)) out.push_back(m);
    }
    return out;
  }

}  // namespace oracle
