#pragma once

// Brute-force reference implementations used only by the tests. None of
// them call into the library; they work on plain integer vectors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Blocks = std::vector<std::vector<Vec>>;

inline Vec sub(const Vec& a, const Vec& b, const Vec& moduli) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ((a[i] - b[i]) % moduli[i] + moduli[i]) % moduli[i];
  return out;
}

inline Vec neg(const Vec& a, const Vec& moduli) { return sub(Vec(a.size(), 0), a, moduli); }

// Number of ordered pairs inside a common block with difference d, for every d != 0.
inline std::map<Vec, std::int64_t> differences(const Vec& moduli, const Blocks& blocks) {
  std::map<Vec, std::int64_t> out;
  std::vector<Vec> all{Vec(moduli.size(), 0)};
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::vector<Vec> next;
    for (const auto& v : all) {
      for (std::int64_t x = 0; x < moduli[i]; ++x) {
        auto w = v;
        w[i] = x;
        next.push_back(w);
      }
    }
    all = std::move(next);
  }
  for (const auto& v : all) {
    if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; })) out[v] = 0;
  }
  for (const auto& b : blocks) {
    for (const auto& x : b) {
      for (const auto& y : b) {
        if (x != y) ++out[sub(x, y, moduli)];
      }
    }
  }
  return out;
}

// (lambda, mu) if the blocks form a DDF relative to `forbidden`, else nothing.
struct DdfParams {
  bool ok = false;
  std::int64_t lambda = -1;  // -1 when N \ {0} is empty
  std::int64_t mu = -1;      // -1 when G \ N is empty
};

inline DdfParams ddf_params(const Vec& moduli, const std::vector<Vec>& forbidden, const Blocks& blocks) {
  const std::set<Vec> n(forbidden.begin(), forbidden.end());
  std::set<std::int64_t> inside, outside;
  for (const auto& [d, c] : differences(moduli, blocks)) (n.count(d) ? inside : outside).insert(c);
  DdfParams p;
  p.ok = inside.size() <= 1 && outside.size() <= 1;
  if (!inside.empty()) p.lambda = *inside.begin();
  if (!outside.empty()) p.mu = *outside.begin();
  return p;
}

inline std::vector<Vec> cyclic_set(std::initializer_list<std::int64_t> xs) {
  std::vector<Vec> out;
  for (auto x : xs) out.push_back({x});
  return out;
}

// Polynomials with integer coefficients mod `mod`, reduced by a monic modulus.
inline std::vector<std::int64_t> poly_mulmod(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                             const std::vector<std::int64_t>& modulus, std::int64_t mod) {
  const std::size_t n = modulus.size() - 1;
  std::vector<std::int64_t> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % mod;
  }
  for (std::size_t k = prod.size(); k-- > n;) {
    const std::int64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[k - n + i] = ((prod[k - n + i] - c * modulus[i]) % mod + mod) % mod;
  }
  prod.resize(n, 0);
  return prod;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Rows of a +-1 matrix; true iff M M^T = n I by plain integer sums.
inline bool hadamard(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += m[i][k] * m[j][k];
      if (s != (i == j ? static_cast<std::int64_t>(n) : 0)) return false;
    }
  }
  return true;
}

// Same-group pairs lambda times, cross-group pairs mu times.
inline bool gdd(std::size_t points, const std::vector<std::vector<std::uint32_t>>& blocks,
                const std::vector<std::uint32_t>& group_of, std::int64_t lambda, std::int64_t mu) {
  std::vector<std::int64_t> count(points * points, 0);
  for (const auto& b : blocks) {
    for (auto x : b) {
      for (auto y : b) {
        if (x != y) ++count[x * points + y];
      }
    }
  }
  for (std::size_t x = 0; x < points; ++x) {
    for (std::size_t y = 0; y < points; ++y) {
      if (x == y) continue;
      if (count[x * points + y] != (group_of[x] == group_of[y] ? lambda : mu)) return false;
    }
  }
  return true;
}

// Every ordered pair (D1, D2) of m(m-2)/4-subsets meeting the symmetric-array
// conditions: DDF with (m(m-4)/4, m(m-3)/4), D1 = -D1, no element of N, m/4
// elements in every other coset. Brute force over all pairs of subsets.
inline std::set<std::pair<std::vector<Vec>, std::vector<Vec>>> naive_symmetric_pairs(const Vec& moduli,
                                                                                    const std::vector<Vec>& forbidden,
                                                                                    std::int64_t m) {
  std::vector<Vec> all{Vec(moduli.size(), 0)};
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::vector<Vec> next;
    for (const auto& v : all) {
      for (std::int64_t x = 0; x < moduli[i]; ++x) {
        auto w = v;
        w[i] = x;
        next.push_back(w);
      }
    }
    all = std::move(next);
  }
  const std::set<Vec> n(forbidden.begin(), forbidden.end());
  auto coset_of = [&](const Vec& x) {
    Vec least = x;
    for (const auto& y : forbidden) {
      Vec s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = (x[i] + y[i]) % moduli[i];
      least = std::min(least, s);
    }
    return least;
  };
  auto coset_ok = [&](const std::vector<Vec>& d) {
    std::map<Vec, std::int64_t> per;
    for (const auto& x : all) {
      if (!n.count(x)) per[coset_of(x)] = 0;
    }
    for (const auto& x : d) {
      if (n.count(x)) return false;
      ++per[coset_of(x)];
    }
    for (const auto& [c, k] : per) {
      if (k != m / 4) return false;
    }
    return true;
  };
  const auto k = static_cast<std::size_t>(m * (m - 2) / 4);
  std::vector<std::vector<Vec>> subsets;
  std::vector<Vec> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      if (coset_ok(cur)) subsets.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      cur.push_back(all[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::set<std::pair<std::vector<Vec>, std::vector<Vec>>> out;
  for (const auto& d1 : subsets) {
    std::set<Vec> negs;
    for (const auto& x : d1) negs.insert(neg(x, moduli));
    if (negs != std::set<Vec>(d1.begin(), d1.end())) continue;
    for (const auto& d2 : subsets) {
      const auto p = ddf_params(moduli, forbidden, {d1, d2});
      if (p.ok && p.lambda == m * (m - 4) / 4 && p.mu == m * (m - 3) / 4) out.insert({d1, d2});
    }
  }
  return out;
}

}  // namespace oracle
