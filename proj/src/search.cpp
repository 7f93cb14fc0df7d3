#include "designforge/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "designforge/error.hpp"
#include "designforge/hadamard.hpp"

namespace designforge {

std::optional<std::string> spec_infeasibility(const SearchSpec& spec) {
  const std::size_t m = spec.m;
  if (!(spec.n.parent() == spec.group)) return "N is not a subgroup of the search group";
  if (m < 4) return "m = " + std::to_string(m) + " is too small (need m >= 4)";
  if (m % 4 != 0) {
    std::string which;
    auto check = [&](std::size_t num, const char* name) {
      if (num % 4 != 0) which += std::string(which.empty() ? "" : ", ") + name + " = " + std::to_string(num) + "/4";
    };
    check(m * (m - 2), "m(m-2)/4");
    check(m * (m - 4), "m(m-4)/4");
    check(m * (m - 3), "m(m-3)/4");
    check(m, "m/4");
    return "m = " + std::to_string(m) + " is not a multiple of 4: " + which + " not integral";
  }
  if (spec.group.order() != m * (m - 1) / 2) {
    return "|G| = " + std::to_string(spec.group.order()) + " but m(m-1)/2 = " + std::to_string(m * (m - 1) / 2);
  }
  if (spec.n.order() * 2 != m) return "|N| = " + std::to_string(spec.n.order()) + " but m/2 = " + std::to_string(m / 2);
  return std::nullopt;
}

namespace {

using Index = std::uint64_t;
using Set = std::vector<Index>;

struct Problem {
  const FiniteAbelianGroup& g;
  const Subgroup& n;
  std::size_t m;
  std::size_t quarter;
  std::vector<std::vector<Index>> cosets;      // cosets outside N, members as indices
  std::vector<std::size_t> neg_coset;          // index into cosets
  std::vector<std::int64_t> target;            // by difference index
  std::vector<std::vector<Set>> subsets;       // m/4-subsets per coset

  Problem(const SearchSpec& spec) : g(spec.group), n(spec.n), m(spec.m), quarter(spec.m / 4) {
    const auto mi = static_cast<std::int64_t>(m);
    for (const auto& c : designforge::cosets(g, n)) {
      if (n.contains(c.representative)) continue;
      Set members;
      for (const auto& x : c.members) members.push_back(g.index_of(x));
      cosets.push_back(std::move(members));
    }
    neg_coset.resize(cosets.size());
    for (std::size_t c = 0; c < cosets.size(); ++c) {
      const Index neg = g.neg_index(cosets[c][0]);
      for (std::size_t d = 0; d < cosets.size(); ++d) {
        if (std::binary_search(cosets[d].begin(), cosets[d].end(), neg)) neg_coset[c] = d;
      }
    }
    target.resize(g.order());
    for (Index d = 1; d < g.order(); ++d) target[d] = n.contains_index(d) ? mi * (mi - 4) / 4 : mi * (mi - 3) / 4;
    for (const auto& c : cosets) {
      std::vector<Set> out;
      Set cur;
      std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == quarter) {
          out.push_back(cur);
          return;
        }
        for (std::size_t i = start; i < c.size(); ++i) {
          cur.push_back(c[i]);
          rec(i + 1);
          cur.pop_back();
        }
      };
      rec(0);
      subsets.push_back(std::move(out));
    }
  }

  std::vector<std::int64_t> theta_of(const Set& s) const {
    std::vector<std::int64_t> t(g.order(), 0);
    for (const auto x : s) {
      for (const auto y : s) {
        if (x != y) ++t[g.sub_index(x, y)];
      }
    }
    return t;
  }

  DifferenceFamily family(const Set& d1, const Set& d2, nlohmann::json provenance) const {
    auto block = [&](const Set& s) {
      std::vector<GroupElement> e;
      for (const auto x : s) e.push_back(g.element_at(x));
      return Block::make(g, std::move(e));
    };
    const auto mi = static_cast<std::int64_t>(m);
    const auto k = static_cast<std::size_t>(mi * (mi - 2) / 4);
    return DifferenceFamily(g, n, {block(d1), block(d2)}, {mi * (mi - 4) / 4, mi * (mi - 3) / 4, {k, k}},
                            std::move(provenance));
  }

  // Symmetric D1 candidates, in a fixed order.
  void for_each_d1(const std::function<bool(const Set&)>& visit) const {
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < cosets.size(); ++c) {
      if (neg_coset[c] >= c) order.push_back(c);
    }
    Set cur;
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
      if (pos == order.size()) {
        Set sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        return visit(sorted);
      }
      const std::size_t c = order[pos];
      const std::size_t nc = neg_coset[c];
      for (const auto& s : subsets[c]) {
        if (nc == c) {
          bool closed = true;
          for (const auto x : s) closed = closed && std::binary_search(s.begin(), s.end(), g.neg_index(x));
          if (!closed) continue;
          cur.insert(cur.end(), s.begin(), s.end());
          const bool go = rec(pos + 1);
          cur.resize(cur.size() - s.size());
          if (!go) return false;
        } else {
          cur.insert(cur.end(), s.begin(), s.end());
          for (const auto x : s) cur.push_back(g.neg_index(x));
          const bool go = rec(pos + 1);
          cur.resize(cur.size() - 2 * s.size());
          if (!go) return false;
        }
      }
      return true;
    };
    rec(0);
  }
};

struct D2Outcome {
  std::vector<std::pair<Set, std::uint64_t>> solutions;  // D2, local node count when found
  std::uint64_t nodes = 0;
  bool cut = false;
};

// All compatible D2 for a fixed D1, coset by coset with pruning on partial counts.
D2Outcome search_d2(const Problem& p, const Set& d1, std::uint64_t node_limit, std::size_t solution_limit) {
  D2Outcome out;
  auto residual = p.theta_of(d1);
  for (Index d = 1; d < residual.size(); ++d) {
    residual[d] = p.target[d] - residual[d];
    if (residual[d] < 0) return out;
  }
  std::vector<std::int64_t> count(residual.size(), 0);
  Set cur;
  std::vector<Index> touched;
  std::function<bool(std::size_t)> rec = [&](std::size_t c) -> bool {
    if (c == p.cosets.size()) {
      for (Index d = 1; d < residual.size(); ++d) {
        if (count[d] != residual[d]) return true;
      }
      Set sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.solutions.emplace_back(std::move(sorted), out.nodes);
      return solution_limit == 0 || out.solutions.size() < solution_limit;
    }
    for (const auto& s : p.subsets[c]) {
      if (node_limit != 0 && out.nodes >= node_limit) {
        out.cut = true;
        return false;
      }
      ++out.nodes;
      const std::size_t mark = touched.size();
      bool ok = true;
      const std::size_t base = cur.size();
      for (const auto x : s) {
        for (std::size_t i = 0; i < cur.size() && ok; ++i) {
          for (const Index d : {p.g.sub_index(x, cur[i]), p.g.sub_index(cur[i], x)}) {
            touched.push_back(d);
            if (++count[d] > residual[d]) ok = false;
          }
        }
        cur.push_back(x);
        if (!ok) break;
      }
      const bool go = ok ? rec(c + 1) : true;
      while (touched.size() > mark) {
        --count[touched.back()];
        touched.pop_back();
      }
      cur.resize(base);
      if (!go) return false;
    }
    return true;
  };
  rec(0);
  return out;
}

nlohmann::json search_provenance(const SearchSpec& spec) {
  return {{"construction", "search"},
          {"mode", spec.mode == SearchMode::exhaustive ? "exhaustive" : "randomized"},
          {"seed", spec.seed},
          {"m", spec.m}};
}

void exhaustive(const SearchSpec& spec, const Problem& p, SearchResult& result) {
  const auto prov = search_provenance(spec);
  const bool parallel = spec.threads > 1 && spec.max_nodes == 0 && spec.max_solutions == 0;
  if (parallel) {
    std::vector<Set> d1s;
    p.for_each_d1([&](const Set& s) {
      d1s.push_back(s);
      return true;
    });
    std::vector<D2Outcome> outcomes(d1s.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < spec.threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < d1s.size(); i = next++) outcomes[i] = search_d2(p, d1s[i], 0, 0);
      });
    }
    for (auto& w : workers) w.join();
    for (std::size_t i = 0; i < d1s.size(); ++i) {
      result.nodes += 1;
      for (const auto& [d2, local] : outcomes[i].solutions) {
        result.certificates.push_back({p.family(d1s[i], d2, prov), spec.seed, result.nodes + local});
      }
      result.nodes += outcomes[i].nodes;
    }
    result.complete = true;
    return;
  }
  bool cut = false;
  p.for_each_d1([&](const Set& d1) {
    if (spec.max_nodes != 0 && result.nodes >= spec.max_nodes) {
      cut = true;
      return false;
    }
    result.nodes += 1;
    const std::uint64_t remaining = spec.max_nodes == 0 ? 0 : spec.max_nodes - result.nodes;
    const std::size_t sol_left = spec.max_solutions == 0 ? 0 : spec.max_solutions - result.certificates.size();
    if (spec.max_nodes != 0 && remaining == 0) {
      cut = true;
      return false;
    }
    auto outcome = search_d2(p, d1, remaining, sol_left);
    for (const auto& [d2, local] : outcome.solutions) {
      result.certificates.push_back({p.family(d1, d2, prov), spec.seed, result.nodes + local});
    }
    result.nodes += outcome.nodes;
    if (outcome.cut) {
      cut = true;
      return false;
    }
    if (spec.max_solutions != 0 && result.certificates.size() >= spec.max_solutions) {
      cut = true;
      return false;
    }
    return true;
  });
  result.complete = !cut;
}

void randomized(const SearchSpec& spec, const Problem& p, SearchResult& result) {
  const auto prov = search_provenance(spec);
  std::mt19937_64 rng(spec.seed);
  const std::size_t nc = p.cosets.size();
  const std::size_t wanted = spec.max_solutions == 0 ? 1 : spec.max_solutions;
  std::set<std::pair<Set, Set>> seen;

  // Negation orbits inside self-paired cosets.
  std::vector<std::vector<Set>> orbits(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    if (p.neg_coset[c] != c) continue;
    for (const auto x : p.cosets[c]) {
      const Index y = p.g.neg_index(x);
      if (x <= y) orbits[c].push_back(x == y ? Set{x} : Set{x, y});
    }
  }
  auto cost_of = [&](const Set& d1, const Set& d2) {
    auto t1 = p.theta_of(d1);
    const auto t2 = p.theta_of(d2);
    std::int64_t cost = 0;
    for (Index d = 1; d < t1.size(); ++d) {
      const auto dev = t1[d] + t2[d] - p.target[d];
      cost += dev * dev;
    }
    return cost;
  };
  auto pick = [&](const Set& s) { return s[uniform_below(rng, s.size())]; };
  auto random_subset = [&](const Set& c, std::size_t size) {
    Set pool = c, out;
    for (std::size_t i = 0; i < size; ++i) {
      const auto j = uniform_below(rng, pool.size());
      out.push_back(pool[j]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return out;
  };

  // Per-coset parts; self-paired cosets of D1 are chosen as unions of orbits.
  auto random_d1_part = [&](std::size_t c) -> std::optional<Set> {
    if (p.neg_coset[c] != c) return random_subset(p.cosets[c], p.quarter);
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Set> pool = orbits[c];
      Set out;
      while (out.size() < p.quarter && !pool.empty()) {
        const auto j = uniform_below(rng, pool.size());
        if (out.size() + pool[j].size() <= p.quarter) out.insert(out.end(), pool[j].begin(), pool[j].end());
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
      }
      if (out.size() == p.quarter) return out;
    }
    return std::nullopt;
  };
  auto assemble = [&](const std::vector<Set>& d1parts, const std::vector<Set>& d2parts) {
    Set d1, d2;
    for (std::size_t c = 0; c < nc; ++c) {
      d1.insert(d1.end(), d1parts[c].begin(), d1parts[c].end());
      d2.insert(d2.end(), d2parts[c].begin(), d2parts[c].end());
    }
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    return std::make_pair(d1, d2);
  };

  for (std::uint64_t restart = 0; restart < spec.restarts && result.certificates.size() < wanted; ++restart) {
    std::vector<Set> d1parts(nc), d2parts(nc);
    bool feasible = true;
    for (std::size_t c = 0; c < nc; ++c) {
      if (p.neg_coset[c] < c) continue;
      auto part = random_d1_part(c);
      if (!part) {
        feasible = false;
        break;
      }
      d1parts[c] = *part;
      if (p.neg_coset[c] != c) {
        Set neg;
        for (const auto x : *part) neg.push_back(p.g.neg_index(x));
        d1parts[p.neg_coset[c]] = neg;
      }
    }
    if (!feasible) throw DesignError("no negation-closed m/4-subset exists in some self-paired coset");
    for (std::size_t c = 0; c < nc; ++c) d2parts[c] = random_subset(p.cosets[c], p.quarter);
    auto [d1, d2] = assemble(d1parts, d2parts);
    std::int64_t cost = cost_of(d1, d2);

    for (std::uint64_t step = 0; step < spec.steps; ++step) {
      if (spec.max_nodes != 0 && result.nodes >= spec.max_nodes) return;
      ++result.nodes;
      if (cost == 0) {
        if (seen.emplace(d1, d2).second) {
          result.certificates.push_back({p.family(d1, d2, prov), spec.seed, result.nodes});
        }
        break;
      }
      auto n1 = d1parts;
      auto n2 = d2parts;
      const std::size_t c = uniform_below(rng, nc);
      auto outside = [&](const Set& part) {
        Set out;
        for (const auto x : p.cosets[c]) {
          if (std::find(part.begin(), part.end(), x) == part.end()) out.push_back(x);
        }
        return out;
      };
      if (uniform_below(rng, 2) == 0) {
        const Index x = pick(n2[c]);
        const Index y = pick(outside(n2[c]));
        std::replace(n2[c].begin(), n2[c].end(), x, y);
      } else if (p.neg_coset[c] != c) {
        const Index x = pick(n1[c]);
        const Index y = pick(outside(n1[c]));
        std::replace(n1[c].begin(), n1[c].end(), x, y);
        auto& other = n1[p.neg_coset[c]];
        std::replace(other.begin(), other.end(), p.g.neg_index(x), p.g.neg_index(y));
      } else {
        auto part = random_d1_part(c);
        if (!part) continue;
        n1[c] = *part;
      }
      auto [c1, c2] = assemble(n1, n2);
      const auto next_cost = cost_of(c1, c2);
      if (next_cost <= cost) {
        d1parts = std::move(n1);
        d2parts = std::move(n2);
        d1 = std::move(c1);
        d2 = std::move(c2);
        cost = next_cost;
      }
    }
  }
}

}  // namespace

std::string replay(const SearchSpec& spec, const DifferenceFamily& family) {
  if (!(family.group() == spec.group) || !(family.forbidden() == spec.n)) return "family does not live in the spec's (G, N)";
  const auto report = verify(family);
  if (!report.ok) return report.summary();
  const auto pre = check_thm41_preconditions(family, spec.m);
  if (!pre.ok) return pre.summary();
  return {};
}

SearchResult search_ddf(const SearchSpec& spec) {
  if (auto why = spec_infeasibility(spec)) throw DesignError("infeasible search spec: " + *why);
  const auto start = std::chrono::steady_clock::now();
  const Problem p(spec);
  SearchResult result;
  if (spec.mode == SearchMode::exhaustive) {
    exhaustive(spec, p, result);
  } else {
    randomized(spec, p, result);
  }
  for (const auto& c : result.certificates) {
    if (auto why = replay(spec, c.family); !why.empty()) throw DesignError("internal: certificate fails replay: " + why);
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// ---------------------------------------------------------------------------

namespace {

using Image = std::vector<std::vector<Index>>;

Image image_of(const DifferenceFamily& f, Index shift, bool negate) {
  const auto& g = f.group();
  Image out;
  for (const auto& b : f.blocks()) {
    std::vector<Index> idx;
    for (const auto& x : b.elements) {
      Index i = g.index_of(x);
      if (negate) i = g.neg_index(i);
      idx.push_back(g.add_index(i, shift));
    }
    std::sort(idx.begin(), idx.end());
    out.push_back(std::move(idx));
  }
  return out;
}

Image canonical_image(const DifferenceFamily& f, const Symmetries& s) {
  const auto& g = f.group();
  std::vector<Index> shifts{0};
  if (s.translation) {
    shifts.clear();
    for (Index i = 0; i < g.order(); ++i) shifts.push_back(i);
  } else if (s.n_translation) {
    shifts.clear();
    for (const auto& x : f.forbidden().elements()) shifts.push_back(g.index_of(x));
  }
  Image best = image_of(f, 0, false);
  for (const bool neg : {false, true}) {
    if (neg && !s.negation) continue;
    for (const auto shift : shifts) best = std::min(best, image_of(f, shift, neg));
  }
  return best;
}

}  // namespace

DifferenceFamily canonical_form(const DifferenceFamily& family, const Symmetries& symmetries) {
  const auto& g = family.group();
  const auto img = canonical_image(family, symmetries);
  std::vector<Block> blocks;
  for (const auto& b : img) {
    std::vector<GroupElement> e;
    for (const auto i : b) e.push_back(g.element_at(i));
    blocks.push_back(Block::make(g, std::move(e)));
  }
  return DifferenceFamily(g, family.forbidden(), std::move(blocks), family.declared(), family.provenance());
}

std::vector<Certificate> dedupe(const std::vector<Certificate>& certs, const Symmetries& symmetries) {
  std::vector<Certificate> out;
  std::set<Image> seen;
  for (const auto& c : certs) {
    const auto img = canonical_image(c.family, symmetries);
    if (seen.insert(img).second) out.push_back({canonical_form(c.family, symmetries), c.seed, c.nodes});
  }
  return out;
}

}  // namespace designforge
