// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "designforge/constructions.hpp"
#include "designforge/error.hpp"
#include "designforge/hadamard.hpp"
#include "designforge/search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace designforge;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    out.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s");
  }
  const bool ok = out.failures.empty();
  if (!ok) ++failed;
  std::printf("%s  %2d  %-58s %8.3f s\n", ok ? "PASS" : "FAIL", number, title.c_str(), secs);
  for (const auto& f : out.failures) std::printf("          - %s\n", f.c_str());
  std::fflush(stdout);
}

std::set<std::string> ring_digits(const RingCtx& r, const std::vector<RingElement>& v) {
  std::set<std::string> out;
  for (const auto a : v) out.insert(r.to_digits(a));
  return out;
}

std::string q_tag(std::uint64_t q) { return "q=" + std::to_string(q); }
std::string n_tag(unsigned n) { return "n=" + std::to_string(n); }

// Family parameters recomputed by the oracle match the expected values.
bool oracle_agrees(const DifferenceFamily& f, std::int64_t lambda, std::int64_t mu) {
  const auto p = testsupport::oracle_params(f);
  return p.ok && (f.is_plain() || p.lambda == lambda) && p.mu == mu;
}

DifferenceFamily gr3(std::optional<std::uint32_t> y = std::nullopt) {
  static const auto r = RingCtx::make(3);
  return gr4_ddf(r, default_trace_zero_u(r), {}, y).family;
}

}  // namespace

int main() {
  criterion(1, "GR(4,3) DDF reproduces the reference blocks", 1.0, [](Outcome& o) {
    const auto r = RingCtx::lift_primitive({1, 0, 1, 1});
    o.expect(r.modulus() == Poly{3, 2, 3, 1}, "modulus is not x^3+3x^2+2x+3");
    const auto f = gr4_ddf(r, default_trace_zero_u(r));
    o.expect(ring_digits(r, f.ring_blocks[0]) == std::set<std::string>{"103", "111", "112", "121", "211", "212", "231",
                                                                         "232", "300", "322", "331", "332"},
             "D1 differs from the printed block");
    o.expect(ring_digits(r, f.ring_blocks[1]) == std::set<std::string>{"010", "030", "103", "112", "113", "121", "213",
                                                                         "233", "300", "322", "332", "333"},
             "D2 differs from the printed block");
    const auto rep = verify(f.family);
    o.expect(rep.ok && rep.block_sizes == std::vector<std::size_t>{12, 12} && rep.lambda == 8 && rep.mu == 10,
             "verify: " + rep.summary());
    o.expect(f.family.forbidden().order() == 4, "|L| != 4");
    o.expect(oracle_agrees(f.family, 8, 10), "oracle disagrees");
  });

  criterion(2, "GR(4,n) DDF parameter sweep, n = 3, 4, 5", 30.0, [](Outcome& o) {
    for (unsigned n = 3; n <= 5; ++n) {
      const auto r = RingCtx::make(n);
      const auto f = gr4_ddf(r, default_trace_zero_u(r));
      const std::int64_t h = std::int64_t{1} << (n - 1), q = std::int64_t{1} << (n - 2);
      const std::int64_t k = h * (h - 1), lambda = 2 * h * (q - 1), mu = h * (h - 1) - q;
      const auto rep = verify(f.family);
      o.expect(rep.ok && rep.lambda == lambda && rep.mu == mu &&
                   rep.block_sizes == std::vector<std::size_t>(2, static_cast<std::size_t>(k)),
               n_tag(n) + ": " + rep.summary());
      o.expect(oracle_agrees(f.family, lambda, mu), n_tag(n) + ": oracle disagrees");
    }
  });

  criterion(3, "GR(4,n) block symmetry, skewness, coset counts, n = 3..5", 0, [](Outcome& o) {
    for (unsigned n = 3; n <= 5; ++n) {
      const auto r = RingCtx::make(n);
      const auto f = gr4_ddf(r, default_trace_zero_u(r)).family;
      const auto rep = prop33_check(f);
      o.expect(rep.ok(), n_tag(n) + ": library check failed");
      // Independent recount on coordinates.
      const auto& mod = f.group().moduli();
      const auto blocks = testsupport::blocks_of(f);
      std::set<oracle::Vec> d1(blocks[0].begin(), blocks[0].end()), d2(blocks[1].begin(), blocks[1].end());
      bool sym = true, skew = true;
      for (const auto& x : d1) sym = sym && d1.count(oracle::neg(x, mod));
      for (const auto& x : d2) skew = skew && !d2.count(oracle::neg(x, mod));
      o.expect(sym, n_tag(n) + ": D1 != -D1");
      o.expect(skew, n_tag(n) + ": D2 meets -D2");
      for (const auto* d : {&d1, &d2}) {
        std::vector<std::int64_t> per(mod[0], 0);
        for (const auto& x : *d) ++per[x[0]];
        o.expect(per[0] == 0, n_tag(n) + ": block meets {0} x Z2^(n-1)");
        for (std::int64_t j = 1; j < mod[0]; ++j) {
          o.expect(per[j] == (std::int64_t{1} << (n - 2)), n_tag(n) + ": coset " + std::to_string(j) + " count " +
                                                               std::to_string(per[j]));
        }
      }
    }
  });

  criterion(4, "Teichmuller difference sets (D+2) ∩ T*, n = 3, 4, 5", 0, [](Outcome& o) {
    for (unsigned n = 3; n <= 5; ++n) {
      const auto r = RingCtx::make(n);
      const auto ds = prop34_ds(r, default_trace_zero_u(r));
      const std::int64_t v = (std::int64_t{1} << n) - 1, k = (std::int64_t{1} << (n - 1)) - 1,
                         l = (std::int64_t{1} << (n - 2)) - 1;
      const auto rep = verify(ds.family);
      o.expect(ds.family.group().order() == static_cast<std::uint64_t>(v) && rep.ok &&
                   rep.block_sizes == std::vector<std::size_t>{static_cast<std::size_t>(k)} && rep.mu == l,
               n_tag(n) + ": " + rep.summary());
      o.expect(oracle_agrees(ds.family, 0, l), n_tag(n) + ": oracle disagrees");
    }
  });

  criterion(5, "Szekeres and e = 2 cyclotomic pairs, q = 3 mod 4, q <= 1024", 60.0, [](Outcome& o) {
    std::size_t count = 0;
    for (std::uint64_t q = 7; q <= 1024; ++q) {
      if (q % 4 != 3 || !prime_power(q)) continue;
      ++count;
      const auto ctx = FieldCtx::for_order(q);
      const auto k = static_cast<std::size_t>((q - 3) / 4);
      const auto lambda = static_cast<std::int64_t>((q - 7) / 4);
      const auto s = szekeres(ctx);
      const auto p = prop22_family(ctx, 2);
      for (const auto* f : {&s.family, &p.family}) {
        const auto rep = verify(*f);
        o.expect(f->group().order() == (q - 1) / 2 && rep.ok && rep.mu == lambda &&
                     rep.block_sizes == std::vector<std::size_t>{k, k},
                 q_tag(q) + ": " + rep.summary());
        o.expect(oracle_agrees(*f, 0, lambda), q_tag(q) + ": oracle disagrees");
      }
      std::vector<char> square(q, 0);
      for (const auto a : ctx.mult_subgroup(2)) square[a.code] = 1;
      std::set<std::uint32_t> lhs, rhs;
      for (const auto a : s.field_blocks[1]) lhs.insert(ctx.inv(a).code);
      for (const auto a : ctx.mult_subgroup(2)) {
        if (square[ctx.sub(ctx.one(), a).code]) rhs.insert(a.code);
      }
      o.expect(lhs == rhs, q_tag(q) + ": ((N+1)∩N)^-1 != -(N-1)∩N");
    }
    o.expect(count == 90, "expected 90 prime powers, saw " + std::to_string(count));
  });

  criterion(6, "cyclotomic families e = 2, 4, 8 and the 2-(6,3,2) design", 0, [](Outcome& o) {
    struct Case {
      std::uint64_t q;
      std::uint32_t e;
      bool with_zero;
      std::int64_t lambda;
      std::vector<std::size_t> sizes;
    };
    std::vector<Case> cases{{37, 4, false, 1, {2, 2, 2, 2}},
                            {73, 8, false, 0, {1, 1, 1, 1, 1, 1, 1, 1}},
                            {13, 4, true, 0, {0, 1, 1, 1}},
                            {109, 4, true, 6, {6, 7, 7, 7}}};
    for (const std::uint64_t q : {11u, 19u, 23u, 27u, 31u, 43u, 47u, 59u, 67u, 71u, 79u, 83u}) {
      const auto l = static_cast<std::size_t>((q - 3) / 4);
      cases.push_back({q, 2, true, static_cast<std::int64_t>(l), {l, l + 1}});
    }
    for (const auto& c : cases) {
      const auto ctx = FieldCtx::for_order(c.q);
      const auto f = c.with_zero ? prop23_family(ctx, c.e) : prop22_family(ctx, c.e);
      const auto rep = verify(f.family);
      const std::string tag = q_tag(c.q) + " e=" + std::to_string(c.e);
      o.expect(rep.ok && rep.mu == c.lambda && rep.block_sizes == c.sizes, tag + ": " + rep.summary());
      o.expect(f.family.group().order() == (c.q - 1) / c.e, tag + ": wrong group");
      o.expect(oracle_agrees(f.family, 0, c.lambda), tag + ": oracle disagrees");
    }
    const auto d = one_rotational_design(prop23_family(FieldCtx::for_order(11), 2).family);
    bool sizes = d.blocks.size() == 10;
    for (const auto& b : d.blocks) sizes = sizes && b.size() == 3;
    o.expect(d.points == 6 && sizes && d.report.ok && d.report.mu == 2, "2-(6,3,2): " + d.report.summary());
    o.expect(oracle::gdd(6, d.blocks, {0, 1, 2, 3, 4, 5}, 0, 2), "2-(6,3,2): oracle disagrees");
  });

  criterion(7, "skew Hadamard matrices of orders 8, 12, 20, 24", 5.0, [](Outcome& o) {
    for (const std::uint64_t q : {7u, 11u, 19u, 23u}) {
      const auto m = skew_from_df(szekeres(FieldCtx::for_order(q)).family);
      o.expect(m.order() == q + 1, q_tag(q) + ": wrong order");
      o.expect(oracle::hadamard(m.rows()), q_tag(q) + ": MM^T != vI");
      bool skew = true;
      for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) skew = skew && m(i, j) + m(j, i) == (i == j ? 2 : 0);
      }
      o.expect(skew, q_tag(q) + ": M + M^T != 2I");
      o.expect(is_hadamard(m) && is_skew(m), q_tag(q) + ": library predicates disagree");
    }
  });

  criterion(8, "symmetric Hadamard matrices of orders 16, 64, 256, 1024", 300.0, [](Outcome& o) {
    SearchSpec spec;
    spec.group = FiniteAbelianGroup({6});
    spec.n = Subgroup::from_elements(spec.group, {testsupport::el({0}), testsupport::el({3})});
    spec.m = 4;
    spec.max_solutions = 1;
    const auto found = search_ddf(spec);
    o.expect(!found.certificates.empty(), "Z6 search found nothing");
    std::vector<std::pair<DifferenceFamily, unsigned>> inputs;
    if (!found.certificates.empty()) inputs.emplace_back(found.certificates[0].family, 2);
    for (unsigned n = 3; n <= 5; ++n) {
      const auto r = RingCtx::make(n);
      inputs.emplace_back(gr4_ddf(r, default_trace_zero_u(r)).family, n);
    }
    for (const auto& [family, k] : inputs) {
      const auto m = symmetric_from_ddf(family, sylvester(k));
      const std::size_t v = std::size_t{1} << (2 * k);
      const std::string tag = "order " + std::to_string(v);
      o.expect(m.order() == v, tag + ": wrong order");
      o.expect(oracle::hadamard(m.rows()), tag + ": MM^T != vI");
      bool sym = true;
      for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = i + 1; j < v; ++j) sym = sym && m(i, j) == m(j, i);
      }
      o.expect(sym, tag + ": M != M^T");
    }
    const auto parts = symmetric_array(gr3(), sylvester(3));
    const auto claims = claim_tests(parts);
    o.expect(claims.size() == 10, "expected ten claims");
    for (const auto& c : claims) o.expect(c.ok, "claim " + std::to_string(c.number) + ": " + c.witness);
  });

  criterion(9, "order 64 under random coset assignments and all y", 0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
      const auto assignment = random_coset_assignment(7, rng);
      const auto m = symmetric_from_ddf(gr3(), sylvester(3), assignment);
      o.expect(oracle::hadamard(m.rows()) && is_symmetric(m), "assignment trial " + std::to_string(trial));
    }
    const auto r = RingCtx::make(3);
    const auto ys = admissible_y_indices(gr4_data(r, default_trace_zero_u(r)));
    o.expect(ys.size() == 4, "expected 4 admissible y, saw " + std::to_string(ys.size()));
    for (const auto y : ys) {
      const auto m = symmetric_from_ddf(gr3(y), sylvester(3));
      o.expect(oracle::hadamard(m.rows()) && is_symmetric(m), "y index " + std::to_string(y));
    }
  });

  criterion(10, "exhaustive search on (Z6, {0,3}, m=4) is complete", 10.0, [](Outcome& o) {
    SearchSpec spec;
    spec.group = FiniteAbelianGroup({6});
    spec.n = Subgroup::from_elements(spec.group, {testsupport::el({0}), testsupport::el({3})});
    spec.m = 4;
    const auto res = search_ddf(spec);
    o.expect(res.complete, "search reported an incomplete run");
    std::set<std::pair<std::vector<oracle::Vec>, std::vector<oracle::Vec>>> found;
    for (const auto& c : res.certificates) {
      const auto b = testsupport::blocks_of(c.family);
      found.insert({b[0], b[1]});
      o.expect(oracle_agrees(c.family, 0, 1), "certificate does not replay through the oracle");
    }
    const auto naive = oracle::naive_symmetric_pairs({6}, oracle::cyclic_set({0, 3}), 4);
    o.expect(found.size() == res.certificates.size(), "duplicate certificates");
    o.expect(found == naive, "found " + std::to_string(found.size()) + ", naive enumeration " +
                                 std::to_string(naive.size()));
  });

  criterion(11, "negative controls on single-element perturbations", 0, [](Outcome& o) {
    // DF
    {
      auto f = szekeres(FieldCtx::for_order(19)).family;
      auto e = f.blocks()[0].elements;
      e[0] = e[0].coords[0] == 0 ? testsupport::el({e.back().coords[0] == 8 ? 7 : 8}) : testsupport::el({0});
      f.replace_block(0, Block::make(f.group(), e));
      const auto rep = verify(f);
      o.expect(!rep.ok && rep.witness, "DF perturbation not caught");
      if (rep.witness) {
        const auto counts = oracle::differences(f.group().moduli(), testsupport::blocks_of(f));
        o.expect(counts.at(rep.witness->difference.coords) == rep.witness->actual, "DF witness count is wrong");
      }
    }
    // DDF
    {
      auto f = gr3();
      auto e = f.blocks()[1].elements;
      e[0] = testsupport::el({0, 0, 0});
      f.replace_block(1, Block::make(f.group(), e));
      const auto rep = verify(f);
      o.expect(!rep.ok && rep.witness, "DDF perturbation not caught");
      if (rep.witness) {
        const auto counts = oracle::differences(f.group().moduli(), testsupport::blocks_of(f));
        o.expect(counts.at(rep.witness->difference.coords) == rep.witness->actual, "DDF witness count is wrong");
      }
    }
    // GDD
    {
      const auto d = develop_as_gdd(gr3());
      auto blocks = d.blocks;
      std::set<std::uint32_t> in_block(blocks[0].begin(), blocks[0].end());
      std::uint32_t replacement = 0;
      while (in_block.count(replacement)) ++replacement;
      blocks[0][0] = replacement;
      const auto rep = verify_gdd(d.points, blocks, d.groups, 8, 10);
      o.expect(!rep.ok && rep.witness && rep.witness->actual != rep.witness->expected, "GDD perturbation not caught");
    }
    // Hadamard
    {
      auto m = symmetric_from_ddf(gr3(), sylvester(3));
      m.set(5, 9, -m(5, 9));
      const auto h = check_hadamard(m);
      o.expect(!h.ok && !h.witness.empty(), "Hadamard perturbation not caught");
      o.expect(!oracle::hadamard(m.rows()), "oracle accepts perturbed matrix");
      const auto s = check_symmetric(m);
      o.expect(!s.ok && !s.witness.empty(), "symmetry perturbation not caught");
      auto k = skew_from_df(szekeres(FieldCtx::for_order(11)).family);
      k.set(3, 4, -k(3, 4));
      const auto sk = check_skew(k);
      o.expect(!sk.ok && !sk.witness.empty(), "skew perturbation not caught");
    }
    // Claims
    {
      auto parts = symmetric_array(gr3(), sylvester(3));
      parts.B.at(2, 3) = 1 - parts.B.at(2, 3);
      parts.Bp.at(2, 3) = -parts.Bp.at(2, 3);
      bool caught = false;
      for (const auto& c : claim_tests(parts)) caught = caught || (!c.ok && !c.witness.empty());
      o.expect(caught, "claim perturbation not caught");
    }
  });

  std::printf("%s: %d criteria failed\n", failed ? "FAILED" : "OK", failed);
  return failed ? 1 : 0;
}
