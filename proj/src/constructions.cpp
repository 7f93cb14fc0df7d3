#include "designforge/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "designforge/error.hpp"

namespace designforge {

FiniteAbelianGroup FieldRingOps::additive_group() const {
  return FiniteAbelianGroup(std::vector<std::int64_t>(ctx_.r(), ctx_.p()));
}

GroupElement FieldRingOps::additive_coords(std::uint32_t a) const {
  // Highest coefficient first so that group order matches code order.
  const auto c = ctx_.coeffs({a});
  return GroupElement{std::vector<std::int64_t>(c.rbegin(), c.rend())};
}

FiniteAbelianGroup GaloisRingOps::additive_group() const {
  return FiniteAbelianGroup(std::vector<std::int64_t>(ctx_.n(), 4));
}

GroupElement GaloisRingOps::additive_coords(std::uint32_t a) const {
  const auto c = ctx_.coeffs({a});
  return GroupElement{std::vector<std::int64_t>(c.rbegin(), c.rend())};
}

LemmaResult lemma21(const RingOps& ring, const std::vector<std::vector<std::uint32_t>>& family,
                    std::span<const std::uint32_t> subgroup, std::span<const std::uint32_t> representatives) {
  const std::uint32_t size = ring.size();
  const std::uint32_t one = ring.one();
  std::vector<char> in_n(size, 0);
  for (const auto x : subgroup) {
    if (x >= size || !ring.is_unit(x)) throw DesignError("N contains a non-unit");
    in_n[x] = 1;
  }
  if (!in_n[one]) throw DesignError("N does not contain 1");
  for (const auto x : subgroup) {
    for (const auto y : subgroup) {
      if (!in_n[ring.mul(x, y)]) throw DesignError("N is not closed under multiplication");
    }
  }

  std::uint32_t units = 0;
  for (std::uint32_t a = 0; a < size; ++a) units += ring.is_unit(a) ? 1 : 0;
  std::vector<char> covered(size, 0);
  for (const auto y : representatives) {
    if (y >= size || !ring.is_unit(y)) throw DesignError("representative is not a unit");
    for (const auto x : subgroup) {
      const std::uint32_t yx = ring.mul(y, x);
      if (covered[yx]) throw DesignError("representatives lie in a common coset of N");
      covered[yx] = 1;
    }
  }
  if (representatives.size() * subgroup.size() != units) {
    throw DesignError("representatives do not cover R*/N");
  }

  std::vector<std::vector<char>> in_d;
  for (const auto& block : family) {
    std::vector<char> mask(size, 0);
    for (const auto d : block) {
      if (d >= size) throw DesignError("block element outside ring");
      mask[d] = 1;
    }
    for (const auto x : subgroup) {
      for (const auto d : block) {
        if (!mask[ring.mul(x, d)]) throw DesignError("block is not fixed by N");
      }
    }
    in_d.push_back(std::move(mask));
  }

  // The input family must be a DF in R+.
  const FiniteAbelianGroup additive = ring.additive_group();
  std::vector<Block> add_blocks;
  for (const auto& block : family) {
    std::vector<GroupElement> elems;
    for (const auto d : block) elems.push_back(ring.additive_coords(d));
    add_blocks.push_back(Block::make(additive, std::move(elems)));
  }
  const auto report = verify(DifferenceFamily::plain(additive, std::move(add_blocks)));
  if (!report.ok || !report.mu) throw DesignError("input family is not a difference family in R+: " + report.summary());

  LemmaResult result;
  result.lambda = *report.mu;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (const auto y : representatives) {
      const std::uint32_t y_inv = ring.inv(y);
      LemmaBlock lb{i, y, {}};
      for (const auto d : family[i]) {
        const std::uint32_t w = ring.mul(y_inv, ring.sub(d, one));
        if (in_n[w]) lb.elements.push_back(w);
      }
      std::sort(lb.elements.begin(), lb.elements.end());
      result.blocks.push_back(std::move(lb));
    }
  }
  for (const auto t : subgroup) {
    if (t == one) continue;
    std::int64_t count = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (const auto x : family[i]) {
        if (in_d[i][ring.sub(ring.add(x, t), one)] && !ring.is_unit(ring.sub(x, one))) ++count;
      }
    }
    result.lambda_t[t] = count;
  }
  return result;
}

std::int64_t multiplicative_theta(const RingOps& ring, const std::vector<std::vector<std::uint32_t>>& blocks,
                                  std::uint32_t t) {
  std::int64_t count = 0;
  for (const auto& b : blocks) {
    for (const auto x : b) {
      for (const auto y : b) {
        if (x != y && ring.mul(x, ring.inv(y)) == t) ++count;
      }
    }
  }
  return count;
}

namespace {

std::string odd_square_failure(std::uint64_t q, std::int64_t offset, std::uint64_t scale, const char* name) {
  std::ostringstream os;
  const auto shifted = static_cast<std::int64_t>(q) - offset;
  if (shifted <= 0 || shifted % static_cast<std::int64_t>(scale) != 0) {
    os << "q - " << offset << " is not a positive multiple of " << scale;
    return os.str();
  }
  const auto root = exact_sqrt(static_cast<std::uint64_t>(shifted) / scale);
  if (!root) {
    os << "(q - " << offset << ")/" << scale << " = " << shifted / static_cast<std::int64_t>(scale) << " is not a square";
    return os.str();
  }
  if (*root % 2 == 0) {
    os << name << " = " << *root << " is even";
    return os.str();
  }
  return {};
}

std::string condition_text(std::uint32_t e, bool with_zero) {
  if (e == 2) return "q = 3 (mod 4)";
  if (!with_zero) return e == 4 ? "q = 1 + 4t^2, t odd" : "q = 9 + 64a^2 = 1 + 8b^2, a, b odd";
  return e == 4 ? "q = 9 + 4t^2, t odd" : "q = 441 + 64a^2 = 49 + 8b^2, a, b odd";
}

}  // namespace

std::optional<std::string> cyclotomic_condition_failure(std::uint64_t q, std::uint32_t e, bool with_zero) {
  const std::string prefix = "q = " + std::to_string(q) + ", e = " + std::to_string(e) + (with_zero ? " with zero" : "") + ": ";
  if (!prime_power(q)) return prefix + std::to_string(q) + " is not a prime power";
  if (e != 2 && e != 4 && e != 8) return prefix + "index must be 2, 4 or 8";
  const std::string need = " (requires " + condition_text(e, with_zero) + ")";
  if (e == 2) {
    if (q % 4 != 3) return prefix + "q mod 4 = " + std::to_string(q % 4) + need;
    return std::nullopt;
  }
  std::vector<std::string> failures;
  if (e == 4) {
    failures.push_back(with_zero ? odd_square_failure(q, 9, 4, "t") : odd_square_failure(q, 1, 4, "t"));
  } else {
    failures.push_back(with_zero ? odd_square_failure(q, 441, 64, "a") : odd_square_failure(q, 9, 64, "a"));
    failures.push_back(with_zero ? odd_square_failure(q, 49, 8, "b") : odd_square_failure(q, 1, 8, "b"));
  }
  for (const auto& f : failures) {
    if (!f.empty()) return prefix + f + need;
  }
  return std::nullopt;
}

CyclotomicDS cyclotomic_ds(const FieldCtx& ctx, std::uint32_t e, bool with_zero) {
  if (auto failure = cyclotomic_condition_failure(ctx.q(), e, with_zero)) throw DesignError(*failure);
  CyclotomicDS ds{ctx, e, with_zero, ctx.mult_subgroup(e), 0, 0};
  if (with_zero) ds.elements.push_back(ctx.zero());
  std::sort(ds.elements.begin(), ds.elements.end());
  ds.k = static_cast<std::int64_t>(ds.elements.size());

  FieldRingOps ops(ctx);
  const auto additive = ops.additive_group();
  std::vector<GroupElement> elems;
  for (const auto a : ds.elements) elems.push_back(ops.additive_coords(a.code));
  const auto report = verify(DifferenceFamily::plain(additive, {Block::make(additive, std::move(elems))}));
  if (!report.ok || !report.mu) {
    throw DesignError("internal: cyclotomic set is not a difference set: " + report.summary());
  }
  ds.lambda = *report.mu;
  return ds;
}

namespace {

FiniteAbelianGroup cyclic(std::uint64_t v) { return FiniteAbelianGroup({static_cast<std::int64_t>(v)}); }

Block log_block(const FieldCtx& ctx, const FiniteAbelianGroup& group, std::uint32_t e,
                const std::vector<FieldElement>& elems) {
  std::vector<GroupElement> out;
  for (const auto a : elems) out.push_back(GroupElement{{static_cast<std::int64_t>(ctx.discrete_log(a) / e)}});
  return Block::make(group, std::move(out));
}

FieldFamily cyclotomic_family(const FieldCtx& ctx, std::uint32_t e, bool with_zero) {
  const std::int64_t q = ctx.q();
  const auto ds = cyclotomic_ds(ctx, e, with_zero);
  const auto n_elems = ctx.mult_subgroup(e);
  if (n_elems.size() < 2) throw DesignError("q = " + std::to_string(q) + ", e = " + std::to_string(e) + ": degenerate, N is trivial");

  std::vector<std::uint32_t> n_codes, d_codes, s_codes;
  for (const auto a : n_elems) n_codes.push_back(a.code);
  for (const auto a : ds.elements) d_codes.push_back(a.code);
  for (std::uint32_t i = 0; i < e; ++i) s_codes.push_back(ctx.exp(i).code);

  FieldRingOps ops(ctx);
  const auto lemma = lemma21(ops, {d_codes}, n_codes, s_codes);
  std::set<std::int64_t> nus;
  for (const auto& [t, v] : lemma.lambda_t) nus.insert(v);
  if (nus != std::set<std::int64_t>{1}) throw DesignError("internal: lambda_t is not identically 1");
  const std::int64_t lambda = lemma.lambda - 1;
  if (lambda < 0) throw DesignError("q = " + std::to_string(q) + ", e = " + std::to_string(e) + ": degenerate, lambda < 0");

  // Closed forms, checked against the values derived from the difference set.
  std::int64_t small = 0, large = 0, lambda_formula = 0;
  if (!with_zero) {
    const std::int64_t d = e == 2 ? 4 : e == 4 ? 16 : 64;
    const std::int64_t ks = e == 2 ? 3 : e == 4 ? 5 : 9;
    const std::int64_t ls = e == 2 ? 7 : e == 4 ? 21 : 73;
    small = large = (q - ks) / d;
    lambda_formula = (q - ls) / d;
  } else {
    const std::int64_t d = e == 2 ? 4 : e == 4 ? 16 : 64;
    const std::int64_t ls = e == 2 ? 3 : e == 4 ? 13 : 57;
    const std::int64_t kl = e == 2 ? 1 : e == 4 ? 3 : 7;
    small = lambda_formula = (q - ls) / d;
    large = (q + kl) / d;
  }
  if (lambda_formula != lambda) throw DesignError("internal: lambda disagrees with the closed form");

  FieldFamily out{DifferenceFamily::plain(cyclic(ctx.q() - 1), {}), {}, {}, lemma.lambda_t};
  const auto group = cyclic((ctx.q() - 1) / e);
  std::vector<Block> blocks;
  DesignParams declared;
  declared.mu = lambda;
  for (const auto& lb : lemma.blocks) {
    std::vector<FieldElement> fe;
    for (const auto c : lb.elements) fe.push_back({c});
    const auto expected = static_cast<std::size_t>(lb.representative == ctx.one().code ? small : large);
    if (fe.size() != expected) throw DesignError("internal: block size disagrees with the closed form");
    declared.block_sizes.push_back(fe.size());
    blocks.push_back(log_block(ctx, group, e, fe));
    out.field_blocks.push_back(std::move(fe));
    out.representatives.push_back({lb.representative});
  }
  nlohmann::json prov = {{"construction", with_zero ? "prop23" : "prop22"}, {"q", q}, {"e", e},
                         {"modulus", ctx.modulus()}, {"generator", ctx.generator().code}};
  out.family = DifferenceFamily(group, Subgroup::trivial(group), std::move(blocks), declared, prov);
  const auto report = verify(out.family);
  if (!report.ok) throw DesignError("internal: constructed family fails verification: " + report.summary());
  return out;
}

}  // namespace

FieldFamily szekeres(const FieldCtx& ctx) {
  const std::int64_t q = ctx.q();
  if (q % 4 != 3) throw DesignError("Szekeres family needs q = 3 (mod 4), got q mod 4 = " + std::to_string(q % 4));
  if (q < 7) throw DesignError("Szekeres family needs q >= 7");
  const auto squares = ctx.mult_subgroup(2);
  std::vector<char> is_square(ctx.q(), 0);
  for (const auto a : squares) is_square[a.code] = 1;
  std::vector<FieldElement> d1, d2;
  for (const auto a : squares) {
    if (is_square[ctx.add(a, ctx.one()).code]) d1.push_back(a);  // a in N - 1
    if (is_square[ctx.sub(a, ctx.one()).code]) d2.push_back(a);  // a in N + 1
  }
  const auto group = cyclic((ctx.q() - 1) / 2);
  DesignParams declared;
  declared.mu = (q - 7) / 4;
  declared.block_sizes = {static_cast<std::size_t>((q - 3) / 4), static_cast<std::size_t>((q - 3) / 4)};
  std::vector<Block> blocks{log_block(ctx, group, 2, d1), log_block(ctx, group, 2, d2)};
  nlohmann::json prov = {{"construction", "szekeres"}, {"q", q}, {"modulus", ctx.modulus()},
                         {"generator", ctx.generator().code}};
  FieldFamily out{DifferenceFamily(group, Subgroup::trivial(group), std::move(blocks), declared, prov),
                  {d1, d2},
                  {ctx.one(), ctx.one()},
                  {}};
  const auto report = verify(out.family);
  if (!report.ok) throw DesignError("internal: Szekeres family fails verification: " + report.summary());
  return out;
}

FieldFamily prop22_family(const FieldCtx& ctx, std::uint32_t e) { return cyclotomic_family(ctx, e, false); }

FieldFamily prop23_family(const FieldCtx& ctx, std::uint32_t e) { return cyclotomic_family(ctx, e, true); }

// ---------------------------------------------------------------------------

FieldElement default_trace_zero_u(const RingCtx& ctx) {
  const auto& f = ctx.residue_field();
  for (std::uint32_t k = 0; k + 1 < f.q(); ++k) {
    if (f.trace(f.exp(k)) == 0) return f.exp(k);
  }
  throw DesignError("GR(4," + std::to_string(ctx.n()) + "): no nonzero trace-zero element");
}

Gr4Data gr4_data(const RingCtx& ctx, FieldElement u) {
  const auto& f = ctx.residue_field();
  if (u.code == 0 || u.code >= f.q()) throw DesignError("u must be a nonzero element of GF(2^n)");
  if (f.trace(u) != 0) throw DesignError("u must have trace 0");
  Gr4Data data{ctx, u, {}, {}, {}};
  for (const auto x : f.elements()) {
    if (f.trace(f.mul(u, x)) == 0) data.E.push_back(x);
  }
  if (data.E.size() != f.q() / 2) throw DesignError("internal: trace-zero hyperplane has wrong size");
  data.E_basis = gf2_greedy_basis(data.E);
  for (std::uint32_t i = 0; i < ctx.teichmuller_order(); ++i) {
    for (const auto b : data.E) data.D.push_back(ctx.mul(ctx.teich_power(i), ctx.principal_unit(b)));
  }
  std::sort(data.D.begin(), data.D.end());
  return data;
}

std::vector<std::uint32_t> admissible_y_indices(const Gr4Data& data) {
  std::vector<std::uint32_t> out;
  const auto& t = data.ctx.teichmuller();
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    if (!std::binary_search(data.E.begin(), data.E.end(), data.ctx.reduce(t[idx]))) out.push_back(idx);
  }
  return out;
}

namespace {

std::vector<FieldElement> gf2_span(std::span<const FieldElement> gens) {
  std::set<std::uint32_t> span{0};
  for (const auto g : gens) {
    std::set<std::uint32_t> next = span;
    for (const auto s : span) next.insert(s ^ g.code);
    span = std::move(next);
  }
  std::vector<FieldElement> out;
  for (const auto s : span) out.push_back({s});
  return out;
}

Gr4Family gr4_family(const RingCtx& ctx, FieldElement u, const Gr4Subgroup& sub, std::optional<std::uint32_t> y_index,
                     bool with_ideal) {
  const unsigned n = ctx.n();
  const auto data = gr4_data(ctx, u);
  const std::uint32_t t_order = ctx.teichmuller_order();
  const std::uint32_t step = sub.cyclic_step;
  if (step == 0 || t_order % step != 0) {
    throw DesignError("cyclic step " + std::to_string(step) + " does not divide 2^n - 1 = " + std::to_string(t_order));
  }
  std::vector<FieldElement> basis;
  std::vector<FieldElement> span;
  if (sub.principal_generators) {
    for (const auto g : *sub.principal_generators) {
      if (!std::binary_search(data.E.begin(), data.E.end(), g)) throw DesignError("N is not a subgroup of D: generator outside E");
    }
    span = gf2_span(*sub.principal_generators);
    basis = gf2_greedy_basis(span);
  } else {
    span = data.E;
    basis = data.E_basis;
  }
  const bool whole_d = step == 1 && span.size() == data.E.size();

  // N and phi: xi^(step a) (1 + 2b) -> (a, coordinates of b-bar).
  std::vector<std::int64_t> moduli{static_cast<std::int64_t>(t_order / step)};
  moduli.insert(moduli.end(), basis.size(), 2);
  const FiniteAbelianGroup group(moduli);
  GroupIso phi{"N <= GR(4," + std::to_string(n) + ")*", group, {}};
  std::vector<RingElement> n_elems;
  for (std::uint32_t a = 0; a < t_order / step; ++a) {
    for (const auto b : span) {
      const RingElement x = ctx.mul(ctx.teich_power(static_cast<std::int64_t>(step) * a), ctx.principal_unit(b));
      auto coords = *gf2_coordinates(basis, b);
      coords.insert(coords.begin(), a);
      phi.forward.emplace(x.code, GroupElement{std::move(coords)});
      n_elems.push_back(x);
    }
  }
  std::sort(n_elems.begin(), n_elems.end());

  // Representatives of U_n / (N ∩ U_n): least Teichmuller index per coset.
  const auto& teich = ctx.teichmuller();
  auto coset_key = [&](FieldElement r) {
    std::uint32_t best = r.code;
    for (const auto s : span) best = std::min(best, r.code ^ s.code);
    return best;
  };
  std::vector<std::uint32_t> keys;
  std::map<std::uint32_t, std::uint32_t> rep_index;
  for (std::uint32_t idx = 0; idx < teich.size(); ++idx) {
    const auto key = coset_key(ctx.reduce(teich[idx]));
    if (rep_index.emplace(key, idx).second) keys.push_back(key);
  }
  if (y_index) {
    if (*y_index >= teich.size()) throw DesignError("y index outside the Teichmuller set");
    rep_index[coset_key(ctx.reduce(teich[*y_index]))] = *y_index;
  }
  std::vector<std::uint32_t> reps;
  std::vector<std::uint32_t> y_choices;
  for (std::uint32_t i = 0; i < step; ++i) {
    for (const auto key : keys) {
      reps.push_back(ctx.mul(ctx.teich_power(i), ctx.add(ctx.one(), ctx.mul(ctx.two(), teich[rep_index[key]]))).code);
      if (i == 0) y_choices.push_back(rep_index[key]);
    }
  }

  std::vector<std::uint32_t> ds, n_codes;
  for (const auto d : data.D) ds.push_back(d.code);
  if (with_ideal) {
    for (const auto x : ctx.elements()) {
      if (!ctx.is_unit(x)) ds.push_back(x.code);
    }
    std::sort(ds.begin(), ds.end());
  }
  for (const auto x : n_elems) n_codes.push_back(x.code);
  GaloisRingOps ops(ctx);
  const auto lemma = lemma21(ops, {ds}, n_codes, reps);

  // lambda_t is 2^(n-1) on L \ {1} and 2^(n-2) on N \ L.
  const std::int64_t half = std::int64_t{1} << (n - 1);
  const std::int64_t quarter = half / 2;
  for (const auto& [t, v] : lemma.lambda_t) {
    const bool in_l = ctx.tau({t}) == ctx.one();
    if (v != (in_l ? half : quarter)) throw DesignError("internal: lambda_t deviates from the U_n split");
  }

  DesignParams declared;
  declared.lambda = lemma.lambda - half;
  declared.mu = lemma.lambda - quarter;
  const std::int64_t k = with_ideal ? half * half : half * (half - 1);
  const std::int64_t lambda_formula = with_ideal ? half * half : (std::int64_t{1} << n) * (quarter - 1);
  const std::int64_t mu_formula = with_ideal ? quarter * ((std::int64_t{1} << n) + 1) : half * (half - 1) - quarter;
  if (*declared.lambda != lambda_formula || *declared.mu != mu_formula) {
    throw DesignError("internal: GR(4,n) parameters disagree with the closed form");
  }
  if (whole_d) declared.block_sizes.assign(lemma.blocks.size(), static_cast<std::size_t>(k));

  std::vector<GroupElement> l_elems;
  for (const auto x : n_elems) {
    if (ctx.tau(x) == ctx.one()) l_elems.push_back(phi(x.code));
  }
  auto forbidden = Subgroup::from_elements(group, std::move(l_elems));

  Gr4Family out{DifferenceFamily::plain(group, {}), {}, {}, lemma.lambda_t, n_elems, basis, phi};
  std::vector<Block> blocks;
  for (const auto& lb : lemma.blocks) {
    std::vector<RingElement> re;
    std::vector<GroupElement> ge;
    for (const auto c : lb.elements) {
      re.push_back({c});
      ge.push_back(phi(c));
    }
    out.ring_blocks.push_back(std::move(re));
    blocks.push_back(Block::make(group, std::move(ge)));
  }
  for (const auto y : reps) out.representatives.push_back({y});

  std::vector<std::uint32_t> basis_codes;
  for (const auto b : basis) basis_codes.push_back(b.code);
  nlohmann::json prov = {{"construction", with_ideal ? "gr4-union" : "gr4-ddf"},
                         {"n", n},
                         {"modulus", ctx.modulus()},
                         {"u", ctx.residue_field().discrete_log(u)},
                         {"y", y_choices},
                         {"cyclic_step", step},
                         {"basis", basis_codes}};
  out.family = DifferenceFamily(group, std::move(forbidden), std::move(blocks), declared, prov);
  const auto report = verify(out.family);
  if (!report.ok) throw DesignError("internal: GR(4,n) family fails verification: " + report.summary());
  return out;
}

}  // namespace

Gr4Family gr4_ddf(const RingCtx& ctx, FieldElement u, const Gr4Subgroup& subgroup, std::optional<std::uint32_t> y_index) {
  return gr4_family(ctx, u, subgroup, y_index, false);
}

Gr4Family gr4_ddf_union(const RingCtx& ctx, FieldElement u, const Gr4Subgroup& subgroup,
                        std::optional<std::uint32_t> y_index) {
  return gr4_family(ctx, u, subgroup, y_index, true);
}

TeichDifferenceSet prop34_ds(const RingCtx& ctx, FieldElement u) {
  const auto data = gr4_data(ctx, u);
  const unsigned n = ctx.n();
  TeichDifferenceSet out{DifferenceFamily::plain(FiniteAbelianGroup{}, {}), {}};
  const auto group = cyclic(ctx.teichmuller_order());
  std::vector<GroupElement> elems;
  for (const auto d : data.D) {
    const RingElement t = ctx.add(d, ctx.two());
    const auto idx = ctx.teich_index(t);
    if (idx && *idx > 0) {
      out.ring_elements.push_back(t);
      elems.push_back(GroupElement{{static_cast<std::int64_t>(*idx - 1)}});
    }
  }
  std::sort(out.ring_elements.begin(), out.ring_elements.end());
  DesignParams declared;
  declared.mu = (std::int64_t{1} << (n - 2)) - 1;
  declared.block_sizes = {(std::size_t{1} << (n - 1)) - 1};
  nlohmann::json prov = {{"construction", "prop34"}, {"n", n}, {"modulus", ctx.modulus()},
                         {"u", ctx.residue_field().discrete_log(u)}};
  out.family = DifferenceFamily(group, Subgroup::trivial(group), {Block::make(group, std::move(elems))}, declared, prov);
  const auto report = verify(out.family);
  if (!report.ok) throw DesignError("internal: (D+2) ∩ T_n* fails verification: " + report.summary());
  return out;
}

Prop33Report prop33_check(const DifferenceFamily& family) {
  const auto& g = family.group();
  if (family.blocks().size() != 2) throw DesignError("expected a two-block family");
  if (g.rank() < 1) throw DesignError("expected Z_{2^n-1} x Z_2^(n-1)");
  for (std::size_t i = 1; i < g.rank(); ++i) {
    if (g.moduli()[i] != 2) throw DesignError("expected Z_{2^n-1} x Z_2^(n-1)");
  }
  Prop33Report r;
  const auto& d1 = family.blocks()[0];
  const auto& d2 = family.blocks()[1];
  r.first_symmetric = true;
  for (const auto& a : d1.elements) {
    if (!d1.contains(g.negate(a))) {
      r.first_symmetric = false;
      r.witnesses.push_back("(i) " + a.to_string() + " in D1 but its negative is not");
      break;
    }
  }
  r.second_skew = true;
  for (const auto& a : d2.elements) {
    if (d2.contains(g.negate(a))) {
      r.second_skew = false;
      r.witnesses.push_back("(ii) " + a.to_string() + " and its negative both in D2");
      break;
    }
  }
  const std::int64_t coset_size = static_cast<std::int64_t>(g.order()) / g.moduli()[0];
  r.coset_balanced = true;
  for (std::size_t bi = 0; bi < 2 && r.coset_balanced; ++bi) {
    std::vector<std::int64_t> count(static_cast<std::size_t>(g.moduli()[0]), 0);
    for (const auto& a : family.blocks()[bi].elements) ++count[static_cast<std::size_t>(a.coords[0])];
    for (std::size_t j = 0; j < count.size(); ++j) {
      const std::int64_t want = j == 0 ? 0 : coset_size / 2;
      if (count[j] != want) {
        r.coset_balanced = false;
        r.witnesses.push_back("(iii) |D" + std::to_string(bi + 1) + " ∩ ({" + std::to_string(j) + "} x Z_2^k)| = " +
                              std::to_string(count[j]) + ", expected " + std::to_string(want));
        break;
      }
    }
  }
  return r;
}

}  // namespace designforge
