#include "designforge/galois_ring.hpp"

#include <algorithm>

#include "designforge/error.hpp"

namespace designforge {

namespace {

Poly poly_mul_z4(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) & 3u;
  }
  return r;
}

}  // namespace

RingCtx RingCtx::lift_primitive(const Poly& h_in) {
  Poly h = gfp::trim(h_in);
  for (auto& c : h) {
    if (c > 1) throw DesignError("GF(2) polynomial coefficients must be 0 or 1");
  }
  if (h.size() < 2 || h.back() != 1) throw DesignError("h must be monic of degree >= 1");
  const std::size_t n = h.size() - 1;
  {
    // Primitivity of h is checked by building its field with generator x-bar.
    const FieldElement x{n == 1 ? h[0] : 2u};
    try {
      FieldCtx check(2, static_cast<unsigned>(n), h, x);
    } catch (const DesignError&) {
      throw DesignError("h is not primitive over GF(2)");
    }
  }
  Poly even, odd;
  for (std::size_t i = 0; i < h.size(); ++i) (i % 2 == 0 ? even : odd).push_back(h[i]);
  Poly e2 = poly_mul_z4(even, even);
  Poly o2 = odd.empty() ? Poly{} : poly_mul_z4(odd, odd);
  o2.insert(o2.begin(), 0);  // y * o(y)^2
  Poly g(n + 1, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    const std::uint32_t ev = i < e2.size() ? e2[i] : 0;
    const std::uint32_t ov = i < o2.size() ? o2[i] : 0;
    std::uint32_t c = (ev + 4 - ov) & 3u;
    if (n % 2 == 1) c = (4 - c) & 3u;
    g[i] = c;
  }
  return RingCtx(std::move(g));
}

RingCtx RingCtx::make(unsigned n, const PolyTable& table) {
  if (n == 0) throw DesignError("ring degree must be >= 1");
  if (auto m = table.ring_modulus(n)) return RingCtx(*m);
  auto h = table.field_modulus(2, n);
  if (!h || n == 1) h = gfp::find_primitive(2, n);
  return lift_primitive(*h);
}

RingCtx::RingCtx(Poly modulus) : modulus_(std::move(modulus)) {
  for (auto& c : modulus_) c &= 3u;
  modulus_ = gfp::trim(std::move(modulus_));
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DesignError("ring modulus must be monic of degree >= 1");
  n_ = static_cast<unsigned>(modulus_.size() - 1);
  if (n_ > 12) throw DesignError("GR(4,n) supported for n <= 12");

  xi_ = from_coeffs(Poly{0, 1});
  Poly residue_modulus;
  for (auto c : modulus_) residue_modulus.push_back(c & 1u);
  const std::uint32_t xi_bar = [&] {
    std::uint32_t code = 0;
    for (unsigned i = 0; i < n_; ++i) code |= ((xi_.code >> (2 * i)) & 1u) << i;
    return code;
  }();
  try {
    residue_ = std::make_shared<const FieldCtx>(2, n_, residue_modulus, FieldElement{xi_bar});
  } catch (const DesignError&) {
    throw DesignError("ring modulus mod 2 is not primitive over GF(2)");
  }

  const std::uint32_t order = teichmuller_order();
  if (pow(xi_, order) != one()) throw DesignError("root of the ring modulus does not have order 2^n - 1");
  for (const auto l : prime_factors(order)) {
    if (pow(xi_, order / l) == one()) throw DesignError("root of the ring modulus has order below 2^n - 1");
  }

  auto teich = std::make_shared<std::vector<RingElement>>();
  auto by_residue = std::make_shared<std::vector<std::uint32_t>>(1u << n_, 0);
  teich->push_back(zero());
  RingElement t = one();
  for (std::uint32_t k = 0; k < order; ++k) {
    teich->push_back(t);
    (*by_residue)[reduce(t).code] = t.code;
    t = mul(t, xi_);
  }
  teich_ = std::move(teich);
  teich_by_residue_ = std::move(by_residue);
}

RingElement RingCtx::from_int(std::int64_t v) const {
  return RingElement{static_cast<std::uint32_t>(((v % 4) + 4) % 4)};
}

RingElement RingCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  Poly r(coeffs.begin(), coeffs.end());
  for (auto& c : r) c &= 3u;
  // Reduce by the monic modulus.
  for (std::size_t k = r.size(); k-- > n_;) {
    const std::uint32_t c = r[k];
    if (c == 0) continue;
    for (unsigned i = 0; i <= n_; ++i) r[k - n_ + i] = (r[k - n_ + i] + 4 - (c * modulus_[i]) % 4) & 3u;
  }
  std::uint32_t code = 0;
  for (unsigned i = 0; i < n_ && i < r.size(); ++i) code |= r[i] << (2 * i);
  return RingElement{code};
}

Poly RingCtx::coeffs(RingElement a) const {
  Poly out(n_);
  for (unsigned i = 0; i < n_; ++i) out[i] = (a.code >> (2 * i)) & 3u;
  return out;
}

std::vector<RingElement> RingCtx::elements() const {
  std::vector<RingElement> out(size());
  for (std::uint32_t i = 0; i < size(); ++i) out[i] = RingElement{i};
  return out;
}

RingElement RingCtx::add(RingElement a, RingElement b) const {
  std::uint32_t out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    const std::uint32_t s = ((a.code >> (2 * i)) + (b.code >> (2 * i))) & 3u;
    out |= s << (2 * i);
  }
  return RingElement{out};
}

RingElement RingCtx::neg(RingElement a) const {
  std::uint32_t out = 0;
  for (unsigned i = 0; i < n_; ++i) out |= ((4 - ((a.code >> (2 * i)) & 3u)) & 3u) << (2 * i);
  return RingElement{out};
}

RingElement RingCtx::sub(RingElement a, RingElement b) const { return add(a, neg(b)); }

RingElement RingCtx::mul(RingElement a, RingElement b) const {
  std::uint32_t prod[2 * 12] = {};
  for (unsigned i = 0; i < n_; ++i) {
    const std::uint32_t ai = (a.code >> (2 * i)) & 3u;
    if (!ai) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] += ai * ((b.code >> (2 * j)) & 3u);
  }
  for (unsigned k = 2 * n_ - 1; k-- > n_;) {
    const std::uint32_t c = prod[k] & 3u;
    if (!c) continue;
    for (unsigned i = 0; i < n_; ++i) prod[k - n_ + i] += 4 * 3 - c * modulus_[i];
  }
  std::uint32_t code = 0;
  for (unsigned i = 0; i < n_; ++i) code |= (prod[i] & 3u) << (2 * i);
  return RingElement{code};
}

RingElement RingCtx::pow(RingElement a, std::uint64_t e) const {
  RingElement result = one(), base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

RingElement RingCtx::inv(RingElement a) const {
  if (!is_unit(a)) throw DesignError("inversion of non-unit " + to_digits(a));
  const auto d = unit_decompose(a);
  // (1 + 2b)^2 = 1, so the principal part is its own inverse.
  return mul(teich_power(-static_cast<std::int64_t>(d.a0_exponent)), add(one(), mul(two(), d.a1)));
}

RingElement RingCtx::teich_power(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(teichmuller_order());
  return (*teich_)[static_cast<std::size_t>(((k % m) + m) % m) + 1];
}

std::optional<std::uint32_t> RingCtx::teich_index(RingElement a) const {
  const RingElement t = teich_lift(reduce(a));
  if (t != a) return std::nullopt;
  if (a.code == 0) return 0u;
  return residue_->discrete_log(reduce(a)) + 1;
}

RingElement RingCtx::teich_lift(FieldElement a) const {
  if (a.code >= (1u << n_)) throw DesignError("residue element out of range");
  return RingElement{(*teich_by_residue_)[a.code]};
}

RingElement RingCtx::tau(RingElement a) const {
  for (unsigned i = 0; i < n_; ++i) a = mul(a, a);
  return a;
}

UnitDecomposition RingCtx::unit_decompose(RingElement a) const {
  if (!is_unit(a)) throw DesignError("unit decomposition of non-unit " + to_digits(a));
  UnitDecomposition d;
  d.a0 = tau(a);
  d.a0_exponent = residue_->discrete_log(reduce(d.a0));
  const RingElement u = mul(a, teich_power(-static_cast<std::int64_t>(d.a0_exponent)));
  const RingElement twice_b = sub(u, one());
  std::uint32_t bbar = 0;
  for (unsigned i = 0; i < n_; ++i) {
    const std::uint32_t c = (twice_b.code >> (2 * i)) & 3u;
    if (c & 1u) throw DesignError("internal: principal part not congruent to 1 mod 2");
    bbar |= (c >> 1) << i;
  }
  d.a1 = teich_lift(FieldElement{bbar});
  return d;
}

RingElement RingCtx::recompose(const UnitDecomposition& d) const {
  return mul(d.a0, add(one(), mul(two(), d.a1)));
}

RingElement RingCtx::principal_unit(FieldElement b) const { return add(one(), mul(two(), teich_lift(b))); }

FieldElement RingCtx::reduce(RingElement a) const {
  std::uint32_t code = 0;
  for (unsigned i = 0; i < n_; ++i) code |= ((a.code >> (2 * i)) & 1u) << i;
  return FieldElement{code};
}

std::string RingCtx::to_digits(RingElement a) const {
  std::string s;
  for (unsigned i = n_; i-- > 0;) s.push_back(static_cast<char>('0' + ((a.code >> (2 * i)) & 3u)));
  return s;
}

RingElement RingCtx::from_digits(const std::string& digits) const {
  if (digits.size() != n_) throw DesignError("expected " + std::to_string(n_) + " digits, got '" + digits + "'");
  std::uint32_t code = 0;
  for (unsigned i = 0; i < n_; ++i) {
    const char c = digits[n_ - 1 - i];
    if (c < '0' || c > '3') throw DesignError("ring digit must be 0..3 in '" + digits + "'");
    code |= static_cast<std::uint32_t>(c - '0') << (2 * i);
  }
  return RingElement{code};
}

namespace {

struct EchelonRow {
  std::uint32_t vec;
  std::uint32_t combo;
};

// Echelon form keyed by highest set bit. Returns false if a row reduced to 0.
bool build_echelon(std::span<const FieldElement> vectors, std::vector<EchelonRow>& rows) {
  rows.clear();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    EchelonRow row{vectors[i].code, 1u << i};
    for (const auto& r : rows) {
      if (row.vec & (1u << (31 - __builtin_clz(r.vec)))) {
        row.vec ^= r.vec;
        row.combo ^= r.combo;
      }
    }
    if (row.vec == 0) return false;
    // Keep rows sorted by decreasing pivot so one pass reduces fully.
    for (auto& r : rows) {
      if (r.vec & (1u << (31 - __builtin_clz(row.vec)))) {
        r.vec ^= row.vec;
        r.combo ^= row.combo;
      }
    }
    rows.push_back(row);
    std::sort(rows.begin(), rows.end(), [](const EchelonRow& x, const EchelonRow& y) { return x.vec > y.vec; });
  }
  return true;
}

}  // namespace

std::vector<FieldElement> gf2_greedy_basis(std::span<const FieldElement> vectors) {
  std::vector<FieldElement> sorted(vectors.begin(), vectors.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<FieldElement> basis;
  std::vector<EchelonRow> rows;
  for (const auto v : sorted) {
    if (v.code == 0) continue;
    basis.push_back(v);
    if (!build_echelon(basis, rows)) basis.pop_back();
  }
  return basis;
}

std::optional<std::vector<std::int64_t>> gf2_coordinates(std::span<const FieldElement> basis, FieldElement v) {
  std::vector<EchelonRow> rows;
  if (!build_echelon(basis, rows)) throw DesignError("GF(2) basis vectors are linearly dependent");
  std::uint32_t vec = v.code, combo = 0;
  for (const auto& r : rows) {
    if (vec & (1u << (31 - __builtin_clz(r.vec)))) {
      vec ^= r.vec;
      combo ^= r.combo;
    }
  }
  if (vec != 0) return std::nullopt;
  std::vector<std::int64_t> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = (combo >> i) & 1u;
  return out;
}

GroupIso unit_group_iso(const RingCtx& ctx, std::span<const FieldElement> basis) {
  if (basis.size() != ctx.n()) throw DesignError("basis must have n vectors");
  std::vector<EchelonRow> rows;
  if (!build_echelon(basis, rows)) throw DesignError("basis vectors are not linearly independent");
  std::vector<std::int64_t> moduli{static_cast<std::int64_t>(ctx.teichmuller_order())};
  moduli.insert(moduli.end(), ctx.n(), 2);
  GroupIso iso{"GR(4," + std::to_string(ctx.n()) + ")*", FiniteAbelianGroup(moduli), {}};
  for (const auto a : ctx.elements()) {
    if (!ctx.is_unit(a)) continue;
    const auto d = ctx.unit_decompose(a);
    auto coords = *gf2_coordinates(basis, ctx.reduce(d.a1));
    coords.insert(coords.begin(), d.a0_exponent);
    iso.forward.emplace(a.code, GroupElement{std::move(coords)});
  }
  return iso;
}

}  // namespace designforge
