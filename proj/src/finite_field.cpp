#include "designforge/finite_field.hpp"

#include <sstream>

#include "designforge/error.hpp"

namespace designforge {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  unsigned r = 0;
  while (q > 1) {
    q /= f[0];
    ++r;
  }
  return std::make_pair(static_cast<std::uint32_t>(f[0]), r);
}

std::optional<std::uint64_t> exact_sqrt(std::uint64_t v) {
  std::uint64_t lo = 0, hi = 1ULL << 32;
  while (lo + 1 < hi) {
    const std::uint64_t mid = (lo + hi) / 2;
    if (mid * mid <= v) lo = mid; else hi = mid;
  }
  if (lo * lo == v) return lo;
  return std::nullopt;
}

namespace gfp {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  for (std::uint32_t x = 1; x < p; ++x) {
    if ((static_cast<std::uint64_t>(a) * x) % p == 1) return x;
  }
  throw DesignError("no inverse modulo p");
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  return mod(std::move(r), m, p);
}

bool x_is_primitive(const Poly& f, std::uint32_t p) {
  const unsigned r = static_cast<unsigned>(f.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  auto powx = [&](std::uint64_t e) {
    Poly result{1}, base = mod(Poly{0, 1}, f, p);
    while (e) {
      if (e & 1) result = mulmod(result, base, f, p);
      base = mulmod(base, base, f, p);
      e >>= 1;
    }
    return result;
  };
  if (powx(q - 1) != Poly{1}) return false;
  for (const auto l : prime_factors(q - 1)) {
    if (powx((q - 1) / l) == Poly{1}) return false;
  }
  return true;
}

}  // namespace

Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  a = trim(std::move(a));
  const Poly mt = trim(m);
  if (mt.empty()) throw DesignError("polynomial modulus is zero");
  const std::size_t dm = mt.size() - 1;
  const std::uint32_t lead_inv = inv_mod(mt.back() % p, p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = (static_cast<std::uint64_t>(a.back()) * lead_inv) % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - (c * mt[i]) % p) % p);
    }
    a = trim(std::move(a));
  }
  return a;
}

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  const Poly f = trim(f_in);
  if (f.size() < 2) return false;
  const unsigned r = static_cast<unsigned>(f.size() - 1);
  if (r == 1) return true;
  // Trial division by every monic polynomial of degree 1..r/2.
  for (unsigned d = 1; d <= r / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly find_primitive(std::uint32_t p, unsigned r) {
  if (r == 1) return {0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < r; ++i) count *= p;
  for (std::uint64_t code = 1; code < count; ++code) {
    Poly f(r + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < r; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[r] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible(f, p) && x_is_primitive(f, p)) return f;
  }
  throw DesignError("no primitive polynomial found");
}

}  // namespace gfp

FieldCtx FieldCtx::make(std::uint32_t p, unsigned r, const PolyTable& table) {
  if (r == 0) throw DesignError("field degree must be >= 1");
  if (prime_factors(p).size() != 1 || prime_factors(p)[0] != p) throw DesignError(std::to_string(p) + " is not prime");
  Poly m = table.field_modulus(p, r).value_or(Poly{});
  if (m.empty()) m = gfp::find_primitive(p, r);
  return FieldCtx(p, r, std::move(m));
}

FieldCtx FieldCtx::for_order(std::uint64_t q, const PolyTable& table) {
  const auto pp = prime_power(q);
  if (!pp) throw DesignError(std::to_string(q) + " is not a prime power");
  return make(pp->first, pp->second, table);
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned r, Poly modulus, std::optional<FieldElement> generator)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
  if (r == 0) throw DesignError("field degree must be >= 1");
  if (prime_factors(p).size() != 1 || prime_factors(p)[0] != p) throw DesignError(std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  if (q > (1u << 20)) throw DesignError("field order exceeds 2^20");
  q_ = static_cast<std::uint32_t>(q);
  for (auto& c : modulus_) c %= p;
  modulus_ = gfp::trim(std::move(modulus_));
  if (modulus_.size() != r + 1 || modulus_.back() != 1) throw DesignError("field modulus must be monic of degree r");
  if (!gfp::is_irreducible(modulus_, p)) throw DesignError("field modulus is reducible over GF(" + std::to_string(p) + ")");

  const auto factors = prime_factors(q_ - 1);
  auto order_is_full = [&](FieldElement c) {
    if (c.code == 0) return false;
    if (q_ == 2) return c.code == 1;
    if (pow(c, q_ - 1).code != 1) return false;
    for (const auto l : factors) {
      if (pow(c, (q_ - 1) / l).code == 1) return false;
    }
    return true;
  };
  if (generator) {
    if (generator->code >= q_ || !order_is_full(*generator)) throw DesignError("supplied generator is not primitive");
    g_ = *generator;
  } else {
    g_ = FieldElement{0};
    for (std::uint32_t c = 1; c < q_; ++c) {
      if (order_is_full(FieldElement{c})) {
        g_ = FieldElement{c};
        break;
      }
    }
    if (g_.code == 0) throw DesignError("no primitive element found");
  }

  auto t = std::make_shared<Tables>();
  t->exp.resize(q_ - 1);
  t->log.assign(q_, -1);
  FieldElement x = one();
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    t->exp[i] = x.code;
    t->log[x.code] = static_cast<std::int32_t>(i);
    x = mul_poly(x, g_);
  }
  tables_ = std::move(t);
}

FieldElement FieldCtx::from_int(std::int64_t value) const {
  const auto pp = static_cast<std::int64_t>(p_);
  return FieldElement{static_cast<std::uint32_t>(((value % pp) + pp) % pp)};
}

FieldElement FieldCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  Poly reduced = gfp::mod(Poly(coeffs.begin(), coeffs.end()), modulus_, p_);
  std::uint32_t code = 0;
  for (std::size_t i = reduced.size(); i-- > 0;) code = code * p_ + reduced[i] % p_;
  return FieldElement{code};
}

Poly FieldCtx::coeffs(FieldElement a) const {
  Poly out(r_, 0);
  for (unsigned i = 0; i < r_; ++i) {
    out[i] = a.code % p_;
    a.code /= p_;
  }
  return out;
}

std::vector<FieldElement> FieldCtx::elements() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = FieldElement{i};
  return out;
}

FieldElement FieldCtx::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return FieldElement{a.code ^ b.code};
  std::uint32_t out = 0, place = 1;
  for (unsigned i = 0; i < r_; ++i) {
    out += ((a.code % p_ + b.code % p_) % p_) * place;
    a.code /= p_;
    b.code /= p_;
    place *= p_;
  }
  return FieldElement{out};
}

FieldElement FieldCtx::neg(FieldElement a) const {
  if (p_ == 2) return a;
  std::uint32_t out = 0, place = 1;
  for (unsigned i = 0; i < r_; ++i) {
    out += ((p_ - a.code % p_) % p_) * place;
    a.code /= p_;
    place *= p_;
  }
  return FieldElement{out};
}

FieldElement FieldCtx::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldCtx::mul_poly(FieldElement a, FieldElement b) const {
  const Poly ca = coeffs(a), cb = coeffs(b);
  Poly prod(2 * r_, 0);
  for (unsigned i = 0; i < r_; ++i) {
    for (unsigned j = 0; j < r_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
  }
  return from_coeffs(prod);
}

FieldElement FieldCtx::mul(FieldElement a, FieldElement b) const {
  if (!tables_) return mul_poly(a, b);
  if (a.code == 0 || b.code == 0) return zero();
  const auto& t = *tables_;
  const std::uint32_t s = static_cast<std::uint32_t>(t.log[a.code] + t.log[b.code]) % (q_ - 1);
  return FieldElement{t.exp[s]};
}

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.code == 0) throw DesignError("inversion of zero in " + describe());
  return exp(-static_cast<std::int64_t>(discrete_log(a)));
}

FieldElement FieldCtx::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one(), base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t FieldCtx::trace(FieldElement a) const {
  FieldElement sum = zero(), conj = a;
  for (unsigned i = 0; i < r_; ++i) {
    sum = add(sum, conj);
    conj = frobenius(conj);
  }
  if (sum.code >= p_) throw DesignError("trace left the prime field");
  return sum.code;
}

FieldElement FieldCtx::exp(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(q_ - 1);
  return FieldElement{tables_->exp[static_cast<std::size_t>(((k % m) + m) % m)]};
}

std::uint32_t FieldCtx::discrete_log(FieldElement a) const {
  if (a.code == 0 || a.code >= q_) throw DesignError("discrete log of zero");
  return static_cast<std::uint32_t>(tables_->log[a.code]);
}

std::vector<FieldElement> FieldCtx::mult_subgroup(std::uint32_t e) const {
  if (e == 0 || (q_ - 1) % e != 0) {
    throw DesignError("index " + std::to_string(e) + " does not divide q-1 = " + std::to_string(q_ - 1));
  }
  std::vector<FieldElement> out;
  for (std::uint32_t i = 0; i < (q_ - 1) / e; ++i) out.push_back(exp(static_cast<std::int64_t>(e) * i));
  return out;
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (r_ > 1) os << '^' << r_;
  os << ')';
  return os.str();
}

}  // namespace designforge
