#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "designforge/poly_table.hpp"

namespace designforge {

// Element of GF(p^r) in polynomial basis. The code packs the coefficient
// vector as base-p digits, constant term least significant.
struct FieldElement {
  std::uint32_t code = 0;

  auto operator<=>(const FieldElement&) const = default;
};

// GF(p^r) with a verified irreducible modulus and primitive element g.
// Exponent and logarithm tables are shared between copies; the context is
// immutable after construction. q is limited to 2^20.
class FieldCtx {
 public:
  // Modulus from the table (then deterministic search), generator by search.
  static FieldCtx make(std::uint32_t p, unsigned r, const PolyTable& table = PolyTable::builtin());
  // Same for a prime power q; throws when q is not a prime power.
  static FieldCtx for_order(std::uint64_t q, const PolyTable& table = PolyTable::builtin());

  // Verifies irreducibility; searches the least primitive code unless a
  // generator is supplied (which is then verified).
  FieldCtx(std::uint32_t p, unsigned r, Poly modulus, std::optional<FieldElement> generator = std::nullopt);

  std::uint32_t p() const { return p_; }
  unsigned r() const { return r_; }
  std::uint32_t q() const { return q_; }
  const Poly& modulus() const { return modulus_; }
  FieldElement generator() const { return g_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement from_int(std::int64_t value) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  Poly coeffs(FieldElement a) const;
  std::vector<FieldElement> elements() const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement frobenius(FieldElement a) const { return pow(a, p_); }

  // Absolute trace into the prime field, returned as an integer in [0, p).
  std::uint32_t trace(FieldElement a) const;

  // g^k for any integer k.
  FieldElement exp(std::int64_t k) const;
  // i with g^i = a, 0 <= i < q-1.
  std::uint32_t discrete_log(FieldElement a) const;

  // {g^(e*i) : 0 <= i < (q-1)/e}, in order of increasing i.
  std::vector<FieldElement> mult_subgroup(std::uint32_t e) const;

  std::string describe() const;

 private:
  FieldElement mul_poly(FieldElement a, FieldElement b) const;

  struct Tables {
    std::vector<std::uint32_t> exp;
    std::vector<std::int32_t> log;
  };

  std::uint32_t p_;
  unsigned r_;
  std::uint32_t q_;
  Poly modulus_;
  FieldElement g_;
  std::shared_ptr<const Tables> tables_;
};

// Polynomial helpers over GF(p); polynomials are coefficient lists, lowest
// degree first, without trailing zeros.
namespace gfp {
Poly trim(Poly a);
Poly mod(Poly a, const Poly& m, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);
// Smallest (by coefficient code) monic polynomial of degree r over GF(p)
// that is irreducible with x primitive.
Poly find_primitive(std::uint32_t p, unsigned r);
}  // namespace gfp

// Prime factorisation by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// (p, r) with q = p^r, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q);
// Integer square root when v is a perfect square.
std::optional<std::uint64_t> exact_sqrt(std::uint64_t v);

}  // namespace designforge
