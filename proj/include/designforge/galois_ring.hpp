#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "designforge/abelian_group.hpp"
#include "designforge/finite_field.hpp"

namespace designforge {

// Element of GR(4,n) as a degree < n polynomial over Z_4; two bits per
// coefficient, constant term in the lowest bits.
struct RingElement {
  std::uint32_t code = 0;

  auto operator<=>(const RingElement&) const = default;
};

// alpha = xi^a0_exponent * (1 + 2*a1) with a1 in the Teichmuller set.
struct UnitDecomposition {
  std::uint32_t a0_exponent = 0;
  RingElement a0;
  RingElement a1;
};

// GR(4,n) = Z_4[x]/(g(x)) for a primitive basic irreducible g. Holds the root
// xi, the Teichmuller set T_n = [0, 1, xi, ..., xi^(2^n-2)] and the residue
// field GF(2^n) whose modulus is g mod 2 and whose generator is xi-bar.
class RingCtx {
 public:
  // Graeffe lift: g(x^2) = (-1)^n h(x) h(-x) mod 4. Throws if h is not
  // primitive over GF(2).
  static RingCtx lift_primitive(const Poly& h);
  // Modulus from the table, otherwise the lift of the GF(2) table entry.
  static RingCtx make(unsigned n, const PolyTable& table = PolyTable::builtin());

  // Verifies that modulus mod 2 is primitive and that xi has order 2^n - 1.
  explicit RingCtx(Poly modulus);

  unsigned n() const { return n_; }
  const Poly& modulus() const { return modulus_; }
  std::uint32_t size() const { return 1u << (2 * n_); }
  std::uint32_t teichmuller_order() const { return (1u << n_) - 1; }  // |T_n*|
  const FieldCtx& residue_field() const { return *residue_; }

  RingElement zero() const { return {0}; }
  RingElement one() const { return from_int(1); }
  RingElement two() const { return from_int(2); }
  RingElement xi() const { return xi_; }
  RingElement from_int(std::int64_t v) const;
  RingElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  Poly coeffs(RingElement a) const;
  std::vector<RingElement> elements() const;

  RingElement add(RingElement a, RingElement b) const;
  RingElement sub(RingElement a, RingElement b) const;
  RingElement neg(RingElement a) const;
  RingElement mul(RingElement a, RingElement b) const;
  RingElement inv(RingElement a) const;
  RingElement pow(RingElement a, std::uint64_t e) const;
  bool is_unit(RingElement a) const { return reduce(a).code != 0; }

  // T_n in the order [0, 1, xi, ..., xi^(2^n-2)].
  const std::vector<RingElement>& teichmuller() const { return *teich_; }
  // xi^k for any integer k.
  RingElement teich_power(std::int64_t k) const;
  // Position of a in the T_n list, or nullopt if a is not Teichmuller.
  std::optional<std::uint32_t> teich_index(RingElement a) const;
  // The unique Teichmuller element reducing to a-bar.
  RingElement teich_lift(FieldElement a) const;

  // a^(2^n); lands in T_n, kernel on units is U_n.
  RingElement tau(RingElement a) const;
  UnitDecomposition unit_decompose(RingElement a) const;
  RingElement recompose(const UnitDecomposition& d) const;
  // 1 + 2b for the Teichmuller lift b of b-bar.
  RingElement principal_unit(FieldElement b) const;

  FieldElement reduce(RingElement a) const;

  // Digits of the coefficients from the top degree down, e.g. "103" for
  // xi^2 + 3 when n = 3.
  std::string to_digits(RingElement a) const;
  RingElement from_digits(const std::string& digits) const;

 private:
  unsigned n_ = 0;
  Poly modulus_;
  RingElement xi_;
  std::shared_ptr<const FieldCtx> residue_;
  std::shared_ptr<const std::vector<RingElement>> teich_;
  std::shared_ptr<const std::vector<std::uint32_t>> teich_by_residue_;  // residue code -> ring code
};

// Greedy GF(2)-basis of the span of `vectors` (elements of a field of
// characteristic 2): candidates in increasing code order, kept when
// independent of those already taken.
std::vector<FieldElement> gf2_greedy_basis(std::span<const FieldElement> vectors);

// Coordinates of v in `basis` over GF(2); nullopt when v is outside the span.
std::optional<std::vector<std::int64_t>> gf2_coordinates(std::span<const FieldElement> basis, FieldElement v);

// phi: R_n* -> Z_{2^n-1} x Z_2^n, xi^i(1+2b) -> (i, coordinates of b-bar).
// Keys of the table are ring codes. Throws if `basis` is not a basis.
GroupIso unit_group_iso(const RingCtx& ctx, std::span<const FieldElement> basis);

}  // namespace designforge
