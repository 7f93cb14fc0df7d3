#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "designforge/design_core.hpp"
#include "designforge/finite_field.hpp"
#include "designforge/galois_ring.hpp"

namespace designforge {

// Ring arithmetic on integer element codes. Implementations keep a reference
// to their context, which must outlive them.
class RingOps {
 public:
  virtual ~RingOps() = default;
  virtual std::uint32_t size() const = 0;
  virtual std::uint32_t one() const = 0;
  virtual std::uint32_t add(std::uint32_t a, std::uint32_t b) const = 0;
  virtual std::uint32_t sub(std::uint32_t a, std::uint32_t b) const = 0;
  virtual std::uint32_t mul(std::uint32_t a, std::uint32_t b) const = 0;
  virtual std::uint32_t inv(std::uint32_t a) const = 0;
  virtual bool is_unit(std::uint32_t a) const = 0;
  // The additive group R+ and the coordinates of an element in it.
  virtual FiniteAbelianGroup additive_group() const = 0;
  virtual GroupElement additive_coords(std::uint32_t a) const = 0;
};

class FieldRingOps final : public RingOps {
 public:
  explicit FieldRingOps(const FieldCtx& ctx) : ctx_(ctx) {}
  std::uint32_t size() const override { return ctx_.q(); }
  std::uint32_t one() const override { return 1; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const override { return ctx_.add({a}, {b}).code; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const override { return ctx_.sub({a}, {b}).code; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const override { return ctx_.mul({a}, {b}).code; }
  std::uint32_t inv(std::uint32_t a) const override { return ctx_.inv({a}).code; }
  bool is_unit(std::uint32_t a) const override { return a != 0; }
  FiniteAbelianGroup additive_group() const override;
  GroupElement additive_coords(std::uint32_t a) const override;

 private:
  const FieldCtx& ctx_;
};

class GaloisRingOps final : public RingOps {
 public:
  explicit GaloisRingOps(const RingCtx& ctx) : ctx_(ctx) {}
  std::uint32_t size() const override { return ctx_.size(); }
  std::uint32_t one() const override { return ctx_.one().code; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const override { return ctx_.add({a}, {b}).code; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const override { return ctx_.sub({a}, {b}).code; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const override { return ctx_.mul({a}, {b}).code; }
  std::uint32_t inv(std::uint32_t a) const override { return ctx_.inv({a}).code; }
  bool is_unit(std::uint32_t a) const override { return ctx_.is_unit({a}); }
  FiniteAbelianGroup additive_group() const override;
  GroupElement additive_coords(std::uint32_t a) const override;

 private:
  const RingCtx& ctx_;
};

// ---------------------------------------------------------------------------
// Generic construction: blocks y^-1 (D_i - 1) ∩ N of the unit subgroup N.

struct LemmaBlock {
  std::size_t source = 0;            // index i of D_i
  std::uint32_t representative = 0;  // y in S
  std::vector<std::uint32_t> elements;
};

struct LemmaResult {
  std::vector<LemmaBlock> blocks;  // source-major, then in S order
  // lambda_t = sum_i |D_i ∩ (D_i - t + 1) ∩ (I + 1)| for t in N \ {1}.
  std::map<std::uint32_t, std::int64_t> lambda_t;
  std::int64_t lambda = 0;  // index of the input DF in R+
};

// Checks that N is a subgroup of R*, that S is a complete system of
// representatives of R*/N, that every D_i is fixed by N and that `family`
// is a DF in R+. Throws DesignError naming the failed precondition.
LemmaResult lemma21(const RingOps& ring, const std::vector<std::vector<std::uint32_t>>& family,
                    std::span<const std::uint32_t> subgroup, std::span<const std::uint32_t> representatives);

// |{(x, y) in B x B : x y^-1 = t}| summed over blocks, in the ring.
std::int64_t multiplicative_theta(const RingOps& ring, const std::vector<std::vector<std::uint32_t>>& blocks,
                                  std::uint32_t t);

// ---------------------------------------------------------------------------
// Cyclotomic difference sets in GF(q)+.

struct CyclotomicDS {
  FieldCtx ctx;
  std::uint32_t e = 2;
  bool with_zero = false;
  std::vector<FieldElement> elements;  // sorted by code
  std::int64_t k = 0;
  std::int64_t lambda = 0;
};

// Diagnostic naming the failed condition, or nullopt when (q, e, with_zero)
// is admissible. Without zero: e=2, q = 3 mod 4; e=4, q = 1+4t^2; e=8,
// q = 9+64a^2 = 1+8b^2. With zero: e=2, q = 3 mod 4; e=4, q = 9+4t^2;
// e=8, q = 441+64a^2 = 49+8b^2. t, a, b odd throughout.
std::optional<std::string> cyclotomic_condition_failure(std::uint64_t q, std::uint32_t e, bool with_zero);

CyclotomicDS cyclotomic_ds(const FieldCtx& ctx, std::uint32_t e, bool with_zero);

struct FieldFamily {
  DifferenceFamily family;  // over Z_{(q-1)/e} via g^(e k) -> k
  std::vector<std::vector<FieldElement>> field_blocks;
  std::vector<FieldElement> representatives;
  std::map<std::uint32_t, std::int64_t> lambda_t;
};

// (N-1) ∩ N and (N+1) ∩ N for the nonzero squares N, q = 3 mod 4, q >= 7.
FieldFamily szekeres(const FieldCtx& ctx);
// Blocks g^-i (D - 1) ∩ N, 0 <= i < e, for D = N (prop22) or D = N ∪ {0}
// (prop23), N the index-e subgroup of GF(q)*.
FieldFamily prop22_family(const FieldCtx& ctx, std::uint32_t e);
FieldFamily prop23_family(const FieldCtx& ctx, std::uint32_t e);

// ---------------------------------------------------------------------------
// GR(4,n).

// Least exponent k with Tr(xi-bar^k) = 0. Throws when n = 1.
FieldElement default_trace_zero_u(const RingCtx& ctx);

struct Gr4Data {
  RingCtx ctx;
  FieldElement u;
  std::vector<FieldElement> E;        // {x : Tr(u x) = 0}, sorted
  std::vector<FieldElement> E_basis;  // greedy GF(2) basis of E
  std::vector<RingElement> D;         // {a(1+2b) : a in T_n*, b-bar in E}, sorted
};

Gr4Data gr4_data(const RingCtx& ctx, FieldElement u);

// N = <xi^cyclic_step> x {1+2b : b-bar in span(principal_generators)}.
// Every subgroup of D has this shape. nullopt generators means all of E.
struct Gr4Subgroup {
  std::uint32_t cyclic_step = 1;
  std::optional<std::vector<FieldElement>> principal_generators;
};

struct Gr4Family {
  DifferenceFamily family;  // over Z_{(2^n-1)/step} x Z_2^k, forbidden L = {0} x Z_2^k
  std::vector<std::vector<RingElement>> ring_blocks;
  std::vector<RingElement> representatives;
  std::map<std::uint32_t, std::int64_t> lambda_t;
  std::vector<RingElement> N;                 // sorted
  std::vector<FieldElement> principal_basis;  // basis used for the Z_2^k coordinates
  GroupIso phi;                               // N -> ambient group
};

// Teichmuller indices b (position in T_n) with b-bar outside E, in order:
// the admissible choices for the second representative 1+2b when N = D.
std::vector<std::uint32_t> admissible_y_indices(const Gr4Data& data);

// DDF from the difference set D. `y_index` replaces the representative of
// the coset of U_n containing 1+2T_n[y_index].
Gr4Family gr4_ddf(const RingCtx& ctx, FieldElement u, const Gr4Subgroup& subgroup = {},
                  std::optional<std::uint32_t> y_index = std::nullopt);
// Same, from the difference set D ∪ 2R_n.
Gr4Family gr4_ddf_union(const RingCtx& ctx, FieldElement u, const Gr4Subgroup& subgroup = {},
                        std::optional<std::uint32_t> y_index = std::nullopt);

struct TeichDifferenceSet {
  DifferenceFamily family;  // single block in Z_{2^n-1} via xi^k -> k
  std::vector<RingElement> ring_elements;
};

// (D + 2) ∩ T_n*.
TeichDifferenceSet prop34_ds(const RingCtx& ctx, FieldElement u);

struct Prop33Report {
  bool first_symmetric = false;  // D1 = -D1
  bool second_skew = false;      // D2 ∩ -D2 = {}
  bool coset_balanced = false;   // |D_i ∩ ({j} x Z_2^(n-1))| = 0 (j=0), 2^(n-2) (j≠0)
  std::vector<std::string> witnesses;

  bool ok() const { return first_symmetric && second_skew && coset_balanced; }
};

// Checks a two-block family over Z_{2^n-1} x Z_2^(n-1).
Prop33Report prop33_check(const DifferenceFamily& family);

}  // namespace designforge
