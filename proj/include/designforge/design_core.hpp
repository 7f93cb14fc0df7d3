#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "designforge/abelian_group.hpp"

namespace designforge {

// A set of group elements, kept sorted and duplicate-free.
struct Block {
  std::vector<GroupElement> elements;

  // Sorts, and throws on duplicates or elements outside `group`.
  static Block make(const FiniteAbelianGroup& group, std::vector<GroupElement> elements);
  std::size_t size() const { return elements.size(); }
  bool contains(const GroupElement& a) const;
  bool operator==(const Block&) const = default;
};

// Parameters of a (G, N, K, lambda, mu)-DDF: lambda is the difference count on
// N \ {0}, mu the count on G \ N. For a plain DF (N trivial) the single
// index lives in mu and lambda is unset.
struct DesignParams {
  std::optional<std::int64_t> lambda;
  std::optional<std::int64_t> mu;
  std::vector<std::size_t> block_sizes;  // empty means "not declared"
};

class DifferenceFamily {
 public:
  DifferenceFamily(FiniteAbelianGroup group, Subgroup forbidden, std::vector<Block> blocks,
                   DesignParams declared = {}, nlohmann::json provenance = nlohmann::json::object());

  // DF with trivial forbidden subgroup and declared index `lambda`.
  static DifferenceFamily plain(FiniteAbelianGroup group, std::vector<Block> blocks,
                                std::optional<std::int64_t> lambda = std::nullopt,
                                nlohmann::json provenance = nlohmann::json::object());

  const FiniteAbelianGroup& group() const { return group_; }
  const Subgroup& forbidden() const { return forbidden_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const DesignParams& declared() const { return declared_; }
  const nlohmann::json& provenance() const { return provenance_; }
  bool is_plain() const { return forbidden_.is_trivial(); }

  void set_declared(DesignParams p) { declared_ = std::move(p); }
  void set_provenance(nlohmann::json p) { provenance_ = std::move(p); }
  // Replaces one block; used by perturbation tests and search.
  void replace_block(std::size_t i, Block b);

 private:
  FiniteAbelianGroup group_;
  Subgroup forbidden_;
  std::vector<Block> blocks_;
  DesignParams declared_;
  nlohmann::json provenance_;
};

// Number of ordered pairs (x, y) inside a common block with x - y = d.
// Throws for d = identity.
std::int64_t theta(const DifferenceFamily& family, const GroupElement& d);
// theta for every element, indexed by group index (entry 0 is the sum of
// k(k-1) contributions at the identity and is always 0).
std::vector<std::int64_t> theta_table(const DifferenceFamily& family);

struct Witness {
  GroupElement difference;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
  std::string region;  // "N\\{0}", "G\\N", or "block sizes"
};

struct VerificationReport {
  bool ok = false;
  std::optional<std::int64_t> lambda;  // realized on N \ {0}
  std::optional<std::int64_t> mu;      // realized on G \ N
  std::vector<std::size_t> block_sizes;
  bool counting_identity = false;
  std::optional<Witness> witness;
  std::vector<std::string> notes;

  std::string summary() const;
};

// Exhaustive check of the DDF condition, against the declared parameters
// when they are set.
VerificationReport verify(const DifferenceFamily& family);

// All |G| * b translates D + x, block-major, x in group-index order.
std::vector<Block> develop(const DifferenceFamily& family);

struct PairWitness {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
  bool same_group = false;
};

struct GddReport {
  bool ok = false;
  std::optional<std::int64_t> lambda;  // same-group pairs
  std::optional<std::int64_t> mu;      // cross-group pairs
  std::optional<PairWitness> witness;

  std::string summary() const;
};

// Points are 0..points-1. Throws if `groups` does not partition the points.
GddReport verify_gdd(std::size_t points, const std::vector<std::vector<std::uint32_t>>& blocks,
                     const std::vector<std::vector<std::uint32_t>>& groups,
                     std::optional<std::int64_t> lambda = std::nullopt, std::optional<std::int64_t> mu = std::nullopt);

struct DevelopedDesign {
  std::size_t points = 0;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::vector<std::uint32_t>> groups;
};

// Development with points labelled by group index and the cosets of N as groups.
DevelopedDesign develop_as_gdd(const DifferenceFamily& family);

struct RotationalDesign {
  std::size_t points = 0;  // v + 1; the point v is infinity
  std::vector<std::vector<std::uint32_t>> blocks;
  GddReport report;
};

// Develops a (Z_v, {lambda, (lambda+1)^(e-1)}, lambda)-DF and adds infinity to
// the translates of the size-lambda block; the result is checked as a
// 2-(v+1, lambda+1, lambda) design. Throws on other shapes and on lambda = 0.
RotationalDesign one_rotational_design(const DifferenceFamily& family);

}  // namespace designforge
