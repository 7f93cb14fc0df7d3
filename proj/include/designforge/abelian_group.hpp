#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace designforge {

// Element of Z_{m1} x ... x Z_{mk}, stored as reduced residues.
struct GroupElement {
  std::vector<std::int64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;

  std::string to_string() const;
};

// Z_{m1} x ... x Z_{mk}, written additively. Elements are enumerated in
// lexicographic order of their coordinates; index_of/element_at follow that
// order, so index arithmetic and element arithmetic agree.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<std::int64_t>{1}) {}
  explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::uint64_t order() const { return order_; }

  GroupElement identity() const;
  bool contains(const GroupElement& a) const;
  // Reduces arbitrary integers into the group.
  GroupElement make(std::vector<std::int64_t> coords) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;

  std::uint64_t index_of(const GroupElement& a) const;
  GroupElement element_at(std::uint64_t index) const;
  std::vector<GroupElement> elements() const;

  std::uint64_t add_index(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub_index(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg_index(std::uint64_t a) const;

  bool operator==(const FiniteAbelianGroup& other) const { return moduli_ == other.moduli_; }

  std::string to_string() const;

 private:
  void require_member(const GroupElement& a) const;

  std::vector<std::int64_t> moduli_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
};

// Subgroup of a FiniteAbelianGroup held as an explicit sorted element list.
class Subgroup {
 public:
  // Throws DesignError unless `elements` is a subgroup of `parent`.
  static Subgroup from_elements(const FiniteAbelianGroup& parent, std::vector<GroupElement> elements);
  static Subgroup trivial(const FiniteAbelianGroup& parent);
  static Subgroup whole(const FiniteAbelianGroup& parent);

  const FiniteAbelianGroup& parent() const { return parent_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const GroupElement& a) const;
  bool contains_index(std::uint64_t index) const { return mask_[index]; }
  bool is_trivial() const { return elements_.size() == 1; }

  bool operator==(const Subgroup& other) const {
    return parent_ == other.parent_ && elements_ == other.elements_;
  }

 private:
  Subgroup(FiniteAbelianGroup parent, std::vector<GroupElement> elements);

  FiniteAbelianGroup parent_;
  std::vector<GroupElement> elements_;
  std::vector<bool> mask_;
};

struct Coset {
  GroupElement representative;
  std::vector<GroupElement> members;  // sorted
};

Subgroup subgroup_generated(const FiniteAbelianGroup& group, std::span<const GroupElement> generators);

// Partition of G into cosets of N, representatives lexicographically smallest,
// cosets ordered by representative.
std::vector<Coset> cosets(const FiniteAbelianGroup& group, const Subgroup& subgroup);

// Same partition with a uniformly random member chosen as each representative.
std::vector<Coset> cosets_random_representatives(const FiniteAbelianGroup& group,
                                                 const Subgroup& subgroup, std::mt19937_64& rng);

// An isomorphism from a finite multiplicative structure (elements keyed by an
// integer code) onto a FiniteAbelianGroup, held as an explicit table.
struct GroupIso {
  std::string domain;
  FiniteAbelianGroup codomain;
  std::map<std::uint64_t, GroupElement> forward;

  const GroupElement& operator()(std::uint64_t key) const;
  std::map<GroupElement, std::uint64_t> inverse() const;
};

// Bijectivity and homomorphism check; `multiply` is the domain operation on
// keys. phi(x*y) = phi(x)+phi(y) is tested for every x against every y in
// `right_factors`, or against the whole domain when that list is empty (a
// generating set suffices for a proof). Returns an empty string on success,
// otherwise a witness.
std::string verify_group_iso(const GroupIso& iso,
                             const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& multiply,
                             std::span<const std::uint64_t> right_factors = {});

// Unbiased integer in [0, bound) drawn directly from the engine so that
// sequences are identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace designforge
