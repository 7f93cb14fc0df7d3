#include "designforge/abelian_group.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "designforge/error.hpp"

namespace designforge {

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw DesignError("group needs at least one modulus");
  strides_.assign(moduli_.size(), 1);
  order_ = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    if (moduli_[i] < 1) throw DesignError("group modulus must be >= 1");
    strides_[i] = order_;
    order_ *= static_cast<std::uint64_t>(moduli_[i]);
  }
}

GroupElement FiniteAbelianGroup::identity() const {
  return GroupElement{std::vector<std::int64_t>(moduli_.size(), 0)};
}

bool FiniteAbelianGroup::contains(const GroupElement& a) const {
  if (a.coords.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (a.coords[i] < 0 || a.coords[i] >= moduli_[i]) return false;
  }
  return true;
}

void FiniteAbelianGroup::require_member(const GroupElement& a) const {
  if (!contains(a)) throw DesignError("element " + a.to_string() + " is not in group " + to_string());
}

GroupElement FiniteAbelianGroup::make(std::vector<std::int64_t> coords) const {
  if (coords.size() != moduli_.size()) throw DesignError("element rank does not match group " + to_string());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    coords[i] %= moduli_[i];
    if (coords[i] < 0) coords[i] += moduli_[i];
  }
  return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  require_member(a);
  require_member(b);
  GroupElement r = a;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    r.coords[i] += b.coords[i];
    if (r.coords[i] >= moduli_[i]) r.coords[i] -= moduli_[i];
  }
  return r;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  require_member(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (r.coords[i] != 0) r.coords[i] = moduli_[i] - r.coords[i];
  }
  return r;
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
  return add(a, negate(b));
}

std::uint64_t FiniteAbelianGroup::index_of(const GroupElement& a) const {
  require_member(a);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx += static_cast<std::uint64_t>(a.coords[i]) * strides_[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(std::uint64_t index) const {
  if (index >= order_) throw DesignError("group index out of range");
  GroupElement r{std::vector<std::int64_t>(moduli_.size())};
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    r.coords[i] = static_cast<std::int64_t>(index / strides_[i]);
    index %= strides_[i];
  }
  return r;
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (std::uint64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

std::uint64_t FiniteAbelianGroup::add_index(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const auto m = static_cast<std::uint64_t>(moduli_[i]);
    std::uint64_t c = a / strides_[i] + b / strides_[i];
    a %= strides_[i];
    b %= strides_[i];
    if (c >= m) c -= m;
    r += c * strides_[i];
  }
  return r;
}

std::uint64_t FiniteAbelianGroup::neg_index(std::uint64_t a) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const auto m = static_cast<std::uint64_t>(moduli_[i]);
    const std::uint64_t c = a / strides_[i];
    a %= strides_[i];
    r += (c == 0 ? 0 : m - c) * strides_[i];
  }
  return r;
}

std::uint64_t FiniteAbelianGroup::sub_index(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const auto m = static_cast<std::uint64_t>(moduli_[i]);
    const std::uint64_t ca = a / strides_[i];
    const std::uint64_t cb = b / strides_[i];
    a %= strides_[i];
    b %= strides_[i];
    r += (ca >= cb ? ca - cb : ca + m - cb) * strides_[i];
  }
  return r;
}

std::string FiniteAbelianGroup::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) os << 'x';
    os << 'Z' << moduli_[i];
  }
  return os.str();
}

Subgroup::Subgroup(FiniteAbelianGroup parent, std::vector<GroupElement> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)), mask_(parent_.order(), false) {
  for (const auto& e : elements_) mask_[parent_.index_of(e)] = true;
}

Subgroup Subgroup::from_elements(const FiniteAbelianGroup& parent, std::vector<GroupElement> elements) {
  for (const auto& e : elements) {
    if (!parent.contains(e)) throw DesignError("subgroup element " + e.to_string() + " outside " + parent.to_string());
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup s(parent, std::move(elements));
  if (!s.contains_index(0)) throw DesignError("not a subgroup: identity missing");
  for (const auto& a : s.elements_) {
    for (const auto& b : s.elements_) {
      if (!s.contains_index(parent.sub_index(parent.index_of(a), parent.index_of(b)))) {
        throw DesignError("not a subgroup: " + a.to_string() + " - " + b.to_string() + " missing");
      }
    }
  }
  return s;
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& parent) { return Subgroup(parent, {parent.identity()}); }

Subgroup Subgroup::whole(const FiniteAbelianGroup& parent) { return Subgroup(parent, parent.elements()); }

bool Subgroup::contains(const GroupElement& a) const { return parent_.contains(a) && mask_[parent_.index_of(a)]; }

Subgroup subgroup_generated(const FiniteAbelianGroup& group, std::span<const GroupElement> generators) {
  std::vector<bool> seen(group.order(), false);
  std::vector<std::uint64_t> frontier{0};
  seen[0] = true;
  std::vector<std::uint64_t> gens;
  for (const auto& g : generators) gens.push_back(group.index_of(g));
  while (!frontier.empty()) {
    const std::uint64_t x = frontier.back();
    frontier.pop_back();
    for (const auto g : gens) {
      const std::uint64_t y = group.add_index(x, g);
      if (!seen[y]) {
        seen[y] = true;
        frontier.push_back(y);
      }
    }
  }
  std::vector<GroupElement> elems;
  for (std::uint64_t i = 0; i < group.order(); ++i) {
    if (seen[i]) elems.push_back(group.element_at(i));
  }
  // Finite closure under addition is already a subgroup.
  return Subgroup::from_elements(group, std::move(elems));
}

std::vector<Coset> cosets(const FiniteAbelianGroup& group, const Subgroup& subgroup) {
  if (!(subgroup.parent() == group)) throw DesignError("subgroup belongs to a different group");
  std::vector<bool> seen(group.order(), false);
  std::vector<Coset> out;
  for (std::uint64_t i = 0; i < group.order(); ++i) {
    if (seen[i]) continue;
    Coset c;
    c.representative = group.element_at(i);
    for (const auto& n : subgroup.elements()) {
      const std::uint64_t j = group.add_index(i, group.index_of(n));
      seen[j] = true;
      c.members.push_back(group.element_at(j));
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Coset> cosets_random_representatives(const FiniteAbelianGroup& group, const Subgroup& subgroup,
                                                 std::mt19937_64& rng) {
  auto out = cosets(group, subgroup);
  for (auto& c : out) c.representative = c.members[uniform_below(rng, c.members.size())];
  return out;
}

const GroupElement& GroupIso::operator()(std::uint64_t key) const {
  auto it = forward.find(key);
  if (it == forward.end()) throw DesignError("key " + std::to_string(key) + " outside iso domain " + domain);
  return it->second;
}

std::map<GroupElement, std::uint64_t> GroupIso::inverse() const {
  std::map<GroupElement, std::uint64_t> inv;
  for (const auto& [k, v] : forward) inv.emplace(v, k);
  return inv;
}

std::string verify_group_iso(const GroupIso& iso,
                             const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& multiply,
                             std::span<const std::uint64_t> right_factors) {
  if (iso.forward.size() != iso.codomain.order()) {
    return "domain size " + std::to_string(iso.forward.size()) + " != codomain order " +
           std::to_string(iso.codomain.order());
  }
  std::set<GroupElement> images;
  for (const auto& [k, v] : iso.forward) {
    if (!iso.codomain.contains(v)) return "image of " + std::to_string(k) + " outside codomain";
    if (!images.insert(v).second) return "not injective at image " + v.to_string();
  }
  std::vector<std::uint64_t> ys(right_factors.begin(), right_factors.end());
  if (ys.empty()) {
    for (const auto& kv : iso.forward) ys.push_back(kv.first);
  }
  for (const auto& [x, fx] : iso.forward) {
    for (const auto y : ys) {
      const std::uint64_t xy = multiply(x, y);
      auto it = iso.forward.find(xy);
      if (it == iso.forward.end()) return "product of " + std::to_string(x) + "," + std::to_string(y) + " leaves domain";
      if (!(it->second == iso.codomain.add(fx, iso(y)))) {
        return "phi(" + std::to_string(x) + "*" + std::to_string(y) + ") != phi(x)+phi(y)";
      }
    }
  }
  return {};
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace designforge
