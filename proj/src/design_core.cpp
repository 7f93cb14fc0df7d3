#include "designforge/design_core.hpp"

#include <algorithm>
#include <sstream>

#include "designforge/error.hpp"

namespace designforge {

Block Block::make(const FiniteAbelianGroup& group, std::vector<GroupElement> elements) {
  for (const auto& e : elements) {
    if (!group.contains(e)) throw DesignError("block element " + e.to_string() + " outside " + group.to_string());
  }
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw DesignError("block has repeated element");
  }
  return Block{std::move(elements)};
}

bool Block::contains(const GroupElement& a) const { return std::binary_search(elements.begin(), elements.end(), a); }

DifferenceFamily::DifferenceFamily(FiniteAbelianGroup group, Subgroup forbidden, std::vector<Block> blocks,
                                   DesignParams declared, nlohmann::json provenance)
    : group_(std::move(group)),
      forbidden_(std::move(forbidden)),
      blocks_(std::move(blocks)),
      declared_(std::move(declared)),
      provenance_(std::move(provenance)) {
  if (!(forbidden_.parent() == group_)) throw DesignError("forbidden subgroup is not a subgroup of the ambient group");
  for (auto& b : blocks_) b = Block::make(group_, std::move(b.elements));
}

DifferenceFamily DifferenceFamily::plain(FiniteAbelianGroup group, std::vector<Block> blocks,
                                         std::optional<std::int64_t> lambda, nlohmann::json provenance) {
  Subgroup trivial = Subgroup::trivial(group);
  DesignParams p;
  p.mu = lambda;
  return DifferenceFamily(std::move(group), std::move(trivial), std::move(blocks), p, std::move(provenance));
}

void DifferenceFamily::replace_block(std::size_t i, Block b) {
  if (i >= blocks_.size()) throw DesignError("block index out of range");
  blocks_[i] = Block::make(group_, std::move(b.elements));
}

std::vector<std::int64_t> theta_table(const DifferenceFamily& family) {
  const auto& g = family.group();
  std::vector<std::int64_t> table(g.order(), 0);
  std::vector<std::uint64_t> idx;
  for (const auto& block : family.blocks()) {
    idx.clear();
    for (const auto& e : block.elements) idx.push_back(g.index_of(e));
    for (const auto x : idx) {
      for (const auto y : idx) {
        if (x != y) ++table[g.sub_index(x, y)];
      }
    }
  }
  return table;
}

std::int64_t theta(const DifferenceFamily& family, const GroupElement& d) {
  const auto& g = family.group();
  if (!g.contains(d)) throw DesignError("difference " + d.to_string() + " outside group");
  if (d == g.identity()) throw DesignError("theta is undefined at the identity");
  const std::uint64_t di = g.index_of(d);
  std::int64_t count = 0;
  for (const auto& block : family.blocks()) {
    for (const auto& x : block.elements) {
      for (const auto& y : block.elements) {
        if (g.sub_index(g.index_of(x), g.index_of(y)) == di) ++count;
      }
    }
  }
  return count;
}

namespace {

std::string join_sizes(const std::vector<std::size_t>& sizes) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
  os << '}';
  return os.str();
}

}  // namespace

VerificationReport verify(const DifferenceFamily& family) {
  const auto& g = family.group();
  const auto& n = family.forbidden();
  const auto& declared = family.declared();
  VerificationReport report;
  const auto table = theta_table(family);

  for (const auto& b : family.blocks()) report.block_sizes.push_back(b.size());
  for (std::size_t i = 0; i < family.blocks().size(); ++i) {
    if (family.blocks()[i].size() <= 1) {
      report.notes.push_back("block " + std::to_string(i) + " has size " + std::to_string(family.blocks()[i].size()) +
                             " and contributes no differences");
    }
  }

  auto scan = [&](bool inside, std::optional<std::int64_t> expected, const char* region) -> std::optional<std::int64_t> {
    std::optional<std::int64_t> reference = expected;
    bool constant = true;
    for (std::uint64_t d = 1; d < g.order(); ++d) {
      if (n.contains_index(d) != inside) continue;
      if (!reference) reference = table[d];
      if (table[d] != *reference) {
        constant = false;
        if (!report.witness) report.witness = Witness{g.element_at(d), *reference, table[d], region};
      }
    }
    if (!constant) return std::nullopt;
    // An empty region has no realized value even if one was declared.
    bool any = false;
    for (std::uint64_t d = 1; d < g.order() && !any; ++d) any = n.contains_index(d) == inside;
    return any ? reference : std::nullopt;
  };
  report.lambda = scan(true, n.is_trivial() ? std::nullopt : declared.lambda, "N\\{0}");
  report.mu = scan(false, declared.mu, "G\\N");

  if (!declared.block_sizes.empty()) {
    auto want = declared.block_sizes, got = report.block_sizes;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got && !report.witness) {
      report.witness = Witness{g.identity(), static_cast<std::int64_t>(want.size()), static_cast<std::int64_t>(got.size()),
                               "block sizes"};
      report.notes.push_back("declared block sizes " + join_sizes(want) + " but realized " + join_sizes(got));
    }
  }

  std::int64_t lhs = 0;
  for (const auto k : report.block_sizes) lhs += static_cast<std::int64_t>(k) * (static_cast<std::int64_t>(k) - 1);
  const auto inner = static_cast<std::int64_t>(n.order()) - 1;
  const auto outer = static_cast<std::int64_t>(g.order() - n.order());
  std::int64_t rhs = report.lambda.value_or(0) * inner + report.mu.value_or(0) * outer;
  report.counting_identity = !report.witness && lhs == rhs;
  report.ok = !report.witness && report.counting_identity;
  return report;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  if (!ok) {
    os << "FAILED";
    if (witness) {
      if (witness->region == "block sizes") {
        os << ": block sizes differ from declaration";
      } else {
        os << ": theta" << witness->difference.to_string() << " = " << witness->actual << ", expected " << witness->expected
           << " on " << witness->region;
      }
    } else if (!counting_identity) {
      os << ": counting identity violated";
    }
    return os.str();
  }
  auto sizes = block_sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  os << "verified K=" << join_sizes(sizes);
  if (lambda) os << " lambda=" << *lambda;
  if (mu) os << " mu=" << *mu;
  return os.str();
}

std::vector<Block> develop(const DifferenceFamily& family) {
  const auto& g = family.group();
  std::vector<Block> out;
  out.reserve(family.blocks().size() * g.order());
  for (const auto& block : family.blocks()) {
    for (std::uint64_t x = 0; x < g.order(); ++x) {
      std::vector<GroupElement> shifted;
      shifted.reserve(block.size());
      for (const auto& e : block.elements) shifted.push_back(g.element_at(g.add_index(g.index_of(e), x)));
      out.push_back(Block::make(g, std::move(shifted)));
    }
  }
  return out;
}

GddReport verify_gdd(std::size_t points, const std::vector<std::vector<std::uint32_t>>& blocks,
                     const std::vector<std::vector<std::uint32_t>>& groups, std::optional<std::int64_t> lambda,
                     std::optional<std::int64_t> mu) {
  std::vector<std::int64_t> group_of(points, -1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (const auto p : groups[gi]) {
      if (p >= points) throw DesignError("group member outside point set");
      if (group_of[p] != -1) throw DesignError("groups overlap at point " + std::to_string(p));
      group_of[p] = static_cast<std::int64_t>(gi);
    }
  }
  if (std::find(group_of.begin(), group_of.end(), -1) != group_of.end()) throw DesignError("groups do not cover the point set");

  std::vector<std::int32_t> count(points * points, 0);
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= points) throw DesignError("block point outside point set");
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (i != j) ++count[b[i] * points + b[j]];
      }
    }
  }
  GddReport report;
  std::optional<std::int64_t> ref_same = lambda, ref_cross = mu;
  bool seen_same = false, seen_cross = false;
  for (std::uint32_t a = 0; a < points; ++a) {
    for (std::uint32_t b = a + 1; b < points; ++b) {
      const bool same = group_of[a] == group_of[b];
      auto& ref = same ? ref_same : ref_cross;
      (same ? seen_same : seen_cross) = true;
      const std::int64_t c = count[a * points + b];
      if (!ref) ref = c;
      if (c != *ref && !report.witness) report.witness = PairWitness{a, b, *ref, c, same};
    }
  }
  report.ok = !report.witness;
  if (report.ok) {
    if (seen_same) report.lambda = ref_same;
    if (seen_cross) report.mu = ref_cross;
  }
  return report;
}

std::string GddReport::summary() const {
  std::ostringstream os;
  if (!ok) {
    os << "FAILED";
    if (witness) {
      os << ": pair (" << witness->a << "," << witness->b << ") in " << witness->actual << " blocks, expected "
         << witness->expected << (witness->same_group ? " (same group)" : " (different groups)");
    }
    return os.str();
  }
  os << "verified";
  if (lambda) os << " lambda=" << *lambda;
  if (mu) os << " mu=" << *mu;
  return os.str();
}

DevelopedDesign develop_as_gdd(const DifferenceFamily& family) {
  const auto& g = family.group();
  DevelopedDesign d;
  d.points = g.order();
  for (const auto& b : develop(family)) {
    std::vector<std::uint32_t> pts;
    for (const auto& e : b.elements) pts.push_back(static_cast<std::uint32_t>(g.index_of(e)));
    d.blocks.push_back(std::move(pts));
  }
  for (const auto& c : cosets(g, family.forbidden())) {
    std::vector<std::uint32_t> pts;
    for (const auto& e : c.members) pts.push_back(static_cast<std::uint32_t>(g.index_of(e)));
    d.groups.push_back(std::move(pts));
  }
  return d;
}

RotationalDesign one_rotational_design(const DifferenceFamily& family) {
  if (!family.is_plain()) throw DesignError("one-rotational extension needs a plain difference family");
  const auto report = verify(family);
  if (!report.ok || !report.mu) throw DesignError("family does not verify as a difference family: " + report.summary());
  const std::int64_t lambda = *report.mu;
  if (lambda <= 0) throw DesignError("lambda = 0 gives a degenerate extension (empty blocks gain only infinity)");
  std::size_t small = 0, large = 0;
  for (const auto k : report.block_sizes) {
    if (static_cast<std::int64_t>(k) == lambda) ++small;
    else if (static_cast<std::int64_t>(k) == lambda + 1) ++large;
    else throw DesignError("block size " + std::to_string(k) + " is neither lambda nor lambda+1");
  }
  if (small != 1 || large == 0) throw DesignError("expected exactly one block of size lambda and the rest of size lambda+1");

  const auto& g = family.group();
  RotationalDesign out;
  out.points = g.order() + 1;
  const auto infinity = static_cast<std::uint32_t>(g.order());
  for (const auto& block : family.blocks()) {
    for (std::uint64_t x = 0; x < g.order(); ++x) {
      std::vector<std::uint32_t> pts;
      for (const auto& e : block.elements) pts.push_back(static_cast<std::uint32_t>(g.add_index(g.index_of(e), x)));
      if (static_cast<std::int64_t>(block.size()) == lambda) pts.push_back(infinity);
      out.blocks.push_back(std::move(pts));
    }
  }
  std::vector<std::vector<std::uint32_t>> singletons;
  for (std::uint32_t p = 0; p < out.points; ++p) singletons.push_back({p});
  out.report = verify_gdd(out.points, out.blocks, singletons, std::nullopt, lambda);
  return out;
}

}  // namespace designforge
