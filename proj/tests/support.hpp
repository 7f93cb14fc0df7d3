#pragma once

#include <string>
#include <vector>

#include "designforge/design_core.hpp"
#include "oracles.hpp"

namespace testsupport {

inline oracle::Blocks blocks_of(const designforge::DifferenceFamily& f) {
  oracle::Blocks out;
  for (const auto& b : f.blocks()) {
    std::vector<oracle::Vec> v;
    for (const auto& x : b.elements) v.push_back(x.coords);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<oracle::Vec> forbidden_of(const designforge::DifferenceFamily& f) {
  std::vector<oracle::Vec> out;
  for (const auto& x : f.forbidden().elements()) out.push_back(x.coords);
  return out;
}

inline oracle::DdfParams oracle_params(const designforge::DifferenceFamily& f) {
  return oracle::ddf_params(f.group().moduli(), forbidden_of(f), blocks_of(f));
}

inline designforge::GroupElement el(std::vector<std::int64_t> c) { return designforge::GroupElement{std::move(c)}; }

inline designforge::Block block(const designforge::FiniteAbelianGroup& g, std::vector<std::vector<std::int64_t>> xs) {
  std::vector<designforge::GroupElement> e;
  for (auto& x : xs) e.push_back(el(std::move(x)));
  return designforge::Block::make(g, std::move(e));
}

// Z_6 with N = {0, 3} and the family {{1,5},{1,2}}.
inline designforge::DifferenceFamily z6_family() {
  using namespace designforge;
  FiniteAbelianGroup g({6});
  auto n = Subgroup::from_elements(g, {el({0}), el({3})});
  return DifferenceFamily(g, n, {block(g, {{1}, {5}}), block(g, {{1}, {2}})}, {0, 1, {2, 2}});
}

}  // namespace testsupport
