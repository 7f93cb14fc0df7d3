#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace designforge {

// Coefficient list, lowest degree first.
using Poly = std::vector<std::uint32_t>;

// Moduli for GF(p^r) and GR(4,n). Lookups fall back to the built-in table;
// user entries (loaded from JSON) take precedence.
//
// JSON layout:
//   {"field": [{"p": 2, "r": 3, "modulus": [1,0,1,1]}, ...],
//    "galois_ring": [{"n": 3, "modulus": [3,2,3,1]}, ...]}
class PolyTable {
 public:
  static const PolyTable& builtin();
  static PolyTable load(const std::string& path);
  // Table named by DESIGNFORGE_POLY_TABLE, or the built-in table when unset.
  static PolyTable from_environment();

  std::optional<Poly> field_modulus(std::uint32_t p, unsigned r) const;
  std::optional<Poly> ring_modulus(unsigned n) const;

  void set_field_modulus(std::uint32_t p, unsigned r, Poly modulus);
  void set_ring_modulus(unsigned n, Poly modulus);

 private:
  std::map<std::pair<std::uint32_t, unsigned>, Poly> field_;
  std::map<unsigned, Poly> ring_;
};

}  // namespace designforge
