#include "designforge/poly_table.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "designforge/error.hpp"

namespace designforge {

namespace {

PolyTable make_builtin() {
  PolyTable t;
  // Primitive polynomials over GF(2). Degree 3 is x^3+x^2+1 so that the
  // residue field of the default GR(4,3) matches the standalone GF(8).
  t.set_field_modulus(2, 1, {0, 1});
  t.set_field_modulus(2, 2, {1, 1, 1});
  t.set_field_modulus(2, 3, {1, 0, 1, 1});
  t.set_field_modulus(2, 4, {1, 1, 0, 0, 1});
  t.set_field_modulus(2, 5, {1, 0, 1, 0, 0, 1});
  t.set_field_modulus(2, 6, {1, 1, 0, 0, 0, 0, 1});
  t.set_field_modulus(2, 7, {1, 1, 0, 0, 0, 0, 0, 1});
  t.set_field_modulus(2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1});
  t.set_field_modulus(2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  t.set_field_modulus(2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1});
  t.set_field_modulus(2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  t.set_field_modulus(2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1});
  // Graeffe lifts of the GF(2) entries above, frozen for reproducibility.
  t.set_ring_modulus(1, {3, 1});
  t.set_ring_modulus(2, {1, 1, 1});
  t.set_ring_modulus(3, {3, 2, 3, 1});
  t.set_ring_modulus(4, {1, 3, 2, 0, 1});
  t.set_ring_modulus(5, {3, 2, 3, 0, 0, 1});
  t.set_ring_modulus(6, {1, 3, 0, 2, 0, 0, 1});
  t.set_ring_modulus(7, {3, 1, 0, 0, 2, 0, 0, 1});
  t.set_ring_modulus(8, {1, 2, 3, 1, 3, 2, 2, 0, 1});
  return t;
}

Poly read_poly(const nlohmann::json& j) {
  Poly p;
  for (const auto& c : j) {
    if (!c.is_number_integer() || c.get<std::int64_t>() < 0) throw DesignError("polynomial coefficients must be non-negative integers");
    p.push_back(c.get<std::uint32_t>());
  }
  return p;
}

}  // namespace

const PolyTable& PolyTable::builtin() {
  static const PolyTable table = make_builtin();
  return table;
}

PolyTable PolyTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("cannot open polynomial table " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DesignError("malformed polynomial table " + path + ": " + e.what());
  }
  PolyTable t = builtin();
  if (j.contains("field")) {
    for (const auto& e : j.at("field")) {
      t.set_field_modulus(e.at("p").get<std::uint32_t>(), e.at("r").get<unsigned>(), read_poly(e.at("modulus")));
    }
  }
  if (j.contains("galois_ring")) {
    for (const auto& e : j.at("galois_ring")) t.set_ring_modulus(e.at("n").get<unsigned>(), read_poly(e.at("modulus")));
  }
  return t;
}

PolyTable PolyTable::from_environment() {
  if (const char* path = std::getenv("DESIGNFORGE_POLY_TABLE"); path != nullptr && *path != '\0') return load(path);
  return builtin();
}

std::optional<Poly> PolyTable::field_modulus(std::uint32_t p, unsigned r) const {
  if (auto it = field_.find({p, r}); it != field_.end()) return it->second;
  return std::nullopt;
}

std::optional<Poly> PolyTable::ring_modulus(unsigned n) const {
  if (auto it = ring_.find(n); it != ring_.end()) return it->second;
  return std::nullopt;
}

void PolyTable::set_field_modulus(std::uint32_t p, unsigned r, Poly modulus) { field_[{p, r}] = std::move(modulus); }

void PolyTable::set_ring_modulus(unsigned n, Poly modulus) { ring_[n] = std::move(modulus); }

}  // namespace designforge
