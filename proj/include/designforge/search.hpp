#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "designforge/design_core.hpp"

namespace designforge {

enum class SearchMode { exhaustive, randomized };

// Search for two-block DDFs in (G, N) meeting the symmetric-array
// preconditions for a seed of order m.
struct SearchSpec {
  FiniteAbelianGroup group;
  Subgroup n = Subgroup::trivial(FiniteAbelianGroup{});
  std::size_t m = 0;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t max_nodes = 0;      // 0: unlimited
  std::size_t max_solutions = 0;    // 0: all
  std::uint64_t restarts = 64;      // randomized only
  std::uint64_t steps = 20000;      // randomized only, per restart
  unsigned threads = 1;             // exhaustive with unlimited budget only
};

// Diagnostic for specs that cannot have solutions, or nullopt.
std::optional<std::string> spec_infeasibility(const SearchSpec& spec);

struct Certificate {
  DifferenceFamily family;
  std::uint64_t seed = 0;
  std::uint64_t nodes = 0;  // nodes visited when this certificate was found
};

struct SearchResult {
  std::vector<Certificate> certificates;
  std::uint64_t nodes = 0;
  bool complete = false;  // exhaustive run that was not cut short
  double wall_seconds = 0;
};

// Throws DesignError for infeasible specs. Every returned family has been
// replayed through verify and check_thm41_preconditions.
SearchResult search_ddf(const SearchSpec& spec);

// Replays a certificate against the spec; empty string on success.
std::string replay(const SearchSpec& spec, const DifferenceFamily& family);

struct Symmetries {
  bool translation = false;    // D_i -> D_i + x, x in G
  bool n_translation = false;  // D_i -> D_i + x, x in N
  bool negation = false;       // D_i -> -D_i
};

// Canonical image (lexicographically least over the generated action, block
// order kept) of a family.
DifferenceFamily canonical_form(const DifferenceFamily& family, const Symmetries& symmetries);
// One certificate per orbit, in order of first appearance, each replaced by
// its canonical form.
std::vector<Certificate> dedupe(const std::vector<Certificate>& certs, const Symmetries& symmetries);

}  // namespace designforge
