#include <doctest.h>

#include <set>

#include "designforge/constructions.hpp"
#include "designforge/error.hpp"
#include "designforge/hadamard.hpp"
#include "designforge/search.hpp"
#include "support.hpp"

using namespace designforge;
using testsupport::el;

namespace {

SearchSpec z6_spec() {
  SearchSpec s;
  s.group = FiniteAbelianGroup({6});
  s.n = Subgroup::from_elements(s.group, {el({0}), el({3})});
  s.m = 4;
  return s;
}

SearchSpec gr3_spec() {
  SearchSpec s;
  s.group = FiniteAbelianGroup({7, 2, 2});
  s.n = Subgroup::from_elements(s.group, {el({0, 0, 0}), el({0, 0, 1}), el({0, 1, 0}), el({0, 1, 1})});
  s.m = 8;
  return s;
}

using Pair = std::pair<std::vector<oracle::Vec>, std::vector<oracle::Vec>>;

Pair as_pair(const DifferenceFamily& f) {
  const auto b = testsupport::blocks_of(f);
  return {b[0], b[1]};
}

}  // namespace

TEST_CASE("exhaustive search on Z6 matches the naive enumeration") {
  const auto spec = z6_spec();
  const auto res = search_ddf(spec);
  CHECK(res.complete);
  std::set<Pair> found;
  for (const auto& c : res.certificates) {
    found.insert(as_pair(c.family));
    CHECK(replay(spec, c.family).empty());
    CHECK(testsupport::oracle_params(c.family).ok);
    CHECK(verify(c.family).ok);
  }
  const auto naive = oracle::naive_symmetric_pairs({6}, oracle::cyclic_set({0, 3}), 4);
  CHECK(found.size() == res.certificates.size());
  CHECK(naive.size() == 4);
  CHECK(found == naive);
}

TEST_CASE("orbits under translation by N and negation") {
  const auto res = search_ddf(z6_spec());
  const auto orbits = dedupe(res.certificates, {false, true, true});
  CHECK(orbits.size() == 1);
  const auto none = dedupe(res.certificates, {});
  CHECK(none.size() == 4);
  const auto c = canonical_form(res.certificates[3].family, {false, true, true});
  CHECK(c.blocks() == orbits[0].family.blocks());
  CHECK(replay(z6_spec(), orbits[0].family).empty());
}

TEST_CASE("search over Z7 x Z2 x Z2 finds the Galois ring family") {
  auto spec = gr3_spec();
  const auto res = search_ddf(spec);
  CHECK(res.complete);
  CHECK(res.certificates.size() == 1152);
  const auto r = RingCtx::make(3);
  const auto gr = gr4_ddf(r, default_trace_zero_u(r));
  bool seen = false;
  for (const auto& c : res.certificates) seen = seen || c.family.blocks() == gr.family.blocks();
  CHECK(seen);
  spec.threads = 4;
  const auto par = search_ddf(spec);
  REQUIRE(par.certificates.size() == res.certificates.size());
  for (std::size_t i = 0; i < par.certificates.size(); ++i) {
    CHECK(par.certificates[i].family.blocks() == res.certificates[i].family.blocks());
  }
  CHECK(dedupe(res.certificates, {true, false, true}).size() == 144);
}

TEST_CASE("budgets") {
  auto spec = gr3_spec();
  spec.max_solutions = 3;
  auto res = search_ddf(spec);
  CHECK(res.certificates.size() == 3);
  CHECK_FALSE(res.complete);
  spec.max_solutions = 0;
  spec.max_nodes = 1000;
  res = search_ddf(spec);
  CHECK_FALSE(res.complete);
  CHECK(res.nodes <= 1000);
}

TEST_CASE("randomized search is reproducible and replays") {
  auto spec = gr3_spec();
  spec.mode = SearchMode::randomized;
  spec.seed = 42;
  spec.max_solutions = 2;
  const auto a = search_ddf(spec);
  const auto b = search_ddf(spec);
  REQUIRE(a.certificates.size() == b.certificates.size());
  CHECK_FALSE(a.certificates.empty());
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    CHECK(a.certificates[i].family.blocks() == b.certificates[i].family.blocks());
    CHECK(replay(spec, a.certificates[i].family).empty());
    CHECK(check_thm41_preconditions(a.certificates[i].family, 8).ok);
  }
}

TEST_CASE("replay rejects corrupted certificates") {
  const auto spec = z6_spec();
  const auto res = search_ddf(spec);
  auto f = res.certificates[0].family;
  f.replace_block(1, testsupport::block(f.group(), {{1}, {3}}));
  CHECK_FALSE(replay(spec, f).empty());
}

TEST_CASE("infeasible specs") {
  SearchSpec s;
  s.group = FiniteAbelianGroup({15});
  s.n = Subgroup::from_elements(s.group, {el({0}), el({5}), el({10})});
  s.m = 6;
  REQUIRE(spec_infeasibility(s));
  CHECK(spec_infeasibility(s)->find("m = 6 is not a multiple of 4") == 0);
  CHECK_THROWS_AS(search_ddf(s), DesignError);
  auto t = z6_spec();
  t.m = 8;
  CHECK(spec_infeasibility(t));
  auto u = z6_spec();
  u.n = Subgroup::trivial(u.group);
  CHECK(spec_infeasibility(u));
  CHECK_FALSE(spec_infeasibility(z6_spec()));
}
