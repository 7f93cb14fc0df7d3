#include <doctest.h>

#include <random>

#include "designforge/constructions.hpp"
#include "designforge/error.hpp"
#include "designforge/hadamard.hpp"
#include "support.hpp"

using namespace designforge;

namespace {

DifferenceFamily gr3_family(std::optional<std::uint32_t> y = std::nullopt) {
  static const auto r = RingCtx::make(3);
  return gr4_ddf(r, default_trace_zero_u(r), {}, y).family;
}

}  // namespace

TEST_CASE("sign matrix text and row round trips") {
  const auto m = SignMatrix::from_text("++\n+-\n");
  CHECK(m.order() == 2);
  CHECK(m(1, 1) == -1);
  CHECK(m.to_text() == "++\n+-\n");
  CHECK(SignMatrix::from_rows(m.rows()) == m);
  CHECK_THROWS_AS(SignMatrix::from_rows({{1, 0}, {1, 1}}), DesignError);
  CHECK_THROWS_AS(SignMatrix::from_rows({{1, 1}, {1}}), DesignError);
  CHECK_THROWS_AS(SignMatrix::from_text("+x\n++\n"), DesignError);
}

TEST_CASE("integer matrix products") {
  IntMatrix a(2, 3);
  a.data = {1, 2, 3, 4, 5, 6};
  const auto p = a * a.transposed();
  CHECK(p.data == std::vector<std::int64_t>{14, 32, 32, 77});
  CHECK((p - p).data == std::vector<std::int64_t>(4, 0));
  CHECK((IntMatrix::identity(2).scaled(3) + IntMatrix::identity(2)).data == std::vector<std::int64_t>{4, 0, 0, 4});
}

TEST_CASE("Sylvester matrices") {
  for (unsigned k = 0; k <= 7; ++k) {
    const auto h = sylvester(k);
    CHECK(h.order() == (std::size_t{1} << k));
    CHECK(is_hadamard(h));
    CHECK(is_symmetric(h));
    CHECK(oracle::hadamard(h.rows()));
    for (std::size_t i = 0; i < h.order(); ++i) CHECK(h(0, i) == 1);
  }
  CHECK_THROWS_AS(sylvester(15), DesignError);
}

TEST_CASE("a single flipped entry is caught with a witness") {
  auto h = sylvester(4);
  h.set(3, 5, -h(3, 5));
  const auto c = check_hadamard(h);
  CHECK_FALSE(c.ok);
  CHECK(c.witness.find("row 3") != std::string::npos);
  CHECK_FALSE(oracle::hadamard(h.rows()));
  CHECK_FALSE(check_symmetric(h).ok);
}

TEST_CASE("normalization") {
  std::mt19937_64 rng(5);
  const auto h = random_equivalent(sylvester(3), rng);
  const auto n = normalize(h);
  CHECK(is_hadamard(n.matrix));
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(n.matrix(0, i) == 1);
    CHECK(n.matrix(i, 0) == 1);
    for (std::size_t j = 0; j < 8; ++j) CHECK(n.matrix(i, j) == n.row_signs[i] * h(i, j) * n.col_signs[j]);
  }
}

TEST_CASE("skew Hadamard matrices from Szekeres families") {
  for (const std::uint64_t q : {7u, 11u, 19u, 23u, 27u, 31u, 43u, 47u, 59u}) {
    CAPTURE(q);
    const auto m = skew_from_df(szekeres(FieldCtx::for_order(q)).family);
    CHECK(m.order() == q + 1);
    CHECK(is_hadamard(m));
    CHECK(is_skew(m));
    CHECK(oracle::hadamard(m.rows()));
    for (std::size_t i = 0; i < m.order(); ++i) {
      for (std::size_t j = 0; j < m.order(); ++j) CHECK(m(i, j) + m(j, i) == (i == j ? 2 : 0));
    }
  }
}

TEST_CASE("skew construction preconditions") {
  FiniteAbelianGroup z3({3});
  const auto no_skew_block =
      DifferenceFamily::plain(z3, {testsupport::block(z3, {{0}}), testsupport::block(z3, {{0}})}, 0);
  CHECK_THROWS_AS(skew_from_df(no_skew_block), DesignError);
  CHECK_THROWS_AS(skew_from_df(prop22_family(FieldCtx::for_order(37), 4).family), DesignError);
  auto f = szekeres(FieldCtx::for_order(19)).family;
  f.replace_block(0, testsupport::block(f.group(), {{0}, {1}, {2}, {3}}));
  CHECK_THROWS_AS(skew_from_df(f), DesignError);
}

TEST_CASE("skew check witnesses") {
  auto m = skew_from_df(szekeres(FieldCtx::for_order(11)).family);
  m.set(2, 2, -1);
  CHECK_FALSE(check_skew(m).ok);
  CHECK_FALSE(check_skew(m).witness.empty());
}

TEST_CASE("symmetric array preconditions") {
  CHECK(check_thm41_preconditions(testsupport::z6_family(), 4).ok);
  CHECK(check_thm41_preconditions(gr3_family(), 8).ok);
  CHECK_FALSE(check_thm41_preconditions(gr3_family(), 4).ok);
  auto f = testsupport::z6_family();
  f.replace_block(0, testsupport::block(f.group(), {{1}, {2}}));
  const auto r = check_thm41_preconditions(f, 4);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.failures.empty());
  CHECK_THROWS_AS(symmetric_from_ddf(f, sylvester(2)), DesignError);
}

TEST_CASE("symmetric Hadamard of order 16 from the Z6 family") {
  const auto parts = symmetric_array(testsupport::z6_family(), sylvester(2));
  CHECK(parts.M.order() == 16);
  CHECK(is_hadamard(parts.M));
  CHECK(is_symmetric(parts.M));
  CHECK(oracle::hadamard(parts.M.rows()));
  for (const auto& c : claim_tests(parts)) {
    CAPTURE(c.number);
    CHECK(c.ok);
  }
  CHECK(symmetric_from_ddf(testsupport::z6_family(), sylvester(2)) == parts.M);
}

TEST_CASE("order 64: claims, coset assignments and every admissible y") {
  const auto parts = symmetric_array(gr3_family(), sylvester(3));
  CHECK(is_hadamard(parts.M));
  CHECK(is_symmetric(parts.M));
  const auto claims = claim_tests(parts);
  REQUIRE(claims.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(claims[i].number == i + 1);
    CHECK(claims[i].ok);
  }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto assignment = random_coset_assignment(7, rng);
    const auto m = symmetric_from_ddf(gr3_family(), sylvester(3), assignment);
    CHECK(is_hadamard(m));
    CHECK(is_symmetric(m));
  }
  const auto r = RingCtx::make(3);
  for (const auto y : admissible_y_indices(gr4_data(r, default_trace_zero_u(r)))) {
    const auto m = symmetric_from_ddf(gr3_family(y), sylvester(3));
    CHECK(is_hadamard(m));
    CHECK(is_symmetric(m));
  }
  CHECK_THROWS_AS(symmetric_from_ddf(gr3_family(), sylvester(3), std::vector<std::size_t>{0, 0, 1, 2, 3, 4, 5}),
                  DesignError);
  CHECK_THROWS_AS(symmetric_from_ddf(gr3_family(), sylvester(2)), DesignError);
}

TEST_CASE("a non-Sylvester seed works too") {
  std::mt19937_64 rng(3);
  const auto seed = random_equivalent(sylvester(3), rng);
  const auto m = symmetric_from_ddf(gr3_family(), seed);
  CHECK(is_hadamard(m));
  CHECK(is_symmetric(m));
}

TEST_CASE("claims fail on a perturbed family part") {
  auto parts = symmetric_array(gr3_family(), sylvester(3));
  parts.A.at(0, 1) = 1 - parts.A.at(0, 1);
  parts.Ap.at(0, 1) = -parts.Ap.at(0, 1);
  const auto claims = claim_tests(parts);
  bool any_failed = false;
  for (const auto& c : claims) {
    if (!c.ok) {
      any_failed = true;
      CHECK_FALSE(c.witness.empty());
    }
  }
  CHECK(any_failed);
}

TEST_CASE("fingerprints are invariant under equivalence and separate inequivalent matrices") {
  std::mt19937_64 rng(99);
  const auto sym = symmetric_from_ddf(gr3_family(), sylvester(3));
  const auto base = equivalence_invariants(sym);
  CHECK(base.profile_computed);
  CHECK(base.bordered_rank == 15);
  for (int i = 0; i < 3; ++i) CHECK(equivalence_invariants(random_equivalent(sym, rng)) == base);
  const auto syl = equivalence_invariants(sylvester(6));
  CHECK(syl.bordered_rank == 8);
  CHECK_FALSE(syl == base);
  const auto big = equivalence_invariants(sylvester(8));
  CHECK_FALSE(big.profile_computed);
  CHECK_THROWS_AS(equivalence_invariants(SignMatrix(4)), DesignError);
}
