#include <doctest.h>

#include "designforge/constructions.hpp"
#include "designforge/error.hpp"
#include "designforge/json_io.hpp"
#include "support.hpp"

using namespace designforge;

TEST_CASE("family round trip keeps blocks, declaration and provenance") {
  const auto r = RingCtx::make(3);
  const auto f = gr4_ddf(r, default_trace_zero_u(r)).family;
  const auto j = family_to_json(f);
  CHECK(j["declared"]["lambda"] == 8);
  CHECK(j["declared"]["mu"] == 10);
  CHECK(j["group"]["moduli"] == json::array({7, 2, 2}));
  CHECK(j["provenance"]["construction"] == "gr4-ddf");
  const auto back = family_from_json(json::parse(dump(j)));
  CHECK(back.blocks() == f.blocks());
  CHECK(back.forbidden() == f.forbidden());
  CHECK(back.declared().lambda == 8);
  CHECK(back.declared().mu == 10);
  CHECK(back.provenance() == f.provenance());
  CHECK(verify(back).ok);
}

TEST_CASE("plain families write their index as lambda") {
  const auto f = szekeres(FieldCtx::for_order(11)).family;
  const auto j = family_to_json(f);
  CHECK(j["declared"]["lambda"] == 1);
  CHECK_FALSE(j["declared"].contains("mu"));
  const auto back = family_from_json(j);
  CHECK(back.declared().mu == 1);
  CHECK_FALSE(back.declared().lambda);
}

TEST_CASE("dump is compact, sorted and newline terminated") {
  const auto s = dump(json{{"b", json::array({1, 2, 3})}, {"a", 1}});
  CHECK(s == "{\n  \"a\": 1,\n  \"b\": [1,2,3]\n}\n");
}

TEST_CASE("malformed family documents are rejected") {
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": {"moduli": [6]}})")), DesignError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": {"moduli": [6]}, "blocks": [[[7]]]})")), DesignError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": {"moduli": [6]}, "forbidden": [[0],[2]], "blocks": []})")),
                  DesignError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": {"moduli": [6]}, "blocks": [[[1],[1]]]})")), DesignError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"group": "Z6", "blocks": []})")), DesignError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), DesignError);
}

TEST_CASE("search spec round trip") {
  SearchSpec s;
  s.group = FiniteAbelianGroup({6});
  s.n = Subgroup::from_elements(s.group, {testsupport::el({0}), testsupport::el({3})});
  s.m = 4;
  s.seed = 17;
  s.mode = SearchMode::randomized;
  s.max_nodes = 500;
  const auto back = spec_from_json(spec_to_json(s));
  CHECK(back.group == s.group);
  CHECK(back.n == s.n);
  CHECK(back.m == 4);
  CHECK(back.seed == 17);
  CHECK(back.mode == SearchMode::randomized);
  CHECK(back.max_nodes == 500);
  const auto minimal = spec_from_json(json::parse(R"({"group": {"moduli": [6]}, "forbidden": [[0],[3]], "m": 4})"));
  CHECK(minimal.mode == SearchMode::exhaustive);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"group": {"moduli": [6]}, "m": 4, "mode": "magic"})")), DesignError);
}

TEST_CASE("certificates embed the spec and replay") {
  SearchSpec s;
  s.group = FiniteAbelianGroup({6});
  s.n = Subgroup::from_elements(s.group, {testsupport::el({0}), testsupport::el({3})});
  s.m = 4;
  const auto res = search_ddf(s);
  const auto j = certificate_to_json(res.certificates[0], s);
  CHECK(j.contains("spec"));
  CHECK(j.contains("nodes"));
  const auto f = family_from_json(j);
  CHECK(replay(spec_from_json(j["spec"]), f).empty());
}

TEST_CASE("matrix round trip") {
  auto m = sylvester(3);
  m.labels = {"a", "b", "c", "d", "e", "f", "g", "h"};
  const auto j = matrix_to_json(m, {{"construction", "sylvester"}});
  CHECK(j["order"] == 8);
  const auto back = matrix_from_json(j);
  CHECK(back == m);
  CHECK(back.labels == m.labels);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"order": 2, "rows": [[1,1],[1,2]]})")), DesignError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"order": 3, "rows": [[1,1],[1,-1]]})")), DesignError);
}

TEST_CASE("report and fingerprint documents") {
  const auto rep = report_to_json(verify(testsupport::z6_family()));
  CHECK(rep["ok"] == true);
  CHECK(rep["mu"] == 1);
  const auto fp = fingerprint_to_json(equivalence_invariants(sylvester(3)));
  CHECK(fp["order"] == 8);
  CHECK(fp.contains("bordered_rank"));
}
