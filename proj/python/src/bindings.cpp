#include <optional>
#include <random>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "designforge/constructions.hpp"
#include "designforge/error.hpp"
#include "designforge/hadamard.hpp"
#include "designforge/json_io.hpp"
#include "designforge/search.hpp"

namespace py = pybind11;
using namespace designforge;

// Documents cross the boundary as JSON text; the Python package decodes them.
namespace {

using Rows = std::vector<std::vector<int>>;

std::string construct(const std::string& kind, std::uint64_t q, std::uint32_t e, unsigned n, std::optional<std::int64_t> u,
                      std::optional<std::uint32_t> y) {
  if (kind == "szekeres") return family_to_json(szekeres(FieldCtx::for_order(q)).family).dump();
  if (kind == "prop22" || kind == "prop23") {
    if (auto why = cyclotomic_condition_failure(q, e, kind == "prop23")) throw DesignError(*why);
    const auto ctx = FieldCtx::for_order(q);
    return family_to_json((kind == "prop22" ? prop22_family(ctx, e) : prop23_family(ctx, e)).family).dump();
  }
  const auto ring = RingCtx::make(n);
  const auto uu = u ? ring.residue_field().exp(static_cast<std::uint64_t>(*u)) : default_trace_zero_u(ring);
  if (kind == "gr4-ddf") return family_to_json(gr4_ddf(ring, uu, {}, y).family).dump();
  if (kind == "gr4-union") return family_to_json(gr4_ddf_union(ring, uu, {}, y).family).dump();
  if (kind == "prop34") return family_to_json(prop34_ds(ring, uu).family).dump();
  throw DesignError("unknown construction \"" + kind + "\"");
}

std::string verify_family(const std::string& doc) { return report_to_json(verify(family_from_json(json::parse(doc)))).dump(); }

Rows symmetric(const std::string& family_doc, const Rows& seed, std::optional<std::uint64_t> assignment_seed) {
  const auto fam = family_from_json(json::parse(family_doc));
  std::optional<std::vector<std::size_t>> assignment;
  if (assignment_seed) {
    std::mt19937_64 rng(*assignment_seed);
    assignment = random_coset_assignment(fam.group().order() / fam.forbidden().order() - 1, rng);
  }
  return symmetric_from_ddf(fam, SignMatrix::from_rows(seed), assignment).rows();
}

std::string claims(const std::string& family_doc, const Rows& seed) {
  const auto parts = symmetric_array(family_from_json(json::parse(family_doc)), SignMatrix::from_rows(seed));
  json out = json::array();
  for (const auto& c : claim_tests(parts)) {
    out.push_back({{"number", c.number}, {"statement", c.statement}, {"ok", c.ok}, {"witness", c.witness}});
  }
  return out.dump();
}

std::string search(const std::string& spec_doc) {
  const auto spec = spec_from_json(json::parse(spec_doc));
  const auto result = search_ddf(spec);
  json out{{"certificates", json::array()}, {"nodes", result.nodes}, {"complete", result.complete}};
  for (const auto& c : result.certificates) out["certificates"].push_back(certificate_to_json(c, spec));
  return out.dump();
}

std::string thm41_report(const std::string& family_doc, std::size_t m) {
  const auto r = check_thm41_preconditions(family_from_json(json::parse(family_doc)), m);
  return json{{"ok", r.ok}, {"failures", r.failures}}.dump();
}

}  // namespace

PYBIND11_MODULE(_designforge, m) {
  m.doc() = "Difference families, divisible difference families and Hadamard matrices";
  py::register_exception<DesignError>(m, "DesignError", PyExc_ValueError);

  m.def("construct", &construct, py::arg("kind"), py::arg("q") = 0, py::arg("e") = 2, py::arg("n") = 3,
        py::arg("u") = py::none(), py::arg("y") = py::none());
  m.def("verify", &verify_family, py::arg("family"));
  m.def("check_thm41_preconditions", &thm41_report, py::arg("family"), py::arg("m"));
  m.def("sylvester", [](unsigned k) { return sylvester(k).rows(); }, py::arg("k"));
  m.def("skew_hadamard", [](std::uint64_t q) { return skew_from_df(szekeres(FieldCtx::for_order(q)).family).rows(); },
        py::arg("q"));
  m.def("symmetric_hadamard", &symmetric, py::arg("family"), py::arg("seed"), py::arg("assignment_seed") = py::none());
  m.def("claim_tests", &claims, py::arg("family"), py::arg("seed"));
  m.def("is_hadamard", [](const Rows& r) { return is_hadamard(SignMatrix::from_rows(r)); });
  m.def("is_symmetric", [](const Rows& r) { return is_symmetric(SignMatrix::from_rows(r)); });
  m.def("is_skew", [](const Rows& r) { return is_skew(SignMatrix::from_rows(r)); });
  m.def("fingerprint", [](const Rows& r) { return fingerprint_to_json(equivalence_invariants(SignMatrix::from_rows(r))).dump(); });
  m.def("search", &search, py::arg("spec"));
}
