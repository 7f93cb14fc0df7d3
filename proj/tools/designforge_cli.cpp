#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "designforge/constructions.hpp"
#include "designforge/error.hpp"
#include "designforge/hadamard.hpp"
#include "designforge/json_io.hpp"
#include "designforge/search.hpp"

using namespace designforge;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string poly_table;
  std::string format = "json";
  std::string out;
};

PolyTable load_table(const Options& o) { return o.poly_table.empty() ? PolyTable::from_environment() : PolyTable::load(o.poly_table); }

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw DesignError("cannot write " + o.out);
  f << text;
}

std::string set_text(const std::vector<GroupElement>& elems) {
  std::string s = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) s += (i ? "," : "") + elems[i].to_string();
  return s + "}";
}

std::string family_text(const DifferenceFamily& f, const std::vector<std::vector<std::string>>& ring_blocks = {}) {
  std::ostringstream os;
  os << "group " << f.group().to_string() << "\n";
  os << "forbidden " << set_text(f.forbidden().elements()) << "\n";
  for (std::size_t i = 0; i < f.blocks().size(); ++i) os << "D" << i + 1 << " = " << set_text(f.blocks()[i].elements) << "\n";
  for (std::size_t i = 0; i < ring_blocks.size(); ++i) {
    os << "D" << i + 1 << " (ring) = {";
    for (std::size_t k = 0; k < ring_blocks[i].size(); ++k) os << (k ? "," : "") << ring_blocks[i][k];
    os << "}\n";
  }
  os << verify(f).summary() << "\n";
  return os.str();
}

// Re-verifies before anything is written.
int emit_family(const Options& o, const DifferenceFamily& f, const std::vector<std::vector<std::string>>& ring_blocks = {}) {
  const auto report = verify(f);
  if (!report.ok) {
    std::cerr << "refusing to emit an unverified family: " << report.summary() << "\n";
    return kFailed;
  }
  emit(o, o.format == "text" ? family_text(f, ring_blocks) : dump(family_to_json(f)));
  return kOk;
}

int emit_matrix(const Options& o, const SignMatrix& m, const json& provenance, bool want_symmetric, bool want_skew) {
  auto fail = [](const MatrixCheck& c, const char* what) {
    std::cerr << "refusing to emit: matrix is not " << what << ": " << c.witness << "\n";
    return kFailed;
  };
  if (auto c = check_hadamard(m); !c.ok) return fail(c, "Hadamard");
  if (want_symmetric) {
    if (auto c = check_symmetric(m); !c.ok) return fail(c, "symmetric");
  }
  if (want_skew) {
    if (auto c = check_skew(m); !c.ok) return fail(c, "skew");
  }
  emit(o, o.format == "text" ? m.to_text() : dump(matrix_to_json(m, provenance)));
  return kOk;
}

std::vector<std::vector<std::string>> ring_digits(const RingCtx& ctx, const Gr4Family& f) {
  std::vector<std::vector<std::string>> out;
  for (const auto& b : f.ring_blocks) {
    std::vector<std::string> digits;
    for (const auto x : b) digits.push_back(ctx.to_digits(x));
    out.push_back(std::move(digits));
  }
  return out;
}

FieldElement pick_u(const RingCtx& ctx, std::optional<std::int64_t> u) {
  if (!u) return default_trace_zero_u(ctx);
  const auto& f = ctx.residue_field();
  if (*u < 0) throw DesignError("--u must be a nonnegative exponent");
  return f.exp(static_cast<std::uint64_t>(*u) % (f.q() - 1));
}

json read_document(const std::string& path) { return read_json_file(path); }

SignMatrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DesignError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return matrix_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw DesignError(path + ": " + e.what());
    }
  }
  return SignMatrix::from_text(text);
}

std::size_t log2_exact(std::size_t m) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < m) ++k;
  if ((std::size_t{1} << k) != m) throw DesignError("no Sylvester seed of order " + std::to_string(m) + "; pass --seed-matrix");
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference families, divisible difference families and Hadamard matrices"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--poly-table", opt.poly_table, "JSON polynomial table (overrides DESIGNFORGE_POLY_TABLE)");

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", opt.out, "Write to this file instead of stdout");
  };

  // construct
  auto* construct = app.add_subcommand("construct", "Build a family and print it");
  construct->require_subcommand(1);
  std::uint64_t q = 0;
  std::uint32_t e = 2;
  unsigned n = 3;
  std::optional<std::int64_t> u;
  std::optional<std::uint32_t> y;
  std::uint32_t cyclic_step = 1;
  auto* c_szekeres = construct->add_subcommand("szekeres", "(N-1)∩N, (N+1)∩N over the squares, q = 3 mod 4");
  auto* c_prop22 = construct->add_subcommand("prop22", "Blocks from the cyclotomic difference set N");
  auto* c_prop23 = construct->add_subcommand("prop23", "Blocks from the cyclotomic difference set N ∪ {0}");
  auto* c_gr4 = construct->add_subcommand("gr4-ddf", "DDF in GR(4,n) from the index-2 unit subgroup D");
  auto* c_union = construct->add_subcommand("gr4-union", "DDF in GR(4,n) from D ∪ 2R");
  auto* c_prop34 = construct->add_subcommand("prop34", "(D+2) ∩ T* as a difference set in Z_{2^n-1}");
  for (auto* sub : {c_szekeres, c_prop22, c_prop23}) {
    sub->add_option("--q", q, "Field order")->required();
    add_io(sub);
  }
  for (auto* sub : {c_prop22, c_prop23}) sub->add_option("--e", e, "Index of N in GF(q)* (2, 4 or 8)");
  for (auto* sub : {c_gr4, c_union, c_prop34}) {
    sub->add_option("--n", n, "Degree of the Galois ring")->required();
    sub->add_option("--u", u, "u = xi-bar^U, must have trace 0 (default: least such exponent)");
    add_io(sub);
  }
  for (auto* sub : {c_gr4, c_union}) {
    sub->add_option("--y", y, "Teichmuller index b of the second representative 1+2b");
    sub->add_option("--cyclic-step", cyclic_step, "Use N = <xi^step> x U(E) instead of D");
  }

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Verify a family or certificate file; exit 1 on failure");
  std::string verify_path;
  verify_cmd->add_option("file", verify_path, "Family JSON (object, array, or {\"certificates\": [...]})")->required();
  add_io(verify_cmd);

  // hadamard
  auto* hadamard = app.add_subcommand("hadamard", "Build or check Hadamard matrices");
  hadamard->require_subcommand(1);
  unsigned k = 0;
  std::string family_path, seed_path, matrix_path;
  std::size_t m_order = 0;
  std::optional<std::uint64_t> assignment_seed;
  auto* h_syl = hadamard->add_subcommand("sylvester", "Sylvester matrix of order 2^k");
  h_syl->add_option("--k", k, "Exponent")->required();
  auto* h_skew = hadamard->add_subcommand("skew", "Skew Hadamard matrix of order 2(q+1) from the Szekeres family");
  h_skew->add_option("--q", q, "Field order, q = 3 mod 4")->required();
  auto* h_sym = hadamard->add_subcommand("symmetric", "Symmetric Hadamard matrix of order m^2 from a DDF");
  auto* sym_n = h_sym->add_option("--n", n, "Use the GR(4,n) DDF (m = 2^n)");
  auto* sym_f = h_sym->add_option("--family", family_path, "Use the DDF in this JSON file");
  sym_n->excludes(sym_f);
  h_sym->add_option("--u", u, "u exponent for --n");
  h_sym->add_option("--y", y, "Teichmuller index for --n");
  h_sym->add_option("--m", m_order, "Seed order for --family (default 2|N|)");
  h_sym->add_option("--seed-matrix", seed_path, "Seed Hadamard matrix (text or JSON); default Sylvester");
  h_sym->add_option("--seed", assignment_seed, "Random coset assignment from this seed");
  auto* h_check = hadamard->add_subcommand("check", "Check a matrix file and print its fingerprint");
  h_check->add_option("file", matrix_path, "Matrix in text or JSON format")->required();
  for (auto* sub : {h_syl, h_skew, h_sym, h_check}) add_io(sub);

  // search
  auto* search_cmd = app.add_subcommand("search", "Search for DDFs meeting the symmetric-array conditions");
  std::string spec_path, mode_override;
  std::optional<std::uint64_t> seed, budget;
  std::optional<std::size_t> max_solutions;
  unsigned threads = 1;
  bool dedupe_orbits = false, timing = false;
  search_cmd->add_option("spec", spec_path, "Search spec JSON")->required();
  search_cmd->add_option("--seed", seed, "RNG seed (overrides the spec)");
  search_cmd->add_option("--budget", budget, "Node budget, 0 for unlimited (overrides the spec)");
  search_cmd->add_option("--mode", mode_override, "exhaustive or randomized")->check(CLI::IsMember({"exhaustive", "randomized"}));
  search_cmd->add_option("--max-solutions", max_solutions, "Stop after this many certificates");
  search_cmd->add_option("--threads", threads, "Worker threads for unlimited exhaustive runs");
  search_cmd->add_flag("--dedupe", dedupe_orbits, "Keep one certificate per orbit under translation by N and negation");
  search_cmd->add_flag("--timing", timing, "Print wall time to stderr");
  add_io(search_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (construct->parsed()) {
      const auto table = load_table(opt);
      if (c_szekeres->parsed()) {
        if (!prime_power(q)) throw DesignError(std::to_string(q) + " is not a prime power");
        return emit_family(opt, szekeres(FieldCtx::for_order(q, table)).family);
      }
      if (c_prop22->parsed() || c_prop23->parsed()) {
        const bool with_zero = c_prop23->parsed();
        if (auto why = cyclotomic_condition_failure(q, e, with_zero)) throw DesignError(*why);
        const auto ctx = FieldCtx::for_order(q, table);
        return emit_family(opt, (with_zero ? prop23_family(ctx, e) : prop22_family(ctx, e)).family);
      }
      const auto ring = table.ring_modulus(n) ? RingCtx::make(n, table) : RingCtx::make(n);
      const auto uu = pick_u(ring, u);
      if (c_prop34->parsed()) return emit_family(opt, prop34_ds(ring, uu).family);
      const Gr4Subgroup sub{cyclic_step, std::nullopt};
      const auto fam = c_gr4->parsed() ? gr4_ddf(ring, uu, sub, y) : gr4_ddf_union(ring, uu, sub, y);
      return emit_family(opt, fam.family, ring_digits(ring, fam));
    }

    if (verify_cmd->parsed()) {
      const json doc = read_document(verify_path);
      std::vector<json> items;
      if (doc.is_array()) items.assign(doc.begin(), doc.end());
      else if (doc.is_object() && doc.contains("certificates")) items.assign(doc["certificates"].begin(), doc["certificates"].end());
      else items.push_back(doc);
      bool all_ok = true;
      json reports = json::array();
      std::string text;
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto family = family_from_json(items[i]);
        const auto report = verify(family);
        all_ok = all_ok && report.ok;
        reports.push_back(report_to_json(report));
        text += (items.size() > 1 ? "[" + std::to_string(i) + "] " : "") + report.summary() + "\n";
        for (const auto& note : report.notes) text += "  note: " + note + "\n";
      }
      emit(opt, opt.format == "json" ? dump(items.size() == 1 ? reports[0] : reports) : text);
      return all_ok ? kOk : kFailed;
    }

    if (hadamard->parsed()) {
      const auto table = load_table(opt);
      if (h_syl->parsed()) return emit_matrix(opt, sylvester(k), {{"construction", "sylvester"}, {"k", k}}, false, false);
      if (h_skew->parsed()) {
        if (!prime_power(q)) throw DesignError(std::to_string(q) + " is not a prime power");
        const auto fam = szekeres(FieldCtx::for_order(q, table)).family;
        return emit_matrix(opt, skew_from_df(fam), {{"construction", "skew"}, {"q", q}}, false, true);
      }
      if (h_sym->parsed()) {
        json prov{{"construction", "symmetric"}};
        std::optional<DifferenceFamily> fam;
        if (!family_path.empty()) {
          fam = family_from_json(read_document(family_path));
          prov["family"] = family_path;
        } else {
          const auto ring = table.ring_modulus(n) ? RingCtx::make(n, table) : RingCtx::make(n);
          fam = gr4_ddf(ring, pick_u(ring, u), {}, y).family;
          prov["n"] = n;
          prov["family_provenance"] = fam->provenance();
        }
        const std::size_t m = m_order != 0 ? m_order : 2 * fam->forbidden().order();
        const SignMatrix seed_matrix = seed_path.empty() ? sylvester(static_cast<unsigned>(log2_exact(m))) : read_matrix(seed_path);
        if (seed_matrix.order() != m) throw DesignError("seed matrix has order " + std::to_string(seed_matrix.order()) + ", need " + std::to_string(m));
        const auto pre = check_thm41_preconditions(*fam, m);
        if (!pre.ok) {
          std::cerr << pre.summary() << "\n";
          return kFailed;
        }
        std::optional<std::vector<std::size_t>> assignment;
        if (assignment_seed) {
          std::mt19937_64 rng(*assignment_seed);
          assignment = random_coset_assignment(fam->group().order() / fam->forbidden().order() - 1, rng);
          prov["coset_assignment"] = *assignment;
        }
        return emit_matrix(opt, symmetric_from_ddf(*fam, seed_matrix, assignment), prov, true, false);
      }
      if (h_check->parsed()) {
        const auto m = read_matrix(matrix_path);
        const auto had = check_hadamard(m);
        if (!had.ok) {
          std::cerr << "not Hadamard: " << had.witness << "\n";
          return kFailed;
        }
        const auto fp = equivalence_invariants(m);
        json out{{"order", m.order()}, {"hadamard", true}, {"symmetric", is_symmetric(m)}, {"skew", is_skew(m)},
                 {"fingerprint", fingerprint_to_json(fp)}};
        emit(opt, opt.format == "json" ? dump(out) : "Hadamard of order " + std::to_string(m.order()) +
                                                         (is_symmetric(m) ? ", symmetric" : "") + (is_skew(m) ? ", skew" : "") +
                                                         "\n" + fp.to_string() + "\n");
        return kOk;
      }
    }

    if (search_cmd->parsed()) {
      auto spec = spec_from_json(read_document(spec_path));
      if (seed) spec.seed = *seed;
      if (budget) spec.max_nodes = *budget;
      if (max_solutions) spec.max_solutions = *max_solutions;
      if (!mode_override.empty()) spec.mode = mode_override == "exhaustive" ? SearchMode::exhaustive : SearchMode::randomized;
      spec.threads = threads;
      if (auto why = spec_infeasibility(spec)) {
        std::cerr << "infeasible search spec: " << *why << "\n";
        return kUsage;
      }
      auto result = search_ddf(spec);
      auto certs = result.certificates;
      if (dedupe_orbits) certs = dedupe(certs, {false, true, true});
      json out{{"certificates", json::array()}};
      std::string text;
      for (const auto& c : certs) {
        out["certificates"].push_back(certificate_to_json(c, spec));
        text += family_text(c.family);
      }
      out["summary"] = {{"certificates", certs.size()}, {"found", result.certificates.size()}, {"nodes", result.nodes}, {"complete", result.complete}};
      emit(opt, opt.format == "json" ? dump(out) : text);
      std::cerr << "search: " << certs.size() << " certificate(s), " << result.certificates.size() << " found, " << result.nodes
                << " nodes, " << (result.complete ? "complete" : "incomplete") << "\n";
      if (timing) std::cerr << "wall time: " << result.wall_seconds << " s\n";
      return kOk;
    }
  } catch (const DesignError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
