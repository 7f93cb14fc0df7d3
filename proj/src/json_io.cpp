#include "designforge/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "designforge/error.hpp"

namespace designforge {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DesignError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw DesignError(std::string("bad value for ") + what + ": " + j.dump());
  }
}

}  // namespace

json group_to_json(const FiniteAbelianGroup& g) { return {{"moduli", g.moduli()}}; }

FiniteAbelianGroup group_from_json(const json& j) {
  const auto moduli = as<std::vector<std::int64_t>>(require(j, "moduli"), "moduli");
  for (const auto m : moduli) {
    if (m < 1) throw DesignError("group moduli must be >= 1");
  }
  return FiniteAbelianGroup(moduli);
}

json element_to_json(const GroupElement& a) { return a.coords; }

GroupElement element_from_json(const FiniteAbelianGroup& g, const json& j) {
  GroupElement a{as<std::vector<std::int64_t>>(j, "element")};
  if (!g.contains(a)) throw DesignError("element " + j.dump() + " is not in " + g.to_string());
  return a;
}

json family_to_json(const DifferenceFamily& f) {
  json out;
  out["group"] = group_to_json(f.group());
  json forbidden = json::array();
  for (const auto& x : f.forbidden().elements()) forbidden.push_back(element_to_json(x));
  out["forbidden"] = forbidden;
  json blocks = json::array();
  for (const auto& b : f.blocks()) {
    json block = json::array();
    for (const auto& x : b.elements) block.push_back(element_to_json(x));
    blocks.push_back(block);
  }
  out["blocks"] = blocks;
  json declared = json::object();
  const auto& d = f.declared();
  if (f.is_plain()) {
    if (d.mu) declared["lambda"] = *d.mu;
  } else {
    if (d.lambda) declared["lambda"] = *d.lambda;
    if (d.mu) declared["mu"] = *d.mu;
  }
  if (!d.block_sizes.empty()) declared["block_sizes"] = d.block_sizes;
  out["declared"] = declared;
  out["provenance"] = f.provenance();
  return out;
}

DifferenceFamily family_from_json(const json& j) {
  const auto g = group_from_json(require(j, "group"));
  std::vector<GroupElement> forbidden;
  if (j.contains("forbidden")) {
    for (const auto& x : j.at("forbidden")) forbidden.push_back(element_from_json(g, x));
  }
  const Subgroup n = forbidden.empty() ? Subgroup::trivial(g) : Subgroup::from_elements(g, std::move(forbidden));
  std::vector<Block> blocks;
  const auto& jb = require(j, "blocks");
  if (!jb.is_array()) throw DesignError("\"blocks\" must be an array");
  for (const auto& b : jb) {
    if (!b.is_array()) throw DesignError("each block must be an array of elements");
    std::vector<GroupElement> elems;
    for (const auto& x : b) elems.push_back(element_from_json(g, x));
    blocks.push_back(Block::make(g, std::move(elems)));
  }
  DesignParams declared;
  if (j.contains("declared")) {
    const auto& d = j.at("declared");
    std::optional<std::int64_t> lambda, mu;
    if (d.contains("lambda")) lambda = as<std::int64_t>(d.at("lambda"), "lambda");
    if (d.contains("mu")) mu = as<std::int64_t>(d.at("mu"), "mu");
    if (n.is_trivial()) {
      declared.mu = mu ? mu : lambda;
    } else {
      declared.lambda = lambda;
      declared.mu = mu;
    }
    if (d.contains("block_sizes")) declared.block_sizes = as<std::vector<std::size_t>>(d.at("block_sizes"), "block_sizes");
  }
  const json prov = j.contains("provenance") ? j.at("provenance") : json::object();
  return DifferenceFamily(g, n, std::move(blocks), declared, prov);
}

json report_to_json(const VerificationReport& r) {
  json out{{"ok", r.ok}, {"block_sizes", r.block_sizes}, {"counting_identity", r.counting_identity}};
  out["lambda"] = r.lambda ? json(*r.lambda) : json(nullptr);
  out["mu"] = r.mu ? json(*r.mu) : json(nullptr);
  if (r.witness) {
    out["witness"] = {{"difference", element_to_json(r.witness->difference)},
                      {"expected", r.witness->expected},
                      {"actual", r.witness->actual},
                      {"region", r.witness->region}};
  }
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

json spec_to_json(const SearchSpec& s) {
  json forbidden = json::array();
  for (const auto& x : s.n.elements()) forbidden.push_back(element_to_json(x));
  return {{"group", group_to_json(s.group)},
          {"forbidden", forbidden},
          {"m", s.m},
          {"mode", s.mode == SearchMode::exhaustive ? "exhaustive" : "randomized"},
          {"seed", s.seed},
          {"budget", {{"max_nodes", s.max_nodes}, {"max_solutions", s.max_solutions}, {"restarts", s.restarts}, {"steps", s.steps}}}};
}

SearchSpec spec_from_json(const json& j) {
  SearchSpec s;
  s.group = group_from_json(require(j, "group"));
  std::vector<GroupElement> forbidden;
  for (const auto& x : require(j, "forbidden")) forbidden.push_back(element_from_json(s.group, x));
  s.n = Subgroup::from_elements(s.group, std::move(forbidden));
  s.m = as<std::size_t>(require(j, "m"), "m");
  if (j.contains("mode")) {
    const auto mode = as<std::string>(j.at("mode"), "mode");
    if (mode == "exhaustive") s.mode = SearchMode::exhaustive;
    else if (mode == "randomized") s.mode = SearchMode::randomized;
    else throw DesignError("mode must be \"exhaustive\" or \"randomized\", got \"" + mode + "\"");
  }
  if (j.contains("seed")) s.seed = as<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("budget")) {
    const auto& b = j.at("budget");
    if (b.contains("max_nodes")) s.max_nodes = as<std::uint64_t>(b.at("max_nodes"), "max_nodes");
    if (b.contains("max_solutions")) s.max_solutions = as<std::size_t>(b.at("max_solutions"), "max_solutions");
    if (b.contains("restarts")) s.restarts = as<std::uint64_t>(b.at("restarts"), "restarts");
    if (b.contains("steps")) s.steps = as<std::uint64_t>(b.at("steps"), "steps");
  }
  return s;
}

json certificate_to_json(const Certificate& c, const SearchSpec& s) {
  json out = family_to_json(c.family);
  out["spec"] = spec_to_json(s);
  out["seed"] = c.seed;
  out["nodes"] = c.nodes;
  return out;
}

json matrix_to_json(const SignMatrix& m, const json& provenance) {
  json out{{"order", m.order()}, {"rows", m.rows()}};
  if (!m.labels.empty()) out["labels"] = m.labels;
  out["provenance"] = provenance;
  return out;
}

SignMatrix matrix_from_json(const json& j) {
  auto m = SignMatrix::from_rows(as<std::vector<std::vector<int>>>(require(j, "rows"), "rows"));
  if (j.contains("order") && as<std::size_t>(j.at("order"), "order") != m.order()) throw DesignError("\"order\" disagrees with \"rows\"");
  if (j.contains("labels")) m.labels = as<std::vector<std::string>>(j.at("labels"), "labels");
  return m;
}

json fingerprint_to_json(const Fingerprint& f) {
  json out{{"order", f.order}, {"bordered_rank", f.bordered_rank}};
  if (f.profile_computed) {
    json profile = json::object();
    for (const auto& [k, v] : f.four_profile) profile[std::to_string(k)] = v;
    out["four_profile"] = profile;
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DesignError(path + ": " + e.what());
  }
}

namespace {

bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j) {
    if (x.is_structured() && !(x.is_array() && x.size() <= 8 && std::all_of(x.begin(), x.end(), [](const json& y) {
          return y.is_primitive();
        }))) {
      return false;
    }
  }
  return true;
}

// Like dump(2), but arrays of scalars and of short scalar tuples stay on one line.
void write(std::string& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + json(it.key()).dump() + ": ";
      write(out, it.value(), indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write(out, j[i], indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  write(out, j, 0);
  return out + "\n";
}

}  // namespace designforge
