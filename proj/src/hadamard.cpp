#include "designforge/hadamard.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "designforge/error.hpp"

namespace designforge {

SignMatrix::SignMatrix(std::size_t order, int fill) : n_(order), e_(order * order, static_cast<std::int8_t>(fill)) {
  if (fill != 1 && fill != -1) throw DesignError("sign matrix entries must be +1 or -1");
}

SignMatrix SignMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  SignMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DesignError("sign matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

SignMatrix SignMatrix::from_text(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<int> row;
    for (const char c : line) {
      if (c == '+') row.push_back(1);
      else if (c == '-') row.push_back(-1);
      else throw DesignError(std::string("unexpected character '") + c + "' in matrix text");
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

void SignMatrix::set(std::size_t i, std::size_t j, int v) {
  if (v != 1 && v != -1) throw DesignError("sign matrix entries must be +1 or -1, got " + std::to_string(v));
  e_[i * n_ + j] = static_cast<std::int8_t>(v);
}

SignMatrix SignMatrix::transposed() const {
  SignMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t.e_[j * n_ + i] = e_[i * n_ + j];
  }
  t.labels = labels;
  return t;
}

std::vector<std::vector<int>> SignMatrix::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

std::string SignMatrix::to_text() const {
  std::string out;
  out.reserve(n_ * (n_ + 1));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out.push_back((*this)(i, j) > 0 ? '+' : '-');
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------

IntMatrix IntMatrix::from_sign(const SignMatrix& m) {
  IntMatrix out(m.order(), m.order());
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) out.at(i, j) = m(i, j);
  }
  return out;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols != o.rows) throw DesignError("matrix product: shape mismatch");
  IntMatrix out(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      const std::int64_t a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols; ++j) out.at(i, j) += a * o.at(k, j);
    }
  }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows != o.rows || cols != o.cols) throw DesignError("matrix sum: shape mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data.size(); ++i) out.data[i] += o.data[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + o.scaled(-1); }

IntMatrix IntMatrix::scaled(std::int64_t s) const {
  IntMatrix out = *this;
  for (auto& v : out.data) v *= s;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Rows as bitsets, bit set for -1.
std::vector<std::vector<std::uint64_t>> pack_rows(const SignMatrix& m) {
  const std::size_t n = m.order();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> out(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0) out[i][j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  return out;
}

std::int64_t packed_dot(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b, std::size_t n) {
  std::int64_t diff = 0;
  for (std::size_t w = 0; w < a.size(); ++w) diff += std::popcount(a[w] ^ b[w]);
  return static_cast<std::int64_t>(n) - 2 * diff;
}

std::string orthogonality_witness(const SignMatrix& m, const char* what) {
  const auto packed = pack_rows(m);
  const std::size_t n = m.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto d = packed_dot(packed[i], packed[j], n);
      if (d != 0) {
        std::ostringstream os;
        os << what << " " << i << " . " << what << " " << j << " = " << d << ", expected 0";
        return os.str();
      }
    }
  }
  return {};
}

}  // namespace

MatrixCheck check_hadamard(const SignMatrix& m) {
  auto w = orthogonality_witness(m, "row");
  if (w.empty()) w = orthogonality_witness(m.transposed(), "column");
  return {w.empty(), w};
}

MatrixCheck check_symmetric(const SignMatrix& m) {
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = i + 1; j < m.order(); ++j) {
      if (m(i, j) != m(j, i)) {
        return {false, "M[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(m(i, j)) +
                           " but M[" + std::to_string(j) + "][" + std::to_string(i) + "] = " + std::to_string(m(j, i))};
      }
    }
  }
  return {true, {}};
}

MatrixCheck check_skew(const SignMatrix& m) {
  for (std::size_t i = 0; i < m.order(); ++i) {
    if (m(i, i) != 1) return {false, "M[" + std::to_string(i) + "][" + std::to_string(i) + "] = -1, expected 1"};
    for (std::size_t j = i + 1; j < m.order(); ++j) {
      if (m(i, j) != -m(j, i)) {
        return {false, "M[" + std::to_string(i) + "][" + std::to_string(j) + "] + M[" + std::to_string(j) + "][" +
                           std::to_string(i) + "] = " + std::to_string(m(i, j) + m(j, i)) + ", expected 0"};
      }
    }
  }
  return {true, {}};
}

SignMatrix sylvester(unsigned k) {
  if (k > 14) throw DesignError("Sylvester order 2^" + std::to_string(k) + " is too large");
  SignMatrix h(1);
  for (unsigned step = 0; step < k; ++step) {
    const std::size_t n = h.order();
    SignMatrix next(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const int v = h(i, j);
        next.set(i, j, v);
        next.set(i, j + n, v);
        next.set(i + n, j, v);
        next.set(i + n, j + n, -v);
      }
    }
    h = std::move(next);
  }
  return h;
}

Normalization normalize(const SignMatrix& h) {
  const std::size_t n = h.order();
  if (n == 0) throw DesignError("cannot normalize an empty matrix");
  Normalization out{h, std::vector<int>(n, 1), std::vector<int>(n, 1)};
  for (std::size_t i = 0; i < n; ++i) out.row_signs[i] = h(i, 0);
  for (std::size_t j = 0; j < n; ++j) out.col_signs[j] = h(0, j) * out.row_signs[0];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.matrix.set(i, j, out.row_signs[i] * h(i, j) * out.col_signs[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<char> block_mask(const FiniteAbelianGroup& g, const Block& b) {
  std::vector<char> mask(g.order(), 0);
  for (const auto& a : b.elements) mask[g.index_of(a)] = 1;
  return mask;
}

bool is_skew_block(const FiniteAbelianGroup& g, const Block& b) {
  for (const auto& a : b.elements) {
    if (b.contains(g.negate(a))) return false;
  }
  return true;
}

}  // namespace

SignMatrix skew_from_df(const DifferenceFamily& family) {
  const auto& g = family.group();
  const std::size_t v = g.order();
  if (!family.is_plain()) throw DesignError("skew array needs a plain DF (trivial forbidden subgroup)");
  if (family.blocks().size() != 2) throw DesignError("skew array needs exactly two blocks");
  if (v % 2 == 0) throw DesignError("skew array needs |G| = 2m+1, got even order " + std::to_string(v));
  const std::size_t m = (v - 1) / 2;
  for (const auto& b : family.blocks()) {
    if (b.size() != m) throw DesignError("skew array needs blocks of size m = " + std::to_string(m));
  }
  const auto report = verify(family);
  if (!report.ok || report.mu != static_cast<std::int64_t>(m) - 1) {
    throw DesignError("skew array needs a (G, m, m-1)-DF: " + report.summary());
  }
  std::size_t ia = 2;
  for (std::size_t i = 0; i < 2 && ia == 2; ++i) {
    if (is_skew_block(g, family.blocks()[i])) ia = i;
  }
  if (ia == 2) throw DesignError("skewness condition fails: every block contains some a together with -a");
  const auto fa = block_mask(g, family.blocks()[ia]);
  const auto fb = block_mask(g, family.blocks()[1 - ia]);

  const std::size_t order = 2 * v + 2;
  SignMatrix out(order);
  out.set(1, 0, -1);
  for (std::size_t i = 0; i < v; ++i) {
    out.set(1, 2 + v + i, -1);
    out.set(2 + i, 0, -1);
    out.set(2 + i, 1, -1);
    out.set(2 + v + i, 0, -1);
    for (std::size_t j = 0; j < v; ++j) {
      const int a = fa[g.sub_index(i, j)] ? -1 : 1;
      const int b = fb[g.add_index(i, j)] ? -1 : 1;
      out.set(2 + i, 2 + j, a);
      out.set(2 + i, 2 + v + j, b);
      out.set(2 + v + i, 2 + j, -b);
      out.set(2 + v + i, 2 + v + j, a);
    }
  }
  out.labels = {"inf0", "inf1"};
  for (int copy = 0; copy < 2; ++copy) {
    for (std::size_t i = 0; i < v; ++i) out.labels.push_back(g.element_at(i).to_string());
  }
  if (auto c = check_hadamard(out); !c.ok) throw DesignError("internal: skew array is not Hadamard: " + c.witness);
  if (auto c = check_skew(out); !c.ok) throw DesignError("internal: skew array is not skew: " + c.witness);
  return out;
}

// ---------------------------------------------------------------------------

std::string Thm41Report::summary() const {
  if (ok) return "preconditions hold";
  std::string out = "preconditions fail:";
  for (const auto& f : failures) out += " " + f + ";";
  return out;
}

Thm41Report check_thm41_preconditions(const DifferenceFamily& family, std::size_t m) {
  Thm41Report r;
  auto fail = [&](std::string s) { r.failures.push_back(std::move(s)); };
  const auto& g = family.group();
  const auto& n = family.forbidden();
  const auto mi = static_cast<std::int64_t>(m);
  if (m < 4 || m % 4 != 0) fail("m = " + std::to_string(m) + " is not a positive multiple of 4");
  if (g.order() != m * (m - 1) / 2) fail("|G| = " + std::to_string(g.order()) + ", expected m(m-1)/2 = " + std::to_string(m * (m - 1) / 2));
  if (n.order() * 2 != m) fail("|N| = " + std::to_string(n.order()) + ", expected m/2 = " + std::to_string(m / 2));
  if (family.blocks().size() != 2) {
    fail("expected two blocks, got " + std::to_string(family.blocks().size()));
    return r;
  }
  if (!r.failures.empty()) return r;

  const std::size_t k = m * (m - 2) / 4;
  for (std::size_t i = 0; i < 2; ++i) {
    if (family.blocks()[i].size() != k) {
      fail("|D" + std::to_string(i + 1) + "| = " + std::to_string(family.blocks()[i].size()) + ", expected m(m-2)/4 = " + std::to_string(k));
    }
  }
  DifferenceFamily probe = family;
  probe.set_declared({mi * (mi - 4) / 4, mi * (mi - 3) / 4, {k, k}});
  const auto report = verify(probe);
  if (!report.ok) fail("DDF parameters (m(m-4)/4, m(m-3)/4): " + report.summary());

  const auto& d1 = family.blocks()[0];
  for (const auto& a : d1.elements) {
    if (!d1.contains(g.negate(a))) {
      fail("(i) " + a.to_string() + " in D1 but " + g.negate(a).to_string() + " is not");
      break;
    }
  }
  const auto cs = cosets(g, n);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& b = family.blocks()[i];
    for (const auto& c : cs) {
      std::size_t count = 0;
      for (const auto& x : c.members) count += b.contains(x) ? 1 : 0;
      const bool is_n = n.contains(c.representative);
      const std::size_t want = is_n ? 0 : m / 4;
      if (count != want) {
        fail("(ii) |D" + std::to_string(i + 1) + " ∩ (N + " + c.representative.to_string() + ")| = " +
             std::to_string(count) + ", expected " + std::to_string(want));
        break;
      }
    }
  }
  r.ok = r.failures.empty();
  return r;
}

std::vector<std::size_t> random_coset_assignment(std::size_t cosets, std::mt19937_64& rng) {
  std::vector<std::size_t> out(cosets);
  std::iota(out.begin(), out.end(), 0);
  for (std::size_t i = cosets; i > 1; --i) std::swap(out[i - 1], out[uniform_below(rng, i)]);
  return out;
}

SymmetricArrayParts symmetric_array(const DifferenceFamily& family, const SignMatrix& h,
                                    std::optional<std::vector<std::size_t>> coset_assignment) {
  const std::size_t m = h.order();
  if (!is_hadamard(h)) throw DesignError("seed matrix of order " + std::to_string(m) + " is not Hadamard");
  const auto pre = check_thm41_preconditions(family, m);
  if (!pre.ok) throw DesignError(pre.summary());

  SymmetricArrayParts p;
  p.m = m;
  p.group = family.group();
  p.n_subgroup = family.forbidden();
  p.seed = normalize(h);
  const auto& g = p.group;
  const std::size_t v = g.order();
  const auto cs = cosets(g, p.n_subgroup);
  p.coset_of.assign(v, 0);
  for (std::size_t c = 0; c < cs.size(); ++c) {
    for (const auto& x : cs[c].members) p.coset_of[g.index_of(x)] = c;
  }
  p.coset_assignment = coset_assignment.value_or(std::vector<std::size_t>{});
  if (!coset_assignment) {
    p.coset_assignment.resize(cs.size());
    std::iota(p.coset_assignment.begin(), p.coset_assignment.end(), 0);
  }
  {
    auto sorted = p.coset_assignment;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> want(cs.size());
    std::iota(want.begin(), want.end(), 0);
    if (sorted != want) throw DesignError("coset assignment is not a bijection onto the rows of H'");
  }

  const auto f1 = block_mask(g, family.blocks()[0]);
  const auto f2 = block_mask(g, family.blocks()[1]);
  p.A = IntMatrix(v, v);
  p.B = IntMatrix(v, v);
  p.C = IntMatrix(v, v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      p.A.at(i, j) = f1[g.sub_index(i, j)];
      p.B.at(i, j) = f2[g.add_index(i, j)];
      p.C.at(i, j) = p.n_subgroup.contains_index(g.add_index(i, j)) ? 1 : 0;
    }
  }
  const IntMatrix J(v, v, 1);
  p.Ap = p.A.scaled(2) - J;
  p.Bp = p.B.scaled(2) - J;
  p.H1 = IntMatrix(v, m);
  p.H2 = IntMatrix(v, m);
  for (std::size_t i = 0; i < v; ++i) {
    const std::size_t row = 1 + p.coset_assignment[p.coset_of[i]];
    const std::size_t neg_row = 1 + p.coset_assignment[p.coset_of[g.neg_index(i)]];
    for (std::size_t j = 0; j < m; ++j) {
      p.H1.at(i, j) = p.seed.matrix(row, j);
      p.H2.at(i, j) = -p.seed.matrix(neg_row, j);
    }
  }

  // [[-J, H1^T, H2^T], [H1, B', A'], [H2, A', -B' - 2C]]
  const std::size_t order = m + 2 * v;
  IntMatrix big(order, order);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) big.at(i, j) = -1;
  }
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      big.at(m + i, j) = big.at(j, m + i) = p.H1.at(i, j);
      big.at(m + v + i, j) = big.at(j, m + v + i) = p.H2.at(i, j);
    }
    for (std::size_t j = 0; j < v; ++j) {
      big.at(m + i, m + j) = p.Bp.at(i, j);
      big.at(m + i, m + v + j) = p.Ap.at(i, j);
      big.at(m + v + i, m + j) = p.Ap.at(i, j);
      big.at(m + v + i, m + v + j) = -p.Bp.at(i, j) - 2 * p.C.at(i, j);
    }
  }
  p.M = SignMatrix(order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      const auto x = big.at(i, j);
      if (x != 1 && x != -1) {
        throw DesignError("array entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(x) +
                          " is not a sign");
      }
      p.M.set(i, j, static_cast<int>(x));
    }
  }
  for (std::size_t i = 0; i < m; ++i) p.M.labels.push_back("s" + std::to_string(i));
  for (const char* part : {"g", "g'"}) {
    for (std::size_t i = 0; i < v; ++i) p.M.labels.push_back(part + g.element_at(i).to_string());
  }
  return p;
}

SignMatrix symmetric_from_ddf(const DifferenceFamily& family, const SignMatrix& h,
                              std::optional<std::vector<std::size_t>> coset_assignment) {
  auto parts = symmetric_array(family, h, std::move(coset_assignment));
  const auto had = check_hadamard(parts.M);
  const auto sym = check_symmetric(parts.M);
  if (!had.ok || !sym.ok) {
    for (const auto& c : claim_tests(parts)) {
      if (!c.ok) throw DesignError("claim " + std::to_string(c.number) + " fails: " + c.witness);
    }
    throw DesignError("assembled array fails: " + (had.ok ? sym.witness : had.witness));
  }
  return std::move(parts.M);
}

// ---------------------------------------------------------------------------

namespace {

// Compares `actual` against expected(i, j) entrywise.
template <typename F>
std::string pattern_witness(const IntMatrix& actual, const std::string& name, F expected) {
  for (std::size_t i = 0; i < actual.rows; ++i) {
    for (std::size_t j = 0; j < actual.cols; ++j) {
      const std::int64_t want = expected(i, j);
      if (actual.at(i, j) != want) {
        return name + "[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(actual.at(i, j)) +
               ", expected " + std::to_string(want);
      }
    }
  }
  return {};
}

}  // namespace

std::vector<ClaimResult> claim_tests(const SymmetricArrayParts& p) {
  const auto& g = p.group;
  const auto& n = p.n_subgroup;
  const auto m = static_cast<std::int64_t>(p.m);
  auto diff_in_n = [&](std::size_t i, std::size_t j) { return n.contains_index(g.sub_index(i, j)); };
  auto sum_in_n = [&](std::size_t i, std::size_t j) { return n.contains_index(g.add_index(i, j)); };
  const auto H1t = p.H1.transposed();
  const auto H2t = p.H2.transposed();
  const auto Apt = p.Ap.transposed();
  const auto Bpt = p.Bp.transposed();
  const auto Ct = p.C.transposed();

  std::vector<ClaimResult> out;
  auto add = [&](int number, std::string statement, std::string witness) {
    out.push_back({number, std::move(statement), witness.empty(), std::move(witness)});
  };

  {
    auto w = pattern_witness(p.H1 * H1t, "H1 H1^T", [&](auto i, auto j) { return diff_in_n(i, j) ? m : 0; });
    if (w.empty()) w = pattern_witness(p.H2 * H2t, "H2 H2^T", [&](auto i, auto j) { return diff_in_n(i, j) ? m : 0; });
    add(1, "H_l H_l^T = m if i-j in N, else 0", w);
  }
  {
    auto expected = [&](auto i, auto j) { return i == j ? m * (m - 1) / 2 : -m / 2; };
    auto w = pattern_witness(H1t * p.H1, "H1^T H1", expected);
    if (w.empty()) w = pattern_witness(H2t * p.H2, "H2^T H2", expected);
    add(2, "H_l^T H_l = m(m-1)/2 on the diagonal, -m/2 elsewhere", w);
  }
  add(3, "H1 H2^T = -m if i+j in N, else 0",
      pattern_witness(p.H1 * H2t, "H1 H2^T", [&](auto i, auto j) { return sum_in_n(i, j) ? -m : 0; }));
  add(4, "C C^T = m/2 if i-j in N, else 0",
      pattern_witness(p.C * Ct, "C C^T", [&](auto i, auto j) { return diff_in_n(i, j) ? m / 2 : 0; }));
  {
    auto w = pattern_witness(p.A * p.A.transposed() + p.B * p.B.transposed(), "AA^T+BB^T", [&](auto i, auto j) {
      return i == j ? m * (m - 2) / 2 : diff_in_n(i, j) ? m * (m - 4) / 4 : m * (m - 3) / 4;
    });
    if (w.empty()) {
      w = pattern_witness(p.Ap * Apt + p.Bp * Bpt, "A'A'^T+B'B'^T", [&](auto i, auto j) {
        return i == j ? m * (m - 1) : diff_in_n(i, j) ? -m : 0;
      });
    }
    add(5, "A'A'^T + B'B'^T = m(m-1) on the diagonal, -m if i-j in N, else 0", w);
  }
  add(6, "A'C^T = -m/2 if i+j in N, else 0",
      pattern_witness(p.Ap * Ct, "A'C^T", [&](auto i, auto j) { return sum_in_n(i, j) ? -m / 2 : 0; }));
  {
    auto w = pattern_witness(p.Bp * Ct, "B'C^T", [&](auto i, auto j) { return diff_in_n(i, j) ? -m / 2 : 0; });
    if (w.empty()) w = pattern_witness(p.C * Bpt, "CB'^T", [&](auto i, auto j) { return diff_in_n(i, j) ? -m / 2 : 0; });
    add(7, "B'C^T = CB'^T = -m/2 if i-j in N, else 0", w);
  }
  add(8, "B'H1 + A'H2 = O", pattern_witness(p.Bp * p.H1 + p.Ap * p.H2, "B'H1+A'H2", [](auto, auto) { return 0; }));
  add(9, "A'H1 - B'H2 - 2CH2 = O",
      pattern_witness(p.Ap * p.H1 - p.Bp * p.H2 - (p.C * p.H2).scaled(2), "A'H1-B'H2-2CH2", [](auto, auto) { return 0; }));
  {
    const auto lhs = p.Ap * Bpt;
    const auto rhs = p.Bp * Apt;
    add(10, "A'B'^T = B'A'^T", pattern_witness(lhs, "A'B'^T", [&](auto i, auto j) { return rhs.at(i, j); }));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "order=" << order << " bordered_rank=" << bordered_rank;
  if (profile_computed) {
    os << " profile={";
    bool first = true;
    for (const auto& [k, v] : four_profile) {
      os << (first ? "" : ",") << k << ":" << v;
      first = false;
    }
    os << "}";
  }
  return os.str();
}

namespace {

std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows) {
  std::size_t rank = 0;
  const std::size_t bits = rows.empty() ? 0 : rows[0].size() * 64;
  for (std::size_t col = 0; col < bits && rank < rows.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][w] & bit)) {
        for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Fingerprint equivalence_invariants(const SignMatrix& m) {
  if (auto c = check_hadamard(m); !c.ok) throw DesignError("fingerprint needs a Hadamard matrix: " + c.witness);
  Fingerprint f;
  const std::size_t n = m.order();
  f.order = n;

  // Bordered (M+J)/2: row 0 = (0, 1, ..., 1), row i+1 = (1, [M_ij = 1]).
  const std::size_t words = (n + 1 + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(n + 1, std::vector<std::uint64_t>(words, 0));
  auto set_bit = [&](std::size_t r, std::size_t c) { rows[r][c / 64] |= std::uint64_t{1} << (c % 64); };
  for (std::size_t j = 0; j < n; ++j) set_bit(0, j + 1);
  for (std::size_t i = 0; i < n; ++i) {
    set_bit(i + 1, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) > 0) set_bit(i + 1, j + 1);
    }
  }
  f.bordered_rank = gf2_rank(std::move(rows));

  if (n <= kFourProfileMaxOrder) {
    f.profile_computed = true;
    const auto packed = pack_rows(m);
    std::vector<std::uint64_t> ab(packed.empty() ? 0 : packed[0].size());
    std::vector<std::uint64_t> abc(ab.size());
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t w = 0; w < ab.size(); ++w) ab[w] = packed[a][w] ^ packed[b][w];
        for (std::size_t c = b + 1; c < n; ++c) {
          for (std::size_t w = 0; w < ab.size(); ++w) abc[w] = ab[w] ^ packed[c][w];
          for (std::size_t d = c + 1; d < n; ++d) ++f.four_profile[std::abs(packed_dot(abc, packed[d], n))];
        }
      }
    }
  }
  return f;
}

SignMatrix random_equivalent(const SignMatrix& m, std::mt19937_64& rng) {
  const std::size_t n = m.order();
  const auto rp = random_coset_assignment(n, rng);
  const auto cp = random_coset_assignment(n, rng);
  std::vector<int> rs(n), cs(n);
  for (auto& s : rs) s = uniform_below(rng, 2) ? -1 : 1;
  for (auto& s : cs) s = uniform_below(rng, 2) ? -1 : 1;
  SignMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, rs[i] * cs[j] * m(rp[i], cp[j]));
  }
  return out;
}

}  // namespace designforge
