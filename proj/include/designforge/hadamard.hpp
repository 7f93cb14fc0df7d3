#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "designforge/design_core.hpp"

namespace designforge {

// Square matrix with entries +1 / -1. Labels are optional and shared by rows
// and columns.
class SignMatrix {
 public:
  SignMatrix() = default;
  explicit SignMatrix(std::size_t order, int fill = 1);
  // Throws on ragged input or entries other than +1 / -1.
  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows);
  // One row per line, '+' and '-' only.
  static SignMatrix from_text(const std::string& text);

  std::size_t order() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, int v);
  SignMatrix transposed() const;
  std::vector<std::vector<int>> rows() const;
  std::string to_text() const;

  std::vector<std::string> labels;

  bool operator==(const SignMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::int8_t> e_;
};

// Dense exact integer matrix used for the claim identities.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c, std::int64_t fill = 0) : rows(r), cols(c), data(r * c, fill) {}
  static IntMatrix from_sign(const SignMatrix& m);
  static IntMatrix identity(std::size_t n);

  std::int64_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix scaled(std::int64_t s) const;
  bool operator==(const IntMatrix&) const = default;
};

struct MatrixCheck {
  bool ok = false;
  std::string witness;  // empty when ok
};

// MM^T = vI and M^T M = vI.
MatrixCheck check_hadamard(const SignMatrix& m);
// M = M^T.
MatrixCheck check_symmetric(const SignMatrix& m);
// M + M^T = 2I.
MatrixCheck check_skew(const SignMatrix& m);
inline bool is_hadamard(const SignMatrix& m) { return check_hadamard(m).ok; }
inline bool is_symmetric(const SignMatrix& m) { return check_symmetric(m).ok; }
inline bool is_skew(const SignMatrix& m) { return check_skew(m).ok; }

// Order 2^k, normalized.
SignMatrix sylvester(unsigned k);

// diag(row_signs) * H * diag(col_signs) has first row and column all +1.
struct Normalization {
  SignMatrix matrix;
  std::vector<int> row_signs;
  std::vector<int> col_signs;
};
Normalization normalize(const SignMatrix& h);

// Two-block (G, m, m-1)-DF with |G| = 2m+1, one block D_A with D_A ∩ -D_A empty.
// Array [[1,1,e,e],[-1,1,e,-e],[-e,-e,A,B],[-e,e,-B,A]] with
// a_ij = 1 - 2 f_{D_A}(i-j), b_ij = 1 - 2 f_{D_B}(i+j). Throws DesignError
// on unmet preconditions; the result is verified Hadamard and skew.
SignMatrix skew_from_df(const DifferenceFamily& family);

struct Thm41Report {
  bool ok = false;
  std::vector<std::string> failures;
  std::string summary() const;
};
// |G| = m(m-1)/2, |N| = m/2, two blocks of size m(m-2)/4 forming a DDF with
// lambda = m(m-4)/4 and mu = m(m-3)/4, D1 = -D1, |D_i ∩ N| = 0 and
// |D_i ∩ (N+j)| = m/4 for j outside N.
Thm41Report check_thm41_preconditions(const DifferenceFamily& family, std::size_t m);

struct SymmetricArrayParts {
  std::size_t m = 0;
  FiniteAbelianGroup group;
  Subgroup n_subgroup = Subgroup::trivial(FiniteAbelianGroup{});
  std::vector<std::size_t> coset_of;           // group index -> coset index
  std::vector<std::size_t> coset_assignment;   // coset index -> row of H'
  Normalization seed;
  IntMatrix A, B, C;        // 0-1, a = f_D1(i-j), b = f_D2(i+j), c = f_N(i+j)
  IntMatrix Ap, Bp;         // 2A - J, 2B - J
  IntMatrix H1, H2;         // |G| x m
  SignMatrix M;             // order m^2
};

// Builds every part of the symmetric array; checks the preconditions but not
// the result. `coset_assignment` maps the cosets of N (in `cosets` order) to
// rows of H' and must be a bijection; default is the identity.
SymmetricArrayParts symmetric_array(const DifferenceFamily& family, const SignMatrix& h,
                                    std::optional<std::vector<std::size_t>> coset_assignment = std::nullopt);
// A random bijection cosets -> rows of H'.
std::vector<std::size_t> random_coset_assignment(std::size_t cosets, std::mt19937_64& rng);

// Verified symmetric Hadamard matrix of order m^2; throws DesignError naming
// the first failing claim if the assembled array is not Hadamard.
SignMatrix symmetric_from_ddf(const DifferenceFamily& family, const SignMatrix& h,
                              std::optional<std::vector<std::size_t>> coset_assignment = std::nullopt);

struct ClaimResult {
  int number = 0;
  std::string statement;
  bool ok = false;
  std::string witness;
};
// The ten block identities behind MM^T = m^2 I, each checked on its own.
std::vector<ClaimResult> claim_tests(const SymmetricArrayParts& parts);

// Invariant under row/column permutations and negations.
struct Fingerprint {
  std::size_t order = 0;
  bool profile_computed = false;
  std::map<std::int64_t, std::int64_t> four_profile;  // |sum_k h_ak h_bk h_ck h_dk| -> count
  std::size_t bordered_rank = 0;                      // GF(2) rank of (M+J)/2 bordered by ones
  bool operator==(const Fingerprint&) const = default;
  std::string to_string() const;
};
inline constexpr std::size_t kFourProfileMaxOrder = 128;
Fingerprint equivalence_invariants(const SignMatrix& m);

// A random row/column signed permutation of m.
SignMatrix random_equivalent(const SignMatrix& m, std::mt19937_64& rng);

}  // namespace designforge
