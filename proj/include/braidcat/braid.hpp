#pragma once

#include "braidcat/fusion.hpp"

namespace braidcat {

struct BraidLetter {
  int index = 1;     // generator index, 1..n_strands-1
  int exponent = 1;  // +1 or -1
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  int n_strands = 2;
  std::vector<BraidLetter> letters;

  BraidWord inverse() const;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

struct BraidParseError : std::runtime_error {
  int column;  // 1-based byte offset of the offending token
  BraidParseError(const std::string& msg, int col)
      : std::runtime_error(msg), column(col) {}
};

/// Grammar: word := token (space token)*; token := "s" INT ["^-1"],
/// INT in 1..n_strands-1. The empty string is the identity word.
BraidWord parse_braid_word(const std::string& text, int n_strands);

/// Unitary representation of B_n on a fusion basis with homogeneous leaves.
/// Immutable after build; all queries are pure.
struct BraidRep {
  CategoryData cat;
  std::vector<int> leaves;
  int total = 0;
  FusionBasis basis;
  std::vector<Matrix> generators;  // rho(sigma_i), i = 1..n-1
  std::vector<Matrix> inverses;

  int n_strands() const { return static_cast<int>(leaves.size()); }
  int dim() const { return basis.dim(); }
};

/// Generator i acts as F-conjugated diagonal R on the charge between leaves
/// i and i+1; matrices are cached in enumerate_basis ordering.
BraidRep build_rep(const CategoryData& cat, const std::vector<int>& leaves,
                   int total);

/// Ordered product of cached generator matrices; identity word -> identity.
Matrix apply_word(const BraidRep& rep, const BraidWord& word);

/// Max residual over far-commutation and Yang-Baxter relations.
CheckReport verify_braid_relations(const BraidRep& rep, double tol = 1e-10);

struct LieClosureReport {
  int dim = 0;
  bool log_fallback = false;  // an eigenvalue sat on the log branch cut
  std::string note;
};

/// Real dimension of the Lie algebra generated by traceless anti-Hermitian
/// logarithms of the given unitaries (d^2-1 means the closure fills su(d)).
LieClosureReport lie_closure_dim(const std::vector<Matrix>& generators,
                                 double rank_tol = 1e-8);

}  // namespace braidcat
