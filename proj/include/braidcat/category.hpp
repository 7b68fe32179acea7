#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "braidcat/types.hpp"

namespace braidcat {

/// A simple object of the category.
struct Label {
  int id = 0;
  std::string name;
  int dual = 0;
  bool is_unit = false;
};

/// Fusion multiplicity tensor N[a][b][c]; multiplicity-free, so entries are 0/1.
struct FusionRules {
  int n_labels = 0;
  std::vector<std::uint8_t> mult;  // row-major a*L*L + b*L + c

  int n(int a, int b, int c) const {
    return mult[static_cast<std::size_t>(a) * n_labels * n_labels +
                static_cast<std::size_t>(b) * n_labels + c];
  }
  void set(int a, int b, int c, int value) {
    mult[static_cast<std::size_t>(a) * n_labels * n_labels +
         static_cast<std::size_t>(b) * n_labels + c] =
        static_cast<std::uint8_t>(value);
  }
};

/// F-symbols [F^{abc}_d]_{ef}, stored only for admissible keys.
/// Keys are packed 8 bits per index, (a,b,c,d,e,f) from the high byte down,
/// so map order is lexicographic in the key tuple.
struct FSymbolTable {
  std::map<std::uint64_t, Cplx> entries;

  static std::uint64_t key(int a, int b, int c, int d, int e, int f) {
    return (std::uint64_t(a) << 40) | (std::uint64_t(b) << 32) |
           (std::uint64_t(c) << 24) | (std::uint64_t(d) << 16) |
           (std::uint64_t(e) << 8) | std::uint64_t(f);
  }
  void set(int a, int b, int c, int d, int e, int f, Cplx v) {
    entries[key(a, b, c, d, e, f)] = v;
  }
};

/// R-symbols R^{ab}_c (scalars of unit modulus; multiplicity-free categories).
struct RSymbolTable {
  std::map<std::uint32_t, Cplx> entries;

  static std::uint32_t key(int a, int b, int c) {
    return (std::uint32_t(a) << 16) | (std::uint32_t(b) << 8) |
           std::uint32_t(c);
  }
  void set(int a, int b, int c, Cplx v) { entries[key(a, b, c)] = v; }
};

/// Complete algebraic datum of a (multiplicity-free) modular tensor category.
/// Immutable after construction; all verification functions are pure.
struct CategoryData {
  std::string name;
  std::vector<Label> labels;
  int unit = 0;
  FusionRules rules;
  FSymbolTable f;
  RSymbolTable r;
  std::vector<Cplx> twists;

  int n_labels() const { return static_cast<int>(labels.size()); }
  bool admissible(int a, int b, int c) const { return rules.n(a, b, c) > 0; }

  /// Fusion channels of a x b, ascending label id.
  std::vector<int> channels(int a, int b) const;

  /// Label id by printed name; -1 if absent.
  int label_by_name(const std::string& s) const;

  /// Scalar [F^{abc}_d]_{ef}. Throws if the key is admissible but missing,
  /// or inadmissible.
  Cplx f_symbol(int a, int b, int c, int d, int e, int f) const;

  /// R^{ab}_c with the same missing-entry policy.
  Cplx r_symbol(int a, int b, int c) const;

  /// Full block [F^{abc}_d] over admissible (e,f); index lists returned
  /// ascending so rows/cols have a reproducible order.
  Matrix f_block(int a, int b, int c, int d, std::vector<int>* e_index = nullptr,
                 std::vector<int>* f_index = nullptr) const;
};

/// Built-in instances.
CategoryData fibonacci_category();
CategoryData ising_category();
CategoryData su2k_category(int k);  // 1 <= k <= 8
CategoryData unit_category();       // single unit label; trivial data

/// Structural validation: label/dual bookkeeping, fusion-rule axioms,
/// multiplicity-freeness. Residual is the count of violations.
CheckReport validate_structure(const CategoryData& cat);

/// Axiom checks; residual is the max absolute deviation over all instances.
CheckReport verify_pentagon(const CategoryData& cat, double tol = 1e-10);
CheckReport verify_hexagon(const CategoryData& cat, double tol = 1e-10);
CheckReport verify_f_unitarity(const CategoryData& cat, double tol = 1e-10);

/// Perron-Frobenius quantum dimension of every label (d_unit = 1).
std::vector<double> quantum_dimensions(const CategoryData& cat);

/// Unnormalized S-matrix, S_{ab} = sum_c N_{ab}^c (theta_c / theta_a theta_b) d_c.
Matrix s_matrix(const CategoryData& cat);

/// Modularity = |det S| > tol.
CheckReport verify_modularity(const CategoryData& cat, double tol = 1e-10);

/// Ribbon twists from R: theta_a = d_a^{-1} sum_c d_c R^{aa}_c.
std::vector<Cplx> derive_twists(const CategoryData& cat);

}  // namespace braidcat
