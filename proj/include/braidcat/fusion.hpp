#pragma once

#include "braidcat/category.hpp"

namespace braidcat {

/// Left-comb fusion tree: leaves fuse pairwise from the left, so the state is
/// fixed by the n-2 intermediate charges plus the total charge.
struct FusionTree {
  std::vector<int> leaves;
  int total = 0;
  std::vector<int> internal;  // size max(n-2, 0)

  /// Charge sequence along the comb: chain[0] = leaves[0],
  /// chain[i] = charge after fusing leaf i+1, chain[n-1] = total.
  std::vector<int> chain() const;
};

/// Ordered orthonormal basis of Hom(total, leaves[0] x ... x leaves[n-1]).
struct FusionBasis {
  std::vector<int> leaves;
  int total = 0;
  std::vector<FusionTree> trees;

  int dim() const { return static_cast<int>(trees.size()); }
  /// Position of a tree with the given internal labels; -1 if absent.
  int index_of(const std::vector<int>& internal) const;
};

/// All admissible left-comb labelings, lexicographically ordered by internal
/// label ids. An empty basis is a legal result.
FusionBasis enumerate_basis(const CategoryData& cat,
                            const std::vector<int>& leaves, int total);

/// dim Hom(total, leaves...) via iterated fusion-matrix products; independent
/// of the tree enumeration above.
int dimension(const CategoryData& cat, const std::vector<int>& leaves,
              int total);

/// Change of basis for re-associating leaves (p, p+1, p+2) of the left comb,
/// 1-based; entry (i, j) couples input tree i to re-associated tree j.
Matrix f_move_matrix(const CategoryData& cat, const FusionBasis& basis,
                     int position);

}  // namespace braidcat
