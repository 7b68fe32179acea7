#include "braidcat/fusion.hpp"

#include <map>
#include <stdexcept>

namespace braidcat {

namespace {

void check_labels(const CategoryData& cat, const std::vector<int>& leaves,
                  int total) {
  if (leaves.empty()) throw std::invalid_argument("empty leaf sequence");
  for (int x : leaves)
    if (x < 0 || x >= cat.n_labels())
      throw std::invalid_argument("unknown label id " + std::to_string(x));
  if (total < 0 || total >= cat.n_labels())
    throw std::invalid_argument("unknown label id " + std::to_string(total));
}

}  // namespace

std::vector<int> FusionTree::chain() const {
  const int n = static_cast<int>(leaves.size());
  std::vector<int> ch(n);
  ch[0] = leaves[0];
  for (int i = 1; i < n - 1; ++i) ch[i] = internal[i - 1];
  if (n > 1) ch[n - 1] = total;
  return ch;
}

int FusionBasis::index_of(const std::vector<int>& internal) const {
  for (std::size_t i = 0; i < trees.size(); ++i)
    if (trees[i].internal == internal) return static_cast<int>(i);
  return -1;
}

FusionBasis enumerate_basis(const CategoryData& cat,
                            const std::vector<int>& leaves, int total) {
  check_labels(cat, leaves, total);
  const int n = static_cast<int>(leaves.size());
  FusionBasis basis;
  basis.leaves = leaves;
  basis.total = total;

  if (n == 1) {
    if (leaves[0] == total)
      basis.trees.push_back(FusionTree{leaves, total, {}});
    return basis;
  }

  // DFS in ascending label order yields lexicographic internal tuples.
  std::vector<int> chain(n);
  chain[0] = leaves[0];
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n - 1) {
      if (cat.admissible(chain[n - 2], leaves[n - 1], total)) {
        FusionTree t;
        t.leaves = leaves;
        t.total = total;
        t.internal.assign(chain.begin() + 1, chain.begin() + (n - 1));
        basis.trees.push_back(std::move(t));
      }
      return;
    }
    for (int c : cat.channels(chain[i - 1], leaves[i])) {
      chain[i] = c;
      self(self, i + 1);
    }
  };
  recurse(recurse, 1);
  return basis;
}

int dimension(const CategoryData& cat, const std::vector<int>& leaves,
              int total) {
  check_labels(cat, leaves, total);
  const int L = cat.n_labels();
  std::vector<long long> v(L, 0);
  v[leaves[0]] = 1;
  for (std::size_t i = 1; i < leaves.size(); ++i) {
    std::vector<long long> next(L, 0);
    for (int e = 0; e < L; ++e) {
      if (v[e] == 0) continue;
      for (int c = 0; c < L; ++c)
        next[c] += v[e] * cat.rules.n(e, leaves[i], c);
    }
    v = std::move(next);
  }
  return static_cast<int>(v[total]);
}

Matrix f_move_matrix(const CategoryData& cat, const FusionBasis& basis,
                     int position) {
  const int n = static_cast<int>(basis.leaves.size());
  if (position < 1 || position > n - 2)
    throw std::invalid_argument("inadmissible position " +
                                std::to_string(position));
  const int p = position;  // chain slot being re-associated
  const int b = basis.leaves[p];
  const int c = basis.leaves[p + 1];

  // Enumerate the re-associated tree shape: chain slot p holds the (b x c)
  // channel f, slot p+1 the charge of chain[p-1] x f; other slots keep the
  // usual left-comb rule.
  std::vector<std::vector<int>> reassoc;
  std::vector<int> chain(n);
  chain[0] = basis.leaves[0];
  chain[n - 1] = basis.total;
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n - 1) {
      bool ok = (p + 1 == n - 1)
                    ? cat.admissible(chain[p - 1], chain[p], basis.total)
                    : cat.admissible(chain[n - 2], basis.leaves[n - 1],
                                     basis.total);
      if (ok)
        reassoc.emplace_back(chain.begin() + 1, chain.begin() + (n - 1));
      return;
    }
    if (i == p) {
      for (int f : cat.channels(b, c)) {
        chain[i] = f;
        self(self, i + 1);
      }
    } else if (i == p + 1) {
      for (int d : cat.channels(chain[p - 1], chain[p])) {
        chain[i] = d;
        self(self, i + 1);
      }
    } else {
      for (int ch : cat.channels(chain[i - 1], basis.leaves[i])) {
        chain[i] = ch;
        self(self, i + 1);
      }
    }
  };
  recurse(recurse, 1);

  std::map<std::vector<int>, int> reassoc_index;
  for (std::size_t j = 0; j < reassoc.size(); ++j)
    reassoc_index[reassoc[j]] = static_cast<int>(j);

  Matrix m = Matrix::Zero(basis.dim(), reassoc.size());
  for (int i = 0; i < basis.dim(); ++i) {
    std::vector<int> ch = basis.trees[i].chain();
    const int a = ch[p - 1];
    const int d = ch[p + 1];
    const int e = ch[p];
    for (int f : cat.channels(b, c)) {
      if (!cat.admissible(a, f, d)) continue;
      std::vector<int> target(ch.begin() + 1, ch.begin() + (n - 1));
      target[p - 1] = f;  // internal tuple position of chain slot p
      auto it = reassoc_index.find(target);
      if (it == reassoc_index.end()) continue;
      m(i, it->second) = cat.f_symbol(a, b, c, d, e, f);
    }
  }
  return m;
}

}  // namespace braidcat
