#include "braidcat/invariants.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace braidcat {

namespace {

Cplx cpow_int(Cplx base, long long e) {
  if (e < 0) return 1.0 / cpow_int(base, -e);
  Cplx acc = 1.0;
  Cplx cur = base;
  while (e > 0) {
    if (e & 1) acc *= cur;
    cur *= cur;
    e >>= 1;
  }
  return acc;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// sum_c d_c tr(rho_c(w)) over all total charges with a nonempty sector.
Cplx raw_quantum_trace(const CategoryData& cat, const std::vector<int>& leaves,
                       const BraidWord& word, bool* any_sector = nullptr) {
  std::vector<double> dims = quantum_dimensions(cat);
  Cplx acc = 0.0;
  bool found = false;
  for (int c = 0; c < cat.n_labels(); ++c) {
    if (dimension(cat, leaves, c) == 0) continue;
    found = true;
    BraidRep rep = build_rep(cat, leaves, c);
    acc += dims[c] * apply_word(rep, word).trace();
  }
  if (any_sector) *any_sector = found;
  return acc;
}

}  // namespace

int writhe(const BraidWord& word) {
  int w = 0;
  for (const BraidLetter& l : word.letters) w += l.exponent;
  return w;
}

int closure_component_count(const BraidWord& word) {
  const int n = word.n_strands;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (const BraidLetter& l : word.letters)
    std::swap(perm[l.index - 1], perm[l.index]);
  std::vector<bool> seen(n, false);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return cycles;
}

Cplx markov_trace(const CategoryData& cat, const std::vector<int>& leaves,
                  const BraidWord& word) {
  if (static_cast<int>(leaves.size()) != word.n_strands)
    throw std::invalid_argument("strand count mismatch");
  bool any = false;
  Cplx raw = raw_quantum_trace(cat, leaves, word, &any);
  if (!any) throw std::runtime_error("zero-dimensional total space");
  std::vector<double> dims = quantum_dimensions(cat);
  double global = 0.0;
  for (double d : dims) global += d * d;
  return raw / global;
}

Cplx jones_at_fibonacci_root(const BraidWord& word) {
  static const CategoryData fib = fibonacci_category();
  const int tau = 1;
  std::vector<int> leaves(word.n_strands, tau);
  Cplx raw = raw_quantum_trace(fib, leaves, word);
  const double d_tau = quantum_dimensions(fib)[tau];
  const double twist_angle = std::arg(fib.twists[tau]);
  Cplx value = std::polar(1.0, -writhe(word) * twist_angle) * raw / d_tau;
  // Square-root-of-t convention: line the multi-component values up with the
  // state-sum oracle at the principal fourth root.
  if ((closure_component_count(word) - 1) % 2 != 0) value = -value;
  return value;
}

Cplx kauffman_bracket_oracle(const BraidWord& word, Cplx t) {
  const int m = static_cast<int>(word.letters.size());
  if (m > 20) throw std::runtime_error("oracle limit exceeded");
  const int n = word.n_strands;

  const Cplx a = std::exp(-std::log(t) / 4.0);
  const Cplx delta = -a * a - 1.0 / (a * a);

  std::vector<Cplx> apow(2 * m + 1);  // A^{e}, e = -m..m
  for (int e = -m; e <= m; ++e) apow[e + m] = cpow_int(a, e);
  std::vector<Cplx> dpow(n + m + 1);
  dpow[0] = 1.0;
  for (int i = 1; i <= n + m; ++i) dpow[i] = dpow[i - 1] * delta;

  Cplx bracket = 0.0;
  std::vector<int> wire(n);
  for (std::uint64_t state = 0; state < (std::uint64_t(1) << m); ++state) {
    UnionFind uf(n + m);
    std::iota(wire.begin(), wire.end(), 0);
    int next_wire = n;
    int expo = 0;
    for (int l = 0; l < m; ++l) {
      const int pos = word.letters[l].index - 1;
      const int sign = word.letters[l].exponent;
      if ((state >> l) & 1) {
        // cup-cap smoothing
        expo += sign;
        uf.unite(wire[pos], wire[pos + 1]);
        wire[pos] = wire[pos + 1] = next_wire++;
      } else {
        expo -= sign;  // strands pass through
      }
    }
    for (int j = 0; j < n; ++j) uf.unite(wire[j], j);
    int loops = 0;
    for (int w = 0; w < next_wire; ++w)
      if (uf.find(w) == w) ++loops;
    bracket += apow[expo + m] * dpow[loops - 1];
  }

  return cpow_int(-a * a * a, writhe(word)) * bracket;
}

}  // namespace braidcat
