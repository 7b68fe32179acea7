#include "braidcat/braid.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace braidcat {

BraidWord BraidWord::inverse() const {
  BraidWord out;
  out.n_strands = n_strands;
  out.letters.assign(letters.rbegin(), letters.rend());
  for (BraidLetter& l : out.letters) l.exponent = -l.exponent;
  return out;
}

BraidWord parse_braid_word(const std::string& text, int n_strands) {
  if (n_strands < 1) throw std::invalid_argument("n_strands must be >= 1");
  BraidWord word;
  word.n_strands = n_strands;

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const int col = static_cast<int>(pos) + 1;
    std::size_t end = text.find(' ', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    pos = end;

    std::size_t i = 0;
    if (i >= tok.size() || tok[i] != 's')
      throw BraidParseError("expected generator token at column " +
                                std::to_string(col),
                            col);
    ++i;
    std::size_t digits = 0;
    long idx = 0;
    while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') {
      idx = idx * 10 + (tok[i] - '0');
      if (idx > 1'000'000) break;
      ++i;
      ++digits;
    }
    if (digits == 0)
      throw BraidParseError(
          "expected generator index at column " + std::to_string(col), col);
    int exponent = 1;
    if (i < tok.size()) {
      if (tok.substr(i) == "^-1") {
        exponent = -1;
        i = tok.size();
      } else {
        throw BraidParseError(
            "malformed token '" + tok + "' at column " + std::to_string(col),
            col);
      }
    }
    if (idx < 1 || idx > n_strands - 1)
      throw BraidParseError("generator index " + std::to_string(idx) +
                                " out of range 1.." +
                                std::to_string(n_strands - 1) + " at column " +
                                std::to_string(col),
                            col);
    word.letters.push_back(BraidLetter{static_cast<int>(idx), exponent});
  }
  return word;
}

BraidRep build_rep(const CategoryData& cat, const std::vector<int>& leaves,
                   int total) {
  if (leaves.empty()) throw std::invalid_argument("empty leaf sequence");
  const int x = leaves[0];
  for (int l : leaves)
    if (l != x) throw std::runtime_error("inhomogeneous leaves unsupported");

  BraidRep rep;
  rep.cat = cat;
  rep.leaves = leaves;
  rep.total = total;
  rep.basis = enumerate_basis(cat, leaves, total);
  const int d = rep.basis.dim();
  if (d == 0) throw std::runtime_error("zero-dimensional fusion space");

  const int n = static_cast<int>(leaves.size());
  if (n == 1) return rep;  // B_1 has no generators

  std::map<std::vector<int>, int> index;
  for (int t = 0; t < d; ++t) index[rep.basis.trees[t].internal] = t;

  rep.generators.reserve(n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    Matrix g = Matrix::Zero(d, d);
    if (i == 1) {
      for (int t = 0; t < d; ++t) {
        std::vector<int> ch = rep.basis.trees[t].chain();
        g(t, t) = cat.r_symbol(x, x, ch[1]);
      }
    } else {
      // sigma_i: F-move at the charge between leaves i and i+1, diagonal R
      // in the paired channel, inverse F-move.
      for (int t = 0; t < d; ++t) {
        std::vector<int> ch = rep.basis.trees[t].chain();
        const int a = ch[i - 2];
        const int e = ch[i - 1];
        const int dd = ch[i];
        for (int ep : cat.channels(a, x)) {
          if (!cat.admissible(ep, x, dd)) continue;
          std::vector<int> target = rep.basis.trees[t].internal;
          target[i - 2] = ep;  // internal slot of chain position i-1
          auto it = index.find(target);
          if (it == index.end()) continue;
          Cplx acc = 0.0;
          for (int f : cat.channels(x, x)) {
            if (!cat.admissible(a, f, dd)) continue;
            acc += std::conj(cat.f_symbol(a, x, x, dd, ep, f)) *
                   cat.r_symbol(x, x, f) * cat.f_symbol(a, x, x, dd, e, f);
          }
          g(it->second, t) = acc;
        }
      }
    }
    rep.generators.push_back(std::move(g));
  }
  rep.inverses.reserve(rep.generators.size());
  for (const Matrix& g : rep.generators) rep.inverses.push_back(g.adjoint());
  return rep;
}

Matrix apply_word(const BraidRep& rep, const BraidWord& word) {
  if (word.n_strands != rep.n_strands())
    throw std::invalid_argument("strand count mismatch");
  Matrix m = Matrix::Identity(rep.dim(), rep.dim());
  for (const BraidLetter& l : word.letters) {
    const Matrix& g = (l.exponent > 0) ? rep.generators[l.index - 1]
                                       : rep.inverses[l.index - 1];
    m = m * g;
  }
  return m;
}

CheckReport verify_braid_relations(const BraidRep& rep, double tol) {
  double worst = 0.0;
  std::string where;
  const auto& g = rep.generators;
  const int m = static_cast<int>(g.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 2; j < m; ++j) {
      double dev = max_abs_diff(g[i] * g[j], g[j] * g[i]);
      if (dev > worst) {
        worst = dev;
        where = "far commutation (" + std::to_string(i + 1) + "," +
                std::to_string(j + 1) + ")";
      }
    }
  for (int i = 0; i + 1 < m; ++i) {
    double dev =
        max_abs_diff(g[i] * g[i + 1] * g[i], g[i + 1] * g[i] * g[i + 1]);
    if (dev > worst) {
      worst = dev;
      where = "Yang-Baxter (" + std::to_string(i + 1) + "," +
              std::to_string(i + 2) + ")";
    }
  }
  return make_report("braid_relations", worst, tol, where);
}

namespace {

// Hermitian traceless vectorized over the reals.
RealVector vectorize_hermitian(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  RealVector v(d * d);
  int k = 0;
  for (int i = 0; i < d; ++i) v[k++] = h(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      v[k++] = h(i, j).real();
      v[k++] = h(i, j).imag();
    }
  return v;
}

}  // namespace

LieClosureReport lie_closure_dim(const std::vector<Matrix>& generators,
                                 double rank_tol) {
  LieClosureReport report;
  if (generators.empty()) return report;
  const int d = static_cast<int>(generators[0].rows());
  for (const Matrix& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("generator dimensions differ");

  std::vector<Matrix> algebra;       // Hermitian traceless representatives
  std::vector<RealVector> ortho;     // Gram-Schmidt frame of the real span

  auto try_add = [&](const Matrix& h) -> bool {
    RealVector v = vectorize_hermitian(h);
    double norm = v.norm();
    if (norm < 1e-12) return false;
    v /= norm;
    for (const RealVector& u : ortho) v -= u.dot(v) * u;
    if (v.norm() <= rank_tol) return false;
    v.normalize();
    ortho.push_back(v);
    algebra.push_back(h / max_abs(h));
    return true;
  };

  for (const Matrix& u : generators) {
    Eigen::ComplexSchur<Matrix> schur(u);
    Matrix t = schur.matrixT();
    Matrix q = schur.matrixU();
    // A branch-cut eigenvalue gets the spectrum rotated off the cut first;
    // the resulting shift is pure trace and projects away.
    double shift = 0.0;
    for (int i = 0; i < d; ++i)
      if (std::abs(t(i, i) + Cplx(1.0, 0.0)) < 1e-9) {
        shift = 0.5;
        report.log_fallback = true;
        report.note = "eigenvalue on the log branch cut; rotated spectrum";
        break;
      }
    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      h(i, i) = std::arg(t(i, i) * std::polar(1.0, -shift)) + shift;
    h = (q * h * q.adjoint()).eval();
    h = 0.5 * (h + h.adjoint()).eval();
    h -= (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    try_add(h);
  }

  const int full = d * d - 1;
  bool grew = true;
  while (grew && static_cast<int>(algebra.size()) < full) {
    grew = false;
    const std::size_t sz = algebra.size();
    for (std::size_t i = 0; i < sz && static_cast<int>(algebra.size()) < full;
         ++i)
      for (std::size_t j = i + 1; j < sz; ++j) {
        Matrix c = Cplx(0.0, 1.0) *
                   (algebra[i] * algebra[j] - algebra[j] * algebra[i]);
        if (try_add(c)) grew = true;
        if (static_cast<int>(algebra.size()) >= full) break;
      }
  }

  report.dim = static_cast<int>(algebra.size());
  return report;
}

}  // namespace braidcat
