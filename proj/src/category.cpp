#include "braidcat/category.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace braidcat {

namespace {

constexpr double kPi = std::numbers::pi;

Cplx polar1(double angle) { return std::polar(1.0, angle); }

std::string key_string(const CategoryData& cat, int a, int b, int c, int d,
                       int e, int f) {
  std::ostringstream os;
  os << "[F^{" << cat.labels[a].name << "," << cat.labels[b].name << ","
     << cat.labels[c].name << "}_" << cat.labels[d].name << "]_{"
     << cat.labels[e].name << "," << cat.labels[f].name << "}";
  return os.str();
}

bool f_admissible(const CategoryData& cat, int a, int b, int c, int d, int e,
                  int f) {
  return cat.admissible(a, b, e) && cat.admissible(e, c, d) &&
         cat.admissible(b, c, f) && cat.admissible(a, f, d);
}

template <typename Fn>
void for_each_admissible_f_key(const CategoryData& cat, Fn&& fn) {
  const int L = cat.n_labels();
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int e : cat.channels(a, b))
        for (int c = 0; c < L; ++c)
          for (int d : cat.channels(e, c))
            for (int f : cat.channels(b, c))
              if (cat.admissible(a, f, d)) fn(a, b, c, d, e, f);
}

void fill_remaining_f(CategoryData& cat) {
  for_each_admissible_f_key(cat, [&](int a, int b, int c, int d, int e, int f) {
    auto k = FSymbolTable::key(a, b, c, d, e, f);
    if (!cat.f.entries.count(k)) cat.f.entries[k] = Cplx(1.0, 0.0);
  });
}

void fill_remaining_r(CategoryData& cat) {
  const int L = cat.n_labels();
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c : cat.channels(a, b)) {
        auto k = RSymbolTable::key(a, b, c);
        if (!cat.r.entries.count(k)) cat.r.entries[k] = Cplx(1.0, 0.0);
      }
}

}  // namespace

std::vector<int> CategoryData::channels(int a, int b) const {
  std::vector<int> out;
  for (int c = 0; c < n_labels(); ++c)
    if (rules.n(a, b, c) > 0) out.push_back(c);
  return out;
}

int CategoryData::label_by_name(const std::string& s) const {
  for (const Label& l : labels)
    if (l.name == s) return l.id;
  return -1;
}

Cplx CategoryData::f_symbol(int a, int b, int c, int d, int e, int f) const {
  auto it = this->f.entries.find(FSymbolTable::key(a, b, c, d, e, f));
  if (it == this->f.entries.end()) {
    if (f_admissible(*this, a, b, c, d, e, f))
      throw std::runtime_error("missing F-symbol entry for admissible key " +
                               key_string(*this, a, b, c, d, e, f));
    throw std::runtime_error("inadmissible F-symbol key " +
                             key_string(*this, a, b, c, d, e, f));
  }
  return it->second;
}

Cplx CategoryData::r_symbol(int a, int b, int c) const {
  auto it = this->r.entries.find(RSymbolTable::key(a, b, c));
  if (it == this->r.entries.end()) {
    std::ostringstream os;
    os << "missing R-symbol R^{" << labels[a].name << "," << labels[b].name
       << "}_" << labels[c].name;
    throw std::runtime_error(os.str());
  }
  return it->second;
}

Matrix CategoryData::f_block(int a, int b, int c, int d,
                             std::vector<int>* e_index,
                             std::vector<int>* f_index) const {
  std::vector<int> es, fs;
  for (int e : channels(a, b))
    if (admissible(e, c, d)) es.push_back(e);
  for (int f : channels(b, c))
    if (admissible(a, f, d)) fs.push_back(f);
  Matrix m(es.size(), fs.size());
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      m(i, j) = f_symbol(a, b, c, d, es[i], fs[j]);
  if (e_index) *e_index = std::move(es);
  if (f_index) *f_index = std::move(fs);
  return m;
}

// ---------------------------------------------------------------------------
// Built-in categories
// ---------------------------------------------------------------------------

CategoryData unit_category() {
  CategoryData cat;
  cat.name = "unit";
  cat.labels = {Label{0, "1", 0, true}};
  cat.unit = 0;
  cat.rules.n_labels = 1;
  cat.rules.mult.assign(1, 1);
  fill_remaining_f(cat);
  fill_remaining_r(cat);
  cat.twists = {Cplx(1.0, 0.0)};
  return cat;
}

CategoryData fibonacci_category() {
  CategoryData cat;
  cat.name = "fibonacci";
  cat.labels = {Label{0, "1", 0, true}, Label{1, "tau", 1, false}};
  cat.unit = 0;
  cat.rules.n_labels = 2;
  cat.rules.mult.assign(8, 0);
  cat.rules.set(0, 0, 0, 1);
  cat.rules.set(0, 1, 1, 1);
  cat.rules.set(1, 0, 1, 1);
  cat.rules.set(1, 1, 0, 1);
  cat.rules.set(1, 1, 1, 1);

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double ip = 1.0 / phi;
  const double sip = std::sqrt(ip);
  // [F^{tau,tau,tau}_tau] over channels {1, tau}
  cat.f.set(1, 1, 1, 1, 0, 0, ip);
  cat.f.set(1, 1, 1, 1, 0, 1, sip);
  cat.f.set(1, 1, 1, 1, 1, 0, sip);
  cat.f.set(1, 1, 1, 1, 1, 1, -ip);
  fill_remaining_f(cat);

  cat.r.set(1, 1, 0, polar1(-4.0 * kPi / 5.0));
  cat.r.set(1, 1, 1, polar1(3.0 * kPi / 5.0));
  fill_remaining_r(cat);

  cat.twists = derive_twists(cat);
  return cat;
}

CategoryData ising_category() {
  CategoryData cat;
  cat.name = "ising";
  cat.labels = {Label{0, "1", 0, true}, Label{1, "sigma", 1, false},
                Label{2, "psi", 2, false}};
  cat.unit = 0;
  cat.rules.n_labels = 3;
  cat.rules.mult.assign(27, 0);
  auto& R = cat.rules;
  for (int x = 0; x < 3; ++x) {
    R.set(0, x, x, 1);
    R.set(x, 0, x, 1);
  }
  R.set(1, 1, 0, 1);
  R.set(1, 1, 2, 1);
  R.set(1, 2, 1, 1);
  R.set(2, 1, 1, 1);
  R.set(2, 2, 0, 1);

  const double s = 1.0 / std::sqrt(2.0);
  // [F^{sigma,sigma,sigma}_sigma] over channels {1, psi}
  cat.f.set(1, 1, 1, 1, 0, 0, s);
  cat.f.set(1, 1, 1, 1, 0, 2, s);
  cat.f.set(1, 1, 1, 1, 2, 0, s);
  cat.f.set(1, 1, 1, 1, 2, 2, -s);
  cat.f.set(1, 2, 1, 2, 1, 1, -1.0);  // [F^{sigma,psi,sigma}_psi]
  cat.f.set(2, 1, 2, 1, 1, 1, -1.0);  // [F^{psi,sigma,psi}_sigma]
  fill_remaining_f(cat);

  cat.r.set(1, 1, 0, polar1(-kPi / 8.0));
  cat.r.set(1, 1, 2, polar1(3.0 * kPi / 8.0));
  cat.r.set(1, 2, 1, Cplx(0.0, -1.0));
  cat.r.set(2, 1, 1, Cplx(0.0, -1.0));
  cat.r.set(2, 2, 0, Cplx(-1.0, 0.0));
  fill_remaining_r(cat);

  cat.twists = derive_twists(cat);
  return cat;
}

// ---------------------------------------------------------------------------
// SU(2)_k from quantum 6j symbols. Labels are doubled spins 0..k.
// ---------------------------------------------------------------------------

namespace {

struct QNumbers {
  int k;
  std::vector<double> fact;  // q-factorials [n]! for n = 0..k+1

  explicit QNumbers(int level) : k(level), fact(level + 2) {
    fact[0] = 1.0;
    for (int n = 1; n <= k + 1; ++n) fact[n] = fact[n - 1] * num(n);
  }
  double num(int n) const {
    return std::sin(n * kPi / (k + 2)) / std::sin(kPi / (k + 2));
  }
  // Factorial with the root-of-unity guard: arguments outside [0, k+1]
  // signal a vanishing term in the 6j sum.
  bool valid(int n) const { return n >= 0 && n <= k + 1; }
};

double q_triangle(const QNumbers& q, int a, int b, int c) {
  return std::sqrt(q.fact[(-a + b + c) / 2] * q.fact[(a - b + c) / 2] *
                   q.fact[(a + b - c) / 2] / q.fact[(a + b + c) / 2 + 1]);
}

// {a b e; c d f}_q with doubled-integer arguments.
double q_sixj(const QNumbers& q, int a, int b, int e, int c, int d, int f) {
  const int t1 = (a + b + e) / 2;
  const int t2 = (a + d + f) / 2;
  const int t3 = (c + b + f) / 2;
  const int t4 = (c + d + e) / 2;
  const int q1 = (a + b + c + d) / 2;
  const int q2 = (a + c + e + f) / 2;
  const int q3 = (b + d + e + f) / 2;
  const int zmin = std::max({t1, t2, t3, t4});
  const int zmax = std::min({q1, q2, q3});
  double sum = 0.0;
  for (int z = zmin; z <= zmax; ++z) {
    if (!q.valid(z + 1) || !q.valid(q1 - z) || !q.valid(q2 - z) ||
        !q.valid(q3 - z))
      continue;
    double term = q.fact[z + 1] /
                  (q.fact[z - t1] * q.fact[z - t2] * q.fact[z - t3] *
                   q.fact[z - t4] * q.fact[q1 - z] * q.fact[q2 - z] *
                   q.fact[q3 - z]);
    sum += (z % 2 == 0) ? term : -term;
  }
  return q_triangle(q, a, b, e) * q_triangle(q, a, d, f) *
         q_triangle(q, c, b, f) * q_triangle(q, c, d, e) * sum;
}

}  // namespace

CategoryData su2k_category(int k) {
  if (k < 1 || k > 8) throw std::invalid_argument("unsupported level");
  CategoryData cat;
  cat.name = "su2k:" + std::to_string(k);
  const int L = k + 1;
  cat.labels.resize(L);
  for (int a = 0; a < L; ++a) {
    std::string name =
        (a % 2 == 0) ? std::to_string(a / 2) : std::to_string(a) + "/2";
    cat.labels[a] = Label{a, name, a, a == 0};
  }
  cat.unit = 0;
  cat.rules.n_labels = L;
  cat.rules.mult.assign(static_cast<std::size_t>(L) * L * L, 0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c) {
        bool ok = (a + b + c) % 2 == 0 && std::abs(a - b) <= c &&
                  c <= std::min(a + b, 2 * k - a - b);
        if (ok) cat.rules.set(a, b, c, 1);
      }

  QNumbers q(k);
  for_each_admissible_f_key(cat, [&](int a, int b, int c, int d, int e, int f) {
    double v = std::sqrt(q.num(e + 1) * q.num(f + 1)) *
               q_sixj(q, a, b, e, c, d, f);
    if (((a + b + c + d) / 2) % 2 != 0) v = -v;
    cat.f.set(a, b, c, d, e, f, v);
  });

  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c : cat.channels(a, b)) {
        double phase =
            kPi * (c * (c + 2) - a * (a + 2) - b * (b + 2)) / (4.0 * (k + 2));
        Cplx v = polar1(phase);
        if (((c - a - b) / 2) % 2 != 0) v = -v;
        cat.r.set(a, b, c, v);
      }

  cat.twists = derive_twists(cat);
  return cat;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

CheckReport validate_structure(const CategoryData& cat) {
  const int L = cat.n_labels();
  int violations = 0;
  std::string first;
  auto flag = [&](const std::string& what) {
    ++violations;
    if (first.empty()) first = what;
  };

  if (L == 0) flag("no labels");
  int unit_count = 0;
  for (int a = 0; a < L; ++a) {
    if (cat.labels[a].id != a) flag("label ids not consecutive");
    if (cat.labels[a].is_unit) ++unit_count;
    int d = cat.labels[a].dual;
    if (d < 0 || d >= L || cat.labels[d].dual != a)
      flag("dual is not an involution");
  }
  if (unit_count != 1) flag("unit label count != 1");
  if (L > 0 && !cat.labels[cat.unit].is_unit) flag("unit index mismatch");
  if (L > 0 && cat.labels[cat.unit].dual != cat.unit)
    flag("dual of unit is not unit");
  if (static_cast<int>(cat.twists.size()) != L) flag("twist table size");
  for (const Cplx& t : cat.twists)
    if (std::abs(std::abs(t) - 1.0) > 1e-9) flag("twist not unit modulus");

  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c) {
        int n = cat.rules.n(a, b, c);
        if (n > 1) flag("multiplicity > 1 (not multiplicity-free)");
        if (n != cat.rules.n(b, a, c)) flag("fusion not commutative");
      }
  for (int b = 0; b < L; ++b)
    for (int c = 0; c < L; ++c) {
      if (cat.rules.n(cat.unit, b, c) != (b == c ? 1 : 0))
        flag("unit law violated");
      if (cat.rules.n(b, cat.unit, c) != (b == c ? 1 : 0))
        flag("unit law violated");
    }
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      int expect = (b == cat.labels[a].dual) ? 1 : 0;
      if (cat.rules.n(a, b, cat.unit) != expect) flag("duality row violated");
    }
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        for (int d = 0; d < L; ++d) {
          int lhs = 0, rhs = 0;
          for (int e = 0; e < L; ++e) {
            lhs += cat.rules.n(a, b, e) * cat.rules.n(e, c, d);
            rhs += cat.rules.n(b, c, e) * cat.rules.n(a, e, d);
          }
          if (lhs != rhs) flag("fusion not associative");
        }

  CheckReport rep;
  rep.name = "structure";
  rep.residual = violations;
  rep.tol = 0.0;
  rep.pass = violations == 0;
  rep.detail = first;
  return rep;
}

CheckReport verify_pentagon(const CategoryData& cat, double tol) {
  const int L = cat.n_labels();
  double worst = 0.0;
  std::string where;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int f : cat.channels(a, b))
        for (int c = 0; c < L; ++c)
          for (int g : cat.channels(f, c))
            for (int d = 0; d < L; ++d)
              for (int e : cat.channels(g, d))
                for (int l : cat.channels(c, d)) {
                  if (!cat.admissible(f, l, e)) continue;
                  for (int kk : cat.channels(b, l)) {
                    if (!cat.admissible(a, kk, e)) continue;
                    Cplx lhs = cat.f_symbol(f, c, d, e, g, l) *
                               cat.f_symbol(a, b, l, e, f, kk);
                    Cplx rhs = 0.0;
                    for (int h : cat.channels(b, c)) {
                      if (!cat.admissible(a, h, g) ||
                          !cat.admissible(h, d, kk))
                        continue;
                      rhs += cat.f_symbol(a, b, c, g, f, h) *
                             cat.f_symbol(a, h, d, e, g, kk) *
                             cat.f_symbol(b, c, d, kk, h, l);
                    }
                    double dev = std::abs(lhs - rhs);
                    if (dev > worst) {
                      worst = dev;
                      where = key_string(cat, a, b, c, d, e, f);
                    }
                  }
                }
  return make_report("pentagon", worst, tol, where);
}

CheckReport verify_hexagon(const CategoryData& cat, double tol) {
  const int L = cat.n_labels();
  double worst = 0.0;
  std::string where;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        for (int e : cat.channels(a, c))
          for (int d : cat.channels(e, b))
            for (int g : cat.channels(c, b)) {
              if (!cat.admissible(a, g, d)) continue;
              Cplx fmid = cat.f_symbol(a, c, b, d, e, g);
              Cplx lhs_r = cat.r_symbol(c, a, e) * fmid * cat.r_symbol(c, b, g);
              Cplx lhs_i = fmid / (cat.r_symbol(a, c, e) * cat.r_symbol(b, c, g));
              Cplx rhs_r = 0.0, rhs_i = 0.0;
              for (int f : cat.channels(a, b)) {
                if (!cat.admissible(c, f, d) || !cat.admissible(f, c, d))
                  continue;
                Cplx outer = cat.f_symbol(c, a, b, d, e, f) *
                             cat.f_symbol(a, b, c, d, f, g);
                rhs_r += outer * cat.r_symbol(c, f, d);
                rhs_i += outer / cat.r_symbol(f, c, d);
              }
              double dev = std::max(std::abs(lhs_r - rhs_r),
                                    std::abs(lhs_i - rhs_i));
              if (dev > worst) {
                worst = dev;
                std::ostringstream os;
                os << "(a,b,c,d)=(" << cat.labels[a].name << ","
                   << cat.labels[b].name << "," << cat.labels[c].name << ","
                   << cat.labels[d].name << ")";
                where = os.str();
              }
            }
  return make_report("hexagon", worst, tol, where);
}

CheckReport verify_f_unitarity(const CategoryData& cat, double tol) {
  const int L = cat.n_labels();
  double worst = 0.0;
  std::string where;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c)
        for (int d = 0; d < L; ++d) {
          Matrix blk = cat.f_block(a, b, c, d);
          if (blk.size() == 0) continue;
          if (blk.rows() != blk.cols()) {
            return make_report("f_unitarity", 1.0, tol,
                               "non-square F block " +
                                   key_string(cat, a, b, c, d, 0, 0));
          }
          double dev = unitarity_residual(blk);
          if (dev > worst) {
            worst = dev;
            where = key_string(cat, a, b, c, d, 0, 0);
          }
        }
  return make_report("f_unitarity", worst, tol, where);
}

std::vector<double> quantum_dimensions(const CategoryData& cat) {
  const int L = cat.n_labels();
  std::vector<double> dims(L, 1.0);
  for (int a = 0; a < L; ++a) {
    RealMatrix na(L, L);
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c) na(b, c) = cat.rules.n(a, b, c);
    Eigen::EigenSolver<RealMatrix> es(na);
    double best = 0.0;
    for (int i = 0; i < L; ++i)
      best = std::max(best, std::abs(es.eigenvalues()[i]));
    dims[a] = best;
  }
  return dims;
}

Matrix s_matrix(const CategoryData& cat) {
  const int L = cat.n_labels();
  std::vector<double> d = quantum_dimensions(cat);
  Matrix s(L, L);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      Cplx acc = 0.0;
      for (int c = 0; c < L; ++c)
        if (cat.rules.n(a, b, c) > 0)
          acc += cat.twists[c] / (cat.twists[a] * cat.twists[b]) * d[c];
      s(a, b) = acc;
    }
  return s;
}

CheckReport verify_modularity(const CategoryData& cat, double tol) {
  Matrix s = s_matrix(cat);
  double det = std::abs(s.determinant());
  CheckReport rep;
  rep.name = "modularity";
  rep.residual = det;
  rep.tol = tol;
  rep.pass = det > tol;
  rep.detail = "|det S|";
  return rep;
}

std::vector<Cplx> derive_twists(const CategoryData& cat) {
  const int L = cat.n_labels();
  std::vector<double> d = quantum_dimensions(cat);
  std::vector<Cplx> tw(L);
  for (int a = 0; a < L; ++a) {
    Cplx acc = 0.0;
    for (int c : cat.channels(a, a)) acc += d[c] * cat.r_symbol(a, a, c);
    tw[a] = acc / d[a];
  }
  return tw;
}

}  // namespace braidcat
