#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "braidcat/invariants.hpp"

using namespace braidcat;

namespace {
constexpr double pi = std::numbers::pi;
const Cplx t5 = std::polar(1.0, 2 * pi / 5);

BraidWord word_of(const std::string& text, int n) {
  return parse_braid_word(text, n);
}

BraidWord random_word(std::mt19937_64& rng, int n, int len) {
  BraidWord w;
  w.n_strands = n;
  for (int i = 0; i < len; ++i)
    w.letters.push_back(BraidLetter{1 + static_cast<int>(rng() % (n - 1)),
                                    (rng() & 1) ? 1 : -1});
  return w;
}
}  // namespace

TEST_CASE("writhe and closure components") {
  BraidWord w = word_of("s1 s2^-1 s1 s2^-1", 3);
  CHECK(writhe(w) == 0);
  CHECK(closure_component_count(w) == 1);  // figure-eight knot
  BraidWord hopf = word_of("s1 s1", 2);
  CHECK(writhe(hopf) == 2);
  CHECK(closure_component_count(hopf) == 2);
  BraidWord empty;
  empty.n_strands = 3;
  CHECK(closure_component_count(empty) == 3);
}

TEST_CASE("oracle reproduces the trefoil polynomial") {
  BraidWord trefoil = word_of("s1 s1 s1", 2);
  // V(t) = -t^-4 + t^-3 + t^-1, frozen reference values
  for (Cplx t : {t5, std::polar(1.0, 0.9), std::polar(1.0, -1.7)}) {
    Cplx ref = -std::pow(t, -4) + std::pow(t, -3) + std::pow(t, -1);
    CHECK(std::abs(kauffman_bracket_oracle(trefoil, t) - ref) < 1e-12);
  }
  // V(1) = 1 for every knot
  CHECK(std::abs(kauffman_bracket_oracle(trefoil, Cplx(1.0)) - Cplx(1.0)) <
        1e-12);
}

TEST_CASE("oracle delta-loop value on the two-component unlink") {
  BraidWord unlink;
  unlink.n_strands = 2;
  Cplx t = t5;
  Cplx sqrt_t = std::sqrt(t);
  CHECK(std::abs(kauffman_bracket_oracle(unlink, t) -
                 (-sqrt_t - 1.0 / sqrt_t)) < 1e-12);
  BraidWord unknot;
  unknot.n_strands = 1;
  CHECK(std::abs(kauffman_bracket_oracle(unknot, t) - Cplx(1.0)) < 1e-15);
}

TEST_CASE("oracle rejects long words") {
  std::mt19937_64 rng(1);
  BraidWord w = random_word(rng, 3, 21);
  CHECK_THROWS_WITH_AS(kauffman_bracket_oracle(w, t5),
                       "oracle limit exceeded", std::runtime_error);
}

TEST_CASE("markov trace normalization") {
  CategoryData fib = fibonacci_category();
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

  BraidWord one;
  one.n_strands = 1;
  Cplx mt = markov_trace(fib, {1}, one);
  CHECK(std::abs(mt - Cplx(phi / (1.0 + phi * phi))) < 1e-12);

  // identity on n strands: (sum_c d_c dim_c)/D = d^n/D
  BraidWord id4;
  id4.n_strands = 4;
  Cplx mt4 = markov_trace(fib, std::vector<int>(4, 1), id4);
  CHECK(std::abs(mt4 - Cplx(std::pow(phi, 4) / (1.0 + phi * phi))) < 1e-10);

  CHECK_THROWS_AS(markov_trace(fib, {1, 1}, one), std::invalid_argument);
}

TEST_CASE("unknots normalize to one") {
  BraidWord unknot;
  unknot.n_strands = 1;
  CHECK(std::abs(jones_at_fibonacci_root(unknot) - Cplx(1.0)) < 1e-12);
  // closure of a single positive crossing is also an unknot
  CHECK(std::abs(jones_at_fibonacci_root(word_of("s1", 2)) - Cplx(1.0)) <
        1e-12);
}

TEST_CASE("trefoil closure matches the oracle and the polynomial") {
  BraidWord trefoil = word_of("s1 s1 s1", 2);
  Cplx jones = jones_at_fibonacci_root(trefoil);
  Cplx oracle = kauffman_bracket_oracle(trefoil, t5);
  CHECK(std::abs(jones - oracle) < 1e-8);
  Cplx ref = -std::pow(t5, -4) + std::pow(t5, -3) + std::pow(t5, -1);
  CHECK(std::abs(jones - ref) < 1e-10);
}

TEST_CASE("figure-eight value is real") {
  BraidWord fig8 = word_of("s1 s2^-1 s1 s2^-1", 3);
  Cplx v = jones_at_fibonacci_root(fig8);
  CHECK(std::abs(v.imag()) < 1e-8);
  CHECK(v.real() == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-9));
  CHECK(std::abs(v - kauffman_bracket_oracle(fig8, t5)) < 1e-8);
}

TEST_CASE("oracle agreement on every short word") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<BraidWord> frontier;
    BraidWord empty;
    empty.n_strands = n;
    frontier.push_back(empty);
    CHECK(std::abs(jones_at_fibonacci_root(empty) -
                   kauffman_bracket_oracle(empty, t5)) < 1e-8);
    for (int len = 1; len <= 4; ++len) {
      std::vector<BraidWord> next;
      for (const BraidWord& w : frontier)
        for (int idx = 1; idx < n; ++idx)
          for (int e : {1, -1}) {
            BraidWord w2 = w;
            w2.letters.push_back(BraidLetter{idx, e});
            next.push_back(w2);
          }
      for (const BraidWord& w : next)
        CHECK(std::abs(jones_at_fibonacci_root(w) -
                       kauffman_bracket_oracle(w, t5)) < 1e-8);
      frontier = std::move(next);
    }
  }
}

TEST_CASE("markov move invariance") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    BraidWord w = random_word(rng, n, 1 + static_cast<int>(rng() % 10));
    Cplx base = jones_at_fibonacci_root(w);

    // move I: conjugation
    BraidWord u = random_word(rng, n, 1 + static_cast<int>(rng() % 10));
    BraidWord conj = u;
    conj.letters.insert(conj.letters.end(), w.letters.begin(),
                        w.letters.end());
    BraidWord ui = u.inverse();
    conj.letters.insert(conj.letters.end(), ui.letters.begin(),
                        ui.letters.end());
    CHECK(std::abs(jones_at_fibonacci_root(conj) - base) < 1e-8);

    // move II: stabilization by s_n^{+-1} on an extra strand
    BraidWord stab = w;
    stab.n_strands = n + 1;
    stab.letters.push_back(BraidLetter{n, (trial & 1) ? 1 : -1});
    CHECK(std::abs(jones_at_fibonacci_root(stab) - base) < 1e-8);
  }
}

TEST_CASE("mirror words evaluate to the conjugate") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    BraidWord w = random_word(rng, n, 1 + static_cast<int>(rng() % 10));
    BraidWord mirror = w;
    for (BraidLetter& l : mirror.letters) l.exponent = -l.exponent;
    CHECK(std::abs(jones_at_fibonacci_root(mirror) -
                   std::conj(jones_at_fibonacci_root(w))) < 1e-8);
  }
}
