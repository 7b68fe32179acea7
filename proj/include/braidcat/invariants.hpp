#pragma once

#include "braidcat/braid.hpp"

namespace braidcat {

/// Sum of letter exponents of the word.
int writhe(const BraidWord& word);

/// Number of components of the trace closure (cycles of the induced
/// strand permutation).
int closure_component_count(const BraidWord& word);

/// Quantum trace sum_c d_c tr(rho_c(w)) / D over total-charge sectors,
/// D = sum_a d_a^2. Homogeneous leaves only.
Cplx markov_trace(const CategoryData& cat, const std::vector<int>& leaves,
                  const BraidWord& word);

/// Writhe-corrected, unknot-normalized Markov trace of the closure in the
/// Fibonacci category; a link invariant (Markov moves I and II).
Cplx jones_at_fibonacci_root(const BraidWord& word);

/// Brute-force Kauffman state sum over all 2^|w| smoothings of the trace
/// closure, specialized at the bracket variable with t = A^-4, then
/// writhe-corrected and normalized so the unknot evaluates to 1.
/// Word length is capped at 20 crossings.
Cplx kauffman_bracket_oracle(const BraidWord& word, Cplx t);

}  // namespace braidcat
