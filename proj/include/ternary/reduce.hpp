#pragma once

/* Canonical class representatives, integral equivalence testing and
 * automorphism groups, all by exact short-vector matching. */

#include "ternary/enumerate.hpp"

namespace ternary {

struct Reduction {
  TernaryForm canonical;
  Mat3 transform;  // apply_basis_change(f, transform) == canonical
};

// Deterministic canonical representative of the equivalence class of f.
// Greedy minima fix the diagonal (a <= b <= c); among all unimodular bases
// realizing it the (r,s,t) block without negative entries is preferred,
// then the lexicographically least. Idempotent; two forms reduce to the
// same output iff they are integrally equivalent.
Reduction reduce(const TernaryForm& f);

// A basis change U with U^t Gram(f) U = Gram(g), absent when the forms are
// inequivalent. Short-vector matching against the reduced shape of g.
std::optional<Mat3> is_equivalent(const TernaryForm& f, const TernaryForm& g);

// All unimodular U with U^t Gram(f) U = Gram(f). Contains +-identity.
std::vector<Mat3> automorphisms(const TernaryForm& f);

}  // namespace ternary
