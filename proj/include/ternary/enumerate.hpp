#pragma once

/* Exact lattice-point enumeration for positive ternary forms: all vectors
 * below a bound, vectors of one value, representation counts and
 * histograms. Completing-the-square with integer square roots; no
 * floating point. */

#include <functional>

#include "ternary/form.hpp"

namespace ternary {

struct VectorValue {
  Vec3 v;
  Int value;
};

// Every v with evaluate(f, v) <= bound, the zero vector included.
std::vector<VectorValue> vectors_up_to(const TernaryForm& f, Int bound);

// Every v with evaluate(f, v) = n exactly.
std::vector<Vec3> representations(const TernaryForm& f, Int n);

// Number of v with evaluate(f, v) = n; opposite vectors count separately,
// rep_count(f, 0) = 1.
Int rep_count(const TernaryForm& f, Int n);

bool represents(const TernaryForm& f, Int n);

struct RepSet {
  TernaryForm form;
  Int target;
  std::vector<Vec3> vectors;
};

// The representing vectors with coprime coordinates.
RepSet primitive_reps(const TernaryForm& f, Int n);

// counts[j] = rep_count(f, j) for 0 <= j <= bound, in one enumeration pass.
std::vector<Int> rep_histogram(const TernaryForm& f, Int bound);

// Least nonzero represented value.
Int minimum_value(const TernaryForm& f);

// Internal kernel, exposed for the oracle tests: calls fn(v, value) once
// for every vector with value <= bound.
void for_each_vector_up_to(const TernaryForm& f, Int bound,
                           const std::function<void(const Vec3&, Int)>& fn);

}  // namespace ternary
