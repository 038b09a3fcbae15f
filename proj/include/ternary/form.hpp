#pragma once

/* The form model: integral positive definite ternary quadratic forms
 * <a,b,c,r,s,t> standing for ax^2 + by^2 + cz^2 + ryz + szx + txy,
 * their Gram matrices, discriminant, adjoint/reciprocal, divisor,
 * level and local isotropy. */

#include <string>
#include <vector>

#include "ternary/mat3.hpp"

namespace ternary {

using Sextuple = std::array<Int, 6>;  // a, b, c, r, s, t

Int discriminant(const Sextuple& q);  // 4abc + rst - ar^2 - bs^2 - ct^2
bool is_positive_definite(const Sextuple& q);
bool is_primitive(const Sextuple& q);
Int sextuple_content(const Sextuple& q);

class TernaryForm {
 public:
  // Validates positive definiteness and primitivity; throws
  // std::invalid_argument otherwise.
  static TernaryForm from_coefficients(Int a, Int b, Int c, Int r, Int s, Int t);
  static TernaryForm from_sextuple(const Sextuple& q);
  static TernaryForm parse(const std::string& text);  // "a,b,c,r,s,t"

  Int a() const { return q_[0]; }
  Int b() const { return q_[1]; }
  Int c() const { return q_[2]; }
  Int r() const { return q_[3]; }
  Int s() const { return q_[4]; }
  Int t() const { return q_[5]; }
  const Sextuple& coefficients() const { return q_; }

  Mat3 gram() const;           // symmetric, even diagonal, det = 2*disc
  std::string str() const;     // canonical "a,b,c,r,s,t" rendering

  bool operator==(const TernaryForm& o) const = default;
  bool operator<(const TernaryForm& o) const { return q_ < o.q_; }

 private:
  explicit TernaryForm(const Sextuple& q) : q_(q) {}
  Sextuple q_;
};

Int discriminant(const TernaryForm& f);
Int evaluate(const TernaryForm& f, const Vec3& v);
// Polarization B(v,w) = f(v+w) - f(v) - f(w); B(v,v) = 2 f(v).
Int bilinear(const TernaryForm& f, const Vec3& v, const Vec3& w);
// 128-bit variants for intermediate vectors whose values exceed Int.
Wide evaluate_wide(const TernaryForm& f, const Vec3& v);
Wide bilinear_wide(const TernaryForm& f, const Vec3& v, const Vec3& w);

// The at most two points w on {offset + k*direction} with f(w) = target
// (target > 0). Size-reduces the offset along the direction first, so the
// arithmetic stays in range for directions of adjugate scale.
std::vector<Vec3> line_points_with_value(const TernaryForm& f, const Vec3& offset,
                                         const Vec3& direction, Int target);

// Gram(f') = U^t Gram(f) U; requires |det U| = 1.
TernaryForm apply_basis_change(const TernaryForm& f, const Mat3& u);

// <4bc-r^2, 4ca-s^2, 4ab-t^2, 2(st-2ar), 2(rt-2bs), 2(rs-2ct)>,
// possibly imprimitive.
Sextuple adjoint(const TernaryForm& f);

// (reciprocal phi, divisor m): m is the content of the adjoint and phi its
// primitive part. Reciprocation is an involution on primitive forms.
std::pair<TernaryForm, Int> reciprocal_and_divisor(const TernaryForm& f);

// Least N > 0 such that N * Gram(f)^{-1} is integral with even diagonal.
Int level(const TernaryForm& f);

// Whether f(x,y,z) = 0 has a nonzero p-adic solution. Exact arithmetic via
// the leading principal minors of the Gram matrix and the ternary
// Hasse-invariant criterion.
bool local_isotropy(const TernaryForm& f, Int p);

struct GenusSymbol {
  Int place;  // an odd prime, or 4, or 8
  int value;  // +1 or -1
};

struct GenusInvariants {
  Int delta;
  Int divisor_m;
  Int level_N;
  TernaryForm reciprocal;
  Int reciprocal_divisor_mu;
  std::vector<GenusSymbol> symbols_f;
  std::vector<GenusSymbol> symbols_phi;
};

}  // namespace ternary
