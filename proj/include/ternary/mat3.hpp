#pragma once

/* 3x3 integer matrices and integer vectors: determinants, adjugates,
 * unimodular completion of a primitive vector, and integer solutions of a
 * pair of linear equations. */

#include <array>
#include <optional>

#include "ternary/arith.hpp"

namespace ternary {

using Vec3 = std::array<Int, 3>;

Int dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Int content(const Vec3& v);  // gcd of entries; 0 for the zero vector
bool is_primitive_vector(const Vec3& v);
Vec3 negate(const Vec3& v);

struct Mat3 {
  std::array<std::array<Int, 3>, 3> m{};  // m[row][col]

  static Mat3 identity();
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  Int det() const;
  Mat3 transposed() const;
  Mat3 adjugate() const;  // adjugate() * (*this) = det() * I
  bool is_unimodular() const { return det() == 1 || det() == -1; }
  Mat3 inverse_unimodular() const;  // requires |det| = 1

  Vec3 column(int j) const;
  void set_column(int j, const Vec3& v);
  Vec3 apply(const Vec3& v) const;  // matrix * vector

  bool operator==(const Mat3& o) const = default;
};

Mat3 operator*(const Mat3& a, const Mat3& b);

// Unimodular matrix whose column `target_column` equals the primitive
// vector v. Deterministic Hermite-style construction.
Mat3 complete_primitive_vector(const Vec3& v, int target_column);

// Integer solutions of g1.w = c1, g2.w = c2 for independent rows g1, g2:
// w = offset + k*direction. Absent when no integer solution exists.
struct LineSolution {
  Vec3 offset;
  Vec3 direction;
};
std::optional<LineSolution> solve_two_linear(const Vec3& g1, Int c1, const Vec3& g2, Int c2);

}  // namespace ternary
