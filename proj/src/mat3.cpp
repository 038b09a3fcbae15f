#include "ternary/mat3.hpp"

#include <cstdlib>
#include <numeric>

namespace ternary {

Int dot(const Vec3& a, const Vec3& b) {
  return checked_narrow(Wide(a[0]) * b[0] + Wide(a[1]) * b[1] + Wide(a[2]) * b[2]);
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {checked_narrow(Wide(a[1]) * b[2] - Wide(a[2]) * b[1]),
          checked_narrow(Wide(a[2]) * b[0] - Wide(a[0]) * b[2]),
          checked_narrow(Wide(a[0]) * b[1] - Wide(a[1]) * b[0])};
}

Int content(const Vec3& v) {
  return std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2]));
}

bool is_primitive_vector(const Vec3& v) { return content(v) == 1; }

Vec3 negate(const Vec3& v) { return {-v[0], -v[1], -v[2]}; }

Mat3 Mat3::identity() {
  Mat3 u;
  u.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  return u;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 u;
  u.set_column(0, c0);
  u.set_column(1, c1);
  u.set_column(2, c2);
  return u;
}

Int Mat3::det() const {
  Wide d = Wide(m[0][0]) * (Wide(m[1][1]) * m[2][2] - Wide(m[1][2]) * m[2][1]) -
           Wide(m[0][1]) * (Wide(m[1][0]) * m[2][2] - Wide(m[1][2]) * m[2][0]) +
           Wide(m[0][2]) * (Wide(m[1][0]) * m[2][1] - Wide(m[1][1]) * m[2][0]);
  return checked_narrow(d);
}

Mat3 Mat3::transposed() const {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.m[i][j] = m[j][i];
  return t;
}

Mat3 Mat3::adjugate() const {
  Mat3 a;
  auto cof = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return checked_narrow(Wide(m[r0][c0]) * m[r1][c1] - Wide(m[r0][c1]) * m[r1][c0]);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.m[j][i] = cof(i, j);
  return a;
}

Mat3 Mat3::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular");
  Mat3 a = adjugate();
  if (d == -1) {
    for (auto& row : a.m)
      for (Int& x : row) x = -x;
  }
  return a;
}

Vec3 Mat3::column(int j) const { return {m[0][j], m[1][j], m[2][j]}; }

void Mat3::set_column(int j, const Vec3& v) {
  m[0][j] = v[0];
  m[1][j] = v[1];
  m[2][j] = v[2];
}

Vec3 Mat3::apply(const Vec3& v) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = checked_narrow(Wide(m[i][0]) * v[0] + Wide(m[i][1]) * v[1] + Wide(m[i][2]) * v[2]);
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Wide acc = 0;
      for (int k = 0; k < 3; ++k) acc += Wide(a.m[i][k]) * b.m[k][j];
      c.m[i][j] = checked_narrow(acc);
    }
  return c;
}

namespace {

// Extended gcd: returns g = gcd(a,b) >= 0 with x*a + y*b = g.
Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return std::abs(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

Mat3 complete_primitive_vector(const Vec3& v, int target_column) {
  if (!is_primitive_vector(v)) throw std::invalid_argument("vector is not primitive");
  Mat3 u;
  if (v[0] == 0 && v[1] == 0) {
    // v = (0, 0, ±1)
    u = Mat3::from_columns(v, {1, 0, 0}, {0, 1, 0});
  } else {
    Int x0, x1;
    Int g1 = ext_gcd(v[0], v[1], x0, x1);
    Int y, z;
    ext_gcd(g1, v[2], y, z);  // y*g1 + z*v[2] = 1
    u = Mat3::from_columns(v, {-x1, x0, 0}, {-z * (v[0] / g1), -z * (v[1] / g1), y});
  }
  // Rotate so that v lands in the requested column.
  if (target_column == 1) {
    u = Mat3::from_columns(u.column(2), u.column(0), u.column(1));
  } else if (target_column == 2) {
    u = Mat3::from_columns(u.column(1), u.column(2), u.column(0));
  }
  Int d = u.det();
  if (d != 1 && d != -1) throw std::logic_error("basis completion is not unimodular");
  return u;
}

std::optional<LineSolution> solve_two_linear(const Vec3& g1, Int c1, const Vec3& g2, Int c2) {
  // Column-style Hermite reduction of the 2x3 system, tracking the
  // unimodular column operations in V.
  std::array<std::array<Int, 3>, 2> a = {{{g1[0], g1[1], g1[2]}, {g2[0], g2[1], g2[2]}}};
  Mat3 v = Mat3::identity();

  auto col_addmul = [&](int dst, int src, Int k) {
    for (int r = 0; r < 2; ++r) a[r][dst] = checked_narrow(Wide(a[r][dst]) + Wide(k) * a[r][src]);
    for (int r = 0; r < 3; ++r)
      v.m[r][dst] = checked_narrow(Wide(v.m[r][dst]) + Wide(k) * v.m[r][src]);
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < 2; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < 3; ++r) std::swap(v.m[r][i], v.m[r][j]);
  };

  // Clear row 0 outside column 0.
  for (int lead = 0; lead < 2; ++lead) {
    int row = lead;
    while (true) {
      int nonzero = -1;
      for (int j = lead + 1; j < 3; ++j)
        if (a[row][j] != 0) nonzero = j;
      if (a[row][lead] == 0) {
        if (nonzero < 0) break;
        col_swap(lead, nonzero);
        continue;
      }
      if (nonzero < 0) break;
      if (std::abs(a[row][nonzero]) >= std::abs(a[row][lead])) {
        col_addmul(nonzero, lead, -(a[row][nonzero] / a[row][lead]));
      } else {
        col_swap(lead, nonzero);
      }
    }
  }

  // Now a = [[h00, 0, 0], [h10, h11, 0]].
  Int h00 = a[0][0], h10 = a[1][0], h11 = a[1][1];
  if (h00 == 0 || h11 == 0) return std::nullopt;  // rows were dependent
  if (c1 % h00 != 0) return std::nullopt;
  Int y0 = c1 / h00;
  Int rest = c2 - h10 * y0;
  if (rest % h11 != 0) return std::nullopt;
  Int y1 = rest / h11;

  LineSolution sol;
  sol.offset = v.apply({y0, y1, 0});
  sol.direction = v.column(2);
  // Shrink the particular solution along the direction; keeps downstream
  // quadratic coefficients within range.
  Wide dd = 0, od = 0;
  for (int i = 0; i < 3; ++i) {
    dd += Wide(sol.direction[i]) * sol.direction[i];
    od += Wide(sol.offset[i]) * sol.direction[i];
  }
  if (dd > 0) {
    Wide two_p = 2 * od + dd;
    Wide q = two_p / (2 * dd);
    if (two_p % (2 * dd) != 0 && two_p < 0) --q;
    for (int i = 0; i < 3; ++i)
      sol.offset[i] = checked_narrow(Wide(sol.offset[i]) - q * sol.direction[i]);
  }
  return sol;
}

}  // namespace ternary
