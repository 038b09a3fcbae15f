#include "ternary/form.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ternary {

Int discriminant(const Sextuple& q) {
  auto [a, b, c, r, s, t] = q;
  Wide d = 4 * Wide(a) * b * c + Wide(r) * s * t - Wide(a) * r * r - Wide(b) * s * s -
           Wide(c) * t * t;
  return checked_narrow(d);
}

bool is_positive_definite(const Sextuple& q) {
  auto [a, b, c, r, s, t] = q;
  if (a <= 0) return false;
  if (4 * Wide(a) * b - Wide(t) * t <= 0) return false;
  Wide d = 4 * Wide(a) * b * c + Wide(r) * s * t - Wide(a) * r * r - Wide(b) * s * s -
           Wide(c) * t * t;
  return d > 0;
}

Int sextuple_content(const Sextuple& q) {
  Int g = 0;
  for (Int x : q) g = std::gcd(g, std::abs(x));
  return g;
}

bool is_primitive(const Sextuple& q) { return sextuple_content(q) == 1; }

TernaryForm TernaryForm::from_coefficients(Int a, Int b, Int c, Int r, Int s, Int t) {
  return from_sextuple({a, b, c, r, s, t});
}

TernaryForm TernaryForm::from_sextuple(const Sextuple& q) {
  if (!is_positive_definite(q)) throw std::invalid_argument("form is not positive definite");
  if (!is_primitive(q)) throw std::invalid_argument("form is not primitive");
  return TernaryForm(q);
}

TernaryForm TernaryForm::parse(const std::string& text) {
  std::stringstream in(text);
  Sextuple q;
  for (int i = 0; i < 6; ++i) {
    long long x;
    if (!(in >> x)) throw std::invalid_argument("expected six comma-separated integers");
    q[i] = x;
    if (i < 5) {
      char comma;
      if (!(in >> comma) || comma != ',') {
        throw std::invalid_argument("expected six comma-separated integers");
      }
    }
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing characters after sextuple");
  return from_sextuple(q);
}

Mat3 TernaryForm::gram() const {
  Mat3 g;
  g.m = {{{2 * a(), t(), s()}, {t(), 2 * b(), r()}, {s(), r(), 2 * c()}}};
  return g;
}

std::string TernaryForm::str() const {
  std::string out;
  for (int i = 0; i < 6; ++i) {
    if (i) out += ',';
    out += std::to_string(q_[i]);
  }
  return out;
}

Int discriminant(const TernaryForm& f) { return discriminant(f.coefficients()); }

Wide evaluate_wide(const TernaryForm& f, const Vec3& v) {
  auto [x, y, z] = v;
  return Wide(f.a()) * x * x + Wide(f.b()) * y * y + Wide(f.c()) * z * z + Wide(f.r()) * y * z +
         Wide(f.s()) * z * x + Wide(f.t()) * x * y;
}

Wide bilinear_wide(const TernaryForm& f, const Vec3& v, const Vec3& w) {
  return 2 * Wide(f.a()) * v[0] * w[0] + 2 * Wide(f.b()) * v[1] * w[1] +
         2 * Wide(f.c()) * v[2] * w[2] + Wide(f.r()) * (Wide(v[1]) * w[2] + Wide(v[2]) * w[1]) +
         Wide(f.s()) * (Wide(v[2]) * w[0] + Wide(v[0]) * w[2]) +
         Wide(f.t()) * (Wide(v[0]) * w[1] + Wide(v[1]) * w[0]);
}

Int evaluate(const TernaryForm& f, const Vec3& v) { return checked_narrow(evaluate_wide(f, v)); }

Int bilinear(const TernaryForm& f, const Vec3& v, const Vec3& w) {
  return checked_narrow(bilinear_wide(f, v, w));
}

std::vector<Vec3> line_points_with_value(const TernaryForm& f, const Vec3& offset,
                                         const Vec3& direction, Int target) {
  std::vector<Vec3> out;
  const Vec3& d = direction;
  const Wide qa = evaluate_wide(f, d);
  if (qa <= 0 || target <= 0) return out;

  // Size-reduce the offset along d: afterwards |B(base,d)| <= f(d), which
  // pins every solution near k = 0.
  auto nearest_wide = [](Wide p, Wide den) {  // den > 0
    Wide two_p = 2 * p + den;
    Wide q = two_p / (2 * den);
    if (two_p % (2 * den) != 0 && two_p < 0) --q;
    return q;
  };
  const Wide shift = nearest_wide(-bilinear_wide(f, offset, d), 2 * qa);
  Vec3 base;
  for (int i = 0; i < 3; ++i) base[i] = checked_narrow(Wide(offset[i]) + shift * d[i]);
  const Wide qb = bilinear_wide(f, base, d);
  const Wide qc = evaluate_wide(f, base) - target;

  if (qa >= 4 * Wide(target)) {
    // |k| <= 1 + sqrt(target/qa) < 2; test the window directly.
    for (Int k = -2; k <= 2; ++k) {
      Vec3 cand;
      for (int i = 0; i < 3; ++i) cand[i] = checked_narrow(Wide(base[i]) + Wide(k) * d[i]);
      if (evaluate_wide(f, cand) == target) out.push_back(cand);
    }
    return out;
  }
  // Small qa: qb^2 <= qa^2 keeps the discriminant in range once the
  // hopeless case 4*qa*qc > qb^2 is screened out.
  if (qc > qa) return out;
  const Wide disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return out;
  const Wide sd = isqrt_wide(disc);
  if (sd * sd != disc) return out;
  for (Wide root : {-qb + sd, -qb - sd}) {
    if (root % (2 * qa) != 0) continue;
    const Wide k = root / (2 * qa);
    Vec3 cand;
    for (int i = 0; i < 3; ++i) cand[i] = checked_narrow(Wide(base[i]) + k * d[i]);
    out.push_back(cand);
    if (sd == 0) break;
  }
  return out;
}

TernaryForm apply_basis_change(const TernaryForm& f, const Mat3& u) {
  if (!u.is_unimodular()) throw std::invalid_argument("basis change must be unimodular");
  Mat3 g = u.transposed() * f.gram() * u;
  Sextuple q = {g.m[0][0] / 2, g.m[1][1] / 2, g.m[2][2] / 2, g.m[1][2], g.m[0][2], g.m[0][1]};
  return TernaryForm::from_sextuple(q);
}

Sextuple adjoint(const TernaryForm& f) {
  Int a = f.a(), b = f.b(), c = f.c(), r = f.r(), s = f.s(), t = f.t();
  return {checked_narrow(4 * Wide(b) * c - Wide(r) * r),
          checked_narrow(4 * Wide(c) * a - Wide(s) * s),
          checked_narrow(4 * Wide(a) * b - Wide(t) * t),
          checked_narrow(2 * (Wide(s) * t - 2 * Wide(a) * r)),
          checked_narrow(2 * (Wide(r) * t - 2 * Wide(b) * s)),
          checked_narrow(2 * (Wide(r) * s - 2 * Wide(c) * t))};
}

std::pair<TernaryForm, Int> reciprocal_and_divisor(const TernaryForm& f) {
  Sextuple adj = adjoint(f);
  Int m = sextuple_content(adj);
  Sextuple prim;
  for (int i = 0; i < 6; ++i) prim[i] = adj[i] / m;
  return {TernaryForm::from_sextuple(prim), m};
}

Int level(const TernaryForm& f) {
  // Gram^{-1} = adj(Gram)/(2*delta). The least N with N*Gram^{-1} integral
  // and even on the diagonal is an lcm of per-entry divisibility demands.
  Mat3 adj = f.gram().adjugate();
  Int det = 2 * discriminant(f);
  Int n = 1;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Int need = (i == j) ? 2 * det : det;  // diagonal must come out even
      Int g = std::gcd(std::abs(adj.m[i][j]), need);
      n = std::lcm(n, need / g);
    }
  }
  return n;
}

namespace {

// Removes square factors of small primes; the result stays in the same
// square class.
Int strip_small_squares(Int n) {
  for (Int p = 2; p <= 9973 && p * p <= n; p = (p == 2) ? 3 : p + 2) {
    while (n % (p * p) == 0) n /= p * p;
  }
  return n;
}

}  // namespace

bool local_isotropy(const TernaryForm& f, Int p) {
  if (!is_prime(p)) throw std::invalid_argument("local_isotropy requires a prime");
  // Leading principal minors of the Gram matrix; positive definiteness
  // makes all three positive, so the diagonalization below is valid.
  Mat3 g = f.gram();
  Int m1 = g.m[0][0];
  Int m2 = checked_narrow(Wide(g.m[0][0]) * g.m[1][1] - Wide(g.m[0][1]) * g.m[0][1]);
  Int m3 = 2 * discriminant(f);
  if (m1 <= 0 || m2 <= 0 || m3 <= 0) throw std::logic_error("degenerate diagonalization");
  m1 = strip_small_squares(m1);
  m2 = strip_small_squares(m2);
  m3 = strip_small_squares(m3);
  // Over Q the form is equivalent to <m1, m1*m2, m2*m3> up to squares, with
  // determinant in the square class of m3.
  Rational alpha(m1), beta(checked_narrow(Wide(m1) * m2)), gamma(checked_narrow(Wide(m2) * m3));
  // Ternary isotropy criterion: (-1, -d)_p = Hasse invariant.
  int hasse = hilbert_symbol(alpha, beta, p) * hilbert_symbol(alpha, gamma, p) *
              hilbert_symbol(beta, gamma, p);
  return hilbert_symbol(Rational(-1), Rational(-m3), p) == hasse;
}

}  // namespace ternary
