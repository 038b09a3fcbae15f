#include "ternary/enumerate.hpp"

#include <numeric>

namespace ternary {

namespace {

Int floor_div(Int a, Int b) {  // b > 0
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Int ceil_div(Int a, Int b) {  // b > 0
  Int q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

Wide floor_div_wide(Wide a, Wide b) {
  Wide q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Wide ceil_div_wide(Wide a, Wide b) {
  Wide q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

/* Multiplying by 4c turns f <= bound into
 *   (2cz + sx + ry)^2 + q(x,y) <= 4c*bound,
 * with q(x,y) = (4ac-s^2)x^2 + 2(2ct-rs)xy + (4bc-r^2)y^2 of discriminant
 * -16c*delta. The x range comes from the outer square, then y, then z. */
template <typename Fn>
void enumerate_kernel(const TernaryForm& f, Int bound, Fn&& fn) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  const Int a = f.a(), b = f.b(), c = f.c(), r = f.r(), s = f.s(), t = f.t();
  const Wide a2 = 4 * Wide(a) * c - Wide(s) * s;
  const Wide b2 = 2 * (2 * Wide(c) * t - Wide(r) * s);
  const Wide c2 = 4 * Wide(b) * c - Wide(r) * r;
  const Wide delta = discriminant(f);
  const Wide four_c_bound = 4 * Wide(c) * bound;

  const Int xmax = static_cast<Int>(isqrt_wide(Wide(bound) * c2 / delta));
  for (Int x = -xmax; x <= xmax; ++x) {
    const Wide dy = 16 * Wide(c) * (Wide(bound) * c2 - delta * Wide(x) * x);
    if (dy < 0) continue;
    const Wide sdy = isqrt_wide(dy);
    const Int ylo = static_cast<Int>(ceil_div_wide(-b2 * x - sdy, 2 * c2));
    const Int yhi = static_cast<Int>(floor_div_wide(-b2 * x + sdy, 2 * c2));
    for (Int y = ylo; y <= yhi; ++y) {
      const Wide qxy = a2 * Wide(x) * x + b2 * Wide(x) * y + c2 * Wide(y) * y;
      const Wide rem = four_c_bound - qxy;
      if (rem < 0) continue;
      const Int srem = static_cast<Int>(isqrt_wide(rem));
      const Int u = checked_narrow(Wide(s) * x + Wide(r) * y);
      const Int zlo = ceil_div(-srem - u, 2 * c);
      const Int zhi = floor_div(srem - u, 2 * c);
      for (Int z = zlo; z <= zhi; ++z) {
        const Wide w = 2 * Wide(c) * z + u;
        const Int value = static_cast<Int>((w * w + qxy) / (4 * Wide(c)));
        fn(Vec3{x, y, z}, value);
      }
    }
  }
}

}  // namespace

void for_each_vector_up_to(const TernaryForm& f, Int bound,
                           const std::function<void(const Vec3&, Int)>& fn) {
  enumerate_kernel(f, bound, fn);
}

std::vector<VectorValue> vectors_up_to(const TernaryForm& f, Int bound) {
  std::vector<VectorValue> out;
  enumerate_kernel(f, bound, [&](const Vec3& v, Int value) { out.push_back({v, value}); });
  return out;
}

std::vector<Vec3> representations(const TernaryForm& f, Int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (n == 0) return {Vec3{0, 0, 0}};
  std::vector<Vec3> out;
  const Int a = f.a(), b = f.b(), c = f.c(), r = f.r(), s = f.s(), t = f.t();
  const Wide a2 = 4 * Wide(a) * c - Wide(s) * s;
  const Wide b2 = 2 * (2 * Wide(c) * t - Wide(r) * s);
  const Wide c2 = 4 * Wide(b) * c - Wide(r) * r;
  const Wide delta = discriminant(f);
  const Wide four_c_n = 4 * Wide(c) * n;

  const Int xmax = static_cast<Int>(isqrt_wide(Wide(n) * c2 / delta));
  for (Int x = -xmax; x <= xmax; ++x) {
    const Wide dy = 16 * Wide(c) * (Wide(n) * c2 - delta * Wide(x) * x);
    if (dy < 0) continue;
    const Wide sdy = isqrt_wide(dy);
    const Int ylo = static_cast<Int>(ceil_div_wide(-b2 * x - sdy, 2 * c2));
    const Int yhi = static_cast<Int>(floor_div_wide(-b2 * x + sdy, 2 * c2));
    for (Int y = ylo; y <= yhi; ++y) {
      const Wide qxy = a2 * Wide(x) * x + b2 * Wide(x) * y + c2 * Wide(y) * y;
      const Wide rem = four_c_n - qxy;
      if (rem < 0) continue;
      const Wide srem = isqrt_wide(rem);
      if (srem * srem != rem) continue;
      const Int u = checked_narrow(Wide(s) * x + Wide(r) * y);
      // 2cz + u = +-srem
      const Int w1 = static_cast<Int>(srem) - u;
      if (w1 % (2 * c) == 0) out.push_back({x, y, w1 / (2 * c)});
      if (srem != 0) {
        const Int w2 = -static_cast<Int>(srem) - u;
        if (w2 % (2 * c) == 0) out.push_back({x, y, w2 / (2 * c)});
      }
    }
  }
  return out;
}

Int rep_count(const TernaryForm& f, Int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  return static_cast<Int>(representations(f, n).size());
}

bool represents(const TernaryForm& f, Int n) { return !representations(f, n).empty(); }

RepSet primitive_reps(const TernaryForm& f, Int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  RepSet out{f, n, {}};
  for (const Vec3& v : representations(f, n)) {
    if (is_primitive_vector(v)) out.vectors.push_back(v);
  }
  return out;
}

std::vector<Int> rep_histogram(const TernaryForm& f, Int bound) {
  std::vector<Int> counts(bound + 1, 0);
  enumerate_kernel(f, bound, [&](const Vec3&, Int value) { ++counts[value]; });
  return counts;
}

Int minimum_value(const TernaryForm& f) {
  Int best = std::min({f.a(), f.b(), f.c()});
  enumerate_kernel(f, best, [&](const Vec3&, Int value) {
    if (value > 0 && value < best) best = value;
  });
  return best;
}

}  // namespace ternary
