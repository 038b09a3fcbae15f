#include "ternary/reduce.hpp"

#include <algorithm>
#include <map>

namespace ternary {

namespace {

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

// Nearest integer to p/d for d > 0 (ties toward +infinity).
Int nearest_div(Int p, Int d) { return floor_div(2 * p + d, 2 * d); }

Mat3 swap_matrix(int i, int j) {
  Mat3 u = Mat3::identity();
  u.m[i][i] = 0;
  u.m[j][j] = 0;
  u.m[i][j] = 1;
  u.m[j][i] = 1;
  return u;
}

// Column j += k * column i.
Mat3 shear_matrix(int i, int j, Int k) {
  Mat3 u = Mat3::identity();
  u.m[i][j] = k;
  return u;
}

// Gaussian-style descent: sort the diagonal and shorten basis vectors
// against each other until no value strictly decreases.
std::pair<TernaryForm, Mat3> greedy_semireduce(const TernaryForm& f) {
  TernaryForm g = f;
  Mat3 u = Mat3::identity();
  auto apply = [&](const Mat3& e) {
    g = apply_basis_change(g, e);
    u = u * e;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    Mat3 gram = g.gram();
    for (int i = 0; i < 2; ++i) {
      if (gram.m[i][i] > gram.m[i + 1][i + 1]) {
        apply(swap_matrix(i, i + 1));
        gram = g.gram();
        changed = true;
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        gram = g.gram();
        Int k = nearest_div(-gram.m[i][j], gram.m[i][i]);
        if (k == 0) continue;
        // value change of column j: k*B(vi,vj) + k^2*f(vi)
        Wide dv = Wide(k) * gram.m[i][j] + Wide(k) * k * gram.m[i][i] / 2;
        if (dv < 0) {
          apply(shear_matrix(i, j, k));
          changed = true;
        }
      }
    }
  }
  return {g, u};
}

struct CosetMinimum {
  Int value;
  std::vector<Vec3> argmins;
};

// Exact minimization of f over {w0 + alpha*v1 + beta*v2}, collecting every
// integer minimizer.
CosetMinimum minimize_over_coset(const TernaryForm& f, const Vec3& start, const Vec3& v1,
                                 const Vec3& v2) {
  const Wide A = evaluate_wide(f, v1);
  const Wide B = bilinear_wide(f, v1, v2);
  const Wide C = evaluate_wide(f, v2);

  // Size-reduce the offset against both vectors; the alternating steps
  // strictly decrease f and leave every later quantity small.
  Vec3 w0 = start;
  while (true) {
    bool moved = false;
    for (const Vec3* v : {&v1, &v2}) {
      const Wide fv = evaluate_wide(f, *v);
      const Wide bv = bilinear_wide(f, w0, *v);
      Wide two_p = -2 * bv + 2 * fv;
      Wide k = two_p / (4 * fv);
      if (two_p % (4 * fv) != 0 && two_p < 0) --k;
      if (k == 0) continue;
      if (k * bv + k * k * fv >= 0) continue;
      for (int i = 0; i < 3; ++i) w0[i] = checked_narrow(Wide(w0[i]) + k * (*v)[i]);
      moved = true;
    }
    if (!moved) break;
  }

  const Wide D = bilinear_wide(f, w0, v1);
  const Wide E = bilinear_wide(f, w0, v2);
  const Wide F = evaluate_wide(f, w0);

  auto q = [&](Wide al, Wide be) {
    return A * al * al + B * al * be + C * be * be + D * al + E * be + F;
  };

  // Integer point near the real minimizer, as an initial upper bound.
  const Wide den = 4 * A * C - B * B;  // > 0
  auto nearest_wide = [](Wide p, Wide d) {  // d > 0
    Wide two_p = 2 * p + d;
    Wide qq = two_p / (2 * d);
    if (two_p % (2 * d) != 0 && two_p < 0) --qq;
    return qq;
  };
  Wide al0 = nearest_wide(B * E - 2 * C * D, den);
  Wide be0 = nearest_wide(B * D - 2 * A * E, den);
  Wide best = q(al0, be0);
  for (Wide da = -1; da <= 1; ++da)
    for (Wide db = -1; db <= 1; ++db) best = std::min(best, q(al0 + da, be0 + db));

  // Exact sweep of {q <= best} via 4A*q = (2A*al + B*be + D)^2 +
  // (4AC-B^2)*be^2 + (4AE-2BD)*be + 4AF - D^2.
  const Wide p2 = den;
  const Wide lin = 4 * A * E - 2 * B * D;
  const Wide cons = 4 * A * F - D * D;
  const Wide cap = 4 * A * best;
  const Wide disc = lin * lin - 4 * p2 * (cons - cap);
  if (disc < 0) throw std::logic_error("empty coset sweep");
  const Wide sd = isqrt_wide(disc);
  auto cdivw = [](Wide a, Wide b) {
    Wide qq = a / b;
    if (a % b != 0 && a > 0) ++qq;
    return qq;
  };
  auto fdivw = [](Wide a, Wide b) {
    Wide qq = a / b;
    if (a % b != 0 && a < 0) --qq;
    return qq;
  };
  const Wide blo = cdivw(-lin - sd, 2 * p2);
  const Wide bhi = fdivw(-lin + sd, 2 * p2);
  Wide found = best + 1;
  std::vector<std::pair<Wide, Wide>> mins;
  for (Wide be = blo; be <= bhi; ++be) {
    const Wide m = cap - (p2 * be * be + lin * be + cons);
    if (m < 0) continue;
    const Wide sm = isqrt_wide(m);
    const Wide alo = cdivw(-B * be - D - sm, 2 * A);
    const Wide ahi = fdivw(-B * be - D + sm, 2 * A);
    for (Wide al = alo; al <= ahi; ++al) {
      const Wide val = q(al, be);
      if (val < found) {
        found = val;
        mins.clear();
      }
      if (val == found) mins.emplace_back(al, be);
    }
  }
  if (found > best) throw std::logic_error("coset sweep lost its witness");
  CosetMinimum out{checked_narrow(found), {}};
  for (auto [al, be] : mins) {
    Vec3 w;
    for (int i = 0; i < 3; ++i)
      w[i] = checked_narrow(Wide(w0[i]) + al * v1[i] + be * v2[i]);
    out.argmins.push_back(w);
  }
  return out;
}

// Any particular integer solution of g.w = target for primitive g: the
// first row of the inverse of a unimodular completion of g pairs to 1
// with g.
Vec3 solve_single_linear(const Vec3& g, Int target) {
  Mat3 u = complete_primitive_vector(g, 0);
  Mat3 inv = u.inverse_unimodular();
  Vec3 x = {inv.m[0][0], inv.m[0][1], inv.m[0][2]};
  if (dot(x, g) != 1) throw std::logic_error("dual solve failed");
  return {checked_narrow(Wide(x[0]) * target), checked_narrow(Wide(x[1]) * target),
          checked_narrow(Wide(x[2]) * target)};
}

// A unimodular basis of f realizing the greedy-minimal diagonal, with the
// resulting candidate sextuple.
struct CanonicalCandidate {
  Sextuple q;
  Mat3 basis;
};

bool candidate_key_less(const Sextuple& x, const Sextuple& y) {
  auto rank = [](const Sextuple& q) {
    bool neg = q[3] < 0 || q[4] < 0 || q[5] < 0;
    return std::tuple<int, Int, Int, Int>(neg ? 1 : 0, q[3], q[4], q[5]);
  };
  return rank(x) < rank(y);
}

}  // namespace

Reduction reduce(const TernaryForm& f) {
  auto [g, u0] = greedy_semireduce(f);

  const Int amin = minimum_value(g);
  const std::vector<Vec3> va = representations(g, amin);

  // Second minimum over pairs extendable to a basis.
  Int bmin = -1;
  const Int bcap = std::max({g.a(), g.b(), g.c()});
  for (Int value = amin; value <= bcap && bmin < 0; ++value) {
    for (const Vec3& v2 : representations(g, value)) {
      for (const Vec3& v1 : va) {
        if (content(cross(v1, v2)) == 1) {
          bmin = value;
          break;
        }
      }
      if (bmin >= 0) break;
    }
  }
  if (bmin < 0) throw std::logic_error("no primitive pair found");
  const std::vector<Vec3> vb = representations(g, bmin);

  // Third vectors: for each primitive pair the unimodular completions form
  // two cosets of Z*v1 + Z*v2; minimize exactly over both.
  Int cmin = -1;
  std::vector<CanonicalCandidate> candidates;
  for (const Vec3& v1 : va) {
    for (const Vec3& v2 : vb) {
      Vec3 cr = cross(v1, v2);
      if (content(cr) != 1) continue;
      for (Int sign : {Int(1), Int(-1)}) {
        Vec3 w0 = solve_single_linear(cr, sign);
        CosetMinimum cm = minimize_over_coset(g, w0, v1, v2);
        if (cmin >= 0 && cm.value > cmin) continue;
        if (cmin < 0 || cm.value < cmin) {
          cmin = cm.value;
          candidates.clear();
        }
        for (const Vec3& w : cm.argmins) {
          Mat3 basis = Mat3::from_columns(v1, v2, w);
          Sextuple q = {amin, bmin, cmin, bilinear(g, v2, w), bilinear(g, v1, w),
                        bilinear(g, v1, v2)};
          candidates.push_back({q, basis});
        }
      }
    }
  }
  if (candidates.empty()) throw std::logic_error("no canonical basis found");

  const CanonicalCandidate* best = &candidates[0];
  for (const CanonicalCandidate& cand : candidates) {
    if (candidate_key_less(cand.q, best->q)) best = &cand;
  }
  Mat3 transform = u0 * best->basis;
  TernaryForm canonical = apply_basis_change(f, transform);
  if (canonical.coefficients() != best->q) throw std::logic_error("canonical verification failed");
  return {canonical, transform};
}

namespace {

// All unimodular U with U^t Gram(f) U matching the target sextuple, by
// matching images of the basis and solving for the third column on a line.
template <typename Fn>
void match_bases(const TernaryForm& f, const Sextuple& target, Fn&& emit) {
  auto [a, b, c, r, s, t] = target;
  const Mat3 gram = f.gram();
  const std::vector<Vec3> v1s = representations(f, a);
  const std::vector<Vec3> v2s = (b == a) ? v1s : representations(f, b);
  for (const Vec3& u1 : v1s) {
    const Vec3 g1 = gram.apply(u1);
    for (const Vec3& u2 : v2s) {
      if (dot(g1, u2) != t) continue;
      const Vec3 g2 = gram.apply(u2);
      auto line = solve_two_linear(g1, s, g2, r);
      if (!line) continue;
      for (const Vec3& w : line_points_with_value(f, line->offset, line->direction, c)) {
        Mat3 u = Mat3::from_columns(u1, u2, w);
        if (!u.is_unimodular()) continue;
        if (!emit(u)) return;
      }
    }
  }
}

}  // namespace

std::optional<Mat3> is_equivalent(const TernaryForm& f, const TernaryForm& g) {
  if (discriminant(f) != discriminant(g)) return std::nullopt;
  // Match against the reduced shape of g; its verified transform converts
  // the witness back.
  Reduction rg = reduce(g);
  std::optional<Mat3> witness;
  match_bases(f, rg.canonical.coefficients(), [&](const Mat3& u) {
    witness = u;
    return false;  // first match suffices
  });
  if (!witness) return std::nullopt;
  Mat3 u = *witness * rg.transform.inverse_unimodular();
  if (apply_basis_change(f, u) != g) throw std::logic_error("equivalence verification failed");
  return u;
}

std::vector<Mat3> automorphisms(const TernaryForm& f) {
  std::vector<Mat3> out;
  match_bases(f, f.coefficients(), [&](const Mat3& u) {
    out.push_back(u);
    return true;
  });
  return out;
}

}  // namespace ternary
