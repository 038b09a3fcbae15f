#include "ternary/correspond.hpp"

#include <algorithm>
#include <set>

namespace ternary {

namespace {

Mat3 scale_matrix(const Mat3& m, Int k) {
  Mat3 out = m;
  for (auto& row : out.m)
    for (Int& x : row) x = checked_narrow(Wide(x) * k);
  return out;
}

bool gram_relation_holds(const Mat3& p, const TernaryForm& source, const TernaryForm& target,
                         Int k) {
  return p.transposed() * source.gram() * p == scale_matrix(target.gram(), k);
}

}  // namespace

RepMatrix RepMatrix::checked(const Mat3& p, const TernaryForm& source, const TernaryForm& target,
                             Int k) {
  if (!gram_relation_holds(p, source, target, k)) {
    throw std::logic_error("representation matrix fails P^t F P = k G");
  }
  return RepMatrix{p, source, target, k};
}

namespace {

// Core search: images u1, u2 of the first two reduced-target basis vectors
// among representations of k*a and k*b, third column solved on a line.
template <typename Fn>
void search_rep_matrices(const TernaryForm& f, const TernaryForm& g, Int k, Fn&& emit) {
  const Reduction rg = reduce(g);
  const Sextuple tq = rg.canonical.coefficients();
  const Mat3 back = rg.transform.inverse_unimodular();
  const Mat3 gram = f.gram();

  const std::vector<Vec3> v1s = representations(f, checked_narrow(Wide(k) * tq[0]));
  const std::vector<Vec3> v2s = (tq[1] == tq[0]) ? v1s
                                                 : representations(f, checked_narrow(Wide(k) * tq[1]));
  const Int target_t = checked_narrow(Wide(k) * tq[5]);
  const Int target_s = checked_narrow(Wide(k) * tq[4]);
  const Int target_r = checked_narrow(Wide(k) * tq[3]);
  const Int target_c = checked_narrow(Wide(k) * tq[2]);

  for (const Vec3& u1 : v1s) {
    const Vec3 g1 = gram.apply(u1);
    for (const Vec3& u2 : v2s) {
      if (dot(g1, u2) != target_t) continue;
      const Vec3 g2 = gram.apply(u2);
      auto line = solve_two_linear(g1, target_s, g2, target_r);
      if (!line) continue;
      for (const Vec3& w : line_points_with_value(f, line->offset, line->direction, target_c)) {
        // Matrix against the reduced target, converted back to g's basis.
        Mat3 p = Mat3::from_columns(u1, u2, w) * back;
        if (!gram_relation_holds(p, f, g, k)) continue;
        if (!emit(p)) return;
      }
    }
  }
}

// (det P)^2 = k^3 * disc(g)/disc(f) must be a perfect integer square.
bool determinant_obstruction(const TernaryForm& f, const TernaryForm& g, Int k) {
  Wide num = Wide(k) * k * k * discriminant(g);
  Int df = discriminant(f);
  if (num % df != 0) return true;
  Wide sq = num / df;
  Wide root = isqrt_wide(sq);
  return root * root != sq;
}

}  // namespace

std::optional<RepMatrix> represents_multiple(const TernaryForm& f, const TernaryForm& g, Int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (determinant_obstruction(f, g, k)) return std::nullopt;
  std::optional<RepMatrix> out;
  search_rep_matrices(f, g, k, [&](const Mat3& p) {
    out = RepMatrix::checked(p, f, g, k);
    return false;
  });
  return out;
}

std::vector<RepMatrix> all_representation_witnesses(const TernaryForm& f, const TernaryForm& g,
                                                    Int k, std::size_t limit) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<RepMatrix> out;
  if (determinant_obstruction(f, g, k)) return out;
  search_rep_matrices(f, g, k, [&](const Mat3& p) {
    out.push_back(RepMatrix::checked(p, f, g, k));
    return out.size() < limit;
  });
  return out;
}

std::optional<ChanPair> chan_pair(const TernaryForm& f, const TernaryForm& g, Int k) {
  const Int df = discriminant(f), dg = discriminant(g);
  if (df % dg != 0 && dg % df != 0) {
    throw std::invalid_argument("discriminant ratio is not integral");
  }
  auto forward = represents_multiple(f, g, k);
  if (!forward) return std::nullopt;
  auto backward = represents_multiple(g, f, k);
  if (!backward) return std::nullopt;
  Mat3 prod = forward->P * backward->P;
  bool pq_identity =
      prod == scale_matrix(Mat3::identity(), k) || prod == scale_matrix(Mat3::identity(), -k);
  return ChanPair{*forward, *backward, pq_identity};
}

CorrespondenceGraph correspondence_graph(const std::vector<TernaryForm>& left,
                                         const std::vector<TernaryForm>& right, Int k) {
  if (left.empty() || right.empty()) throw std::invalid_argument("empty class list");
  const Int dl = discriminant(left[0]), dr = discriminant(right[0]);
  for (const TernaryForm& f : left)
    if (discriminant(f) != dl) throw std::invalid_argument("left classes mix discriminants");
  for (const TernaryForm& f : right)
    if (discriminant(f) != dr) throw std::invalid_argument("right classes mix discriminants");
  if (dl != checked_narrow(Wide(k) * dr) && dr != checked_narrow(Wide(k) * dl)) {
    throw std::invalid_argument("discriminant ratio does not equal k");
  }
  CorrespondenceGraph graph{left, right, k, {}};
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (auto pair = chan_pair(left[i], right[j], k)) {
        graph.edges.push_back({static_cast<int>(i), static_cast<int>(j), pair->forward,
                               pair->backward});
      }
    }
  }
  return graph;
}

bool respects_spinor(const CorrespondenceGraph& graph,
                     const std::vector<std::vector<int>>& left_blocks,
                     const std::vector<std::vector<int>>& right_blocks) {
  std::vector<int> left_of(graph.left.size(), -1), right_of(graph.right.size(), -1);
  for (std::size_t b = 0; b < left_blocks.size(); ++b)
    for (int i : left_blocks[b]) left_of.at(i) = static_cast<int>(b);
  for (std::size_t b = 0; b < right_blocks.size(); ++b)
    for (int i : right_blocks[b]) right_of.at(i) = static_cast<int>(b);
  for (int x : left_of)
    if (x < 0) throw std::invalid_argument("left blocks do not cover the graph");
  for (int x : right_of)
    if (x < 0) throw std::invalid_argument("right blocks do not cover the graph");

  std::vector<std::set<int>> left_targets(left_blocks.size()), right_targets(right_blocks.size());
  for (const auto& e : graph.edges) {
    left_targets[left_of[e.left_index]].insert(right_of[e.right_index]);
    right_targets[right_of[e.right_index]].insert(left_of[e.left_index]);
  }
  for (const auto& t : left_targets)
    if (t.size() > 1) return false;
  for (const auto& t : right_targets)
    if (t.size() > 1) return false;
  return true;
}

namespace {

bool lex_vec_less(const Vec3& a, const Vec3& b) { return a < b; }

// Smallest-value primitive vector with value divisible by modulus, ties
// broken lexicographically. Values run over multiples of the modulus up
// to the cap.
std::optional<Vec3> smallest_divisible_vector(const TernaryForm& f, Int modulus, Int cap) {
  for (Int value = modulus; value <= cap; value += modulus) {
    std::vector<Vec3> reps = representations(f, value);
    std::optional<Vec3> best;
    for (const Vec3& v : reps) {
      if (!is_primitive_vector(v)) continue;
      if (!best || lex_vec_less(v, *best)) best = v;
    }
    if (best) return best;
  }
  return std::nullopt;
}

Int coefficient_sum(const TernaryForm& f) {
  Int s = 0;
  for (Int x : f.coefficients()) s += std::abs(x);
  return s;
}

// k with a + s*k = 0 mod p, for s nonzero mod p.
Int solve_shear(Int a, Int s, Int p) {
  Int s_inv = 0;
  Int s_mod = ((s % p) + p) % p;
  for (Int x = 1; x < p; ++x) {
    if ((s_mod * x) % p == 1) {
      s_inv = x;
      break;
    }
  }
  Int a_mod = ((a % p) + p) % p;
  return ((p - a_mod) * s_inv) % p;
}

}  // namespace

std::pair<TernaryForm, Mat3> ascent_canonical_shape(const TernaryForm& f, Int p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (discriminant(f) % p == 0) throw std::invalid_argument("p divides the discriminant");

  auto in_shape = [p](const TernaryForm& h) {
    return h.a() % p == 0 && h.c() % p == 0 && h.s() % p != 0;
  };
  if (in_shape(f)) return {f, Mat3::identity()};

  const Int cap = checked_narrow(Wide(p) * p * coefficient_sum(f));
  auto v = smallest_divisible_vector(f, p, cap);
  if (!v) throw search_exhausted_error("no primitive vector of value divisible by p found");
  Mat3 u = complete_primitive_vector(*v, 2);
  TernaryForm h = apply_basis_change(f, u);
  // c = f(v) is now divisible by p; r, s cannot both be.
  if (h.s() % p == 0) {
    Mat3 swap_xy = Mat3::from_columns({0, 1, 0}, {1, 0, 0}, {0, 0, 1});
    u = u * swap_xy;
    h = apply_basis_change(f, u);
  }
  if (h.s() % p == 0) throw std::logic_error("ascent shape: s still divisible by p");
  Int k = solve_shear(h.a(), h.s(), p);
  Mat3 shear = Mat3::identity();
  shear.m[2][0] = k;
  u = u * shear;
  h = apply_basis_change(f, u);
  if (!in_shape(h)) throw std::logic_error("ascent shape conditions failed");
  return {h, u};
}

TernaryForm ascend(const TernaryForm& f, Int p) {
  auto [h, u] = ascent_canonical_shape(f, p);
  Sextuple q = {checked_narrow(Wide(p) * h.a()),
                checked_narrow(Wide(p) * h.b()),
                h.c() / p,
                h.r(),
                h.s(),
                checked_narrow(Wide(p) * h.t())};
  TernaryForm out = TernaryForm::from_sextuple(q);
  if (discriminant(out) != checked_narrow(Wide(p) * discriminant(f))) {
    throw std::logic_error("ascend discriminant law failed");
  }
  return out;
}

namespace {

std::pair<TernaryForm, Mat3> descent_shape_from_vector(const TernaryForm& g, Int p,
                                                       const Vec3& v) {
  Mat3 u = complete_primitive_vector(v, 0);
  TernaryForm h = apply_basis_change(g, u);
  // a = g(v) is divisible by p^2; s, t cannot both be divisible by p.
  if (h.s() % p == 0) {
    Mat3 swap_yz = Mat3::from_columns({1, 0, 0}, {0, 0, 1}, {0, 1, 0});
    u = u * swap_yz;
    h = apply_basis_change(g, u);
  }
  if (h.s() % p == 0) throw std::logic_error("descent shape: s still divisible by p");
  Int k = solve_shear(h.t(), h.s(), p);
  Mat3 shear = Mat3::identity();
  shear.m[2][1] = k;
  u = u * shear;
  h = apply_basis_change(g, u);
  if (h.a() % (p * p) != 0 || h.b() % p != 0 || h.t() % p != 0 || h.s() % p == 0) {
    throw std::logic_error("descent shape conditions failed");
  }
  return {h, u};
}

void check_descent_preconditions(const TernaryForm& g, Int p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  Int delta = discriminant(g);
  if (delta % p != 0 || (delta / p) % p == 0) {
    throw std::invalid_argument("p must exactly divide the discriminant");
  }
  if (!local_isotropy(g, p)) throw not_isotropic_error("form is not isotropic at p");
}

}  // namespace

std::pair<TernaryForm, Mat3> descent_canonical_shape(const TernaryForm& g, Int p) {
  check_descent_preconditions(g, p);
  auto in_shape = [p](const TernaryForm& h) {
    return h.a() % (p * p) == 0 && h.b() % p == 0 && h.t() % p == 0 && h.s() % p != 0;
  };
  if (in_shape(g)) return {g, Mat3::identity()};
  const Int cap = checked_narrow(Wide(p) * p * coefficient_sum(g));
  auto v = smallest_divisible_vector(g, p * p, cap);
  if (!v) {
    throw search_exhausted_error(
        "no primitive vector of value divisible by p^2 within the search bound");
  }
  return descent_shape_from_vector(g, p, *v);
}

namespace {

TernaryForm descend_from_shape(const TernaryForm& h, const TernaryForm& g, Int p) {
  Sextuple q = {h.a() / p, h.b() / p, checked_narrow(Wide(p) * h.c()), h.r(), h.s(), h.t() / p};
  TernaryForm out = TernaryForm::from_sextuple(q);
  if (discriminant(out) != discriminant(g) / p) {
    throw std::logic_error("descend discriminant law failed");
  }
  return out;
}

}  // namespace

TernaryForm descend(const TernaryForm& g, Int p) {
  auto [h, u] = descent_canonical_shape(g, p);
  return descend_from_shape(h, g, p);
}

std::vector<TernaryForm> descend_all_witnesses(const TernaryForm& g, Int p) {
  check_descent_preconditions(g, p);
  const Int cap = checked_narrow(Wide(p) * p * coefficient_sum(g));
  std::set<Sextuple> outputs;
  for (Int value = p * p; value <= cap; value += p * p) {
    for (const Vec3& v : representations(g, value)) {
      if (!is_primitive_vector(v)) continue;
      auto [h, u] = descent_shape_from_vector(g, p, v);
      outputs.insert(reduce(descend_from_shape(h, g, p)).canonical.coefficients());
    }
  }
  std::vector<TernaryForm> out;
  for (const Sextuple& q : outputs) out.push_back(TernaryForm::from_sextuple(q));
  return out;
}

InvolutionReport involution_scan(const std::vector<TernaryForm>& classes,
                                 const std::vector<std::vector<int>>& blocks, Int k) {
  const std::size_t n = classes.size();
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int i : blocks[b]) block_of.at(i) = static_cast<int>(b);
  for (int x : block_of)
    if (x < 0) throw std::invalid_argument("blocks do not cover the classes");

  InvolutionReport report;
  report.k = k;
  report.partners.assign(n, {});
  report.block_pair_counts.assign(blocks.size(), std::vector<Int>(blocks.size(), 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (chan_pair(classes[i], classes[j], k)) {
        report.partners[i].push_back(static_cast<int>(j));
        report.block_pair_counts[block_of[i]][block_of[j]] += 1;
      }
    }
  }
  report.perfect_matching = true;
  report.all_pairs_cross_blocks = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (report.partners[i].size() != 1) report.perfect_matching = false;
    for (int j : report.partners[i]) {
      if (report.partners[j].size() != 1 || report.partners[j][0] != static_cast<int>(i)) {
        report.perfect_matching = false;
      }
      if (block_of[i] == block_of[j]) report.all_pairs_cross_blocks = false;
    }
  }
  return report;
}

}  // namespace ternary
