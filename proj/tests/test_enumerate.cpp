#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ternary/enumerate.hpp"

using namespace ternary;

namespace {

TernaryForm parse(const char* text) { return TernaryForm::parse(text); }

std::mt19937_64 rng(21);

TernaryForm random_form() {
  std::uniform_int_distribution<Int> diag(1, 15), off(-7, 7);
  while (true) {
    Sextuple q{diag(rng), diag(rng), diag(rng), off(rng), off(rng), off(rng)};
    if (is_positive_definite(q) && is_primitive(q)) return TernaryForm::from_sextuple(q);
  }
}

// Independent oracle: box search with per-coordinate bounds from the
// adjoint entries, f(x,y,z) >= delta*x^2/(4bc-r^2) and cyclic variants.
std::set<Vec3> box_oracle(const TernaryForm& f, Int bound) {
  Sextuple adj = adjoint(f);
  Int delta = discriminant(f);
  Int xb = isqrt(bound * adj[0] / delta) + 1;
  Int yb = isqrt(bound * adj[1] / delta) + 1;
  Int zb = isqrt(bound * adj[2] / delta) + 1;
  std::set<Vec3> out;
  for (Int x = -xb; x <= xb; ++x)
    for (Int y = -yb; y <= yb; ++y)
      for (Int z = -zb; z <= zb; ++z) {
        if (evaluate(f, {x, y, z}) <= bound) out.insert({x, y, z});
      }
  return out;
}

}  // namespace

TEST_CASE("vectors_up_to examples") {
  auto zero = vectors_up_to(parse("1,1,16,0,0,0"), 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].v == Vec3{0, 0, 0});
  CHECK(zero[0].value == 0);

  auto one = vectors_up_to(parse("1,1,16,0,0,0"), 1);
  CHECK(one.size() == 5);

  auto min2 = vectors_up_to(parse("2,2,5,2,2,0"), 1);
  CHECK(min2.size() == 1);
}

TEST_CASE("enumeration kernel agrees with the box oracle") {
  std::uniform_int_distribution<Int> bv(0, 200);
  for (int i = 0; i < 40; ++i) {
    TernaryForm f = random_form();
    Int bound = bv(rng);
    std::set<Vec3> expected = box_oracle(f, bound);
    std::set<Vec3> got;
    for (const VectorValue& vv : vectors_up_to(f, bound)) {
      CHECK(evaluate(f, vv.v) == vv.value);
      CHECK(vv.value <= bound);
      bool inserted = got.insert(vv.v).second;
      CHECK_MESSAGE(inserted, "duplicate vector emitted");
    }
    CHECK_MESSAGE(got == expected, f.str(), " bound ", bound);
  }
}

TEST_CASE("rep_count examples") {
  CHECK(rep_count(parse("1,1,16,0,0,0"), 1) == 4);
  CHECK(rep_count(parse("2,2,5,2,2,0"), 1) == 0);
  CHECK(rep_count(parse("2,2,5,2,2,0"), 9) == 16);
  CHECK(rep_count(parse("1,1,16,0,0,0"), 9) - rep_count(parse("2,2,5,2,2,0"), 9) == -12);
  CHECK(rep_count(parse("1,5,70,5,0,0"), 0) == 1);
  CHECK_THROWS_AS(rep_count(parse("1,1,16,0,0,0"), -1), std::invalid_argument);
}

TEST_CASE("representations match the kernel") {
  for (int i = 0; i < 25; ++i) {
    TernaryForm f = random_form();
    std::vector<Int> hist = rep_histogram(f, 60);
    for (Int n = 0; n <= 60; ++n) {
      std::vector<Vec3> reps = representations(f, n);
      CHECK(static_cast<Int>(reps.size()) == hist[n]);
      for (const Vec3& v : reps) CHECK(evaluate(f, v) == n);
      std::set<Vec3> dedup(reps.begin(), reps.end());
      CHECK(dedup.size() == reps.size());
    }
  }
}

TEST_CASE("primitive representations") {
  RepSet two = primitive_reps(parse("1,1,16,0,0,0"), 2);
  CHECK(two.vectors.size() == 4);

  RepSet four = primitive_reps(parse("1,1,16,0,0,0"), 4);
  CHECK(four.vectors.empty());
  CHECK(rep_count(parse("1,1,16,0,0,0"), 4) == 4);  // imprimitive (+-2,0,0),(0,+-2,0)

  RepSet five = primitive_reps(parse("1,1,80,0,0,0"), 5);
  bool has = false;
  for (const Vec3& v : five.vectors)
    if (v == Vec3{1, 2, 0}) has = true;
  CHECK(has);

  // duplicate-free and closed under negation
  std::set<Vec3> seen;
  for (const Vec3& v : five.vectors) CHECK(seen.insert(v).second);
  for (const Vec3& v : five.vectors) CHECK(seen.count({-v[0], -v[1], -v[2]}) == 1);
}

TEST_CASE("rep_count invariant under basis change") {
  std::uniform_int_distribution<int> which(0, 2), idx(0, 2);
  std::uniform_int_distribution<Int> kk(-2, 2);
  for (int i = 0; i < 10; ++i) {
    TernaryForm f = random_form();
    Mat3 u = Mat3::identity();
    for (int s = 0; s < 5; ++s) {
      Mat3 e = Mat3::identity();
      int a = idx(rng), b = idx(rng);
      if (which(rng) == 0 && a != b) e.m[a][b] = kk(rng);
      if (which(rng) == 1) e.m[a][a] = -1;
      u = u * e;
    }
    TernaryForm g = apply_basis_change(f, u);
    std::vector<Int> hf = rep_histogram(f, 100), hg = rep_histogram(g, 100);
    CHECK(hf == hg);
  }
}

TEST_CASE("minimum value") {
  CHECK(minimum_value(parse("1,1,16,0,0,0")) == 1);
  CHECK(minimum_value(parse("2,2,5,2,2,0")) == 2);
  CHECK(minimum_value(parse("16,16,1,0,0,0")) == 1);
  CHECK(minimum_value(parse("9,10,10,5,0,0")) == 9);
}

TEST_CASE("independent count for the 2,2,4n+1 family via its square identity") {
  // f(x,y,z) = (x+y+z)^2 + (x-y)^2 + 4n z^2 and (x,y,z) <-> (U,V,z) is a
  // bijection onto U+V+z even, so rep counts match a direct lattice count.
  for (Int n : {1, 3, 5, 7}) {
    TernaryForm f = TernaryForm::from_coefficients(2, 2, 4 * n + 1, 2, 2, 0);
    for (Int j = 0; j <= 60; ++j) {
      Int direct = 0;
      for (Int u = -isqrt(j); u * u <= j; ++u)
        for (Int v = -isqrt(j); v * v <= j; ++v) {
          if (u * u + v * v > j) continue;
          Int rest = j - u * u - v * v;
          if (rest % (4 * n) != 0) continue;
          Int zz = rest / (4 * n);
          Int z = isqrt(zz);
          if (z * z != zz) continue;
          for (Int sz : {z, -z}) {
            if ((u + v + sz) % 2 != 0) continue;
            ++direct;
            if (z == 0) break;
          }
        }
      CHECK_MESSAGE(rep_count(f, j) == direct, "n=", n, " j=", j);
    }
  }
}

TEST_CASE("Lemma on excluded n*m^2 at small scale") {
  // odd squarefree n = u^2+v^2 <= 30; all m with all prime factors 1 mod 4
  for (Int n : {1, 5, 13, 17, 29}) {
    TernaryForm f = TernaryForm::from_coefficients(2, 2, 4 * n + 1, 2, 2, 0);
    for (Int m = 1; n * m * m <= 2000; ++m) {
      if (!all_prime_factors_one_mod_four(m)) continue;
      CHECK_MESSAGE(rep_count(f, n * m * m) == 0, "n=", n, " m=", m);
    }
  }
}
