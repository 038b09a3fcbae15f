#include <random>
#include <set>

#include "doctest.h"
#include "ternary/reduce.hpp"

using namespace ternary;

namespace {

TernaryForm parse(const char* text) { return TernaryForm::parse(text); }

std::mt19937_64 rng(31);

TernaryForm random_form() {
  std::uniform_int_distribution<Int> diag(1, 10), off(-5, 5);
  while (true) {
    Sextuple q{diag(rng), diag(rng), diag(rng), off(rng), off(rng), off(rng)};
    if (is_positive_definite(q) && is_primitive(q)) return TernaryForm::from_sextuple(q);
  }
}

Mat3 random_unimodular(Int entry_cap = 5) {
  std::uniform_int_distribution<int> which(0, 2), idx(0, 2);
  std::uniform_int_distribution<Int> kk(-2, 2);
  while (true) {
    Mat3 u = Mat3::identity();
    for (int i = 0; i < 6; ++i) {
      Mat3 e = Mat3::identity();
      int a = idx(rng), b = idx(rng);
      switch (which(rng)) {
        case 0:
          if (a != b) e.m[a][b] = kk(rng);
          break;
        case 1:
          e.m[a][a] = -1;
          break;
        default:
          if (a != b) {
            e.m[a][a] = e.m[b][b] = 0;
            e.m[a][b] = e.m[b][a] = 1;
          }
      }
      u = u * e;
    }
    bool small = true;
    for (auto& row : u.m)
      for (Int x : row) small = small && std::abs(x) <= entry_cap;
    if (small && u.is_unimodular()) return u;
  }
}

// Brute-force automorphism oracle: all unimodular matrices whose columns
// are representing vectors of a, b, c with the right Gram products.
std::size_t automorphism_count_oracle(const TernaryForm& f) {
  Mat3 gram = f.gram();
  std::vector<Vec3> va = representations(f, f.a());
  std::vector<Vec3> vb = representations(f, f.b());
  std::vector<Vec3> vc = representations(f, f.c());
  std::size_t count = 0;
  for (const Vec3& u1 : va)
    for (const Vec3& u2 : vb)
      for (const Vec3& u3 : vc) {
        Mat3 u = Mat3::from_columns(u1, u2, u3);
        if (!u.is_unimodular()) continue;
        if (u.transposed() * gram * u == gram) ++count;
      }
  return count;
}

}  // namespace

TEST_CASE("automorphism groups") {
  CHECK(automorphisms(parse("1,1,1,0,0,0")).size() == 48);
  CHECK(automorphisms(parse("1,2,3,0,0,0")).size() == 8);

  auto generic = automorphisms(parse("5,9,17,6,5,3"));
  CHECK(generic.size() >= 2);
  bool has_id = false, has_neg = false;
  for (const Mat3& u : generic) {
    if (u == Mat3::identity()) has_id = true;
    Mat3 neg = Mat3::identity();
    for (int i = 0; i < 3; ++i) neg.m[i][i] = -1;
    if (u == neg) has_neg = true;
  }
  CHECK(has_id);
  CHECK(has_neg);

  // cross-check against the brute-force oracle and group axioms
  std::set<std::size_t> allowed{2, 4, 8, 12, 16, 24, 48};
  for (int i = 0; i < 8; ++i) {
    TernaryForm f = random_form();
    auto auts = automorphisms(f);
    CHECK(auts.size() == automorphism_count_oracle(f));
    CHECK(allowed.count(auts.size()) == 1);
    // closure on a few products
    Mat3 gram = f.gram();
    for (std::size_t a = 0; a < std::min<std::size_t>(4, auts.size()); ++a) {
      for (std::size_t b = 0; b < std::min<std::size_t>(4, auts.size()); ++b) {
        Mat3 prod = auts[a] * auts[b];
        CHECK(prod.transposed() * gram * prod == gram);
        Mat3 inv = auts[a].inverse_unimodular();
        CHECK(inv.transposed() * gram * inv == gram);
      }
    }
  }
}

TEST_CASE("reduce reproduces the tabulated shapes") {
  // already reduced
  CHECK(reduce(parse("1,1,16,0,0,0")).canonical == parse("1,1,16,0,0,0"));
  // coordinate sort
  CHECK(reduce(parse("16,1,1,0,0,0")).canonical == parse("1,1,16,0,0,0"));
  // cyclic relabeling reaches the paper's reduced shape
  CHECK(reduce(parse("2,5,2,2,0,2")).canonical == parse("2,2,5,2,2,0"));

  // shapes pinned by the class lists
  for (const char* text :
       {"2,2,5,2,2,0", "1,1,32,0,0,0", "2,2,9,2,2,0", "1,4,9,4,0,0", "2,2,21,2,2,0",
        "1,4,225,0,0,1", "1,15,60,15,0,0", "6,6,25,0,0,3", "9,10,10,5,0,0", "1,5,70,5,0,0",
        "1,17,289,0,0,0", "1,20,400,0,0,0", "4,5,400,0,0,0"}) {
    CAPTURE(text);
    CHECK(reduce(parse(text)).canonical == parse(text));
  }
}

TEST_CASE("reduce is idempotent and class-invariant") {
  for (int i = 0; i < 30; ++i) {
    TernaryForm f = random_form();
    Reduction red = reduce(f);
    CHECK(apply_basis_change(f, red.transform) == red.canonical);
    CHECK(reduce(red.canonical).canonical == red.canonical);
    Mat3 u = random_unimodular();
    CHECK(reduce(apply_basis_change(f, u)).canonical == red.canonical);
  }
}

TEST_CASE("is_equivalent") {
  TernaryForm f = parse("2,2,5,2,2,0");
  auto self = is_equivalent(f, f);
  REQUIRE(self.has_value());
  CHECK(apply_basis_change(f, *self) == f);

  CHECK_FALSE(is_equivalent(parse("1,1,16,0,0,0"), parse("2,2,5,2,2,0")).has_value());

  auto perm = is_equivalent(parse("1,1,16,0,0,0"), parse("16,1,1,0,0,0"));
  REQUIRE(perm.has_value());
  CHECK(apply_basis_change(parse("1,1,16,0,0,0"), *perm) == parse("16,1,1,0,0,0"));

  // symmetric up to inversion, and equivalent-iff-equal-canonicals
  for (int i = 0; i < 15; ++i) {
    TernaryForm a = random_form();
    TernaryForm b = apply_basis_change(a, random_unimodular());
    auto u = is_equivalent(a, b);
    REQUIRE(u.has_value());
    CHECK(apply_basis_change(a, *u) == b);
    auto v = is_equivalent(b, a);
    REQUIRE(v.has_value());
    CHECK(apply_basis_change(b, *v) == a);
    CHECK(reduce(a).canonical == reduce(b).canonical);

    TernaryForm c = random_form();
    bool equivalent = is_equivalent(a, c).has_value();
    CHECK(equivalent == (reduce(a).canonical == reduce(c).canonical));
  }
}
