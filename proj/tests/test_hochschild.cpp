#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "graphhom/hochschild.hpp"

#include "oracles.hpp"

using namespace graphhom;
using namespace oracles;

namespace {

Cochain sub(const Cochain& a, const Cochain& b) {
  Cochain out(a.dim(), a.arity());
  out.for_each_tuple([&](const std::vector<int>& in) {
    for (int k = 0; k < a.dim(); ++k) {
      Rational v = a.at(in, k) - b.at(in, k);
      if (v != 0) out.at(in, k) = v;
    }
  });
  return out;
}

Cochain scale(const Cochain& a, const Rational& f) {
  Cochain out(a.dim(), a.arity());
  out.for_each_tuple([&](const std::vector<int>& in) {
    for (int k = 0; k < a.dim(); ++k) {
      Rational v = a.at(in, k) * f;
      if (v != 0) out.at(in, k) = v;
    }
  });
  return out;
}

} // namespace

TEST_CASE("associativity checks") {
  CHECK(mat2().verify_associative());
  CHECK(dual_numbers().verify_associative());
  AlgebraTable nil; // e1 e1 = e2, everything else zero
  nil.dim = 2;
  nil.c = Multilinear(2, 2);
  nil.c.at({0, 0}, 1) = rat(1);
  CHECK(nil.verify_associative());
  AlgebraTable bad = nil;
  bad.c.at({1, 1}, 0) = rat(1); // e2 e2 = e1 breaks associativity
  CHECK(!bad.verify_associative());
}

TEST_CASE("differential of a 0-cochain is the commutator") {
  AlgebraTable a = mat2();
  std::mt19937 rng(5);
  Cochain b = random_cochain(rng, 4, 0);
  Cochain db = hochschild_differential(a, b);
  std::vector<Rational> bv = b.apply({});
  for (int i = 0; i < 4; ++i) {
    std::vector<Rational> ei(4, Rational(0));
    ei[i] = 1;
    std::vector<Rational> lhs = db.apply({i});
    std::vector<Rational> ab = a.multiply(ei, bv);
    std::vector<Rational> ba = a.multiply(bv, ei);
    for (int k = 0; k < 4; ++k) CHECK(lhs[k] == ab[k] - ba[k]);
  }

  // commutative algebra: 0-cochains are cocycles
  AlgebraTable d = dual_numbers();
  Cochain x = random_cochain(rng, 2, 0);
  CHECK(hochschild_differential(d, x).is_zero());
}

TEST_CASE("multiplication cochain is closed") {
  for (const AlgebraTable& a : {mat2(), dual_numbers(), upper_triangular()})
    CHECK(hochschild_differential(a, a.c).is_zero());
}

TEST_CASE("d^2 = 0 and df = [f, m0] on random algebras and cochains") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebraTable a = random_algebra(rng);
    REQUIRE(a.verify_associative());
    std::uniform_int_distribution<int> arity(0, 3);
    Cochain f = random_cochain(rng, a.dim, arity(rng));
    Cochain df = hochschild_differential(a, f);
    CHECK(hochschild_differential(a, df).is_zero());
    CHECK(df == gerstenhaber_bracket(f, a.c));
  }
}

TEST_CASE("bracket: graded antisymmetry and Jacobi") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> arity(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    int dim = 2 + trial % 2;
    Cochain f = random_cochain(rng, dim, arity(rng));
    Cochain g = random_cochain(rng, dim, arity(rng));
    Cochain h = random_cochain(rng, dim, arity(rng));
    int fd = f.arity() - 1, gd = g.arity() - 1, hd = h.arity() - 1;
    if (f.arity() + g.arity() < 1 || g.arity() + h.arity() < 1 || f.arity() + h.arity() < 1)
      continue;

    // [f,g] + (-1)^{|f||g|} [g,f] = 0
    Cochain anti = gerstenhaber_bracket(f, g);
    Cochain anti2 = scale(gerstenhaber_bracket(g, f), rat((fd * gd) % 2 == 0 ? 1 : -1));
    Cochain zero(anti.dim(), anti.arity());
    CHECK(sub(anti, scale(anti2, rat(-1))) == zero);

    // cyclic Jacobi with shifted degrees
    if (f.arity() + g.arity() + h.arity() >= 2) {
      Cochain j1 = scale(gerstenhaber_bracket(gerstenhaber_bracket(f, g), h),
                         rat((fd * hd) % 2 == 0 ? 1 : -1));
      Cochain j2 = scale(gerstenhaber_bracket(gerstenhaber_bracket(g, h), f),
                         rat((gd * fd) % 2 == 0 ? 1 : -1));
      Cochain j3 = scale(gerstenhaber_bracket(gerstenhaber_bracket(h, f), g),
                         rat((hd * gd) % 2 == 0 ? 1 : -1));
      Cochain sum(j1.dim(), j1.arity());
      sum.for_each_tuple([&](const std::vector<int>& in) {
        for (int k = 0; k < sum.dim(); ++k) {
          Rational v = j1.at(in, k) + j2.at(in, k) + j3.at(in, k);
          CHECK(v == 0);
        }
      });
    }
  }
}

TEST_CASE("bracket square of a truncated deformation is minus the associator") {
  // orientation note: with df = [f, m0] fixed, (1/2)[m_t, m_t] picks up a
  // global minus sign against the associator expansion
  std::mt19937 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    DeformationSeries s;
    s.algebra = random_algebra(rng);
    s.terms = {random_cochain(rng, s.algebra.dim, 2), random_cochain(rng, s.algebra.dim, 2)};
    auto residuals = deformation_residuals(s);
    for (int k = 0; k <= s.order(); ++k)
      CHECK(residuals[k] == scale(associator_coefficient(s, k), rat(-1)));
  }
}

TEST_CASE("deformation residuals: order-by-order statements") {
  std::mt19937 rng(53);
  AlgebraTable a = random_algebra(rng);
  Cochain m1 = random_cochain(rng, a.dim, 2);
  Cochain m2 = random_cochain(rng, a.dim, 2);
  DeformationSeries s{a, {m1, m2}};
  auto residuals = deformation_residuals(s);
  REQUIRE(residuals.size() == 3);
  CHECK(residuals[0].is_zero()); // m0 associative
  CHECK(residuals[1] == hochschild_differential(a, m1));
  Cochain expected2 = hochschild_differential(a, m2);
  Cochain half_sq = scale(gerstenhaber_bracket(m1, m1), rat(1, 2));
  expected2.for_each_tuple([&](const std::vector<int>& in) {
    for (int k = 0; k < a.dim; ++k) CHECK(residuals[2].at(in, k) == expected2.at(in, k) + half_sq.at(in, k));
  });
}

TEST_CASE("cohomology of the ground field") {
  auto h = hochschild_cohomology(rational_line(), 4);
  CHECK(h.at(0) == 1);
  CHECK(h.at(1) == 0);
  CHECK(h.at(2) == 0);
  CHECK(h.at(3) == 0);
}

TEST_CASE("cohomology of the 2x2 matrix algebra is the center") {
  auto h = hochschild_cohomology(mat2(), 3);
  CHECK(h.at(0) == 1);
  CHECK(h.at(1) == 0);
  CHECK(h.at(2) == 0);
  CHECK(h1_derivation_oracle(mat2()) == 0);
}

TEST_CASE("cohomology of the dual numbers") {
  auto h = hochschild_cohomology(dual_numbers(), 2);
  CHECK(h.at(0) == 2); // the algebra is commutative
  CHECK(h.at(1) == 1);
  CHECK(h1_derivation_oracle(dual_numbers()) == 1);
}

TEST_CASE("budget errors") {
  CHECK_THROWS_AS(hochschild_cohomology(mat2(), 9), budget_error);
  Cochain c0(1, 0);
  CHECK_THROWS_AS(pre_lie(c0, c0), validation_error); // arity -1
}
