#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphhom/free_operad.hpp"

using namespace graphhom;

#include "oracles.hpp"

using namespace oracles;

TEST_CASE("free operad basis sizes") {
  auto assoc = assoc_presentation();
  CHECK(free_operad_basis(assoc, 1).size() == 1);
  CHECK(free_operad_basis(assoc, 2).size() == 2);  // one shape, two labelings
  CHECK(free_operad_basis(assoc, 3).size() == 12); // 2 shapes x 3! labelings
  auto poisson = poisson_presentation();
  CHECK(free_operad_basis(poisson, 2).size() == 4);
  CHECK(free_operad_basis(poisson, 3).size() == 48); // 2 shapes x 4 decors x 6
}

TEST_CASE("decorated tree text round trip") {
  auto p = poisson_presentation();
  for (const auto& t : free_operad_basis(p, 3)) {
    std::string text = t.to_text(p.generators);
    DecoratedTree back = detail::dec(text, p.generators);
    CHECK(back == t);
  }
}

TEST_CASE("associative operad dimensions") {
  auto p = assoc_presentation();
  CHECK(presentation_dimension(p, 1) == 1);
  CHECK(presentation_dimension(p, 2) == 2);
  CHECK(presentation_dimension(p, 3) == 6);
  CHECK(presentation_dimension(p, 4) == 24);

  // per fixed leaf order the quotient is one-dimensional
  auto q = p;
  q.symmetric = false;
  CHECK(presentation_dimension(q, 3) == 1);
  CHECK(presentation_dimension(q, 4) == 1);
}

TEST_CASE("associative oracle: word span") {
  auto p = assoc_presentation();
  for (int n = 2; n <= 4; ++n) {
    std::vector<NcPoly> vecs;
    for (const auto& t : free_operad_basis(p, n))
      vecs.push_back(eval_words(t, p.generators, "none"));
    CHECK(span_rank(vecs) == factorial(n));
    CHECK(presentation_dimension(p, n) == factorial(n));
  }
}

TEST_CASE("lie operad dimensions against commutator oracle") {
  auto p = lie_presentation();
  CHECK(presentation_dimension(p, 2) == 1);
  for (int n = 2; n <= 4; ++n) {
    std::vector<NcPoly> vecs;
    for (const auto& t : free_operad_basis(p, n))
      vecs.push_back(eval_words(t, p.generators, "∘"));
    int oracle = span_rank(vecs);
    CHECK(oracle == factorial(n - 1));
    CHECK(presentation_dimension(p, n) == oracle);
  }
}

TEST_CASE("poisson operad dimensions against free Poisson oracle") {
  auto p = poisson_presentation();
  CHECK(presentation_dimension(p, 2) == 2); // one dot, one bracket
  for (int n = 2; n <= 3; ++n) {
    std::vector<PElem> vecs;
    for (const auto& t : free_operad_basis(p, n)) vecs.push_back(eval_poisson(t, p.generators));
    int oracle = span_rank(vecs);
    CHECK(oracle == factorial(n));
    CHECK(presentation_dimension(p, n) == oracle);
  }
}

TEST_CASE("mismatched relation decoration is rejected") {
  OperadPresentation p;
  p.generators = {{"•", 2}};
  DecoratedTree bad{PlanarTree::corolla(3), {0}}; // arity-3 vertex, arity-2 generator
  p.relations = {{{bad, rat(1)}}};
  CHECK_THROWS_AS(presentation_dimension(p, 3), validation_error);
}
