#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invcat/random.hpp"
#include "invcat/segal.hpp"
#include "support.hpp"

using namespace testing;

namespace {

// Composable n-chains of K1 at level 0, counted by brute force.
long count_chains(const InternalCat& K, int n) {
  std::vector<std::vector<int>> chains;
  for (int f = 0; f < K.K1->size(0); ++f) chains.push_back({f});
  for (int i = 1; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& c : chains)
      for (int g = 0; g < K.K1->size(0); ++g)
        if (K.tgt(0, c.back()) == K.src(0, g)) {
          auto d = c;
          d.push_back(g);
          next.push_back(d);
        }
    chains = next;
  }
  return static_cast<long>(chains.size());
}

FinCategory cyclic2() {
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {"e", "g"};
  c.source = {0, 0};
  c.target = {0, 0};
  c.identity = {0};
  c.composite = {{0, 1}, {1, 0}};
  return c;
}

FinCategory walking_idempotent() {
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {"1", "e"};
  c.source = {0, 0};
  c.target = {0, 0};
  c.identity = {0};
  c.composite = {{0, 1}, {1, 1}};
  return c;
}

} // namespace

TEST_CASE("sigma of a 2-chain with two parallel arrows") {
  auto K = sigma(*two_chain(2));
  CHECK(K.K0->size(0) == 2);
  CHECK(K.K1->size(0) == 4);
  check_category_axioms(K);
  Obj N2 = nerve_level(K, 2);
  CHECK(N2->size(0) == 6);
  CHECK(N2->size(0) == count_chains(K, 2));
  CHECK(nerve_level(K, 3)->size(0) == count_chains(K, 3));
  CHECK(N2->find(0, "id_y:*|y>x:f0") >= 0);
}

TEST_CASE("discrete C2: 2^n composable chains") {
  auto K = internal_from_category(cyclic2());
  check_category_axioms(K);
  for (int n = 2; n <= 4; ++n) CHECK(nerve_level(K, n)->size(0) == (1L << n));
  auto rep = ei_inverse_diagnostic(K);
  CHECK(rep.is_ei);
  CHECK(rep.is_inverse_ei());
}

TEST_CASE("walking idempotent is not EI") {
  auto K = internal_from_category(walking_idempotent());
  check_category_axioms(K);
  auto rep = ei_inverse_diagnostic(K);
  CHECK_FALSE(rep.is_ei);
  CHECK_FALSE(rep.well_founded);
  CHECK(rep.non_invertible["morphism"] == "e");
}

TEST_CASE("broken composite is caught by the axiom check") {
  auto C = cyclic2();
  C.composite[0][1] = 0;
  auto K = internal_from_category(C);
  CHECK_THROWS(check_category_axioms(K));
}

TEST_CASE("sigma of an ordinary inverse category is inverse EI with the object order") {
  auto K = sigma(*two_chain(3));
  auto rep = ei_inverse_diagnostic(K);
  REQUIRE(rep.is_inverse_ei());
  REQUIRE(rep.precedence);
  CHECK(rep.precedence->lt("x:*", "y:*"));
}

TEST_CASE("random finite-set inverse categories: sigma is a category") {
  Rng rng(11);
  RandomConfig cfg;
  for (int i = 0; i < 30; ++i) {
    auto I = random_invcat(rng, cfg, i % 2 == 0);
    auto K = sigma(*I);
    check_category_axioms(K);
    CHECK(nerve_level(K, 2)->size(0) == count_chains(K, 2));
    auto rep = ei_inverse_diagnostic(K);
    CHECK(rep.is_ei);
  }
}

TEST_CASE("random simplicial inverse categories: sigma is a category and Segal agrees") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    auto I = random_sset_invcat(rng, 2, 3);
    auto K = sigma(*I);
    check_category_axioms(K);
    CHECK(is_strongly_segal(*I).ok == is_strongly_segal(K).ok);
  }
}
