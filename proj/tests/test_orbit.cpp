#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "invcat/orbit.hpp"
#include "support.hpp"

using namespace testing;

namespace {

// Subsets of G containing e and closed under multiplication.
int brute_subgroup_count(const FiniteGroup& G) {
  const int n = G.size();
  int count = 0;
  for (long mask = 0; mask < (1L << n); ++mask) {
    if (!(mask >> G.identity() & 1)) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> G.mul(a, b) & 1)) closed = false;
    count += closed;
  }
  return count;
}

std::vector<std::set<int>> left_cosets(const FiniteGroup& G, const Subgroup& H) {
  std::set<std::set<int>> out;
  for (int g = 0; g < G.size(); ++g) {
    std::set<int> c;
    for (int h : H) c.insert(G.mul(g, h));
    out.insert(c);
  }
  return {out.begin(), out.end()};
}

// Cosets gK with hgK = gK for every h in H.
long fixed_cosets(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
  long count = 0;
  for (const auto& c : left_cosets(G, K)) {
    bool fixed = true;
    for (int h : H)
      for (int x : c) fixed = fixed && c.count(G.mul(h, x));
    count += fixed;
  }
  return count;
}

// G-equivariant maps G/H -> G/K, by exhaustive search over all functions
// when there are few of them.
long brute_gmaps(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
  auto src = left_cosets(G, H), tgt = left_cosets(G, K);
  double space = 1;
  for (std::size_t i = 0; i < src.size(); ++i) space *= static_cast<double>(tgt.size());
  if (space > 1e5) return fixed_cosets(G, H, K);
  auto index = [](const std::vector<std::set<int>>& cs, int g) {
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i].count(g)) return static_cast<int>(i);
    return -1;
  };
  const int a = static_cast<int>(src.size()), b = static_cast<int>(tgt.size());
  std::vector<int> f(a, 0);
  long count = 0;
  while (true) {
    bool ok = true;
    for (int g = 0; g < G.size() && ok; ++g)
      for (int i = 0; i < a && ok; ++i) {
        int gi = index(src, G.mul(g, *src[i].begin()));
        int gf = index(tgt, G.mul(g, *tgt[f[i]].begin()));
        ok = f[gi] == gf;
      }
    count += ok;
    int k = 0;
    while (k < a && ++f[k] == b) f[k++] = 0;
    if (k == a) break;
  }
  return count;
}

} // namespace

TEST_CASE("group axioms are checked") {
  CHECK_THROWS_AS(FiniteGroup::make({"a", "b"}, {{0, 0}, {0, 0}}), Error);
  try {
    FiniteGroup::make({"a", "b"}, {{0, 1}, {1, 1}});
    FAIL("accepted a monoid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAGroup);
  }
  auto G = FiniteGroup::from_json(nlohmann::json::parse(R"({"elements":["e","a"],"table":[["e","a"],["a","e"]]})"));
  CHECK(G.size() == 2);
  CHECK(FiniteGroup::from_json({{"builtin", "dihedral"}, {"n", 4}}).size() == 8);
}

TEST_CASE("subgroup counts agree with subset enumeration") {
  std::vector<FiniteGroup> groups;
  for (int n = 1; n <= 8; ++n) groups.push_back(FiniteGroup::cyclic(n));
  for (int n = 1; n <= 3; ++n) groups.push_back(FiniteGroup::symmetric(n));
  for (int n = 2; n <= 6; ++n) groups.push_back(FiniteGroup::dihedral(n));
  for (const auto& G : groups) CHECK(static_cast<int>(subgroups(G).subgroups.size()) == brute_subgroup_count(G));
}

TEST_CASE("S3 has six subgroups in four classes") {
  auto L = subgroups(FiniteGroup::symmetric(3));
  CHECK(L.subgroups.size() == 6);
  CHECK(L.classes.size() == 4);
}

TEST_CASE("C_p has exactly the trivial and the whole subgroup") {
  for (int p : {2, 3, 5, 7}) {
    auto L = subgroups(FiniteGroup::cyclic(p));
    CHECK(L.subgroups.size() == 2);
    CHECK(L.classes.size() == 2);
  }
}

TEST_CASE("order bound") {
  CHECK_THROWS_AS(subgroups(FiniteGroup::symmetric(4), 12), Error);
  CHECK_NOTHROW(subgroups(FiniteGroup::symmetric(4)));
}

TEST_CASE("orbit category of C_p: hom table") {
  for (int p : {2, 3, 5}) {
    auto O = orbit_category(FiniteGroup::cyclic(p));
    CHECK(O.hom_size("G/e", "G/e") == p);
    CHECK(O.hom_size("G/G", "G/e") == 0);
    CHECK(O.hom_size("G/e", "G/G") == 1);
    CHECK(O.hom_size("G/G", "G/G") == 1);
    CHECK(O.precedence.lt("G/e", "G/G"));
  }
}

TEST_CASE("trivial group: one object, one morphism") {
  auto O = orbit_category(FiniteGroup::cyclic(1));
  CHECK(O.objects.size() == 1);
  CHECK(O.category.morphisms.size() == 1);
}

TEST_CASE("hom sets agree with equivariant maps found by brute force") {
  std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), FiniteGroup::symmetric(3),
                                     FiniteGroup::dihedral(4), FiniteGroup::dihedral(5)};
  for (const auto& G : groups) {
    auto O = orbit_category(G);
    for (std::size_t s = 0; s < O.objects.size(); ++s)
      for (std::size_t t = 0; t < O.objects.size(); ++t)
        CHECK(O.hom_size(O.objects[s], O.objects[t]) == brute_gmaps(G, O.reps[s], O.reps[t]));
  }
}

TEST_CASE("S3: the order-two class has trivial endomorphisms") {
  auto G = FiniteGroup::symmetric(3);
  auto O = orbit_category(G);
  int found = 0;
  for (std::size_t i = 0; i < O.objects.size(); ++i)
    if (O.reps[i].size() == 2) {
      CHECK(O.hom_size(O.objects[i], O.objects[i]) == 1);
      ++found;
    }
  CHECK(found == 1);
}

TEST_CASE("every orbit category up to the bound is EI with well-founded precedence") {
  std::vector<FiniteGroup> groups;
  for (int n = 1; n <= 12; ++n) groups.push_back(FiniteGroup::cyclic(n));
  for (int n = 1; n <= 4; ++n) groups.push_back(FiniteGroup::symmetric(n));
  for (int n = 1; n <= 6; ++n) groups.push_back(FiniteGroup::dihedral(n));
  for (const auto& G : groups) {
    auto O = orbit_category(G);
    auto K = orbit_internal(O, true);
    check_category_axioms(K);
    auto rep = ei_inverse_diagnostic(K);
    CHECK(rep.is_inverse_ei());
    REQUIRE(rep.precedence);
    for (const auto& a : O.objects)
      for (const auto& b : O.objects)
        CHECK(rep.precedence->lt(a, b) == O.precedence.lt(a, b));
  }
}

TEST_CASE("opposite orbit category of C_p is inverse EI with G/e below G/G") {
  auto O = orbit_category(FiniteGroup::cyclic(3));
  auto rep = ei_inverse_diagnostic(orbit_internal(O, true));
  REQUIRE(rep.precedence);
  CHECK(rep.precedence->lt("G/e", "G/G"));
  CHECK_FALSE(ei_inverse_diagnostic(orbit_internal(O, false)).precedence->lt("G/e", "G/G"));
}

TEST_CASE("cp_presentation: level sizes and fibrancy") {
  auto I2 = cp_presentation(2, 3);
  CHECK(I2->space("G/e")->sizes() == std::vector<int>{1, 2, 4, 8});
  CHECK(fibrant_invcat(I2).ok);
  auto I3 = cp_presentation(3, 2);
  CHECK(I3->space("G/e")->sizes() == std::vector<int>{1, 3, 9});
  CHECK(fibrant_invcat(I3).ok);
  CHECK_THROWS_AS(cp_presentation(4, 2), Error);
  CHECK(is_strongly_segal(*I2).ok);
}
