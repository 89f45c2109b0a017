#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "invcat/orbit.hpp"
#include "invcat/random.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Map random_fn(Rng& rng, const Obj& src, const Obj& tgt, bool onto) {
  const int n = src->size(0), k = tgt->size(0);
  while (true) {
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(rng() % k);
    if (onto && std::set<int>(v.begin(), v.end()).size() != static_cast<std::size_t>(k)) continue;
    return fmap(src, tgt, v);
  }
}

/// All sections of g over the given elements of Y, as vectors of X-elements.
std::set<std::vector<int>> brute_sections(const Map& g, const std::vector<int>& ys) {
  std::set<std::vector<int>> out;
  std::vector<int> cur(ys.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == ys.size()) {
      out.insert(cur);
      return;
    }
    for (int x = 0; x < g.src->size(0); ++x)
      if (g.f[0][x] == ys[i]) {
        cur[i] = x;
        go(i + 1);
      }
  };
  go(0);
  return out;
}

/// Sections of Pi_f(g) over z, read back as X-elements per fiber element.
std::set<std::vector<int>> pi_sections(const DepProduct& P, int z) {
  std::set<std::vector<int>> out;
  for (std::size_t e = 0; e < P.base[0].size(); ++e)
    if (P.base[0][e] == z) out.insert(P.sections[0][e][0]);
  return out;
}

std::vector<int> fiber_of(const Map& f, int z) {
  std::vector<int> ys;
  for (int y = 0; y < f.src->size(0); ++y)
    if (f.f[0][y] == z) ys.push_back(y);
  return ys;
}

Obj two_points(int trunc) { return discrete({"p", "q"}, trunc); }

} // namespace

TEST_CASE("pullback along a surjection and an injection") {
  Obj A = fin_set(3, "a"), B = fin_set(2, "b"), C = fin_set(2, "c");
  Map f = fmap(A, C, {0, 1, 1});
  Map g = fmap(B, C, {1, 0});
  int want = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b) want += f.f[0][a] == g.f[0][b];
  auto pb = pullback(f, g);
  CHECK(pb.object->size(0) == want);
  CHECK(want == 3);
  CHECK(maps_equal(compose(f, pb.p1), compose(g, pb.p2)));
}

TEST_CASE("limits of the empty shape and products of presheaves") {
  CHECK(finite_limit(0, {}, {}).object->size(0) == 1);
  auto L = finite_limit(2, {}, {});
  CHECK(L.object->sizes() == std::vector<int>{1, 1, 1});
  Obj a = classifying_space(FiniteGroup::cyclic(2), 1);
  Obj b = classifying_space(FiniteGroup::cyclic(3), 1);
  CHECK(a->sizes() == std::vector<int>{1, 2});
  CHECK(b->sizes() == std::vector<int>{1, 3});
  CHECK(product(a, b).object->sizes() == std::vector<int>{1, 6});
}

TEST_CASE("limits agree with brute-force matching families") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    // a cospan with an extra leg: X0 -> X2 <- X1, X3 -> X2
    std::vector<Obj> nodes;
    for (int i = 0; i < 4; ++i) nodes.push_back(fin_set(1 + static_cast<int>(rng() % 3), "n" + std::to_string(i) + "_"));
    std::vector<LimitEdge> edges = {{0, 2, random_fn(rng, nodes[0], nodes[2], false)},
                                    {1, 2, random_fn(rng, nodes[1], nodes[2], false)},
                                    {3, 2, random_fn(rng, nodes[3], nodes[2], false)}};
    int want = 0;
    for (int a = 0; a < nodes[0]->size(0); ++a)
      for (int b = 0; b < nodes[1]->size(0); ++b)
        for (int c = 0; c < nodes[2]->size(0); ++c)
          for (int d = 0; d < nodes[3]->size(0); ++d)
            want += edges[0].map.f[0][a] == c && edges[1].map.f[0][b] == c && edges[2].map.f[0][d] == c;
    CHECK(finite_limit(0, nodes, edges).object->size(0) == want);
  }
}

TEST_CASE("dependent product examples") {
  Obj Y = fin_set(2, "y"), X = fin_set(5, "x");
  Map g = fmap(X, Y, {0, 0, 1, 1, 1});
  auto P = dep_product(to_point(Y), g);
  CHECK(P.proj.src->size(0) == 6);
  auto id = dep_product(identity(Y), g);
  CHECK(id.proj.src->size(0) == X->size(0));
  Obj X2 = fin_set(2, "x");
  auto empty = dep_product(to_point(Y), fmap(X2, Y, {0, 0}));
  CHECK(empty.proj.src->size(0) == 0);
}

TEST_CASE("dependent products agree with brute-force sections") {
  Rng rng(31);
  for (int t = 0; t < 150; ++t) {
    Obj Z = fin_set(1 + static_cast<int>(rng() % 3), "z");
    Obj Y = fin_set(1 + static_cast<int>(rng() % 4), "y");
    Obj X = fin_set(static_cast<int>(rng() % 5), "x");
    Map f = random_fn(rng, Y, Z, false);
    if (X->size(0) == 0) continue;
    Map g = random_fn(rng, X, Y, false);
    auto P = dep_product(f, g);
    for (int z = 0; z < Z->size(0); ++z) CHECK(pi_sections(P, z) == brute_sections(g, fiber_of(f, z)));
  }
}

TEST_CASE("Beck-Chevalley on random pullback squares") {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    Obj Z = fin_set(1 + static_cast<int>(rng() % 3), "z");
    Obj Y = fin_set(1 + static_cast<int>(rng() % 3), "y");
    Obj X = fin_set(1 + static_cast<int>(rng() % 4), "x");
    Obj W = fin_set(1 + static_cast<int>(rng() % 3), "w");
    Map f = random_fn(rng, Y, Z, false), g = random_fn(rng, X, Y, false), u = random_fn(rng, W, Z, false);
    auto Yw = pullback(u, f);     // W x_Z Y
    auto Xw = pullback(Yw.p2, g); // (W x_Z Y) x_Y X
    auto left = dep_product(Yw.p1, Xw.p1);
    auto right = dep_product(f, g);
    auto back = pullback(u, right.proj);
    for (int w = 0; w < W->size(0); ++w) {
      int a = 0, b = 0;
      for (int e : left.base[0]) a += e == w;
      for (int e = 0; e < back.object->size(0); ++e) b += back.p1.f[0][e] == w;
      CHECK(a == b);
    }
  }
}

TEST_CASE("the induced map between dependent products along a surjection is onto") {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    Obj W = fin_set(1 + static_cast<int>(rng() % 2), "w");
    Obj Z = fin_set(W->size(0) + static_cast<int>(rng() % 2), "z");
    Obj Y = fin_set(1 + static_cast<int>(rng() % 3), "y");
    Obj X = fin_set(Y->size(0) + static_cast<int>(rng() % 2), "x");
    Map k = random_fn(rng, Z, W, true), h = random_fn(rng, Y, Z, false), g = random_fn(rng, X, Y, true);
    auto big = dep_product(k, compose(h, g));
    auto small = dep_product(k, h);
    std::set<std::pair<int, std::vector<int>>> image;
    for (std::size_t e = 0; e < big.base[0].size(); ++e) {
      std::vector<int> s = big.sections[0][e][0];
      for (auto& x : s) x = g.f[0][x];
      image.emplace(big.base[0][e], s);
    }
    for (std::size_t e = 0; e < small.base[0].size(); ++e)
      CHECK(image.count({small.base[0][e], small.sections[0][e][0]}) == 1);
  }
}

TEST_CASE("finite-set fibrations are surjections and are stable") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    Obj A = fin_set(1 + static_cast<int>(rng() % 4), "a");
    Obj C = fin_set(1 + static_cast<int>(rng() % 3), "c");
    Obj B = fin_set(1 + static_cast<int>(rng() % 3), "b");
    Map f = random_fn(rng, A, C, false), g = random_fn(rng, B, C, false);
    bool onto = std::set<int>(f.f[0].begin(), f.f[0].end()).size() == static_cast<std::size_t>(C->size(0));
    CHECK(BaseCat::finset().is_fibration(f).ok == onto);
    if (onto) CHECK(BaseCat::finset().is_fibration(pullback(f, g).p2).ok);
  }
  CHECK(BaseCat::finset().is_fibration(identity(fin_set(3))).ok);
  auto r = BaseCat::finset().is_fibration(fmap(fin_set(1), fin_set(2), {0}));
  CHECK_FALSE(r.ok);
  CHECK(r.certificate.contains("missing"));
}

TEST_CASE("Kan fibrations") {
  const int n = 3;
  CHECK(is_kan_fibration(identity(representable(1, n))).ok);
  CHECK(is_kan_fibration(to_point(classifying_space(FiniteGroup::cyclic(2), n))).ok);
  CHECK(is_kan_fibration(to_point(boundary(1, n))).ok);
  auto inclusion = [&](const Obj& sub, const Obj& whole) {
    std::vector<std::vector<int>> f(n + 1);
    for (int m = 0; m <= n; ++m)
      for (int e = 0; e < sub->size(m); ++e) f[m].push_back(whole->find(m, sub->label(m, e)));
    return make_map(sub, whole, f);
  };
  auto r = is_kan_fibration(inclusion(boundary(1, n), representable(1, n)));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.certificate.is_null());
  auto d1 = is_kan_fibration(to_point(representable(1, n)));
  CHECK_FALSE(d1.ok);
}

TEST_CASE("Kan fibrations are stable under pullback and dependent product") {
  const int n = 2;
  std::vector<Map> fibs = {to_point(classifying_space(FiniteGroup::cyclic(2), n)),
                           to_point(classifying_space(FiniteGroup::cyclic(3), n)), to_point(two_points(n))};
  std::vector<Map> along = {to_point(representable(1, n)), to_point(horn(2, 1, n)), to_point(boundary(2, n))};
  for (const auto& f : fibs)
    for (const auto& g : along) CHECK(is_kan_fibration(pullback(f, g).p2).ok);
  Obj B = classifying_space(FiniteGroup::cyclic(2), n);
  auto pr = product(B, two_points(n));
  auto P = dep_product(to_point(B), pr.p1);
  CHECK(P.proj.src->size(0) == 2);
  CHECK(is_kan_fibration(P.proj).ok);
  auto P2 = dep_product(to_point(two_points(n)), product(two_points(n), B).p1);
  CHECK(P2.proj.src->sizes() == product(B, B).object->sizes());
  CHECK(is_kan_fibration(P2.proj).ok);
}

TEST_CASE("simplicial identities are checked on construction") {
  Presheaf p = *representable(1, 2);
  CHECK_FALSE(p.identity_violation().has_value());
  int top = -1;
  for (int e = 0; e < p.size(1); ++e)
    if (p.face(1, 0, e) != p.face(1, 1, e)) top = e;
  REQUIRE(top >= 0);
  p.faces[1][0][top] = p.faces[1][1][top];
  CHECK(p.identity_violation().has_value());
  CHECK_THROWS_AS(make_obj(p), Error);
}

TEST_CASE("instance membership") {
  CHECK_THROWS_AS(BaseCat::finset().check_member(representable(1, 2)), Error);
  CHECK_NOTHROW(BaseCat::ssets(2).check_member(representable(1, 2)));
  CHECK_THROWS_AS(BaseCat::ssets(3).check_member(representable(1, 2)), Error);
}
