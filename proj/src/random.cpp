#include "invcat/random.hpp"

#include <algorithm>

namespace invcat {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Retry {};

Map require(std::optional<Map> m) {
  if (!m) throw Retry{};
  return *m;
}

Obj random_fin(Rng& rng, int lo, int hi, const std::string& prefix) { return fin_set(uniform(rng, lo, hi), prefix); }

} // namespace

WfPoset random_poset(Rng& rng, int max_elements, double edge_prob) {
  int n = uniform(rng, std::min(1, max_elements), max_elements);
  std::vector<Label> els;
  for (int i = 0; i < n; ++i) els.push_back("o" + std::to_string(i));
  std::vector<Label> shuffled = els;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::bernoulli_distribution edge(edge_prob);
  std::vector<LabelPair> lt;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) lt.emplace_back(shuffled[i], shuffled[j]);
  return WfPoset::make(els, lt);
}

std::optional<Map> random_over(Rng& rng, const Obj& target, bool surjective, int max_size,
                               const std::string& prefix) {
  const int t = target->size(0);
  if (surjective && t > max_size) return std::nullopt;
  std::vector<int> counts(t, 0);
  int total = 0;
  for (int i = 0; i < t; ++i) {
    counts[i] = surjective ? 1 : uniform(rng, 0, 1);
    total += counts[i];
  }
  if (total > max_size) return std::nullopt;
  int extra = uniform(rng, 0, std::max(0, std::min(2, max_size - total)));
  for (int i = 0; i < extra && t > 0; ++i) ++counts[uniform(rng, 0, t - 1)];
  std::vector<int> f;
  for (int i = 0; i < t; ++i)
    for (int c = 0; c < counts[i]; ++c) f.push_back(i);
  std::shuffle(f.begin(), f.end(), rng);
  Obj src = fin_set(static_cast<int>(f.size()), prefix);
  return Map{src, target, {f}};
}

InvCatPtr random_invcat(Rng& rng, const RandomConfig& cfg, bool fibrant) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      WfPoset P = random_poset(rng, cfg.max_objects);
      auto J = std::make_shared<const InvCat>(InvCat{BaseCat::finset(), WfPoset::make({}, {}), {}, {}, {}, {}});
      for (const auto& x : P.topo_order()) {
        Obj Ix = random_fin(rng, fibrant ? 1 : 0, cfg.max_gamma, x + "_");
        HomEngine E(J);
        Diagram empty{J, Ix, {}, {}};
        DiagramPtr D = std::make_shared<const Diagram>(empty);
        for (const auto& y : J->objects.topo_order()) {
          if (!P.lt(y, x)) continue;
          HomPtr M = E.matching(D, y);
          Map a = require(random_over(rng, M->carrier, fibrant, cfg.max_size, x + y + "_"));
          D = extend_diagram(E, D, y, a);
        }
        J = adjoin_object(*J, x, Ix, *D);
      }
      return J;
    } catch (const Retry&) {
    }
  }
  throw Error(ErrorKind::SizeBoundExceeded, "could not generate an inverse category within the size bound");
}

DiagramPtr random_diagram(Rng& rng, HomEngine& E, const Obj& gamma, const RandomConfig& cfg, bool fibrant) {
  const InvCatPtr& I = E.invcat();
  for (int attempt = 0; attempt < 50; ++attempt) {
    try {
      DiagramPtr D = std::make_shared<const Diagram>(Diagram{I, gamma, {}, {}});
      for (const auto& x : I->objects.topo_order()) {
        HomPtr M = E.matching(D, x);
        Map a = require(random_over(rng, M->carrier, fibrant, cfg.max_size, "a" + x + "_"));
        D = extend_diagram(E, D, x, a);
      }
      return D;
    } catch (const Retry&) {
    }
  }
  throw Error(ErrorKind::SizeBoundExceeded, "could not generate a diagram within the size bound");
}

DiagramMap random_reedy_fibration(Rng& rng, HomEngine& E, const DiagramPtr& B, const RandomConfig& cfg) {
  const InvCatPtr& I = E.invcat();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      DiagramPtr A = std::make_shared<const Diagram>(Diagram{I, B->gamma, {}, {}});
      std::map<Label, Map> comps;
      for (const auto& x : I->objects.topo_order()) {
        DiagramMap partial{A, B, comps};
        Map mB = E.matching_map(B, x);
        Map Mf = E.matching_functor(partial, x);
        Pullback target = pullback(mB, Mf);
        Map s = require(random_over(rng, target.object, true, cfg.max_size, "a" + x + "_"));
        A = extend_diagram(E, A, x, compose(target.p2, s));
        comps.emplace(x, compose(target.p1, s));
      }
      return make_diagram_map(A, B, comps);
    } catch (const Retry&) {
    }
  }
  throw Error(ErrorKind::SizeBoundExceeded, "could not generate a Reedy fibration within the size bound");
}

HomInstance random_hom_instance(Rng& rng, const RandomConfig& cfg, bool fibrant) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      HomInstance h;
      h.I = random_invcat(rng, cfg, fibrant);
      h.engine = std::make_unique<HomEngine>(h.I);
      h.A = random_diagram(rng, *h.engine, random_fin(rng, 1, cfg.max_gamma, "x"), cfg, fibrant);
      h.B = random_diagram(rng, *h.engine, random_fin(rng, 1, cfg.max_gamma, "y"), cfg, fibrant);
      return h;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeBoundExceeded) throw;
    }
  }
  throw Error(ErrorKind::SizeBoundExceeded, "could not generate a hom instance within the size bound");
}

InvCatPtr random_sset_invcat(Rng& rng, int trunc, int max_objects) {
  std::vector<Obj> pool;
  pool.push_back(point(trunc));
  pool.push_back(discrete({"a", "b"}, trunc));
  pool.push_back(representable(1, trunc));
  pool.push_back(boundary(1, trunc));
  pool.push_back(horn(2, 1, trunc));
  FinCategory c2;
  c2.objects = {"*"};
  c2.morphisms = {"e", "g"};
  c2.source = {0, 0};
  c2.target = {0, 0};
  c2.identity = {0};
  c2.composite = {{0, 1}, {1, 0}};
  pool.push_back(nerve(c2, trunc));

  WfPoset P = random_poset(rng, max_objects);
  InvCat I;
  I.base = BaseCat::ssets(trunc);
  I.objects = P;
  for (const auto& x : P.elements()) I.spaces[x] = pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
  std::map<HomKey, Pullback> prods;
  for (const auto& [y, x] : P.closed_pairs()) {
    Pullback p = product(I.spaces.at(x), I.spaces.at(y));
    I.homs[{x, y}] = Span{p.object, p.p1, p.p2};
    prods.emplace(HomKey{x, y}, std::move(p));
  }
  auto els = P.elements();
  for (const auto& x : els)
    for (const auto& y : els)
      for (const auto& z : els) {
        if (!P.lt(y, x) || !P.lt(z, y)) continue;
        Pullback dom = pullback(I.homs.at({x, y}).right, I.homs.at({y, z}).left);
        const Pullback& xy = prods.at({x, y});
        const Pullback& yz = prods.at({y, z});
        const Pullback& xz = prods.at({x, z});
        std::vector<std::vector<int>> f(trunc + 1);
        for (int m = 0; m <= trunc; ++m)
          for (int e = 0; e < dom.object->size(m); ++e) {
            int a = xy.p1.f[m][dom.p1.f[m][e]];
            int c = yz.p2.f[m][dom.p2.f[m][e]];
            f[m].push_back(xz.find(m, a, c));
          }
        I.comps[{x, y, z}] = Composition{dom, Map{dom.object, xz.object, std::move(f)}};
      }
  return validate(std::move(I));
}

} // namespace invcat
