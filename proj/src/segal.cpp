#include "invcat/segal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace invcat {

namespace {

nlohmann::json axiom_detail(const std::string& law, int m, const InternalCat& K, std::vector<int> els) {
  nlohmann::json arr = nlohmann::json::array();
  for (int e : els) arr.push_back(K.K1->label(m, e));
  return {{"law", law}, {"level", m}, {"elements", arr}};
}

nlohmann::json fib_json(const FibrationResult& r) {
  nlohmann::json j = {{"ok", r.ok}};
  if (!r.ok) j["certificate"] = r.certificate;
  return j;
}

int find_root(std::vector<int>& parent, int a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

} // namespace

void check_category_axioms(const InternalCat& K) {
  const int trunc = K.base.trunc;
  for (int m = 0; m <= trunc; ++m) {
    for (int a = 0; a < K.K0->size(m); ++a) {
      int i = K.id(m, a);
      if (K.src(m, i) != a || K.tgt(m, i) != a)
        throw Error(ErrorKind::CompositionMismatch, "identity has wrong source or target",
                    {{"level", m}, {"object", K.K0->label(m, a)}});
    }
    for (int e = 0; e < K.composable.object->size(m); ++e) {
      int f = K.composable.p1(m, e), g = K.composable.p2(m, e), h = K.comp(m, e);
      if (K.src(m, h) != K.src(m, f) || K.tgt(m, h) != K.tgt(m, g))
        throw Error(ErrorKind::CompositionMismatch, "composite has wrong source or target",
                    axiom_detail("endpoints", m, K, {f, g, h}));
    }
    for (int f = 0; f < K.K1->size(m); ++f) {
      int l = K.composable.find(m, K.id(m, K.src(m, f)), f);
      int r = K.composable.find(m, f, K.id(m, K.tgt(m, f)));
      if (l < 0 || r < 0 || K.comp(m, l) != f || K.comp(m, r) != f)
        throw Error(ErrorKind::CompositionMismatch, "unit law fails", axiom_detail("unit", m, K, {f}));
    }
    for (int e = 0; e < K.composable.object->size(m); ++e) {
      int f = K.composable.p1(m, e), g = K.composable.p2(m, e), fg = K.comp(m, e);
      for (int h = 0; h < K.K1->size(m); ++h) {
        int gh_pair = K.composable.find(m, g, h);
        if (gh_pair < 0) continue;
        int gh = K.comp(m, gh_pair);
        int lhs = K.comp(m, K.composable.find(m, fg, h));
        int rhs = K.comp(m, K.composable.find(m, f, gh));
        if (lhs != rhs) {
          nlohmann::json d = axiom_detail("associativity", m, K, {f, g, h});
          d["lhs"] = K.K1->label(m, lhs);
          d["rhs"] = K.K1->label(m, rhs);
          throw Error(ErrorKind::AssocFailure, "internal composition is not associative", d);
        }
      }
    }
  }
}

InternalCat sigma(const InvCat& I) {
  const int trunc = I.base.trunc;
  const auto order = I.objects.topo_order();
  std::vector<std::pair<std::string, Obj>> objs;
  std::map<Label, int> obj_summand;
  for (const auto& x : order) {
    obj_summand[x] = static_cast<int>(objs.size());
    objs.emplace_back(x, I.space(x));
  }
  Coproduct C0 = coproduct(trunc, objs);

  struct Summand {
    Label x, y; // y empty for identities
  };
  std::vector<std::pair<std::string, Obj>> mors;
  std::vector<Summand> info;
  std::map<Label, int> id_summand;
  std::map<HomKey, int> hom_summand;
  for (const auto& x : order) {
    id_summand[x] = static_cast<int>(mors.size());
    mors.emplace_back("id_" + x, I.space(x));
    info.push_back({x, ""});
    for (const auto& y : order) {
      if (!I.objects.lt(y, x)) continue;
      hom_summand[{x, y}] = static_cast<int>(mors.size());
      mors.emplace_back(x + ">" + y, I.hom(x, y).obj);
      info.push_back({x, y});
    }
  }
  Coproduct C1 = coproduct(trunc, mors);

  std::vector<std::vector<int>> s(trunc + 1), t(trunc + 1), id(trunc + 1);
  for (int m = 0; m <= trunc; ++m) {
    for (auto [k, e] : C1.origin[m]) {
      const Summand& S = info[k];
      const Map& inj_x = C0.injections[obj_summand.at(S.x)];
      if (S.y.empty()) {
        s[m].push_back(inj_x(m, e));
        t[m].push_back(inj_x(m, e));
      } else {
        const Span& sp = I.hom(S.x, S.y);
        s[m].push_back(inj_x(m, sp.left(m, e)));
        t[m].push_back(C0.injections[obj_summand.at(S.y)](m, sp.right(m, e)));
      }
    }
    for (auto [k, a] : C0.origin[m]) id[m].push_back(C1.injections[id_summand.at(objs[k].first)](m, a));
  }

  InternalCat K;
  K.base = I.base;
  K.K0 = C0.object;
  K.K1 = C1.object;
  K.src = Map{K.K1, K.K0, std::move(s)};
  K.tgt = Map{K.K1, K.K0, std::move(t)};
  K.id = Map{K.K0, K.K1, std::move(id)};
  K.composable = pullback(K.tgt, K.src);

  std::vector<std::vector<int>> c(trunc + 1);
  for (int m = 0; m <= trunc; ++m)
    for (int e = 0; e < K.composable.object->size(m); ++e) {
      int f = K.composable.p1(m, e), g = K.composable.p2(m, e);
      auto [kf, ef] = C1.origin[m][f];
      auto [kg, eg] = C1.origin[m][g];
      if (info[kf].y.empty()) {
        c[m].push_back(g);
      } else if (info[kg].y.empty()) {
        c[m].push_back(f);
      } else {
        const Label &x = info[kf].x, &y = info[kf].y, &z = info[kg].y;
        const Composition& comp = I.comp(x, y, z);
        int h = comp.map(m, comp.domain.find(m, ef, eg));
        c[m].push_back(C1.injections[hom_summand.at({x, z})](m, h));
      }
    }
  K.comp = Map{K.composable.object, K.K1, std::move(c)};
  return K;
}

InternalCat internal_from_category(const FinCategory& C) {
  InternalCat K;
  K.base = BaseCat::finset();
  K.K0 = fin_set(C.objects);
  K.K1 = fin_set(C.morphisms);
  K.src = Map{K.K1, K.K0, {C.source}};
  K.tgt = Map{K.K1, K.K0, {C.target}};
  K.id = Map{K.K0, K.K1, {C.identity}};
  K.composable = pullback(K.tgt, K.src);
  std::vector<int> c;
  for (int e = 0; e < K.composable.object->size(0); ++e)
    c.push_back(C.composite[K.composable.p1(0, e)][K.composable.p2(0, e)]);
  K.comp = Map{K.composable.object, K.K1, {c}};
  return K;
}

Obj nerve_level(const InternalCat& K, int n) {
  if (n == 0) return K.K0;
  if (n == 1) return K.K1;
  const int trunc = K.base.trunc;
  // nodes: K1, K0, K1, K0, ..., K1
  std::vector<Obj> nodes;
  std::vector<LimitEdge> edges;
  for (int i = 0; i < n; ++i) {
    nodes.push_back(K.K1);
    if (i + 1 < n) nodes.push_back(K.K0);
  }
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({2 * i, 2 * i + 1, K.tgt});
    edges.push_back({2 * i + 2, 2 * i + 1, K.src});
  }
  Limit L = finite_limit(trunc, nodes, edges);
  std::vector<std::vector<Label>> labels(trunc + 1);
  for (int m = 0; m <= trunc; ++m)
    for (int e = 0; e < L.object->size(m); ++e) {
      std::string l;
      for (int i = 0; i < n; ++i) l += (i ? "|" : "") + K.K1->label(m, L.projections[2 * i](m, e));
      labels[m].push_back(l);
    }
  return relabel(L.object, std::move(labels));
}

nlohmann::json SegalReport::to_json() const { return {{"ok", ok}, {"detail", detail}}; }

SegalReport is_strongly_segal(const InvCat& I) {
  SegalReport r;
  r.detail["objects"] = nlohmann::json::object();
  r.detail["homs"] = nlohmann::json::object();
  for (const auto& x : I.objects.elements()) {
    auto f = I.base.is_fibrant(I.space(x));
    r.ok = r.ok && f.ok;
    r.detail["objects"][x] = fib_json(f);
  }
  for (const auto& [y, x] : I.objects.closed_pairs()) {
    const Span& sp = I.hom(x, y);
    auto l = I.base.is_fibration(sp.left);
    auto rt = I.base.is_fibration(sp.right);
    r.ok = r.ok && l.ok && rt.ok;
    r.detail["homs"][x + ">" + y] = {{"left", fib_json(l)}, {"right", fib_json(rt)}};
  }
  return r;
}

SegalReport is_strongly_segal(const InternalCat& K) {
  SegalReport r;
  auto o = K.base.is_fibrant(K.K0);
  auto s = K.base.is_fibration(K.src);
  auto t = K.base.is_fibration(K.tgt);
  r.ok = o.ok && s.ok && t.ok;
  r.detail = {{"objects", fib_json(o)}, {"source", fib_json(s)}, {"target", fib_json(t)}};
  return r;
}

nlohmann::json EIReport::to_json() const {
  nlohmann::json rel = nlohmann::json::array();
  for (const auto& [a, b] : relation) rel.push_back({a, b});
  nlohmann::json j = {{"is_ei", is_ei},
                      {"well_founded", well_founded},
                      {"is_inverse_ei", is_inverse_ei()},
                      {"components", components},
                      {"relation", rel}};
  if (precedence) j["precedence"] = precedence->to_json();
  if (cycle) j["cycle"] = *cycle;
  if (!non_invertible.is_null()) j["non_invertible"] = non_invertible;
  return j;
}

EIReport ei_inverse_diagnostic(const InternalCat& K) {
  EIReport rep;
  const int n0 = K.K0->size(0);
  std::vector<int> parent(n0);
  std::iota(parent.begin(), parent.end(), 0);
  if (K.K0->trunc >= 1)
    for (int e = 0; e < K.K0->size(1); ++e) {
      int a = find_root(parent, K.K0->face(1, 0, e)), b = find_root(parent, K.K0->face(1, 1, e));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, Label> comp_label;
  for (int a = 0; a < n0; ++a) {
    int r = find_root(parent, a);
    if (!comp_label.count(r)) {
      comp_label[r] = K.K0->label(0, r);
      rep.components.push_back(comp_label[r]);
    }
  }
  auto component = [&](int a) { return comp_label.at(find_root(parent, a)); };

  auto invertible = [&](int f) {
    for (int g = 0; g < K.K1->size(0); ++g) {
      int fg = K.composable.find(0, f, g), gf = K.composable.find(0, g, f);
      if (fg < 0 || gf < 0) continue;
      if (K.comp(0, fg) == K.id(0, K.src(0, f)) && K.comp(0, gf) == K.id(0, K.tgt(0, f))) return true;
    }
    return false;
  };

  std::set<LabelPair> rel;
  for (int f = 0; f < K.K1->size(0); ++f) {
    if (invertible(f)) continue;
    int s = K.src(0, f), t = K.tgt(0, f);
    if (s == t && rep.is_ei) {
      rep.is_ei = false;
      rep.non_invertible = {{"morphism", K.K1->label(0, f)}, {"object", K.K0->label(0, s)}};
    }
    rel.insert({component(t), component(s)});
  }
  rep.relation.assign(rel.begin(), rel.end());
  for (const auto& [a, b] : rep.relation)
    if (a == b) {
      rep.well_founded = false;
      rep.cycle = std::vector<Label>{a, a};
      return rep;
    }
  rep.cycle = find_cycle(rep.components, rep.relation);
  rep.well_founded = !rep.cycle;
  if (rep.well_founded) rep.precedence = check_well_founded(rep.components, rep.relation);
  return rep;
}

} // namespace invcat
