#include "invcat/diagram.hpp"

namespace invcat {

namespace {

[[noreturn]] void invalid(const std::string& msg, nlohmann::json detail = nlohmann::json::object()) {
  throw Error(ErrorKind::InvalidDiagram, msg, std::move(detail));
}

} // namespace

std::set<Label> Diagram::support() const {
  std::set<Label> s;
  for (const auto& [x, _] : comps) s.insert(x);
  return s;
}

const Component& Diagram::comp(const Label& x) const {
  auto it = comps.find(x);
  if (it == comps.end()) invalid("diagram has no component at '" + x + "'", {{"object", x}});
  return it->second;
}

const Action& Diagram::action(const Label& x, const Label& y) const {
  auto it = actions.find({x, y});
  if (it == actions.end()) invalid("diagram has no action " + x + ">" + y, {{"action", x + ">" + y}});
  return it->second;
}

Action make_action(const Component& x, const Span& hom, const Component& y,
                   const std::vector<std::map<Label, Label>>& table) {
  Pullback dom = pullback(x.to_space, hom.left);
  Map m = map_from_labels(dom.object, y.obj, table);
  return {std::move(dom), std::move(m)};
}

DiagramPtr validate_diagram(Diagram D) {
  const InvCat& I = *D.invcat;
  const int n = I.base.trunc;
  I.base.check_member(D.gamma);
  auto S = D.support();
  for (const auto& x : S)
    if (!I.objects.contains(x)) invalid("component at unknown object '" + x + "'", {{"object", x}});
  if (!I.objects.is_down_closed(S)) invalid("diagram support is not down-closed");
  for (const auto& [x, c] : D.comps) {
    if (!same_obj(c.to_gamma.src, c.obj) || !same_obj(c.to_space.src, c.obj) || !same_obj(c.to_gamma.tgt, D.gamma) ||
        !same_obj(c.to_space.tgt, I.space(x)))
      throw Error(ErrorKind::NonCommutingDiagram, "component at " + x + " has the wrong span endpoints",
                  {{"object", x}});
    if (!I.base.is_prefibration(c.to_gamma))
      throw Error(ErrorKind::NotPrefibrant, "component at " + x + " is not a prefibration over gamma",
                  {{"object", x}});
  }
  for (const auto& x : S)
    for (const auto& y : I.objects.below(x)) {
      auto it = D.actions.find({x, y});
      if (it == D.actions.end()) invalid("missing action " + x + ">" + y, {{"action", x + ">" + y}});
      const Action& a = it->second;
      const Component& cx = D.comp(x);
      const Component& cy = D.comp(y);
      const Span& h = I.hom(x, y);
      if (!same_obj(a.domain.p1.tgt, cx.obj) || !same_obj(a.domain.p2.tgt, h.obj) || !same_obj(a.map.src, a.domain.object) ||
          !same_obj(a.map.tgt, cy.obj))
        throw Error(ErrorKind::NonCommutingDiagram, "action " + x + ">" + y + " has the wrong endpoints",
                    {{"action", x + ">" + y}});
      for (int m = 0; m <= n; ++m)
        for (int e = 0; e < a.domain.object->size(m); ++e) {
          int ax = a.domain.p1.f[m][e], f = a.domain.p2.f[m][e], ay = a.map.f[m][e];
          if (cy.to_gamma.f[m][ay] != cx.to_gamma.f[m][ax] || cy.to_space.f[m][ay] != h.right.f[m][f])
            throw Error(ErrorKind::NonCommutingDiagram, "action " + x + ">" + y + " is not over gamma and I(y)",
                        {{"action", x + ">" + y}, {"level", m}, {"element", a.domain.object->label(m, e)}});
        }
    }
  for (const auto& [k, _] : D.actions)
    if (!S.count(k.first) || !S.count(k.second) || !I.objects.lt(k.second, k.first))
      invalid("action " + k.first + ">" + k.second + " is not over a relation");

  // (a.f).g = a.(f g) for z < y < x
  for (const auto& x : S)
    for (const auto& y : I.objects.below(x))
      for (const auto& z : I.objects.below(y)) {
        const Action& axy = D.action(x, y);
        const Action& ayz = D.action(y, z);
        const Action& axz = D.action(x, z);
        const Composition& c = I.comp(x, y, z);
        const Span& yz = I.hom(y, z);
        for (int m = 0; m <= n; ++m)
          for (int e = 0; e < axy.domain.object->size(m); ++e) {
            int a = axy.domain.p1.f[m][e], f = axy.domain.p2.f[m][e], af = axy.map.f[m][e];
            for (int g = 0; g < yz.obj->size(m); ++g) {
              int fg_idx = c.domain.find(m, f, g);
              if (fg_idx < 0) continue;
              int lhs = ayz.map.f[m][ayz.domain.find(m, af, g)];
              int rhs = axz.map.f[m][axz.domain.find(m, a, c.map.f[m][fg_idx])];
              if (lhs != rhs) {
                const Obj& Az = D.comp(z).obj;
                throw Error(ErrorKind::AssocFailure, "diagram action is not associative on " + x + ">" + y + ">" + z,
                            {{"chain", {z, y, x}},
                             {"level", m},
                             {"element",
                              {D.comp(x).obj->label(m, a), I.hom(x, y).obj->label(m, f), yz.obj->label(m, g)}},
                             {"lhs", Az->label(m, lhs)},
                             {"rhs", Az->label(m, rhs)}});
              }
            }
          }
      }
  return std::make_shared<const Diagram>(std::move(D));
}

DiagramPtr collage_profile(const InvCatPtr& I, const Label& x) {
  Diagram D;
  D.invcat = I;
  D.gamma = I->space(x);
  auto below = I->objects.below(x);
  for (const auto& y : below) {
    const Span& s = I->hom(x, y);
    D.comps[y] = Component{s.obj, s.left, s.right};
  }
  for (const auto& y : below)
    for (const auto& z : I->objects.below(y)) {
      const Composition& c = I->comp(x, y, z);
      D.actions[{y, z}] = Action{c.domain, c.map};
    }
  return std::make_shared<const Diagram>(std::move(D));
}

DiagramPtr restrict_diagram(const Diagram& D, const std::set<Label>& subset) {
  if (!D.invcat->objects.is_down_closed(subset)) invalid("restriction to a subset that is not down-closed");
  Diagram R;
  R.invcat = D.invcat;
  R.gamma = D.gamma;
  for (const auto& x : subset) R.comps[x] = D.comp(x);
  for (const auto& [k, a] : D.actions)
    if (subset.count(k.first) && subset.count(k.second)) R.actions.emplace(k, a);
  return std::make_shared<const Diagram>(std::move(R));
}

DiagramPtr terminal_diagram(const InvCatPtr& I, const Obj& gamma) {
  Diagram D;
  D.invcat = I;
  D.gamma = gamma;
  std::map<Label, Pullback> prods;
  for (const auto& x : I->objects.elements()) {
    Pullback p = product(I->space(x), gamma);
    D.comps[x] = Component{p.object, p.p2, p.p1};
    prods.emplace(x, std::move(p));
  }
  const int n = I->base.trunc;
  for (const auto& [y, x] : I->objects.closed_pairs()) {
    const Component& cx = D.comps.at(x);
    const Span& h = I->hom(x, y);
    Pullback dom = pullback(cx.to_space, h.left);
    std::vector<std::vector<int>> f(n + 1);
    for (int m = 0; m <= n; ++m)
      for (int e = 0; e < dom.object->size(m); ++e) {
        int ax = dom.p1.f[m][e], hf = dom.p2.f[m][e];
        f[m].push_back(prods.at(y).find(m, h.right.f[m][hf], cx.to_gamma.f[m][ax]));
      }
    D.actions[{x, y}] = Action{dom, Map{dom.object, D.comps.at(y).obj, std::move(f)}};
  }
  return validate_diagram(std::move(D));
}

DiagramPtr reindex(const Diagram& D, const Map& f) {
  if (!same_obj(f.tgt, D.gamma))
    throw Error(ErrorKind::TargetMismatch, "reindexing map does not land in the diagram's base");
  const InvCat& I = *D.invcat;
  const int n = I.base.trunc;
  Diagram R;
  R.invcat = D.invcat;
  R.gamma = f.src;
  std::map<Label, Pullback> pbs;
  for (const auto& [x, c] : D.comps) {
    Pullback p = pullback(f, c.to_gamma);
    R.comps[x] = Component{p.object, p.p1, compose(c.to_space, p.p2)};
    pbs.emplace(x, std::move(p));
  }
  for (const auto& [k, a] : D.actions) {
    auto [x, y] = k;
    const Span& h = I.hom(x, y);
    Pullback dom = pullback(R.comps.at(x).to_space, h.left);
    std::vector<std::vector<int>> g(n + 1);
    for (int m = 0; m <= n; ++m)
      for (int e = 0; e < dom.object->size(m); ++e) {
        int c = dom.p1.f[m][e], hf = dom.p2.f[m][e];
        int base = pbs.at(x).p1.f[m][c], ax = pbs.at(x).p2.f[m][c];
        int ay = a.map.f[m][a.domain.find(m, ax, hf)];
        g[m].push_back(pbs.at(y).find(m, base, ay));
      }
    R.actions[k] = Action{dom, Map{dom.object, R.comps.at(y).obj, std::move(g)}};
  }
  return std::make_shared<const Diagram>(std::move(R));
}

DiagramMap make_diagram_map(DiagramPtr src, DiagramPtr tgt, std::map<Label, Map> comps) {
  if (src->invcat != tgt->invcat && !structurally_equal(*src->invcat, *tgt->invcat))
    throw Error(ErrorKind::InvalidDiagram, "diagram map between diagrams on different inverse categories");
  if (!same_obj(src->gamma, tgt->gamma))
    throw Error(ErrorKind::TargetMismatch, "diagram map between diagrams over different bases");
  if (src->support() != tgt->support())
    throw Error(ErrorKind::InvalidDiagram, "diagram map between diagrams with different supports");
  const int n = src->invcat->base.trunc;
  for (const auto& x : src->support()) {
    auto it = comps.find(x);
    if (it == comps.end()) invalid("diagram map has no component at '" + x + "'", {{"object", x}});
    const Map& f = it->second;
    const Component& a = src->comp(x);
    const Component& b = tgt->comp(x);
    if (!same_obj(f.src, a.obj) || !same_obj(f.tgt, b.obj))
      invalid("diagram map component at " + x + " has the wrong endpoints", {{"object", x}});
    for (int m = 0; m <= n; ++m)
      for (int e = 0; e < a.obj->size(m); ++e)
        if (b.to_gamma.f[m][f.f[m][e]] != a.to_gamma.f[m][e] || b.to_space.f[m][f.f[m][e]] != a.to_space.f[m][e])
          throw Error(ErrorKind::NonCommutingDiagram, "diagram map component at " + x + " is not a span map",
                      {{"object", x}, {"level", m}, {"element", a.obj->label(m, e)}});
  }
  for (const auto& [k, act] : src->actions) {
    const Action& bact = tgt->action(k.first, k.second);
    const Map& fx = comps.at(k.first);
    const Map& fy = comps.at(k.second);
    for (int m = 0; m <= n; ++m)
      for (int e = 0; e < act.domain.object->size(m); ++e) {
        int a = act.domain.p1.f[m][e], h = act.domain.p2.f[m][e];
        int lhs = fy.f[m][act.map.f[m][e]];
        int rhs = bact.map.f[m][bact.domain.find(m, fx.f[m][a], h)];
        if (lhs != rhs)
          throw Error(ErrorKind::NonCommutingDiagram,
                      "diagram map does not commute with the action " + k.first + ">" + k.second,
                      {{"action", k.first + ">" + k.second}, {"level", m}, {"element", act.domain.object->label(m, e)}});
      }
  }
  return DiagramMap{std::move(src), std::move(tgt), std::move(comps)};
}

DiagramMap identity_map(const DiagramPtr& A) {
  std::map<Label, Map> c;
  for (const auto& [x, comp] : A->comps) c.emplace(x, identity(comp.obj));
  return DiagramMap{A, A, std::move(c)};
}

DiagramMap compose(const DiagramMap& g, const DiagramMap& f) {
  std::map<Label, Map> c;
  for (const auto& [x, fx] : f.comps) c.emplace(x, compose(g.comps.at(x), fx));
  return DiagramMap{f.src, g.tgt, std::move(c)};
}

DiagramMap restrict_map(const DiagramMap& f, const DiagramPtr& src, const DiagramPtr& tgt) {
  std::map<Label, Map> c;
  for (const auto& x : src->support()) c.emplace(x, f.comps.at(x));
  return DiagramMap{src, tgt, std::move(c)};
}

DiagramPullback pullback(const DiagramMap& f, const DiagramMap& g) {
  if (f.tgt != g.tgt) throw Error(ErrorKind::NonCommutingDiagram, "maps into different diagrams");
  const Diagram& A = *f.src;
  const Diagram& C = *g.src;
  const InvCat& I = *A.invcat;
  Diagram P{A.invcat, A.gamma, {}, {}};
  std::map<Label, Pullback> pbs;
  for (const auto& x : A.support()) {
    Pullback pb = pullback(f.comps.at(x), g.comps.at(x));
    const Component& ca = A.comp(x);
    P.comps[x] = Component{pb.object, compose(ca.to_gamma, pb.p1), compose(ca.to_space, pb.p1)};
    pbs.emplace(x, std::move(pb));
  }
  for (const auto& [k, act] : A.actions) {
    const auto& [x, y] = k;
    Pullback dom = pullback(P.comps.at(x).to_space, I.hom(x, y).left);
    const Action& aa = act;
    const Action& ac = C.action(x, y);
    const Pullback& px = pbs.at(x);
    const Pullback& py = pbs.at(y);
    std::vector<std::vector<int>> m(dom.object->trunc + 1);
    for (int l = 0; l <= dom.object->trunc; ++l)
      for (int i = 0; i < dom.object->size(l); ++i) {
        int e = dom.p1.f[l][i], h = dom.p2.f[l][i];
        int a = aa.map.f[l][aa.domain.find(l, px.p1.f[l][e], h)];
        int c = ac.map.f[l][ac.domain.find(l, px.p2.f[l][e], h)];
        m[l].push_back(py.find(l, a, c));
      }
    P.actions[k] = Action{dom, make_map(dom.object, P.comps.at(y).obj, std::move(m))};
  }
  DiagramPtr obj = validate_diagram(std::move(P));
  std::map<Label, Map> c1, c2;
  for (const auto& [x, pb] : pbs) {
    Map a = pb.p1, c = pb.p2;
    a.src = c.src = obj->comp(x).obj;
    c1.emplace(x, a);
    c2.emplace(x, c);
  }
  return {obj, make_diagram_map(obj, f.src, std::move(c1)), make_diagram_map(obj, g.src, std::move(c2))};
}

bool structurally_equal(const Diagram& a, const Diagram& b) {
  if (!same_obj(a.gamma, b.gamma) || a.support() != b.support()) return false;
  for (const auto& [x, c] : a.comps) {
    const Component& d = b.comps.at(x);
    if (!maps_equal(c.to_gamma, d.to_gamma) || !maps_equal(c.to_space, d.to_space)) return false;
  }
  if (a.actions.size() != b.actions.size()) return false;
  for (const auto& [k, act] : a.actions) {
    auto it = b.actions.find(k);
    if (it == b.actions.end() || !maps_equal(act.map, it->second.map)) return false;
  }
  return true;
}

} // namespace invcat
