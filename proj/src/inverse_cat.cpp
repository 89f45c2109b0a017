#include "invcat/inverse_cat.hpp"

#include "invcat/diagram.hpp"

namespace invcat {

namespace {

std::string hom_name(const Label& x, const Label& y) { return x + ">" + y; }
std::string comp_name(const Label& x, const Label& y, const Label& z) { return x + ">" + y + ">" + z; }

} // namespace

const Obj& InvCat::space(const Label& x) const {
  auto it = spaces.find(x);
  if (it == spaces.end()) throw Error(ErrorKind::UnknownLabel, "no object '" + x + "'", {{"label", x}});
  return it->second;
}

const Span& InvCat::hom(const Label& x, const Label& y) const {
  auto it = homs.find({x, y});
  if (it == homs.end())
    throw Error(ErrorKind::UnknownLabel, "no hom span " + hom_name(x, y), {{"hom", hom_name(x, y)}});
  return it->second;
}

const Composition& InvCat::comp(const Label& x, const Label& y, const Label& z) const {
  auto it = comps.find({x, y, z});
  if (it == comps.end())
    throw Error(ErrorKind::MissingComposite, "no composition " + comp_name(x, y, z),
                {{"composite", comp_name(x, y, z)}});
  return it->second;
}

Composition make_composition(const Span& xy, const Span& yz, const Span& xz,
                             const std::vector<std::map<Label, Label>>& table) {
  Pullback dom = pullback(xy.right, yz.left);
  Map m = map_from_labels(dom.object, xz.obj, table);
  return {std::move(dom), std::move(m)};
}

InvCatPtr validate(InvCat I) {
  const int n = I.base.trunc;
  for (const auto& x : I.objects.elements()) {
    if (!I.spaces.count(x))
      throw Error(ErrorKind::UnknownLabel, "object '" + x + "' has no space", {{"label", x}});
    I.base.check_member(I.spaces.at(x));
  }
  for (const auto& [x, _] : I.spaces)
    if (!I.objects.contains(x))
      throw Error(ErrorKind::UnknownLabel, "space given for undeclared object '" + x + "'", {{"label", x}});

  for (const auto& [y, x] : I.objects.closed_pairs()) {
    auto it = I.homs.find({x, y});
    if (it == I.homs.end())
      throw Error(ErrorKind::MissingComposite, "missing hom span " + hom_name(x, y), {{"hom", hom_name(x, y)}});
    const Span& s = it->second;
    I.base.check_member(s.obj);
    if (!same_obj(s.left.src, s.obj) || !same_obj(s.right.src, s.obj) || !same_obj(s.left.tgt, I.space(x)) ||
        !same_obj(s.right.tgt, I.space(y)))
      throw Error(ErrorKind::NonCommutingDiagram, "span legs of " + hom_name(x, y) + " have the wrong endpoints",
                  {{"hom", hom_name(x, y)}});
    if (!I.base.is_prefibration(s.left))
      throw Error(ErrorKind::SpanLegNotPrefibration, "left leg of " + hom_name(x, y) + " is not a prefibration",
                  {{"hom", hom_name(x, y)}});
  }
  for (const auto& [key, _] : I.homs)
    if (!I.objects.contains(key.first) || !I.objects.contains(key.second) || !I.objects.lt(key.second, key.first))
      throw Error(ErrorKind::UnknownLabel, "hom span " + hom_name(key.first, key.second) + " is not over a relation",
                  {{"hom", hom_name(key.first, key.second)}});

  const auto& els = I.objects.elements();
  auto lt = [&](const Label& a, const Label& b) { return I.objects.lt(a, b); };
  for (const auto& x : els)
    for (const auto& y : els)
      for (const auto& z : els) {
        if (!lt(y, x) || !lt(z, y)) continue;
        const std::string name = comp_name(x, y, z);
        auto it = I.comps.find({x, y, z});
        if (it == I.comps.end())
          throw Error(ErrorKind::MissingComposite, "missing composition " + name, {{"composite", name}});
        const Composition& c = it->second;
        const Span& xy = I.hom(x, y);
        const Span& yz = I.hom(y, z);
        const Span& xz = I.hom(x, z);
        if (!same_obj(c.domain.p1.tgt, xy.obj) || !same_obj(c.domain.p2.tgt, yz.obj) ||
            !same_obj(c.map.src, c.domain.object) || !same_obj(c.map.tgt, xz.obj))
          throw Error(ErrorKind::NonCommutingDiagram, "composition " + name + " has the wrong endpoints",
                      {{"composite", name}});
        for (int m = 0; m <= n; ++m)
          for (int e = 0; e < c.domain.object->size(m); ++e) {
            int f = c.domain.p1.f[m][e], g = c.domain.p2.f[m][e], h = c.map.f[m][e];
            if (xz.left.f[m][h] != xy.left.f[m][f] || xz.right.f[m][h] != yz.right.f[m][g])
              throw Error(ErrorKind::NonCommutingDiagram, "composition " + name + " is not over I(x) and I(z)",
                          {{"composite", name}, {"level", m}, {"element", c.domain.object->label(m, e)}});
          }
      }
  for (const auto& [key, _] : I.comps) {
    auto [x, y, z] = key;
    if (!I.objects.contains(x) || !I.objects.contains(y) || !I.objects.contains(z) || !lt(y, x) || !lt(z, y))
      throw Error(ErrorKind::UnknownLabel, "composition " + comp_name(x, y, z) + " is not over a chain",
                  {{"composite", comp_name(x, y, z)}});
  }

  // associativity: (f g) h = f (g h) for w < z < y < x
  for (const auto& x : els)
    for (const auto& y : els)
      for (const auto& z : els)
        for (const auto& w : els) {
          if (!lt(y, x) || !lt(z, y) || !lt(w, z)) continue;
          const auto& cxyz = I.comp(x, y, z);
          const auto& cxzw = I.comp(x, z, w);
          const auto& cxyw = I.comp(x, y, w);
          const auto& cyzw = I.comp(y, z, w);
          const Span& zw = I.hom(z, w);
          for (int m = 0; m <= n; ++m)
            for (int e = 0; e < cxyz.domain.object->size(m); ++e) {
              int f = cxyz.domain.p1.f[m][e], g = cxyz.domain.p2.f[m][e];
              int fg = cxyz.map.f[m][e];
              for (int h = 0; h < zw.obj->size(m); ++h) {
                int gh_idx = cyzw.domain.find(m, g, h);
                if (gh_idx < 0) continue;
                int lhs = cxzw.map.f[m][cxzw.domain.find(m, fg, h)];
                int rhs = cxyw.map.f[m][cxyw.domain.find(m, f, cyzw.map.f[m][gh_idx])];
                if (lhs != rhs) {
                  const Obj& target = I.hom(x, w).obj;
                  throw Error(ErrorKind::AssocFailure,
                              "associativity fails on " + x + ">" + y + ">" + z + ">" + w,
                              {{"chain", {w, z, y, x}},
                               {"level", m},
                               {"element",
                                {I.hom(x, y).obj->label(m, f), I.hom(y, z).obj->label(m, g), zw.obj->label(m, h)}},
                               {"lhs", target->label(m, lhs)},
                               {"rhs", target->label(m, rhs)}});
                }
              }
            }
        }
  return std::make_shared<const InvCat>(std::move(I));
}

InvCatPtr full_subcategory(const InvCat& I, const std::set<Label>& subset) {
  InvCat J;
  J.base = I.base;
  J.objects = I.objects.restrict(subset);
  J.annotations = I.annotations;
  for (const auto& x : subset) J.spaces[x] = I.space(x);
  for (const auto& [k, s] : I.homs)
    if (subset.count(k.first) && subset.count(k.second)) J.homs.emplace(k, s);
  for (const auto& [k, c] : I.comps)
    if (subset.count(std::get<0>(k)) && subset.count(std::get<1>(k)) && subset.count(std::get<2>(k)))
      J.comps.emplace(k, c);
  return std::make_shared<const InvCat>(std::move(J));
}

InvCatPtr down_closed_slice(const InvCat& I, SliceMode mode, const Label& x) {
  auto below = I.objects.below(x);
  std::set<Label> s(below.begin(), below.end());
  if (mode == SliceMode::Lax) s.insert(x);
  return full_subcategory(I, s);
}

InvCatPtr adjoin_object(const InvCat& J, const Label& x, const Obj& Ix, const Diagram& profile) {
  if (J.objects.contains(x))
    throw Error(ErrorKind::LabelClash, "object '" + x + "' already exists", {{"label", x}});
  if (!same_obj(profile.gamma, Ix))
    throw Error(ErrorKind::InvalidProfile, "profile is not a diagram over I(x)");
  auto support = profile.support();
  if (!J.objects.is_down_closed(support))
    throw Error(ErrorKind::InvalidProfile, "profile support is not down-closed in J");

  InvCat I;
  I.base = J.base;
  auto els = J.objects.elements();
  auto rel = J.objects.generators();
  for (const auto& y : support) rel.emplace_back(y, x);
  els.push_back(x);
  I.objects = WfPoset::make(els, rel);
  I.spaces = J.spaces;
  I.spaces[x] = Ix;
  I.homs = J.homs;
  I.comps = J.comps;
  I.annotations = J.annotations;
  for (const auto& [y, c] : profile.comps) {
    if (!same_obj(c.to_space.tgt, J.space(y)))
      throw Error(ErrorKind::InvalidProfile, "profile component at " + y + " is not over I(" + y + ")",
                  {{"label", y}});
    I.homs[{x, y}] = Span{c.obj, c.to_gamma, c.to_space};
  }
  for (const auto& [k, act] : profile.actions) I.comps[{x, k.first, k.second}] = Composition{act.domain, act.map};
  try {
    return validate(std::move(I));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidProfile, std::string("extension is not a valid inverse category: ") + e.what(),
                {{"cause", e.to_json()}});
  }
}

InvCatPtr collage_extend(const InvCat& J, const Label& x, const Obj& Ix, const Diagram& profile) {
  std::set<Label> all(J.objects.elements().begin(), J.objects.elements().end());
  if (!J.objects.contains(x) && profile.support() != all)
    throw Error(ErrorKind::InvalidProfile, "profile must have a component at every object of J");
  return adjoin_object(J, x, Ix, profile);
}

InvCatPtr trivial_invcat(const WfPoset& P, const BaseCat& base) {
  InvCat I;
  I.base = base;
  I.objects = P;
  Obj pt = base.terminal();
  for (const auto& x : P.elements()) I.spaces[x] = pt;
  Span one{pt, identity(pt), identity(pt)};
  for (const auto& [y, x] : P.closed_pairs()) I.homs[{x, y}] = one;
  auto els = P.elements();
  for (const auto& x : els)
    for (const auto& y : els)
      for (const auto& z : els)
        if (P.lt(y, x) && P.lt(z, y)) {
          Pullback d = pullback(one.right, one.left);
          Map m = to_point(d.object);
          m.tgt = pt;
          I.comps[{x, y, z}] = Composition{std::move(d), std::move(m)};
        }
  return validate(std::move(I));
}

InvCatPtr embed_ordinary(const OrdinaryInverseCat& C, const BaseCat& base) {
  InvCat I;
  I.base = base;
  I.objects = C.objects;
  const int n = base.trunc;
  Obj pt = base.terminal();
  for (const auto& x : C.objects.elements()) I.spaces[x] = pt;
  for (const auto& [y, x] : C.objects.closed_pairs()) {
    auto it = C.homs.find({x, y});
    std::vector<Label> arrows = it == C.homs.end() ? std::vector<Label>{} : it->second;
    Obj H = discrete(arrows, n);
    Map l = to_point(H);
    l.tgt = pt;
    I.homs[{x, y}] = Span{H, l, l};
  }
  for (const auto& [key, table] : C.comp) {
    auto [x, y, z] = key;
    std::map<Label, Label> level0;
    for (const auto& [fg, h] : table) level0["(" + fg.first + "," + fg.second + ")"] = h;
    Pullback dom = pullback(I.hom(x, y).right, I.hom(y, z).left);
    const Obj& tgt = I.hom(x, z).obj;
    std::vector<std::vector<int>> f(n + 1);
    for (int m = 0; m <= n; ++m)
      for (int e = 0; e < dom.object->size(m); ++e) {
        int a = dom.p1.f[m][e], b = dom.p2.f[m][e];
        const Obj& A = I.hom(x, y).obj;
        const Obj& B = I.hom(y, z).obj;
        int a0 = a, b0 = b;
        for (int k = m; k >= 1; --k) {
          a0 = A->face(k, 0, a0);
          b0 = B->face(k, 0, b0);
        }
        std::string key0 = "(" + A->label(0, a0) + "," + B->label(0, b0) + ")";
        auto hit = level0.find(key0);
        if (hit == level0.end())
          throw Error(ErrorKind::MissingComposite, "composite of " + key0 + " is not given",
                      {{"composite", comp_name(x, y, z)}, {"pair", key0}});
        int h0 = tgt->find(0, hit->second);
        if (h0 < 0)
          throw Error(ErrorKind::MissingComposite, "composite '" + hit->second + "' is not an arrow",
                      {{"composite", comp_name(x, y, z)}, {"pair", key0}, {"missing", hit->second}});
        int h = h0;
        for (int k = 0; k < m; ++k) h = tgt->degen(k, 0, h);
        f[m].push_back(h);
      }
    I.comps[key] = Composition{dom, make_map(dom.object, tgt, std::move(f))};
  }
  return validate(std::move(I));
}

bool structurally_equal(const InvCat& a, const InvCat& b) {
  if (!(a.base == b.base) || !(a.objects == b.objects)) return false;
  if (a.spaces.size() != b.spaces.size() || a.homs.size() != b.homs.size() || a.comps.size() != b.comps.size())
    return false;
  for (const auto& [x, X] : a.spaces) {
    auto it = b.spaces.find(x);
    if (it == b.spaces.end() || !same_obj(X, it->second)) return false;
  }
  for (const auto& [k, s] : a.homs) {
    auto it = b.homs.find(k);
    if (it == b.homs.end() || !maps_equal(s.left, it->second.left) || !maps_equal(s.right, it->second.right))
      return false;
  }
  for (const auto& [k, c] : a.comps) {
    auto it = b.comps.find(k);
    if (it == b.comps.end() || !maps_equal(c.map, it->second.map)) return false;
  }
  return true;
}

} // namespace invcat
