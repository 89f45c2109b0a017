#include "invcat/hom.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace invcat {

namespace {

Mono identity_mono(int k) {
  Mono id(k + 1);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

std::string set_name(const std::set<Label>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

} // namespace

// -- witnesses ---------------------------------------------------------------

std::string Witness::key(const Presheaf& X, const Presheaf& Y) const {
  std::string out = "<" + X.label(level, p) + "," + Y.label(level, q) + ">";
  for (const auto& [y, levels] : comps) {
    out += y + "[";
    for (std::size_t k = 0; k < levels.size(); ++k) {
      if (k) out += "|";
      for (std::size_t i = 0; i < levels[k].size(); ++i) out += (i ? "," : "") + std::to_string(levels[k][i]);
    }
    out += "]";
  }
  return out;
}

Witness Witness::restricted(const std::set<Label>& subset) const {
  Witness w{level, p, q, {}};
  for (const auto& [y, c] : comps)
    if (subset.count(y)) w.comps.emplace(y, c);
  return w;
}

int HomObject::find(const Witness& w) const {
  if (w.level < 0 || w.level >= static_cast<int>(by_key.size())) return -1;
  auto it = by_key[w.level].find(w.key(*src->gamma, *tgt->gamma));
  return it == by_key[w.level].end() ? -1 : it->second;
}

// -- engine ----------------------------------------------------------------

HomEngine::HomEngine(InvCatPtr I) : I_(std::move(I)) {}

DiagramPtr HomEngine::profile(const Label& x) {
  auto it = profiles_.find(x);
  if (it != profiles_.end()) return it->second;
  auto D = collage_profile(I_, x);
  keep(D);
  profiles_.emplace(x, D);
  return D;
}

const Fiber& HomEngine::fiber(const DiagramPtr& A, const Label& y, int m, int p) {
  auto key = std::make_tuple(A.get(), y, m, p);
  auto it = fibers_.find(key);
  if (it != fibers_.end()) return it->second;
  keep(A);
  return fibers_.emplace(key, make_fiber(A->comp(y).to_gamma, m, p)).first->second;
}

HomPtr HomEngine::finish(const DiagramPtr& A, const DiagramPtr& B, const std::set<Label>& support,
                         const Presheaf& shape, std::vector<std::vector<Witness>> witnesses) {
  const int n = I_->base.trunc;
  auto H = std::make_shared<HomObject>();
  H->src = A;
  H->tgt = B;
  H->support = support;
  Presheaf P = shape;
  H->by_key.resize(n + 1);
  std::vector<std::vector<int>> lx(n + 1), ly(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int e = 0; e < P.size(m); ++e) {
      const Witness& w = witnesses[m][e];
      P.labels[m][e] = w.key(*A->gamma, *B->gamma);
      H->by_key[m].emplace(P.labels[m][e], e);
      lx[m].push_back(w.p);
      ly[m].push_back(w.q);
    }
  H->carrier = make_obj(std::move(P));
  H->leg_x = Map{H->carrier, A->gamma, std::move(lx)};
  H->leg_y = Map{H->carrier, B->gamma, std::move(ly)};
  H->witness = std::move(witnesses);
  return H;
}

HomPtr HomEngine::product_hom(const DiagramPtr& A, const DiagramPtr& B) {
  Pullback xy = product(A->gamma, B->gamma);
  const int n = I_->base.trunc;
  std::vector<std::vector<Witness>> ws(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int e = 0; e < xy.object->size(m); ++e) ws[m].push_back(Witness{m, xy.p1.f[m][e], xy.p2.f[m][e], {}});
  return finish(A, B, {}, *xy.object, std::move(ws));
}

HomPtr HomEngine::hom(const DiagramPtr& A, const DiagramPtr& B) {
  auto S = A->support();
  if (S != B->support())
    throw Error(ErrorKind::InvalidDiagram, "hom between diagrams with different supports");
  return hom(A, B, S);
}

HomPtr HomEngine::hom(const DiagramPtr& A, const DiagramPtr& B, const std::set<Label>& S) {
  Key key{A.get(), B.get(), S};
  auto it = homs_.find(key);
  if (it != homs_.end()) return it->second;
  keep(A);
  keep(B);
  for (const auto& x : S)
    if (!A->comps.count(x) || !B->comps.count(x))
      throw Error(ErrorKind::InvalidDiagram, "hom over " + set_name(S) + " needs components at " + x,
                  {{"object", x}});
  if (!I_->objects.is_down_closed(S))
    throw Error(ErrorKind::InvalidDiagram, "hom over a subset that is not down-closed");

  HomPtr out;
  if (S.empty()) {
    out = product_hom(A, B);
  } else {
    Label x;
    for (const auto& c : S) {
      bool top = true;
      for (const auto& d : S)
        if (I_->objects.lt(c, d)) top = false;
      if (top) x = c;
    }
    auto below = I_->objects.below(x);
    std::set<Label> strict(below.begin(), below.end());
    std::set<Label> lax_set = strict;
    lax_set.insert(x);
    if (S == lax_set) {
      out = lax(A, B, x);
    } else {
      std::set<Label> rest = S;
      rest.erase(x);
      HomPtr H1 = hom(A, B, rest);
      HomPtr H0 = hom(A, B, strict);
      HomPtr L = hom(A, B, lax_set);
      Pullback pb = pullback(restriction(H1, H0), restriction(L, H0));
      const int n = I_->base.trunc;
      std::vector<std::vector<Witness>> ws(n + 1);
      for (int m = 0; m <= n; ++m)
        for (int e = 0; e < pb.object->size(m); ++e) {
          Witness w = H1->witness[m][pb.p1.f[m][e]];
          for (const auto& [y, c] : L->witness[m][pb.p2.f[m][e]].comps) w.comps.emplace(y, c);
          ws[m].push_back(std::move(w));
        }
      out = finish(A, B, S, *pb.object, std::move(ws));
    }
  }
  homs_.emplace(key, out);
  return out;
}

HomPtr HomEngine::lax(const DiagramPtr& A, const DiagramPtr& B, const Label& x) {
  const int n = I_->base.trunc;
  auto below = I_->objects.below(x);
  std::set<Label> strict(below.begin(), below.end());
  std::set<Label> lax_set = strict;
  lax_set.insert(x);

  HomPtr H = hom(A, B, strict);
  HomPtr MA = matching(A, x);
  HomPtr MB = matching(B, x);
  Map mA = matching_map(A, x);
  Map mB = matching_map(B, x);

  // P = M_x A x_X hom(A,B), c : P -> M_x B
  Pullback P = pullback(MA->leg_y, H->leg_x);
  std::vector<std::vector<int>> cf(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int e = 0; e < P.object->size(m); ++e) {
      Witness w = compose(H->witness[m][P.p2.f[m][e]], MA->witness[m][P.p1.f[m][e]]);
      int idx = MB->find(w);
      if (idx < 0)
        throw Error(ErrorKind::MatchingObjectFailure, "composite is missing from the matching object at " + x,
                    {{"object", x}});
      cf[m].push_back(idx);
    }
  Map c{P.object, MB->carrier, std::move(cf)};

  Pullback U = pullback(mA, P.p1); // pi_1^* A_x
  Pullback V = pullback(mB, c);    // c^* B_x
  Exponential Ex = slice_exponential(U.p2, V.p2);
  DepProduct R = dep_product(P.p2, Ex.pi.proj);

  std::vector<std::vector<Witness>> ws(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int r = 0; r < static_cast<int>(R.base[m].size()); ++r) {
      int h = R.base[m][r];
      const Fiber& fr = R.fibers[m].at(h);
      const auto& sec = R.sections[m][r];
      Witness w = H->witness[m][h];
      const Fiber& fa = fiber(A, x, m, w.p);
      const Fiber& fb = fiber(B, x, m, w.q);
      std::vector<std::vector<int>> cx(n + 1);
      for (int k = 0; k <= n; ++k) {
        const int id_k = mono_index(identity_mono(k), k);
        for (std::size_t j = 0; j < fa.theta[k].size(); ++j) {
          int ti = fa.theta[k][j];
          int a = fa.total[k][j];
          int th = H->carrier->act(monotone_maps(k, m)[ti], m, h);
          int pp = P.find(k, mA.f[k][a], th);
          int e = sec[k][fr.find(k, ti, pp)];
          const Fiber& fe = Ex.pi.fibers[k].at(Ex.pi.base[k][e]);
          int uv = Ex.pi.sections[k][e][k][fe.find(k, id_k, U.find(k, a, pp))];
          int b = V.p1.f[k][Ex.uv.p2.f[k][uv]];
          cx[k].push_back(fb.find(k, ti, b));
        }
      }
      w.comps[x] = std::move(cx);
      ws[m].push_back(std::move(w));
    }
  return finish(A, B, lax_set, *R.proj.src, std::move(ws));
}

HomPtr HomEngine::matching(const DiagramPtr& A, const Label& x) {
  auto below = I_->objects.below(x);
  return hom(profile(x), A, std::set<Label>(below.begin(), below.end()));
}

Map HomEngine::matching_map(const DiagramPtr& A, const Label& x) {
  auto key = std::make_pair(A.get(), x);
  auto it = matching_maps_.find(key);
  if (it != matching_maps_.end()) return it->second;
  keep(A);
  const int n = I_->base.trunc;
  HomPtr M = matching(A, x);
  DiagramPtr D = profile(x);
  const Component& cx = A->comp(x);
  std::vector<std::vector<int>> f(n + 1);
  for (int k = 0; k <= n; ++k)
    for (int a = 0; a < cx.obj->size(k); ++a) {
      Witness w{k, cx.to_space.f[k][a], cx.to_gamma.f[k][a], {}};
      for (const auto& y : I_->objects.below(x)) {
        const Fiber& fp = fiber(D, y, k, w.p);
        const Fiber& fa = fiber(A, y, k, w.q);
        const Action& act = A->action(x, y);
        std::vector<std::vector<int>> cy(n + 1);
        for (int j = 0; j <= n; ++j)
          for (std::size_t i = 0; i < fp.theta[j].size(); ++i) {
            int ti = fp.theta[j][i];
            int ta = cx.obj->act(monotone_maps(j, k)[ti], k, a);
            int v = act.map.f[j][act.domain.find(j, ta, fp.total[j][i])];
            cy[j].push_back(fa.find(j, ti, v));
          }
        w.comps[y] = std::move(cy);
      }
      int idx = M->find(w);
      if (idx < 0)
        throw Error(ErrorKind::MatchingObjectFailure, "element of A_" + x + " has no image in the matching object",
                    {{"object", x}, {"level", k}, {"element", cx.obj->label(k, a)}});
      f[k].push_back(idx);
    }
  Map out{cx.obj, M->carrier, std::move(f)};
  matching_maps_.emplace(key, out);
  return out;
}

Witness HomEngine::compose(const Witness& second, const Witness& first) {
  Witness w{first.level, first.p, second.q, {}};
  for (const auto& [y, c1] : first.comps) {
    const auto& c2 = second.comps.at(y);
    std::vector<std::vector<int>> c(c1.size());
    for (std::size_t k = 0; k < c1.size(); ++k)
      for (int v : c1[k]) c[k].push_back(c2[k][v]);
    w.comps.emplace(y, std::move(c));
  }
  return w;
}

Witness HomEngine::postcompose(const Witness& w, const DiagramMap& g) {
  Witness out{w.level, w.p, w.q, {}};
  for (const auto& [y, c] : w.comps) {
    const Fiber& fa = fiber(g.src, y, w.level, w.q);
    const Fiber& fb = fiber(g.tgt, y, w.level, w.q);
    const Map& gy = g.comps.at(y);
    std::vector<std::vector<int>> d(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
      for (int v : c[k]) d[k].push_back(fb.find(static_cast<int>(k), fa.theta[k][v], gy.f[k][fa.total[k][v]]));
    out.comps.emplace(y, std::move(d));
  }
  return out;
}

Map HomEngine::matching_functor(const DiagramMap& f, const Label& x) {
  HomPtr MA = matching(f.src, x);
  HomPtr MB = matching(f.tgt, x);
  return induced_map(MA, f, MB);
}

Map HomEngine::induced_map(const HomPtr& AB, const DiagramMap& g, const HomPtr& AB2) {
  const int n = I_->base.trunc;
  std::vector<std::vector<int>> f(n + 1);
  for (int m = 0; m <= n; ++m)
    for (const auto& w : AB->witness[m]) {
      int idx = AB2->find(postcompose(w, g));
      if (idx < 0) throw Error(ErrorKind::MatchingObjectFailure, "postcomposite is missing from the target hom-object");
      f[m].push_back(idx);
    }
  return Map{AB->carrier, AB2->carrier, std::move(f)};
}

HomEngine::HomComposition HomEngine::composition(const HomPtr& AB, const HomPtr& BC, const HomPtr& AC) {
  const int n = I_->base.trunc;
  Pullback dom = pullback(AB->leg_y, BC->leg_x);
  std::vector<std::vector<int>> f(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int e = 0; e < dom.object->size(m); ++e) {
      Witness w = compose(BC->witness[m][dom.p2.f[m][e]], AB->witness[m][dom.p1.f[m][e]]);
      int idx = AC->find(w);
      if (idx < 0) throw Error(ErrorKind::MatchingObjectFailure, "composite is missing from the target hom-object");
      f[m].push_back(idx);
    }
  Map m{dom.object, AC->carrier, std::move(f)};
  return {std::move(dom), std::move(m)};
}

Map HomEngine::restriction(const HomPtr& big, const HomPtr& small) {
  const int n = I_->base.trunc;
  std::vector<std::vector<int>> f(n + 1);
  for (int m = 0; m <= n; ++m)
    for (const auto& w : big->witness[m]) {
      int idx = small->find(w.restricted(small->support));
      if (idx < 0) throw Error(ErrorKind::MatchingObjectFailure, "restriction is missing from the smaller hom-object");
      f[m].push_back(idx);
    }
  return Map{big->carrier, small->carrier, std::move(f)};
}

HomPtr HomEngine::slice_limit(const DiagramPtr& A, const DiagramPtr& B) {
  const int n = I_->base.trunc;
  auto S = A->support();
  Pullback xy = product(A->gamma, B->gamma);
  std::vector<Label> order;
  for (const auto& x : I_->objects.topo_order())
    if (S.count(x)) order.push_back(x);
  std::vector<Obj> nodes{xy.object};
  std::vector<HomPtr> laxes;
  std::vector<LimitEdge> edges;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto below = I_->objects.below(order[i]);
    std::set<Label> ls(below.begin(), below.end());
    ls.insert(order[i]);
    laxes.push_back(hom(A, B, ls));
    nodes.push_back(laxes.back()->carrier);
    edges.push_back({static_cast<int>(i) + 1, 0, laxes.back()->leg(xy)});
    for (std::size_t j = 0; j < i; ++j)
      if (I_->objects.lt(order[j], order[i]))
        edges.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, restriction(laxes[i], laxes[j])});
  }
  Limit L = finite_limit(n, nodes, edges);
  std::vector<std::vector<Witness>> ws(n + 1);
  for (int m = 0; m <= n; ++m)
    for (const auto& t : L.tuples[m]) {
      Witness w{m, xy.p1.f[m][t[0]], xy.p2.f[m][t[0]], {}};
      for (std::size_t i = 0; i < laxes.size(); ++i)
        for (const auto& [y, c] : laxes[i]->witness[m][t[i + 1]].comps) w.comps.emplace(y, c);
      ws[m].push_back(std::move(w));
    }
  return finish(A, B, S, *L.object, std::move(ws));
}

void HomEngine::check_hypotheses(const DiagramPtr& A, const DiagramPtr& B) {
  auto fib = fibrant_invcat(I_);
  if (!fib.ok) throw Error(ErrorKind::NotFibrantBase, "the inverse category is not fibrant", fib.to_json());
  for (const auto& D : {A, B}) {
    auto r = reedy_fibrant(*this, D, true);
    if (!r.ok) throw Error(ErrorKind::NotPrefibrant, "diagram is not Reedy prefibrant", r.to_json());
  }
}

// -- Reedy conditions ------------------------------------------------------

nlohmann::json ReedyReport::to_json() const {
  nlohmann::json j = {{"ok", ok}, {"per_object", nlohmann::json::object()}};
  for (const auto& [x, c] : per_object) j["per_object"][x] = c;
  return j;
}

namespace {

nlohmann::json check_map(const BaseCat& base, const Map& f, bool pre, bool& ok) {
  if (pre) {
    bool r = base.is_prefibration(f);
    ok = ok && r;
    return {{"prefibration", r}};
  }
  auto r = base.is_fibration(f);
  ok = ok && r.ok;
  nlohmann::json j = {{"fibration", r.ok}};
  if (!r.ok) j["certificate"] = r.certificate;
  return j;
}

std::vector<Label> support_order(const InvCat& I, const std::set<Label>& S) {
  std::vector<Label> out;
  for (const auto& x : I.objects.topo_order())
    if (S.count(x)) out.push_back(x);
  return out;
}

} // namespace

ReedyReport reedy_fibrant(HomEngine& E, const DiagramPtr& A, bool pre) {
  ReedyReport rep;
  const BaseCat& base = E.invcat()->base;
  for (const auto& x : support_order(*E.invcat(), A->support())) {
    Map m = E.matching_map(A, x);
    auto j = check_map(base, m, pre, rep.ok);
    j["matching_size"] = m.tgt->total();
    rep.per_object[x] = j;
  }
  return rep;
}

Comparison reedy_comparison(HomEngine& E, const DiagramMap& f, const Label& x) {
  Map mA = E.matching_map(f.src, x);
  Map mB = E.matching_map(f.tgt, x);
  Map Mf = E.matching_functor(f, x);
  Pullback target = pullback(mB, Mf);
  Map cmp = pair_into(target, f.comps.at(x), mA);
  return {std::move(target), std::move(cmp)};
}

ReedyReport reedy_fibration(HomEngine& E, const DiagramMap& f, bool pre) {
  ReedyReport rep;
  const BaseCat& base = E.invcat()->base;
  for (const auto& x : support_order(*E.invcat(), f.src->support())) {
    Comparison c = reedy_comparison(E, f, x);
    rep.per_object[x] = check_map(base, c.map, pre, rep.ok);
  }
  return rep;
}

ReedyReport fibrant_invcat(const InvCatPtr& I) {
  ReedyReport rep;
  HomEngine E(I);
  for (const auto& x : I->objects.topo_order()) {
    nlohmann::json j;
    auto r = I->base.is_fibrant(I->space(x));
    j["space_fibrant"] = r.ok;
    if (!r.ok) j["certificate"] = r.certificate;
    rep.ok = rep.ok && r.ok;
    auto prof = reedy_fibrant(E, E.profile(x));
    j["profile"] = prof.to_json();
    rep.ok = rep.ok && prof.ok;
    rep.per_object[x] = j;
  }
  return rep;
}

DiagramPtr extend_diagram(HomEngine& E, const DiagramPtr& D, const Label& y, const Map& to_matching) {
  const InvCat& I = *E.invcat();
  const int n = I.base.trunc;
  HomPtr M = E.matching(D, y);
  if (!same_obj(to_matching.tgt, M->carrier))
    throw Error(ErrorKind::TargetMismatch, "extension map does not land in the matching object at " + y);
  DiagramPtr prof = E.profile(y);
  Diagram out = *D;
  Component c{to_matching.src, compose(M->leg_y, to_matching), compose(M->leg_x, to_matching)};
  c.to_gamma.src = c.to_space.src = to_matching.src;
  out.comps[y] = c;
  for (const auto& z : I.objects.below(y)) {
    const Span& h = I.hom(y, z);
    Pullback dom = pullback(c.to_space, h.left);
    std::vector<std::vector<int>> f(n + 1);
    for (int k = 0; k <= n; ++k) {
      const int id_k = mono_index(identity_mono(k), k);
      for (int e = 0; e < dom.object->size(k); ++e) {
        int a = dom.p1.f[k][e], g = dom.p2.f[k][e];
        const Witness& w = M->witness[k][to_matching.f[k][a]];
        const Fiber& fp = E.fiber(prof, z, k, w.p);
        const Fiber& fd = E.fiber(D, z, k, w.q);
        int t = w.comps.at(z)[k][fp.find(k, id_k, g)];
        f[k].push_back(fd.total[k][t]);
      }
    }
    out.actions[{y, z}] = Action{dom, Map{dom.object, D->comp(z).obj, std::move(f)}};
  }
  return validate_diagram(std::move(out));
}

// -- oracle ----------------------------------------------------------------

namespace {

/// The unknowns of a diagram map p*A -> q*B over a finite set Z: one image
/// b in B_x for each (x, z, a) with a over p(z).
struct OracleProblem {
  std::vector<Label> order;
  struct Var {
    std::size_t obj;
    int z, a;
    std::vector<int> candidates;
    std::uint64_t weight = 1; // place value of the image in a map's code
    std::uint64_t radix = 1;
  };
  std::vector<Var> vars;
  std::map<std::tuple<std::size_t, int, int>, std::size_t> index;
  std::map<Label, std::size_t> obj_index;
};

OracleProblem oracle_problem(const DiagramPtr& A, const DiagramPtr& B, const Obj& Z, const Map& p, const Map& q,
                             int bound, const std::optional<std::set<Label>>& support) {
  const InvCat& I = *A->invcat;
  if (I.base.trunc != 0)
    throw Error(ErrorKind::InstanceMismatch, "the enumeration oracle runs on finite sets only");
  std::set<Label> S = support ? *support : A->support();
  auto too_big = [&](const std::string& what, int size) {
    if (size > bound)
      throw Error(ErrorKind::SizeBoundExceeded, what + " exceeds the size bound",
                  {{"what", what}, {"size", size}, {"bound", bound}});
  };
  too_big("Z", Z->size(0));
  OracleProblem P;
  for (const auto& x : I.objects.topo_order())
    if (S.count(x)) {
      P.obj_index[x] = P.order.size();
      P.order.push_back(x);
      too_big("A_" + x, A->comp(x).obj->size(0));
      too_big("B_" + x, B->comp(x).obj->size(0));
    }
  std::uint64_t weight = 1;
  for (std::size_t oi = 0; oi < P.order.size(); ++oi) {
    const Component& ca = A->comp(P.order[oi]);
    const Component& cb = B->comp(P.order[oi]);
    const auto radix = static_cast<std::uint64_t>(std::max(1, cb.obj->size(0)));
    for (int z = 0; z < Z->size(0); ++z)
      for (int a = 0; a < ca.obj->size(0); ++a) {
        if (ca.to_gamma.f[0][a] != p.f[0][z]) continue;
        OracleProblem::Var v{oi, z, a, {}, weight, radix};
        for (int b = 0; b < cb.obj->size(0); ++b)
          if (cb.to_gamma.f[0][b] == q.f[0][z] && cb.to_space.f[0][b] == ca.to_space.f[0][a]) v.candidates.push_back(b);
        P.index[{oi, z, a}] = P.vars.size();
        P.vars.push_back(std::move(v));
        if (__builtin_mul_overflow(weight, radix, &weight))
          throw Error(ErrorKind::SizeBoundExceeded, "too many unknowns to encode diagram maps",
                      {{"what", "unknowns"}, {"size", P.vars.size()}});
      }
  }
  return P;
}

/// Visits every diagram map as the chosen image of each unknown.
void oracle_visit(const DiagramPtr& A, const DiagramPtr& B, const OracleProblem& P,
                  const std::function<void(const std::vector<int>&)>& visit) {
  const InvCat& I = *A->invcat;
  std::vector<std::map<std::pair<int, int>, int>> F(P.order.size());
  std::vector<int> choice(P.vars.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == P.vars.size()) {
      visit(choice);
      return;
    }
    const auto& v = P.vars[i];
    const Label& x = P.order[v.obj];
    for (int b : v.candidates) {
      bool ok = true;
      for (std::size_t yi = 0; yi < v.obj && ok; ++yi) {
        const Label& y = P.order[yi];
        if (!I.objects.lt(y, x)) continue;
        const Action& aa = A->action(x, y);
        const Action& ab = B->action(x, y);
        const Span& h = I.hom(x, y);
        for (int f = 0; f < h.obj->size(0) && ok; ++f) {
          int ia = aa.domain.find(0, v.a, f);
          if (ia < 0) continue;
          int lhs = F[yi].at({v.z, aa.map.f[0][ia]});
          int rhs = ab.map.f[0][ab.domain.find(0, b, f)];
          if (lhs != rhs) ok = false;
        }
      }
      if (!ok) continue;
      F[v.obj][{v.z, v.a}] = b;
      choice[i] = b;
      go(i + 1);
      F[v.obj].erase({v.z, v.a});
    }
  };
  go(0);
}

OracleMap decode(const OracleProblem& P, std::uint64_t code) {
  OracleMap m;
  for (const auto& x : P.order) m[x];
  for (const auto& v : P.vars) m[P.order[v.obj]][{v.z, v.a}] = static_cast<int>((code / v.weight) % v.radix);
  return m;
}

} // namespace

std::vector<OracleMap> oracle_enumerate(const DiagramPtr& A, const DiagramPtr& B, const Obj& Z, const Map& p,
                                        const Map& q, int bound, const std::optional<std::set<Label>>& support) {
  OracleProblem P = oracle_problem(A, B, Z, p, q, bound, support);
  std::vector<OracleMap> out;
  oracle_visit(A, B, P, [&](const std::vector<int>& choice) {
    OracleMap m;
    for (const auto& x : P.order) m[x];
    for (std::size_t i = 0; i < P.vars.size(); ++i) m[P.order[P.vars[i].obj]][{P.vars[i].z, P.vars[i].a}] = choice[i];
    out.push_back(std::move(m));
  });
  return out;
}

namespace {

/// Maps Z -> carrier over (p, q), as one carrier element per point of Z.
void enumerate_points(const HomObject& H, const std::vector<int>& p, const std::vector<int>& q,
                      const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<std::vector<int>> cands(p.size());
  for (std::size_t z = 0; z < p.size(); ++z)
    for (int e = 0; e < H.carrier->size(0); ++e)
      if (H.leg_x.f[0][e] == p[z] && H.leg_y.f[0][e] == q[z]) cands[z].push_back(e);
  std::vector<int> cur(p.size());
  std::function<void(std::size_t)> go = [&](std::size_t z) {
    if (z == p.size()) {
      visit(cur);
      return;
    }
    for (int e : cands[z]) {
      cur[z] = e;
      go(z + 1);
    }
  };
  go(0);
}

/// The diagram map p*A -> q*B read off a carrier element at one point z.
std::vector<std::tuple<Label, int, int>> point_values(HomEngine& E, const HomObject& H, int e) {
  std::vector<std::tuple<Label, int, int>> out;
  const Witness& w = H.witness[0][e];
  for (const auto& y : H.support) {
    const Fiber& fa = E.fiber(H.src, y, 0, w.p);
    const Fiber& fb = E.fiber(H.tgt, y, 0, w.q);
    const auto& c = w.comps.at(y)[0];
    for (std::size_t j = 0; j < c.size(); ++j) out.emplace_back(y, fa.total[0][j], fb.total[0][c[j]]);
  }
  return out;
}

OracleMap to_oracle(HomEngine& E, const HomObject& H, const std::vector<int>& g) {
  OracleMap out;
  for (const auto& y : H.support) out[y];
  for (std::size_t z = 0; z < g.size(); ++z)
    for (const auto& [y, a, b] : point_values(E, H, g[z])) out[y][{static_cast<int>(z), a}] = b;
  return out;
}

void for_each_function(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> f(n, 0);
  if (n > 0 && k == 0) return;
  while (true) {
    visit(f);
    int i = 0;
    while (i < n && ++f[i] == k) f[i++] = 0;
    if (i == n) return;
  }
}

nlohmann::json oracle_json(const OracleMap& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [y, f] : m) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [za, b] : f) arr.push_back({za.first, za.second, b});
    j[y] = arr;
  }
  return j;
}

} // namespace

UPReport verify_universal_property(HomEngine& E, const HomPtr& H, int max_z, int bound) {
  UPReport rep;
  const int nx = H->src->gamma->size(0);
  const int ny = H->tgt->gamma->size(0);
  for (int n = 0; n <= max_z && rep.ok; ++n) {
    Obj Z = fin_set(n, "z");
    for_each_function(n, nx, [&](const std::vector<int>& p) {
      if (!rep.ok) return;
      for_each_function(n, ny, [&](const std::vector<int>& q) {
        if (!rep.ok) return;
        Map pm{Z, H->src->gamma, {p}};
        Map qm{Z, H->tgt->gamma, {q}};
        OracleProblem P = oracle_problem(H->src, H->tgt, Z, pm, qm, bound, H->support);
        std::vector<std::uint64_t> want;
        oracle_visit(H->src, H->tgt, P, [&](const std::vector<int>& choice) {
          std::uint64_t code = 0;
          for (std::size_t i = 0; i < choice.size(); ++i) code += P.vars[i].weight * static_cast<std::uint64_t>(choice[i]);
          want.push_back(code);
        });
        // each carrier element at a point fixes the unknowns over that point
        std::vector<std::map<int, std::uint64_t>> partial(n);
        bool malformed = false;
        for (int z = 0; z < n && !malformed; ++z) {
          std::size_t expected = 0;
          for (const auto& v : P.vars) expected += v.z == z;
          for (int e = 0; e < H->carrier->size(0); ++e) {
            if (H->leg_x.f[0][e] != p[z] || H->leg_y.f[0][e] != q[z]) continue;
            std::uint64_t code = 0;
            auto values = point_values(E, *H, e);
            for (const auto& [y, a, b] : values) {
              auto it = P.index.find({P.obj_index.at(y), z, a});
              if (it == P.index.end()) {
                malformed = true;
                break;
              }
              code += P.vars[it->second].weight * static_cast<std::uint64_t>(b);
            }
            if (values.size() != expected) malformed = true;
            partial[z][e] = code;
          }
        }
        std::vector<std::uint64_t> got;
        if (!malformed)
          enumerate_points(*H, p, q, [&](const std::vector<int>& g) {
            std::uint64_t code = 0;
            for (int z = 0; z < n; ++z) code += partial[z].at(g[z]);
            got.push_back(code);
          });
        const std::size_t count = got.size();
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        const std::size_t oracle_maps = want.size();
        got.erase(std::unique(got.begin(), got.end()), got.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        ++rep.checked;
        if (malformed || got.size() != count || got != want || want.size() != oracle_maps) {
          rep.ok = false;
          nlohmann::json v = {{"Z", n}, {"p", p}, {"q", q}, {"carrier_maps", count},
                              {"distinct_images", got.size()}, {"oracle_maps", oracle_maps}};
          if (malformed) v["malformed_witness"] = true;
          for (auto c : want)
            if (!std::binary_search(got.begin(), got.end(), c)) {
              v["unrepresented"] = oracle_json(decode(P, c));
              break;
            }
          rep.violation = v;
        }
      });
    });
  }
  // naturality along r : Z' -> Z
  const int nat_max = std::min(max_z, 2);
  for (int n = 0; n <= nat_max && rep.ok; ++n)
    for (int n2 = 0; n2 <= nat_max && rep.ok; ++n2)
      for_each_function(n, nx, [&](const std::vector<int>& p) {
        for_each_function(n, ny, [&](const std::vector<int>& q) {
          enumerate_points(*H, p, q, [&](const std::vector<int>& g) {
            if (!rep.ok) return;
            OracleMap F = to_oracle(E, *H, g);
            for_each_function(n2, n, [&](const std::vector<int>& r) {
              if (!rep.ok) return;
              std::vector<int> gr(n2);
              for (int i = 0; i < n2; ++i) gr[i] = g[r[i]];
              OracleMap lhs = to_oracle(E, *H, gr);
              OracleMap rhs;
              for (const auto& y : H->support) rhs[y];
              for (const auto& [y, f] : F)
                for (int i = 0; i < n2; ++i)
                  for (const auto& [za, b] : f)
                    if (za.first == r[i]) rhs[y][{i, za.second}] = b;
              ++rep.checked;
              if (lhs != rhs) {
                rep.ok = false;
                rep.violation = {{"naturality", true}, {"Z", n}, {"Zprime", n2}, {"r", r}, {"map", g}};
              }
            });
          });
        });
      });
  return rep;
}

HomPtr remove_element(const HomObject& H, int e) {
  if (H.carrier->trunc != 0) throw Error(ErrorKind::InstanceMismatch, "element removal is for finite sets only");
  auto out = std::make_shared<HomObject>(H);
  std::vector<Label> labels;
  std::vector<int> lx, ly;
  std::vector<Witness> ws;
  for (int i = 0; i < H.carrier->size(0); ++i) {
    if (i == e) continue;
    labels.push_back(H.carrier->label(0, i));
    lx.push_back(H.leg_x.f[0][i]);
    ly.push_back(H.leg_y.f[0][i]);
    ws.push_back(H.witness[0][i]);
  }
  out->carrier = fin_set(labels);
  out->leg_x = Map{out->carrier, H.leg_x.tgt, {lx}};
  out->leg_y = Map{out->carrier, H.leg_y.tgt, {ly}};
  out->witness = {ws};
  out->by_key.assign(1, {});
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) out->by_key[0].emplace(labels[i], i);
  return out;
}

} // namespace invcat
