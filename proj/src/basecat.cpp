#include "invcat/basecat.hpp"

#include <algorithm>

namespace invcat {

std::string BaseCat::name() const {
  return kind == BaseKind::FinSet ? "finset" : "ssets(trunc=" + std::to_string(trunc) + ")";
}

void BaseCat::check_member(const Obj& X) const {
  if (X->trunc != trunc)
    throw Error(ErrorKind::InstanceMismatch,
                "object of truncation " + std::to_string(X->trunc) + " used in " + name(),
                {{"expected", trunc}, {"found", X->trunc}});
}

FibrationResult BaseCat::is_fibration(const Map& f) const {
  return kind == BaseKind::FinSet ? is_surjective(f) : is_kan_fibration(f);
}

bool BaseCat::is_prefibration(const Map& f) const {
  return prefibrations_are_fibrations ? is_fibration(f).ok : true;
}

FibrationResult is_surjective(const Map& f) {
  for (int m = 0; m <= f.trunc(); ++m) {
    std::vector<bool> hit(f.tgt->size(m), false);
    for (auto v : f.f[m]) hit[v] = true;
    for (int e = 0; e < f.tgt->size(m); ++e)
      if (!hit[e])
        return {false, {{"reason", "not surjective"}, {"level", m}, {"missing", f.tgt->label(m, e)}}};
  }
  return {};
}

namespace {

/// Horn families x_i (i != k) in X_{m-1} with f(x_i) = d_i y and
/// d_i x_j = d_{j-1} x_i for i < j; `visit` returns false to stop.
void enumerate_horns(const Map& f, int m, int k, int y,
                     const std::function<bool(const std::vector<int>&)>& visit) {
  const Presheaf& X = *f.src;
  const Presheaf& Y = *f.tgt;
  std::vector<int> fam(m + 1, -1);
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i > m) return visit(fam);
    if (i == k) return go(i + 1);
    int want = Y.face(m, i, y);
    for (int x = 0; x < X.size(m - 1); ++x) {
      if (f.f[m - 1][x] != want) continue;
      bool ok = true;
      if (m >= 2)
        for (int j = 0; j < i && ok; ++j)
          if (j != k && X.face(m - 1, j, x) != X.face(m - 1, i - 1, fam[j])) ok = false;
      if (!ok) continue;
      fam[i] = x;
      if (!go(i + 1)) return false;
    }
    fam[i] = -1;
    return true;
  };
  go(0);
}

} // namespace

FibrationResult is_kan_fibration(const Map& f) {
  const Presheaf& X = *f.src;
  const Presheaf& Y = *f.tgt;
  for (int m = 1; m <= X.trunc; ++m)
    for (int k = 0; k <= m; ++k)
      for (int y = 0; y < Y.size(m); ++y) {
        FibrationResult result;
        enumerate_horns(f, m, k, y, [&](const std::vector<int>& fam) {
          for (int x = 0; x < X.size(m); ++x) {
            if (f.f[m][x] != y) continue;
            bool fits = true;
            for (int i = 0; i <= m && fits; ++i)
              if (i != k && X.face(m, i, x) != fam[i]) fits = false;
            if (fits) return true;
          }
          nlohmann::json faces = nlohmann::json::object();
          for (int i = 0; i <= m; ++i)
            if (i != k) faces["d" + std::to_string(i)] = X.label(m - 1, fam[i]);
          result = {false,
                    {{"reason", "unfillable horn"},
                     {"horn", "Lambda^" + std::to_string(k) + "_" + std::to_string(m)},
                     {"dim", m},
                     {"missing_face", k},
                     {"target_simplex", Y.label(m, y)},
                     {"faces", faces}}};
          return false;
        });
        if (!result.ok) return result;
      }
  return {};
}

// -- limits ----------------------------------------------------------------

int Pullback::find(int m, int a, int b) const {
  auto it = index[m].find({a, b});
  return it == index[m].end() ? -1 : it->second;
}

Pullback pullback(const Map& f, const Map& g) {
  if (!same_obj(f.tgt, g.tgt))
    throw Error(ErrorKind::NonCommutingDiagram, "pullback of maps with different codomains");
  const Presheaf& A = *f.src;
  const Presheaf& B = *g.src;
  const int n = A.trunc;
  Presheaf P;
  P.trunc = n;
  P.labels.resize(n + 1);
  std::vector<std::vector<std::pair<int, int>>> pairs(n + 1);
  Pullback out;
  out.index.resize(n + 1);
  for (int m = 0; m <= n; ++m) {
    std::map<int, std::vector<int>> by_value;
    for (int b = 0; b < B.size(m); ++b) by_value[g.f[m][b]].push_back(b);
    for (int a = 0; a < A.size(m); ++a) {
      auto it = by_value.find(f.f[m][a]);
      if (it == by_value.end()) continue;
      for (int b : it->second) {
        out.index[m][{a, b}] = static_cast<int>(pairs[m].size());
        pairs[m].emplace_back(a, b);
        P.labels[m].push_back("(" + A.label(m, a) + "," + B.label(m, b) + ")");
      }
    }
  }
  P.shape_tables();
  for (int m = 1; m <= n; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < pairs[m].size(); ++e) {
        auto [a, b] = pairs[m][e];
        P.faces[m][i][e] = out.index[m - 1].at({A.face(m, i, a), B.face(m, i, b)});
      }
  for (int m = 0; m < n; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < pairs[m].size(); ++e) {
        auto [a, b] = pairs[m][e];
        P.degens[m][i][e] = out.index[m + 1].at({A.degen(m, i, a), B.degen(m, i, b)});
      }
  out.object = make_obj(std::move(P));
  std::vector<std::vector<int>> p1(n + 1), p2(n + 1);
  for (int m = 0; m <= n; ++m)
    for (auto [a, b] : pairs[m]) {
      p1[m].push_back(a);
      p2[m].push_back(b);
    }
  out.p1 = Map{out.object, f.src, std::move(p1)};
  out.p2 = Map{out.object, g.src, std::move(p2)};
  return out;
}

Pullback product(const Obj& A, const Obj& B) {
  auto fa = to_point(A);
  auto fb = to_point(B);
  fb.tgt = fa.tgt;
  return pullback(fa, fb);
}

Map pair_into(const Pullback& pb, const Map& u, const Map& v) {
  std::vector<std::vector<int>> h(u.trunc() + 1);
  for (int m = 0; m <= u.trunc(); ++m)
    for (int e = 0; e < u.src->size(m); ++e) {
      int idx = pb.find(m, u.f[m][e], v.f[m][e]);
      if (idx < 0)
        throw Error(ErrorKind::NonCommutingDiagram, "induced map into pullback: legs disagree",
                    {{"level", m}, {"element", u.src->label(m, e)}});
      h[m].push_back(idx);
    }
  return Map{u.src, pb.object, std::move(h)};
}

Limit finite_limit(int trunc, const std::vector<Obj>& nodes, const std::vector<LimitEdge>& edges) {
  const int N = static_cast<int>(nodes.size());
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= N || e.to < 0 || e.to >= N || !same_obj(e.map.src, nodes[e.from]) ||
        !same_obj(e.map.tgt, nodes[e.to]))
      throw Error(ErrorKind::NonCommutingDiagram, "limit edge does not match its endpoints",
                  {{"edge", {e.from, e.to}}});
  }
  for (const auto& X : nodes)
    if (X->trunc != trunc)
      throw Error(ErrorKind::InstanceMismatch, "limit node of the wrong truncation");

  Limit out;
  out.tuples.resize(trunc + 1);
  std::vector<std::map<std::vector<int>, int>> index(trunc + 1);
  Presheaf L;
  L.trunc = trunc;
  L.labels.resize(trunc + 1);
  for (int m = 0; m <= trunc; ++m) {
    std::vector<int> cur(N, -1);
    std::function<void(int)> go = [&](int i) {
      if (i == N) {
        index[m][cur] = static_cast<int>(out.tuples[m].size());
        out.tuples[m].push_back(cur);
        std::string l = "(";
        for (int t = 0; t < N; ++t) l += (t ? "," : "") + nodes[t]->label(m, cur[t]);
        L.labels[m].push_back(l + ")");
        return;
      }
      for (int v = 0; v < nodes[i]->size(m); ++v) {
        cur[i] = v;
        bool ok = true;
        for (const auto& e : edges) {
          int hi = std::max(e.from, e.to);
          if (hi != i) continue;
          if (e.map.f[m][cur[e.from]] != cur[e.to]) {
            ok = false;
            break;
          }
        }
        if (ok) go(i + 1);
      }
      cur[i] = -1;
    };
    go(0);
  }
  L.shape_tables();
  for (int m = 1; m <= trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < out.tuples[m].size(); ++e) {
        std::vector<int> d(N);
        for (int t = 0; t < N; ++t) d[t] = nodes[t]->face(m, i, out.tuples[m][e][t]);
        L.faces[m][i][e] = index[m - 1].at(d);
      }
  for (int m = 0; m < trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < out.tuples[m].size(); ++e) {
        std::vector<int> d(N);
        for (int t = 0; t < N; ++t) d[t] = nodes[t]->degen(m, i, out.tuples[m][e][t]);
        L.degens[m][i][e] = index[m + 1].at(d);
      }
  out.object = make_obj(std::move(L));
  for (int t = 0; t < N; ++t) {
    std::vector<std::vector<int>> f(trunc + 1);
    for (int m = 0; m <= trunc; ++m)
      for (const auto& tup : out.tuples[m]) f[m].push_back(tup[t]);
    out.projections.push_back(Map{out.object, nodes[t], std::move(f)});
  }
  return out;
}

Coproduct coproduct(int trunc, const std::vector<std::pair<std::string, Obj>>& summands) {
  Coproduct out;
  Presheaf C;
  C.trunc = trunc;
  C.labels.resize(trunc + 1);
  out.origin.resize(trunc + 1);
  std::vector<std::vector<int>> offset(summands.size(), std::vector<int>(trunc + 1, 0));
  for (int m = 0; m <= trunc; ++m)
    for (std::size_t s = 0; s < summands.size(); ++s) {
      offset[s][m] = static_cast<int>(C.labels[m].size());
      for (int e = 0; e < summands[s].second->size(m); ++e) {
        C.labels[m].push_back(summands[s].first + ":" + summands[s].second->label(m, e));
        out.origin[m].emplace_back(static_cast<int>(s), e);
      }
    }
  C.shape_tables();
  for (int m = 1; m <= trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < out.origin[m].size(); ++e) {
        auto [s, x] = out.origin[m][e];
        C.faces[m][i][e] = offset[s][m - 1] + summands[s].second->face(m, i, x);
      }
  for (int m = 0; m < trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < out.origin[m].size(); ++e) {
        auto [s, x] = out.origin[m][e];
        C.degens[m][i][e] = offset[s][m + 1] + summands[s].second->degen(m, i, x);
      }
  out.object = make_obj(std::move(C));
  for (std::size_t s = 0; s < summands.size(); ++s) {
    std::vector<std::vector<int>> f(trunc + 1);
    for (int m = 0; m <= trunc; ++m)
      for (int e = 0; e < summands[s].second->size(m); ++e) f[m].push_back(offset[s][m] + e);
    out.injections.push_back(Map{summands[s].second, out.object, std::move(f)});
  }
  return out;
}

// -- fibers and dependent products -----------------------------------------

int Fiber::find(int k, int theta_index, int s) const {
  auto it = index[k].find({theta_index, s});
  return it == index[k].end() ? -1 : it->second;
}

Fiber make_fiber(const Map& f, int m, int z) {
  const Presheaf& S = *f.src;
  const Presheaf& Z = *f.tgt;
  const int n = S.trunc;
  Fiber out;
  out.level = m;
  out.base = z;
  out.theta.resize(n + 1);
  out.total.resize(n + 1);
  out.index.resize(n + 1);
  Presheaf F;
  F.trunc = n;
  F.labels.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::map<int, std::vector<int>> by_value;
    for (int s = 0; s < S.size(k); ++s) by_value[f.f[k][s]].push_back(s);
    const auto& thetas = monotone_maps(k, m);
    for (int t = 0; t < static_cast<int>(thetas.size()); ++t) {
      int zt = Z.act(thetas[t], m, z);
      auto it = by_value.find(zt);
      if (it == by_value.end()) continue;
      for (int s : it->second) {
        out.index[k][{t, s}] = static_cast<int>(out.theta[k].size());
        out.theta[k].push_back(t);
        out.total[k].push_back(s);
        F.labels[k].push_back("(" + mono_label(thetas[t]) + "," + S.label(k, s) + ")");
      }
    }
  }
  F.shape_tables();
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i <= k; ++i)
      for (std::size_t e = 0; e < out.theta[k].size(); ++e) {
        const Mono& th = monotone_maps(k, m)[out.theta[k][e]];
        int t = mono_index(mono_compose(th, coface(k, i)), m);
        F.faces[k][i][e] = out.find(k - 1, t, S.face(k, i, out.total[k][e]));
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i)
      for (std::size_t e = 0; e < out.theta[k].size(); ++e) {
        const Mono& th = monotone_maps(k, m)[out.theta[k][e]];
        int t = mono_index(mono_compose(th, codegeneracy(k, i)), m);
        F.degens[k][i][e] = out.find(k + 1, t, S.degen(k, i, out.total[k][e]));
      }
  out.object = make_obj(std::move(F));
  return out;
}

void enumerate_lifts(const Obj& F, const std::vector<std::vector<int>>& a, const Map& g,
                     const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
  const Presheaf& P = *F;
  const Presheaf& X = *g.src;
  const int n = P.trunc;
  // degenerate_from[k][e] = list of (i, e') with s_i e' = e
  std::vector<std::vector<std::vector<std::pair<int, int>>>> degenerate_from(n + 1);
  for (int k = 0; k <= n; ++k) degenerate_from[k].resize(P.size(k));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i)
      for (int e = 0; e < P.size(k); ++e) degenerate_from[k + 1][P.degen(k, i, e)].emplace_back(i, e);
  std::vector<std::map<int, std::vector<int>>> by_value(n + 1);
  for (int k = 0; k <= n; ++k)
    for (int x = 0; x < X.size(k); ++x) by_value[k][g.f[k][x]].push_back(x);

  std::vector<std::vector<int>> s(n + 1);
  for (int k = 0; k <= n; ++k) s[k].assign(P.size(k), -1);
  bool stop = false;
  std::function<void(int, int)> go = [&](int k, int e) {
    if (stop) return;
    if (k > n) {
      if (!visit(s)) stop = true;
      return;
    }
    if (e == P.size(k)) {
      go(k + 1, 0);
      return;
    }
    auto it = by_value[k].find(a[k][e]);
    if (it == by_value[k].end()) return;
    for (int x : it->second) {
      bool ok = true;
      if (k >= 1)
        for (int i = 0; i <= k && ok; ++i)
          if (X.face(k, i, x) != s[k - 1][P.face(k, i, e)]) ok = false;
      for (auto [i, ep] : degenerate_from[k][e])
        if (ok && X.degen(k - 1, i, s[k - 1][ep]) != x) ok = false;
      if (!ok) continue;
      s[k][e] = x;
      go(k, e + 1);
      if (stop) return;
    }
    s[k][e] = -1;
  };
  go(0, 0);
}

namespace {

std::string section_label(const Presheaf& Z, int m, int z, const Presheaf& F, const Presheaf& X,
                          const std::vector<std::vector<int>>& sec) {
  std::string l = Z.label(m, z) + "{";
  bool first = true;
  for (int k = 0; k <= F.trunc; ++k)
    for (int e = 0; e < F.size(k); ++e) {
      l += (first ? "" : ";") + F.label(k, e) + "=" + X.label(k, sec[k][e]);
      first = false;
    }
  return l + "}";
}

} // namespace

DepProduct dep_product(const Map& f, const Map& g) {
  if (!same_obj(g.tgt, f.src))
    throw Error(ErrorKind::CompositionMismatch, "dependent product: codomain of g is not the domain of f");
  const Presheaf& Z = *f.tgt;
  const Presheaf& X = *g.src;
  const int n = Z.trunc;
  DepProduct out;
  out.base.resize(n + 1);
  out.sections.resize(n + 1);
  out.fibers.resize(n + 1);
  std::vector<std::map<std::pair<int, std::vector<std::vector<int>>>, int>> index(n + 1);
  Presheaf Pi;
  Pi.trunc = n;
  Pi.labels.resize(n + 1);
  for (int m = 0; m <= n; ++m)
    for (int z = 0; z < Z.size(m); ++z) {
      Fiber fib = make_fiber(f, m, z);
      enumerate_lifts(fib.object, fib.total, g, [&](const std::vector<std::vector<int>>& sec) {
        index[m][{z, sec}] = static_cast<int>(out.base[m].size());
        out.base[m].push_back(z);
        out.sections[m].push_back(sec);
        Pi.labels[m].push_back(section_label(Z, m, z, *fib.object, X, sec));
        return true;
      });
      out.fibers[m].emplace(z, std::move(fib));
    }
  Pi.shape_tables();
  // faces and degeneracies by restriction along delta_i / sigma_i
  auto restrict_along = [&](int m, int e, int m2, const Mono& op, int z2) {
    const Fiber& src = out.fibers[m].at(out.base[m][e]);
    const Fiber& dst = out.fibers[m2].at(z2);
    std::vector<std::vector<int>> sec(n + 1);
    for (int k = 0; k <= n; ++k)
      for (std::size_t d = 0; d < dst.theta[k].size(); ++d) {
        const Mono& th = monotone_maps(k, m2)[dst.theta[k][d]];
        int t = mono_index(mono_compose(op, th), m);
        int se = src.find(k, t, dst.total[k][d]);
        sec[k].push_back(out.sections[m][e][k][se]);
      }
    return index[m2].at({z2, sec});
  };
  for (int m = 1; m <= n; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < out.base[m].size(); ++e)
        Pi.faces[m][i][e] = restrict_along(m, static_cast<int>(e), m - 1, coface(m, i), Z.face(m, i, out.base[m][e]));
  for (int m = 0; m < n; ++m)
    for (int i = 0; i <= m; ++i)
      for (std::size_t e = 0; e < out.base[m].size(); ++e)
        Pi.degens[m][i][e] =
            restrict_along(m, static_cast<int>(e), m + 1, codegeneracy(m, i), Z.degen(m, i, out.base[m][e]));
  auto obj = make_obj(std::move(Pi));
  out.proj = Map{obj, f.tgt, out.base};
  return out;
}

Exponential slice_exponential(const Map& u, const Map& v) {
  Exponential out{pullback(u, v), {}};
  out.pi = dep_product(u, out.uv.p1);
  return out;
}

} // namespace invcat
