#include "invcat/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace invcat {

namespace {

void enumerate_monotone(int k, int m, Mono& cur, std::vector<Mono>& out) {
  if (static_cast<int>(cur.size()) == k + 1) {
    out.push_back(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v <= m; ++v) {
    cur.push_back(v);
    enumerate_monotone(k, m, cur, out);
    cur.pop_back();
  }
}

struct MonoTable {
  std::vector<Mono> maps;
  std::map<Mono, int> index;
};

const MonoTable& mono_table(int k, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, MonoTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({k, m});
  if (it != cache.end()) return it->second;
  MonoTable t;
  Mono cur;
  enumerate_monotone(k, m, cur, t.maps);
  for (std::size_t i = 0; i < t.maps.size(); ++i) t.index[t.maps[i]] = static_cast<int>(i);
  return cache.emplace(std::pair{k, m}, std::move(t)).first->second;
}

[[noreturn]] void identity_error(const std::string& what) {
  throw Error(ErrorKind::SimplicialIdentity, "simplicial identity fails: " + what, {{"identity", what}});
}

} // namespace

const std::vector<Mono>& monotone_maps(int k, int m) { return mono_table(k, m).maps; }

int mono_index(const Mono& alpha, int m) {
  const auto& t = mono_table(static_cast<int>(alpha.size()) - 1, m);
  return t.index.at(alpha);
}

Mono mono_compose(const Mono& theta, const Mono& alpha) {
  Mono out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = theta[alpha[i]];
  return out;
}

Mono coface(int m, int i) {
  Mono out;
  for (int t = 0; t <= m; ++t)
    if (t != i) out.push_back(t);
  return out;
}

Mono codegeneracy(int m, int i) {
  Mono out;
  for (int t = 0; t <= m + 1; ++t) out.push_back(t <= i ? t : t - 1);
  return out;
}

std::string mono_label(const Mono& alpha) {
  bool wide = std::any_of(alpha.begin(), alpha.end(), [](int v) { return v > 9; });
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (wide && i ? "." : "") + std::to_string(alpha[i]);
  return s;
}

std::size_t Presheaf::total() const {
  std::size_t n = 0;
  for (const auto& l : labels) n += l.size();
  return n;
}

std::vector<int> Presheaf::sizes() const {
  std::vector<int> out;
  for (int m = 0; m <= trunc; ++m) out.push_back(size(m));
  return out;
}

int Presheaf::act(const Mono& alpha, int m, int e) const {
  const int k = static_cast<int>(alpha.size()) - 1;
  for (int j = 0; j < k; ++j) {
    if (alpha[j] == alpha[j + 1]) {
      Mono rest = alpha;
      rest.erase(rest.begin() + j + 1);
      return degen(k - 1, j, act(rest, m, e));
    }
  }
  if (k == m) return e; // injective [m] -> [m] is the identity
  std::vector<bool> hit(m + 1, false);
  for (auto v : alpha) hit[v] = true;
  int i = 0;
  while (hit[i]) ++i;
  Mono rest;
  for (auto v : alpha) rest.push_back(v < i ? v : v - 1);
  return act(rest, m - 1, face(m, i, e));
}

int Presheaf::find(int m, const Label& l) const {
  if (index_.size() != labels.size()) {
    for (int e = 0; e < size(m); ++e)
      if (labels[m][e] == l) return e;
    return -1;
  }
  auto it = index_[m].find(l);
  return it == index_[m].end() ? -1 : it->second;
}

void Presheaf::shape_tables() {
  faces.assign(trunc + 1, {});
  degens.assign(trunc + 1, {});
  for (int m = 1; m <= trunc; ++m) faces[m].assign(m + 1, std::vector<int>(size(m), -1));
  for (int m = 0; m < trunc; ++m) degens[m].assign(m + 1, std::vector<int>(size(m), -1));
}

void Presheaf::build_index() {
  index_.assign(labels.size(), {});
  for (std::size_t m = 0; m < labels.size(); ++m)
    for (std::size_t e = 0; e < labels[m].size(); ++e) index_[m][labels[m][e]] = static_cast<int>(e);
}

std::optional<std::string> Presheaf::identity_violation() const {
  auto at = [](int m, int e) { return " at level " + std::to_string(m) + " element " + std::to_string(e); };
  for (int m = 2; m <= trunc; ++m)
    for (int e = 0; e < size(m); ++e)
      for (int j = 1; j <= m; ++j)
        for (int i = 0; i < j; ++i)
          if (face(m - 1, i, face(m, j, e)) != face(m - 1, j - 1, face(m, i, e)))
            return "d" + std::to_string(i) + " d" + std::to_string(j) + " = d" + std::to_string(j - 1) +
                   " d" + std::to_string(i) + at(m, e);
  for (int m = 0; m < trunc; ++m)
    for (int e = 0; e < size(m); ++e)
      for (int j = 0; j <= m; ++j) {
        int s = degen(m, j, e);
        for (int i = 0; i <= m + 1; ++i) {
          int lhs = face(m + 1, i, s);
          if (i == j || i == j + 1) {
            if (lhs != e)
              return "d" + std::to_string(i) + " s" + std::to_string(j) + " = id" + at(m, e);
          } else if (i < j) {
            if (lhs != degen(m - 1, j - 1, face(m, i, e)))
              return "d" + std::to_string(i) + " s" + std::to_string(j) + " = s" + std::to_string(j - 1) +
                     " d" + std::to_string(i) + at(m, e);
          } else {
            if (lhs != degen(m - 1, j, face(m, i - 1, e)))
              return "d" + std::to_string(i) + " s" + std::to_string(j) + " = s" + std::to_string(j) +
                     " d" + std::to_string(i - 1) + at(m, e);
          }
        }
        if (m + 1 < trunc)
          for (int i = 0; i <= j; ++i)
            if (degen(m + 1, i, degen(m, j, e)) != degen(m + 1, j + 1, degen(m, i, e)))
              return "s" + std::to_string(i) + " s" + std::to_string(j) + " = s" + std::to_string(j + 1) +
                     " s" + std::to_string(i) + at(m, e);
      }
  return std::nullopt;
}

Obj make_obj(Presheaf p) {
  if (p.trunc < 0) identity_error("negative truncation level");
  if (static_cast<int>(p.labels.size()) != p.trunc + 1) identity_error("level count differs from trunc + 1");
  if (p.faces.size() != p.labels.size() || p.degens.size() != p.labels.size())
    identity_error("face/degeneracy tables have the wrong number of levels");
  for (int m = 0; m <= p.trunc; ++m) {
    if (m >= 1) {
      if (static_cast<int>(p.faces[m].size()) != m + 1) identity_error("missing face maps at level " + std::to_string(m));
      for (const auto& d : p.faces[m]) {
        if (static_cast<int>(d.size()) != p.size(m)) identity_error("face map is not total at level " + std::to_string(m));
        for (auto v : d)
          if (v < 0 || v >= p.size(m - 1)) identity_error("face value out of range at level " + std::to_string(m));
      }
    }
    if (m < p.trunc) {
      if (static_cast<int>(p.degens[m].size()) != m + 1)
        identity_error("missing degeneracy maps at level " + std::to_string(m));
      for (const auto& s : p.degens[m]) {
        if (static_cast<int>(s.size()) != p.size(m))
          identity_error("degeneracy map is not total at level " + std::to_string(m));
        for (auto v : s)
          if (v < 0 || v >= p.size(m + 1)) identity_error("degeneracy value out of range at level " + std::to_string(m));
      }
    }
    std::vector<Label> sorted = p.labels[m];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::DuplicateLabel, "duplicate element label at level " + std::to_string(m),
                  {{"level", m}, {"label", *std::adjacent_find(sorted.begin(), sorted.end())}});
  }
  if (auto v = p.identity_violation()) identity_error(*v);
  p.build_index();
  return std::make_shared<const Presheaf>(std::move(p));
}

bool same_obj(const Obj& a, const Obj& b) { return a == b || *a == *b; }

Map make_map(Obj src, Obj tgt, std::vector<std::vector<int>> f) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidMap, m); };
  if (src->trunc != tgt->trunc) fail("map between presheaves of different truncation");
  if (static_cast<int>(f.size()) != src->trunc + 1) fail("map has the wrong number of levels");
  for (int m = 0; m <= src->trunc; ++m) {
    if (static_cast<int>(f[m].size()) != src->size(m)) fail("map is not total at level " + std::to_string(m));
    for (auto v : f[m])
      if (v < 0 || v >= tgt->size(m)) fail("map value out of range at level " + std::to_string(m));
  }
  for (int m = 1; m <= src->trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (int e = 0; e < src->size(m); ++e)
        if (f[m - 1][src->face(m, i, e)] != tgt->face(m, i, f[m][e]))
          throw Error(ErrorKind::InvalidMap, "map does not commute with d" + std::to_string(i) + " at level " + std::to_string(m),
                      {{"level", m}, {"face", i}, {"element", src->label(m, e)}});
  for (int m = 0; m < src->trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (int e = 0; e < src->size(m); ++e)
        if (f[m + 1][src->degen(m, i, e)] != tgt->degen(m, i, f[m][e]))
          throw Error(ErrorKind::InvalidMap, "map does not commute with s" + std::to_string(i) + " at level " + std::to_string(m),
                      {{"level", m}, {"degeneracy", i}, {"element", src->label(m, e)}});
  return Map{std::move(src), std::move(tgt), std::move(f)};
}

Map identity(const Obj& X) {
  std::vector<std::vector<int>> f(X->trunc + 1);
  for (int m = 0; m <= X->trunc; ++m) {
    f[m].resize(X->size(m));
    std::iota(f[m].begin(), f[m].end(), 0);
  }
  return Map{X, X, std::move(f)};
}

Map compose(const Map& g, const Map& f) {
  if (!same_obj(f.tgt, g.src))
    throw Error(ErrorKind::CompositionMismatch, "composite of non-composable maps");
  std::vector<std::vector<int>> h(f.src->trunc + 1);
  for (int m = 0; m <= f.src->trunc; ++m)
    for (auto v : f.f[m]) h[m].push_back(g.f[m][v]);
  return Map{f.src, g.tgt, std::move(h)};
}

bool maps_equal(const Map& a, const Map& b) {
  return same_obj(a.src, b.src) && same_obj(a.tgt, b.tgt) && a.f == b.f;
}

bool is_iso(const Map& f) {
  for (int m = 0; m <= f.trunc(); ++m) {
    if (f.src->size(m) != f.tgt->size(m)) return false;
    std::vector<bool> hit(f.tgt->size(m), false);
    for (auto v : f.f[m]) {
      if (hit[v]) return false;
      hit[v] = true;
    }
  }
  return true;
}

// -- builders --------------------------------------------------------------

Obj discrete(const std::vector<Label>& labels, int trunc) {
  Presheaf p;
  p.trunc = trunc;
  p.labels.assign(trunc + 1, labels);
  p.shape_tables();
  std::vector<int> id(labels.size());
  std::iota(id.begin(), id.end(), 0);
  for (int m = 1; m <= trunc; ++m)
    for (auto& d : p.faces[m]) d = id;
  for (int m = 0; m < trunc; ++m)
    for (auto& s : p.degens[m]) s = id;
  return make_obj(std::move(p));
}

Obj point(int trunc) { return discrete({"*"}, trunc); }
Obj empty_obj(int trunc) { return discrete({}, trunc); }

Obj fin_set(int n, const std::string& prefix) {
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) l.push_back(prefix + std::to_string(i));
  return fin_set(l);
}

namespace {

/// Sub-presheaf of Delta[m] on the monotone maps accepted by `keep`.
Obj simplex_subobject(int m, int trunc, const std::function<bool(const Mono&)>& keep) {
  Presheaf p;
  p.trunc = trunc;
  p.labels.resize(trunc + 1);
  std::vector<std::map<Mono, int>> idx(trunc + 1);
  std::vector<std::vector<Mono>> els(trunc + 1);
  for (int k = 0; k <= trunc; ++k)
    for (const auto& a : monotone_maps(k, m))
      if (keep(a)) {
        idx[k][a] = static_cast<int>(els[k].size());
        els[k].push_back(a);
        p.labels[k].push_back(mono_label(a));
      }
  p.shape_tables();
  for (int k = 1; k <= trunc; ++k)
    for (int i = 0; i <= k; ++i)
      for (std::size_t e = 0; e < els[k].size(); ++e)
        p.faces[k][i][e] = idx[k - 1].at(mono_compose(els[k][e], coface(k, i)));
  for (int k = 0; k < trunc; ++k)
    for (int i = 0; i <= k; ++i)
      for (std::size_t e = 0; e < els[k].size(); ++e)
        p.degens[k][i][e] = idx[k + 1].at(mono_compose(els[k][e], codegeneracy(k, i)));
  return make_obj(std::move(p));
}

} // namespace

Obj representable(int m, int trunc) {
  return simplex_subobject(m, trunc, [](const Mono&) { return true; });
}

Obj boundary(int m, int trunc) {
  return simplex_subobject(m, trunc, [m](const Mono& a) {
    std::vector<bool> hit(m + 1, false);
    for (auto v : a) hit[v] = true;
    return std::find(hit.begin(), hit.end(), false) != hit.end();
  });
}

Obj horn(int m, int k, int trunc) {
  return simplex_subobject(m, trunc, [m, k](const Mono& a) {
    std::vector<bool> hit(m + 1, false);
    for (auto v : a) hit[v] = true;
    for (int j = 0; j <= m; ++j)
      if (j != k && !hit[j]) return true;
    return false;
  });
}

Obj nerve(const FinCategory& C, int trunc) {
  Presheaf p;
  p.trunc = trunc;
  p.labels.resize(trunc + 1);
  std::vector<std::vector<std::vector<int>>> chains(trunc + 1);
  std::vector<std::map<std::vector<int>, int>> idx(trunc + 1);
  const int nobj = static_cast<int>(C.objects.size());
  const int nmor = static_cast<int>(C.morphisms.size());
  for (int o = 0; o < nobj; ++o) {
    chains[0].push_back({o});
    idx[0][{o}] = o;
    p.labels[0].push_back(C.objects[o]);
  }
  for (int m = 1; m <= trunc; ++m) {
    for (const auto& prev : chains[m - 1]) {
      for (int f = 0; f < nmor; ++f) {
        if (m == 1) {
          if (C.source[f] != prev[0]) continue;
          chains[1].push_back({f});
        } else {
          if (C.target[prev.back()] != C.source[f]) continue;
          auto c = prev;
          c.push_back(f);
          chains[m].push_back(c);
        }
      }
    }
    for (std::size_t e = 0; e < chains[m].size(); ++e) {
      idx[m][chains[m][e]] = static_cast<int>(e);
      std::string l;
      for (std::size_t t = 0; t < chains[m][e].size(); ++t) l += (t ? "|" : "") + C.morphisms[chains[m][e][t]];
      p.labels[m].push_back(l);
    }
  }
  p.shape_tables();
  for (int m = 1; m <= trunc; ++m)
    for (std::size_t e = 0; e < chains[m].size(); ++e) {
      const auto& c = chains[m][e];
      for (int i = 0; i <= m; ++i) {
        if (m == 1) {
          p.faces[1][i][e] = i == 0 ? C.target[c[0]] : C.source[c[0]];
          continue;
        }
        std::vector<int> d;
        if (i == 0) d.assign(c.begin() + 1, c.end());
        else if (i == m) d.assign(c.begin(), c.end() - 1);
        else {
          d.assign(c.begin(), c.begin() + i - 1);
          d.push_back(C.composite[c[i - 1]][c[i]]);
          d.insert(d.end(), c.begin() + i + 1, c.end());
        }
        p.faces[m][i][e] = idx[m - 1].at(d);
      }
    }
  for (int m = 0; m < trunc; ++m)
    for (std::size_t e = 0; e < chains[m].size(); ++e) {
      const auto& c = chains[m][e];
      for (int i = 0; i <= m; ++i) {
        std::vector<int> d;
        if (m == 0) d = {C.identity[c[0]]};
        else {
          int obj = i < m ? C.source[c[i]] : C.target[c[m - 1]];
          d.assign(c.begin(), c.begin() + i);
          d.push_back(C.identity[obj]);
          d.insert(d.end(), c.begin() + i, c.end());
        }
        p.degens[m][i][e] = idx[m + 1].at(d);
      }
    }
  return make_obj(std::move(p));
}

Obj relabel(const Obj& X, std::vector<std::vector<Label>> labels) {
  Presheaf p = *X;
  p.labels = std::move(labels);
  return make_obj(std::move(p));
}

Map to_point(const Obj& X) {
  auto P = point(X->trunc);
  std::vector<std::vector<int>> f(X->trunc + 1);
  for (int m = 0; m <= X->trunc; ++m) f[m].assign(X->size(m), 0);
  return Map{X, P, std::move(f)};
}

Map from_empty(const Obj& X) {
  return Map{empty_obj(X->trunc), X, std::vector<std::vector<int>>(X->trunc + 1)};
}

Map map_from_labels(const Obj& src, const Obj& tgt, const std::vector<std::map<Label, Label>>& table) {
  if (static_cast<int>(table.size()) != src->trunc + 1)
    throw Error(ErrorKind::InvalidMap, "map table needs one entry per level");
  std::vector<std::vector<int>> f(src->trunc + 1);
  for (int m = 0; m <= src->trunc; ++m) {
    for (int e = 0; e < src->size(m); ++e) {
      auto it = table[m].find(src->label(m, e));
      if (it == table[m].end())
        throw Error(ErrorKind::InvalidMap, "map is not defined on '" + src->label(m, e) + "'",
                    {{"level", m}, {"element", src->label(m, e)}});
      int v = tgt->find(m, it->second);
      if (v < 0)
        throw Error(ErrorKind::InvalidMap, "map value '" + it->second + "' is not in the target",
                    {{"level", m}, {"element", it->second}});
      f[m].push_back(v);
    }
  }
  return make_map(src, tgt, std::move(f));
}

nlohmann::json to_json(const Presheaf& X) {
  if (X.trunc == 0) return X.labels[0];
  nlohmann::json faces = nlohmann::json::object(), degens = nlohmann::json::object();
  for (int m = 1; m <= X.trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (int e = 0; e < X.size(m); ++e)
        faces[std::to_string(m)]["d" + std::to_string(i)][X.label(m, e)] = X.label(m - 1, X.face(m, i, e));
  for (int m = 0; m < X.trunc; ++m)
    for (int i = 0; i <= m; ++i)
      for (int e = 0; e < X.size(m); ++e)
        degens[std::to_string(m)]["s" + std::to_string(i)][X.label(m, e)] = X.label(m + 1, X.degen(m, i, e));
  return {{"trunc", X.trunc}, {"levels", X.labels}, {"faces", faces}, {"degens", degens}};
}

nlohmann::json to_json(const Map& f) {
  auto level = [&](int m) {
    nlohmann::json j = nlohmann::json::object();
    for (int e = 0; e < f.src->size(m); ++e) j[f.src->label(m, e)] = f.tgt->label(m, f.f[m][e]);
    return j;
  };
  if (f.trunc() == 0) return level(0);
  nlohmann::json out = nlohmann::json::array();
  for (int m = 0; m <= f.trunc(); ++m) out.push_back(level(m));
  return out;
}

} // namespace invcat
