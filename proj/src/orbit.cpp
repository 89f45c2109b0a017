#include "invcat/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace invcat {

namespace {

[[noreturn]] void not_a_group(const std::string& msg, nlohmann::json detail = {}) {
  throw Error(ErrorKind::NotAGroup, msg, std::move(detail));
}

Subgroup closure(const FiniteGroup& G, std::vector<int> gens) {
  std::set<int> seen{G.identity()};
  std::vector<int> frontier{G.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int g : gens) {
        int b = G.mul(a, g);
        if (seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

Subgroup conjugate(const FiniteGroup& G, const Subgroup& H, int g) {
  Subgroup out;
  for (int h : H) out.push_back(G.mul(G.inv(g), G.mul(h, g)));
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const Subgroup& K, int a) { return std::binary_search(K.begin(), K.end(), a); }

bool subset(const Subgroup& H, const Subgroup& K) {
  return std::all_of(H.begin(), H.end(), [&](int h) { return contains(K, h); });
}

int coset_rep(const FiniteGroup& G, int g, const Subgroup& K) {
  int best = G.mul(g, K.front());
  for (int k : K) best = std::min(best, G.mul(g, k));
  return best;
}

} // namespace

FiniteGroup FiniteGroup::make(std::vector<Label> elements, std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(elements.size());
  if (n == 0) not_a_group("a group has at least one element");
  if (std::set<Label>(elements.begin(), elements.end()).size() != elements.size())
    not_a_group("duplicate element label");
  if (static_cast<int>(table.size()) != n) not_a_group("table has the wrong number of rows");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) not_a_group("table has a row of the wrong length");
    for (int v : row)
      if (v < 0 || v >= n) not_a_group("table entry outside the group", {{"entry", v}});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          not_a_group("multiplication is not associative",
                      {{"law", "associativity"}, {"elements", {elements[a], elements[b], elements[c]}}});
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) not_a_group("no identity element", {{"law", "identity"}});
  FiniteGroup G;
  G.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) G.inverse_[a] = b;
    if (G.inverse_[a] < 0) not_a_group("element without inverse", {{"law", "inverse"}, {"element", elements[a]}});
  }
  G.elements_ = std::move(elements);
  G.table_ = std::move(table);
  G.identity_ = e;
  return G;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) not_a_group("cyclic group of order < 1", {{"n", n}});
  std::vector<Label> els;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    els.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return make(els, t);
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4) not_a_group("symmetric groups are supported for 1 <= n <= 4", {{"n", n}});
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> idx;
  std::vector<Label> els;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    idx[perms[i]] = static_cast<int>(i);
    std::string l;
    for (int v : perms[i]) l += std::to_string(v);
    els.push_back(l);
  }
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = idx.at(c);
    }
  return make(els, t);
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1 || n > 6) not_a_group("dihedral groups are supported for 1 <= n <= 6", {{"n", n}});
  // r^k at index k, r^k s at index n + k
  std::vector<Label> els;
  for (int k = 0; k < n; ++k) els.push_back("r" + std::to_string(k));
  for (int k = 0; k < n; ++k) els.push_back("s" + std::to_string(k));
  std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      int ka = a % n, kb = b % n;
      bool sa = a >= n, sb = b >= n;
      int k = sa ? ((ka - kb) % n + n) % n : (ka + kb) % n;
      t[a][b] = (sa != sb ? n : 0) + k;
    }
  return make(els, t);
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j) {
  if (j.contains("builtin")) {
    std::string b = j.at("builtin").get<std::string>();
    int n = j.at("n").get<int>();
    if (b == "cyclic") return cyclic(n);
    if (b == "symmetric") return symmetric(n);
    if (b == "dihedral") return dihedral(n);
    not_a_group("unknown builtin group", {{"builtin", b}});
  }
  auto els = j.at("elements").get<std::vector<Label>>();
  std::map<Label, int> idx;
  for (std::size_t i = 0; i < els.size(); ++i) idx[els[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t;
  for (const auto& row : j.at("table")) {
    std::vector<int> r;
    for (const auto& v : row) {
      auto it = idx.find(v.get<std::string>());
      if (it == idx.end()) not_a_group("table entry outside the group", {{"entry", v}});
      r.push_back(it->second);
    }
    t.push_back(r);
  }
  return make(els, t);
}

nlohmann::json FiniteGroup::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& row : table_) {
    nlohmann::json r = nlohmann::json::array();
    for (int v : row) r.push_back(elements_[v]);
    t.push_back(r);
  }
  return {{"elements", elements_}, {"table", t}};
}

SubgroupLattice subgroups(const FiniteGroup& G, int bound) {
  if (G.size() > bound)
    throw Error(ErrorKind::BoundExceeded, "group order exceeds the bound", {{"order", G.size()}, {"bound", bound}});
  std::set<Subgroup> found{closure(G, {})};
  std::vector<Subgroup> frontier{*found.begin()};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& H : frontier)
      for (int g = 0; g < G.size(); ++g) {
        if (contains(H, g)) continue;
        auto gens = H;
        gens.push_back(g);
        Subgroup K = closure(G, gens);
        if (found.insert(K).second) next.push_back(K);
      }
    frontier = std::move(next);
  }
  SubgroupLattice L;
  L.subgroups.assign(found.begin(), found.end());
  std::stable_sort(L.subgroups.begin(), L.subgroups.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.size() < b.size(); });
  std::map<Subgroup, int> idx;
  for (std::size_t i = 0; i < L.subgroups.size(); ++i) idx[L.subgroups[i]] = static_cast<int>(i);
  L.class_of.assign(L.subgroups.size(), -1);
  for (std::size_t i = 0; i < L.subgroups.size(); ++i) {
    if (L.class_of[i] >= 0) continue;
    int c = static_cast<int>(L.classes.size());
    std::set<int> members;
    for (int g = 0; g < G.size(); ++g) members.insert(idx.at(conjugate(G, L.subgroups[i], g)));
    for (int m : members) L.class_of[m] = c;
    L.classes.emplace_back(members.begin(), members.end());
  }
  return L;
}

bool is_subconjugate(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
  for (int g = 0; g < G.size(); ++g)
    if (subset(conjugate(G, H, g), K)) return true;
  return false;
}

int OrbitCat::hom_size(const Label& src, const Label& tgt) const {
  auto s = std::find(objects.begin(), objects.end(), src);
  auto t = std::find(objects.begin(), objects.end(), tgt);
  if (s == objects.end() || t == objects.end())
    throw Error(ErrorKind::UnknownLabel, "unknown orbit", {{"src", src}, {"tgt", tgt}});
  auto it = homs.find({static_cast<int>(s - objects.begin()), static_cast<int>(t - objects.begin())});
  return it == homs.end() ? 0 : static_cast<int>(it->second.size());
}

nlohmann::json OrbitCat::to_json() const {
  nlohmann::json h = nlohmann::json::array();
  for (std::size_t s = 0; s < objects.size(); ++s)
    for (std::size_t t = 0; t < objects.size(); ++t) {
      nlohmann::json mors = nlohmann::json::array();
      auto it = homs.find({static_cast<int>(s), static_cast<int>(t)});
      if (it != homs.end())
        for (int f : it->second) mors.push_back(category.morphisms[f]);
      h.push_back({{"src", objects[s]}, {"tgt", objects[t]}, {"size", mors.size()}, {"morphisms", mors}});
    }
  nlohmann::json sub = nlohmann::json::object();
  for (std::size_t i = 0; i < objects.size(); ++i) {
    nlohmann::json m = nlohmann::json::array();
    for (int a : reps[i]) m.push_back(group.label(a));
    sub[objects[i]] = m;
  }
  return {{"objects", objects}, {"subgroups", sub}, {"homs", h}, {"precedence", precedence.to_json()}};
}

OrbitCat orbit_category(const FiniteGroup& G, int bound) {
  SubgroupLattice L = subgroups(G, bound);
  OrbitCat O;
  O.group = G;
  for (std::size_t c = 0; c < L.classes.size(); ++c) {
    const Subgroup& H = L.subgroups[L.classes[c].front()];
    O.reps.push_back(H);
    if (H.size() == 1)
      O.objects.push_back("G/e");
    else if (static_cast<int>(H.size()) == G.size())
      O.objects.push_back("G/G");
    else
      O.objects.push_back("G/H" + std::to_string(c));
  }
  const int n = static_cast<int>(O.objects.size());
  FinCategory& C = O.category;
  C.objects = O.objects;
  std::map<std::tuple<int, int, int>, int> mor; // (src, tgt, coset rep)
  std::vector<int> rep_of;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      std::set<int> reps;
      for (int g = 0; g < G.size(); ++g)
        if (subset(conjugate(G, O.reps[s], g), O.reps[t])) reps.insert(coset_rep(G, g, O.reps[t]));
      for (int g : reps) {
        int f = static_cast<int>(C.morphisms.size());
        mor[{s, t, g}] = f;
        O.homs[{s, t}].push_back(f);
        C.morphisms.push_back(O.objects[s] + ">" + O.objects[t] + ":" + G.label(g));
        C.source.push_back(s);
        C.target.push_back(t);
        rep_of.push_back(g);
      }
    }
  for (int s = 0; s < n; ++s) C.identity.push_back(mor.at({s, s, coset_rep(G, G.identity(), O.reps[s])}));
  const int m = static_cast<int>(C.morphisms.size());
  C.composite.assign(m, std::vector<int>(m, -1));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (C.target[f] != C.source[g]) continue;
      int l = C.target[g];
      int r = coset_rep(G, G.mul(rep_of[f], rep_of[g]), O.reps[l]);
      auto it = mor.find({C.source[f], l, r});
      if (it == mor.end())
        throw Error(ErrorKind::CompositionMismatch, "coset composite is not a map",
                    {{"first", C.morphisms[f]}, {"second", C.morphisms[g]}});
      C.composite[f][g] = it->second;
    }
  InternalCat K = internal_from_category(C);
  check_category_axioms(K);
  EIReport ei = ei_inverse_diagnostic(K);
  if (!ei.is_ei)
    throw Error(ErrorKind::CompositionMismatch, "orbit category has a non-invertible endomorphism", ei.to_json());

  std::vector<LabelPair> lt;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t && O.reps[s].size() < O.reps[t].size() && is_subconjugate(G, O.reps[s], O.reps[t]))
        lt.emplace_back(O.objects[s], O.objects[t]);
  O.precedence = check_well_founded(O.objects, lt);
  return O;
}

InternalCat orbit_internal(const OrbitCat& O, bool opposite) {
  if (!opposite) return internal_from_category(O.category);
  FinCategory C = O.category;
  std::swap(C.source, C.target);
  const auto& orig = O.category.composite;
  for (std::size_t f = 0; f < orig.size(); ++f)
    for (std::size_t g = 0; g < orig.size(); ++g) C.composite[f][g] = orig[g][f];
  return internal_from_category(C);
}

Obj classifying_space(const FiniteGroup& G, int trunc) {
  FinCategory C;
  C.objects = {"*"};
  C.morphisms = G.elements();
  C.source.assign(G.size(), 0);
  C.target.assign(G.size(), 0);
  C.identity = {G.identity()};
  C.composite.assign(G.size(), std::vector<int>(G.size()));
  for (int f = 0; f < G.size(); ++f)
    for (int g = 0; g < G.size(); ++g) C.composite[f][g] = G.mul(g, f);
  return nerve(C, trunc);
}

InvCatPtr cp_presentation(int p, int trunc) {
  bool prime = p >= 2;
  for (int d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
  if (!prime) throw Error(ErrorKind::NotPrime, "p must be prime", {{"p", p}});
  Obj BG = classifying_space(FiniteGroup::cyclic(p), trunc);
  InvCat I;
  I.base = BaseCat::ssets(trunc);
  I.objects = WfPoset::make({"G/e", "G/G"}, {{"G/e", "G/G"}});
  I.spaces["G/e"] = BG;
  I.spaces["G/G"] = point(trunc);
  Map left = to_point(BG);
  left.tgt = I.spaces["G/G"];
  I.homs[{"G/G", "G/e"}] = Span{BG, left, identity(BG)};
  I.annotations = {{"group", "C" + std::to_string(p)},
                   {"spaces", {{"G/e", "BG"}, {"G/G", "1"}}},
                   {"homs", {{"G/G>G/e", "1"}}}};
  return validate(std::move(I));
}

} // namespace invcat
