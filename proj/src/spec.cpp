#include "invcat/spec.hpp"

#include <functional>

namespace invcat {

namespace {

using json = nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void syntax(const std::string& msg, int line, int col, json extra = json::object()) {
  extra["line"] = line;
  extra["column"] = col;
  throw Error(ErrorKind::SyntaxError, msg + " at " + std::to_string(line) + ":" + std::to_string(col), extra);
}

[[noreturn]] void unresolved(const std::string& kind, const std::string& name) {
  throw Error(ErrorKind::UnresolvedName, "unresolved " + kind + " '" + name + "'", {{"kind", kind}, {"name", name}});
}

std::vector<std::map<Label, Label>> read_table(const json& j, int trunc) {
  std::vector<std::map<Label, Label>> out;
  if (j.is_object()) {
    out.push_back(j.get<std::map<Label, Label>>());
  } else {
    for (const auto& lvl : j) out.push_back(lvl.get<std::map<Label, Label>>());
  }
  if (static_cast<int>(out.size()) != trunc + 1)
    throw Error(ErrorKind::InvalidMap, "table needs one entry per level",
                {{"levels", out.size()}, {"expected", trunc + 1}});
  return out;
}

json write_table(const Map& f) { return to_json(f); }

std::pair<Label, Label> split2(const std::string& key) {
  auto p = key.find('>');
  if (p == std::string::npos) throw Error(ErrorKind::UnknownLabel, "expected a key 'x>y'", {{"key", key}});
  return {key.substr(0, p), key.substr(p + 1)};
}

std::tuple<Label, Label, Label> split3(const std::string& key) {
  auto [x, rest] = split2(key);
  auto [y, z] = split2(rest);
  return {x, y, z};
}

struct Reader {
  WorkbenchSpec& S;
  const json& root;

  int trunc() const { return S.base.trunc; }

  Obj object(const json& j) {
    if (j.is_string()) {
      auto name = j.get<std::string>();
      if (auto it = S.objects.find(name); it != S.objects.end()) return it->second;
      if (root.contains("objects") && root["objects"].contains(name)) {
        Obj o = object(root["objects"][name]);
        S.objects[name] = o;
        return o;
      }
      unresolved("object", name);
    }
    Obj o;
    if (j.is_number_integer()) {
      o = trunc() == 0 ? fin_set(j.get<int>()) : discrete([&] {
        std::vector<Label> ls;
        for (int i = 0; i < j.get<int>(); ++i) ls.push_back(std::to_string(i));
        return ls;
      }(), trunc());
    } else if (j.is_array()) {
      o = discrete(j.get<std::vector<Label>>(), trunc());
    } else if (j.contains("builtin")) {
      auto b = j["builtin"].get<std::string>();
      if (b == "point")
        o = point(trunc());
      else if (b == "representable")
        o = representable(j.at("m").get<int>(), trunc());
      else if (b == "boundary")
        o = boundary(j.at("m").get<int>(), trunc());
      else if (b == "horn")
        o = horn(j.at("m").get<int>(), j.at("k").get<int>(), trunc());
      else if (b == "classifying")
        o = classifying_space(group(j.at("group")), trunc());
      else
        unresolved("builtin object", b);
    } else {
      o = presheaf(j);
    }
    S.base.check_member(o);
    return o;
  }

  Obj presheaf(const json& j) {
    Presheaf p;
    p.trunc = j.at("trunc").get<int>();
    p.labels = j.at("levels").get<std::vector<std::vector<Label>>>();
    if (static_cast<int>(p.labels.size()) != p.trunc + 1)
      throw Error(ErrorKind::SimplicialIdentity, "level count differs from trunc + 1");
    p.build_index();
    p.shape_tables();
    auto find = [&](int m, const Label& l) {
      int v = p.find(m, l);
      if (v < 0) throw Error(ErrorKind::UnknownLabel, "unknown simplex '" + l + "'", {{"level", m}, {"label", l}});
      return v;
    };
    for (int m = 1; m <= p.trunc; ++m)
      for (int i = 0; i <= m; ++i) {
        const json& t = j.at("faces").at(std::to_string(m)).at("d" + std::to_string(i));
        for (int e = 0; e < p.size(m); ++e) p.faces[m][i][e] = find(m - 1, t.at(p.label(m, e)).get<Label>());
      }
    for (int m = 0; m < p.trunc; ++m)
      for (int i = 0; i <= m; ++i) {
        const json& t = j.at("degens").at(std::to_string(m)).at("s" + std::to_string(i));
        for (int e = 0; e < p.size(m); ++e) p.degens[m][i][e] = find(m + 1, t.at(p.label(m, e)).get<Label>());
      }
    return make_obj(std::move(p));
  }

  FiniteGroup group(const json& j) {
    if (j.is_string()) {
      auto name = j.get<std::string>();
      if (auto it = S.groups.find(name); it != S.groups.end()) return it->second;
      if (root.contains("groups") && root["groups"].contains(name)) {
        auto G = FiniteGroup::from_json(root["groups"][name]);
        S.groups.emplace(name, G);
        return G;
      }
      unresolved("group", name);
    }
    return FiniteGroup::from_json(j);
  }

  Map map(const json& j, const Obj& src = nullptr, const Obj& tgt = nullptr) {
    if (j.is_string()) {
      auto name = j.get<std::string>();
      Map m;
      if (auto it = S.maps.find(name); it != S.maps.end()) {
        m = it->second;
      } else if (root.contains("maps") && root["maps"].contains(name)) {
        m = map(root["maps"][name]);
        S.maps[name] = m;
      } else {
        unresolved("map", name);
      }
      if ((src && !same_obj(m.src, src)) || (tgt && !same_obj(m.tgt, tgt)))
        throw Error(ErrorKind::NonCommutingDiagram, "map '" + name + "' has the wrong endpoints", {{"map", name}});
      Map out = m;
      if (src) out.src = src;
      if (tgt) out.tgt = tgt;
      return out;
    }
    Obj s = j.contains("src") ? object(j["src"]) : src;
    Obj t = j.contains("tgt") ? object(j["tgt"]) : tgt;
    if (!s || !t) throw Error(ErrorKind::InvalidMap, "map needs a source and a target");
    if (j.value("terminal", false)) {
      if (t->total() != static_cast<std::size_t>(trunc() + 1))
        throw Error(ErrorKind::InvalidMap, "terminal map into a non-terminal object");
      Map m = to_point(s);
      m.tgt = t;
      return m;
    }
    if (j.value("identity", false)) {
      if (!same_obj(s, t)) throw Error(ErrorKind::InvalidMap, "identity between different objects");
      Map m = identity(s);
      m.tgt = t;
      return m;
    }
    return map_from_labels(s, t, read_table(j.at("values"), trunc()));
  }

  InvCatPtr invcat(const json& j) {
    if (j.contains("builtin")) {
      auto b = j["builtin"].get<std::string>();
      if (b != "cp") unresolved("builtin inverse category", b);
      if (S.base.kind != BaseKind::SSet)
        throw Error(ErrorKind::InstanceMismatch, "the cyclic-group presentation needs simplicial sets");
      return cp_presentation(j.at("p").get<int>(), trunc());
    }
    if (j.contains("ordinary")) {
      const json& o = j["ordinary"];
      OrdinaryInverseCat C;
      C.objects = WfPoset::from_json(o);
      if (o.contains("homs"))
        for (const auto& [k, v] : o["homs"].items()) {
          auto [x, y] = split2(k);
          C.homs[{x, y}] = v.get<std::vector<Label>>();
        }
      if (o.contains("comp"))
        for (const auto& [k, v] : o["comp"].items()) {
          auto key = split3(k);
          for (const auto& [fg, h] : v.items()) {
            auto bar = fg.find('|');
            if (bar == std::string::npos)
              throw Error(ErrorKind::UnknownLabel, "expected a key 'f|g'", {{"key", fg}});
            C.comp[key][{fg.substr(0, bar), fg.substr(bar + 1)}] = h.get<Label>();
          }
        }
      auto I = embed_ordinary(C, S.base);
      if (j.contains("annotations")) {
        InvCat copy = *I;
        copy.annotations = j["annotations"];
        return std::make_shared<const InvCat>(std::move(copy));
      }
      return I;
    }
    InvCat I;
    I.base = S.base;
    I.objects = WfPoset::from_json(j);
    for (const auto& x : I.objects.elements()) {
      if (!j.contains("spaces") || !j["spaces"].contains(x))
        throw Error(ErrorKind::UnknownLabel, "object '" + x + "' has no space", {{"label", x}});
      I.spaces[x] = object(j["spaces"][x]);
    }
    if (j.contains("homs"))
      for (const auto& [k, v] : j["homs"].items()) {
        auto [x, y] = split2(k);
        if (!I.spaces.count(x) || !I.spaces.count(y)) unresolved("object", I.spaces.count(x) ? y : x);
        Obj h = object(v.at("obj"));
        I.homs[{x, y}] = Span{h, map(v.at("left"), h, I.spaces[x]), map(v.at("right"), h, I.spaces[y])};
      }
    if (j.contains("comps"))
      for (const auto& [k, v] : j["comps"].items()) {
        auto [x, y, z] = split3(k);
        for (const auto& key : {HomKey{x, y}, HomKey{y, z}, HomKey{x, z}})
          if (!I.homs.count(key)) unresolved("hom", key.first + ">" + key.second);
        const Span &xy = I.homs[{x, y}], &yz = I.homs[{y, z}], &xz = I.homs[{x, z}];
        Pullback dom = pullback(xy.right, yz.left);
        auto table = read_table(v, trunc());
        for (int m = 0; m <= trunc(); ++m)
          for (int e = 0; e < dom.object->size(m); ++e) {
            const Label& pair = dom.object->label(m, e);
            auto it = table[m].find(pair);
            if (it == table[m].end() || xz.obj->find(m, it->second) < 0)
              throw Error(ErrorKind::MissingComposite, "composite of " + pair + " in " + k + " is not in " + x + ">" + z,
                          {{"composite", k},
                           {"level", m},
                           {"pair", pair},
                           {"missing", it == table[m].end() ? json(pair) : json(it->second)},
                           {"target", x + ">" + z}});
          }
        I.comps[{x, y, z}] = make_composition(xy, yz, xz, table);
      }
    if (j.contains("annotations")) I.annotations = j["annotations"];
    return validate(std::move(I));
  }

  DiagramPtr diagram(const std::string& name, const json& j) {
    auto iname = j.at("invcat").get<std::string>();
    auto it = S.invcats.find(iname);
    if (it == S.invcats.end()) unresolved("inverse category", iname);
    const InvCatPtr& I = it->second;
    Diagram D{I, object(j.at("gamma")), {}, {}};
    if (j.contains("components"))
      for (const auto& [x, c] : j["components"].items()) {
        if (!I->objects.contains(x)) unresolved("object", x);
        Obj A = object(c.at("obj"));
        D.comps[x] = Component{A, map(c.at("to_gamma"), A, D.gamma), map(c.at("to_space"), A, I->space(x))};
      }
    if (j.contains("actions"))
      for (const auto& [k, v] : j["actions"].items()) {
        auto [x, y] = split2(k);
        if (!D.comps.count(x) || !D.comps.count(y)) unresolved("component", D.comps.count(x) ? y : x);
        D.actions[{x, y}] = make_action(D.comps[x], I->hom(x, y), D.comps[y], read_table(v, trunc()));
      }
    S.diagram_invcat[name] = iname;
    return validate_diagram(std::move(D));
  }
};

template <class F>
void declared(const json& root, const char* section, F&& f) {
  if (!root.contains(section)) return;
  if (!root[section].is_object())
    throw Error(ErrorKind::SyntaxError, std::string("section '") + section + "' must be an object",
                {{"section", section}});
  for (const auto& [name, v] : root[section].items()) {
    try {
      f(name, v);
    } catch (Error& e) {
      json d = e.detail().is_object() ? e.detail() : json{{"cause", e.detail()}};
      if (!d.contains("declaration")) d["declaration"] = std::string(section) + "." + name;
      throw Error(e.kind(), e.what(), d);
    }
  }
}

} // namespace

WorkbenchSpec parse_spec(const std::string& text, std::optional<BaseCat> base_override) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) syntax("empty specification", 1, 1);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [l, c] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    syntax("malformed JSON", l, c, {{"reason", e.what()}});
  }
  if (!root.is_object()) syntax("a specification is a JSON object", 1, 1);

  WorkbenchSpec S;
  try {
    if (root.contains("base")) {
      const json& b = root["base"];
      std::string kind = b.is_string() ? b.get<std::string>() : b.at("kind").get<std::string>();
      if (kind == "finset")
        S.base = BaseCat::finset();
      else if (kind == "ssets")
        S.base = BaseCat::ssets(b.is_object() ? b.value("trunc", 3) : 3);
      else
        unresolved("base", kind);
    }
    if (base_override) S.base = *base_override;
    Reader R{S, root};
    declared(root, "posets", [&](const std::string& n, const json& v) { S.posets.emplace(n, WfPoset::from_json(v)); });
    declared(root, "groups", [&](const std::string& n, const json& v) { S.groups.emplace(n, FiniteGroup::from_json(v)); });
    declared(root, "objects", [&](const std::string& n, const json& v) {
      if (!S.objects.count(n)) S.objects[n] = R.object(v);
    });
    declared(root, "maps", [&](const std::string& n, const json& v) {
      if (!S.maps.count(n)) S.maps[n] = R.map(v);
    });
    declared(root, "invcats", [&](const std::string& n, const json& v) { S.invcats[n] = R.invcat(v); });
    declared(root, "diagrams", [&](const std::string& n, const json& v) { S.diagrams[n] = R.diagram(n, v); });
  } catch (const json::exception& e) {
    syntax("malformed specification", 1, 1, {{"reason", e.what()}});
  }
  return S;
}

json to_json(const InvCat& I) {
  json j = I.objects.to_json();
  j["spaces"] = json::object();
  for (const auto& [x, o] : I.spaces) j["spaces"][x] = to_json(*o);
  j["homs"] = json::object();
  for (const auto& [k, s] : I.homs)
    j["homs"][k.first + ">" + k.second] = {{"obj", to_json(*s.obj)}, {"left", {{"values", write_table(s.left)}}},
                                          {"right", {{"values", write_table(s.right)}}}};
  j["comps"] = json::object();
  for (const auto& [k, c] : I.comps)
    j["comps"][std::get<0>(k) + ">" + std::get<1>(k) + ">" + std::get<2>(k)] = write_table(c.map);
  if (!I.annotations.empty()) j["annotations"] = I.annotations;
  return j;
}

json to_json(const Diagram& D, const std::string& invcat_name) {
  json j = {{"invcat", invcat_name}, {"gamma", to_json(*D.gamma)}};
  j["components"] = json::object();
  for (const auto& [x, c] : D.comps)
    j["components"][x] = {{"obj", to_json(*c.obj)},
                          {"to_gamma", {{"values", write_table(c.to_gamma)}}},
                          {"to_space", {{"values", write_table(c.to_space)}}}};
  j["actions"] = json::object();
  for (const auto& [k, a] : D.actions) j["actions"][k.first + ">" + k.second] = write_table(a.map);
  return j;
}

json to_json(const WorkbenchSpec& S) {
  json j;
  j["base"] = S.base.kind == BaseKind::FinSet ? json("finset") : json{{"kind", "ssets"}, {"trunc", S.base.trunc}};
  j["posets"] = json::object();
  for (const auto& [n, p] : S.posets) j["posets"][n] = p.to_json();
  j["groups"] = json::object();
  for (const auto& [n, g] : S.groups) j["groups"][n] = g.to_json();
  j["objects"] = json::object();
  for (const auto& [n, o] : S.objects) j["objects"][n] = to_json(*o);
  j["maps"] = json::object();
  for (const auto& [n, m] : S.maps) j["maps"][n] = {{"src", to_json(*m.src)}, {"tgt", to_json(*m.tgt)}, {"values", write_table(m)}};
  j["invcats"] = json::object();
  for (const auto& [n, I] : S.invcats) j["invcats"][n] = to_json(*I);
  j["diagrams"] = json::object();
  for (const auto& [n, D] : S.diagrams) j["diagrams"][n] = to_json(*D, S.diagram_invcat.at(n));
  return j;
}

} // namespace invcat
