#include <functional>
#include <map>
#include <set>

#include "invcat/tt.hpp"

namespace invcat::tt {

std::string subscript(const std::string& stem, const std::string& x) {
  return x.size() == 1 ? stem + "_" + x : stem + "_{" + x + "}";
}

namespace {

struct Emitter {
  const InvCat& I;
  std::vector<Label> order;

  std::vector<Label> below(const Label& x) const {
    std::vector<Label> out;
    for (const auto& y : order)
      if (I.objects.lt(y, x)) out.push_back(y);
    return out;
  }

  const nlohmann::json* annotation(const char* group, const std::string& key) const {
    if (!I.annotations.is_object() || !I.annotations.contains(group)) return nullptr;
    const auto& g = I.annotations.at(group);
    return g.contains(key) ? &g.at(key) : nullptr;
  }

  ExprP space(const Label& x) const {
    if (auto a = annotation("spaces", x)) return parse_expr(a->get<std::string>());
    return var("I[" + x + "]");
  }

  ExprP hom(const Label& t, const Label& s, std::vector<ExprP> args) const {
    if (auto a = annotation("homs", t + ">" + s)) {
      ExprP head = parse_expr(a->get<std::string>());
      if (head->kind == Kind::Unit || head->kind == Kind::Bool) return head;
      return app(head, std::move(args));
    }
    return app("I[" + t + "," + s + "]", std::move(args));
  }

  // The family being described: A (over Gamma) or I(t, -) (over u_t).
  struct Target {
    std::optional<Label> t;
    ExprP u_t;
  };

  ExprP family(const Target& T, const Label& z, ExprP u_z, const std::vector<ExprP>& extra) const {
    std::vector<ExprP> args;
    if (T.t) args.push_back(T.u_t);
    args.push_back(std::move(u_z));
    args.insert(args.end(), extra.begin(), extra.end());
    if (T.t) return hom(*T.t, z, std::move(args));
    return app(subscript("A", z), std::move(args));
  }

  static std::string wstem(int depth) { return depth == 1 ? "w" : "w" + std::to_string(depth); }

  // The type of the z-component of a matching family for T at stage s.
  ExprP matching_component(const Target& T, const Label& s, const ExprP& u_s, const Label& z,
                           const std::map<Label, ExprP>& outer, int depth) const {
    ExprP u_z = var(subscript("u", z));
    std::vector<std::pair<std::string, ExprP>> binders;
    std::map<Label, ExprP> ws;
    std::vector<ExprP> hom_args{u_s, u_z};
    std::vector<ExprP> composites;
    for (const auto& z2 : below(z)) {
      std::string wn = subscript(wstem(depth), z2);
      binders.emplace_back(wn, matching_component(Target{s, u_s}, z, u_z, z2, ws, depth + 1));
      ws[z2] = var(wn);
      hom_args.push_back(ws[z2]);
      composites.push_back(compose(outer.at(z2), ws[z2]));
    }
    ExprP body = arrow(hom(s, z, hom_args), family(T, z, u_z, composites));
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = pi(it->first, it->second, body);
    return pi(subscript("u", z), space(z), body);
  }

  // Context entries (u_s : I(s)), (v_z : ...) and the v variables.
  std::vector<ExprP> stage(const Target& T, const Label& s, std::vector<Entry>& ctx) const {
    ExprP u_s = var(subscript("u", s));
    ctx.push_back({subscript("u", s), space(s)});
    std::map<Label, ExprP> vs;
    std::vector<ExprP> out;
    for (const auto& z : below(s)) {
      std::string vn = subscript("v", z);
      ctx.push_back({vn, matching_component(T, s, u_s, z, vs, 1)});
      vs[z] = var(vn);
      out.push_back(vs[z]);
    }
    return out;
  }

  Judgment diagram_judgment(const Label& s) const {
    Judgment j;
    j.context.push_back({"Gamma", nullptr});
    auto vs = stage(Target{}, s, j.context);
    j.subject = family(Target{}, s, var(subscript("u", s)), vs);
    return j;
  }

  Judgment hom_judgment(const Label& t, const Label& s) const {
    Judgment j;
    ExprP u_t = var(subscript("u", t));
    j.context.push_back({subscript("u", t), space(t)});
    Target T{t, u_t};
    auto vs = stage(T, s, j.context);
    j.subject = family(T, s, var(subscript("u", s)), vs);
    return j;
  }

  static ExprP sigma_fold(const std::vector<std::pair<std::string, ExprP>>& comps) {
    if (comps.empty()) return unit();
    ExprP body = comps.back().second;
    for (int i = static_cast<int>(comps.size()) - 2; i >= 0; --i) body = sigma(comps[i].first, comps[i].second, body);
    return body;
  }

  Judgment matching_judgment(const Label& s) const {
    Judgment j;
    j.context.push_back({"Gamma", nullptr});
    ExprP u_s = var(subscript("u", s));
    j.context.push_back({subscript("u", s), space(s)});
    std::map<Label, ExprP> vs;
    std::vector<std::pair<std::string, ExprP>> comps;
    for (const auto& z : below(s)) {
      std::string vn = subscript("v", z);
      comps.emplace_back(vn, matching_component(Target{}, s, u_s, z, vs, 1));
      vs[z] = var(vn);
    }
    j.subject = sigma_fold(comps);
    return j;
  }

  ExprP hom_type() const {
    std::vector<std::pair<std::string, ExprP>> comps;
    std::map<Label, ExprP> fs;
    for (const auto& s : order) {
      ExprP u_s = var(subscript("u", s));
      std::vector<std::pair<std::string, ExprP>> binders;
      std::map<Label, ExprP> vs;
      std::vector<ExprP> a_args{u_s}, b_args{u_s};
      for (const auto& z : below(s)) {
        std::string vn = subscript("v", z);
        binders.emplace_back(vn, matching_component(Target{}, s, u_s, z, vs, 1));
        vs[z] = var(vn);
        a_args.push_back(vs[z]);
        b_args.push_back(compose(fs.at(z), vs[z]));
      }
      ExprP body = arrow(app(subscript("A", s), a_args), app(subscript("B", s), b_args));
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = pi(it->first, it->second, body);
      std::string fn = subscript("f", s);
      comps.emplace_back(fn, pi(subscript("u", s), space(s), body));
      fs[s] = var(fn);
    }
    return sigma_fold(comps);
  }
};

Emitter make_emitter(const InvCat& I, const std::optional<std::vector<Label>>& order) {
  if (order && !I.objects.is_topological(*order))
    throw Error(ErrorKind::UnorderedObjects, "emission order is not a topological order of the objects",
                {{"order", *order}});
  return Emitter{I, order ? *order : I.objects.topo_order()};
}

} // namespace

Signature emit_signature(const InvCat& I, Mode mode, const std::optional<std::vector<Label>>& order) {
  Emitter E = make_emitter(I, order);
  Signature sig;
  switch (mode) {
  case Mode::InvCat:
    for (const auto& x : E.order) sig.judgments.push_back({{}, E.space(x)});
    for (const auto& s : E.order)
      for (const auto& t : E.order)
        if (I.objects.lt(s, t)) sig.judgments.push_back(E.hom_judgment(t, s));
    break;
  case Mode::Diagram:
    for (const auto& x : E.order) sig.judgments.push_back(E.diagram_judgment(x));
    break;
  case Mode::Matching:
    for (const auto& x : E.order) sig.judgments.push_back(E.matching_judgment(x));
    break;
  }
  return sig;
}

Signature emit_hom_type(const InvCat& I, const std::optional<std::vector<Label>>& order) {
  Emitter E = make_emitter(I, order);
  Signature sig;
  sig.judgments.push_back({{{"Gamma", nullptr}, {"Delta", nullptr}}, E.hom_type()});
  return sig;
}

Signature emit_path_context(PathMode mode) {
  Signature sig;
  if (mode == PathMode::Base) {
    Judgment j;
    j.context = {{"b_0", var("B_0")}, {"a_0", app("A_0", {var("b_0")})}, {"a_0'", app("A_0", {var("b_0")})}};
    j.subject = id(var("a_0"), var("a_0'"));
    sig.judgments.push_back(j);
    return sig;
  }
  sig.comments = {"G is an opaque functor symbol; g is an opaque lift with no syntactic definition",
                  "transport(p, a) transports a along p"};
  ExprP GA0 = app("G", {var("A_0")});
  Judgment j;
  j.context = {{"b_0", app("G", {var("B_0")})},
               {"b_1", app("B_1", {var("b_0")})},
               {"a_0", app(GA0, {var("b_0")})},
               {"a_0'", app(GA0, {var("b_0")})},
               {"p_0", app("G", {id(var("a_0"), var("a_0'"))})},
               {"a_1", app("A_1", {var("b_0"), var("b_1"), var("a_0")})},
               {"a_1'", app("A_1", {var("b_0"), var("b_1"), var("a_0'")})}};
  j.subject = sigma("p_0'", id(var("a_0"), var("a_0'")),
                    prod(id(app("g", {var("p_0'")}), var("p_0")),
                         id(app("transport", {var("p_0'"), var("a_1")}), var("a_1'"))));
  sig.judgments.push_back(j);
  return sig;
}

// -- simplification ----------------------------------------------------------------

namespace {

std::string add_index(const std::string& name, const std::string& idx) {
  auto brace = name.find("_{");
  if (brace != std::string::npos && name.back() == '}') return name.substr(0, name.size() - 1) + "," + idx + "}";
  auto us = name.find('_');
  if (us != std::string::npos) return name.substr(0, us) + "_{" + name.substr(us + 1) + "," + idx + "}";
  return name + "_{" + idx + "}";
}

bool is_bool_literal(const ExprP& e) { return e->kind == Kind::Var && (e->name == "true" || e->name == "false"); }

// Replace x by `by` (or, with by == nullptr, drop it from argument lists and
// read other occurrences as the unit), and splice split variables.
struct Subst {
  std::map<std::string, ExprP> value;
  std::set<std::string> dropped;
  std::map<std::string, std::vector<ExprP>> split;

  ExprP operator()(const ExprP& e) const {
    switch (e->kind) {
    case Kind::Var:
      if (dropped.count(e->name)) return unit();
      if (auto it = value.find(e->name); it != value.end()) return it->second;
      return e;
    case Kind::App: {
      std::vector<ExprP> args;
      for (std::size_t i = 1; i < e->args.size(); ++i) {
        const ExprP& a = e->args[i];
        if (a->kind == Kind::Var && dropped.count(a->name)) continue;
        if (a->kind == Kind::Var && split.count(a->name)) {
          for (const auto& c : split.at(a->name)) args.push_back(c);
          continue;
        }
        args.push_back((*this)(a));
      }
      return app((*this)(e->args[0]), args);
    }
    case Kind::Pi:
    case Kind::Sigma: {
      ExprP dom = (*this)(e->args[0]);
      Subst inner = *this;
      inner.value.erase(e->name);
      inner.dropped.erase(e->name);
      inner.split.erase(e->name);
      ExprP body = inner(e->args[1]);
      return e->kind == Kind::Pi ? pi(e->name, dom, body) : sigma(e->name, dom, body);
    }
    default: {
      Expr copy = *e;
      for (auto& a : copy.args) a = (*this)(a);
      return std::make_shared<const Expr>(std::move(copy));
    }
    }
  }
};

ExprP simp(const ExprP& e) {
  switch (e->kind) {
  case Kind::App: {
    ExprP head = simp(e->args[0]);
    std::vector<ExprP> args;
    for (std::size_t i = 1; i < e->args.size(); ++i) {
      ExprP a = simp(e->args[i]);
      if (is_bool_literal(a) && head->kind == Kind::Var) {
        head = var(add_index(head->name, a->name));
        continue;
      }
      args.push_back(a);
    }
    return app(head, args);
  }
  case Kind::Pi:
  case Kind::Sigma: {
    ExprP dom = simp(e->args[0]);
    if (dom->kind == Kind::Unit) {
      Subst s;
      s.dropped.insert(e->name);
      return simp(s(e->args[1]));
    }
    if (dom->kind == Kind::Bool && e->kind == Kind::Pi) {
      Subst t, f;
      t.value[e->name] = var("true");
      f.value[e->name] = var("false");
      return simp(prod(t(e->args[1]), f(e->args[1])));
    }
    ExprP body = simp(e->args[1]);
    return e->kind == Kind::Pi ? pi(e->name, dom, body) : sigma(e->name, dom, body);
  }
  case Kind::Arrow: {
    ExprP a = simp(e->args[0]), b = simp(e->args[1]);
    if (a->kind == Kind::Unit || b->kind == Kind::Unit) return b;
    return arrow(a, b);
  }
  case Kind::Prod: {
    ExprP a = simp(e->args[0]), b = simp(e->args[1]);
    if (a->kind == Kind::Unit) return b;
    if (b->kind == Kind::Unit) return a;
    return prod(a, b);
  }
  case Kind::Id:
  case Kind::Compose: {
    Expr copy = *e;
    for (auto& a : copy.args) a = simp(a);
    return std::make_shared<const Expr>(std::move(copy));
  }
  default:
    return e;
  }
}

void flatten(const ExprP& e, std::vector<ExprP>& out) {
  if (e->kind == Kind::Prod) {
    flatten(e->args[0], out);
    flatten(e->args[1], out);
  } else {
    out.push_back(e);
  }
}

void simplify_judgment(const Judgment& j, std::vector<Judgment>& out) {
  Judgment done;
  Subst s;
  for (std::size_t i = 0; i < j.context.size(); ++i) {
    const Entry& en = j.context[i];
    if (!en.type) {
      done.context.push_back(en);
      continue;
    }
    ExprP t = simp(s(en.type));
    if (t->kind == Kind::Unit) {
      s.dropped.insert(en.name);
      continue;
    }
    if (t->kind == Kind::Bool) {
      for (const char* c : {"true", "false"}) {
        Judgment branch = done;
        Subst b;
        b.value[en.name] = var(c);
        for (std::size_t k = i + 1; k < j.context.size(); ++k) {
          Entry e2 = j.context[k];
          if (e2.type) e2.type = b(s(e2.type));
          branch.context.push_back(e2);
        }
        branch.subject = b(s(j.subject));
        simplify_judgment(branch, out);
      }
      return;
    }
    if (t->kind == Kind::Prod) {
      std::vector<ExprP> parts;
      flatten(t, parts);
      std::vector<ExprP> vars;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        std::string n = add_index(en.name, std::to_string(k + 1));
        done.context.push_back({n, parts[k]});
        vars.push_back(var(n));
      }
      s.split[en.name] = vars;
      continue;
    }
    done.context.push_back({en.name, t});
  }
  done.subject = simp(s(j.subject));
  out.push_back(done);
}

} // namespace

Signature simplify_units_and_booleans(const Signature& sig) {
  Signature out;
  out.comments = sig.comments;
  for (const auto& j : sig.judgments) simplify_judgment(j, out.judgments);
  return out;
}

} // namespace invcat::tt
