#include "invcat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "invcat/random.hpp"
#include "invcat/segal.hpp"
#include "invcat/spec.hpp"
#include "invcat/tt.hpp"

namespace invcat {

using json = nlohmann::json;

bool is_input_error(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::SyntaxError:
  case ErrorKind::UnresolvedName:
  case ErrorKind::InstanceMismatch:
  case ErrorKind::UnknownLabel:
  case ErrorKind::DuplicateLabel:
  case ErrorKind::LabelClash:
  case ErrorKind::NotPrime:
  case ErrorKind::UnorderedObjects:
  case ErrorKind::ScopeError:
  case ErrorKind::SizeBoundExceeded:
  case ErrorKind::BoundExceeded:
  case ErrorKind::TargetMismatch:
    return true;
  default:
    return false;
  }
}

namespace {

const char* kGrammar = R"txt(Specification files are JSON:
  {"base": "finset" | {"kind": "ssets", "trunc": N},
   "posets":   {name: {"elements": [...], "lt": [[lower, upper], ...]}},
   "objects":  {name: <object>},
   "maps":     {name: {"src": <object>, "tgt": <object>, "values": <table>}},
   "groups":   {name: {"builtin": "cyclic"|"symmetric"|"dihedral", "n": N}
                     | {"elements": [...], "table": [[...]]}},
   "invcats":  {name: <invcat>},
   "diagrams": {name: <diagram>}}
<object>   a name, a label list, a count, {"builtin": "point"|"representable"|
           "boundary"|"horn"|"classifying", "m", "k", "group"} or
           {"trunc", "levels", "faces", "degens"}
<table>    {label: label} for finite sets, one such object per level otherwise
<map>      a name, {"values": <table>}, {"terminal": true} or {"identity": true}
<invcat>   {"builtin": "cp", "p": P}
           | {"ordinary": {"elements", "lt", "homs": {"x>y": [...]},
                           "comp": {"x>y>z": {"f|g": "h"}}}}
           | {"elements", "lt", "spaces": {x: <object>},
              "homs": {"x>y": {"obj", "left", "right"}},
              "comps": {"x>y>z": <table keyed "(f,g)">}, "annotations"}
<diagram>  {"invcat": name, "gamma": <object>,
            "components": {x: {"obj", "to_gamma", "to_space"}},
            "actions": {"x>y": <table keyed "(a,f)">}}
Hom keys name the upper object first.
Exit status: 0 all checks pass, 1 a check failed, 2 input error.)txt";

struct Options {
  std::string file;
  std::optional<std::string> base;
  std::optional<int> trunc;
  std::optional<int> size_bound;
  std::uint64_t seed = 0;
  std::string format;
  std::string invcat, diagram, source, target, object, group;
  std::string mode, simplify, order;
  int level = 2;
  int random = 0;
  int p = 2;
};

struct Result {
  Result(json r, int c = Pass, std::optional<std::string> t = std::nullopt)
    : report(std::move(r)), code(c), text(std::move(t)) {}
  json report;
  int code;
  std::optional<std::string> text; // preferred text rendering
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UnresolvedName, "cannot read '" + path + "'", {{"kind", "file"}, {"name", path}});
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<BaseCat> base_override(const Options& o, const std::string& text) {
  if (o.base) {
    if (*o.base == "finset") {
      if (o.trunc && *o.trunc != 0)
        throw Error(ErrorKind::InstanceMismatch, "finite sets have truncation 0", {{"trunc", *o.trunc}});
      return BaseCat::finset();
    }
    if (*o.base == "ssets") return BaseCat::ssets(o.trunc.value_or(3));
    throw Error(ErrorKind::UnresolvedName, "unknown base '" + *o.base + "'", {{"kind", "base"}, {"name", *o.base}});
  }
  if (!o.trunc) return std::nullopt;
  json j = json::parse(text, nullptr, false);
  bool ssets = j.is_object() && j.contains("base") && j["base"].is_object() && j["base"].value("kind", "") == "ssets";
  if (ssets) return BaseCat::ssets(*o.trunc);
  if (*o.trunc != 0)
    throw Error(ErrorKind::InstanceMismatch, "finite sets have truncation 0", {{"trunc", *o.trunc}});
  return std::nullopt;
}

WorkbenchSpec load(const Options& o) {
  if (o.file.empty()) throw Error(ErrorKind::UnresolvedName, "no specification file given", {{"kind", "file"}});
  std::string text = read_file(o.file);
  return parse_spec(text, base_override(o, text));
}

template <class M>
const typename M::mapped_type& pick(const M& m, const std::string& name, const char* kind, std::size_t index = 0) {
  if (!name.empty()) {
    auto it = m.find(name);
    if (it == m.end()) throw Error(ErrorKind::UnresolvedName, std::string("unknown ") + kind + " '" + name + "'",
                                   {{"kind", kind}, {"name", name}});
    return it->second;
  }
  if (m.empty()) throw Error(ErrorKind::UnresolvedName, std::string("no ") + kind + " declared", {{"kind", kind}});
  auto it = m.begin();
  std::advance(it, std::min(index, m.size() - 1));
  return it->second;
}

std::string name_of(const WorkbenchSpec& S, const InvCatPtr& I) {
  for (const auto& [n, J] : S.invcats)
    if (J == I) return n;
  return "";
}

std::string name_of(const WorkbenchSpec& S, const DiagramPtr& D) {
  for (const auto& [n, E] : S.diagrams)
    if (E == D) return n;
  return "";
}

InvCatPtr invcat_of(const WorkbenchSpec& S, const Options& o) {
  if (o.invcat.empty() && !o.diagram.empty()) return pick(S.diagrams, o.diagram, "diagram")->invcat;
  return pick(S.invcats, o.invcat, "invcat");
}

std::optional<std::vector<Label>> parse_order(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::vector<Label> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

FiniteGroup group_of(const Options& o) {
  const std::string& g = o.group;
  auto colon = g.find(':');
  if (colon != std::string::npos) {
    std::string kind = g.substr(0, colon);
    int n = 0;
    try {
      n = std::stoi(g.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::SyntaxError, "expected KIND:N in '" + g + "'", {{"group", g}, {"line", 1}, {"column", colon + 2}});
    }
    return FiniteGroup::from_json({{"builtin", kind}, {"n", n}});
  }
  if (g.empty()) throw Error(ErrorKind::UnresolvedName, "no group given", {{"kind", "group"}});
  WorkbenchSpec S = load(o);
  return pick(S.groups, g, "group");
}

std::vector<int> level_sizes(const Obj& X) {
  std::vector<int> s;
  for (int m = 0; m <= X->trunc; ++m) s.push_back(X->size(m));
  return s;
}

json level0(const Obj& X) { return X->labels.empty() ? json::array() : json(X->labels[0]); }

Result wf_check(const Options& o) {
  WorkbenchSpec S = load(o);
  json posets = json::object();
  auto describe = [](const WfPoset& P) {
    return json{{"elements", P.elements()}, {"topo_order", P.topo_order()}, {"maximal", P.maximal()}};
  };
  for (const auto& [n, P] : S.posets) posets[n] = describe(P);
  for (const auto& [n, I] : S.invcats) posets["invcat:" + n] = describe(I->objects);
  return {{{"well_founded", true}, {"posets", posets}}};
}

Result check_invcat(const Options& o) {
  WorkbenchSpec S = load(o);
  InvCatPtr I = invcat_of(S, o);
  ReedyReport fib = fibrant_invcat(I);
  json spaces = json::object();
  for (const auto& [x, X] : I->spaces) spaces[x] = level_sizes(X);
  return {{{"invcat", name_of(S, I)},
           {"base", I->base.name()},
           {"valid", true},
           {"fibrant", fib.ok},
           {"certificate", fib.to_json()},
           {"space_sizes", spaces},
           {"presentation", to_json(*I)}},
          fib.ok ? Pass : CheckFailed};
}

Result check_diagram(const Options& o) {
  WorkbenchSpec S = load(o);
  std::vector<std::pair<std::string, DiagramPtr>> targets;
  if (!o.diagram.empty())
    targets.emplace_back(o.diagram, pick(S.diagrams, o.diagram, "diagram"));
  else
    for (const auto& [n, D] : S.diagrams) targets.emplace_back(n, D);
  if (targets.empty()) throw Error(ErrorKind::UnresolvedName, "no diagram declared", {{"kind", "diagram"}});
  json out = json::object();
  bool ok = true;
  for (const auto& [n, D] : targets) {
    HomEngine E(D->invcat);
    ReedyReport r = reedy_fibrant(E, D);
    ok = ok && r.ok;
    out[n] = {{"valid", true}, {"reedy_fibrant", r.ok}, {"certificate", r.to_json()},
              {"presentation", to_json(*D, S.diagram_invcat.at(n))}};
  }
  return {{{"diagrams", out}, {"ok", ok}}, ok ? Pass : CheckFailed};
}

Result matching(const Options& o) {
  WorkbenchSpec S = load(o);
  DiagramPtr D = pick(S.diagrams, o.diagram, "diagram");
  const InvCat& I = *D->invcat;
  Label x = o.object;
  if (x.empty()) {
    auto order = I.objects.topo_order();
    if (order.empty()) throw Error(ErrorKind::UnresolvedName, "no objects", {{"kind", "object"}});
    x = order.back();
  }
  if (!I.objects.contains(x)) throw Error(ErrorKind::UnresolvedName, "unknown object '" + x + "'", {{"kind", "object"}, {"name", x}});
  HomEngine E(D->invcat);
  HomPtr M = E.matching(D, x);
  json rep = {{"diagram", name_of(S, D)}, {"object", x}, {"carrier_size", M->size()}, {"elements", level0(M->carrier)}};
  if (D->comps.count(x)) {
    FibrationResult f = I.base.is_fibration(E.matching_map(D, x));
    rep["comparison_fibration"] = f.ok;
    rep["certificate"] = f.certificate;
  }
  return {rep};
}

std::pair<DiagramPtr, DiagramPtr> hom_pair(const WorkbenchSpec& S, const Options& o) {
  DiagramPtr A = pick(S.diagrams, o.source, "diagram", 0);
  DiagramPtr B = pick(S.diagrams, o.target, "diagram", 1);
  if (A->invcat != B->invcat) throw Error(ErrorKind::InstanceMismatch, "diagrams live on different inverse categories");
  return {A, B};
}

Result hom(const Options& o) {
  WorkbenchSpec S = load(o);
  auto [A, B] = hom_pair(S, o);
  HomEngine E(A->invcat);
  HomPtr H = E.hom(A, B);
  return {{{"source", name_of(S, A)},
           {"target", name_of(S, B)},
           {"carrier_size", H->size()},
           {"level_sizes", level_sizes(H->carrier)},
           {"carrier", to_json(*H->carrier)}}};
}

Result verify_up(const Options& o) {
  int bound = o.size_bound.value_or(8);
  json rep = {{"seed", o.seed}};
  long checked = 0;
  bool ok = true;
  json violation;
  if (o.random > 0) {
    Rng rng(o.seed);
    RandomConfig cfg;
    int decomposition_failures = 0;
    for (int i = 0; i < o.random && ok; ++i) {
      auto inst = random_hom_instance(rng, cfg);
      HomEngine& E = *inst.engine;
      HomPtr H = E.hom(inst.A, inst.B);
      UPReport r = verify_universal_property(E, H, 3, bound);
      checked += r.checked;
      if (!r.ok) {
        ok = false;
        violation = {{"instance", i}, {"violation", r.violation}};
      }
      if (E.slice_limit(inst.A, inst.B)->carrier->labels != H->carrier->labels) ++decomposition_failures;
    }
    ok = ok && decomposition_failures == 0;
    rep["instances"] = o.random;
    rep["decomposition_failures"] = decomposition_failures;
  } else {
    WorkbenchSpec S = load(o);
    auto [A, B] = hom_pair(S, o);
    HomEngine E(A->invcat);
    UPReport r = verify_universal_property(E, E.hom(A, B), 3, bound);
    checked = r.checked;
    ok = r.ok;
    violation = r.violation;
    rep["source"] = name_of(S, A);
    rep["target"] = name_of(S, B);
  }
  rep["checked"] = checked;
  rep["ok"] = ok;
  if (!ok) rep["violation"] = violation;
  return {rep, ok ? Pass : CheckFailed};
}

Result sigma_cmd(const Options& o) {
  WorkbenchSpec S = load(o);
  InvCatPtr I = invcat_of(S, o);
  InternalCat K = sigma(*I);
  check_category_axioms(K);
  SegalReport a = is_strongly_segal(*I), b = is_strongly_segal(K);
  return {{{"invcat", name_of(S, I)},
           {"objects", level0(K.K0)},
           {"morphisms", level0(K.K1)},
           {"object_sizes", level_sizes(K.K0)},
           {"morphism_sizes", level_sizes(K.K1)},
           {"strongly_segal", a.to_json()},
           {"sigma_strongly_segal", b.to_json()},
           {"agree", a.ok == b.ok}}};
}

Result nerve(const Options& o) {
  WorkbenchSpec S = load(o);
  InternalCat K = sigma(*invcat_of(S, o));
  if (o.level < 0) throw Error(ErrorKind::SyntaxError, "negative nerve level", {{"line", 1}, {"column", 1}});
  Obj N = nerve_level(K, o.level);
  return {{{"level", o.level}, {"size", N->size(0)}, {"level_sizes", level_sizes(N)}, {"chains", level0(N)}}};
}

Result ei_check(const Options& o) {
  InternalCat K;
  json rep;
  if (!o.group.empty()) {
    OrbitCat O = orbit_category(group_of(o), o.size_bound.value_or(24));
    K = orbit_internal(O, true);
    rep["category"] = "orbit-opposite";
  } else {
    WorkbenchSpec S = load(o);
    K = sigma(*invcat_of(S, o));
    rep["category"] = "sigma";
  }
  EIReport r = ei_inverse_diagnostic(K);
  rep["report"] = r.to_json();
  rep["inverse_ei"] = r.is_inverse_ei();
  return {rep, r.is_inverse_ei() ? Pass : CheckFailed};
}

Result orbit(const Options& o) {
  FiniteGroup G = group_of(o);
  OrbitCat O = orbit_category(G, o.size_bound.value_or(24));
  json table = json::object();
  for (const auto& s : O.objects)
    for (const auto& t : O.objects) table[s + ">" + t] = O.hom_size(s, t);
  json rep = O.to_json();
  rep["group"] = G.to_json();
  rep["hom_sizes"] = table;
  return {rep};
}

Result cp_present(const Options& o) {
  InvCatPtr I = cp_presentation(o.p, o.trunc.value_or(3));
  ReedyReport fib = fibrant_invcat(I);
  json spaces = json::object();
  for (const auto& [x, X] : I->spaces) spaces[x] = level_sizes(X);
  return {{{"p", o.p},
           {"fibrant", fib.ok},
           {"certificate", fib.to_json()},
           {"space_sizes", spaces},
           {"presentation", to_json(*I)}},
          fib.ok ? Pass : CheckFailed};
}

Result signature_result(const tt::Signature& sig) {
  json j = tt::to_json(sig);
  j["text"] = tt::print(sig);
  return {j, Pass, tt::print(sig)};
}

Result emit_tt(const Options& o) {
  WorkbenchSpec S = load(o);
  InvCatPtr I = invcat_of(S, o);
  tt::Mode mode;
  if (o.mode.empty() || o.mode == "invcat")
    mode = tt::Mode::InvCat;
  else if (o.mode == "diagram")
    mode = tt::Mode::Diagram;
  else if (o.mode == "matching")
    mode = tt::Mode::Matching;
  else
    throw Error(ErrorKind::UnresolvedName, "unknown mode '" + o.mode + "'", {{"kind", "mode"}, {"name", o.mode}});
  tt::Signature sig = tt::emit_signature(*I, mode, parse_order(o.order));
  if (o.simplify == "units-and-booleans")
    sig = tt::simplify_units_and_booleans(sig);
  else if (!o.simplify.empty())
    throw Error(ErrorKind::UnresolvedName, "unknown simplification '" + o.simplify + "'",
                {{"kind", "simplify"}, {"name", o.simplify}});
  return signature_result(sig);
}

Result emit_hom(const Options& o) {
  WorkbenchSpec S = load(o);
  tt::Signature sig = tt::emit_hom_type(*invcat_of(S, o), parse_order(o.order));
  if (o.simplify == "units-and-booleans") sig = tt::simplify_units_and_booleans(sig);
  return signature_result(sig);
}

Result emit_path(const Options& o) {
  if (!o.mode.empty() && o.mode != "base" && o.mode != "glued")
    throw Error(ErrorKind::UnresolvedName, "unknown mode '" + o.mode + "'", {{"kind", "mode"}, {"name", o.mode}});
  return signature_result(tt::emit_path_context(o.mode == "glued" ? tt::PathMode::Glued : tt::PathMode::Base));
}

void render_text(std::ostream& out, const json& j, int indent) {
  std::string pad(indent, ' ');
  for (const auto& [k, v] : j.items()) {
    bool nested = v.is_object() && !v.empty();
    if (nested) {
      out << pad << k << ":\n";
      render_text(out, v, indent + 2);
    } else {
      out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse categories internal to finite sets and truncated simplicial sets", "invcat"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--base", o.base, "Base category: finset or ssets")->check(CLI::IsMember({"finset", "ssets"}));
  app.add_option("--trunc", o.trunc, "Truncation level of simplicial sets")->check(CLI::NonNegativeNumber);
  app.add_option("--size-bound", o.size_bound, "Size bound for oracles and group enumeration");
  app.add_option("--seed", o.seed, "Seed for randomized suites");
  app.add_option("--format", o.format, "Report format: json or text")->check(CLI::IsMember({"json", "text"}));

  using Handler = Result (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto command = [&](const char* name, const char* help, Handler h, bool file) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (file) sub->add_option("file", o.file, "Specification file");
    commands.emplace_back(sub, h);
    return sub;
  };
  auto with_invcat = [&](CLI::App* s) { s->add_option("--invcat", o.invcat, "Declared inverse category"); };

  command("wf-check", "Check declared relations are well-founded", wf_check, true);
  with_invcat(command("check-invcat", "Validate an inverse category and check fibrancy", check_invcat, true));
  command("check-diagram", "Validate diagrams and check Reedy fibrancy", check_diagram, true)
      ->add_option("--diagram", o.diagram, "Declared diagram");
  auto* m = command("matching", "Matching object of a diagram at an object", matching, true);
  m->add_option("--diagram", o.diagram, "Declared diagram");
  m->add_option("--object", o.object, "Object (default: a maximal one)");
  auto* h = command("hom", "Hom-object between two diagrams", hom, true);
  h->add_option("--source", o.source, "Source diagram");
  h->add_option("--target", o.target, "Target diagram");
  auto* v = command("verify-up", "Check the universal property against exhaustive enumeration", verify_up, true);
  v->add_option("--source", o.source, "Source diagram");
  v->add_option("--target", o.target, "Target diagram");
  v->add_option("--random", o.random, "Number of random instances instead of a file");
  with_invcat(command("sigma", "Internal category of an inverse category", sigma_cmd, true));
  auto* n = command("nerve", "A level of the nerve of the internal category", nerve, true);
  with_invcat(n);
  n->add_option("--level", o.level, "Nerve level");
  auto* e = command("ei-check", "Inverse EI diagnostic", ei_check, true);
  with_invcat(e);
  e->add_option("--group", o.group, "Use the opposite orbit category of a group (e.g. cyclic:3)");
  command("orbit", "Orbit category of a finite group", orbit, true)
      ->add_option("--group", o.group, "cyclic:N, symmetric:N, dihedral:N or a declared group")
      ->required();
  command("cp-present", "Presentation of the cyclic group of prime order", cp_present, false)
      ->add_option("--p", o.p, "Prime order");
  auto* t = command("emit-tt", "Type-theoretic signature of an inverse category", emit_tt, true);
  with_invcat(t);
  t->add_option("--mode", o.mode, "invcat, diagram or matching");
  t->add_option("--simplify", o.simplify, "units-and-booleans");
  t->add_option("--order", o.order, "Comma-separated object order");
  auto* eh = command("emit-hom", "Type of diagram maps", emit_hom, true);
  with_invcat(eh);
  eh->add_option("--simplify", o.simplify, "units-and-booleans");
  eh->add_option("--order", o.order, "Comma-separated object order");
  command("emit-path", "Path-type contexts", emit_path, false)->add_option("--mode", o.mode, "base or glued");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    err << json{{"error", "UsageError"}, {"message", ex.what()}}.dump() << "\n";
    return InputError;
  }

  try {
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Result r = handler(o);
      bool emit = std::string(sub->get_name()).rfind("emit-", 0) == 0;
      std::string format = o.format.empty() ? (emit ? "text" : "json") : o.format;
      if (format == "json")
        out << r.report.dump(2) << "\n";
      else if (r.text)
        out << *r.text;
      else
        render_text(out, r.report, 0);
      return r.code;
    }
  } catch (const Error& ex) {
    err << ex.to_json().dump() << "\n";
    return is_input_error(ex.kind()) ? InputError : CheckFailed;
  } catch (const json::exception& ex) {
    err << json{{"error", "SyntaxError"}, {"message", ex.what()}}.dump() << "\n";
    return InputError;
  }
  return InputError;
}

} // namespace invcat
