#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "invcat/cli.hpp"
#include "invcat/spec.hpp"
#include "invcat/tt.hpp"
#include "support.hpp"

using namespace testing;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return root() + "/fixtures/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::SyntaxError;
}

} // namespace

TEST_CASE("the two-chain fixture declares one invcat and two diagrams") {
  WorkbenchSpec S = parse_spec(slurp(fixture("two_chain.json")));
  CHECK(S.invcats.size() == 1);
  CHECK(S.diagrams.size() == 2);
  CHECK(S.diagram_invcat.at("A") == "two");
}

TEST_CASE("syntax errors carry line and column") {
  for (const std::string empty : {"", "  \n"}) {
    try {
      parse_spec(empty);
      FAIL("parsed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
      CHECK(e.detail()["line"] == 1);
      CHECK(e.detail()["column"] == 1);
    }
  }
  try {
    parse_spec("{\n  \"base\": \"finset\",\n  \"objects\": {\"a\": [1,, 2]}\n}");
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.detail()["line"] == 3);
    CHECK(e.detail()["column"] == 23);
  }
  CHECK(kind_of([] { parse_spec("[1, 2]"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("names must resolve") {
  auto e = kind_of([] { parse_spec(R"({"diagrams": {"D": {"invcat": "nope", "gamma": ["*"]}}})"); });
  CHECK(e == ErrorKind::UnresolvedName);
  e = kind_of([] { parse_spec(R"({"maps": {"f": {"src": "missing", "tgt": ["a"], "values": {}}}})"); });
  CHECK(e == ErrorKind::UnresolvedName);
  try {
    parse_spec(R"({"invcats": {"C": {"elements": ["x"], "lt": [], "spaces": {"x": "X"}}}})");
    FAIL("parsed");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::UnresolvedName);
    CHECK(err.detail()["declaration"] == "invcats.C");
  }
}

TEST_CASE("declarations must fit the base instance") {
  CHECK(kind_of([] { parse_spec(R"({"base": "finset", "invcats": {"c": {"builtin": "cp", "p": 2}}})"); }) ==
        ErrorKind::InstanceMismatch);
  json tri = to_json(*representable(1, 1));
  json spec = {{"base", "finset"}, {"objects", {{"d1", tri}}}};
  CHECK(kind_of([&] { parse_spec(spec.dump()); }) == ErrorKind::InstanceMismatch);
}

TEST_CASE("a presheaf violating a simplicial identity is rejected with the identity") {
  json d1 = to_json(*representable(1, 2));
  json spec = {{"base", {{"kind", "ssets"}, {"trunc", 2}}}, {"objects", {{"d1", d1}}}};
  CHECK_NOTHROW(parse_spec(spec.dump()));
  // send the face d0 of the nondegenerate 1-simplex to vertex 0, so d0 = d1
  const json& level1 = d1["levels"][1];
  std::string top;
  for (const auto& l : level1) {
    std::string a = d1["faces"]["1"]["d0"][l.get<std::string>()], b = d1["faces"]["1"]["d1"][l.get<std::string>()];
    if (a != b) top = l;
  }
  REQUIRE(!top.empty());
  spec["objects"]["d1"]["faces"]["1"]["d0"][top] = spec["objects"]["d1"]["faces"]["1"]["d1"][top];
  try {
    parse_spec(spec.dump());
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SimplicialIdentity);
    CHECK(e.detail().contains("identity"));
    CHECK(e.detail()["declaration"] == "objects.d1");
  }
}

TEST_CASE("composition tables must land in the composite hom") {
  json spec = json::parse(R"js({
    "base": "finset",
    "invcats": {"C": {
      "elements": ["a", "b", "c"],
      "lt": [["a", "b"], ["b", "c"]],
      "spaces": {"a": ["*"], "b": ["*"], "c": ["*"]},
      "homs": {
        "c>b": {"obj": ["f"], "left": {"terminal": true}, "right": {"terminal": true}},
        "b>a": {"obj": ["g"], "left": {"terminal": true}, "right": {"terminal": true}},
        "c>a": {"obj": ["k"], "left": {"terminal": true}, "right": {"terminal": true}}
      },
      "comps": {"c>b>a": {"(f,g)": "k"}}
    }}
  })js");
  WorkbenchSpec S = parse_spec(spec.dump());
  CHECK(S.invcats.at("C")->comps.size() == 1);
  spec["invcats"]["C"]["comps"]["c>b>a"]["(f,g)"] = "h";
  try {
    parse_spec(spec.dump());
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingComposite);
    CHECK(e.detail()["pair"] == "(f,g)");
    CHECK(e.detail()["missing"] == "h");
  }
}

TEST_CASE("serializers round trip") {
  for (const char* name : {"two_chain.json", "one_obj_2_3.json", "cp_p2.json", "nonsurjective_leg.json"}) {
    INFO(name);
    WorkbenchSpec S = parse_spec(slurp(fixture(name)));
    json once = to_json(S);
    WorkbenchSpec T = parse_spec(once.dump());
    CHECK(to_json(T) == once);
    for (const auto& [n, I] : S.invcats) CHECK(structurally_equal(*I, *T.invcats.at(n)));
    for (const auto& [n, D] : S.diagrams) CHECK(structurally_equal(*D, *T.diagrams.at(n)));
  }
}

TEST_CASE("check-invcat on the cyclic presentation") {
  auto r = run({"check-invcat", fixture("cp_p2.json"), "--trunc", "3"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["fibrant"] == true);
  CHECK(j["space_sizes"]["G/e"] == json({1, 2, 4, 8}));
  WorkbenchSpec S = parse_spec(json{{"base", {{"kind", "ssets"}, {"trunc", 3}}}, {"invcats", {{"cp", j["presentation"]}}}}.dump());
  CHECK(structurally_equal(*S.invcats.at("cp"), *cp_presentation(2, 3)));
}

TEST_CASE("emit-tt on the two-chain reproduces the diagram judgments") {
  auto r = run({"emit-tt", fixture("two_chain.json"), "--mode", "diagram"});
  REQUIRE(r.code == 0);
  auto golden = tt::parse(slurp(fixture("golden/two_diagram.tt")));
  CHECK(tt::alpha_equal(tt::parse(r.out), golden));
  auto j = run({"emit-tt", fixture("two_chain.json"), "--mode", "diagram", "--format", "json"});
  CHECK(tt::alpha_equal(tt::parse(json::parse(j.out)["text"].get<std::string>()), golden));
  CHECK(run({"emit-tt", fixture("two_chain.json"), "--order", "y,x"}).code == 2);
}

TEST_CASE("hom on one object with 2 and 3 elements has 9 elements") {
  auto r = run({"hom", fixture("one_obj_2_3.json")});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["carrier_size"] == 9);
  auto v = run({"verify-up", fixture("one_obj_2_3.json")});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["ok"] == true);
}

TEST_CASE("two-chain commands") {
  CHECK(run({"check-diagram", fixture("two_chain.json")}).code == 0);
  CHECK(json::parse(run({"hom", fixture("two_chain.json"), "--source", "T", "--target", "A"}).out)["carrier_size"] == 2);
  CHECK(json::parse(run({"nerve", fixture("two_chain.json"), "--level", "2"}).out)["size"] == 6);
  CHECK(json::parse(run({"matching", fixture("two_chain.json"), "--diagram", "A", "--object", "y"}).out)["carrier_size"] ==
        4);
  auto s = run({"sigma", fixture("two_chain.json")});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["agree"] == true);
  CHECK(run({"ei-check", fixture("two_chain.json")}).code == 0);
  CHECK(run({"wf-check", fixture("two_chain.json")}).code == 0);
}

TEST_CASE("mutation fixtures fail with certificates") {
  auto a = run({"check-invcat", fixture("broken_assoc.json")});
  CHECK(a.code == 1);
  json ea = json::parse(a.err);
  CHECK(ea["error"] == "AssocFailure");
  CHECK(ea["detail"]["lhs"] != ea["detail"]["rhs"]);

  auto d = run({"check-invcat", fixture("deleted_hom.json")});
  CHECK(d.code == 1);
  json ed = json::parse(d.err);
  CHECK(ed["error"] == "MissingComposite");
  CHECK(ed["detail"]["missing"] == "h");

  auto n = run({"check-invcat", fixture("nonsurjective_leg.json")});
  CHECK(n.code == 1);
  json en = json::parse(n.out);
  CHECK(en["fibrant"] == false);
  CHECK(en["certificate"]["per_object"]["y"]["profile"]["per_object"]["x"]["certificate"]["reason"] == "not surjective");
}

TEST_CASE("groups and the cyclic presentation") {
  for (int p : {2, 3, 5}) {
    auto r = run({"orbit", "--group", "cyclic:" + std::to_string(p)});
    REQUIRE(r.code == 0);
    json h = json::parse(r.out)["hom_sizes"];
    CHECK(h["G/e>G/e"] == p);
    CHECK(h["G/G>G/e"] == 0);
    CHECK(h["G/e>G/G"] == 1);
    CHECK(h["G/G>G/G"] == 1);
  }
  CHECK(run({"ei-check", "--group", "symmetric:3"}).code == 0);
  CHECK(run({"orbit", "--group", "cyclic:30"}).code == 2);
  CHECK(run({"orbit", "--group", "cyclic:x"}).code == 2);
  auto c = run({"cp-present", "--p", "3", "--trunc", "2"});
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["space_sizes"]["G/e"] == json({1, 3, 9}));
  CHECK(run({"cp-present", "--p", "4"}).code == 2);
}

TEST_CASE("path contexts") {
  auto r = run({"emit-path", "--mode", "glued"});
  REQUIRE(r.code == 0);
  CHECK(tt::alpha_equal(tt::parse(r.out), tt::parse(slurp(fixture("golden/path_glued.tt")))));
  CHECK(tt::alpha_equal(tt::parse(run({"emit-path"}).out), tt::parse(slurp(fixture("golden/path_base.tt")))));
}

TEST_CASE("input errors exit with 2 and a JSON diagnostic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"no-such-command"},
           {"hom", fixture("absent.json")},
           {"hom", fixture("one_obj_2_3.json"), "--source", "Z"},
           {"check-invcat", fixture("two_chain.json"), "--base", "finset", "--trunc", "2"},
           {"check-invcat", fixture("two_chain.json"), "--format", "xml"},
           {"emit-tt", fixture("two_chain.json"), "--mode", "nope"}}) {
    auto r = run(args);
    INFO(r.err);
    CHECK(r.code == 2);
    CHECK(json::accept(r.err));
  }
}

TEST_CASE("reports are JSON and deterministic under a seed") {
  auto a = run({"verify-up", "--random", "5", "--seed", "11"});
  auto b = run({"verify-up", "--random", "5", "--seed", "11"});
  CHECK(a.code == 0);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j["instances"] == 5);
  CHECK(j["decomposition_failures"] == 0);
  auto t = run({"check-diagram", fixture("two_chain.json"), "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("reedy_fibrant: true") != std::string::npos);
}

TEST_CASE("help documents the file grammar") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"invcats\"") != std::string::npos);
  CHECK(r.out.find("Exit status") != std::string::npos);
}
