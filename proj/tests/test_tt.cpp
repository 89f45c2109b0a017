#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "invcat/orbit.hpp"
#include "invcat/tt.hpp"
#include "support.hpp"

using namespace testing;
using namespace invcat::tt;

namespace {

Signature fixture(const std::string& name) {
  std::ifstream in(root() + "/fixtures/golden/" + name);
  REQUIRE_MESSAGE(in.good(), "missing fixture " << name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

InvCat chain(std::vector<Label> labels, nlohmann::json annotations = nlohmann::json::object()) {
  std::vector<LabelPair> lt;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) lt.emplace_back(labels[i], labels[i + 1]);
  InvCat I = *trivial_invcat(WfPoset::make(labels, lt));
  I.annotations = std::move(annotations);
  return I;
}

void check_golden(const Signature& emitted, const std::string& name) {
  Signature golden = fixture(name);
  INFO("emitted:\n" << print(emitted) << "golden:\n" << print(golden));
  CHECK(alpha_equal(emitted, golden));
}

ExprP random_expr(std::mt19937_64& rng, int depth, std::vector<std::string>& scope) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  auto name = [&] {
    if (!scope.empty() && rng() % 2) return scope[rng() % scope.size()];
    static const char* free[] = {"A_x", "I[y,x]", "B_{G/e}", "g", "a_0'"};
    return std::string(free[rng() % 5]);
  };
  switch (pick(rng)) {
  case 0: return var(name());
  case 1: return unit();
  case 2: return boolean();
  case 3: {
    std::vector<ExprP> args;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) args.push_back(random_expr(rng, depth - 1, scope));
    return app(name(), args);
  }
  case 4:
  case 5: {
    std::string x = "x" + std::to_string(scope.size());
    ExprP dom = random_expr(rng, depth - 1, scope);
    scope.push_back(x);
    ExprP body = random_expr(rng, depth - 1, scope);
    scope.pop_back();
    return rng() % 2 ? pi(x, dom, body) : sigma(x, dom, body);
  }
  case 6: return arrow(random_expr(rng, depth - 1, scope), random_expr(rng, depth - 1, scope));
  case 7: return prod(random_expr(rng, depth - 1, scope), random_expr(rng, depth - 1, scope));
  case 8: return id(random_expr(rng, depth - 1, scope), random_expr(rng, depth - 1, scope));
  default: return compose(random_expr(rng, depth - 1, scope), random_expr(rng, depth - 1, scope));
  }
}

bool same_tree(const ExprP& a, const ExprP& b) {
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!same_tree(a->args[i], b->args[i])) return false;
  return true;
}

} // namespace

TEST_CASE("no objects: empty signature and unit hom") {
  auto I = chain({});
  CHECK(emit_signature(I, Mode::InvCat).judgments.empty());
  CHECK(emit_signature(I, Mode::Diagram).judgments.empty());
  check_golden(emit_hom_type(I), "empty_hom.tt");
}

TEST_CASE("one object") {
  auto I = chain({"x"});
  check_golden(emit_signature(I, Mode::InvCat), "one_invcat.tt");
  check_golden(emit_signature(I, Mode::Diagram), "one_diagram.tt");
  check_golden(emit_hom_type(I), "one_hom.tt");
}

TEST_CASE("two objects") {
  auto I = chain({"x", "y"});
  check_golden(emit_signature(I, Mode::InvCat), "two_invcat.tt");
  check_golden(emit_signature(I, Mode::Matching), "two_matching.tt");
  check_golden(emit_signature(I, Mode::Diagram), "two_diagram.tt");
  check_golden(emit_hom_type(I), "two_hom.tt");
}

TEST_CASE("two objects, simplified") {
  auto sierpinski = chain({"x", "y"}, {{"spaces", {{"x", "1"}, {"y", "1"}}}, {"homs", {{"y>x", "1"}}}});
  check_golden(simplify_units_and_booleans(emit_signature(sierpinski, Mode::Diagram)), "sierpinski.tt");
  auto cospan = chain({"x", "y"}, {{"spaces", {{"x", "1"}, {"y", "2"}}}, {"homs", {{"y>x", "1"}}}});
  check_golden(simplify_units_and_booleans(emit_signature(cospan, Mode::Diagram)), "cospan.tt");
  auto span = chain({"x", "y"}, {{"spaces", {{"x", "2"}, {"y", "1"}}}, {"homs", {{"y>x", "1"}}}});
  check_golden(simplify_units_and_booleans(emit_signature(span, Mode::Diagram)), "span.tt");
}

TEST_CASE("three and four objects") {
  check_golden(emit_signature(chain({"x", "y", "z"}), Mode::InvCat), "three_invcat.tt");
  check_golden(emit_signature(chain({"x", "y", "z"}), Mode::Diagram), "three_diagram.tt");
  check_golden(emit_signature(chain({"x", "y", "z", "w"}), Mode::InvCat), "four_invcat.tt");
}

TEST_CASE("four objects: the v_y entry of the last judgment mentions v_x") {
  auto sig = emit_signature(chain({"x", "y", "z", "w"}), Mode::InvCat);
  const auto& last = sig.judgments.back();
  REQUIRE(last.context.size() == 4);
  CHECK(last.context[3].name == "v_y");
  CHECK(print(last.context[3].type).find("v_x") != std::string::npos);
}

TEST_CASE("cyclic group presentation") {
  auto I = cp_presentation(2, 3);
  check_golden(simplify_units_and_booleans(emit_signature(*I, Mode::Diagram)), "cyclic_diagram.tt");
}

TEST_CASE("path contexts") {
  check_golden(emit_path_context(PathMode::Base), "path_base.tt");
  auto glued = emit_path_context(PathMode::Glued);
  check_golden(glued, "path_glued.tt");
  CHECK(glued.judgments[0].context.size() == 7);
  CHECK(emit_path_context(PathMode::Base).judgments[0].context.size() == 3);
  CHECK(alpha_equal(parse(print(glued)), glued));
  CHECK_FALSE(glued.comments.empty());
}

TEST_CASE("alpha equivalence") {
  auto a = parse("Gamma, (u : T) |- Pi (x : A(u)) B(x, u) type");
  auto b = parse("Gamma, (t : T) |- Pi (y : A(t)) B(y, t) type");
  CHECK(alpha_equal(a, b));
  CHECK_FALSE(alpha_equal(a, parse("Gamma, (t : T) |- Sg (y : A(t)) B(y, t) type")));
  CHECK_FALSE(alpha_equal(a, parse("Delta, (t : T) |- Pi (y : A(t)) B(y, t) type")));
  CHECK_FALSE(alpha_equal(a, parse("Gamma, (t : T) |- Pi (y : A(t)) B(t, y) type")));
  CHECK_FALSE(alpha_equal(a, parse("Gamma, (t : T) |- Pi (y : A(t)) B(y, u) type")));
  auto two = parse("|- A type |- B type");
  CHECK_FALSE(alpha_equal(two, parse("|- B type |- A type")));
}

TEST_CASE("scope errors") {
  auto dup = parse("(x : A), (x : B) |- C type");
  CHECK_THROWS_AS(check_scope(dup), Error);
  auto early = parse("(x : A(y)), (y : B) |- C type");
  try {
    alpha_equal(early, early);
    FAIL("accepted a use before binding");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScopeError);
  }
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("|- A type\n(x : ) |- B type");
    FAIL("parsed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.detail()["line"] == 2);
    CHECK(e.detail()["column"] == 6);
  }
  CHECK_THROWS_AS(parse("|- A"), Error);
  CHECK_THROWS_AS(parse("|- A $ B type"), Error);
}

TEST_CASE("unordered emission is rejected") {
  auto I = chain({"x", "y"});
  try {
    emit_signature(I, Mode::Diagram, std::vector<Label>{"y", "x"});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnorderedObjects);
  }
}

TEST_CASE("round trip of emitted signatures") {
  for (int n = 0; n <= 5; ++n) {
    std::vector<Label> labels;
    for (int i = 0; i < n; ++i) labels.push_back("o" + std::to_string(i));
    auto I = chain(labels);
    for (auto mode : {Mode::InvCat, Mode::Diagram, Mode::Matching}) {
      auto sig = emit_signature(I, mode);
      CHECK(alpha_equal(parse(print(sig)), sig));
      CHECK(print(sig) == print(emit_signature(I, mode)));
    }
    auto h = emit_hom_type(I);
    CHECK(alpha_equal(parse(print(h)), h));
  }
}

TEST_CASE("round trip of random expressions") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> scope;
    ExprP e = random_expr(rng, 4, scope);
    ExprP back = parse_expr(print(e));
    INFO(print(e));
    CHECK(same_tree(e, back));
  }
}

TEST_CASE("json output") {
  auto j = to_json(emit_signature(chain({"x", "y"}), Mode::Diagram));
  REQUIRE(j["judgments"].size() == 2);
  CHECK(j["judgments"][1]["subject"]["kind"] == "app");
  CHECK(j["judgments"][1]["context"][0]["context"] == "Gamma");
}

TEST_CASE("emission on a non-chain poset respects the order") {
  InvCat I = *trivial_invcat(WfPoset::make({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
  auto sig = emit_signature(I, Mode::Diagram);
  REQUIRE(sig.judgments.size() == 3);
  const auto& top = sig.judgments[2];
  REQUIRE(top.context.size() == 4);
  CHECK(top.context[2].name == "v_a");
  CHECK(top.context[3].name == "v_b");
  CHECK(alpha_equal(parse(print(sig)), sig));
}
