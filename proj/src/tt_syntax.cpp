#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "invcat/tt.hpp"

namespace invcat::tt {

ExprP var(const std::string& n) { return std::make_shared<const Expr>(Expr{Kind::Var, n, {}}); }
ExprP unit() { return std::make_shared<const Expr>(Expr{Kind::Unit, "", {}}); }
ExprP boolean() { return std::make_shared<const Expr>(Expr{Kind::Bool, "", {}}); }
ExprP app(ExprP head, std::vector<ExprP> args) {
  if (args.empty()) return head;
  args.insert(args.begin(), std::move(head));
  return std::make_shared<const Expr>(Expr{Kind::App, "", std::move(args)});
}
ExprP app(const std::string& head, std::vector<ExprP> args) { return app(var(head), std::move(args)); }
ExprP pi(const std::string& x, ExprP dom, ExprP body) {
  return std::make_shared<const Expr>(Expr{Kind::Pi, x, {std::move(dom), std::move(body)}});
}
ExprP sigma(const std::string& x, ExprP dom, ExprP body) {
  return std::make_shared<const Expr>(Expr{Kind::Sigma, x, {std::move(dom), std::move(body)}});
}
ExprP arrow(ExprP a, ExprP b) { return std::make_shared<const Expr>(Expr{Kind::Arrow, "", {std::move(a), std::move(b)}}); }
ExprP prod(ExprP a, ExprP b) { return std::make_shared<const Expr>(Expr{Kind::Prod, "", {std::move(a), std::move(b)}}); }
ExprP id(ExprP a, ExprP b) { return std::make_shared<const Expr>(Expr{Kind::Id, "", {std::move(a), std::move(b)}}); }
ExprP compose(ExprP f, ExprP g) {
  return std::make_shared<const Expr>(Expr{Kind::Compose, "", {std::move(f), std::move(g)}});
}

// -- printing ------------------------------------------------------------------

namespace {

// 0: binders and arrows, 1: products, 2: composites, 3: applications, 4: atoms
int prec(const Expr& e) {
  switch (e.kind) {
  case Kind::Pi:
  case Kind::Sigma:
  case Kind::Arrow:
    return 0;
  case Kind::Prod:
    return 1;
  case Kind::Compose:
    return 2;
  case Kind::App:
    return 3;
  default:
    return 4;
  }
}

void emit(const Expr& e, int ctx, std::string& out) {
  bool paren = prec(e) < ctx;
  if (paren) out += "(";
  switch (e.kind) {
  case Kind::Var:
    out += e.name;
    break;
  case Kind::Unit:
    out += "1";
    break;
  case Kind::Bool:
    out += "2";
    break;
  case Kind::App:
    emit(*e.args[0], 3, out);
    out += "(";
    for (std::size_t i = 1; i < e.args.size(); ++i) {
      if (i > 1) out += ", ";
      emit(*e.args[i], 0, out);
    }
    out += ")";
    break;
  case Kind::Pi:
  case Kind::Sigma:
    out += e.kind == Kind::Pi ? "Pi (" : "Sg (";
    out += e.name + " : ";
    emit(*e.args[0], 0, out);
    out += ") ";
    emit(*e.args[1], 0, out);
    break;
  case Kind::Arrow:
    emit(*e.args[0], 1, out);
    out += " -> ";
    emit(*e.args[1], 0, out);
    break;
  case Kind::Prod:
    emit(*e.args[0], 2, out);
    out += " * ";
    emit(*e.args[1], 1, out);
    break;
  case Kind::Compose:
    emit(*e.args[0], 3, out);
    out += " . ";
    emit(*e.args[1], 2, out);
    break;
  case Kind::Id:
    out += "Id(";
    emit(*e.args[0], 0, out);
    out += ", ";
    emit(*e.args[1], 0, out);
    out += ")";
    break;
  }
  if (paren) out += ")";
}

const char* kind_name(Kind k) {
  switch (k) {
  case Kind::Var: return "var";
  case Kind::Unit: return "unit";
  case Kind::Bool: return "bool";
  case Kind::App: return "app";
  case Kind::Pi: return "pi";
  case Kind::Sigma: return "sigma";
  case Kind::Arrow: return "arrow";
  case Kind::Prod: return "prod";
  case Kind::Id: return "id";
  case Kind::Compose: return "compose";
  }
  return "";
}

} // namespace

std::string print(const ExprP& e) {
  std::string out;
  emit(*e, 0, out);
  return out;
}

std::string print(const Judgment& j) {
  std::string out;
  for (std::size_t i = 0; i < j.context.size(); ++i) {
    if (i) out += ", ";
    const Entry& en = j.context[i];
    if (en.type)
      out += "(" + en.name + " : " + print(en.type) + ")";
    else
      out += en.name;
  }
  out += out.empty() ? "|- " : " |- ";
  out += print(j.subject) + " type";
  return out;
}

std::string print(const Signature& s) {
  std::string out;
  for (const auto& c : s.comments) out += "# " + c + "\n";
  for (const auto& j : s.judgments) out += print(j) + "\n";
  return out;
}

nlohmann::json to_json(const ExprP& e) {
  nlohmann::json j = {{"kind", kind_name(e->kind)}};
  switch (e->kind) {
  case Kind::Var:
    j["name"] = e->name;
    break;
  case Kind::App: {
    j["head"] = to_json(e->args[0]);
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 1; i < e->args.size(); ++i) a.push_back(to_json(e->args[i]));
    j["args"] = a;
    break;
  }
  case Kind::Pi:
  case Kind::Sigma:
    j["var"] = e->name;
    j["domain"] = to_json(e->args[0]);
    j["body"] = to_json(e->args[1]);
    break;
  case Kind::Arrow:
  case Kind::Prod:
  case Kind::Id:
  case Kind::Compose:
    j["left"] = to_json(e->args[0]);
    j["right"] = to_json(e->args[1]);
    break;
  default:
    break;
  }
  return j;
}

nlohmann::json to_json(const Signature& s) {
  nlohmann::json js = nlohmann::json::array();
  for (const auto& j : s.judgments) {
    nlohmann::json ctx = nlohmann::json::array();
    for (const auto& e : j.context) {
      if (e.type)
        ctx.push_back({{"var", e.name}, {"type", to_json(e.type)}});
      else
        ctx.push_back({{"context", e.name}});
    }
    js.push_back({{"context", ctx}, {"subject", to_json(j.subject)}, {"text", print(j)}});
  }
  return {{"comments", s.comments}, {"judgments", js}};
}

// -- parsing -------------------------------------------------------------------

namespace {

struct Token {
  enum Type { Ident, Sym, End } type;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      if (i_ >= s_.size()) {
        out.push_back({Token::End, "", line_, col_});
        return out;
      }
      int l = line_, c = col_;
      char ch = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        out.push_back({Token::Ident, ident(), l, c});
      } else if (ch == '|' && peek(1) == '-') {
        adv(2);
        out.push_back({Token::Sym, "|-", l, c});
      } else if (ch == '-' && peek(1) == '>') {
        adv(2);
        out.push_back({Token::Sym, "->", l, c});
      } else if (std::string("(),:*.12").find(ch) != std::string::npos) {
        adv(1);
        out.push_back({Token::Sym, std::string(1, ch), l, c});
      } else {
        fail(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

  [[noreturn]] static void fail(const std::string& msg, int line, int col) {
    throw Error(ErrorKind::SyntaxError, msg + " at " + std::to_string(line) + ":" + std::to_string(col),
                {{"line", line}, {"column", col}});
  }

private:
  char peek(std::size_t k) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
  void adv(std::size_t k) {
    for (std::size_t t = 0; t < k && i_ < s_.size(); ++t, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        adv(1);
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') adv(1);
      } else {
        break;
      }
    }
  }
  std::string ident() {
    std::string out;
    while (i_ < s_.size()) {
      char ch = s_[i_];
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'') {
        out += ch;
        adv(1);
      } else if (ch == '{' || ch == '[') {
        char close = ch == '{' ? '}' : ']';
        int l = line_, c = col_;
        int depth = 0;
        do {
          if (i_ >= s_.size()) fail("unbalanced group in identifier", l, c);
          if (s_[i_] == ch) ++depth;
          if (s_[i_] == close) --depth;
          out += s_[i_];
          adv(1);
        } while (depth > 0);
      } else {
        break;
      }
    }
    return out;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Signature signature() {
    Signature s;
    while (cur().type != Token::End) s.judgments.push_back(judgment());
    return s;
  }

  ExprP whole_expr() {
    ExprP e = expr();
    if (cur().type != Token::End) unexpected();
    return e;
  }

private:
  const Token& cur() const { return t_[k_]; }
  bool is(const std::string& sym) const { return cur().type == Token::Sym && cur().text == sym; }
  bool is_kw(const std::string& kw) const { return cur().type == Token::Ident && cur().text == kw; }
  [[noreturn]] void unexpected() const {
    if (cur().type == Token::End) Lexer::fail("unexpected end of input", cur().line, cur().col);
    Lexer::fail("unexpected '" + cur().text + "'", cur().line, cur().col);
  }
  void expect(const std::string& sym) {
    if (!is(sym)) {
      if (cur().type == Token::End)
        Lexer::fail("expected '" + sym + "' before end of input", cur().line, cur().col);
      Lexer::fail("expected '" + sym + "' but found '" + cur().text + "'", cur().line, cur().col);
    }
    ++k_;
  }
  std::string name() {
    if (cur().type != Token::Ident || keyword(cur().text)) unexpected();
    return t_[k_++].text;
  }
  static bool keyword(const std::string& s) { return s == "Pi" || s == "Sg" || s == "Id" || s == "type"; }

  Judgment judgment() {
    Judgment j;
    if (!is("|-")) {
      while (true) {
        if (is("(")) {
          ++k_;
          Entry e;
          e.name = name();
          expect(":");
          e.type = expr();
          expect(")");
          j.context.push_back(e);
        } else {
          j.context.push_back({name(), nullptr});
        }
        if (!is(",")) break;
        ++k_;
      }
    }
    expect("|-");
    j.subject = expr();
    if (!is_kw("type")) {
      if (cur().type == Token::End) Lexer::fail("expected 'type' before end of input", cur().line, cur().col);
      Lexer::fail("expected 'type' but found '" + cur().text + "'", cur().line, cur().col);
    }
    ++k_;
    return j;
  }

  ExprP expr() {
    if (is_kw("Pi") || is_kw("Sg")) {
      bool is_pi = cur().text == "Pi";
      ++k_;
      expect("(");
      std::string x = name();
      expect(":");
      ExprP dom = expr();
      expect(")");
      ExprP body = expr();
      return is_pi ? pi(x, dom, body) : sigma(x, dom, body);
    }
    ExprP a = product();
    if (is("->")) {
      ++k_;
      return arrow(a, expr());
    }
    return a;
  }

  ExprP product() {
    ExprP a = composite();
    if (is("*")) {
      ++k_;
      return prod(a, product());
    }
    return a;
  }

  ExprP composite() {
    ExprP a = application();
    if (is(".")) {
      ++k_;
      return compose(a, composite());
    }
    return a;
  }

  ExprP application() {
    ExprP head = atom();
    while (is("(")) {
      ++k_;
      std::vector<ExprP> args{expr()};
      while (is(",")) {
        ++k_;
        args.push_back(expr());
      }
      expect(")");
      head = app(head, args);
    }
    return head;
  }

  ExprP atom() {
    if (is("1")) {
      ++k_;
      return unit();
    }
    if (is("2")) {
      ++k_;
      return boolean();
    }
    if (is("(")) {
      ++k_;
      ExprP e = expr();
      expect(")");
      return e;
    }
    if (is_kw("Id")) {
      ++k_;
      expect("(");
      ExprP a = expr();
      expect(",");
      ExprP b = expr();
      expect(")");
      return id(a, b);
    }
    if (is_kw("Pi") || is_kw("Sg")) return expr();
    return var(name());
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
};

} // namespace

Signature parse(const std::string& text) { return Parser(Lexer(text).run()).signature(); }

ExprP parse_expr(const std::string& text) { return Parser(Lexer(text).run()).whole_expr(); }

// -- scope and alpha-equivalence -------------------------------------------------

namespace {

void free_vars(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind) {
  case Kind::Var:
    if (!bound.count(e.name)) out.insert(e.name);
    break;
  case Kind::Pi:
  case Kind::Sigma: {
    free_vars(*e.args[0], bound, out);
    bool fresh = bound.insert(e.name).second;
    free_vars(*e.args[1], bound, out);
    if (fresh) bound.erase(e.name);
    break;
  }
  default:
    for (const auto& a : e.args) free_vars(*a, bound, out);
  }
}

std::set<std::string> free_vars(const ExprP& e) {
  std::set<std::string> bound, out;
  free_vars(*e, bound, out);
  return out;
}

using Env = std::vector<std::string>;

int lookup(const Env& env, const std::string& n) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
    if (env[i] == n) return i;
  return -1;
}

bool alpha(const Expr& a, Env& ea, const Expr& b, Env& eb) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
  case Kind::Var: {
    int ia = lookup(ea, a.name), ib = lookup(eb, b.name);
    if (ia >= 0 || ib >= 0) return ia == ib;
    return a.name == b.name;
  }
  case Kind::Pi:
  case Kind::Sigma: {
    if (!alpha(*a.args[0], ea, *b.args[0], eb)) return false;
    ea.push_back(a.name);
    eb.push_back(b.name);
    bool ok = alpha(*a.args[1], ea, *b.args[1], eb);
    ea.pop_back();
    eb.pop_back();
    return ok;
  }
  default:
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!alpha(*a.args[i], ea, *b.args[i], eb)) return false;
    return true;
  }
}

bool alpha(const Judgment& a, const Judgment& b) {
  if (a.context.size() != b.context.size()) return false;
  Env ea, eb;
  for (std::size_t i = 0; i < a.context.size(); ++i) {
    const Entry &x = a.context[i], &y = b.context[i];
    if (!x.type != !y.type) return false;
    if (!x.type) {
      if (x.name != y.name) return false;
      continue;
    }
    if (!alpha(*x.type, ea, *y.type, eb)) return false;
    ea.push_back(x.name);
    eb.push_back(y.name);
  }
  return alpha(*a.subject, ea, *b.subject, eb);
}

} // namespace

void check_scope(const Signature& s) {
  for (std::size_t k = 0; k < s.judgments.size(); ++k) {
    const Judgment& j = s.judgments[k];
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < j.context.size(); ++i)
      if (!pos.emplace(j.context[i].name, i).second)
        throw Error(ErrorKind::ScopeError, "context binds '" + j.context[i].name + "' twice",
                    {{"judgment", k}, {"name", j.context[i].name}});
    for (std::size_t i = 0; i < j.context.size(); ++i) {
      if (!j.context[i].type) continue;
      for (const auto& n : free_vars(j.context[i].type)) {
        auto it = pos.find(n);
        if (it != pos.end() && it->second >= i)
          throw Error(ErrorKind::ScopeError, "'" + n + "' is used before it is bound",
                      {{"judgment", k}, {"name", n}, {"entry", i}});
      }
    }
  }
}

bool alpha_equal(const Signature& a, const Signature& b) {
  check_scope(a);
  check_scope(b);
  if (a.judgments.size() != b.judgments.size()) return false;
  for (std::size_t i = 0; i < a.judgments.size(); ++i)
    if (!alpha(a.judgments[i], b.judgments[i])) return false;
  return true;
}

} // namespace invcat::tt
