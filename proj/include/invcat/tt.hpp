#ifndef INVCAT_TT_HPP
#define INVCAT_TT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invcat/inverse_cat.hpp"

namespace invcat::tt {

// Grammar (whitespace-insensitive, '#' starts a comment):
//
//   signature := judgment*
//   judgment  := context '|-' expr 'type'
//   context   := empty | entry (',' entry)*
//   entry     := '(' ident ':' expr ')' | ident
//   expr      := 'Pi' '(' ident ':' expr ')' expr
//              | 'Sg' '(' ident ':' expr ')' expr
//              | prod '->' expr | prod
//   prod      := comp '*' prod | comp
//   comp      := app '.' comp | app
//   app       := atom ('(' expr (',' expr)* ')')*
//   atom      := ident | '1' | '2' | 'Id' '(' expr ',' expr ')' | '(' expr ')'
//
// Identifiers start with a letter and continue with letters, digits, '_',
// '\'' and balanced {...} or [...] groups, e.g. A_{G/e}, I[y,x], a_0'.

enum class Kind { Var, Unit, Bool, App, Pi, Sigma, Arrow, Prod, Id, Compose };

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  std::string name;          // Var name or binder variable
  std::vector<ExprP> args;   // App: head then arguments; binders: domain, body; binary: left, right
};

ExprP var(const std::string& n);
ExprP unit();
ExprP boolean();
ExprP app(ExprP head, std::vector<ExprP> args);
ExprP app(const std::string& head, std::vector<ExprP> args);
ExprP pi(const std::string& x, ExprP dom, ExprP body);
ExprP sigma(const std::string& x, ExprP dom, ExprP body);
ExprP arrow(ExprP a, ExprP b);
ExprP prod(ExprP a, ExprP b);
ExprP id(ExprP a, ExprP b);
ExprP compose(ExprP f, ExprP g);

struct Entry {
  std::string name;
  ExprP type; // null for an opaque context symbol such as Gamma
};

struct Judgment {
  std::vector<Entry> context;
  ExprP subject;
};

struct Signature {
  std::vector<std::string> comments;
  std::vector<Judgment> judgments;
};

std::string print(const ExprP& e);
std::string print(const Judgment& j);
std::string print(const Signature& s);

nlohmann::json to_json(const ExprP& e);
nlohmann::json to_json(const Signature& s);

/// Throws SyntaxError with detail {line, column}.
Signature parse(const std::string& text);
ExprP parse_expr(const std::string& text);

/// Throws ScopeError if a context binds a name twice or uses a name before
/// the entry that binds it.
void check_scope(const Signature& s);

/// Equality up to renaming of bound variables; judgment order matters.
/// Throws ScopeError.
bool alpha_equal(const Signature& a, const Signature& b);

// -- emission ----------------------------------------------------------------

enum class Mode { InvCat, Diagram, Matching };

/// Judgments for the presentation (mode InvCat), the Reedy fibrant diagram
/// families A_x (mode Diagram) or the matching-object types (mode Matching).
/// Annotations "spaces" and "homs" replace I[x] and I[y,x] by named types,
/// with "1" for the unit and "2" for the booleans. Throws UnorderedObjects
/// if `order` is not a topological order.
Signature emit_signature(const InvCat& I, Mode mode, const std::optional<std::vector<Label>>& order = std::nullopt);

/// The type of diagram maps A -> B, for A over Gamma and B over Delta.
Signature emit_hom_type(const InvCat& I, const std::optional<std::vector<Label>>& order = std::nullopt);

enum class PathMode { Base, Glued };
Signature emit_path_context(PathMode mode);

/// Erases unit binders and unit factors, expands boolean-indexed families
/// into true/false copies and splits product-typed context entries.
Signature simplify_units_and_booleans(const Signature& s);

/// Name of the family at object x with the given stem: A_x, A_{G/e}.
std::string subscript(const std::string& stem, const std::string& x);

} // namespace invcat::tt

#endif
