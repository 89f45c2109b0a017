#ifndef INVCAT_SEGAL_HPP
#define INVCAT_SEGAL_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invcat/inverse_cat.hpp"

namespace invcat {

/// A category internal to the base: composable pairs are (f, g) with
/// tgt f = src g, composing to "g after f".
struct InternalCat {
  BaseCat base;
  Obj K0, K1;
  Map src, tgt, id;
  Pullback composable; // K1 x_{K0} K1 along (tgt, src)
  Map comp;
};

/// Checks unit, associativity and source/target laws elementwise. Throws
/// CompositionMismatch or AssocFailure.
void check_category_axioms(const InternalCat& K);

/// The internal category with objects the coproduct of the I(x) and
/// morphisms the coproduct of the I(x,y) and identity copies of the I(x).
/// Object labels are "x:a"; morphism labels "x>y:f" and "id_x:a".
InternalCat sigma(const InvCat& I);

/// A finite category as an internal category in finite sets.
InternalCat internal_from_category(const FinCategory& C);

/// The object of composable n-chains, labelled "f1|...|fn" (n >= 2).
Obj nerve_level(const InternalCat& K, int n);

struct SegalReport {
  bool ok = true;
  nlohmann::json detail = nlohmann::json::object();
  nlohmann::json to_json() const;
};

/// Each I(x) fibrant and both legs of every I(x,y) fibrations.
SegalReport is_strongly_segal(const InvCat& I);
/// K0 fibrant and source and target fibrations.
SegalReport is_strongly_segal(const InternalCat& K);

struct EIReport {
  bool is_ei = true;
  bool well_founded = true;
  std::vector<Label> components;               // one representative label each
  std::vector<LabelPair> relation;             // (lower, upper) between components
  std::optional<WfPoset> precedence;           // when well-founded
  std::optional<std::vector<Label>> cycle;     // otherwise
  nlohmann::json non_invertible;               // an endomorphism without inverse, if any
  bool is_inverse_ei() const { return is_ei && well_founded; }
  nlohmann::json to_json() const;
};

/// Works on the underlying category at level 0, with objects grouped into
/// connected components of K0.
EIReport ei_inverse_diagnostic(const InternalCat& K);

} // namespace invcat

#endif
