#ifndef INVCAT_INVERSE_CAT_HPP
#define INVCAT_INVERSE_CAT_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "invcat/basecat.hpp"
#include "invcat/wf.hpp"

namespace invcat {

/// A span I(x) <- S -> I(y).
struct Span {
  Obj obj;
  Map left, right;
};

/// Composition I(x,y) x_{I(y)} I(y,z) -> I(x,z).
struct Composition {
  Pullback domain;
  Map map;
};

/// Hom keys are (upper, lower): hom(x, y) exists when y < x.
using HomKey = std::pair<Label, Label>;
using CompKey = std::tuple<Label, Label, Label>; // (x, y, z) with z < y < x

struct InvCat {
  BaseCat base;
  WfPoset objects;
  std::map<Label, Obj> spaces;
  std::map<HomKey, Span> homs;
  std::map<CompKey, Composition> comps;
  nlohmann::json annotations = nlohmann::json::object(); // optional type-theory names

  const Obj& space(const Label& x) const;
  const Span& hom(const Label& x, const Label& y) const;
  const Composition& comp(const Label& x, const Label& y, const Label& z) const;
  bool empty() const { return objects.empty(); }
};

using InvCatPtr = std::shared_ptr<const InvCat>;

/// Checks every condition of a C-inverse category and freezes the result.
/// Throws MissingComposite, SpanLegNotPrefibration, NonCommutingDiagram or
/// AssocFailure (with the witnessing element tuple).
InvCatPtr validate(InvCat candidate);

/// The composition with the given label table "(f,g)" -> h, per level.
Composition make_composition(const Span& xy, const Span& yz, const Span& xz,
                             const std::vector<std::map<Label, Label>>& table);

enum class SliceMode { Strict, Lax };
InvCatPtr down_closed_slice(const InvCat& I, SliceMode mode, const Label& x);
/// Full subcategory on a down-closed subset.
InvCatPtr full_subcategory(const InvCat& I, const std::set<Label>& subset);

struct Diagram;
/// Adjoins x at the top of J with the hom data packaged by `profile`.
InvCatPtr collage_extend(const InvCat& J, const Label& x, const Obj& Ix, const Diagram& profile);
/// As collage_extend, with x placed above the support of `profile` only.
InvCatPtr adjoin_object(const InvCat& J, const Label& x, const Obj& Ix, const Diagram& profile);

/// Every space and hom the point, on the given poset.
InvCatPtr trivial_invcat(const WfPoset& P, const BaseCat& base = BaseCat::finset());

/// An ordinary finite inverse category: hom sets for y < x and composition
/// tables (f, g) -> g.f keyed by (x, y, z).
struct OrdinaryInverseCat {
  WfPoset objects;
  std::map<HomKey, std::vector<Label>> homs;
  std::map<CompKey, std::map<std::pair<Label, Label>, Label>> comp;
};
InvCatPtr embed_ordinary(const OrdinaryInverseCat& C, const BaseCat& base = BaseCat::finset());

/// Structural equality (same labels, tables and composition values).
bool structurally_equal(const InvCat& a, const InvCat& b);

} // namespace invcat

#endif
