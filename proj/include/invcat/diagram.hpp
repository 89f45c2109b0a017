#ifndef INVCAT_DIAGRAM_HPP
#define INVCAT_DIAGRAM_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "invcat/inverse_cat.hpp"

namespace invcat {

/// A span Gamma <- A_x -> I(x).
struct Component {
  Obj obj;
  Map to_gamma, to_space;
};

/// The action A_x x_{I(x)} I(x,y) -> A_y.
struct Action {
  Pullback domain;
  Map map;
};

/// An I-diagram over gamma, defined on a down-closed set of objects (the
/// keys of `comps`).
struct Diagram {
  InvCatPtr invcat;
  Obj gamma;
  std::map<Label, Component> comps;
  std::map<HomKey, Action> actions; // (x, y) with y < x

  std::set<Label> support() const;
  const Component& comp(const Label& x) const;
  const Action& action(const Label& x, const Label& y) const;
};

using DiagramPtr = std::shared_ptr<const Diagram>;

/// Checks spans, action legs and associativity. Throws InvalidDiagram,
/// NonCommutingDiagram or AssocFailure.
DiagramPtr validate_diagram(Diagram D);

/// The action with the given label table "(a,f)" -> b, per level.
Action make_action(const Component& x, const Span& hom, const Component& y,
                   const std::vector<std::map<Label, Label>>& table);

/// I(x,-) as a diagram over I(x) on the strict slice below x.
DiagramPtr collage_profile(const InvCatPtr& I, const Label& x);
/// The restriction to a down-closed subset of the support.
DiagramPtr restrict_diagram(const Diagram& D, const std::set<Label>& subset);
/// The terminal diagram over gamma: components I(x) x gamma.
DiagramPtr terminal_diagram(const InvCatPtr& I, const Obj& gamma);
/// Pullback along f : Y -> gamma.
DiagramPtr reindex(const Diagram& D, const Map& f);

/// Span maps A_x -> B_x over gamma commuting with the actions.
struct DiagramMap {
  DiagramPtr src, tgt;
  std::map<Label, Map> comps;
};

/// Throws InvalidDiagram or NonCommutingDiagram naming the failing object.
DiagramMap make_diagram_map(DiagramPtr src, DiagramPtr tgt, std::map<Label, Map> comps);
DiagramMap identity_map(const DiagramPtr& A);
DiagramMap compose(const DiagramMap& g, const DiagramMap& f); // g . f
DiagramMap restrict_map(const DiagramMap& f, const DiagramPtr& src, const DiagramPtr& tgt);

/// A x_B C for f : A -> B and g : C -> B, computed componentwise.
struct DiagramPullback {
  DiagramPtr object;
  DiagramMap p1, p2;
};
DiagramPullback pullback(const DiagramMap& f, const DiagramMap& g);

bool structurally_equal(const Diagram& a, const Diagram& b);

} // namespace invcat

#endif
