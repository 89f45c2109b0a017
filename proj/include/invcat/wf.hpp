#ifndef INVCAT_WF_HPP
#define INVCAT_WF_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "invcat/error.hpp"

namespace invcat {

using Label = std::string;
using LabelPair = std::pair<Label, Label>; // (y, x) means y < x

/// A finite well-founded poset. The stored relation is always transitively
/// closed; the generating pairs are kept for serialization.
class WfPoset {
public:
  WfPoset() = default;

  /// Closes `lt` transitively. Throws CycleFound (detail.path is the cycle),
  /// DuplicateLabel or UnknownLabel.
  static WfPoset make(std::vector<Label> elements, std::vector<LabelPair> lt);

  const std::vector<Label>& elements() const { return elements_; }
  const std::vector<LabelPair>& generators() const { return generators_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(const Label& x) const { return index_.count(x) != 0; }
  std::size_t index_of(const Label& x) const;

  /// y < x in the closed relation.
  bool lt(const Label& y, const Label& x) const;
  bool le(const Label& y, const Label& x) const { return y == x || lt(y, x); }

  /// All closed pairs (y, x) with y < x, sorted.
  std::vector<LabelPair> closed_pairs() const;

  /// Elements below x (strictly), in topological order.
  std::vector<Label> below(const Label& x) const;

  /// Restriction to {y : y < x}.
  WfPoset strict_slice(const Label& x) const;
  /// Restriction to {y : y <= x}.
  WfPoset lax_slice(const Label& x) const;
  /// Full sub-poset on `subset` (order of `elements()` kept).
  WfPoset restrict(const std::set<Label>& subset) const;

  bool is_down_closed(const std::set<Label>& subset) const;
  std::vector<Label> maximal() const;

  /// Kahn's algorithm with lexicographic tie-breaking: lower elements first.
  std::vector<Label> topo_order() const;
  bool is_topological(const std::vector<Label>& order) const;

  nlohmann::json to_json() const;
  static WfPoset from_json(const nlohmann::json& j);

  friend bool operator==(const WfPoset& a, const WfPoset& b);

private:
  std::vector<Label> elements_;
  std::vector<LabelPair> generators_;
  std::map<Label, std::size_t> index_;
  std::vector<std::vector<bool>> lt_; // lt_[y][x]
};

/// Returns a cycle [a, b, ..., a] if `lt` is not well-founded on `elements`.
std::optional<std::vector<Label>> find_cycle(const std::vector<Label>& elements,
                                             const std::vector<LabelPair>& lt);

/// Convenience wrapper matching the checker's contract.
inline WfPoset check_well_founded(const std::vector<Label>& elements,
                                  const std::vector<LabelPair>& lt) {
  return WfPoset::make(elements, lt);
}

/// What a recursion step hands back at x: the value at x and one datum per
/// strict predecessor y (the component of the cocone at y < x).
template <class V, class E>
struct Extension {
  V vertex;
  std::map<Label, E> components;
};

/// The restriction of a section to the strict slice below x.
template <class V, class E>
struct PartialSection {
  std::map<Label, const V*> vertices;
  std::map<LabelPair, const E*> edges; // (y, x') with y < x' < x
};

template <class V, class E>
struct Section {
  std::map<Label, V> vertices;
  std::map<LabelPair, E> edges; // (y, x) with y < x
};

/// Well-founded recursion. `step(x, partial)` must extend the partial section
/// on the strict slice below x. Evaluates along `order` (a topological order
/// of P, default `topo_order()`). Exceptions thrown by `step` are rethrown as
/// StepFailure naming the element.
template <class V, class E>
Section<V, E> recurse(
    const WfPoset& P,
    const std::function<Extension<V, E>(const Label&, const PartialSection<V, E>&)>& step,
    std::optional<std::vector<Label>> order = std::nullopt) {
  std::vector<Label> seq = order ? *order : P.topo_order();
  if (!P.is_topological(seq))
    throw Error(ErrorKind::StepFailure, "evaluation order is not a topological order of the poset");
  Section<V, E> out;
  for (const auto& x : seq) {
    PartialSection<V, E> partial;
    auto preds = P.below(x);
    for (const auto& y : preds) {
      partial.vertices[y] = &out.vertices.at(y);
      for (const auto& z : preds)
        if (P.lt(z, y)) partial.edges[{z, y}] = &out.edges.at({z, y});
    }
    std::optional<Extension<V, E>> ext;
    try {
      ext.emplace(step(x, partial));
    } catch (const Error& e) {
      throw Error(ErrorKind::StepFailure, "recursion step failed at " + x + ": " + e.what(),
                  {{"element", x}, {"cause", e.to_json()}});
    } catch (const std::exception& e) {
      throw Error(ErrorKind::StepFailure, "recursion step failed at " + x + ": " + e.what(),
                  {{"element", x}});
    }
    for (const auto& y : preds) {
      auto it = ext->components.find(y);
      if (it == ext->components.end())
        throw Error(ErrorKind::StepFailure, "step at " + x + " gave no component at " + y,
                    {{"element", x}, {"missing", y}});
      out.edges.emplace(LabelPair{y, x}, std::move(it->second));
    }
    out.vertices.emplace(x, std::move(ext->vertex));
  }
  return out;
}

/// Value-only recursion: g(x) = step(x, g restricted below x).
template <class V>
std::map<Label, V> recurse_values(
    const WfPoset& P,
    const std::function<V(const Label&, const std::map<Label, const V*>&)>& step,
    std::optional<std::vector<Label>> order = std::nullopt) {
  struct Unit {};
  std::function<Extension<V, Unit>(const Label&, const PartialSection<V, Unit>&)> lifted =
      [&](const Label& x, const PartialSection<V, Unit>& partial) {
        Extension<V, Unit> ext{step(x, partial.vertices), {}};
        for (const auto& [y, _] : partial.vertices) ext.components[y] = Unit{};
        return ext;
      };
  return recurse<V, Unit>(P, lifted, std::move(order)).vertices;
}

} // namespace invcat

#endif
