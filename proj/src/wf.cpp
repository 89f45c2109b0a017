#include "invcat/wf.hpp"

#include <algorithm>
#include <queue>

namespace invcat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::CycleFound: return "CycleFound";
  case ErrorKind::DuplicateLabel: return "DuplicateLabel";
  case ErrorKind::UnknownLabel: return "UnknownLabel";
  case ErrorKind::StepFailure: return "StepFailure";
  case ErrorKind::NonCommutingDiagram: return "NonCommutingDiagram";
  case ErrorKind::CompositionMismatch: return "CompositionMismatch";
  case ErrorKind::SimplicialIdentity: return "SimplicialIdentity";
  case ErrorKind::InvalidMap: return "InvalidMap";
  case ErrorKind::AssocFailure: return "AssocFailure";
  case ErrorKind::SpanLegNotPrefibration: return "SpanLegNotPrefibration";
  case ErrorKind::MissingComposite: return "MissingComposite";
  case ErrorKind::LabelClash: return "LabelClash";
  case ErrorKind::InvalidProfile: return "InvalidProfile";
  case ErrorKind::InvalidDiagram: return "InvalidDiagram";
  case ErrorKind::TargetMismatch: return "TargetMismatch";
  case ErrorKind::NotPrefibrantBelow: return "NotPrefibrantBelow";
  case ErrorKind::MatchingObjectFailure: return "MatchingObjectFailure";
  case ErrorKind::NotFibrantBase: return "NotFibrantBase";
  case ErrorKind::NotPrefibrant: return "NotPrefibrant";
  case ErrorKind::SizeBoundExceeded: return "SizeBoundExceeded";
  case ErrorKind::UniversalPropertyViolation: return "UniversalPropertyViolation";
  case ErrorKind::BoundExceeded: return "BoundExceeded";
  case ErrorKind::NotPrime: return "NotPrime";
  case ErrorKind::NotAGroup: return "NotAGroup";
  case ErrorKind::UnorderedObjects: return "UnorderedObjects";
  case ErrorKind::ScopeError: return "ScopeError";
  case ErrorKind::SyntaxError: return "SyntaxError";
  case ErrorKind::UnresolvedName: return "UnresolvedName";
  case ErrorKind::InstanceMismatch: return "InstanceMismatch";
  }
  return "Unknown";
}

std::optional<std::vector<Label>> find_cycle(const std::vector<Label>& elements,
                                             const std::vector<LabelPair>& lt) {
  std::map<Label, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
  // edges y -> x for y < x; a cycle in either direction is a cycle.
  std::vector<std::vector<std::size_t>> succ(elements.size());
  for (const auto& [y, x] : lt) succ[index.at(y)].push_back(index.at(x));
  for (auto& s : succ) std::sort(s.begin(), s.end());

  enum Colour { White, Grey, Black };
  std::vector<Colour> colour(elements.size(), White);
  std::vector<std::size_t> stack;
  std::optional<std::vector<Label>> found;

  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    colour[v] = Grey;
    stack.push_back(v);
    for (auto w : succ[v]) {
      if (colour[w] == Grey) {
        std::vector<Label> path;
        auto it = std::find(stack.begin(), stack.end(), w);
        for (; it != stack.end(); ++it) path.push_back(elements[*it]);
        path.push_back(elements[w]);
        found = path;
        return true;
      }
      if (colour[w] == White && dfs(w)) return true;
    }
    stack.pop_back();
    colour[v] = Black;
    return false;
  };
  for (std::size_t v = 0; v < elements.size(); ++v)
    if (colour[v] == White && dfs(v)) break;
  return found;
}

WfPoset WfPoset::make(std::vector<Label> elements, std::vector<LabelPair> lt) {
  WfPoset P;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!P.index_.emplace(elements[i], i).second)
      throw Error(ErrorKind::DuplicateLabel, "duplicate label '" + elements[i] + "'",
                  {{"label", elements[i]}});
  }
  for (const auto& [y, x] : lt) {
    for (const auto& l : {y, x})
      if (!P.index_.count(l))
        throw Error(ErrorKind::UnknownLabel, "unknown label '" + l + "' in relation", {{"label", l}});
  }
  if (auto cycle = find_cycle(elements, lt))
    throw Error(ErrorKind::CycleFound, "relation is not well-founded", {{"path", *cycle}});

  const std::size_t n = elements.size();
  P.lt_.assign(n, std::vector<bool>(n, false));
  for (const auto& [y, x] : lt) P.lt_[P.index_.at(y)][P.index_.at(x)] = true;
  // Warshall
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (P.lt_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (P.lt_[k][j]) P.lt_[i][j] = true;

  std::sort(lt.begin(), lt.end());
  lt.erase(std::unique(lt.begin(), lt.end()), lt.end());
  P.elements_ = std::move(elements);
  P.generators_ = std::move(lt);
  return P;
}

std::size_t WfPoset::index_of(const Label& x) const {
  auto it = index_.find(x);
  if (it == index_.end())
    throw Error(ErrorKind::UnknownLabel, "unknown label '" + x + "'", {{"label", x}});
  return it->second;
}

bool WfPoset::lt(const Label& y, const Label& x) const {
  return lt_[index_of(y)][index_of(x)];
}

std::vector<LabelPair> WfPoset::closed_pairs() const {
  std::vector<LabelPair> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (lt_[i][j]) out.emplace_back(elements_[i], elements_[j]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Label> WfPoset::topo_order() const {
  const std::size_t n = size();
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lt_[i][j]) ++indeg[j];
  std::priority_queue<Label, std::vector<Label>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(elements_[i]);
  std::vector<Label> out;
  while (!ready.empty()) {
    Label v = ready.top();
    ready.pop();
    out.push_back(v);
    auto i = index_.at(v);
    for (std::size_t j = 0; j < n; ++j)
      if (lt_[i][j] && --indeg[j] == 0) ready.push(elements_[j]);
  }
  return out;
}

bool WfPoset::is_topological(const std::vector<Label>& order) const {
  if (order.size() != size()) return false;
  std::map<Label, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!contains(order[i]) || !pos.emplace(order[i], i).second) return false;
  }
  for (const auto& [y, x] : closed_pairs())
    if (pos.at(y) > pos.at(x)) return false;
  return true;
}

std::vector<Label> WfPoset::below(const Label& x) const {
  auto xi = index_of(x);
  std::vector<Label> out;
  for (const auto& y : topo_order())
    if (lt_[index_.at(y)][xi]) out.push_back(y);
  return out;
}

WfPoset WfPoset::restrict(const std::set<Label>& subset) const {
  std::vector<Label> els;
  for (const auto& e : elements_)
    if (subset.count(e)) els.push_back(e);
  for (const auto& s : subset) index_of(s);
  std::vector<LabelPair> rel;
  for (const auto& [y, x] : closed_pairs())
    if (subset.count(y) && subset.count(x)) rel.emplace_back(y, x);
  return make(els, rel);
}

WfPoset WfPoset::strict_slice(const Label& x) const {
  auto v = below(x);
  return restrict(std::set<Label>(v.begin(), v.end()));
}

WfPoset WfPoset::lax_slice(const Label& x) const {
  auto v = below(x);
  std::set<Label> s(v.begin(), v.end());
  s.insert(x);
  return restrict(s);
}

bool WfPoset::is_down_closed(const std::set<Label>& subset) const {
  for (const auto& x : subset)
    for (const auto& y : below(x))
      if (!subset.count(y)) return false;
  return true;
}

std::vector<Label> WfPoset::maximal() const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < size(); ++i) {
    bool top = true;
    for (std::size_t j = 0; j < size(); ++j)
      if (lt_[i][j]) top = false;
    if (top) out.push_back(elements_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json WfPoset::to_json() const {
  nlohmann::json lt = nlohmann::json::array();
  for (const auto& [y, x] : generators_) lt.push_back({y, x});
  return {{"elements", elements_}, {"lt", lt}};
}

WfPoset WfPoset::from_json(const nlohmann::json& j) {
  std::vector<Label> els = j.at("elements").get<std::vector<Label>>();
  std::vector<LabelPair> lt;
  if (j.contains("lt"))
    for (const auto& p : j.at("lt")) lt.emplace_back(p.at(0).get<Label>(), p.at(1).get<Label>());
  return make(std::move(els), std::move(lt));
}

bool operator==(const WfPoset& a, const WfPoset& b) {
  if (a.elements_ != b.elements_) return false;
  return a.closed_pairs() == b.closed_pairs();
}

} // namespace invcat
