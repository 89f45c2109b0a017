#ifndef INVCAT_BASECAT_HPP
#define INVCAT_BASECAT_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "invcat/presheaf.hpp"

namespace invcat {

enum class BaseKind { FinSet, SSet };

struct FibrationResult {
  bool ok = true;
  nlohmann::json certificate; // the unfillable lifting problem when !ok
  explicit operator bool() const { return ok; }
};

/// A base category with fibrations and prefibrations. Two executable
/// instances: finite sets (fibrations = surjections) and truncated simplicial
/// sets (fibrations = maps with fillers for all horns of dimension <= trunc).
/// Prefibrations are all maps unless `prefibrations_are_fibrations` is set.
struct BaseCat {
  BaseKind kind = BaseKind::FinSet;
  int trunc = 0;
  bool prefibrations_are_fibrations = false;

  static BaseCat finset() { return {BaseKind::FinSet, 0, false}; }
  static BaseCat ssets(int n = 3) { return {BaseKind::SSet, n, false}; }

  std::string name() const;
  Obj terminal() const { return point(trunc); }
  Obj initial() const { return empty_obj(trunc); }

  FibrationResult is_fibration(const Map& f) const;
  bool is_prefibration(const Map& f) const;
  FibrationResult is_fibrant(const Obj& X) const { return is_fibration(to_point(X)); }

  /// Throws InstanceMismatch if X does not live in this instance.
  void check_member(const Obj& X) const;

  friend bool operator==(const BaseCat&, const BaseCat&) = default;
};

FibrationResult is_surjective(const Map& f);
FibrationResult is_kan_fibration(const Map& f);

// -- limits ----------------------------------------------------------------

struct Pullback {
  Obj object;
  Map p1, p2;
  std::vector<std::map<std::pair<int, int>, int>> index; // per level

  int find(int m, int a, int b) const; // -1 if (a, b) is not a matching pair
};

/// A x_C B for f : A -> C, g : B -> C; elements are the pairs "(a,b)" in
/// lexicographic order of component positions.
Pullback pullback(const Map& f, const Map& g);
Pullback product(const Obj& A, const Obj& B);
/// The map into a pullback induced by u : T -> A and v : T -> B.
Map pair_into(const Pullback& pb, const Map& u, const Map& v);

struct LimitEdge {
  int from = 0, to = 0;
  Map map; // nodes[from] -> nodes[to]
};

struct Limit {
  Obj object;
  std::vector<Map> projections;
  std::vector<std::vector<std::vector<int>>> tuples; // tuples[m][e] = component positions
};

/// Limit of a finite diagram: the subobject of the product of all nodes on
/// the matching families. Throws NonCommutingDiagram if an edge has the
/// wrong endpoints.
Limit finite_limit(int trunc, const std::vector<Obj>& nodes, const std::vector<LimitEdge>& edges);

struct Coproduct {
  Obj object;
  std::vector<Map> injections;
  std::vector<std::vector<std::pair<int, int>>> origin; // origin[m][e] = (summand, element)
};
/// Elements are labelled "tag:label".
Coproduct coproduct(int trunc, const std::vector<std::pair<std::string, Obj>>& summands);

// -- fibers and dependent products -----------------------------------------

/// Delta[m] x_Z S for f : S -> Z and z in Z_m, together with its projections.
/// Level k holds the pairs (theta : [k] -> [m], s) with f(s) = theta^* z.
struct Fiber {
  int level = 0, base = 0;
  Obj object;
  std::vector<std::vector<int>> theta; // theta[k][e] = index in monotone_maps(k, level)
  std::vector<std::vector<int>> total; // total[k][e] = element of S
  std::vector<std::map<std::pair<int, int>, int>> index;

  int find(int k, int theta_index, int s) const;
};
Fiber make_fiber(const Map& f, int m, int z);

/// Enumerates the maps s : F -> X with g . s = a, calling `visit` on each
/// (levelwise index vectors). Stops early if `visit` returns false.
void enumerate_lifts(const Obj& F, const std::vector<std::vector<int>>& a, const Map& g,
                     const std::function<bool(const std::vector<std::vector<int>>&)>& visit);

/// Dependent product of g : X -> Y along f : Y -> Z, computed levelwise as
/// the compatible section families over each Delta[m] x_Z Y.
struct DepProduct {
  Map proj; // Pi_f(g) -> Z
  std::vector<std::vector<int>> base;                          // base[m][e] = z
  std::vector<std::vector<std::vector<std::vector<int>>>> sections; // sections[m][e] = section levels
  std::vector<std::map<int, Fiber>> fibers;                    // fibers[m][z]

  const Fiber& fiber_of(int m, int e) const { return fibers[m].at(base[m][e]); }
};
DepProduct dep_product(const Map& f, const Map& g);

/// Exponential v^u in the slice over P for u : U -> P and v : V -> P, as the
/// dependent product along u of the pullback U x_P V -> U.
struct Exponential {
  Pullback uv; // U x_P V
  DepProduct pi;
};
Exponential slice_exponential(const Map& u, const Map& v);

} // namespace invcat

#endif
