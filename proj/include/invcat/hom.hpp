#ifndef INVCAT_HOM_HPP
#define INVCAT_HOM_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "invcat/diagram.hpp"

namespace invcat {

/// A map p*A -> q*B over Delta[level] for p in X_level, q in Y_level:
/// comps[y][k][i] is the image of element i (at level k) of the fiber of
/// A_y over p, as an index into the fiber of B_y over q.
struct Witness {
  int level = 0;
  int p = 0, q = 0;
  std::map<Label, std::vector<std::vector<int>>> comps;

  /// Canonical serialization, used as the element label of hom carriers.
  std::string key(const Presheaf& X, const Presheaf& Y) const;
  Witness restricted(const std::set<Label>& subset) const;
};

struct HomObject {
  DiagramPtr src, tgt;
  std::set<Label> support;
  Obj carrier;
  Map leg_x, leg_y;                        // carrier -> X, carrier -> Y
  std::vector<std::vector<Witness>> witness; // witness[m][e]

  int find(const Witness& w) const; // -1 if absent
  int size() const { return static_cast<int>(carrier->total()); }
  /// The leg into X x Y.
  Map leg(const Pullback& xy) const { return pair_into(xy, leg_x, leg_y); }

  std::vector<std::unordered_map<std::string, int>> by_key;
};

using HomPtr = std::shared_ptr<const HomObject>;

/// Recursive hom-object construction for diagrams on one inverse category.
/// Results are memoized by (source, target, support); diagrams are kept
/// alive by the engine.
class HomEngine {
public:
  explicit HomEngine(InvCatPtr I);

  const InvCatPtr& invcat() const { return I_; }

  /// The hom-object on the whole support shared by A and B.
  HomPtr hom(const DiagramPtr& A, const DiagramPtr& B);
  /// The hom-object of the restrictions to a down-closed subset.
  HomPtr hom(const DiagramPtr& A, const DiagramPtr& B, const std::set<Label>& support);

  /// I(x,-) over I(x) on the strict slice below x (cached).
  DiagramPtr profile(const Label& x);
  /// M_x A = hom of I(x,-) into A over the strict slice; legs to I(x) and gamma.
  HomPtr matching(const DiagramPtr& A, const Label& x);
  /// A_x -> M_x A.
  Map matching_map(const DiagramPtr& A, const Label& x);
  /// M_x f : M_x A -> M_x B.
  Map matching_functor(const DiagramMap& f, const Label& x);

  /// The fiber of A_y -> gamma over p at level m (cached).
  const Fiber& fiber(const DiagramPtr& A, const Label& y, int m, int p);

  /// w followed by g, for w a witness into g.src.
  Witness postcompose(const Witness& w, const DiagramMap& g);
  /// Composite of witnesses A -> B -> C.
  Witness compose(const Witness& second, const Witness& first);

  /// hom(A, B) -> hom(A, B') induced by g : B -> B'.
  Map induced_map(const HomPtr& AB, const DiagramMap& g, const HomPtr& AB2);
  /// hom(A,B) x_Y hom(B,C) -> hom(A,C).
  struct HomComposition {
    Pullback domain;
    Map map;
  };
  HomComposition composition(const HomPtr& AB, const HomPtr& BC, const HomPtr& AC);

  /// Restriction hom_S(A,B) -> hom_T(A,B) for T a down-closed subset of S.
  Map restriction(const HomPtr& big, const HomPtr& small);

  /// The limit over the opposite of the object poset of the lax-slice
  /// hom-objects (together with X x Y), relabelled by merged witnesses.
  HomPtr slice_limit(const DiagramPtr& A, const DiagramPtr& B);

  /// Throws NotFibrantBase unless the inverse category is fibrant and
  /// NotPrefibrant unless A and B are Reedy prefibrant.
  void check_hypotheses(const DiagramPtr& A, const DiagramPtr& B);

private:
  using Key = std::tuple<const Diagram*, const Diagram*, std::set<Label>>;
  HomPtr lax(const DiagramPtr& A, const DiagramPtr& B, const Label& x);
  HomPtr product_hom(const DiagramPtr& A, const DiagramPtr& B);
  HomPtr finish(const DiagramPtr& A, const DiagramPtr& B, const std::set<Label>& support, const Presheaf& shape,
                std::vector<std::vector<Witness>> witnesses);

  InvCatPtr I_;
  std::map<Label, DiagramPtr> profiles_;
  std::map<Key, HomPtr> homs_;
  std::map<std::tuple<const Diagram*, Label, int, int>, Fiber> fibers_;
  std::map<std::pair<const Diagram*, Label>, Map> matching_maps_;
  std::map<const Diagram*, DiagramPtr> keep_alive_;
  void keep(const DiagramPtr& D) { keep_alive_.emplace(D.get(), D); }
};

// -- Reedy conditions ------------------------------------------------------

struct ReedyReport {
  bool ok = true;
  std::map<Label, nlohmann::json> per_object; // certificates
  nlohmann::json to_json() const;
};

/// Each A_x -> M_x A a fibration (or prefibration with `pre`).
ReedyReport reedy_fibrant(HomEngine& E, const DiagramPtr& A, bool pre = false);
/// Each A_x -> B_x x_{M_x B} M_x A a fibration.
ReedyReport reedy_fibration(HomEngine& E, const DiagramMap& f, bool pre = false);
/// The comparison map A_x -> B_x x_{M_x B} M_x A and its target pullback.
struct Comparison {
  Pullback target;
  Map map;
};
Comparison reedy_comparison(HomEngine& E, const DiagramMap& f, const Label& x);
/// Each I(x) fibrant and each I(x,-) Reedy fibrant over I(x).
ReedyReport fibrant_invcat(const InvCatPtr& I);

/// Extends D (defined below y) at y by the map a : A_y -> M_y D, reading the
/// span legs and actions off the matching object.
DiagramPtr extend_diagram(HomEngine& E, const DiagramPtr& D, const Label& y, const Map& to_matching);

// -- brute-force oracle (finite sets) ----------------------------------------

/// A diagram map p*A -> q*B over a finite set Z: (z, a) -> b per object.
using OracleMap = std::map<Label, std::map<std::pair<int, int>, int>>;

/// All diagram maps p*A -> q*B over Z, by exhaustive search.
/// Throws SizeBoundExceeded if a component or Z exceeds `bound`.
/// `support` defaults to the support of A.
std::vector<OracleMap> oracle_enumerate(const DiagramPtr& A, const DiagramPtr& B, const Obj& Z, const Map& p,
                                        const Map& q, int bound = 8,
                                        const std::optional<std::set<Label>>& support = std::nullopt);

struct UPReport {
  bool ok = true;
  long checked = 0;
  nlohmann::json violation;
};

/// Checks that maps Z -> carrier over (p, q) biject with oracle_enumerate for
/// all |Z| <= max_z and all (p, q), naturally in maps Z' -> Z.
UPReport verify_universal_property(HomEngine& E, const HomPtr& H, int max_z = 3, int bound = 8);

/// A copy of H with one level-0 element removed (mutation testing).
HomPtr remove_element(const HomObject& H, int e);

} // namespace invcat

#endif
