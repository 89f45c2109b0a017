#ifndef INVCAT_ORBIT_HPP
#define INVCAT_ORBIT_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "invcat/inverse_cat.hpp"
#include "invcat/segal.hpp"

namespace invcat {

/// A finite group by multiplication table; table[a][b] = ab.
class FiniteGroup {
public:
  /// Verifies closure, associativity, identity and inverses. Throws NotAGroup.
  static FiniteGroup make(std::vector<Label> elements, std::vector<std::vector<int>> table);
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);  // n <= 4
  static FiniteGroup dihedral(int n);   // order 2n, n <= 6
  /// {"builtin": "cyclic"|"symmetric"|"dihedral", "n": k} or
  /// {"elements": [...], "table": [[label, ...], ...]}.
  static FiniteGroup from_json(const nlohmann::json& j);

  int size() const { return static_cast<int>(elements_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  const Label& label(int a) const { return elements_[a]; }
  const std::vector<Label>& elements() const { return elements_; }
  nlohmann::json to_json() const;

private:
  std::vector<Label> elements_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

using Subgroup = std::vector<int>; // sorted members

struct SubgroupLattice {
  std::vector<Subgroup> subgroups;         // by order, then members
  std::vector<int> class_of;               // conjugacy class per subgroup
  std::vector<std::vector<int>> classes;   // members of each class
};

/// All subgroups with conjugacy classes. Throws BoundExceeded if |G| > bound.
SubgroupLattice subgroups(const FiniteGroup& G, int bound = 24);

bool is_subconjugate(const FiniteGroup& G, const Subgroup& H, const Subgroup& K);

/// One object G/H per conjugacy class; a map G/H -> G/K is a coset gK with
/// g^-1 H g in K, and (gK) then (g'L) is gg'L.
struct OrbitCat {
  FiniteGroup group;
  std::vector<Label> objects;                // "G/e", "G/G", "G/H1", ...
  std::vector<Subgroup> reps;
  FinCategory category;
  std::map<std::pair<int, int>, std::vector<int>> homs; // (src, tgt) -> morphism indices
  WfPoset precedence;                        // [H] < [K] iff H strictly subconjugate to K

  int hom_size(const Label& src, const Label& tgt) const;
  nlohmann::json to_json() const;
};

/// Throws NotAGroup if composition is not associative and unital, and
/// CompositionMismatch if some endomorphism is not invertible.
OrbitCat orbit_category(const FiniteGroup& G, int bound = 24);

/// The orbit category or its opposite as an internal category in finite sets.
InternalCat orbit_internal(const OrbitCat& O, bool opposite);

/// Objects G/e < G/G with I(G/e) = BC_p, I(G/G) = 1 and the span
/// BC_p <- BC_p -> 1. Throws NotPrime.
InvCatPtr cp_presentation(int p, int trunc);

/// The truncated nerve of G as a one-object groupoid.
Obj classifying_space(const FiniteGroup& G, int trunc);

} // namespace invcat

#endif
