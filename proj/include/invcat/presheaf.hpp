#ifndef INVCAT_PRESHEAF_HPP
#define INVCAT_PRESHEAF_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "invcat/error.hpp"
#include "invcat/wf.hpp"

namespace invcat {

/// A monotone map [k] -> [m], stored as its k+1 values.
using Mono = std::vector<int>;

/// All monotone maps [k] -> [m] in lexicographic order.
const std::vector<Mono>& monotone_maps(int k, int m);
int mono_index(const Mono& alpha, int m);
Mono mono_compose(const Mono& theta, const Mono& alpha); // theta . alpha
Mono coface(int m, int i);      // delta_i : [m-1] -> [m]
Mono codegeneracy(int m, int i); // sigma_i : [m+1] -> [m]
std::string mono_label(const Mono& alpha);

/// A presheaf on the simplex category truncated at `trunc`. A finite set is
/// the trunc-0 case. faces[m][i][e] is d_i of element e at level m >= 1;
/// degens[m][i][e] is s_i of element e at level m < trunc.
struct Presheaf {
  int trunc = 0;
  std::vector<std::vector<Label>> labels;
  std::vector<std::vector<std::vector<int>>> faces;
  std::vector<std::vector<std::vector<int>>> degens;

  int size(int m) const { return static_cast<int>(labels[m].size()); }
  std::size_t total() const;
  std::vector<int> sizes() const;
  int face(int m, int i, int e) const { return faces[m][i][e]; }
  int degen(int m, int i, int e) const { return degens[m][i][e]; }
  /// alpha^* e for alpha : [k] -> [m] and e at level m.
  int act(const Mono& alpha, int m, int e) const;
  int find(int m, const Label& l) const; // -1 if absent
  const Label& label(int m, int e) const { return labels[m][e]; }

  /// First violated simplicial identity, if any.
  std::optional<std::string> identity_violation() const;
  /// Allocates empty face/degeneracy tables for the current label sizes.
  void shape_tables();
  void build_index();

  friend bool operator==(const Presheaf& a, const Presheaf& b) {
    return a.trunc == b.trunc && a.labels == b.labels && a.faces == b.faces && a.degens == b.degens;
  }

private:
  std::vector<std::unordered_map<Label, int>> index_;
};

using Obj = std::shared_ptr<const Presheaf>;

/// Validates the simplicial identities and freezes the presheaf.
Obj make_obj(Presheaf p);
bool same_obj(const Obj& a, const Obj& b);

/// A natural transformation; for trunc 0 an ordinary function of finite sets.
struct Map {
  Obj src, tgt;
  std::vector<std::vector<int>> f; // f[m][e]

  int operator()(int m, int e) const { return f[m][e]; }
  int trunc() const { return src->trunc; }
};

/// Checks totality, range and naturality. Throws InvalidMap.
Map make_map(Obj src, Obj tgt, std::vector<std::vector<int>> f);
Map identity(const Obj& X);
Map compose(const Map& g, const Map& f); // g . f
bool maps_equal(const Map& a, const Map& b);
bool is_iso(const Map& f);

// -- builders --------------------------------------------------------------

Obj point(int trunc);
Obj empty_obj(int trunc);
/// Discrete presheaf: the given labels at level 0, only degenerate simplices above.
Obj discrete(const std::vector<Label>& labels, int trunc);
inline Obj fin_set(const std::vector<Label>& labels) { return discrete(labels, 0); }
Obj fin_set(int n, const std::string& prefix = "");
/// Delta[m] truncated at `trunc`; level k holds the monotone maps [k] -> [m].
Obj representable(int m, int trunc);
/// The boundary of Delta[m] (non-surjective monotone maps).
Obj boundary(int m, int trunc);
/// The horn Lambda^k_m.
Obj horn(int m, int k, int trunc);

/// A finite category given by its morphisms; composite(f, g) means g after f
/// and is defined when tgt(f) == src(g).
struct FinCategory {
  std::vector<Label> objects;
  std::vector<Label> morphisms;
  std::vector<int> source, target, identity;   // identity[obj] = morphism
  std::vector<std::vector<int>> composite;     // composite[f][g], -1 if undefined
};
/// Nerve truncated at `trunc`; level m holds chains f1|f2|...|fm.
Obj nerve(const FinCategory& C, int trunc);

/// The same presheaf with new element labels.
Obj relabel(const Obj& X, std::vector<std::vector<Label>> labels);

/// Levelwise map into the terminal object.
Map to_point(const Obj& X);
/// The unique map out of the empty presheaf.
Map from_empty(const Obj& X);

/// Maps given by a per-level label table.
Map map_from_labels(const Obj& src, const Obj& tgt, const std::vector<std::map<Label, Label>>& table);

nlohmann::json to_json(const Presheaf& X);
nlohmann::json to_json(const Map& f);

} // namespace invcat

#endif
