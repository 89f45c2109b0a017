#ifndef INVCAT_TEST_SUPPORT_HPP
#define INVCAT_TEST_SUPPORT_HPP

#include <cstdlib>
#include <string>

#include "invcat/hom.hpp"
#include "invcat/random.hpp"

namespace testing {

using namespace invcat;

inline std::string root() {
  const char* r = std::getenv("INVCAT_ROOT");
  return r ? r : ".";
}

/// A finite-set map given by its values.
inline Map fmap(const Obj& src, const Obj& tgt, std::vector<int> values) { return make_map(src, tgt, {std::move(values)}); }

/// One object x with I(x) = 1.
inline InvCatPtr one_object() {
  return trivial_invcat(WfPoset::make({"x"}, {}));
}

/// x < y with I(x) = I(y) = 1 and |I(y,x)| = n.
inline InvCatPtr two_chain(int n) {
  OrdinaryInverseCat C;
  C.objects = WfPoset::make({"x", "y"}, {{"x", "y"}});
  for (int i = 0; i < n; ++i) C.homs[{"y", "x"}].push_back("f" + std::to_string(i));
  return embed_ordinary(C);
}

/// Constant diagram over the point on an inverse category with all spaces 1
/// and only the x component given: A_x has n elements.
inline DiagramPtr one_component(const InvCatPtr& I, const Label& x, int n) {
  Obj pt = I->base.terminal();
  Obj A = fin_set(n, "a");
  Diagram D{I, pt, {}, {}};
  Map l = to_point(A);
  l.tgt = pt;
  Map r = l;
  r.tgt = I->space(x);
  D.comps[x] = Component{A, l, r};
  return validate_diagram(std::move(D));
}

/// A random fibrant inverse category, a Reedy fibrant B over a base of size
/// one or two, and a Reedy fibration f : A -> B; resampled until everything
/// fits the size bound.
struct FibrationSample {
  InvCatPtr I;
  std::unique_ptr<HomEngine> E;
  DiagramPtr B;
  DiagramMap f;
};

inline RandomConfig sample_config() {
  RandomConfig cfg;
  cfg.max_size = 6;
  return cfg;
}

inline FibrationSample fibration_sample(Rng& rng) {
  const RandomConfig cfg = sample_config();
  while (true) {
    try {
      FibrationSample s;
      s.I = random_invcat(rng, cfg);
      s.E = std::make_unique<HomEngine>(s.I);
      Obj gamma = fin_set(1 + static_cast<int>(rng() % 2), "g");
      s.B = random_diagram(rng, *s.E, gamma, cfg);
      s.f = random_reedy_fibration(rng, *s.E, s.B, cfg);
      return s;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeBoundExceeded) throw;
    }
  }
}

/// Every level of f is surjective.
inline bool onto(const Map& f) {
  for (int m = 0; m <= f.trunc(); ++m) {
    std::vector<bool> hit(f.tgt->size(m));
    for (int v : f.f[m]) hit[v] = true;
    for (bool h : hit)
      if (!h) return false;
  }
  return true;
}

} // namespace testing

#endif
