#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "invcat/orbit.hpp"
#include "invcat/segal.hpp"
#include "invcat/spec.hpp"
#include "invcat/tt.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw Error(ErrorKind::UnresolvedName, "missing fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InvCat chain(std::vector<Label> labels, nlohmann::json annotations = nlohmann::json::object()) {
  std::vector<LabelPair> lt;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) lt.emplace_back(labels[i], labels[i + 1]);
  InvCat I = *trivial_invcat(WfPoset::make(labels, lt));
  I.annotations = std::move(annotations);
  return I;
}

Outcome orbit_table() {
  Outcome o;
  for (int p : {2, 3, 5}) {
    auto O = orbit_category(FiniteGroup::cyclic(p));
    std::vector<int> got = {O.hom_size("G/e", "G/e"), O.hom_size("G/G", "G/e"), O.hom_size("G/e", "G/G"),
                            O.hom_size("G/G", "G/G")};
    std::vector<int> want = {p, 0, 1, 1};
    if (got != want) {
      o.ok = false;
      o.note += "p=" + std::to_string(p) + " mismatch; ";
    }
  }
  if (o.ok) o.note = "p = 2, 3, 5";
  return o;
}

Outcome goldens() {
  using namespace invcat::tt;
  std::vector<std::pair<std::string, Signature>> cases;
  auto simp = [](const Signature& s) { return simplify_units_and_booleans(s); };
  cases.emplace_back("empty_hom.tt", emit_hom_type(chain({})));
  cases.emplace_back("one_invcat.tt", emit_signature(chain({"x"}), Mode::InvCat));
  cases.emplace_back("one_diagram.tt", emit_signature(chain({"x"}), Mode::Diagram));
  cases.emplace_back("one_hom.tt", emit_hom_type(chain({"x"})));
  cases.emplace_back("two_invcat.tt", emit_signature(chain({"x", "y"}), Mode::InvCat));
  cases.emplace_back("two_matching.tt", emit_signature(chain({"x", "y"}), Mode::Matching));
  cases.emplace_back("two_diagram.tt", emit_signature(chain({"x", "y"}), Mode::Diagram));
  cases.emplace_back("two_hom.tt", emit_hom_type(chain({"x", "y"})));
  cases.emplace_back("sierpinski.tt", simp(emit_signature(chain({"x", "y"}, {{"spaces", {{"x", "1"}, {"y", "1"}}},
                                                                         {"homs", {{"y>x", "1"}}}}),
                                                      Mode::Diagram)));
  cases.emplace_back("cospan.tt", simp(emit_signature(chain({"x", "y"}, {{"spaces", {{"x", "1"}, {"y", "2"}}},
                                                                         {"homs", {{"y>x", "1"}}}}),
                                                      Mode::Diagram)));
  cases.emplace_back("span.tt", simp(emit_signature(chain({"x", "y"}, {{"spaces", {{"x", "2"}, {"y", "1"}}},
                                                                         {"homs", {{"y>x", "1"}}}}),
                                                      Mode::Diagram)));
  cases.emplace_back("three_invcat.tt", emit_signature(chain({"x", "y", "z"}), Mode::InvCat));
  cases.emplace_back("three_diagram.tt", emit_signature(chain({"x", "y", "z"}), Mode::Diagram));
  cases.emplace_back("four_invcat.tt", emit_signature(chain({"x", "y", "z", "w"}), Mode::InvCat));
  cases.emplace_back("cyclic_diagram.tt", simp(emit_signature(*cp_presentation(2, 3), Mode::Diagram)));
  cases.emplace_back("path_base.tt", emit_path_context(PathMode::Base));
  cases.emplace_back("path_glued.tt", emit_path_context(PathMode::Glued));
  Outcome o;
  int matched = 0;
  for (const auto& [name, sig] : cases) {
    if (alpha_equal(sig, parse(slurp(root() + "/fixtures/golden/" + name))))
      ++matched;
    else {
      o.ok = false;
      o.note += name + " differs; ";
    }
  }
  o.note += std::to_string(matched) + "/" + std::to_string(cases.size()) + " fixtures";
  return o;
}

struct HomRun {
  int instances = 0;
  long checked = 0;
  int up_failures = 0, slice_failures = 0;
};

bool same_labels(std::vector<std::vector<Label>> a, std::vector<std::vector<Label>> b) {
  for (auto& l : a) std::sort(l.begin(), l.end());
  for (auto& l : b) std::sort(l.begin(), l.end());
  return a == b;
}

HomRun hom_run() {
  HomRun r;
  Rng rng(3014);
  RandomConfig cfg;
  for (; r.instances < 50; ++r.instances) {
    auto inst = random_hom_instance(rng, cfg);
    HomEngine& E = *inst.engine;
    auto H = E.hom(inst.A, inst.B);
    auto rep = verify_universal_property(E, H);
    r.checked += rep.checked;
    r.up_failures += !rep.ok;
    r.slice_failures += !same_labels(E.slice_limit(inst.A, inst.B)->carrier->labels, H->carrier->labels);
  }
  return r;
}

Map random_fn(Rng& rng, const Obj& src, const Obj& tgt, bool surjective) {
  const int n = src->size(0), k = tgt->size(0);
  while (true) {
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(rng() % k);
    if (surjective && std::set<int>(v.begin(), v.end()).size() != static_cast<std::size_t>(k)) continue;
    return fmap(src, tgt, v);
  }
}

Outcome closure_suite() {
  std::map<std::string, int> bad;
  const int n = 100;
  Rng rng(5000);
  for (int t = 0; t < n; ++t) {
    Obj W = fin_set(1 + static_cast<int>(rng() % 2), "w");
    Obj Z = fin_set(W->size(0) + static_cast<int>(rng() % 2), "z");
    Obj Y = fin_set(1 + static_cast<int>(rng() % 3), "y");
    Obj X = fin_set(Y->size(0) + static_cast<int>(rng() % 2), "x");
    Map k = random_fn(rng, Z, W, true), h = random_fn(rng, Y, Z, false), g = random_fn(rng, X, Y, true);
    auto big = dep_product(k, compose(h, g));
    auto small = dep_product(k, h);
    std::set<std::pair<int, std::vector<int>>> image;
    for (std::size_t e = 0; e < big.base[0].size(); ++e) {
      std::vector<int> s = big.sections[0][e][0];
      for (auto& x : s) x = g.f[0][x];
      image.emplace(big.base[0][e], s);
    }
    for (std::size_t e = 0; e < small.base[0].size(); ++e)
      if (!image.count({small.base[0][e], small.sections[0][e][0]})) {
        ++bad["dependent products"];
        break;
      }
  }
  const RandomConfig cfg = sample_config();
  int done = 0;
  while (done < n) {
    auto s = fibration_sample(rng);
    HomEngine& E = *s.E;
    DiagramPtr A;
    DiagramMap g, h;
    try {
      A = random_diagram(rng, E, fin_set(1 + static_cast<int>(rng() % 2), "h"), cfg);
      g = random_reedy_fibration(rng, E, s.f.src, cfg);
      h = random_reedy_fibration(rng, E, s.B, cfg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeBoundExceeded) throw;
      continue;
    }
    ++done;
    if (!reedy_fibration(E, s.f).ok) ++bad["generator"];
    if (!onto(E.induced_map(E.hom(A, s.f.src), s.f, E.hom(A, s.B)))) ++bad["hom postcomposition"];
    for (const auto& [x, fx] : s.f.comps) {
      if (!onto(E.matching_functor(s.f, x))) ++bad["matching"];
      if (!onto(fx)) ++bad["levelwise"];
    }
    if (!reedy_fibration(E, compose(s.f, g)).ok) ++bad["composite"];
    if (!reedy_fibration(E, pullback(s.f, h).p2).ok) ++bad["pullback"];
    auto T = terminal_diagram(s.I, s.B->gamma);
    if (!onto(E.induced_map(E.hom(T, s.f.src), s.f, E.hom(T, s.B)))) ++bad["limit"];
  }
  Outcome o;
  o.ok = bad.empty();
  o.note = std::to_string(n) + " instances per property";
  for (const auto& [name, c] : bad) o.note += "; " + name + ": " + std::to_string(c) + " counterexamples";
  return o;
}

Outcome segal_agreement() {
  int fin_disagree = 0, sset_disagree = 0;
  std::string first;
  Rng rng(5006);
  RandomConfig cfg;
  for (int t = 0; t < 100; ++t) {
    auto I = random_invcat(rng, cfg, t % 2 == 0);
    bool a = is_strongly_segal(*I).ok, b = is_strongly_segal(sigma(*I)).ok;
    if (a != b) {
      ++fin_disagree;
      if (first.empty()) first = std::string(" (first: I ") + (a ? "is" : "is not") + ", sigma " + (b ? "is" : "is not") + ")";
    }
  }
  for (int t = 0; t < 100; ++t) {
    auto I = random_sset_invcat(rng, 2, 3);
    sset_disagree += is_strongly_segal(*I).ok != is_strongly_segal(sigma(*I)).ok;
  }
  Outcome o;
  o.ok = fin_disagree == 0 && sset_disagree == 0;
  o.note = "finite sets: " + std::to_string(fin_disagree) + "/100 disagree" + first +
           "; simplicial sets: " + std::to_string(sset_disagree) + "/100 disagree";
  return o;
}

Outcome cyclic_presentations() {
  Outcome o;
  auto I2 = cp_presentation(2, 3);
  auto I3 = cp_presentation(3, 2);
  bool sizes = I2->space("G/e")->sizes() == std::vector<int>{1, 2, 4, 8} &&
               I3->space("G/e")->sizes() == std::vector<int>{1, 3, 9};
  bool fib2 = fibrant_invcat(I2).ok, fib3 = fibrant_invcat(I3).ok;
  o.ok = sizes && fib2 && fib3;
  o.note = std::string("sizes ") + (sizes ? "match" : "differ") + ", p=2 " + (fib2 ? "fibrant" : "not fibrant") +
           ", p=3 " + (fib3 ? "fibrant" : "not fibrant");
  return o;
}

std::vector<Label> random_topo_order(const WfPoset& P, Rng& rng) {
  std::vector<Label> out, rest = P.elements();
  while (!rest.empty()) {
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool ok = true;
      for (const auto& y : rest)
        if (P.lt(y, rest[i])) ok = false;
      if (ok) minimal.push_back(i);
    }
    std::size_t pick = minimal[rng() % minimal.size()];
    out.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<long>(pick));
  }
  return out;
}

Outcome recursion_orders() {
  Rng rng(2001);
  int distinct = 0, mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    WfPoset P = random_poset(rng, 8);
    auto step = [](const Label& x, const PartialSection<long, long>& part) {
      long v = static_cast<long>(std::hash<std::string>{}(x) % 1000);
      for (const auto& [y, pv] : part.vertices) v = (v * 31 + *pv) % 1000003;
      for (const auto& [yz, pe] : part.edges) v = (v * 17 + *pe) % 1000003;
      Extension<long, long> ext{v, {}};
      for (const auto& [y, pv] : part.vertices) ext.components[y] = (*pv * 7 + v) % 10007;
      return ext;
    };
    auto o1 = P.topo_order(), o2 = random_topo_order(P, rng);
    for (int tries = 0; o1 == o2 && tries < 20; ++tries) o2 = random_topo_order(P, rng);
    distinct += o1 != o2;
    auto s1 = recurse<long, long>(P, step, o1);
    auto s2 = recurse<long, long>(P, step, o2);
    mismatches += s1.vertices != s2.vertices || s1.edges != s2.edges;
  }
  Outcome o;
  o.ok = mismatches == 0;
  o.note = "200 posets, " + std::to_string(distinct) + " with distinct orders, " + std::to_string(mismatches) +
           " mismatches";
  return o;
}

Outcome mutations() {
  Outcome o;
  auto expect_error = [&](const std::string& file, ErrorKind kind, const std::string& key) {
    try {
      parse_spec(slurp(root() + "/fixtures/" + file));
      o.ok = false;
      o.note += file + " accepted; ";
    } catch (const Error& e) {
      bool good = e.kind() == kind && e.detail().contains(key);
      o.ok = o.ok && good;
      o.note += file + ": " + e.to_json()["error"].get<std::string>() + (good ? "" : " (unexpected)") + "; ";
    }
  };
  expect_error("broken_assoc.json", ErrorKind::AssocFailure, "element");
  expect_error("deleted_hom.json", ErrorKind::MissingComposite, "missing");
  auto S = parse_spec(slurp(root() + "/fixtures/nonsurjective_leg.json"));
  for (const auto& [name, I] : S.invcats) {
    auto r = fibrant_invcat(I);
    auto cert = r.to_json();
    bool named = cert.dump().find("not surjective") != std::string::npos;
    bool good = !r.ok && named;
    o.ok = o.ok && good;
    o.note += "nonsurjective_leg.json: " + std::string(r.ok ? "fibrant" : "not fibrant") + (good ? "" : " (unexpected)");
  }
  return o;
}

} // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::string(argv[1]) == "--strict";
  using clock = std::chrono::steady_clock;
  int failed = 0;
  auto report = [&](int n, double budget, const std::function<Outcome()>& run) {
    auto t0 = clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("threw: ") + e.what();
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    bool ok = o.ok && secs < budget;
    failed += !ok;
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << o.note << " [" << secs << " s, limit "
              << budget << " s]" << std::endl;
  };
  report(1, 1, orbit_table);
  report(2, 1, goldens);
  HomRun hr;
  double hom_secs = 0;
  report(3, 120, [&] {
    auto t0 = clock::now();
    hr = hom_run();
    hom_secs = std::chrono::duration<double>(clock::now() - t0).count();
    return Outcome{hr.up_failures == 0, std::to_string(hr.instances) + " instances, " + std::to_string(hr.checked) +
                                           " test maps, " + std::to_string(hr.up_failures) + " failures"};
  });
  report(4, 120, [&] {
    return Outcome{hr.instances >= 50 && hr.slice_failures == 0,
                   std::to_string(hr.instances) + " instances, " + std::to_string(hr.slice_failures) +
                       " mismatches (computed within criterion 3)"};
  });
  report(5, 120, closure_suite);
  report(6, 60, segal_agreement);
  report(7, 60, cyclic_presentations);
  report(8, 10, recursion_orders);
  report(9, 10, mutations);
  std::cout << (9 - failed) << "/9 criteria pass" << std::endl;
  return strict && failed ? 1 : 0;
}
