#ifndef INVCAT_SPEC_HPP
#define INVCAT_SPEC_HPP

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "invcat/hom.hpp"
#include "invcat/orbit.hpp"

namespace invcat {

// Workbench file format (JSON):
//
//   {
//     "base": "finset" | {"kind": "ssets", "trunc": 3},
//     "posets":   { name: {"elements": [...], "lt": [[lower, upper], ...]} },
//     "objects":  { name: <object> },
//     "maps":     { name: {"src": <object>, "tgt": <object>, "values": <table>} },
//     "groups":   { name: {"builtin": "cyclic", "n": 3} | {"elements": [...], "table": [[...]]} },
//     "invcats":  { name: <invcat> },
//     "diagrams": { name: <diagram> }
//   }
//
// <object> is a declared name, a list of labels or a count (finite sets),
// {"trunc", "levels", "faces", "degens"} as produced by to_json, or
// {"builtin": "point" | "representable" | "boundary" | "horn" | "classifying",
//  "m", "k", "group"} at the base truncation.
//
// <table> maps element labels to labels: one object for finite sets, a list
// of objects (one per level) otherwise. A <map> is a declared name or
// {"src", "tgt", "values"}, {"terminal": true} or {"identity": true}; src and
// tgt may be omitted where the context fixes them.
//
// <invcat> is {"builtin": "cp", "p": 2}, {"ordinary": {"objects", "lt",
// "homs": {"x>y": [labels]}, "comp": {"x>y>z": {"f|g": "h"}}}} or
// {"objects", "lt", "spaces": {x: <object>}, "homs": {"x>y": {"obj", "left",
// "right"}}, "comps": {"x>y>z": <table keyed by "(f,g)">}, "annotations"}.
// Hom keys name the upper object first.
//
// <diagram> is {"invcat": name, "gamma": <object>, "components": {x: {"obj",
// "to_gamma", "to_space"}}, "actions": {"x>y": <table keyed by "(a,f)">}}.

struct WorkbenchSpec {
  BaseCat base = BaseCat::finset();
  std::map<std::string, WfPoset> posets;
  std::map<std::string, Obj> objects;
  std::map<std::string, Map> maps;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, InvCatPtr> invcats;
  std::map<std::string, DiagramPtr> diagrams;
  std::map<std::string, std::string> diagram_invcat;
};

/// Throws SyntaxError (detail {line, column}), UnresolvedName or
/// InstanceMismatch; validation failures of declared structures propagate
/// with detail.declaration naming the offending entry.
WorkbenchSpec parse_spec(const std::string& text, std::optional<BaseCat> base_override = std::nullopt);

nlohmann::json to_json(const InvCat& I);
nlohmann::json to_json(const Diagram& D, const std::string& invcat_name);
/// Full serialization: every invcat and diagram inline.
nlohmann::json to_json(const WorkbenchSpec& S);

} // namespace invcat

#endif
