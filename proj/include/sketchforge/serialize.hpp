#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sketchforge/algebra.hpp"
#include "sketchforge/completion.hpp"
#include "sketchforge/dsl.hpp"

namespace sketchforge {

using Json = nlohmann::ordered_json;

/// Same fields as the DSL document. Throws ParseError on malformed input.
Json document_to_json(const SketchDocument& doc);
SketchDocument document_from_json(const Json& j);
Json sketch_to_json(const Sketch& s, const std::vector<std::string>& distinguished = {});

/// {"carriers": {obj: [labels]}, "actions": {morphism: [value indices]}}
Json algebra_to_json(const FinSetAlgebra& a);
FinSetAlgebra algebra_from_json(const Json& j);

/// Trees as node arrays: every edge is a node whose parent is the edge below
/// it (-1 for the lowest edge); siblings appear in input order.
Json tree_to_json(const Tree& t);
Tree tree_from_json(const Json& j);
Json trees_to_json(const Trees& t);
Trees trees_from_json(const Json& j);

/// tree dom=(s,s) cod=s : ((p1, p2) -> mu.1, p2) -> mu.1
std::string tree_to_text(const Tree& t);
/// Inputs are written "(...) -> op.coordinate" and leaves "p<k>".
Tree tree_from_text(const std::string& line);
/// One "tree" line per coordinate, all with the same domain.
std::string trees_to_text(const Trees& t);
Trees trees_from_text(const std::string& text);

}  // namespace sketchforge
