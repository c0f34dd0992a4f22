#include "sketchforge/serialize.hpp"

#include <cctype>
#include <sstream>

#include "sketchforge/error.hpp"

namespace sketchforge {

namespace {

NameRef ref(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a string, found " + j.dump());
  return NameRef{j.get<std::string>(), {}};
}

std::vector<NameRef> refs(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array, found " + j.dump());
  std::vector<NameRef> out;
  for (const auto& x : j) out.push_back(ref(x));
  return out;
}

Json texts(const std::vector<NameRef>& v) {
  Json a = Json::array();
  for (const auto& n : v) a.push_back(n.text);
  return a;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json document_to_json(const SketchDocument& doc) {
  Json j;
  j["name"] = doc.name.text;
  j["free"] = doc.free;
  j["sorts"] = texts(doc.sorts);
  j["objects"] = Json::array();
  for (const auto& o : doc.objects) {
    Json t = Json::array();
    for (const auto& tuple : o.tuples) t.push_back(texts(tuple));
    j["objects"].push_back({{"name", o.name.text}, {"tuples", t}});
  }
  j["generators"] = Json::array();
  for (const auto& g : doc.gens) j["generators"].push_back({{"name", g.name.text}, {"dom", g.dom.text}, {"cod", g.cod.text}});
  j["identities"] = Json::array();
  for (const auto& d : doc.ids) j["identities"].push_back({{"object", d.object.text}, {"name", d.name.text}});
  j["composition"] = Json::array();
  for (const auto& c : doc.composes) j["composition"].push_back({{"path", texts(c.path)}, {"result", c.result.text}});
  j["cones"] = Json::array();
  for (const auto& c : doc.cones) {
    Json legs = Json::array();
    for (const auto& l : c.legs) legs.push_back({{"object", l.object.text}, {"path", texts(l.path)}});
    j["cones"].push_back({{"name", c.name.text}, {"apex", c.apex.text}, {"legs", legs}});
  }
  j["distinguished"] = texts(doc.distinguished);
  return j;
}

SketchDocument document_from_json(const Json& j) {
  SketchDocument doc;
  doc.name = ref(field(j, "name"));
  if (j.contains("free")) doc.free = j.at("free").get<bool>();
  if (j.contains("sorts")) doc.sorts = refs(j.at("sorts"));
  for (const auto& o : field(j, "objects")) {
    ObjectDecl d{ref(field(o, "name")), {}};
    if (o.contains("tuples"))
      for (const auto& t : o.at("tuples")) d.tuples.push_back(refs(t));
    doc.objects.push_back(std::move(d));
  }
  if (j.contains("generators"))
    for (const auto& g : j.at("generators"))
      doc.gens.push_back(GenDecl{ref(field(g, "name")), ref(field(g, "dom")), ref(field(g, "cod"))});
  if (j.contains("identities"))
    for (const auto& d : j.at("identities")) doc.ids.push_back(IdDecl{ref(field(d, "object")), ref(field(d, "name"))});
  if (j.contains("composition"))
    for (const auto& c : j.at("composition")) doc.composes.push_back(ComposeDecl{refs(field(c, "path")), ref(field(c, "result"))});
  if (j.contains("cones"))
    for (const auto& c : j.at("cones")) {
      ConeDecl d{ref(field(c, "name")), ref(field(c, "apex")), {}};
      for (const auto& l : field(c, "legs")) d.legs.push_back(LegDecl{ref(field(l, "object")), refs(field(l, "path"))});
      doc.cones.push_back(std::move(d));
    }
  if (j.contains("distinguished")) doc.distinguished = refs(j.at("distinguished"));
  return doc;
}

Json sketch_to_json(const Sketch& s, const std::vector<std::string>& distinguished) {
  return document_to_json(document_of(s, distinguished));
}

// ---------------------------------------------------------------------------

Json algebra_to_json(const FinSetAlgebra& a) {
  Json j;
  j["carriers"] = Json::object();
  for (const auto& [o, c] : a.carriers) j["carriers"][o] = c;
  j["actions"] = Json::object();
  for (const auto& [m, t] : a.actions) j["actions"][m] = t;
  return j;
}

FinSetAlgebra algebra_from_json(const Json& j) {
  FinSetAlgebra a;
  try {
    for (const auto& [o, c] : field(j, "carriers").items()) a.carriers[o] = c.get<std::vector<std::string>>();
    for (const auto& [m, t] : field(j, "actions").items()) a.actions[m] = t.get<Table>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed algebra: ") + e.what());
  }
  return a;
}

// ---------------------------------------------------------------------------

namespace {

Json label_json(const EdgeLabel<std::string>& l) {
  if (l.is_projection()) return {{"kind", "projection"}, {"k", l.projection().k}};
  return {{"kind", "op"}, {"name", l.op()}, {"coordinate", l.coordinate}};
}

void edge_nodes(const TreeEdge& e, long parent, Json& nodes) {
  const long self = static_cast<long>(nodes.size());
  nodes.push_back({{"id", self}, {"parent", parent}, {"label", label_json(e.label)}});
  for (const auto& in : e.inputs) edge_nodes(in, self, nodes);
}

Json tuple_json(const SortTuple& t) { return Json(t); }

SortTuple tuple_of_json(const Json& j) {
  try {
    return j.get<SortTuple>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("expected a sort tuple, found " + j.dump());
  }
}

}  // namespace

Json tree_to_json(const Tree& t) {
  Json nodes = Json::array();
  for (const auto& e : t.root_inputs) edge_nodes(e, -1, nodes);
  return {{"domain", tuple_json(t.domain)}, {"codomain_sort", t.codomain_sort}, {"nodes", nodes}};
}

Tree tree_from_json(const Json& j) {
  Tree t;
  t.domain = tuple_of_json(field(j, "domain"));
  t.codomain_sort = field(j, "codomain_sort").get<std::string>();
  const auto& nodes = field(j, "nodes");
  std::vector<TreeEdge> edges(nodes.size());
  std::vector<long> parents(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const auto& l = field(n, "label");
    const std::string kind = field(l, "kind").get<std::string>();
    if (kind == "projection") {
      const auto k = field(l, "k").get<std::size_t>();
      edges[i].label = EdgeLabel<std::string>{Projection{t.domain, k}, k};
    } else if (kind == "op") {
      edges[i].label = EdgeLabel<std::string>{field(l, "name").get<std::string>(), field(l, "coordinate").get<std::size_t>()};
    } else {
      throw ParseError("unknown node kind '" + kind + "'");
    }
    parents[i] = field(n, "parent").get<long>();
    if (parents[i] >= static_cast<long>(i)) throw ParseError("node " + std::to_string(i) + " precedes its parent");
  }
  // children are attached last to first so that nested copies are complete
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (parents[i] < 0) continue;
    auto& p = edges[static_cast<std::size_t>(parents[i])].inputs;
    p.insert(p.begin(), std::move(edges[i]));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (parents[i] < 0) t.root_inputs.push_back(std::move(edges[i]));
  return t;
}

Json trees_to_json(const Trees& t) {
  Json trees = Json::array();
  for (const auto& x : t.trees) trees.push_back(tree_to_json(x));
  return {{"domain", tuple_json(t.domain)}, {"codomain", tuple_json(t.codomain)}, {"trees", trees}};
}

Trees trees_from_json(const Json& j) {
  Trees t{tuple_of_json(field(j, "domain")), tuple_of_json(field(j, "codomain")), {}};
  for (const auto& x : field(j, "trees")) t.trees.push_back(tree_from_json(x));
  return t;
}

// ---------------------------------------------------------------------------

namespace {

std::string edge_text(const TreeEdge& e) {
  if (e.label.is_projection()) return "p" + std::to_string(e.label.projection().k);
  std::string out = "(";
  for (std::size_t i = 0; i < e.inputs.size(); ++i) out += (i ? ", " : "") + edge_text(e.inputs[i]);
  return out + ") -> " + e.label.op() + "." + std::to_string(e.label.coordinate);
}

class TextReader {
 public:
  explicit TextReader(const std::string& s) : s_(s) {}

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(const std::string& lit) {
    ws();
    if (s_.compare(i_, lit.size(), lit) != 0) return false;
    i_ += lit.size();
    return true;
  }
  void expect(const std::string& lit) {
    if (!eat(lit)) fail("expected '" + lit + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("tree text, column " + std::to_string(i_ + 1) + ": " + msg);
  }
  std::string word(const std::string& stops) {
    ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && stops.find(s_[i_]) == std::string::npos) ++i_;
    if (i_ == start) fail("expected a name");
    return s_.substr(start, i_ - start);
  }
  SortTuple tuple() {
    expect("(");
    SortTuple t;
    if (eat(")")) return t;
    do t.push_back(word(",)"));
    while (eat(","));
    expect(")");
    return t;
  }
  TreeEdge edge(const SortTuple& domain) {
    ws();
    if (eat("(")) {
      std::vector<TreeEdge> inputs;
      if (!eat(")")) {
        do inputs.push_back(edge(domain));
        while (eat(","));
        expect(")");
      }
      expect("->");
      const std::string label = word(",)");
      const auto dot = label.rfind('.');
      if (dot == std::string::npos) fail("operation label needs a coordinate, as in mu.1");
      std::size_t coord = 0;
      try {
        coord = std::stoul(label.substr(dot + 1));
      } catch (const std::exception&) {
        fail("bad coordinate in '" + label + "'");
      }
      return TreeEdge{EdgeLabel<std::string>{label.substr(0, dot), coord}, std::move(inputs)};
    }
    const std::string leaf = word(",)");
    if (leaf.size() < 2 || leaf[0] != 'p') fail("expected a projection leaf p<k>, found '" + leaf + "'");
    std::size_t k = 0;
    try {
      k = std::stoul(leaf.substr(1));
    } catch (const std::exception&) {
      fail("bad projection leaf '" + leaf + "'");
    }
    return projection_edge<std::string>(domain, k);
  }
  bool done() {
    ws();
    return i_ == s_.size();
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string tree_to_text(const Tree& t) {
  std::string out = "tree dom=" + to_string(t.domain) + " cod=" + t.codomain_sort + " :";
  for (std::size_t i = 0; i < t.root_inputs.size(); ++i) out += (i ? ", " : " ") + edge_text(t.root_inputs[i]);
  return out;
}

Tree tree_from_text(const std::string& line) {
  TextReader r(line);
  r.expect("tree");
  r.expect("dom=");
  Tree t;
  t.domain = r.tuple();
  r.expect("cod=");
  t.codomain_sort = r.word(":");
  r.expect(":");
  t.root_inputs.push_back(r.edge(t.domain));
  if (!r.done()) r.fail("unexpected trailing text");
  return t;
}

std::string trees_to_text(const Trees& t) {
  std::string out;
  if (t.trees.empty()) out += "# empty tuple from " + to_string(t.domain) + "\n";
  for (const auto& x : t.trees) out += tree_to_text(x) + "\n";
  return out;
}

Trees trees_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Trees t;
  bool first = true;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    Tree x = tree_from_text(line);
    if (first) t.domain = x.domain;
    else if (x.domain != t.domain) throw ParseError("trees of one tuple must share their domain");
    first = false;
    t.codomain.push_back(x.codomain_sort);
    t.trees.push_back(std::move(x));
  }
  if (first) throw ParseError("no tree lines found");
  return t;
}

}  // namespace sketchforge
