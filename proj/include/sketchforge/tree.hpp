#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "sketchforge/cone.hpp"
#include "sketchforge/error.hpp"
#include "sketchforge/sketch.hpp"

namespace sketchforge {

/// The k-th projection of `tuple` (1-based).
struct Projection {
  SortTuple tuple;
  std::size_t k = 1;

  bool operator==(const Projection&) const = default;
};

/// Edge label: a projection, or generator `G` read at a codomain coordinate.
/// For projections the coordinate equals k.
template <class G>
struct EdgeLabel {
  std::variant<Projection, G> label;
  std::size_t coordinate = 1;

  bool is_projection() const { return std::holds_alternative<Projection>(label); }
  const Projection& projection() const { return std::get<Projection>(label); }
  const G& op() const { return std::get<G>(label); }
  bool operator==(const EdgeLabel&) const = default;
};

/// An edge together with everything above it. `inputs` are the edges entering
/// its upper vertex, in order; an edge without inputs is initial.
template <class G>
struct Edge {
  EdgeLabel<G> label;
  std::vector<Edge> inputs;

  bool operator==(const Edge&) const = default;
  std::size_t edge_count() const {
    std::size_t n = 1;
    for (const auto& e : inputs) n += e.edge_count();
    return n;
  }
};

/// A rooted planar tree. The lowest vertex has the edges `root_inputs`; a
/// well-formed tree has exactly one.
template <class G>
struct LabeledTree {
  SortTuple domain;
  std::string codomain_sort;
  std::vector<Edge<G>> root_inputs;

  bool operator==(const LabeledTree&) const = default;
  const Edge<G>& lowest() const { return root_inputs.at(0); }
  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& e : root_inputs) n += e.edge_count();
    return n;
  }
};

template <class G>
struct TreeTuple {
  SortTuple domain;
  SortTuple codomain;
  std::vector<LabeledTree<G>> trees;

  bool operator==(const TreeTuple&) const = default;
  std::size_t node_count() const {
    std::size_t n = 0;
    for (const auto& t : trees) n += t.node_count();
    return n;
  }
};

/// Domain and codomain tuples of generator labels.
template <class S, class G>
concept TreeSignature = requires(const S& s, const G& g) {
  { s.has(g) } -> std::convertible_to<bool>;
  { s.domain(g) } -> std::convertible_to<SortTuple>;
  { s.codomain(g) } -> std::convertible_to<SortTuple>;
  { s.is_projection(g) } -> std::convertible_to<bool>;
};

template <class G>
Edge<G> projection_edge(const SortTuple& domain, std::size_t k) {
  return Edge<G>{EdgeLabel<G>{Projection{domain, k}, k}, {}};
}

template <class G>
LabeledTree<G> projection_tree(const SortTuple& domain, std::size_t k) {
  if (k < 1 || k > domain.size()) throw IndexOutOfRange("projection " + std::to_string(k) + " of " + to_string(domain));
  return LabeledTree<G>{domain, domain[k - 1], {projection_edge<G>(domain, k)}};
}

/// The identity: one single-edge projection tree per coordinate.
template <class G>
TreeTuple<G> identity_tuple(const SortTuple& domain) {
  TreeTuple<G> t{domain, domain, {}};
  for (std::size_t k = 1; k <= domain.size(); ++k) t.trees.push_back(projection_tree<G>(domain, k));
  return t;
}

namespace detail {

template <class G, class S>
std::string edge_sort(const Edge<G>& e, const S& sig) {
  if (e.label.is_projection()) {
    const auto& p = e.label.projection();
    return p.tuple.at(p.k - 1);
  }
  return SortTuple(sig.codomain(e.label.op())).at(e.label.coordinate - 1);
}

template <class G, class S>
void validate_edge(const Edge<G>& e, const SortTuple& domain, const S& sig, const std::string& path, CheckReport& r,
                   bool& sorts_ok) {
  const bool initial = e.inputs.empty();
  if (e.label.is_projection()) {
    const auto& p = e.label.projection();
    if (p.k < 1 || p.k > p.tuple.size() || e.label.coordinate != p.k) {
      r.add("(2)", path + ": projection index out of range");
      sorts_ok = false;
    }
    if (!initial) r.add("(5)", path + ": projection on a non-initial edge");
    else if (p.tuple != domain) r.add("(4)", path + ": initial projection of " + to_string(p.tuple) + ", not of the domain");
  } else {
    const G& g = e.label.op();
    if (!sig.has(g)) {
      r.add("(2)", path + ": unknown generator");
      sorts_ok = false;
      return;
    }
    const SortTuple cod = sig.codomain(g);
    const SortTuple dom = sig.domain(g);
    if (e.label.coordinate < 1 || e.label.coordinate > cod.size()) {
      r.add("(2)", path + ": coordinate " + std::to_string(e.label.coordinate) + " out of range");
      sorts_ok = false;
    }
    if (sig.is_projection(g)) r.add(initial ? "(4)" : "(5)", path + ": projection generator used as an operation");
    if (initial && !dom.empty()) r.add("(4)", path + ": initial edge is not a projection");
    if (!initial) {
      bool inputs_ok = true;
      SortTuple got;
      for (std::size_t i = 0; i < e.inputs.size(); ++i) {
        bool ok = true;
        validate_edge(e.inputs[i], domain, sig, path + "." + std::to_string(i + 1), r, ok);
        inputs_ok = inputs_ok && ok;
        if (ok) got.push_back(edge_sort(e.inputs[i], sig));
      }
      if (inputs_ok && got != dom)
        r.add("(3)", path + ": inputs have sorts " + to_string(got) + ", generator expects " + to_string(dom));
    }
  }
}

template <class G>
Edge<G> graft_edge(const Edge<G>& e, const TreeTuple<G>& below) {
  if (e.label.is_projection()) {
    const std::size_t k = e.label.projection().k;
    return below.trees.at(k - 1).lowest();
  }
  Edge<G> out{e.label, {}};
  out.inputs.reserve(e.inputs.size());
  for (const auto& in : e.inputs) out.inputs.push_back(graft_edge(in, below));
  return out;
}

}  // namespace detail

/// Checks the six tree conditions; rule ids are "(1)".."(6)". Initial edges
/// carrying a generator with empty domain (constants) are accepted.
template <class G, class S>
  requires TreeSignature<S, G>
CheckReport tree_validate(const LabeledTree<G>& t, const S& sig) {
  CheckReport r;
  if (t.root_inputs.size() != 1) {
    r.add("(1)", "lowest vertex has " + std::to_string(t.root_inputs.size()) + " incoming edges");
    return r;
  }
  bool ok = true;
  detail::validate_edge(t.lowest(), t.domain, sig, "1", r, ok);
  if (ok && detail::edge_sort(t.lowest(), sig) != t.codomain_sort)
    r.add("(6)", "lowest edge yields sort " + detail::edge_sort(t.lowest(), sig) + ", expected " + t.codomain_sort);
  return r;
}

template <class G, class S>
  requires TreeSignature<S, G>
CheckReport tuple_validate(const TreeTuple<G>& t, const S& sig) {
  CheckReport r;
  if (t.trees.size() != t.codomain.size()) r.add("tuple-length", "codomain and tree count differ");
  for (std::size_t i = 0; i < t.trees.size(); ++i) {
    const auto& tree = t.trees[i];
    if (tree.domain != t.domain) r.add("tuple-domain", "tree " + std::to_string(i + 1) + " has another domain");
    if (i < t.codomain.size() && tree.codomain_sort != t.codomain[i])
      r.add("tuple-codomain", "tree " + std::to_string(i + 1) + " has codomain sort " + tree.codomain_sort);
    for (auto& v : tree_validate(tree, sig).violations)
      r.add(v.rule, "tree " + std::to_string(i + 1) + " edge " + v.witness);
  }
  return r;
}

/// "below, then w": replaces every initial projection edge p_i of each tree of
/// `w` by the lowest edge of the i-th tree of `below`.
template <class G>
TreeTuple<G> graft_compose(const TreeTuple<G>& w, const TreeTuple<G>& below) {
  if (w.domain != below.codomain)
    throw NotComposable("graft: domain " + to_string(w.domain) + " against codomain " + to_string(below.codomain));
  TreeTuple<G> out{below.domain, w.codomain, {}};
  out.trees.reserve(w.trees.size());
  for (const auto& tree : w.trees) {
    LabeledTree<G> t{below.domain, tree.codomain_sort, {}};
    for (const auto& e : tree.root_inputs) t.root_inputs.push_back(detail::graft_edge(e, below));
    out.trees.push_back(std::move(t));
  }
  return out;
}

}  // namespace sketchforge
