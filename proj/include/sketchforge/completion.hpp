#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sketchforge/sketch.hpp"
#include "sketchforge/tree.hpp"

namespace sketchforge {

using Tree = LabeledTree<std::string>;
using Trees = TreeTuple<std::string>;
using TreeEdge = Edge<std::string>;

/// A semi-theory whose category is free and whose projections are free
/// generators. 1-tuples use the identity as their only projection.
class FreeSemiTheory {
 public:
  struct Operation {
    std::string name;
    SortTuple domain;
    SortTuple codomain;
  };

  /// `sketch.cat` must be free and `sketch.sorting` set; every cone leg must be
  /// a single generator. Throws NotSemiTheory.
  explicit FreeSemiTheory(Sketch sketch);

  /// Objects are named "c[s|t]" and projections "p<k>[s|t]".
  static FreeSemiTheory make(const std::string& name, const std::vector<std::string>& sorts,
                             const std::vector<SortTuple>& tuples, const std::vector<Operation>& operations);

  static std::string default_object_name(const SortTuple& tuple);
  static std::string default_projection_name(const SortTuple& tuple, std::size_t k);

  const Sketch& sketch() const { return sketch_; }
  const FreeCategory& category() const { return *sketch_.cat.as_free(); }
  const SortedStructure& sorted() const { return *sketch_.sorting; }
  const std::vector<SortTuple>& tuples() const { return tuples_; }

  // TreeSignature
  bool has(const std::string& g) const { return info_.count(g) > 0; }
  SortTuple domain(const std::string& g) const;
  SortTuple codomain(const std::string& g) const;
  bool is_projection(const std::string& g) const;

  std::optional<std::size_t> projection_index(const std::string& g) const;
  /// Generators that are not projections, in declaration order.
  const std::vector<std::string>& operations() const { return operations_; }
  const std::string& object_of(const SortTuple& t) const;  // throws SortMismatch
  SortTuple tuple_of(const std::string& object) const;      // throws SortMismatch
  /// k-th projection as a word (the identity on 1-tuples).
  Morphism projection(const SortTuple& t, std::size_t k) const;
  /// Whether some word leads from `from` to `to`.
  bool reachable(const SortTuple& from, const SortTuple& to) const;

 private:
  struct Info {
    SortTuple domain;
    SortTuple codomain;
    std::optional<std::size_t> projection;
  };
  Sketch sketch_;
  std::vector<SortTuple> tuples_;
  std::map<std::string, Info> info_;
  std::vector<std::string> operations_;
};

/// The tree tuple of a word of the free semi-theory.
Trees theta(const FreeSemiTheory& c, const Morphism& word);
Trees theta_generator(const FreeSemiTheory& c, const std::string& generator);

/// All valid trees from `domain` to `codomain_sort` with at most `max_nodes`
/// vertices: by size, then projections before operations, then generator and
/// coordinate order, then inputs lexicographically.
std::vector<Tree> enumerate_trees(const FreeSemiTheory& c, const SortTuple& domain, const std::string& codomain_sort,
                                  std::size_t max_nodes);

bool is_theta_image(const FreeSemiTheory& c, const Trees& t);
/// Least k with t in the k-th stage of the tupling filtration (0 for images
/// of words).
std::size_t filtration_degree(const FreeSemiTheory& c, const Trees& t);

/// One-tree tuple.
Trees single(const Tree& t);

}  // namespace sketchforge
