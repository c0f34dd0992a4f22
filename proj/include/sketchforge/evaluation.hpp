#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "sketchforge/algebra.hpp"
#include "sketchforge/completion.hpp"

namespace sketchforge {

/// Evaluates labeled trees in a strict algebra over a free semi-theory. Apex
/// carriers are read as products through the cone comparisons.
class TreeEvaluator {
 public:
  /// Throws NotStrict if `a` is not functorial or not strict.
  TreeEvaluator(FreeSemiTheory c, FinSetAlgebra a);

  const FreeSemiTheory& theory() const { return c_; }
  const FinSetAlgebra& algebra() const { return a_; }

  /// Coordinates of an element of A(tuple) under the comparison map.
  const std::vector<std::size_t>& decode(const SortTuple& tuple, std::size_t x) const;
  /// Inverse of decode.
  std::size_t encode(const SortTuple& tuple, const std::vector<std::size_t>& coords) const;

  /// Value of the tree at the domain coordinates `xs`.
  std::size_t apply(const Tree& t, const std::vector<std::size_t>& xs) const;
  /// A(dom) -> A(cod). Throws BadParam on an invalid tuple and SortMismatch
  /// when an endpoint is not indexed.
  Table evaluate(const Trees& t) const;
  Table evaluate(const Tree& t) const { return evaluate(single(t)); }

 private:
  std::size_t apply_edge(const TreeEdge& e, const std::vector<std::size_t>& xs) const;
  const std::string& carrier_object(const SortTuple& t) const;

  FreeSemiTheory c_;
  FinSetAlgebra a_;
  std::map<SortTuple, std::vector<std::vector<std::size_t>>> decode_;
  std::map<SortTuple, std::map<std::vector<std::size_t>, std::size_t>> encode_;
};

Table evaluate_tree(const FreeSemiTheory& c, const FinSetAlgebra& a, const Trees& t);

struct RoundtripOptions {
  std::size_t tree_bound = 10;   // largest tree checked, in vertices
  std::size_t word_length = 4;   // words compared against their trees
  std::size_t graft_limit = 20000;
};

/// Checks that evaluation extends `a` along theta: every word agrees with its
/// tree, every tree up to the bound evaluates, and evaluation turns grafting
/// into composition. Rules: "theta-mismatch", "invalid-tree",
/// "graft-mismatch". Throws NotStrict.
CheckReport extend_restrict_roundtrip(const FreeSemiTheory& c, const FinSetAlgebra& a,
                                      const RoundtripOptions& options = {});

}  // namespace sketchforge
