#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sketchforge/category_view.hpp"
#include "sketchforge/cone.hpp"

namespace sketchforge {

/// A category paired with an ordered set of cones. `sorting` is optional
/// indexing metadata (sorts and the tuple of each object).
struct Sketch {
  std::string name;
  CategoryView cat;
  std::vector<Cone> cones;
  std::optional<SortedStructure> sorting;

  const Cone* find_cone(const std::string& cone_name) const;
};

struct Violation {
  std::string rule;
  std::string witness;
};

struct CheckReport {
  std::vector<Violation> violations;

  bool verdict() const { return violations.empty(); }
  void add(std::string rule, std::string witness) { violations.push_back({std::move(rule), std::move(witness)}); }
  bool has(const std::string& rule) const;
};

/// Every projection must run from the apex to its leg object.
CheckReport validate_sketch(const Sketch& s);

/// True iff the cone is a limit cone over the discrete diagram of its legs,
/// decided by brute force over all objects and leg tuples.
bool is_product_cone(const ExplicitCategory& cat, const Cone& cone);
bool is_product_cone(const CategoryView& cat, const Cone& cone);  // throws NotExplicit

/// Semi-theory clauses over the indexed tuples. A 1-tuple without a declared
/// cone carries the implicit identity cone.
CheckReport is_semi_theory(const Sketch& s, const SortedStructure& sorted);
/// Semi-theory and every cone a product cone. Throws NotExplicit.
CheckReport is_algebraic_theory(const Sketch& s, const SortedStructure& sorted);

struct MultisortedResult {
  bool verdict = false;
  std::vector<std::string> distinguished;  // object order
  SortedStructure inferred;                // tuple index derived from the witness
  CheckReport report;
};
/// Searches for a distinguished object set making the sketch multi-sorted.
MultisortedResult is_multisorted_fps(const Sketch& s);
/// Checks one candidate distinguished set.
CheckReport check_multisorted(const Sketch& s, const std::vector<std::string>& distinguished);

/// A sketch known to satisfy the semi-theory clauses.
class SemiTheory {
 public:
  /// Throws NotSemiTheory with the first violation.
  SemiTheory(Sketch sketch, SortedStructure sorted);

  const Sketch& sketch() const { return sketch_; }
  const SortedStructure& sorted() const { return sorted_; }
  const CategoryView& cat() const { return sketch_.cat; }
  /// The cone of an indexed tuple; for 1-tuples without a declared cone, the
  /// identity cone.
  Cone cone_of_tuple(const SortTuple& tuple) const;
  /// k-th projection (1-based) of the cone indexed by `tuple`.
  Morphism projection(const SortTuple& tuple, std::size_t k) const;

 private:
  Sketch sketch_;
  SortedStructure sorted_;
};

/// 1-fold cone on `object` whose projection is the identity.
Cone identity_cone(const CategoryView& cat, const std::string& object, const std::string& name);
bool is_identity_cone(const CategoryView& cat, const Cone& c);

}  // namespace sketchforge
