#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sketchforge/functor.hpp"
#include "sketchforge/sketch.hpp"

namespace sketchforge {

using Table = std::vector<std::size_t>;  // a function {0..n-1} -> {0..m-1}

/// A functor into finite sets. Over an explicit category `actions` holds a
/// table for every morphism name; over a free category, one per generator.
struct FinSetAlgebra {
  std::map<std::string, std::vector<std::string>> carriers;
  std::map<std::string, Table> actions;

  std::size_t size(const std::string& object) const;  // throws UnknownObject
  bool operator==(const FinSetAlgebra&) const = default;
};

/// Carrier of `n` elements labelled "0".."n-1".
std::vector<std::string> numbered_carrier(std::size_t n);

/// Table of a morphism (explicit: by name; free: composite of generators).
Table action_of(const CategoryView& cat, const FinSetAlgebra& a, const Morphism& m);

/// First functoriality failure: missing or ill-sized tables, identities, and
/// (explicit only) composites.
std::optional<std::string> functoriality_violation(const CategoryView& cat, const FinSetAlgebra& a);

struct ConeComparison {
  std::string cone;
  std::vector<std::vector<std::size_t>> images;  // per apex element, its leg coordinates
  bool bijective = false;
};

struct StrictnessWitness {
  std::vector<ConeComparison> cones;
  bool verdict = true;
};

/// Throws NotFunctorial.
StrictnessWitness is_strict_algebra(const Sketch& s, const FinSetAlgebra& a);

/// Carrier sizes of every object from the given ones and the cones. The first
/// cone on an apex whose legs do not depend on the apex fixes it as a product.
/// Throws CarrierConflict or UnderdeterminedCarrier.
std::map<std::string, std::size_t> forced_carriers(const Sketch& s, const std::map<std::string, std::size_t>& given);

/// All strict algebras whose carriers are the given sets and, on every apex,
/// the product of its legs (the first product-fixing cone's projections are
/// the coordinate maps). Explicit categories only.
std::vector<FinSetAlgebra> enumerate_strict_algebras(const Sketch& s, const std::map<std::string, std::size_t>& given);

/// Precomposition X o G.
FinSetAlgebra restrict_along(const Functor& g, const FinSetAlgebra& x);

// ---------------------------------------------------------------------------
// Natural transformations and corepresented diagrams

using NatTrans = std::map<std::string, Table>;

/// All natural transformations a => b, components in object order; naturality
/// is checked on every morphism (explicit) or generator (free).
std::vector<NatTrans> natural_transformations(const CategoryView& cat, const FinSetAlgebra& a, const FinSetAlgebra& b);
bool is_natural(const CategoryView& cat, const FinSetAlgebra& a, const FinSetAlgebra& b, const NatTrans& t);

/// d |-> Hom(c, d); elements are labelled by morphism names.
FinSetAlgebra corepresented(const ExplicitCategory& cat, const std::string& c);

/// A morphism of diagrams with its endpoints.
struct DiagramMap {
  FinSetAlgebra source;
  FinSetAlgebra target;
  NatTrans components;
};

/// The map from the coproduct of the leg diagrams to the apex diagram given
/// by precomposition with the projections. Source elements are labelled
/// "k:f" for f in the k-th summand.
DiagramMap localizing_map(const Sketch& s, const Cone& cone);

/// Decides strictness by brute-force natural transformations: X is strictly
/// local iff precomposition along every localizing map is a bijection of
/// natural transformation sets.
bool is_strictly_local(const Sketch& s, const FinSetAlgebra& x);

}  // namespace sketchforge
