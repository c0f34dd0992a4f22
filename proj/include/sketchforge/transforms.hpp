#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "sketchforge/algebra.hpp"
#include "sketchforge/completion.hpp"
#include "sketchforge/functor.hpp"
#include "sketchforge/sigma_category.hpp"
#include "sketchforge/sketch.hpp"

namespace sketchforge {

/// B x K x J with the lifted cones and identity cones on every object that no
/// lifted cone touches. A 1-fold cone with identity projection lifts to the
/// identity cone on its leg (b, alpha, 1). Objects are named "b*alpha*j".
struct MuSketch {
  struct Origin {
    std::string object;
    std::string cone;
    int copy = 0;  // 0 or 1, the J coordinate
  };

  Sketch sketch;
  Sketch origin;
  /// Leg objects of lifted cones, then objects carrying identity cones, in
  /// object order.
  std::vector<std::string> distinguished;
  std::map<std::string, Origin> origin_of;
  std::vector<std::string> cone_names;  // objects of K
  std::string fixed_cone;               // used by the embedding
  bool trivial = false;                 // empty cone set: returned unchanged

  /// b |-> (b, fixed cone, 0).
  Functor embedding() const;
};

std::string mu_object_name(const std::string& b, const std::string& cone, int copy);
/// Throws NotExplicit, or BadParam on repeated cone names.
MuSketch mu_transform(const Sketch& s);

/// A multi-sorted sketch completed to a semi-theory by freely adding every
/// missing tuple of length at most L.
struct SigmaTheory {
  Sketch sketch;
  SortedStructure sorted;
  std::shared_ptr<const SigmaCategory> category;

  SemiTheory semi_theory() const { return SemiTheory(sketch, sorted); }
};

/// `base` must be multi-sorted with the given indexing; its category must be
/// explicit.
SigmaTheory sigma_transform(const Sketch& base, const SortedStructure& sorted, std::size_t max_tuple_length);
SigmaTheory sigma_transform(const MuSketch& m, std::size_t max_tuple_length);

struct Pipeline {
  MuSketch mu;
  SigmaTheory sigma;
};
Pipeline pipeline(const Sketch& s, std::size_t max_tuple_length);

/// (b, alpha, i) |-> (G b, G alpha, i). Throws NotConePreserving or
/// NotInjectiveOnObjects.
Functor mu_transport(const SketchMorphism& g, const MuSketch& m1, const MuSketch& m2);
/// Extends the transported functor to the added tuples, sending free
/// projections to the projections of the image tuple.
Functor transport_functor(const SketchMorphism& g, const Pipeline& p1, const Pipeline& p2);

// ---------------------------------------------------------------------------

/// The semi-theory whose only non-identity morphisms are projections, on all
/// tuples over `sorts` of length at most `max_tuple_length`.
FreeSemiTheory initial_semitheory(const std::vector<std::string>& sorts, std::size_t max_tuple_length);

/// The sort- and projection-preserving functor out of P. Throws SortMismatch.
Functor unique_map_to(const FreeSemiTheory& p, const Sketch& c, const SortedStructure& sorted);
/// Every cone-preserving, sort-preserving assignment on P's generators, by
/// exhaustion of the candidate hom-sets.
std::vector<Functor> all_maps_from_initial(const FreeSemiTheory& p, const Sketch& c, const SortedStructure& sorted);

/// Words ending at `c` whose first generator is not a projection, up to
/// `bound` letters. Throws BoundExceeded if longer ones exist.
std::vector<Morphism> left_extension_index(const FreeSemiTheory& c, const std::string& object, std::size_t bound);

/// The left adjoint of restriction along P -> C on finite-set functors:
/// Y(c) plus one copy of Y(dom w) for each indexing word w ending at c.
FinSetAlgebra left_extend(const FreeSemiTheory& p, const FinSetAlgebra& y, const FreeSemiTheory& c,
                          std::size_t bound = 8);
/// Restriction along P -> C.
FinSetAlgebra restrict_to_initial(const FreeSemiTheory& p, const FreeSemiTheory& c, const FinSetAlgebra& x);

}  // namespace sketchforge
