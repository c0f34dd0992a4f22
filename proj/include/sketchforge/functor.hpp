#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sketchforge/category_view.hpp"
#include "sketchforge/sketch.hpp"

namespace sketchforge {

/// A functor between two categories, given on objects by a table and on
/// morphisms by a function (tables cover the explicit and free cases).
class Functor {
 public:
  using MorphismMap = std::function<Morphism(const Morphism&)>;

  Functor(CategoryView source, CategoryView target, std::map<std::string, std::string> objects, MorphismMap on_morphisms);

  /// Explicit source: `arrows` is keyed by morphism name. Free source: keyed by
  /// generator name, and words are sent to composites.
  static Functor from_table(CategoryView source, CategoryView target, std::map<std::string, std::string> objects,
                            std::map<std::string, Morphism> arrows);
  static Functor identity(const CategoryView& c);

  const CategoryView& source() const { return source_; }
  const CategoryView& target() const { return target_; }
  const std::map<std::string, std::string>& object_map() const { return objects_; }

  const std::string& object(const std::string& o) const;  // throws UnknownObject
  /// Image in normal form.
  Morphism operator()(const Morphism& m) const;
  Cone apply(const Cone& c) const;

 private:
  CategoryView source_;
  CategoryView target_;
  std::map<std::string, std::string> objects_;
  MorphismMap on_morphisms_;
};

/// "first, then second".
Functor compose(const Functor& first, const Functor& second);

/// Exhaustive on an explicit source: endpoints, identities and composites.
/// On a free source only the generator endpoints are checked. Returns a
/// description of the first failure.
std::optional<std::string> functor_violation(const Functor& f);

struct SketchMorphism {
  Sketch source;
  Sketch target;
  Functor functor;
};

/// Every source cone must map to a target cone with the same leg order.
std::optional<std::string> cone_preservation_violation(const SketchMorphism& g);
bool injective_on_objects(const Functor& f);

}  // namespace sketchforge
