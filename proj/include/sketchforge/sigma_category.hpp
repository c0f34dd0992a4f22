#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sketchforge/category.hpp"
#include "sketchforge/cone.hpp"

namespace sketchforge {

/// Lazily presented category obtained from a multi-sorted base B by adding an
/// object for every missing sort tuple (up to a maximal length) together with
/// free projections into the 1-tuple objects. B is a full subcategory; new
/// objects receive no morphisms except their identities.
///
/// Morphism words: old morphisms are {name}; the identity of a new object is
/// {}; a projection followed by a B-morphism f is {"p<k><tuple>", f}, with f
/// dropped when it is an identity.
class SigmaCategory {
 public:
  SigmaCategory(std::shared_ptr<const ExplicitCategory> base, SortedStructure base_index,
                std::size_t max_tuple_length);

  const ExplicitCategory& base() const { return *base_; }
  std::shared_ptr<const ExplicitCategory> base_ptr() const { return base_; }
  const SortedStructure& base_index() const { return base_index_; }
  std::size_t max_tuple_length() const { return max_len_; }

  static std::string tuple_object_name(const SortTuple& tuple);
  static std::string projection_name(std::size_t k, const SortTuple& tuple);

  /// Old objects in base order, then new tuples by length and lexicographically
  /// in sort order.
  std::vector<std::string> objects() const;
  const std::vector<SortTuple>& new_tuples() const { return new_tuples_; }
  std::optional<SortTuple> new_tuple_of(const std::string& object) const;
  bool has_object(const std::string& object) const;

  std::vector<Morphism> hom(const std::string& a, const std::string& b) const;
  Morphism identity(const std::string& a) const;
  Morphism compose(const Morphism& f, const Morphism& g) const;
  /// k is 1-based; `tuple` must be a new tuple.
  Morphism projection(const SortTuple& tuple, std::size_t k) const;
  void check(const Morphism& m) const;

  /// Canonical name of a morphism in the materialized category.
  static std::string morphism_name(const Morphism& m);
  /// Every object and morphism (finite because B is).
  ExplicitCategory materialize() const;

 private:
  std::shared_ptr<const ExplicitCategory> base_;
  SortedStructure base_index_;
  std::size_t max_len_;
  std::vector<SortTuple> new_tuples_;
  std::map<std::string, SortTuple> new_lookup_;
};

}  // namespace sketchforge
