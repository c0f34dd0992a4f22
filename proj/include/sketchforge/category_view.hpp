#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sketchforge/category.hpp"
#include "sketchforge/sigma_category.hpp"

namespace sketchforge {

/// Uniform, read-only access to the three category representations.
class CategoryView {
 public:
  using Rep = std::variant<std::shared_ptr<const ExplicitCategory>, std::shared_ptr<const FreeCategory>,
                           std::shared_ptr<const SigmaCategory>>;

  CategoryView() = default;
  CategoryView(std::shared_ptr<const ExplicitCategory> c) : rep_(std::move(c)) {}
  CategoryView(std::shared_ptr<const FreeCategory> c) : rep_(std::move(c)) {}
  CategoryView(std::shared_ptr<const SigmaCategory> c) : rep_(std::move(c)) {}

  const Rep& rep() const { return rep_; }

  const ExplicitCategory* as_explicit() const;
  const FreeCategory* as_free() const;
  const SigmaCategory* as_sigma() const;
  /// Throws NotExplicit.
  const ExplicitCategory& explicit_category() const;
  std::shared_ptr<const ExplicitCategory> explicit_ptr() const;

  std::vector<std::string> objects() const;
  bool has_object(const std::string& name) const;
  /// `bound` limits word length for free categories and is ignored otherwise.
  std::vector<Morphism> hom(const std::string& a, const std::string& b, std::size_t bound = 4) const;
  Morphism compose(const Morphism& f, const Morphism& g) const;
  Morphism identity(const std::string& a) const;
  /// Normal form of a morphism given as a path (explicit categories accept
  /// multi-letter paths and collapse them to one letter).
  Morphism normalize(const Morphism& m) const;
  bool is_identity(const Morphism& m) const;

 private:
  Rep rep_;
};

}  // namespace sketchforge
