#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sketchforge {

/// A morphism in any category representation. `word` is read left to right:
/// {f, g} means "f, then g". Explicit categories use one-letter words holding
/// the morphism name; free categories use generator words (empty = identity).
struct Morphism {
  std::string dom;
  std::string cod;
  std::vector<std::string> word;

  auto operator<=>(const Morphism&) const = default;
  bool operator==(const Morphism&) const = default;
};

std::string to_string(const Morphism& m);

/// A finite category with every hom-set and the full composition table in
/// memory. Morphisms are addressed by dense ids in declaration order.
class ExplicitCategory {
 public:
  using MorphId = std::uint32_t;

  struct Arrow {
    std::string name;
    std::size_t dom = 0;
    std::size_t cod = 0;
  };

  /// `compose(f, g)` returns the id of "f then g"; it is called exactly once
  /// per composable pair while the table is built.
  using ComposeFn = std::function<MorphId(MorphId, MorphId)>;

  ExplicitCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                   std::vector<MorphId> identities, const ComposeFn& compose);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return arrows_.size(); }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object_name(std::size_t i) const { return objects_.at(i); }
  std::optional<std::size_t> find_object(const std::string& name) const;
  std::size_t object_index(const std::string& name) const;  // throws UnknownObject

  const Arrow& arrow(MorphId f) const { return arrows_.at(f); }
  const std::string& name(MorphId f) const { return arrows_.at(f).name; }
  std::size_t dom(MorphId f) const { return arrows_.at(f).dom; }
  std::size_t cod(MorphId f) const { return arrows_.at(f).cod; }
  std::optional<MorphId> find(const std::string& name) const;
  MorphId id_of(const std::string& name) const;  // throws UnknownMorphism

  MorphId identity(std::size_t object) const { return identities_.at(object); }
  bool is_identity(MorphId f) const { return identities_.at(dom(f)) == f; }

  /// "f then g"; throws NotComposable.
  MorphId compose(MorphId f, MorphId g) const;

  const std::vector<MorphId>& hom(std::size_t a, std::size_t b) const;
  /// Morphisms with domain `a`, in declaration order.
  const std::vector<MorphId>& out(std::size_t a) const { return out_.at(a); }
  /// Morphisms with codomain `b`, in declaration order.
  const std::vector<MorphId>& in(std::size_t b) const { return in_.at(b); }

  Morphism as_morphism(MorphId f) const;
  /// Accepts a one-letter word naming a morphism, or a path composed left to
  /// right; the empty word is accepted only together with `dom`.
  MorphId resolve(const Morphism& m) const;

 private:
  std::vector<std::string> objects_;
  std::unordered_map<std::string, std::size_t> object_lookup_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, MorphId> lookup_;
  std::vector<MorphId> identities_;
  std::vector<std::vector<MorphId>> hom_;  // indexed dom * n + cod
  std::vector<std::vector<MorphId>> out_;
  std::vector<std::vector<MorphId>> in_;
  std::vector<std::uint32_t> out_pos_;             // position of f inside out_[dom f]
  std::vector<std::vector<MorphId>> compose_;      // compose_[f][out_pos_[g]]
};

/// Result of an exhaustive law check on an explicit category.
struct LawViolation {
  std::string rule;  // "left-unit", "right-unit", "associativity"
  std::vector<std::string> witness;
};
std::vector<LawViolation> check_category_laws(const ExplicitCategory& cat);

struct GeneratorId {
  std::string name;
  std::string dom;
  std::string cod;

  bool operator==(const GeneratorId&) const = default;
};

/// The free category on a finite graph. Morphisms are generator words and
/// equality is letter-sequence equality.
class FreeCategory {
 public:
  FreeCategory(std::vector<std::string> objects, std::vector<GeneratorId> generators);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<GeneratorId>& generators() const { return generators_; }
  bool has_object(const std::string& name) const;
  const GeneratorId& generator(const std::string& name) const;  // throws UnknownMorphism
  std::optional<std::size_t> generator_index(const std::string& name) const;

  /// Words from a to b with at most `bound` letters, by length, then
  /// lexicographically in generator declaration order.
  std::vector<Morphism> hom(const std::string& a, const std::string& b, std::size_t bound) const;

  Morphism identity(const std::string& a) const;
  Morphism generator_morphism(const std::string& name) const;
  Morphism compose(const Morphism& f, const Morphism& g) const;
  /// Throws NotComposable if consecutive letters do not chain.
  void check_word(const Morphism& m) const;

 private:
  std::vector<std::string> objects_;
  std::vector<GeneratorId> generators_;
  std::unordered_map<std::string, std::size_t> gen_lookup_;
};

/// Throws UnknownObject if a generator endpoint is undeclared.
FreeCategory free_category(std::vector<std::string> objects, std::vector<GeneratorId> generators);

/// Exactly one morphism "x>y" between every ordered pair of labels.
ExplicitCategory indiscrete_category(const std::vector<std::string>& labels);

/// Componentwise product. Objects and morphisms are named "a*b".
ExplicitCategory product_category(const ExplicitCategory& c1, const ExplicitCategory& c2);

/// Same objects and morphisms with every arrow reversed; morphism names get
/// `suffix` appended.
ExplicitCategory opposite_category(const ExplicitCategory& c, const std::string& suffix = "");

/// The single-object, single-morphism category.
ExplicitCategory terminal_category(const std::string& object = "*");

/// Full subcategory of finite sets on the given cardinalities, restricted to
/// the maps accepted by `keep` (all maps when empty). Morphism names are
/// "<prefix><a>><b>/<values>" with values written as digits.
ExplicitCategory function_category(
    const std::vector<std::string>& objects, const std::vector<std::size_t>& sizes,
    const std::string& prefix,
    const std::function<bool(std::size_t, std::size_t, const std::vector<std::size_t>&)>& keep = {});

}  // namespace sketchforge
