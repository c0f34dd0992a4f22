#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sketchforge/category_view.hpp"

namespace sketchforge {

/// A morphism of the level-k free category of the resolution. At level 0 the
/// letters are morphisms of the base category (identities included); at level
/// k > 0 the letters are level-(k-1) words. Letters are read left to right.
struct ResolutionWord {
  std::size_t level = 0;
  std::string dom;
  std::string cod;
  std::vector<Morphism> letters;          // level 0
  std::vector<ResolutionWord> children;   // level > 0

  std::size_t length() const { return level == 0 ? letters.size() : children.size(); }
  bool operator==(const ResolutionWord&) const = default;
};

std::string to_string(const ResolutionWord& w);

ResolutionWord resolution_identity(std::size_t level, const std::string& object);
/// One-letter level-0 word.
ResolutionWord resolution_letter(const CategoryView& c, const Morphism& m);
/// Nests `m` in k singleton brackets.
ResolutionWord resolution_include(const CategoryView& c, const Morphism& m, std::size_t level);
/// One-letter word whose letter is `w`.
ResolutionWord resolution_bracket(const ResolutionWord& w);

/// "a then b"; throws LevelMismatch or NotComposable.
ResolutionWord resolution_compose(const ResolutionWord& a, const ResolutionWord& b);

/// Flattens every bracket and composes in the base category.
Morphism counit(const CategoryView& c, const ResolutionWord& w);

/// d_0 concatenates the outermost letters, d_i maps d_{i-1} over the letters,
/// and the innermost face composes level-0 words in the base. Throws
/// IndexOutOfRange unless 1 <= level and i <= level.
ResolutionWord face(const CategoryView& c, std::size_t i, const ResolutionWord& w);
/// s_0 brackets every letter as a singleton, s_i maps s_{i-1} over the
/// letters. Throws IndexOutOfRange unless i <= level.
ResolutionWord degeneracy(std::size_t i, const ResolutionWord& w);

/// Throws NotComposable if the nested endpoints do not chain.
void check_resolution_word(const CategoryView& c, const ResolutionWord& w);

/// Every level-k word whose flattening has at most `max_letters` base letters;
/// base letters are the non-identity morphisms (explicit) or generators (free).
/// Includes the empty word on every object.
std::vector<ResolutionWord> enumerate_resolution_words(const CategoryView& c, std::size_t level, std::size_t max_letters);

/// A random composable word with at most `max_length` letters per level.
ResolutionWord random_resolution_word(const CategoryView& c, std::size_t level, std::size_t max_length, std::mt19937& rng);

/// Checks every simplicial identity that applies to `w`; returns the first
/// failure.
std::optional<std::string> simplicial_identity_violation(const CategoryView& c, const ResolutionWord& w);

}  // namespace sketchforge
