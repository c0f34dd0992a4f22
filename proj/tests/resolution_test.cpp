#include <doctest.h>

#include <memory>
#include <random>

#include "sketchforge/builtins.hpp"
#include "sketchforge/error.hpp"
#include "sketchforge/resolution.hpp"

using namespace sketchforge;

namespace {

CategoryView three_generators() {
  return CategoryView(std::make_shared<const FreeCategory>(
      free_category({"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}, {"h", "a", "a"}})));
}

// Every identity among faces and degeneracies that applies at level k.
void check_identities(const CategoryView& c, const ResolutionWord& w) {
  const std::size_t k = w.level;
  if (k >= 2)
    for (std::size_t j = 1; j <= k; ++j)
      for (std::size_t i = 0; i < j; ++i) CHECK(face(c, i, face(c, j, w)) == face(c, j - 1, face(c, i, w)));
  for (std::size_t j = 0; j <= k; ++j)
    for (std::size_t i = 0; i <= j; ++i)
      CHECK(degeneracy(i, degeneracy(j, w)) == degeneracy(j + 1, degeneracy(i, w)));
  for (std::size_t j = 0; j <= k; ++j) {
    const auto s = degeneracy(j, w);
    for (std::size_t i = 0; i <= k + 1; ++i) {
      const auto d = face(c, i, s);
      if (i == j || i == j + 1) CHECK(d == w);
      else if (i < j) CHECK(d == degeneracy(j - 1, face(c, i, w)));
      else CHECK(d == degeneracy(j, face(c, i - 1, w)));
    }
  }
}

}  // namespace

TEST_CASE("faces of small words") {
  const auto c = three_generators();
  const auto f = resolution_letter(c, Morphism{"a", "b", {"f"}});
  const auto g = resolution_letter(c, Morphism{"b", "a", {"g"}});
  const auto fg = resolution_compose(resolution_bracket(f), resolution_bracket(g));
  CHECK(face(c, 0, fg) == resolution_compose(f, g));
  CHECK(face(c, 0, resolution_bracket(f)) == f);
  CHECK(counit(c, fg) == Morphism{"a", "a", {"f", "g"}});
  CHECK_THROWS_AS(face(c, 0, f), IndexOutOfRange);
  CHECK_THROWS_AS(face(c, 2, fg), IndexOutOfRange);
  CHECK_THROWS_AS(resolution_compose(f, fg), LevelMismatch);
  CHECK_THROWS_AS(resolution_compose(f, f), NotComposable);
}

TEST_CASE("simplicial identities hold exhaustively up to level 2") {
  const auto c = three_generators();
  for (std::size_t level = 0; level <= 2; ++level) {
    const auto words = enumerate_resolution_words(c, level, 3);
    CHECK(!words.empty());
    for (const auto& w : words) {
      check_resolution_word(c, w);
      check_identities(c, w);
      CHECK_FALSE(simplicial_identity_violation(c, w).has_value());
    }
  }
}

TEST_CASE("simplicial identities over an explicit category") {
  const CategoryView c = builtin_binary().cat;
  for (std::size_t level = 0; level <= 2; ++level)
    for (const auto& w : enumerate_resolution_words(c, level, 2)) check_identities(c, w);
}

TEST_CASE("counit is functorial on random nested words") {
  const auto c = three_generators();
  std::mt19937 rng(5);
  int pairs = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t level = rng() % 3;
    const auto a = random_resolution_word(c, level, 3, rng);
    check_resolution_word(c, a);
    auto b = random_resolution_word(c, level, 3, rng);
    for (int tries = 0; b.dom != a.cod && tries < 20; ++tries) b = random_resolution_word(c, level, 3, rng);
    if (b.dom == a.cod) {
      ++pairs;
      CHECK(counit(c, resolution_compose(a, b)) == c.compose(counit(c, a), counit(c, b)));
    }
    CHECK(counit(c, resolution_identity(level, a.dom)) == c.identity(a.dom));
    for (std::size_t j = 0; j <= level; ++j) CHECK(counit(c, degeneracy(j, a)) == counit(c, a));
    if (level > 0)
      for (std::size_t j = 0; j <= level; ++j) CHECK(counit(c, face(c, j, a)) == counit(c, a));
  }
  CHECK(pairs > 400);
}

TEST_CASE("degeneracy then face is the identity") {
  const auto c = three_generators();
  std::mt19937 rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::size_t level = rng() % 3;
    const auto w = random_resolution_word(c, level, 3, rng);
    const std::size_t j = rng() % (level + 1);
    CHECK(face(c, j, degeneracy(j, w)) == w);
  }
}

TEST_CASE("counit undoes iterated singleton brackets") {
  const auto c = three_generators();
  for (const auto& m : c.hom("a", "a", 3))
    for (std::size_t k = 0; k <= 3; ++k) CHECK(counit(c, resolution_include(c, m, k)) == m);
}
