#include "sketchforge/resolution.hpp"

#include <functional>

#include "sketchforge/error.hpp"

namespace sketchforge {

std::string to_string(const ResolutionWord& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += ",";
    if (w.level == 0) {
      const auto& m = w.letters[i];
      if (m.word.empty()) out += "id_" + m.dom;
      else
        for (std::size_t j = 0; j < m.word.size(); ++j) out += (j ? "." : "") + m.word[j];
    } else {
      out += to_string(w.children[i]);
    }
  }
  return out + ")";
}

ResolutionWord resolution_identity(std::size_t level, const std::string& object) {
  return ResolutionWord{level, object, object, {}, {}};
}

ResolutionWord resolution_letter(const CategoryView& c, const Morphism& m) {
  Morphism n = c.normalize(m);
  return ResolutionWord{0, n.dom, n.cod, {n}, {}};
}

ResolutionWord resolution_bracket(const ResolutionWord& w) {
  return ResolutionWord{w.level + 1, w.dom, w.cod, {}, {w}};
}

ResolutionWord resolution_include(const CategoryView& c, const Morphism& m, std::size_t level) {
  ResolutionWord w = resolution_letter(c, m);
  for (std::size_t k = 0; k < level; ++k) w = resolution_bracket(w);
  return w;
}

ResolutionWord resolution_compose(const ResolutionWord& a, const ResolutionWord& b) {
  if (a.level != b.level)
    throw LevelMismatch("levels " + std::to_string(a.level) + " and " + std::to_string(b.level));
  if (a.cod != b.dom) throw NotComposable(to_string(a) + " ends at " + a.cod + ", " + to_string(b) + " starts at " + b.dom);
  ResolutionWord out{a.level, a.dom, b.cod, a.letters, a.children};
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  out.children.insert(out.children.end(), b.children.begin(), b.children.end());
  return out;
}

Morphism counit(const CategoryView& c, const ResolutionWord& w) {
  Morphism acc = c.identity(w.dom);
  if (w.level == 0)
    for (const auto& m : w.letters) acc = c.compose(acc, m);
  else
    for (const auto& child : w.children) acc = c.compose(acc, counit(c, child));
  return acc;
}

ResolutionWord face(const CategoryView& c, std::size_t i, const ResolutionWord& w) {
  if (w.level == 0 || i > w.level)
    throw IndexOutOfRange("face " + std::to_string(i) + " at level " + std::to_string(w.level));
  ResolutionWord out{w.level - 1, w.dom, w.cod, {}, {}};
  if (i == 0) {
    for (const auto& child : w.children) {
      out.letters.insert(out.letters.end(), child.letters.begin(), child.letters.end());
      out.children.insert(out.children.end(), child.children.begin(), child.children.end());
    }
    return out;
  }
  if (w.level == 1) {
    for (const auto& child : w.children) out.letters.push_back(counit(c, child));
    return out;
  }
  for (const auto& child : w.children) out.children.push_back(face(c, i - 1, child));
  return out;
}

ResolutionWord degeneracy(std::size_t i, const ResolutionWord& w) {
  if (i > w.level) throw IndexOutOfRange("degeneracy " + std::to_string(i) + " at level " + std::to_string(w.level));
  ResolutionWord out{w.level + 1, w.dom, w.cod, {}, {}};
  if (i == 0) {
    if (w.level == 0)
      for (const auto& m : w.letters) out.children.push_back(ResolutionWord{0, m.dom, m.cod, {m}, {}});
    else
      for (const auto& child : w.children) out.children.push_back(resolution_bracket(child));
    return out;
  }
  for (const auto& child : w.children) out.children.push_back(degeneracy(i - 1, child));
  return out;
}

void check_resolution_word(const CategoryView& c, const ResolutionWord& w) {
  std::string at = w.dom;
  if (w.level == 0) {
    for (const auto& m : w.letters) {
      c.normalize(m);
      if (m.dom != at) throw NotComposable("letter " + to_string(m) + " does not start at " + at);
      at = m.cod;
    }
  } else {
    for (const auto& child : w.children) {
      if (child.level + 1 != w.level) throw LevelMismatch("nested level in " + to_string(w));
      check_resolution_word(c, child);
      if (child.dom != at) throw NotComposable("letter " + to_string(child) + " does not start at " + at);
      at = child.cod;
    }
  }
  if (at != w.cod) throw NotComposable(to_string(w) + " does not end at " + w.cod);
}

namespace {

std::vector<Morphism> base_letters(const CategoryView& c) {
  std::vector<Morphism> out;
  if (auto fc = c.as_free()) {
    for (const auto& g : fc->generators()) out.push_back(fc->generator_morphism(g.name));
    return out;
  }
  if (auto sc = c.as_sigma()) {
    for (const auto& a : sc->objects())
      for (const auto& b : sc->objects())
        for (const auto& m : sc->hom(a, b))
          if (!c.is_identity(m)) out.push_back(m);
    return out;
  }
  const auto& ec = c.explicit_category();
  for (ExplicitCategory::MorphId f = 0; f < ec.morphism_count(); ++f)
    if (!ec.is_identity(f)) out.push_back(ec.as_morphism(f));
  return out;
}

std::size_t letter_count(const ResolutionWord& w) {
  if (w.level == 0) return w.letters.size();
  std::size_t n = 0;
  for (const auto& ch : w.children) n += letter_count(ch);
  return n;
}

// Non-empty letters of level `level` by flattened size, grouped by domain.
void extend_words(const std::vector<ResolutionWord>& letters, std::size_t level, std::size_t max_letters,
                  const ResolutionWord& prefix, std::size_t used, std::vector<ResolutionWord>& out) {
  for (const auto& l : letters) {
    if (l.dom != prefix.cod) continue;
    const std::size_t n = letter_count(l);
    if (n == 0 || used + n > max_letters) continue;
    ResolutionWord next = prefix;
    next.cod = l.cod;
    if (level == 0) next.letters.push_back(l.letters.front());
    else next.children.push_back(l);
    out.push_back(next);
    extend_words(letters, level, max_letters, next, used + n, out);
  }
}

}  // namespace

std::vector<ResolutionWord> enumerate_resolution_words(const CategoryView& c, std::size_t level, std::size_t max_letters) {
  std::vector<ResolutionWord> letters;  // candidate letters of the requested level
  if (level == 0) {
    for (const auto& m : base_letters(c)) letters.push_back(ResolutionWord{0, m.dom, m.cod, {m}, {}});
  } else {
    for (auto& w : enumerate_resolution_words(c, level - 1, max_letters))
      if (letter_count(w) > 0) letters.push_back(std::move(w));
  }
  std::vector<ResolutionWord> out;
  for (const auto& o : c.objects()) {
    ResolutionWord empty = resolution_identity(level, o);
    out.push_back(empty);
    extend_words(letters, level, max_letters, empty, 0, out);
  }
  return out;
}

ResolutionWord random_resolution_word(const CategoryView& c, std::size_t level, std::size_t max_length, std::mt19937& rng) {
  const auto letters = base_letters(c);
  const auto objects = c.objects();
  std::function<ResolutionWord(std::size_t, const std::string&)> gen = [&](std::size_t lvl, const std::string& start) {
    ResolutionWord w = resolution_identity(lvl, start);
    const std::size_t len = std::uniform_int_distribution<std::size_t>(lvl == level ? 0 : 1, max_length)(rng);
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<const Morphism*> out;
      for (const auto& m : letters)
        if (m.dom == w.cod) out.push_back(&m);
      if (out.empty()) break;
      if (lvl == 0) {
        const Morphism& m = *out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        w.letters.push_back(m);
        w.cod = m.cod;
      } else {
        ResolutionWord child = gen(lvl - 1, w.cod);
        if (child.length() == 0) break;
        w.cod = child.cod;
        w.children.push_back(std::move(child));
      }
    }
    return w;
  };
  const std::string& start = objects[std::uniform_int_distribution<std::size_t>(0, objects.size() - 1)(rng)];
  return gen(level, start);
}

std::optional<std::string> simplicial_identity_violation(const CategoryView& c, const ResolutionWord& w) {
  const std::size_t n = w.level;
  auto tag = [&](const std::string& id) { return id + " on " + to_string(w); };
  // faces, needs n >= 2
  for (std::size_t j = 1; n >= 2 && j <= n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (face(c, i, face(c, j, w)) != face(c, j - 1, face(c, i, w)))
        return tag("d" + std::to_string(i) + "d" + std::to_string(j));
  // degeneracies
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i <= j; ++i)
      if (degeneracy(i, degeneracy(j, w)) != degeneracy(j + 1, degeneracy(i, w)))
        return tag("s" + std::to_string(i) + "s" + std::to_string(j));
  // mixed: w at level n, s_j lifts to n+1, faces d_0..d_{n+1}
  for (std::size_t j = 0; j <= n; ++j) {
    const ResolutionWord sj = degeneracy(j, w);
    for (std::size_t i = 0; i <= n + 1; ++i) {
      const ResolutionWord lhs = face(c, i, sj);
      if (i == j || i == j + 1) {
        if (lhs != w) return tag("d" + std::to_string(i) + "s" + std::to_string(j));
      } else if (i < j) {
        if (lhs != degeneracy(j - 1, face(c, i, w))) return tag("d" + std::to_string(i) + "s" + std::to_string(j));
      } else {
        if (lhs != degeneracy(j, face(c, i - 1, w))) return tag("d" + std::to_string(i) + "s" + std::to_string(j));
      }
    }
  }
  return std::nullopt;
}

}  // namespace sketchforge
