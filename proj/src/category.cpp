#include "sketchforge/category.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sketchforge/error.hpp"

namespace sketchforge {

std::string to_string(const Morphism& m) {
  std::string out = m.dom + " -> " + m.cod + " : ";
  if (m.word.empty()) return out + "id";
  for (std::size_t i = 0; i < m.word.size(); ++i) {
    if (i) out += '.';
    out += m.word[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// ExplicitCategory

ExplicitCategory::ExplicitCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                   std::vector<MorphId> identities, const ComposeFn& compose)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), identities_(std::move(identities)) {
  const std::size_t n = objects_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!object_lookup_.emplace(objects_[i], i).second)
      throw BadParam("duplicate object '" + objects_[i] + "'");
  }
  if (identities_.size() != n) throw BadParam("one identity per object required");
  hom_.assign(n * n, {});
  out_.assign(n, {});
  in_.assign(n, {});
  out_pos_.assign(arrows_.size(), 0);
  for (MorphId f = 0; f < arrows_.size(); ++f) {
    const Arrow& a = arrows_[f];
    if (a.dom >= n || a.cod >= n) throw UnknownObject("arrow '" + a.name + "' has an undeclared endpoint");
    if (!lookup_.emplace(a.name, f).second) throw BadParam("duplicate morphism '" + a.name + "'");
    hom_[a.dom * n + a.cod].push_back(f);
    out_pos_[f] = static_cast<std::uint32_t>(out_[a.dom].size());
    out_[a.dom].push_back(f);
    in_[a.cod].push_back(f);
  }
  for (std::size_t x = 0; x < n; ++x) {
    const MorphId i = identities_[x];
    if (i >= arrows_.size() || arrows_[i].dom != x || arrows_[i].cod != x)
      throw BadParam("identity of '" + objects_[x] + "' is not an endomorphism of it");
  }
  compose_.assign(arrows_.size(), {});
  for (MorphId f = 0; f < arrows_.size(); ++f) {
    const auto& next = out_[arrows_[f].cod];
    compose_[f].reserve(next.size());
    for (MorphId g : next) {
      const MorphId h = compose(f, g);
      if (h >= arrows_.size() || arrows_[h].dom != arrows_[f].dom || arrows_[h].cod != arrows_[g].cod)
        throw BadParam("composite of '" + arrows_[f].name + "' and '" + arrows_[g].name +
                       "' has wrong endpoints");
      compose_[f].push_back(h);
    }
  }
}

std::optional<std::size_t> ExplicitCategory::find_object(const std::string& name) const {
  auto it = object_lookup_.find(name);
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t ExplicitCategory::object_index(const std::string& name) const {
  auto i = find_object(name);
  if (!i) throw UnknownObject(name);
  return *i;
}

std::optional<ExplicitCategory::MorphId> ExplicitCategory::find(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

ExplicitCategory::MorphId ExplicitCategory::id_of(const std::string& name) const {
  auto f = find(name);
  if (!f) throw UnknownMorphism(name);
  return *f;
}

ExplicitCategory::MorphId ExplicitCategory::compose(MorphId f, MorphId g) const {
  if (arrows_.at(f).cod != arrows_.at(g).dom)
    throw NotComposable(arrows_[f].name + " then " + arrows_[g].name);
  return compose_[f][out_pos_[g]];
}

const std::vector<ExplicitCategory::MorphId>& ExplicitCategory::hom(std::size_t a, std::size_t b) const {
  return hom_.at(a * objects_.size() + b);
}

Morphism ExplicitCategory::as_morphism(MorphId f) const {
  const Arrow& a = arrows_.at(f);
  return Morphism{objects_[a.dom], objects_[a.cod], {a.name}};
}

ExplicitCategory::MorphId ExplicitCategory::resolve(const Morphism& m) const {
  const std::size_t d = object_index(m.dom);
  const std::size_t c = object_index(m.cod);
  MorphId acc = identity(d);
  for (const auto& letter : m.word) acc = compose(acc, id_of(letter));
  if (cod(acc) != c) throw NotComposable("path " + to_string(m) + " ends elsewhere");
  return acc;
}

std::vector<LawViolation> check_category_laws(const ExplicitCategory& cat) {
  using MorphId = ExplicitCategory::MorphId;
  std::vector<LawViolation> out;
  const auto n = static_cast<MorphId>(cat.morphism_count());
  for (MorphId f = 0; f < n; ++f) {
    if (cat.compose(cat.identity(cat.dom(f)), f) != f) out.push_back({"left-unit", {cat.name(f)}});
    if (cat.compose(f, cat.identity(cat.cod(f))) != f) out.push_back({"right-unit", {cat.name(f)}});
    for (MorphId g : cat.out(cat.cod(f))) {
      const MorphId fg = cat.compose(f, g);
      for (MorphId h : cat.out(cat.cod(g))) {
        if (cat.compose(fg, h) != cat.compose(f, cat.compose(g, h)))
          out.push_back({"associativity", {cat.name(f), cat.name(g), cat.name(h)}});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FreeCategory

FreeCategory::FreeCategory(std::vector<std::string> objects, std::vector<GeneratorId> generators)
    : objects_(std::move(objects)), generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (!has_object(g.dom)) throw UnknownObject(g.dom + " (domain of generator " + g.name + ")");
    if (!has_object(g.cod)) throw UnknownObject(g.cod + " (codomain of generator " + g.name + ")");
    if (!gen_lookup_.emplace(g.name, i).second) throw BadParam("duplicate generator '" + g.name + "'");
  }
}

bool FreeCategory::has_object(const std::string& name) const {
  return std::find(objects_.begin(), objects_.end(), name) != objects_.end();
}

std::optional<std::size_t> FreeCategory::generator_index(const std::string& name) const {
  auto it = gen_lookup_.find(name);
  if (it == gen_lookup_.end()) return std::nullopt;
  return it->second;
}

const GeneratorId& FreeCategory::generator(const std::string& name) const {
  auto i = generator_index(name);
  if (!i) throw UnknownMorphism(name);
  return generators_[*i];
}

std::vector<Morphism> FreeCategory::hom(const std::string& a, const std::string& b, std::size_t bound) const {
  if (!has_object(a)) throw UnknownObject(a);
  if (!has_object(b)) throw UnknownObject(b);
  std::vector<Morphism> result;
  std::vector<Morphism> layer{identity(a)};
  for (std::size_t len = 0;; ++len) {
    for (const auto& w : layer)
      if (w.cod == b) result.push_back(w);
    if (len == bound) break;
    std::vector<Morphism> next;
    for (const auto& w : layer) {
      for (const auto& g : generators_) {
        if (g.dom != w.cod) continue;
        Morphism e = w;
        e.cod = g.cod;
        e.word.push_back(g.name);
        next.push_back(std::move(e));
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return result;
}

Morphism FreeCategory::identity(const std::string& a) const {
  if (!has_object(a)) throw UnknownObject(a);
  return Morphism{a, a, {}};
}

Morphism FreeCategory::generator_morphism(const std::string& name) const {
  const auto& g = generator(name);
  return Morphism{g.dom, g.cod, {g.name}};
}

void FreeCategory::check_word(const Morphism& m) const {
  if (!has_object(m.dom)) throw UnknownObject(m.dom);
  if (!has_object(m.cod)) throw UnknownObject(m.cod);
  std::string at = m.dom;
  for (const auto& letter : m.word) {
    const auto& g = generator(letter);
    if (g.dom != at) throw NotComposable("letter " + letter + " does not start at " + at);
    at = g.cod;
  }
  if (at != m.cod) throw NotComposable("word " + to_string(m) + " ends at " + at);
}

Morphism FreeCategory::compose(const Morphism& f, const Morphism& g) const {
  if (f.cod != g.dom) throw NotComposable(to_string(f) + " then " + to_string(g));
  Morphism h{f.dom, g.cod, f.word};
  h.word.insert(h.word.end(), g.word.begin(), g.word.end());
  return h;
}

FreeCategory free_category(std::vector<std::string> objects, std::vector<GeneratorId> generators) {
  return FreeCategory(std::move(objects), std::move(generators));
}

// ---------------------------------------------------------------------------
// Constructions

ExplicitCategory indiscrete_category(const std::vector<std::string>& labels) {
  if (labels.empty()) throw EmptyLabelSet("indiscrete category needs at least one object");
  const std::size_t n = labels.size();
  std::vector<ExplicitCategory::Arrow> arrows;
  std::vector<ExplicitCategory::MorphId> ids(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) ids[a] = static_cast<ExplicitCategory::MorphId>(arrows.size());
      arrows.push_back({labels[a] + ">" + labels[b], a, b});
    }
  // arrow (a, b) has id a * n + b
  return ExplicitCategory(labels, std::move(arrows), std::move(ids),
                          [n](auto f, auto g) { return static_cast<ExplicitCategory::MorphId>((f / n) * n + g % n); });
}

ExplicitCategory terminal_category(const std::string& object) {
  return ExplicitCategory({object}, {{"id_" + object, 0, 0}}, {0}, [](auto, auto) { return 0u; });
}

ExplicitCategory product_category(const ExplicitCategory& c1, const ExplicitCategory& c2) {
  using MorphId = ExplicitCategory::MorphId;
  const std::size_t n2 = c2.object_count();
  const auto m2 = static_cast<MorphId>(c2.morphism_count());
  std::vector<std::string> objects;
  for (const auto& a : c1.objects())
    for (const auto& b : c2.objects()) objects.push_back(a + "*" + b);
  std::vector<ExplicitCategory::Arrow> arrows;
  arrows.reserve(c1.morphism_count() * c2.morphism_count());
  for (MorphId f = 0; f < c1.morphism_count(); ++f)
    for (MorphId g = 0; g < m2; ++g)
      arrows.push_back({c1.name(f) + "*" + c2.name(g), c1.dom(f) * n2 + c2.dom(g), c1.cod(f) * n2 + c2.cod(g)});
  std::vector<MorphId> ids(objects.size());
  for (std::size_t a = 0; a < c1.object_count(); ++a)
    for (std::size_t b = 0; b < n2; ++b)
      ids[a * n2 + b] = c1.identity(a) * m2 + c2.identity(b);
  return ExplicitCategory(std::move(objects), std::move(arrows), std::move(ids), [&](MorphId f, MorphId g) {
    return c1.compose(f / m2, g / m2) * m2 + c2.compose(f % m2, g % m2);
  });
}

ExplicitCategory function_category(
    const std::vector<std::string>& objects, const std::vector<std::size_t>& sizes, const std::string& prefix,
    const std::function<bool(std::size_t, std::size_t, const std::vector<std::size_t>&)>& keep) {
  using MorphId = ExplicitCategory::MorphId;
  if (objects.size() != sizes.size()) throw BadParam("one size per object required");
  std::vector<ExplicitCategory::Arrow> arrows;
  std::vector<std::vector<std::size_t>> values;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, MorphId> index;
  std::vector<MorphId> ids(objects.size());
  auto encode = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (x < 10 ? char('0' + x) : char('a' + (x - 10)));
    return s;
  };
  for (std::size_t a = 0; a < objects.size(); ++a) {
    for (std::size_t b = 0; b < objects.size(); ++b) {
      std::vector<std::size_t> v(sizes[a], 0);
      while (true) {
        if (sizes[a] == 0 || sizes[b] > 0) {
          if (!keep || keep(a, b, v)) {
            const auto id = static_cast<MorphId>(arrows.size());
            arrows.push_back({prefix + std::to_string(a) + ">" + std::to_string(b) + "/" + encode(v), a, b});
            values.push_back(v);
            index.emplace(std::make_tuple(a, b, v), id);
          }
        }
        // odometer over maps sizes[a] -> sizes[b]
        std::size_t i = 0;
        for (; i < v.size(); ++i) {
          if (++v[i] < sizes[b]) break;
          v[i] = 0;
        }
        if (i == v.size() || sizes[b] == 0) break;
      }
    }
    std::vector<std::size_t> idv(sizes[a]);
    for (std::size_t i = 0; i < idv.size(); ++i) idv[i] = i;
    auto it = index.find(std::make_tuple(a, a, idv));
    if (it == index.end()) throw BadParam("identity of '" + objects[a] + "' filtered out");
    ids[a] = it->second;
  }
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  ends.reserve(arrows.size());
  for (const auto& a : arrows) ends.emplace_back(a.dom, a.cod);
  return ExplicitCategory(objects, std::move(arrows), std::move(ids), [&](MorphId f, MorphId g) {
    const auto& fv = values[f];
    const auto& gv = values[g];
    std::vector<std::size_t> h(fv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) h[i] = gv[fv[i]];
    auto hit = index.find(std::make_tuple(ends[f].first, ends[g].second, h));
    if (hit == index.end()) throw BadParam("function category not closed under composition");
    return hit->second;
  });
}

ExplicitCategory opposite_category(const ExplicitCategory& c, const std::string& suffix) {
  using MorphId = ExplicitCategory::MorphId;
  std::vector<ExplicitCategory::Arrow> arrows;
  for (MorphId f = 0; f < c.morphism_count(); ++f) arrows.push_back({c.name(f) + suffix, c.cod(f), c.dom(f)});
  std::vector<MorphId> ids;
  for (std::size_t a = 0; a < c.object_count(); ++a) ids.push_back(c.identity(a));
  return ExplicitCategory(c.objects(), std::move(arrows), std::move(ids),
                          [&](MorphId f, MorphId g) { return c.compose(g, f); });
}

}  // namespace sketchforge
