#include "sketchforge/functor.hpp"

#include <set>

#include "sketchforge/error.hpp"

namespace sketchforge {

Functor::Functor(CategoryView source, CategoryView target, std::map<std::string, std::string> objects,
                 MorphismMap on_morphisms)
    : source_(std::move(source)),
      target_(std::move(target)),
      objects_(std::move(objects)),
      on_morphisms_(std::move(on_morphisms)) {}

Functor Functor::from_table(CategoryView source, CategoryView target, std::map<std::string, std::string> objects,
                            std::map<std::string, Morphism> arrows) {
  auto table = std::make_shared<const std::map<std::string, Morphism>>(std::move(arrows));
  auto obj = std::make_shared<const std::map<std::string, std::string>>(objects);
  const CategoryView src = source;
  const CategoryView dst = target;
  MorphismMap fn;
  if (src.as_explicit()) {
    fn = [src, dst, table](const Morphism& m) {
      const Morphism n = src.normalize(m);
      auto it = table->find(n.word.at(0));
      if (it == table->end()) throw UnknownMorphism("functor table misses " + n.word.at(0));
      return dst.normalize(it->second);
    };
  } else {
    fn = [src, dst, table, obj](const Morphism& m) {
      src.normalize(m);
      Morphism out = dst.identity(obj->at(m.dom));
      for (const auto& letter : m.word) {
        auto it = table->find(letter);
        if (it == table->end()) throw UnknownMorphism("functor table misses " + letter);
        out = dst.compose(out, it->second);
      }
      return out;
    };
  }
  return Functor(std::move(source), std::move(target), std::move(objects), std::move(fn));
}

Functor Functor::identity(const CategoryView& c) {
  std::map<std::string, std::string> objects;
  for (const auto& o : c.objects()) objects[o] = o;
  return Functor(c, c, std::move(objects), [c](const Morphism& m) { return c.normalize(m); });
}

const std::string& Functor::object(const std::string& o) const {
  auto it = objects_.find(o);
  if (it == objects_.end()) throw UnknownObject("functor is undefined on " + o);
  return it->second;
}

Morphism Functor::operator()(const Morphism& m) const { return on_morphisms_(m); }

Cone Functor::apply(const Cone& c) const {
  Cone out{c.name, object(c.apex), {}};
  for (const auto& l : c.legs) out.legs.push_back(ConeLeg{object(l.object), (*this)(l.projection)});
  return out;
}

Functor compose(const Functor& first, const Functor& second) {
  std::map<std::string, std::string> objects;
  for (const auto& [a, b] : first.object_map()) objects[a] = second.object(b);
  return Functor(first.source(), second.target(), std::move(objects),
                 [first, second](const Morphism& m) { return second(first(m)); });
}

std::optional<std::string> functor_violation(const Functor& f) {
  const auto& src = f.source();
  for (const auto& o : src.objects()) {
    if (!f.object_map().count(o)) return "object " + o + " unmapped";
    if (!f.target().has_object(f.object(o))) return "object " + o + " maps outside the target";
  }
  auto endpoints = [&](const Morphism& m, const Morphism& im) -> std::optional<std::string> {
    if (im.dom != f.object(m.dom) || im.cod != f.object(m.cod)) return "endpoints of " + to_string(m);
    return std::nullopt;
  };
  if (auto fc = src.as_free()) {
    for (const auto& g : fc->generators()) {
      const Morphism m = fc->generator_morphism(g.name);
      if (auto e = endpoints(m, f(m))) return e;
    }
    return std::nullopt;
  }
  if (src.as_sigma()) {
    const auto objects = src.objects();
    std::map<std::string, std::vector<std::pair<Morphism, Morphism>>> out;  // by domain
    for (const auto& a : objects)
      for (const auto& b : objects)
        for (const auto& m : src.hom(a, b)) {
          Morphism im = f(m);
          if (auto e = endpoints(m, im)) return e;
          out[a].emplace_back(m, std::move(im));
        }
    for (const auto& a : objects)
      if (!f.target().is_identity(f(src.identity(a)))) return "identity of " + a;
    for (const auto& [a, ms] : out)
      for (const auto& [x, ix] : ms)
        for (const auto& [y, iy] : out[x.cod])
          if (f(src.compose(x, y)) != f.target().compose(ix, iy))
            return "composite of " + to_string(x) + " then " + to_string(y);
    return std::nullopt;
  }
  const auto& c = src.explicit_category();
  using MorphId = ExplicitCategory::MorphId;
  std::vector<Morphism> image(c.morphism_count());
  for (MorphId m = 0; m < c.morphism_count(); ++m) {
    const Morphism mm = c.as_morphism(m);
    image[m] = f(mm);
    if (auto e = endpoints(mm, image[m])) return e;
  }
  for (std::size_t a = 0; a < c.object_count(); ++a)
    if (!f.target().is_identity(image[c.identity(a)])) return "identity of " + c.object_name(a);
  for (MorphId x = 0; x < c.morphism_count(); ++x)
    for (MorphId y : c.out(c.cod(x)))
      if (image[c.compose(x, y)] != f.target().compose(image[x], image[y]))
        return "composite of " + c.name(x) + " then " + c.name(y);
  return std::nullopt;
}

std::optional<std::string> cone_preservation_violation(const SketchMorphism& g) {
  for (const auto& c : g.source.cones) {
    const Cone img = g.functor.apply(c);
    bool found = false;
    for (const auto& d : g.target.cones) {
      if (d.apex != img.apex || d.arity() != img.arity()) continue;
      bool same = true;
      for (std::size_t k = 0; k < d.arity() && same; ++k)
        same = d.legs[k].object == img.legs[k].object &&
               g.target.cat.normalize(d.legs[k].projection) == img.legs[k].projection;
      if (same) {
        found = true;
        break;
      }
    }
    // an identity cone may also be matched by the implicit identity cone
    if (!found && !(is_identity_cone(g.source.cat, c) && is_identity_cone(g.target.cat, img)))
      return "cone '" + c.name + "' has no image cone";
  }
  return std::nullopt;
}

bool injective_on_objects(const Functor& f) {
  std::set<std::string> seen;
  for (const auto& [a, b] : f.object_map())
    if (!seen.insert(b).second) return false;
  return true;
}

}  // namespace sketchforge
