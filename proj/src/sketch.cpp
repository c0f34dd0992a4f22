#include "sketchforge/sketch.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sketchforge/error.hpp"

namespace sketchforge {

const Cone* Sketch::find_cone(const std::string& cone_name) const {
  for (const auto& c : cones)
    if (c.name == cone_name) return &c;
  return nullptr;
}

bool CheckReport::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

CheckReport validate_sketch(const Sketch& s) {
  CheckReport r;
  for (std::size_t i = 0; i < s.cones.size(); ++i) {
    const Cone& c = s.cones[i];
    const std::string where = "cone " + std::to_string(i) + " '" + c.name + "'";
    if (!s.cat.has_object(c.apex)) {
      r.add("apex-object", where + ": unknown apex " + c.apex);
      continue;
    }
    for (std::size_t k = 0; k < c.legs.size(); ++k) {
      const auto& leg = c.legs[k];
      const std::string lw = where + " leg " + std::to_string(k + 1);
      if (!s.cat.has_object(leg.object)) {
        r.add("leg-object", lw + ": unknown object " + leg.object);
        continue;
      }
      if (leg.projection.dom != c.apex) r.add("projection-domain", lw + ": starts at " + leg.projection.dom);
      if (leg.projection.cod != leg.object) r.add("projection-codomain", lw + ": ends at " + leg.projection.cod);
      try {
        s.cat.normalize(leg.projection);
      } catch (const Error& e) {
        r.add("projection-morphism", lw + ": " + e.what());
      }
    }
  }
  return r;
}

bool is_product_cone(const ExplicitCategory& cat, const Cone& cone) {
  using MorphId = ExplicitCategory::MorphId;
  const std::size_t apex = cat.object_index(cone.apex);
  std::vector<std::size_t> legs;
  std::vector<MorphId> proj;
  for (const auto& l : cone.legs) {
    legs.push_back(cat.object_index(l.object));
    proj.push_back(cat.resolve(l.projection));
  }
  for (std::size_t d = 0; d < cat.object_count(); ++d) {
    std::size_t expected = 1;
    for (auto l : legs) expected *= cat.hom(d, l).size();
    const auto& into_apex = cat.hom(d, apex);
    if (into_apex.size() != expected) return false;
    std::set<std::vector<MorphId>> seen;
    for (MorphId u : into_apex) {
      std::vector<MorphId> t;
      for (auto p : proj) t.push_back(cat.compose(u, p));
      if (!seen.insert(std::move(t)).second) return false;
    }
  }
  return true;
}

bool is_product_cone(const CategoryView& cat, const Cone& cone) {
  return is_product_cone(cat.explicit_category(), cone);
}

Cone identity_cone(const CategoryView& cat, const std::string& object, const std::string& name) {
  return Cone{name, object, {ConeLeg{object, cat.identity(object)}}};
}

bool is_identity_cone(const CategoryView& cat, const Cone& c) {
  return c.arity() == 1 && c.legs[0].object == c.apex && cat.is_identity(c.legs[0].projection);
}

namespace {

bool cone_matches_tuple(const Cone& c, const SortTuple& t, const SortedStructure& sorted) {
  if (c.arity() != t.size()) return false;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (sorted.distinguished(t[k]) != c.legs[k].object) return false;
  return true;
}

}  // namespace

CheckReport is_semi_theory(const Sketch& s, const SortedStructure& sorted) {
  CheckReport r;
  std::map<std::string, SortTuple> seen;
  for (const auto& [tuple, obj] : sorted.object_index) {
    for (const auto& x : tuple)
      if (!sorted.has_sort(x)) r.add("unknown-sort", to_string(tuple) + " uses " + x);
    if (!s.cat.has_object(obj)) r.add("missing-object", to_string(tuple) + " -> " + obj);
    auto [it, fresh] = seen.emplace(obj, tuple);
    if (!fresh) r.add("index-not-injective", obj + " indexed by " + to_string(it->second) + " and " + to_string(tuple));
  }
  for (const auto& srt : sorted.sorts)
    if (!sorted.distinguished(srt)) r.add("missing-distinguished", "sort " + srt);
  if (!r.verdict()) return r;

  for (const auto& [tuple, obj] : sorted.object_index) {
    std::size_t matches = 0;
    for (const auto& c : s.cones)
      if (c.apex == obj && cone_matches_tuple(c, tuple, sorted)) ++matches;
    if (matches > 1) r.add("duplicate-cone", "tuple " + to_string(tuple) + " has " + std::to_string(matches) + " cones");
    if (matches == 0 && tuple.size() != 1) r.add("missing-cone", "tuple " + to_string(tuple));
  }
  for (std::size_t i = 0; i < s.cones.size(); ++i) {
    const Cone& c = s.cones[i];
    auto t = sorted.tuple_of(c.apex);
    if (!t || !cone_matches_tuple(c, *t, sorted)) {
      r.add("stray-cone", "cone " + std::to_string(i) + " '" + c.name + "' is not the cone of its apex tuple");
      continue;
    }
    // a second cone on the same apex with a different shape is also stray
    for (std::size_t j = 0; j < i; ++j)
      if (s.cones[j].apex == c.apex && !cone_matches_tuple(s.cones[j], *t, sorted)) {
        r.add("duplicate-cone", "apex " + c.apex + " carries several cones");
        break;
      }
  }
  return r;
}

CheckReport is_algebraic_theory(const Sketch& s, const SortedStructure& sorted) {
  const auto& cat = s.cat.explicit_category();
  CheckReport r = is_semi_theory(s, sorted);
  for (std::size_t i = 0; i < s.cones.size(); ++i)
    if (!is_product_cone(cat, s.cones[i]))
      r.add("not-product-cone", "cone " + std::to_string(i) + " '" + s.cones[i].name + "'");
  // implicit identity cones on 1-tuples are product cones trivially
  return r;
}

CheckReport check_multisorted(const Sketch& s, const std::vector<std::string>& distinguished) {
  CheckReport r;
  const std::set<std::string> dist(distinguished.begin(), distinguished.end());
  for (std::size_t i = 0; i < s.cones.size(); ++i) {
    const Cone& a = s.cones[i];
    const std::string where = "cone " + std::to_string(i) + " '" + a.name + "'";
    for (const auto& l : a.legs)
      if (!dist.count(l.object)) r.add("leg-not-distinguished", where + ": " + l.object);
    if (dist.count(a.apex) && !is_identity_cone(s.cat, a)) r.add("apex-distinguished", where + ": " + a.apex);
    for (std::size_t j = 0; j < i; ++j) {
      const Cone& b = s.cones[j];
      if (a.apex == b.apex) r.add("shared-apex", where + " and cone " + std::to_string(j));
      if (a.arity() == b.arity()) {
        std::set<std::string> la, lb;
        for (const auto& l : a.legs) la.insert(l.object);
        for (const auto& l : b.legs) lb.insert(l.object);
        if (la == lb) r.add("same-legs", where + " and cone " + std::to_string(j));
      }
    }
  }
  return r;
}

MultisortedResult is_multisorted_fps(const Sketch& s) {
  // Every leg must be distinguished and adding objects can only break the
  // apex condition, so the set of leg objects is the least candidate and
  // decides the search.
  MultisortedResult res;
  std::set<std::string> legs;
  for (const auto& c : s.cones)
    for (const auto& l : c.legs) legs.insert(l.object);
  for (const auto& o : s.cat.objects())
    if (legs.count(o)) res.distinguished.push_back(o);
  res.report = check_multisorted(s, res.distinguished);
  res.verdict = res.report.verdict();
  if (!res.verdict) return res;
  res.inferred.sorts = res.distinguished;
  for (const auto& d : res.distinguished) res.inferred.object_index[{d}] = d;
  for (const auto& c : s.cones) {
    if (is_identity_cone(s.cat, c)) continue;
    SortTuple t;
    for (const auto& l : c.legs) t.push_back(l.object);
    res.inferred.object_index[t] = c.apex;
  }
  return res;
}

// ---------------------------------------------------------------------------

SemiTheory::SemiTheory(Sketch sketch, SortedStructure sorted) : sketch_(std::move(sketch)), sorted_(std::move(sorted)) {
  auto r = is_semi_theory(sketch_, sorted_);
  if (!r.verdict()) throw NotSemiTheory(r.violations.front().rule + ": " + r.violations.front().witness);
}

Cone SemiTheory::cone_of_tuple(const SortTuple& tuple) const {
  auto obj = sorted_.object_of(tuple);
  if (!obj) throw SortMismatch("tuple " + to_string(tuple) + " is not indexed");
  for (const auto& c : sketch_.cones)
    if (c.apex == *obj && cone_matches_tuple(c, tuple, sorted_)) return c;
  return identity_cone(sketch_.cat, *obj, "id~" + *obj);
}

Morphism SemiTheory::projection(const SortTuple& tuple, std::size_t k) const {
  Cone c = cone_of_tuple(tuple);
  if (k < 1 || k > c.arity()) throw IndexOutOfRange("projection " + std::to_string(k) + " of " + to_string(tuple));
  return sketch_.cat.normalize(c.legs[k - 1].projection);
}

}  // namespace sketchforge
