#include "sketchforge/transforms.hpp"

#include <algorithm>
#include <set>

#include "sketchforge/error.hpp"

namespace sketchforge {

std::string mu_object_name(const std::string& b, const std::string& cone, int copy) {
  return b + "*" + cone + "*" + std::to_string(copy);
}

Functor MuSketch::embedding() const {
  if (trivial) return Functor::identity(sketch.cat);
  const auto& b = origin.cat.explicit_category();
  std::map<std::string, std::string> objects;
  for (const auto& o : b.objects()) objects[o] = mu_object_name(o, fixed_cone, 0);
  std::map<std::string, Morphism> arrows;
  const auto& target = sketch.cat.explicit_category();
  for (ExplicitCategory::MorphId f = 0; f < b.morphism_count(); ++f)
    arrows[b.name(f)] = target.as_morphism(target.id_of(b.name(f) + "*" + fixed_cone + ">" + fixed_cone + "*0>0"));
  return Functor::from_table(origin.cat, sketch.cat, std::move(objects), std::move(arrows));
}

MuSketch mu_transform(const Sketch& s) {
  const auto& b = s.cat.explicit_category();
  MuSketch m;
  m.origin = s;
  std::set<std::string> seen;
  for (const auto& c : s.cones) {
    if (!seen.insert(c.name).second) throw BadParam("repeated cone name " + c.name);
    m.cone_names.push_back(c.name);
  }
  if (s.cones.empty()) {
    m.trivial = true;
    m.sketch = s;
    auto r = is_multisorted_fps(s);
    m.distinguished = r.distinguished;
    m.sketch.sorting = r.inferred;
    return m;
  }
  m.fixed_cone = m.cone_names.front();

  auto bk = product_category(b, indiscrete_category(m.cone_names));
  auto cat = std::make_shared<const ExplicitCategory>(product_category(bk, indiscrete_category({"0", "1"})));
  for (const auto& o : b.objects())
    for (const auto& a : m.cone_names)
      for (int j = 0; j < 2; ++j) m.origin_of[mu_object_name(o, a, j)] = MuSketch::Origin{o, a, j};

  Sketch out;
  out.name = s.name + "^mu";
  out.cat = cat;
  std::set<std::string> touched, legs;
  for (const auto& c : s.cones) {
    if (c.arity() == 1 && b.is_identity(b.resolve(c.legs[0].projection))) {
      // isomorphic to the lifted cone, and allowed on a distinguished object
      const std::string obj = mu_object_name(c.legs[0].object, c.name, 1);
      out.cones.push_back(identity_cone(out.cat, obj, c.name));
      touched.insert(obj);
      legs.insert(obj);
      continue;
    }
    Cone lifted{c.name, mu_object_name(c.apex, c.name, 0), {}};
    touched.insert(lifted.apex);
    for (const auto& l : c.legs) {
      const std::string obj = mu_object_name(l.object, c.name, 1);
      const std::string pname = b.name(b.resolve(l.projection)) + "*" + c.name + ">" + c.name + "*0>1";
      lifted.legs.push_back(ConeLeg{obj, cat->as_morphism(cat->id_of(pname))});
      touched.insert(obj);
      legs.insert(obj);
    }
    out.cones.push_back(std::move(lifted));
  }
  SortedStructure sorted;
  for (const auto& o : cat->objects()) {
    if (!touched.count(o)) out.cones.push_back(identity_cone(out.cat, o, "id~" + o));
    if (legs.count(o) || !touched.count(o)) m.distinguished.push_back(o);
  }
  for (const auto& d : m.distinguished) {
    sorted.sorts.push_back(d);
    sorted.object_index[{d}] = d;
  }
  for (const auto& c : out.cones) {
    if (c.arity() == 1) continue;
    SortTuple t;
    for (const auto& l : c.legs) t.push_back(l.object);
    sorted.object_index[t] = c.apex;
  }
  out.sorting = sorted;
  m.sketch = std::move(out);
  return m;
}

// ---------------------------------------------------------------------------

SigmaTheory sigma_transform(const Sketch& base, const SortedStructure& sorted, std::size_t max_tuple_length) {
  auto cat = std::make_shared<const SigmaCategory>(base.cat.explicit_ptr(), sorted, max_tuple_length);
  SigmaTheory out;
  out.category = cat;
  out.sorted = sorted;
  out.sketch.name = base.name + "^sigma";
  out.sketch.cat = cat;
  out.sketch.cones = base.cones;
  for (const auto& t : cat->new_tuples()) {
    const std::string apex = SigmaCategory::tuple_object_name(t);
    out.sorted.object_index[t] = apex;
    Cone c{"cone" + apex, apex, {}};
    for (std::size_t k = 1; k <= t.size(); ++k)
      c.legs.push_back(ConeLeg{*sorted.distinguished(t[k - 1]), cat->projection(t, k)});
    out.sketch.cones.push_back(std::move(c));
  }
  out.sketch.sorting = out.sorted;
  return out;
}

SigmaTheory sigma_transform(const MuSketch& m, std::size_t max_tuple_length) {
  return sigma_transform(m.sketch, *m.sketch.sorting, max_tuple_length);
}

Pipeline pipeline(const Sketch& s, std::size_t max_tuple_length) {
  Pipeline p{mu_transform(s), {}};
  p.sigma = sigma_transform(p.mu, max_tuple_length);
  return p;
}

namespace {

std::map<std::string, std::string> cone_map(const SketchMorphism& g) {
  std::map<std::string, std::string> out;
  for (const auto& c : g.source.cones) {
    const Cone image = g.functor.apply(c);
    for (const auto& t : g.target.cones)
      if (t.apex == image.apex && t.legs == image.legs) {
        out[c.name] = t.name;
        break;
      }
    if (!out.count(c.name)) throw NotConePreserving("cone " + c.name + " has no image cone");
  }
  return out;
}

}  // namespace

Functor mu_transport(const SketchMorphism& g, const MuSketch& m1, const MuSketch& m2) {
  if (auto v = cone_preservation_violation(g)) throw NotConePreserving(*v);
  if (!injective_on_objects(g.functor)) throw NotInjectiveOnObjects("functor identifies two objects");
  if (m1.trivial) return m2.trivial ? g.functor : compose(g.functor, m2.embedding());
  if (m2.trivial) throw BadParam("target sketch has no cones");
  const auto cones = cone_map(g);

  std::map<std::string, std::string> objects;
  for (const auto& [o, org] : m1.origin_of)
    objects[o] = mu_object_name(g.functor.object(org.object), cones.at(org.cone), org.copy);

  const auto src = m1.sketch.cat.explicit_ptr();
  const auto b1 = m1.origin.cat.explicit_ptr();
  const auto tgt = m2.sketch.cat.explicit_ptr();
  const std::size_t n = m1.cone_names.size();
  auto fn = [src, b1, tgt, n, cones, names = m1.cone_names, gf = g.functor](const Morphism& m) {
    const auto id = src->resolve(m);
    const std::size_t fj = id % 4, fk = (id / 4) % (n * n), fb = (id / 4) / (n * n);
    const Morphism gb = gf(b1->as_morphism(static_cast<ExplicitCategory::MorphId>(fb)));
    const std::string j = std::to_string(fj / 2) + ">" + std::to_string(fj % 2);
    const std::string name =
        gb.word.at(0) + "*" + cones.at(names[fk / n]) + ">" + cones.at(names[fk % n]) + "*" + j;
    return tgt->as_morphism(tgt->id_of(name));
  };
  return Functor(m1.sketch.cat, m2.sketch.cat, std::move(objects), fn);
}

Functor transport_functor(const SketchMorphism& g, const Pipeline& p1, const Pipeline& p2) {
  const Functor gm = mu_transport(g, p1.mu, p2.mu);
  const auto sc1 = p1.sigma.category;
  const auto sc2 = p2.sigma.category;
  auto image_tuple = [gm, sorted2 = p2.sigma.sorted](const SortTuple& t) {
    SortTuple out;
    for (const auto& s : t) {
      const std::string& o = gm.object(s);
      if (!sorted2.has_sort(o)) throw SortMismatch("sort " + s + " maps to undistinguished " + o);
      out.push_back(o);
    }
    return out;
  };
  std::map<std::string, std::string> objects;
  for (const auto& o : sc1->objects()) {
    if (auto t = sc1->new_tuple_of(o)) {
      const SortTuple image = image_tuple(*t);
      auto obj = p2.sigma.sorted.object_of(image);
      if (!obj) throw SortMismatch("tuple " + to_string(image) + " is not indexed in the target");
      objects[o] = *obj;
    } else {
      objects[o] = gm.object(o);
    }
  }
  auto target = std::make_shared<const SemiTheory>(p2.sigma.semi_theory());
  auto fn = [sc1, sc2, gm, target, image_tuple, objects](const Morphism& m) {
    sc1->check(m);
    auto t = sc1->new_tuple_of(m.dom);
    if (!t) return gm(m);
    if (m.word.empty()) return sc2->identity(objects.at(m.dom));
    const std::size_t k = std::stoul(m.word[0].substr(1));
    Morphism out = target->projection(image_tuple(*t), k);
    if (m.word.size() == 2) {
      const auto& base = sc1->base();
      out = sc2->compose(out, gm(base.as_morphism(base.id_of(m.word[1]))));
    }
    return out;
  };
  return Functor(p1.sigma.sketch.cat, p2.sigma.sketch.cat, std::move(objects), fn);
}

// ---------------------------------------------------------------------------

FreeSemiTheory initial_semitheory(const std::vector<std::string>& sorts, std::size_t max_tuple_length) {
  std::vector<SortTuple> tuples;
  std::vector<SortTuple> layer{{}};
  for (std::size_t len = 0; len <= max_tuple_length; ++len) {
    tuples.insert(tuples.end(), layer.begin(), layer.end());
    std::vector<SortTuple> next;
    for (const auto& t : layer)
      for (const auto& s : sorts) {
        next.push_back(t);
        next.back().push_back(s);
      }
    layer = std::move(next);
  }
  return FreeSemiTheory::make("P", sorts, tuples, {});
}

namespace {

const std::string& indexed_object(const SortedStructure& sorted, const SortTuple& t) {
  static thread_local std::string found;
  auto o = sorted.object_of(t);
  if (!o) throw SortMismatch("tuple " + to_string(t) + " is not indexed in the target");
  found = *o;
  return found;
}

}  // namespace

Functor unique_map_to(const FreeSemiTheory& p, const Sketch& c, const SortedStructure& sorted) {
  for (const auto& s : p.sorted().sorts)
    if (!sorted.has_sort(s)) throw SortMismatch("sort " + s + " missing from the target");
  SemiTheory target(c, sorted);
  std::map<std::string, std::string> objects;
  std::map<std::string, Morphism> arrows;
  for (const auto& t : p.tuples()) objects[p.object_of(t)] = indexed_object(sorted, t);
  for (const auto& gen : p.category().generators()) {
    const auto k = p.projection_index(gen.name);
    arrows[gen.name] = target.projection(p.tuple_of(gen.dom), *k);
  }
  return Functor::from_table(p.sketch().cat, c.cat, std::move(objects), std::move(arrows));
}

std::vector<Functor> all_maps_from_initial(const FreeSemiTheory& p, const Sketch& c, const SortedStructure& sorted) {
  std::map<std::string, std::string> objects;
  for (const auto& t : p.tuples()) objects[p.object_of(t)] = indexed_object(sorted, t);
  // per tuple: every leg assignment whose image is a cone of c
  std::vector<std::vector<std::map<std::string, Morphism>>> choices;
  for (const auto& t : p.tuples()) {
    if (t.size() < 2) continue;
    const std::string& apex = objects.at(p.object_of(t));
    std::vector<std::vector<Morphism>> cands;
    for (std::size_t k = 0; k < t.size(); ++k) cands.push_back(c.cat.hom(apex, indexed_object(sorted, {t[k]})));
    std::vector<std::map<std::string, Morphism>> ok;
    std::vector<std::size_t> pick(t.size(), 0);
    bool empty = std::any_of(cands.begin(), cands.end(), [](const auto& v) { return v.empty(); });
    while (!empty) {
      std::vector<ConeLeg> legs;
      std::map<std::string, Morphism> assign;
      for (std::size_t k = 0; k < t.size(); ++k) {
        legs.push_back(ConeLeg{indexed_object(sorted, {t[k]}), cands[k][pick[k]]});
        assign[FreeSemiTheory::default_projection_name(t, k + 1)] = cands[k][pick[k]];
      }
      for (const auto& cone : c.cones)
        if (cone.apex == apex && cone.legs == legs) {
          ok.push_back(assign);
          break;
        }
      std::size_t k = 0;
      while (k < t.size() && ++pick[k] == cands[k].size()) pick[k++] = 0;
      if (k == t.size()) break;
    }
    choices.push_back(std::move(ok));
  }
  std::vector<Functor> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  if (std::any_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); })) return out;
  while (true) {
    std::map<std::string, Morphism> arrows;
    for (std::size_t i = 0; i < choices.size(); ++i) arrows.insert(choices[i][pick[i]].begin(), choices[i][pick[i]].end());
    out.push_back(Functor::from_table(p.sketch().cat, c.cat, objects, arrows));
    std::size_t i = 0;
    while (i < choices.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == choices.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Morphism> left_extension_index(const FreeSemiTheory& c, const std::string& object, std::size_t bound) {
  const auto& cat = c.category();
  std::vector<Morphism> out;
  std::vector<Morphism> layer;
  for (const auto& op : c.operations()) layer.push_back(cat.generator_morphism(op));
  std::set<std::string> ends;
  for (const auto& m : layer) ends.insert(m.cod);
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<Morphism> next;
    for (const auto& w : layer) {
      if (w.cod == object) out.push_back(w);
      if (len == bound) continue;
      for (const auto& g : cat.generators())
        if (g.dom == w.cod) next.push_back(cat.compose(w, cat.generator_morphism(g.name)));
    }
    layer = std::move(next);
    if (len < bound) {
      std::set<std::string> e;
      for (const auto& end : ends)
        for (const auto& g : cat.generators())
          if (g.dom == end) e.insert(g.cod);
      ends = std::move(e);
    }
  }
  // any longer word ending at `object` has a shortening of length in (bound, bound + |objects|]
  for (std::size_t len = bound + 1; len <= bound + cat.objects().size() && !ends.empty(); ++len) {
    std::set<std::string> e;
    for (const auto& end : ends)
      for (const auto& g : cat.generators())
        if (g.dom == end) e.insert(g.cod);
    ends = std::move(e);
    if (ends.count(object))
      throw BoundExceeded("words into " + object + " longer than " + std::to_string(bound) + " letters exist");
  }
  return out;
}

namespace {

std::string word_label(const Morphism& w) {
  std::string out;
  for (std::size_t i = 0; i < w.word.size(); ++i) out += (i ? "." : "") + w.word[i];
  return out;
}

const std::string& initial_object(const FreeSemiTheory& p, const SortTuple& t) {
  for (const auto& u : p.tuples())
    if (u == t) return p.object_of(t);
  throw SortMismatch("tuple " + to_string(t) + " is missing from the initial semi-theory");
}

}  // namespace

FinSetAlgebra left_extend(const FreeSemiTheory& p, const FinSetAlgebra& y, const FreeSemiTheory& c, std::size_t bound) {
  const auto& cat = c.category();
  struct Layout {
    std::size_t base = 0;
    std::map<std::vector<std::string>, std::pair<std::size_t, std::size_t>> offset;  // word -> [first, end)
  };
  std::map<std::string, Layout> layout;
  FinSetAlgebra out;
  for (const auto& obj : cat.objects()) {
    auto& carrier = out.carriers[obj];
    const auto& own = y.carriers.at(initial_object(p, c.tuple_of(obj)));
    carrier = own;
    Layout& lay = layout[obj];
    lay.base = own.size();
    for (const auto& w : left_extension_index(c, obj, bound)) {
      const std::size_t first = carrier.size();
      const std::string label = word_label(w);
      for (const auto& e : y.carriers.at(initial_object(p, c.tuple_of(w.dom)))) carrier.push_back(label + ":" + e);
      lay.offset[w.word] = {first, carrier.size()};
    }
  }
  for (const auto& g : cat.generators()) {
    const auto& from = layout.at(g.dom);
    const auto& to = layout.at(g.cod);
    Table t(out.carriers.at(g.dom).size());
    if (auto k = c.projection_index(g.name)) {
      const Morphism pk = p.projection(c.tuple_of(g.dom), *k);
      const Table base = action_of(p.sketch().cat, y, pk);
      for (std::size_t i = 0; i < from.base; ++i) t[i] = base[i];
    } else {
      const std::size_t off = to.offset.at({g.name}).first;
      for (std::size_t i = 0; i < from.base; ++i) t[i] = off + i;
    }
    for (const auto& [word, span] : from.offset) {
      auto longer = word;
      longer.push_back(g.name);
      const std::size_t dest = to.offset.at(longer).first;
      for (std::size_t i = span.first; i < span.second; ++i) t[i] = dest + (i - span.first);
    }
    out.actions[g.name] = std::move(t);
  }
  return out;
}

FinSetAlgebra restrict_to_initial(const FreeSemiTheory& p, const FreeSemiTheory& c, const FinSetAlgebra& x) {
  return restrict_along(unique_map_to(p, c.sketch(), c.sorted()), x);
}

}  // namespace sketchforge
