#include "sketchforge/algebra.hpp"

#include <algorithm>
#include <set>

#include "sketchforge/error.hpp"

namespace sketchforge {

std::size_t FinSetAlgebra::size(const std::string& object) const {
  auto it = carriers.find(object);
  if (it == carriers.end()) throw UnknownObject("algebra has no carrier for " + object);
  return it->second.size();
}

std::vector<std::string> numbered_carrier(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

Table action_of(const CategoryView& cat, const FinSetAlgebra& a, const Morphism& m) {
  if (cat.as_free()) {
    cat.normalize(m);
    Table t(a.size(m.dom));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    for (const auto& letter : m.word) {
      auto it = a.actions.find(letter);
      if (it == a.actions.end()) throw UnknownMorphism("algebra has no action for " + letter);
      for (auto& x : t) x = it->second.at(x);
    }
    return t;
  }
  const Morphism n = cat.normalize(m);
  const std::string key = cat.as_sigma() ? SigmaCategory::morphism_name(n) : n.word.at(0);
  auto it = a.actions.find(key);
  if (it == a.actions.end()) throw UnknownMorphism("algebra has no action for " + key);
  return it->second;
}

std::optional<std::string> functoriality_violation(const CategoryView& cat, const FinSetAlgebra& a) {
  for (const auto& o : cat.objects())
    if (!a.carriers.count(o)) return "missing carrier for " + o;
  auto check_table = [&](const std::string& name, const std::string& dom,
                         const std::string& cod) -> std::optional<std::string> {
    auto it = a.actions.find(name);
    if (it == a.actions.end()) return "missing action for " + name;
    if (it->second.size() != a.size(dom)) return "action of " + name + " has the wrong domain size";
    for (auto v : it->second)
      if (v >= a.size(cod)) return "action of " + name + " leaves its codomain";
    return std::nullopt;
  };
  if (auto fc = cat.as_free()) {
    for (const auto& g : fc->generators())
      if (auto e = check_table(g.name, g.dom, g.cod)) return e;
    return std::nullopt;
  }
  const auto& c = cat.explicit_category();
  using MorphId = ExplicitCategory::MorphId;
  for (MorphId f = 0; f < c.morphism_count(); ++f)
    if (auto e = check_table(c.name(f), c.object_name(c.dom(f)), c.object_name(c.cod(f)))) return e;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const auto& t = a.actions.at(c.name(c.identity(o)));
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] != i) return "identity " + c.name(c.identity(o)) + " acts non-trivially";
  }
  for (MorphId f = 0; f < c.morphism_count(); ++f) {
    const auto& tf = a.actions.at(c.name(f));
    for (MorphId g : c.out(c.cod(f))) {
      const auto& tg = a.actions.at(c.name(g));
      const auto& th = a.actions.at(c.name(c.compose(f, g)));
      for (std::size_t i = 0; i < tf.size(); ++i)
        if (tg[tf[i]] != th[i]) return "composite of " + c.name(f) + " then " + c.name(g);
    }
  }
  return std::nullopt;
}

StrictnessWitness is_strict_algebra(const Sketch& s, const FinSetAlgebra& a) {
  if (auto v = functoriality_violation(s.cat, a)) throw NotFunctorial(*v);
  StrictnessWitness w;
  for (const auto& cone : s.cones) {
    ConeComparison cmp;
    cmp.cone = cone.name;
    std::vector<Table> legs;
    std::size_t product = 1;
    for (const auto& l : cone.legs) {
      legs.push_back(action_of(s.cat, a, l.projection));
      product *= a.size(l.object);
    }
    const std::size_t n = a.size(cone.apex);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> img;
      for (const auto& t : legs) img.push_back(t[x]);
      cmp.images.push_back(std::move(img));
    }
    const std::set<std::vector<std::size_t>> distinct(cmp.images.begin(), cmp.images.end());
    cmp.bijective = distinct.size() == n && n == product;
    w.verdict = w.verdict && cmp.bijective;
    w.cones.push_back(std::move(cmp));
  }
  return w;
}

// ---------------------------------------------------------------------------

namespace {

struct CarrierPlan {
  std::map<std::string, std::size_t> sizes;
  std::map<std::string, const Cone*> fixing;  // apex -> product-fixing cone
};

CarrierPlan plan_carriers(const Sketch& s, const std::map<std::string, std::size_t>& given) {
  for (const auto& [o, n] : given)
    if (!s.cat.has_object(o)) throw UnknownObject("carrier given for unknown object " + o);
  CarrierPlan plan;
  std::set<std::string> active;
  auto size_of = [&](auto&& self, const std::string& o) -> std::optional<std::size_t> {
    if (auto it = plan.sizes.find(o); it != plan.sizes.end()) return it->second;
    if (active.count(o)) return std::nullopt;
    active.insert(o);
    std::optional<std::size_t> result;
    for (const auto& c : s.cones) {
      if (c.apex != o) continue;
      std::size_t product = 1;
      bool ok = true;
      for (const auto& l : c.legs) {
        auto n = self(self, l.object);
        if (!n) {
          ok = false;
          break;
        }
        product *= *n;
      }
      if (ok) {
        result = product;
        plan.fixing[o] = &c;
        break;
      }
    }
    active.erase(o);
    auto g = given.find(o);
    if (!result && g != given.end()) result = g->second;
    if (result && g != given.end() && g->second != *result)
      throw CarrierConflict("cone '" + plan.fixing[o]->name + "' forces |" + o + "| = " + std::to_string(*result) +
                            ", given " + std::to_string(g->second));
    if (result) plan.sizes[o] = *result;
    return result;
  };
  for (const auto& o : s.cat.objects())
    if (!size_of(size_of, o)) throw UnderdeterminedCarrier("no carrier size for " + o);
  for (const auto& c : s.cones) {
    std::size_t product = 1;
    for (const auto& l : c.legs) product *= plan.sizes.at(l.object);
    if (plan.sizes.at(c.apex) != product)
      throw CarrierConflict("cone '" + c.name + "' needs |" + c.apex + "| = " + std::to_string(product) + ", have " +
                            std::to_string(plan.sizes.at(c.apex)));
  }
  return plan;
}

// Labels: given objects are numbered, apexes get tuples of leg labels.
std::map<std::string, std::vector<std::string>> carrier_labels(const Sketch& s, const CarrierPlan& plan) {
  std::map<std::string, std::vector<std::string>> out;
  auto label = [&](auto&& self, const std::string& o) -> const std::vector<std::string>& {
    if (auto it = out.find(o); it != out.end()) return it->second;
    auto f = plan.fixing.find(o);
    if (f == plan.fixing.end()) return out[o] = numbered_carrier(plan.sizes.at(o));
    std::vector<std::string> acc{""};
    for (const auto& l : f->second->legs) {
      const auto& sub = self(self, l.object);
      std::vector<std::string> next;
      for (const auto& prefix : acc)
        for (const auto& e : sub) next.push_back(prefix.empty() ? e : prefix + "," + e);
      acc = std::move(next);
    }
    for (auto& e : acc) e = "(" + e + ")";
    return out[o] = acc;
  };
  for (const auto& o : s.cat.objects()) label(label, o);
  return out;
}

class StrictSearch {
 public:
  using MorphId = ExplicitCategory::MorphId;

  StrictSearch(const Sketch& s, const CarrierPlan& plan) : s_(s), c_(s.cat.explicit_category()), plan_(plan) {
    const std::size_t nm = c_.morphism_count();
    size_.resize(c_.object_count());
    for (std::size_t o = 0; o < c_.object_count(); ++o) size_[o] = plan.sizes.at(c_.object_name(o));
    offset_.resize(nm + 1);
    for (MorphId f = 0; f < nm; ++f) offset_[f + 1] = offset_[f] + size_[c_.dom(f)];
    val_.assign(offset_[nm], -1);
    factor_.resize(nm);
    for (MorphId f = 0; f < nm; ++f)
      for (MorphId g : c_.out(c_.cod(f))) factor_[c_.compose(f, g)].push_back({f, g});
    radix_.resize(c_.object_count());
    proj_.resize(c_.object_count());
    encode_watch_.resize(nm);
    for (const auto& [apex, cone] : plan.fixing) {
      const std::size_t a = c_.object_index(apex);
      for (const auto& l : cone->legs) {
        proj_[a].push_back(c_.resolve(l.projection));
        radix_[a].push_back(size_[c_.object_index(l.object)]);
      }
      if (proj_[a].empty()) continue;
      for (MorphId h : c_.in(a))
        for (MorphId p : proj_[a]) encode_watch_[c_.compose(h, p)].push_back(h);
    }
    for (MorphId f = 0; f < nm; ++f)
      if (!plan.fixing.count(c_.object_name(c_.cod(f))))
        for (std::size_t x = 0; x < size_[c_.dom(f)]; ++x) order_.push_back(offset_[f] + x);
    for (MorphId f = 0; f < nm; ++f)
      if (plan.fixing.count(c_.object_name(c_.cod(f))))
        for (std::size_t x = 0; x < size_[c_.dom(f)]; ++x) order_.push_back(offset_[f] + x);
  }

  std::vector<FinSetAlgebra> run() {
    std::vector<FinSetAlgebra> out;
    if (!pin()) return out;
    search(0, out);
    return out;
  }

 private:
  std::size_t digit(std::size_t a, std::size_t k, std::size_t x) const {
    const auto& r = radix_[a];
    for (std::size_t j = r.size(); j-- > k + 1;) x /= r[j];
    return x % r[k];
  }

  bool set(MorphId f, std::size_t x, std::size_t v) {
    int& cell = val_[offset_[f] + x];
    if (cell >= 0) return static_cast<std::size_t>(cell) == v;
    cell = static_cast<int>(v);
    trail_.push_back(offset_[f] + x);
    queue_.push_back({f, x});
    return true;
  }

  int get(MorphId f, std::size_t x) const { return val_[offset_[f] + x]; }

  bool propagate() {
    while (!queue_.empty()) {
      auto [f, x] = queue_.back();
      queue_.pop_back();
      const std::size_t y = static_cast<std::size_t>(get(f, x));
      for (MorphId g : c_.out(c_.cod(f))) {
        const MorphId h = c_.compose(f, g);
        if (int z = get(g, y); z >= 0) {
          if (!set(h, x, z)) return false;
        } else if (int z2 = get(h, x); z2 >= 0) {
          if (!set(g, y, z2)) return false;
        }
      }
      for (MorphId e : c_.in(c_.dom(f))) {
        const MorphId h = c_.compose(e, f);
        for (std::size_t w = 0; w < size_[c_.dom(e)]; ++w)
          if (get(e, w) == static_cast<int>(x) && !set(h, w, y)) return false;
      }
      for (auto [a, b] : factor_[f])
        if (int ya = get(a, x); ya >= 0 && !set(b, ya, y)) return false;
      for (MorphId h : encode_watch_[f]) {
        if (get(h, x) >= 0) continue;
        const std::size_t apex = c_.cod(h);
        std::size_t code = 0;
        bool all = true;
        for (std::size_t k = 0; k < proj_[apex].size() && all; ++k) {
          const int d = get(c_.compose(h, proj_[apex][k]), x);
          if (d < 0) all = false;
          else code = code * radix_[apex][k] + d;
        }
        if (all && !set(h, x, code)) return false;
      }
    }
    return true;
  }

  bool pin() {
    for (std::size_t o = 0; o < c_.object_count(); ++o)
      for (std::size_t x = 0; x < size_[o]; ++x)
        if (!set(c_.identity(o), x, x)) return false;
    for (std::size_t a = 0; a < c_.object_count(); ++a)
      for (std::size_t k = 0; k < proj_[a].size(); ++k)
        for (std::size_t x = 0; x < size_[a]; ++x)
          if (!set(proj_[a][k], x, digit(a, k, x))) return false;
    for (MorphId f = 0; f < c_.morphism_count(); ++f) {
      const std::size_t n = size_[c_.cod(f)];
      if (n == 0 && size_[c_.dom(f)] > 0) return false;
      if (n == 1)
        for (std::size_t x = 0; x < size_[c_.dom(f)]; ++x)
          if (!set(f, x, 0)) return false;
    }
    return propagate();
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = -1;
      trail_.pop_back();
    }
    queue_.clear();
  }

  void search(std::size_t from, std::vector<FinSetAlgebra>& out) {
    while (from < order_.size() && val_[order_[from]] >= 0) ++from;
    if (from == order_.size()) {
      emit(out);
      return;
    }
    const std::size_t cell = order_[from];
    const MorphId f = static_cast<MorphId>(std::upper_bound(offset_.begin(), offset_.end(), cell) - offset_.begin() - 1);
    const std::size_t x = cell - offset_[f];
    for (std::size_t v = 0; v < size_[c_.cod(f)]; ++v) {
      const std::size_t mark = trail_.size();
      if (set(f, x, v) && propagate()) search(from + 1, out);
      undo(mark);
    }
  }

  void emit(std::vector<FinSetAlgebra>& out) {
    if (labels_.empty()) labels_ = carrier_labels(s_, plan_);
    FinSetAlgebra a;
    a.carriers = labels_;
    for (MorphId f = 0; f < c_.morphism_count(); ++f) {
      Table t(size_[c_.dom(f)]);
      for (std::size_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::size_t>(get(f, x));
      a.actions[c_.name(f)] = std::move(t);
    }
    if (functoriality_violation(s_.cat, a)) return;
    if (!is_strict_algebra(s_, a).verdict) return;
    out.push_back(std::move(a));
  }

  const Sketch& s_;
  const ExplicitCategory& c_;
  const CarrierPlan& plan_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> offset_;
  std::vector<int> val_;
  std::vector<std::vector<std::pair<MorphId, MorphId>>> factor_;
  std::vector<std::vector<MorphId>> proj_;
  std::vector<std::vector<std::size_t>> radix_;
  std::vector<std::vector<MorphId>> encode_watch_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> trail_;
  std::vector<std::pair<MorphId, std::size_t>> queue_;
  std::map<std::string, std::vector<std::string>> labels_;
};

}  // namespace

std::map<std::string, std::size_t> forced_carriers(const Sketch& s, const std::map<std::string, std::size_t>& given) {
  return plan_carriers(s, given).sizes;
}

std::vector<FinSetAlgebra> enumerate_strict_algebras(const Sketch& s, const std::map<std::string, std::size_t>& given) {
  s.cat.explicit_category();
  const CarrierPlan plan = plan_carriers(s, given);
  return StrictSearch(s, plan).run();
}

FinSetAlgebra restrict_along(const Functor& g, const FinSetAlgebra& x) {
  FinSetAlgebra out;
  const auto& src = g.source();
  for (const auto& o : src.objects()) out.carriers[o] = x.carriers.at(g.object(o));
  if (auto fc = src.as_free()) {
    for (const auto& gen : fc->generators())
      out.actions[gen.name] = action_of(g.target(), x, g(fc->generator_morphism(gen.name)));
    return out;
  }
  if (auto sc = src.as_sigma()) {
    for (const auto& a : sc->objects())
      for (const auto& b : sc->objects())
        for (const auto& m : sc->hom(a, b)) out.actions[SigmaCategory::morphism_name(m)] = action_of(g.target(), x, g(m));
    return out;
  }
  const auto& c = src.explicit_category();
  for (ExplicitCategory::MorphId f = 0; f < c.morphism_count(); ++f)
    out.actions[c.name(f)] = action_of(g.target(), x, g(c.as_morphism(f)));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ArrowTables {
  std::string dom, cod;
  const Table* a;
  const Table* b;
};

std::vector<ArrowTables> arrow_tables(const CategoryView& cat, const FinSetAlgebra& a, const FinSetAlgebra& b) {
  std::vector<ArrowTables> out;
  auto push = [&](const std::string& name, const std::string& dom, const std::string& cod) {
    out.push_back({dom, cod, &a.actions.at(name), &b.actions.at(name)});
  };
  if (auto fc = cat.as_free()) {
    for (const auto& g : fc->generators()) push(g.name, g.dom, g.cod);
  } else {
    const auto& c = cat.explicit_category();
    for (ExplicitCategory::MorphId f = 0; f < c.morphism_count(); ++f)
      if (!c.is_identity(f)) push(c.name(f), c.object_name(c.dom(f)), c.object_name(c.cod(f)));
  }
  return out;
}

}  // namespace

bool is_natural(const CategoryView& cat, const FinSetAlgebra& a, const FinSetAlgebra& b, const NatTrans& t) {
  for (const auto& o : cat.objects()) {
    auto it = t.find(o);
    if (it == t.end() || it->second.size() != a.size(o)) return false;
    for (auto v : it->second)
      if (v >= b.size(o)) return false;
  }
  for (const auto& ar : arrow_tables(cat, a, b)) {
    const auto& td = t.at(ar.dom);
    const auto& tc = t.at(ar.cod);
    for (std::size_t e = 0; e < td.size(); ++e)
      if (tc[(*ar.a)[e]] != (*ar.b)[td[e]]) return false;
  }
  return true;
}

std::vector<NatTrans> natural_transformations(const CategoryView& cat, const FinSetAlgebra& a, const FinSetAlgebra& b) {
  const auto objects = cat.objects();
  std::map<std::string, std::size_t> oidx;
  for (std::size_t i = 0; i < objects.size(); ++i) oidx[objects[i]] = i;
  std::vector<std::size_t> offset(objects.size() + 1);
  for (std::size_t i = 0; i < objects.size(); ++i) offset[i + 1] = offset[i] + a.size(objects[i]);
  struct Out {
    std::size_t cod;
    const Table* a;
    const Table* b;
  };
  std::vector<std::vector<Out>> outgoing(objects.size());
  for (const auto& ar : arrow_tables(cat, a, b)) outgoing[oidx.at(ar.dom)].push_back({oidx.at(ar.cod), ar.a, ar.b});
  std::vector<int> val(offset.back(), -1);
  std::vector<std::size_t> trail;
  std::vector<NatTrans> result;

  auto assign = [&](std::size_t o, std::size_t e, std::size_t v) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{o, e}};
    if (val[offset[o] + e] >= 0) return static_cast<std::size_t>(val[offset[o] + e]) == v;
    val[offset[o] + e] = static_cast<int>(v);
    trail.push_back(offset[o] + e);
    while (!stack.empty()) {
      auto [d, x] = stack.back();
      stack.pop_back();
      const std::size_t y = static_cast<std::size_t>(val[offset[d] + x]);
      for (const auto& out : outgoing[d]) {
        const std::size_t cell = offset[out.cod] + (*out.a)[x];
        const std::size_t want = (*out.b)[y];
        if (val[cell] >= 0) {
          if (static_cast<std::size_t>(val[cell]) != want) return false;
          continue;
        }
        val[cell] = static_cast<int>(want);
        trail.push_back(cell);
        stack.push_back({out.cod, (*out.a)[x]});
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      val[trail.back()] = -1;
      trail.pop_back();
    }
  };
  auto rec = [&](auto&& self, std::size_t cell) -> void {
    while (cell < val.size() && val[cell] >= 0) ++cell;
    if (cell == val.size()) {
      NatTrans t;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        Table comp(a.size(objects[i]));
        for (std::size_t e = 0; e < comp.size(); ++e) comp[e] = static_cast<std::size_t>(val[offset[i] + e]);
        t[objects[i]] = std::move(comp);
      }
      result.push_back(std::move(t));
      return;
    }
    const std::size_t o = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), cell) - offset.begin() - 1);
    const std::size_t e = cell - offset[o];
    for (std::size_t v = 0; v < b.size(objects[o]); ++v) {
      const std::size_t mark = trail.size();
      if (assign(o, e, v)) self(self, cell + 1);
      undo(mark);
    }
  };
  rec(rec, 0);
  return result;
}

FinSetAlgebra corepresented(const ExplicitCategory& cat, const std::string& c) {
  using MorphId = ExplicitCategory::MorphId;
  const std::size_t ci = cat.object_index(c);
  FinSetAlgebra out;
  std::vector<std::size_t> position(cat.morphism_count());
  for (std::size_t d = 0; d < cat.object_count(); ++d) {
    auto& carrier = out.carriers[cat.object_name(d)];
    const auto& hom = cat.hom(ci, d);
    for (std::size_t i = 0; i < hom.size(); ++i) {
      position[hom[i]] = i;
      carrier.push_back(cat.name(hom[i]));
    }
  }
  for (MorphId f = 0; f < cat.morphism_count(); ++f) {
    Table t;
    for (MorphId u : cat.hom(ci, cat.dom(f))) t.push_back(position[cat.compose(u, f)]);
    out.actions[cat.name(f)] = std::move(t);
  }
  return out;
}

DiagramMap localizing_map(const Sketch& s, const Cone& cone) {
  using MorphId = ExplicitCategory::MorphId;
  const auto& cat = s.cat.explicit_category();
  DiagramMap m;
  m.target = corepresented(cat, cone.apex);
  const std::size_t apex = cat.object_index(cone.apex);
  std::vector<std::size_t> tpos(cat.morphism_count());
  for (std::size_t d = 0; d < cat.object_count(); ++d) {
    const auto& hom = cat.hom(apex, d);
    for (std::size_t i = 0; i < hom.size(); ++i) tpos[hom[i]] = i;
  }
  // source element (k, u) sits at base[k][d] + position of u in Hom(leg k, d)
  const std::size_t n = cone.arity();
  std::vector<std::size_t> legs;
  std::vector<MorphId> proj;
  for (const auto& l : cone.legs) {
    legs.push_back(cat.object_index(l.object));
    proj.push_back(cat.resolve(l.projection));
  }
  std::vector<std::vector<std::size_t>> base(n, std::vector<std::size_t>(cat.object_count()));
  std::vector<std::vector<std::size_t>> spos(n, std::vector<std::size_t>(cat.morphism_count()));
  for (std::size_t d = 0; d < cat.object_count(); ++d) {
    const std::string dn = cat.object_name(d);
    auto& carrier = m.source.carriers[dn];
    Table comp;
    for (std::size_t k = 0; k < n; ++k) {
      base[k][d] = carrier.size();
      const auto& hom = cat.hom(legs[k], d);
      for (std::size_t i = 0; i < hom.size(); ++i) {
        spos[k][hom[i]] = i;
        carrier.push_back(std::to_string(k + 1) + ":" + cat.name(hom[i]));
        comp.push_back(tpos[cat.compose(proj[k], hom[i])]);
      }
    }
    m.components[dn] = std::move(comp);
  }
  for (MorphId f = 0; f < cat.morphism_count(); ++f) {
    Table t;
    for (std::size_t k = 0; k < n; ++k)
      for (MorphId u : cat.hom(legs[k], cat.dom(f)))
        t.push_back(base[k][cat.cod(f)] + spos[k][cat.compose(u, f)]);
    m.source.actions[cat.name(f)] = std::move(t);
  }
  return m;
}

bool is_strictly_local(const Sketch& s, const FinSetAlgebra& x) {
  for (const auto& cone : s.cones) {
    const DiagramMap p = localizing_map(s, cone);
    const auto from = natural_transformations(s.cat, p.target, x);
    const auto to = natural_transformations(s.cat, p.source, x);
    std::set<NatTrans> images;
    for (const auto& t : from) {
      NatTrans pulled;
      for (const auto& [d, comp] : p.components) {
        Table c;
        for (auto e : comp) c.push_back(t.at(d)[e]);
        pulled[d] = std::move(c);
      }
      images.insert(std::move(pulled));
    }
    if (images.size() != from.size() || images.size() != to.size()) return false;
  }
  return true;
}

}  // namespace sketchforge
