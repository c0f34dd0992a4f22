#include "sketchforge/sigma_category.hpp"

#include <map>

#include "sketchforge/error.hpp"

namespace sketchforge {

std::string to_string(const SortTuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += tuple[i];
  }
  return out + ")";
}

std::optional<std::string> SortedStructure::distinguished(const std::string& sort) const {
  return object_of({sort});
}

std::optional<std::string> SortedStructure::object_of(const SortTuple& tuple) const {
  auto it = object_index.find(tuple);
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<SortTuple> SortedStructure::tuple_of(const std::string& object) const {
  for (const auto& [tuple, obj] : object_index)
    if (obj == object) return tuple;
  return std::nullopt;
}

bool SortedStructure::has_sort(const std::string& s) const {
  for (const auto& x : sorts)
    if (x == s) return true;
  return false;
}

// ---------------------------------------------------------------------------

SigmaCategory::SigmaCategory(std::shared_ptr<const ExplicitCategory> base, SortedStructure base_index,
                             std::size_t max_tuple_length)
    : base_(std::move(base)), base_index_(std::move(base_index)), max_len_(max_tuple_length) {
  for (const auto& s : base_index_.sorts) {
    auto obj = base_index_.distinguished(s);
    if (!obj || !base_->find_object(*obj)) throw BadParam("sort '" + s + "' has no distinguished object");
  }
  std::vector<SortTuple> layer{{}};
  for (std::size_t len = 0; len <= max_len_; ++len) {
    for (const auto& t : layer) {
      if (!base_index_.object_of(t)) {
        new_tuples_.push_back(t);
        const std::string name = tuple_object_name(t);
        if (base_->find_object(name)) throw BadParam("object name clash: " + name);
        new_lookup_.emplace(name, t);
      }
    }
    std::vector<SortTuple> next;
    for (const auto& t : layer)
      for (const auto& s : base_index_.sorts) {
        auto e = t;
        e.push_back(s);
        next.push_back(std::move(e));
      }
    layer = std::move(next);
  }
}

std::string SigmaCategory::tuple_object_name(const SortTuple& tuple) {
  std::string out = "<";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += '|';
    out += tuple[i];
  }
  return out + ">";
}

std::string SigmaCategory::projection_name(std::size_t k, const SortTuple& tuple) {
  return "p" + std::to_string(k) + tuple_object_name(tuple);
}

std::vector<std::string> SigmaCategory::objects() const {
  std::vector<std::string> out = base_->objects();
  for (const auto& t : new_tuples_) out.push_back(tuple_object_name(t));
  return out;
}

std::optional<SortTuple> SigmaCategory::new_tuple_of(const std::string& object) const {
  auto it = new_lookup_.find(object);
  if (it == new_lookup_.end()) return std::nullopt;
  return it->second;
}

bool SigmaCategory::has_object(const std::string& object) const {
  return base_->find_object(object).has_value() || new_lookup_.count(object) > 0;
}

std::vector<Morphism> SigmaCategory::hom(const std::string& a, const std::string& b) const {
  if (!has_object(a)) throw UnknownObject(a + " (beyond truncation or undeclared)");
  if (!has_object(b)) throw UnknownObject(b + " (beyond truncation or undeclared)");
  std::vector<Morphism> out;
  auto ta = new_tuple_of(a);
  auto tb = new_tuple_of(b);
  if (tb) {
    if (a == b) out.push_back(identity(a));
    return out;
  }
  const std::size_t bi = base_->object_index(b);
  if (!ta) {
    for (auto f : base_->hom(base_->object_index(a), bi)) out.push_back(base_->as_morphism(f));
    return out;
  }
  for (std::size_t k = 1; k <= ta->size(); ++k) {
    const std::string leg = *base_index_.distinguished((*ta)[k - 1]);
    for (auto f : base_->hom(base_->object_index(leg), bi)) {
      Morphism m{a, b, {projection_name(k, *ta)}};
      if (!base_->is_identity(f)) m.word.push_back(base_->name(f));
      out.push_back(std::move(m));
    }
  }
  return out;
}

Morphism SigmaCategory::identity(const std::string& a) const {
  if (new_tuple_of(a)) return Morphism{a, a, {}};
  return base_->as_morphism(base_->identity(base_->object_index(a)));
}

Morphism SigmaCategory::projection(const SortTuple& tuple, std::size_t k) const {
  const std::string name = tuple_object_name(tuple);
  if (!new_lookup_.count(name)) throw UnknownObject(name + " is not a new tuple object");
  if (k < 1 || k > tuple.size()) throw IndexOutOfRange("projection index " + std::to_string(k));
  return Morphism{name, *base_index_.distinguished(tuple[k - 1]), {projection_name(k, tuple)}};
}

void SigmaCategory::check(const Morphism& m) const {
  auto t = new_tuple_of(m.dom);
  if (!t) {
    if (m.word.size() != 1) throw NotComposable("malformed base morphism " + to_string(m));
    const auto f = base_->id_of(m.word[0]);
    if (base_->object_name(base_->dom(f)) != m.dom || base_->object_name(base_->cod(f)) != m.cod)
      throw NotComposable("endpoints of " + to_string(m));
    return;
  }
  if (m.word.empty()) {
    if (m.cod != m.dom) throw NotComposable("identity with distinct endpoints");
    return;
  }
  if (m.word.size() > 2) throw NotComposable("malformed projection word " + to_string(m));
  std::size_t k = 0;
  for (std::size_t i = 1; i <= t->size(); ++i)
    if (projection_name(i, *t) == m.word[0]) k = i;
  if (k == 0) throw UnknownMorphism(m.word[0]);
  std::string at = *base_index_.distinguished((*t)[k - 1]);
  if (m.word.size() == 2) {
    const auto f = base_->id_of(m.word[1]);
    if (base_->object_name(base_->dom(f)) != at) throw NotComposable(to_string(m));
    at = base_->object_name(base_->cod(f));
  }
  if (at != m.cod) throw NotComposable(to_string(m));
}

Morphism SigmaCategory::compose(const Morphism& f, const Morphism& g) const {
  if (f.cod != g.dom) throw NotComposable(to_string(f) + " then " + to_string(g));
  check(f);
  check(g);
  if (f.word.empty()) return g;  // identity of a new object
  if (g.word.empty()) return f;
  if (!new_tuple_of(f.dom)) {
    const auto h = base_->compose(base_->id_of(f.word[0]), base_->id_of(g.word[0]));
    return base_->as_morphism(h);
  }
  // f = projection (then optional base morphism); g lives in B
  const std::string leg_start = *base_index_.distinguished(
      (*new_tuple_of(f.dom))[std::stoul(f.word[0].substr(1)) - 1]);
  auto first = f.word.size() == 2 ? base_->id_of(f.word[1]) : base_->identity(base_->object_index(leg_start));
  const auto h = base_->compose(first, base_->id_of(g.word[0]));
  Morphism out{f.dom, g.cod, {f.word[0]}};
  if (!base_->is_identity(h)) out.word.push_back(base_->name(h));
  return out;
}

std::string SigmaCategory::morphism_name(const Morphism& m) {
  if (m.word.empty()) return "id" + m.dom;
  std::string out = m.word[0];
  for (std::size_t i = 1; i < m.word.size(); ++i) out += ";" + m.word[i];
  return out;
}

ExplicitCategory SigmaCategory::materialize() const {
  using MorphId = ExplicitCategory::MorphId;
  const auto objs = objects();
  std::map<std::string, std::size_t> oidx;
  for (std::size_t i = 0; i < objs.size(); ++i) oidx[objs[i]] = i;
  std::vector<ExplicitCategory::Arrow> arrows;
  std::vector<Morphism> morphs;
  std::map<std::string, MorphId> by_name;
  std::vector<MorphId> ids(objs.size());
  for (std::size_t a = 0; a < objs.size(); ++a) {
    for (std::size_t b = 0; b < objs.size(); ++b) {
      for (auto& m : hom(objs[a], objs[b])) {
        const auto id = static_cast<MorphId>(arrows.size());
        const std::string name = morphism_name(m);
        arrows.push_back({name, a, b});
        by_name[name] = id;
        if (a == b && m == identity(objs[a])) ids[a] = id;
        morphs.push_back(std::move(m));
      }
    }
  }
  return ExplicitCategory(objs, std::move(arrows), std::move(ids),
                          [&](MorphId f, MorphId g) { return by_name.at(morphism_name(compose(morphs[f], morphs[g]))); });
}

}  // namespace sketchforge
