#include "sketchforge/builtins.hpp"

#include <memory>

#include "sketchforge/error.hpp"

namespace sketchforge {

namespace {

std::string digits(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (x < 10 ? char('0' + x) : char('a' + (x - 10)));
  return s;
}

std::vector<std::string> ordinals(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(ordinal_name(i));
  return out;
}

std::vector<std::size_t> ordinal_sizes(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(i + 1);
  return out;
}

bool monotone(const std::vector<std::size_t>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] > v[i]) return false;
  return true;
}

ExplicitCategory delta_op(std::size_t n) {
  auto delta = function_category(ordinals(n), ordinal_sizes(n), "d",
                                 [](std::size_t, std::size_t, const std::vector<std::size_t>& v) { return monotone(v); });
  return opposite_category(delta, "^op");
}

Morphism explicit_morphism(const ExplicitCategory& c, const std::string& name) {
  return c.as_morphism(c.id_of(name));
}

// all strictly increasing maps [m] -> [k] with value 0 at 0, lexicographic
std::vector<std::vector<std::size_t>> increasing_pointed(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur{0};
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == m + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t x = cur.back() + 1; x <= k; ++x) {
      cur.push_back(x);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace

std::string ordinal_name(std::size_t n) { return "[" + std::to_string(n) + "]"; }

std::string gamma_morphism_name(std::size_t from, std::size_t to, const std::vector<std::size_t>& values) {
  return "g" + std::to_string(from) + ">" + std::to_string(to) + "/" + digits(values);
}

std::string delta_op_morphism_name(std::size_t from, std::size_t to, const std::vector<std::size_t>& values) {
  return "d" + std::to_string(from) + ">" + std::to_string(to) + "/" + digits(values) + "^op";
}

Sketch builtin_binary() {
  using MorphId = ExplicitCategory::MorphId;
  // ids: 0 id_b1, 1 id_b2, 2 phi1, 3 phi2, 4 mu
  std::vector<ExplicitCategory::Arrow> arrows{
      {"id_b1", 0, 0}, {"id_b2", 1, 1}, {"phi1", 1, 0}, {"phi2", 1, 0}, {"mu", 1, 0}};
  auto cat = std::make_shared<const ExplicitCategory>(
      std::vector<std::string>{"b1", "b2"}, std::move(arrows), std::vector<MorphId>{0, 1}, [](MorphId f, MorphId g) {
        if (f <= 1) return g;
        return f;  // g is then id_b1
      });
  Sketch s;
  s.name = "binary";
  s.cat = cat;
  s.cones.push_back(Cone{"alpha", "b2",
                         {ConeLeg{"b1", explicit_morphism(*cat, "phi1")}, ConeLeg{"b1", explicit_morphism(*cat, "phi2")}}});
  SortedStructure sorted;
  sorted.sorts = {"s"};
  sorted.object_index[{"s"}] = "b1";
  sorted.object_index[{"s", "s"}] = "b2";
  s.sorting = sorted;
  return s;
}

Sketch builtin_gamma(std::size_t n) {
  if (n < 1) throw BadParam("gamma needs truncation N >= 1");
  auto cat = std::make_shared<const ExplicitCategory>(
      function_category(ordinals(n), ordinal_sizes(n), "g",
                        [](std::size_t, std::size_t, const std::vector<std::size_t>& v) { return v[0] == 0; }));
  Sketch s;
  s.name = "gamma";
  s.cat = cat;
  SortedStructure sorted;
  sorted.sorts = {"s"};
  for (std::size_t k = 0; k <= n; ++k) {
    Cone c{"alpha" + std::to_string(k), ordinal_name(k), {}};
    for (std::size_t leg = 1; leg <= k; ++leg) {
      std::vector<std::size_t> v(k + 1, 0);
      v[leg] = 1;
      c.legs.push_back(ConeLeg{ordinal_name(1), explicit_morphism(*cat, gamma_morphism_name(k, 1, v))});
    }
    s.cones.push_back(std::move(c));
    sorted.object_index[SortTuple(k, "s")] = ordinal_name(k);
  }
  s.sorting = sorted;
  return s;
}

Sketch builtin_delta_loop(std::size_t n, std::size_t m) {
  if (m < 1) throw BadParam("delta-loop needs m >= 1");
  if (n < m) throw BadParam("delta-loop needs truncation N >= m");
  auto cat = std::make_shared<const ExplicitCategory>(delta_op(n));
  Sketch s;
  s.name = "delta_loop";
  s.cat = cat;
  for (std::size_t k = 0; k <= n; ++k) {
    Cone c{"alpha" + std::to_string(k), ordinal_name(k), {}};
    if (k >= m)
      for (const auto& phi : increasing_pointed(m, k))
        c.legs.push_back(ConeLeg{ordinal_name(m), explicit_morphism(*cat, delta_op_morphism_name(m, k, phi))});
    s.cones.push_back(std::move(c));
  }
  if (m == 1) {
    SortedStructure sorted;
    sorted.sorts = {"s"};
    for (std::size_t k = 0; k <= n; ++k) sorted.object_index[SortTuple(k, "s")] = ordinal_name(k);
    s.sorting = sorted;
  }
  return s;
}

Sketch builtin_prezma(std::size_t n) {
  using MorphId = ExplicitCategory::MorphId;
  if (n < 1) throw BadParam("prezma needs truncation N >= 1");
  // the arrow category i0 -> i1; ids: 0 i0>i0, 1 i1>i1, 2 i0>i1
  ExplicitCategory arrow({"i0", "i1"}, {{"i0>i0", 0, 0}, {"i1>i1", 1, 1}, {"i0>i1", 0, 1}}, {0, 1},
                         [](MorphId f, MorphId g) { return f == 2 || g == 2 ? MorphId{2} : f; });
  auto cat = std::make_shared<const ExplicitCategory>(product_category(delta_op(n), arrow));
  auto obj = [](std::size_t k, const char* i) { return ordinal_name(k) + "*" + i; };
  auto mor = [&](const std::string& d, const std::string& i) { return explicit_morphism(*cat, d + "*" + i); };
  auto id_delta = [](std::size_t k) {
    std::vector<std::size_t> v(k + 1);
    for (std::size_t i = 0; i <= k; ++i) v[i] = i;
    return delta_op_morphism_name(k, k, v);
  };
  Sketch s;
  s.name = "prezma";
  s.cat = cat;
  for (std::size_t k = 0; k <= n; ++k) {
    Cone c{"alpha" + std::to_string(k), obj(k, "i1"), {}};
    for (std::size_t leg = 1; leg <= k; ++leg)
      c.legs.push_back(ConeLeg{obj(1, "i1"), mor(delta_op_morphism_name(1, k, {leg - 1, leg}), "i1>i1")});
    s.cones.push_back(std::move(c));
  }
  for (std::size_t k = 0; k <= n; ++k)
    s.cones.push_back(Cone{"beta" + std::to_string(k), obj(k, "i0"),
                           {ConeLeg{obj(0, "i0"), mor(delta_op_morphism_name(0, k, {0}), "i0>i0")},
                            ConeLeg{obj(k, "i1"), mor(id_delta(k), "i0>i1")}}});
  for (std::size_t k = 0; k <= n; ++k)
    s.cones.push_back(Cone{"gamma" + std::to_string(k), obj(k, "i0"),
                           {ConeLeg{obj(0, "i0"), mor(delta_op_morphism_name(0, k, {k}), "i0>i0")},
                            ConeLeg{obj(k, "i1"), mor(id_delta(k), "i0>i1")}}});
  return s;
}

Sketch builtin(const std::string& name, const BuiltinParams& p) {
  if (name == "binary") return builtin_binary();
  if (name == "gamma") return builtin_gamma(p.trunc);
  if (name == "delta-loop" || name == "delta_loop") return builtin_delta_loop(p.trunc, p.m);
  if (name == "prezma") return builtin_prezma(p.trunc);
  throw BadParam("unknown builtin '" + name + "'");
}

BuiltinSignature builtin_signature(const std::string& name, const BuiltinParams& params) {
  const Sketch target = builtin(name, params);
  const auto& cat = target.cat.explicit_category();
  auto leg = [&](const std::string& cone, std::size_t k) { return target.find_cone(cone)->legs.at(k).projection; };
  auto only = [&](const std::string& a, const std::string& b) {
    const auto& h = cat.hom(cat.object_index(a), cat.object_index(b));
    if (h.size() != 1) throw BadParam("expected a unique morphism " + a + " -> " + b);
    return cat.as_morphism(h.front());
  };
  auto named = [&](const std::string& m) { return cat.as_morphism(cat.id_of(m)); };
  if (name == "binary") {
    Sketch s = target;
    s.cat = std::make_shared<const FreeCategory>(free_category(
        {"b1", "b2"}, {{"phi1", "b2", "b1"}, {"phi2", "b2", "b1"}, {"mu", "b2", "b1"}}));
    for (auto& c : s.cones)
      for (auto& l : c.legs) l.projection = s.cat.as_free()->generator_morphism(l.projection.word.at(0));
    FreeSemiTheory theory(s);
    std::map<std::string, Morphism> arrows;
    for (const auto& g : theory.category().generators()) arrows[g.name] = named(g.name);
    Functor f = Functor::from_table(theory.sketch().cat, target.cat, {{"b1", "b1"}, {"b2", "b2"}}, arrows);
    return BuiltinSignature{std::move(theory), target, std::move(f)};
  }
  if (params.trunc < 2) throw BadParam("signature of " + name + " needs trunc >= 2");
  if (name == "gamma") {
    auto theory = FreeSemiTheory::make("gamma-signature", {"s"}, {{}, {"s", "s"}},
                                       {{"e", {}, {"s"}}, {"m", {"s", "s"}, {"s"}}});
    std::map<std::string, std::string> objects{{theory.object_of({}), ordinal_name(0)},
                                               {theory.object_of({"s"}), ordinal_name(1)},
                                               {theory.object_of({"s", "s"}), ordinal_name(2)}};
    std::map<std::string, Morphism> arrows{
        {"e", only(ordinal_name(0), ordinal_name(1))},
        {"m", named(gamma_morphism_name(2, 1, {0, 1, 1}))},
        {FreeSemiTheory::default_projection_name({"s", "s"}, 1), leg("alpha2", 0)},
        {FreeSemiTheory::default_projection_name({"s", "s"}, 2), leg("alpha2", 1)}};
    Functor f = Functor::from_table(theory.sketch().cat, target.cat, objects, arrows);
    return BuiltinSignature{std::move(theory), target, std::move(f)};
  }
  if (name == "prezma") {
    auto theory = FreeSemiTheory::make("prezma-signature", {"M", "X"}, {{}, {"M", "M"}, {"X", "M"}},
                                       {{"e", {}, {"M"}}, {"m", {"M", "M"}, {"M"}}, {"act", {"X", "M"}, {"X"}}});
    auto obj = [](std::size_t k, const char* i) { return ordinal_name(k) + "*" + i; };
    std::map<std::string, std::string> objects{{theory.object_of({}), obj(0, "i1")},
                                               {theory.object_of({"M"}), obj(1, "i1")},
                                               {theory.object_of({"X"}), obj(0, "i0")},
                                               {theory.object_of({"M", "M"}), obj(2, "i1")},
                                               {theory.object_of({"X", "M"}), obj(1, "i0")}};
    std::map<std::string, Morphism> arrows{
        {"e", only(obj(0, "i1"), obj(1, "i1"))},
        {"m", named(delta_op_morphism_name(1, 2, {0, 2}) + "*i1>i1")},
        {"act", leg("gamma1", 0)},
        {FreeSemiTheory::default_projection_name({"M", "M"}, 1), leg("alpha2", 0)},
        {FreeSemiTheory::default_projection_name({"M", "M"}, 2), leg("alpha2", 1)},
        {FreeSemiTheory::default_projection_name({"X", "M"}, 1), leg("beta1", 0)},
        {FreeSemiTheory::default_projection_name({"X", "M"}, 2), leg("beta1", 1)}};
    Functor f = Functor::from_table(theory.sketch().cat, target.cat, objects, arrows);
    return BuiltinSignature{std::move(theory), target, std::move(f)};
  }
  throw BadParam("builtin " + name + " has no signature");
}

std::vector<std::string> builtin_names() { return {"binary", "gamma", "delta-loop", "prezma"}; }

}  // namespace sketchforge
