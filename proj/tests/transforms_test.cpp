#include <doctest.h>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "sketchforge/builtins.hpp"
#include "sketchforge/error.hpp"
#include "sketchforge/transforms.hpp"

using namespace sketchforge;

namespace {

std::size_t hom_size(const ExplicitCategory& c, const std::string& a, const std::string& b) {
  return c.hom(c.object_index(a), c.object_index(b)).size();
}

void check_hom_preservation(const Sketch& s) {
  const auto m = mu_transform(s);
  const auto& base = s.cat.explicit_category();
  const auto& big = m.sketch.cat.explicit_category();
  CHECK(big.object_count() == base.object_count() * m.cone_names.size() * 2);
  for (const auto& x : big.objects())
    for (const auto& y : big.objects())
      CHECK(hom_size(big, x, y) == hom_size(base, m.origin_of.at(x).object, m.origin_of.at(y).object));
}

// sigma morphism out of a new tuple as "k:f"
std::string sigma_key(const SigmaCategory& s, const SortTuple& t, const Morphism& m) {
  if (m.word.empty()) return "id";
  for (std::size_t k = 1; k <= t.size(); ++k)
    if (m.word[0] == SigmaCategory::projection_name(k, t)) {
      const auto& b = s.base();
      const auto leg = b.object_index(*s.base_index().object_of({t[k - 1]}));
      return std::to_string(k) + ":" + (m.word.size() > 1 ? m.word[1] : b.name(b.identity(leg)));
    }
  return "?";
}

Functor binary_into_gamma(const Sketch& b, const Sketch& g) {
  const auto& gc = g.cat.explicit_category();
  auto named = [&](const std::string& n) { return gc.as_morphism(gc.id_of(n)); };
  return Functor::from_table(b.cat, g.cat, {{"b1", "[1]"}, {"b2", "[2]"}},
                             {{"id_b1", named(gamma_morphism_name(1, 1, {0, 1}))},
                              {"id_b2", named(gamma_morphism_name(2, 2, {0, 1, 2}))},
                              {"phi1", named(gamma_morphism_name(2, 1, {0, 1, 0}))},
                              {"phi2", named(gamma_morphism_name(2, 1, {0, 0, 1}))},
                              {"mu", named(gamma_morphism_name(2, 1, {0, 1, 1}))}});
}

}  // namespace

TEST_CASE("mu transform of the binary example") {
  const auto b = builtin_binary();
  const auto m = mu_transform(b);
  CHECK(m.sketch.cat.objects().size() == 4);
  CHECK(validate_sketch(m.sketch).verdict());
  CHECK(m.fixed_cone == "alpha");
  const auto* lifted = m.sketch.find_cone("alpha");
  REQUIRE(lifted);
  CHECK(lifted->apex == mu_object_name("b2", "alpha", 0));
  for (const auto& l : lifted->legs) CHECK(l.object == mu_object_name("b1", "alpha", 1));
  CHECK(check_multisorted(m.sketch, m.distinguished).verdict());
  const auto found = is_multisorted_fps(m.sketch);
  CHECK(found.verdict);
  CHECK(found.distinguished == m.distinguished);
  CHECK(functor_violation(m.embedding()) == std::nullopt);
}

TEST_CASE("mu preserves hom cardinalities") {
  check_hom_preservation(builtin_binary());
  check_hom_preservation(builtin_prezma(1));
  check_hom_preservation(builtin_gamma(2));
  check_hom_preservation(builtin_delta_loop(2, 1));
}

TEST_CASE("mu output is multi-sorted with the canonical set") {
  for (const auto& name : builtin_names()) {
    BuiltinParams p;
    p.trunc = 1;
    const auto m = mu_transform(builtin(name, p));
    CHECK_MESSAGE(check_multisorted(m.sketch, m.distinguished).verdict(), name);
  }
}

TEST_CASE("mu edge cases") {
  auto b = builtin_binary();
  auto none = b;
  none.cones.clear();
  const auto m = mu_transform(none);
  CHECK(m.trivial);
  CHECK(m.sketch.cat.objects() == none.cat.objects());
  auto twice = b;
  twice.cones.push_back(b.cones[0]);
  CHECK_THROWS_AS(mu_transform(twice), BadParam);
  auto free_sketch = builtin_signature("binary", {}).theory.sketch();
  CHECK_THROWS_AS(mu_transform(free_sketch), NotExplicit);
}

TEST_CASE("sigma hom sets match free word enumeration") {
  const auto p = pipeline(builtin_binary(), 3);
  const auto& s = *p.sigma.category;
  CHECK(!s.new_tuples().empty());
  for (const auto& t : s.new_tuples()) {
    const auto words = oracle::sigma_words(s, t, 3);
    const auto longer = oracle::sigma_words(s, t, 5);
    CHECK(words == longer);
    const std::string obj = SigmaCategory::tuple_object_name(t);
    for (const auto& c : s.objects()) {
      std::set<std::string> got;
      for (const auto& m : s.hom(obj, c)) got.insert(sigma_key(s, t, m));
      const auto it = words.find(c);
      CHECK(got == (it == words.end() ? std::set<std::string>{} : it->second));
      if (!s.new_tuple_of(c) || c == obj) continue;
      CHECK(s.hom(c, obj).empty());
    }
  }
}

TEST_CASE("sigma output is a semi-theory") {
  for (std::size_t L = 0; L <= 4; ++L) {
    const auto p = pipeline(builtin_binary(), L);
    CHECK(is_semi_theory(p.sigma.sketch, p.sigma.sorted).verdict());
  }
  for (std::size_t L = 0; L <= 2; ++L) {
    const auto p = pipeline(builtin_prezma(1), L);
    CHECK(is_semi_theory(p.sigma.sketch, p.sigma.sorted).verdict());
  }
  const auto g = builtin_gamma(2);
  const auto direct = sigma_transform(g, *g.sorting, 3);
  CHECK(is_semi_theory(direct.sketch, direct.sorted).verdict());
  CHECK(direct.category->new_tuples().size() == 1);  // (s,s,s)
}

TEST_CASE("sigma categories satisfy the category laws") {
  const auto p = pipeline(builtin_binary(), 2);
  CHECK(check_category_laws(p.sigma.category->materialize()).empty());
}

TEST_CASE("transport respects composition") {
  const auto b = builtin_binary();
  const auto g = builtin_gamma(2);
  const auto g1 = Functor::identity(b.cat);
  const auto g2 = binary_into_gamma(b, g);
  REQUIRE(functor_violation(g2) == std::nullopt);
  const SketchMorphism s1{b, b, g1};
  const SketchMorphism s2{b, g, g2};
  REQUIRE(cone_preservation_violation(s2) == std::nullopt);
  const SketchMorphism s12{b, g, compose(g1, g2)};

  const auto pb = pipeline(b, 2);
  const auto pg = pipeline(g, 2);
  const auto t1 = transport_functor(s1, pb, pb);
  const auto t2 = transport_functor(s2, pb, pg);
  const auto t12 = transport_functor(s12, pb, pg);
  const auto both = compose(t1, t2);
  CHECK(functor_violation(t2) == std::nullopt);
  const auto& src = *pb.sigma.category;
  for (const auto& x : src.objects()) {
    CHECK(t12.object(x) == both.object(x));
    for (const auto& y : src.objects())
      for (const auto& m : src.hom(x, y)) CHECK(t12(m) == both(m));
  }

  SUBCASE("non-injective maps are rejected") {
    const auto& gc = g.cat.explicit_category();
    const auto id1 = gc.as_morphism(gc.id_of(gamma_morphism_name(1, 1, {0, 1})));
    const auto collapse = Functor::from_table(
        b.cat, g.cat, {{"b1", "[1]"}, {"b2", "[1]"}},
        {{"id_b1", id1}, {"id_b2", id1}, {"phi1", id1}, {"phi2", id1}, {"mu", id1}});
    CHECK_THROWS(mu_transport({b, g, collapse}, pb.mu, pg.mu));
  }
}

TEST_CASE("initial semi-theory") {
  const auto p = initial_semitheory({"s", "t"}, 2);
  CHECK(p.operations().empty());
  CHECK(p.tuples().size() == 1 + 2 + 4);
  const auto g = builtin_gamma(2);
  const auto u = unique_map_to(initial_semitheory({"s"}, 2), g, *g.sorting);
  CHECK(functor_violation(u) == std::nullopt);
  CHECK(all_maps_from_initial(initial_semitheory({"s"}, 2), g, *g.sorting).size() == 1);
  CHECK_THROWS_AS(unique_map_to(p, g, *g.sorting), SortMismatch);
}

TEST_CASE("left extension index") {
  const auto c = builtin_signature("binary", {}).theory;
  const auto idx = left_extension_index(c, "b1", 6);
  REQUIRE(idx.size() == 1);
  CHECK(idx[0].word == std::vector<std::string>{"mu"});
  CHECK(left_extension_index(c, "b2", 6).empty());

  // oracle: words into the object whose first letter is not a projection
  const auto rich = FreeSemiTheory::make("r", {"s", "t"}, {{}, {"s", "s"}, {"t", "t"}},
                                         {{"mu", {"s", "s"}, {"s"}},
                                          {"e", {}, {"s"}},
                                          {"h", {"s"}, {"t"}},
                                          {"k", {"s", "s"}, {"t", "t"}}});
  for (const auto& target : rich.category().objects()) {
    std::set<std::vector<std::string>> expect;
    for (const auto& from : rich.category().objects())
      for (const auto& w : rich.category().hom(from, target, 4))
        if (!w.word.empty() && !rich.is_projection(w.word.front())) expect.insert(w.word);
    std::set<std::vector<std::string>> got;
    for (const auto& w : left_extension_index(rich, target, 4)) got.insert(w.word);
    CHECK(got == expect);
  }

  const auto loop = FreeSemiTheory::make("l", {"s"}, {{"s", "s"}}, {{"mu", {"s", "s"}, {"s"}}, {"d", {"s"}, {"s", "s"}}});
  CHECK_THROWS_AS(left_extension_index(loop, loop.object_of({"s"}), 4), BoundExceeded);
}

TEST_CASE("left extension is the identity over P") {
  const auto p = initial_semitheory({"s"}, 2);
  FinSetAlgebra y;
  for (const auto& o : p.category().objects()) y.carriers[o] = numbered_carrier(2);
  y.actions["p1[s|s]"] = {0, 1};
  y.actions["p2[s|s]"] = {1, 1};
  const auto j = left_extend(p, y, p);
  CHECK(j == y);
}

TEST_CASE("left extension over the binary example adds one copy per word") {
  const auto p = initial_semitheory({"s"}, 2);
  const auto c = builtin_signature("binary", {}).theory;
  FinSetAlgebra y;
  y.carriers[p.object_of({})] = numbered_carrier(1);
  y.carriers[p.object_of({"s"})] = numbered_carrier(2);
  y.carriers[p.object_of({"s", "s"})] = numbered_carrier(3);
  y.actions[FreeSemiTheory::default_projection_name({"s", "s"}, 1)] = {0, 1, 1};
  y.actions[FreeSemiTheory::default_projection_name({"s", "s"}, 2)] = {1, 0, 1};
  const auto j = left_extend(p, y, c);
  CHECK(j.carriers.at("b1").size() == 2 + 3);
  CHECK(j.carriers.at("b2").size() == 3);
  CHECK(functoriality_violation(c.sketch().cat, j) == std::nullopt);
  CHECK(j.actions.at("phi1") == Table{0, 1, 1});
  CHECK(j.actions.at("mu") == Table{2, 3, 4});
}

TEST_CASE("left extension adjunction on small carriers") {
  const auto p = initial_semitheory({"s"}, 2);
  const auto c = FreeSemiTheory::make("c", {"s"}, {{}, {"s", "s"}}, {{"mu", {"s", "s"}, {"s"}}, {"e", {}, {"s"}}});
  const auto e0 = p.object_of({}), e1 = p.object_of({"s"}), e2 = p.object_of({"s", "s"});
  const std::vector<std::string> objs{e0, e1, e2};
  std::vector<oracle::Gen> pgens, cgens;
  for (const auto& g : p.category().generators()) pgens.push_back({g.name, g.dom, g.cod});
  for (const auto& g : c.category().generators()) cgens.push_back({g.name, g.dom, g.cod});
  const auto p1 = FreeSemiTheory::default_projection_name({"s", "s"}, 1);
  const auto p2 = FreeSemiTheory::default_projection_name({"s", "s"}, 2);

  std::mt19937 rng(3);
  auto random_table = [&](std::size_t n, std::size_t m) {
    Table t(n);
    for (auto& v : t) v = rng() % m;
    return t;
  };
  for (int trial = 0; trial < 60; ++trial) {
    FinSetAlgebra y, x;
    for (const auto& o : objs) {
      y.carriers[o] = numbered_carrier(1 + rng() % 2);
      x.carriers[o] = numbered_carrier(1 + rng() % 2);
    }
    y.actions[p1] = random_table(y.size(e2), y.size(e1));
    y.actions[p2] = random_table(y.size(e2), y.size(e1));
    x.actions[p1] = random_table(x.size(e2), x.size(e1));
    x.actions[p2] = random_table(x.size(e2), x.size(e1));
    x.actions["mu"] = random_table(x.size(e2), x.size(e1));
    x.actions["e"] = random_table(x.size(e0), x.size(e1));
    const auto jy = left_extend(p, y, c);
    const auto rx = restrict_to_initial(p, c, x);
    REQUIRE(functoriality_violation(c.sketch().cat, jy) == std::nullopt);
    const auto left = oracle::nat_count(objs, cgens, jy, x);
    const auto right = oracle::nat_count(objs, pgens, y, rx);
    CHECK(left == right);
    CHECK(natural_transformations(c.sketch().cat, jy, x).size() == left);
  }
}
