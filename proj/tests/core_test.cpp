#include <doctest.h>

#include <memory>
#include <random>
#include <set>

#include "sketchforge/builtins.hpp"
#include "sketchforge/category.hpp"
#include "sketchforge/category_view.hpp"
#include "sketchforge/error.hpp"
#include "sketchforge/sketch.hpp"

using namespace sketchforge;

namespace {

std::vector<std::shared_ptr<const ExplicitCategory>> explicit_corpus() {
  std::vector<std::shared_ptr<const ExplicitCategory>> out;
  for (const auto* name : {"binary", "gamma", "delta-loop", "prezma"}) {
    BuiltinParams p;
    p.trunc = 2;
    out.push_back(builtin(name, p).cat.explicit_ptr());
  }
  out.push_back(std::make_shared<ExplicitCategory>(indiscrete_category({"a", "b", "c"})));
  out.push_back(std::make_shared<ExplicitCategory>(function_category({"x", "y", "z"}, {0, 1, 2}, "f")));
  out.push_back(std::make_shared<ExplicitCategory>(
      product_category(*builtin_binary().cat.explicit_ptr(), indiscrete_category({"0", "1"}))));
  out.push_back(std::make_shared<ExplicitCategory>(opposite_category(*builtin_gamma(2).cat.explicit_ptr(), "'")));
  return out;
}

// Independent product check: counts factorizations directly.
bool naive_product(const ExplicitCategory& c, const Cone& cone) {
  const auto apex = c.object_index(cone.apex);
  std::vector<ExplicitCategory::MorphId> proj;
  for (const auto& l : cone.legs) proj.push_back(c.resolve(l.projection));
  for (std::size_t d = 0; d < c.object_count(); ++d) {
    std::vector<std::vector<ExplicitCategory::MorphId>> choices;
    for (const auto& l : cone.legs) choices.push_back(c.hom(d, c.object_index(l.object)));
    std::vector<std::size_t> pick(choices.size(), 0);
    bool empty = false;
    for (const auto& ch : choices) empty = empty || ch.empty();
    if (empty) continue;
    while (true) {
      int found = 0;
      for (auto u : c.hom(d, apex)) {
        bool ok = true;
        for (std::size_t k = 0; k < proj.size() && ok; ++k) ok = c.compose(u, proj[k]) == choices[k][pick[k]];
        if (ok) ++found;
      }
      if (found != 1) return false;
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("explicit categories satisfy the category laws") {
  for (const auto& c : explicit_corpus()) CHECK(check_category_laws(*c).empty());
}

TEST_CASE("unit law and composition in Gamma match function composition") {
  const auto g = builtin_gamma(3).cat.explicit_ptr();
  for (ExplicitCategory::MorphId f = 0; f < g->morphism_count(); ++f) {
    CHECK(g->compose(g->identity(g->dom(f)), f) == f);
    CHECK(g->compose(f, g->identity(g->cod(f))) == f);
  }
  // g2>2/021 then g2>1/011
  const auto f = g->id_of(gamma_morphism_name(2, 2, {0, 2, 1}));
  const auto h = g->id_of(gamma_morphism_name(2, 1, {0, 1, 0}));
  CHECK(g->name(g->compose(f, h)) == gamma_morphism_name(2, 1, {0, 0, 1}));
  CHECK_THROWS_AS(g->compose(h, f), NotComposable);
}

TEST_CASE("gamma(1) has two endomorphisms of [1]") {
  const auto g = builtin_gamma(1).cat.explicit_ptr();
  CHECK(g->hom(1, 1).size() == 2);
}

TEST_CASE("indiscrete categories") {
  const auto k = indiscrete_category({"a", "b", "c"});
  CHECK(k.morphism_count() == 9);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(k.hom(a, b).size() == 1);
  const auto t = indiscrete_category({"*"});
  CHECK(t.morphism_count() == 1);
  CHECK_THROWS_AS(indiscrete_category({}), EmptyLabelSet);
}

TEST_CASE("product categories") {
  const auto b = builtin_binary().cat.explicit_ptr();
  const auto j = indiscrete_category({"0", "1"});
  const auto bj = product_category(*b, j);
  for (std::size_t x = 0; x < b->object_count(); ++x)
    for (std::size_t y = 0; y < b->object_count(); ++y)
      CHECK(bj.hom(bj.object_index(b->object_name(x) + "*0"), bj.object_index(b->object_name(y) + "*1")).size() ==
            b->hom(x, y).size());
  const auto one = product_category(*b, terminal_category());
  CHECK(one.object_count() == b->object_count());
  CHECK(one.morphism_count() == b->morphism_count());
  const auto kk = product_category(indiscrete_category({"a", "b"}), indiscrete_category({"x", "y", "z"}));
  for (std::size_t x = 0; x < kk.object_count(); ++x)
    for (std::size_t y = 0; y < kk.object_count(); ++y) CHECK(kk.hom(x, y).size() == 1);
}

TEST_CASE("free category words") {
  const auto f = free_category({"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}, {"h", "a", "a"}});
  const auto fm = f.generator_morphism("f");
  CHECK(f.compose(f.identity("a"), fm) == fm);
  CHECK(f.compose(fm, f.identity("b")) == fm);
  CHECK_THROWS_AS(f.compose(fm, fm), NotComposable);
  CHECK_THROWS_AS(free_category({"a"}, {{"f", "a", "z"}}), UnknownObject);

  SUBCASE("hom enumeration is complete and duplicate free") {
    // words a -> a of length <= 4 over f,g,h: count by dynamic programming
    const std::size_t bound = 4;
    std::vector<std::map<std::string, std::size_t>> count(bound + 1);
    count[0]["a"] = 1;
    for (std::size_t n = 0; n < bound; ++n)
      for (const auto& [o, c] : count[n])
        for (const auto& g : f.generators())
          if (g.dom == o) count[n + 1][g.cod] += c;
    std::size_t expect = 0;
    for (const auto& level : count) expect += level.count("a") ? level.at("a") : 0;
    const auto hom = f.hom("a", "a", bound);
    CHECK(hom.size() == expect);
    CHECK(std::set<Morphism>(hom.begin(), hom.end()).size() == hom.size());
    for (std::size_t i = 1; i < hom.size(); ++i) CHECK(hom[i - 1].word.size() <= hom[i].word.size());
  }

  SUBCASE("associativity on random word triples") {
    std::mt19937 rng(7);
    auto random_word = [&](std::string from) {
      Morphism m{from, from, {}};
      const auto len = rng() % 4;
      for (std::size_t i = 0; i < len; ++i) {
        std::vector<GeneratorId> out;
        for (const auto& g : f.generators())
          if (g.dom == m.cod) out.push_back(g);
        const auto& g = out[rng() % out.size()];
        m = f.compose(m, f.generator_morphism(g.name));
      }
      return m;
    };
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_word(rng() % 2 ? "a" : "b");
      const auto y = random_word(x.cod);
      const auto z = random_word(y.cod);
      CHECK(f.compose(f.compose(x, y), z) == f.compose(x, f.compose(y, z)));
    }
  }
}

TEST_CASE("category views agree on units") {
  for (const auto& c : explicit_corpus()) {
    const CategoryView v(c);
    for (const auto& a : v.objects())
      for (const auto& b : v.objects())
        for (const auto& m : v.hom(a, b)) {
          CHECK(v.compose(v.identity(a), m) == m);
          CHECK(v.compose(m, v.identity(b)) == m);
        }
  }
}

TEST_CASE("is_product_cone") {
  const auto b = builtin_binary();
  const auto& bc = b.cat.explicit_category();
  CHECK_FALSE(is_product_cone(bc, b.cones.at(0)));
  CHECK(is_product_cone(bc, identity_cone(b.cat, "b1", "i")));

  SUBCASE("truncated Gamma") {
    const auto g = builtin_gamma(3);
    const auto& gc = g.cat.explicit_category();
    // alpha0 is terminal and alpha1 is the identity cone; alpha2, alpha3 are not products.
    CHECK(is_product_cone(gc, *g.find_cone("alpha0")));
    CHECK(is_product_cone(gc, *g.find_cone("alpha1")));
    CHECK_FALSE(is_product_cone(gc, *g.find_cone("alpha2")));
    CHECK_FALSE(is_product_cone(gc, *g.find_cone("alpha3")));
  }

  SUBCASE("agrees with a naive factorization count") {
    for (const auto* name : {"binary", "gamma", "delta-loop", "prezma"}) {
      BuiltinParams p;
      p.trunc = name == std::string("prezma") ? 1 : 2;
      const auto s = builtin(name, p);
      const auto& c = s.cat.explicit_category();
      if (c.object_count() > 6) continue;
      for (const auto& cone : s.cones) CHECK(is_product_cone(c, cone) == naive_product(c, cone));
    }
    const auto j = indiscrete_category({"0", "1"});
    const auto bj = product_category(bc, j);
    const Cone c{"x", "b2*0", {{"b1*1", {"b2*0", "b1*1", {"phi1*0>1"}}}, {"b1*0", {"b2*0", "b1*0", {"mu*0>0"}}}}};
    CHECK(is_product_cone(bj, c) == naive_product(bj, c));
  }

  SUBCASE("free categories are rejected") {
    auto f = std::make_shared<const FreeCategory>(free_category({"a"}, {}));
    CHECK_THROWS_AS(is_product_cone(CategoryView(f), Cone{"c", "a", {}}), NotExplicit);
  }
}
