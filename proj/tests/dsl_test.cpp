#include <doctest.h>

#include <random>

#include "sketchforge/builtins.hpp"
#include "sketchforge/dsl.hpp"
#include "sketchforge/transforms.hpp"

using namespace sketchforge;

namespace {

std::string slice(const std::string& text, const Span& s) { return text.substr(s.offset, s.length); }

std::string random_name(std::mt19937& rng) {
  static const std::string head = "abcdefghjkmnpqrtuwxyz";
  static const std::string tail = "abcxyz019_*[]|>";
  std::string n(1, head[rng() % head.size()]);
  const auto len = rng() % 5;
  for (std::size_t i = 0; i < len; ++i) n += tail[rng() % tail.size()];
  return n;
}

NameRef ref(std::string s) { return NameRef{std::move(s), {}}; }

SketchDocument random_document(std::mt19937& rng) {
  SketchDocument d;
  d.name = ref(random_name(rng));
  auto pick = [&](const std::vector<NameRef>& v) { return v.empty() ? ref(random_name(rng)) : v[rng() % v.size()]; };
  for (std::size_t i = rng() % 3; i > 0; --i) d.sorts.push_back(ref(random_name(rng)));
  d.free = rng() % 2;
  std::vector<NameRef> objects, gens;
  for (std::size_t i = 1 + rng() % 4; i > 0; --i) {
    ObjectDecl o{ref(random_name(rng)), {}};
    for (std::size_t t = rng() % 3; t > 0; --t) {
      std::vector<NameRef> tuple;
      for (std::size_t k = rng() % 3; k > 0; --k) tuple.push_back(pick(d.sorts));
      o.tuples.push_back(tuple);
    }
    objects.push_back(o.name);
    d.objects.push_back(o);
  }
  for (std::size_t i = rng() % 5; i > 0; --i) {
    GenDecl g{ref(random_name(rng)), pick(objects), pick(objects)};
    gens.push_back(g.name);
    d.gens.push_back(g);
  }
  if (!d.free)
    for (std::size_t i = rng() % 2; i > 0; --i) d.ids.push_back(IdDecl{pick(objects), ref(random_name(rng))});
  for (std::size_t i = rng() % 3; i > 0; --i) d.composes.push_back(ComposeDecl{{pick(gens), pick(gens)}, pick(gens)});
  for (std::size_t i = rng() % 3; i > 0; --i) {
    ConeDecl c{ref(random_name(rng)), pick(objects), {}};
    for (std::size_t k = rng() % 3; k > 0; --k) {
      LegDecl l{pick(objects), {}};
      for (std::size_t p = 1 + rng() % 2; p > 0; --p) l.path.push_back(pick(gens));
      c.legs.push_back(l);
    }
    d.cones.push_back(c);
  }
  for (std::size_t i = rng() % 2; i > 0; --i) d.distinguished.push_back(pick(objects));
  return d;
}

void check_spans(const std::string& text, const SketchDocument& d) {
  auto check = [&](const NameRef& n) { CHECK(slice(text, n.span) == n.text); };
  check(d.name);
  for (const auto& s : d.sorts) check(s);
  for (const auto& o : d.objects) {
    check(o.name);
    for (const auto& t : o.tuples)
      for (const auto& s : t) check(s);
  }
  for (const auto& g : d.gens) {
    check(g.name);
    check(g.dom);
    check(g.cod);
  }
  for (const auto& i : d.ids) {
    check(i.object);
    check(i.name);
  }
  for (const auto& c : d.composes) {
    for (const auto& n : c.path) check(n);
    check(c.result);
  }
  for (const auto& c : d.cones) {
    check(c.name);
    check(c.apex);
    for (const auto& l : c.legs) {
      check(l.object);
      for (const auto& n : l.path) check(n);
    }
  }
  for (const auto& n : d.distinguished) check(n);
}

}  // namespace

TEST_CASE("parser round trip on the builtin corpus") {
  std::vector<Sketch> corpus;
  for (const auto& name : builtin_names()) {
    BuiltinParams p;
    p.trunc = 2;
    corpus.push_back(builtin(name, p));
  }
  corpus.push_back(builtin_delta_loop(3, 2));
  corpus.push_back(builtin_signature("binary", {}).theory.sketch());
  corpus.push_back(builtin_signature("gamma", {}).theory.sketch());
  corpus.push_back(mu_transform(builtin_binary()).sketch);
  corpus.push_back(pipeline(builtin_binary(), 2).sigma.sketch);
  for (const auto& s : corpus) {
    const std::string text = print_sketch(s);
    const auto parsed = parse_document(text);
    REQUIRE_MESSAGE(parsed.ok(), s.name);
    CHECK(parsed.document == document_of(s));
    CHECK(print_document(parsed.document) == text);
    check_spans(text, parsed.document);
    const auto built = build_sketch(parsed.document);
    REQUIRE_MESSAGE(built.sketch.has_value(), s.name);
    CHECK(built.sketch->cat.objects() == s.cat.objects());
    CHECK(built.sketch->cones.size() == s.cones.size());
    CHECK(print_sketch(*built.sketch) == text);
    CHECK(validate_sketch(*built.sketch).verdict());
  }
}

TEST_CASE("parser round trip on fuzzed documents") {
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_document(rng);
    const std::string text = print_document(d);
    const auto parsed = parse_document(text);
    REQUIRE_MESSAGE(parsed.ok(), text);
    CHECK(parsed.document == d);
    CHECK(print_document(parsed.document) == text);
    check_spans(text, parsed.document);
  }
}

TEST_CASE("binary example in the DSL") {
  const std::string text = R"(# the binary example
sketch binary {
  sorts s
  object b1 @ (s)
  object b2 @ (s s)
  gen phi1 : b2 -> b1
  gen phi2 : b2 -> b1
  gen mu : b2 -> b1
  cone alpha : b2 => (b1 via phi1, b1 via phi2)
}
)";
  const auto r = parse_sketch(text);
  REQUIRE(r.sketch.has_value());
  const auto& s = *r.sketch;
  CHECK(s.cat.explicit_category().morphism_count() == 5);
  CHECK(is_semi_theory(s, *s.sorting).verdict());
  CHECK(s.cones[0].legs[1].projection.word == std::vector<std::string>{"phi2"});
}

TEST_CASE("free sketches and paths") {
  const std::string text = R"(sketch f {
  free
  object a
  object b
  gen f : a -> b
  gen g : b -> b
  cone c : a => (b via f.g, b via f)
}
)";
  const auto r = parse_sketch(text);
  REQUIRE(r.sketch.has_value());
  CHECK(r.sketch->cat.as_free() != nullptr);
  CHECK(r.sketch->cones[0].legs[0].projection.word == std::vector<std::string>{"f", "g"});
}

TEST_CASE("diagnostics point at the offending token") {
  struct Case {
    std::string text;
    std::string rule;
    std::string token;
  };
  const std::vector<Case> cases{
      {"sketch t {\n  object a\n  gen f : a -> zz\n}\n", "unresolved-name", "zz"},
      {"sketch t {\n  object a\n  object a\n}\n", "duplicate-name", "a"},
      {"sketch t {\n  object a\n  object b\n  gen f : a -> b\n  cone c : a => (b via f.f)\n}\n", "not-composable", "f"},
      {"sketch t {\n  object a\n  gen f : a -> a\n}\n", "missing-composite", "f"},
      {"sketch t {\n  free\n  object a\n  gen f : a -> a\n  compose f.f = f\n}\n", "free-and-table", "f"},
      {"sketch t {\n  object a\n  gen f : a -> a\n  compose f.f = id_a\n  cone c : a => (a via q)\n}\n", "unresolved-name", "q"},
      {"sketch t {\n  object = \n}\n", "syntax", "="},
      {"sketch t {\n  sorts s\n  object a @ (s u)\n}\n", "unresolved-name", "u"},
  };
  for (const auto& c : cases) {
    auto r = parse_sketch(c.text);
    CHECK_FALSE(r.sketch.has_value());
    bool found = false;
    for (const auto& d : r.diagnostics) {
      CHECK(d.span.offset + d.span.length <= c.text.size());
      if (d.rule == c.rule) {
        found = true;
        CHECK_MESSAGE(slice(c.text, d.span) == c.token, format_diagnostic(d));
      }
    }
    CHECK_MESSAGE(found, c.rule, " in\n", c.text);
  }
}

TEST_CASE("parser recovers after an error") {
  const std::string text = "sketch t {\n  object = \n  gen : a\n  object b\n}\n";
  const auto r = parse_document(text);
  CHECK(r.diagnostics.size() == 2);
  CHECK(r.document.objects.size() == 1);
  CHECK(r.diagnostics[0].span.line == 2);
  CHECK(r.diagnostics[1].span.line == 3);
  CHECK(format_diagnostic(r.diagnostics[0], "x.sk").rfind("x.sk:2:", 0) == 0);
}

TEST_CASE("category law failures are reported") {
  const std::string text =
      "sketch t {\n  object a\n  gen f : a -> a\n  gen g : a -> a\n"
      "  compose f.f = g\n  compose f.g = f\n  compose g.f = g\n  compose g.g = g\n}\n";
  const auto r = parse_sketch(text);
  CHECK_FALSE(r.sketch.has_value());
  bool law = false;
  for (const auto& d : r.diagnostics) law = law || d.rule == "category-law";
  CHECK(law);
}
