#include "sketchforge/dsl.hpp"

#include <map>
#include <memory>
#include <set>

#include "sketchforge/error.hpp"

namespace sketchforge {

std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
  return file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + ": " +
         (d.severity == Diagnostic::Severity::Error ? "error" : "warning") + " [" + d.rule + "] " + d.message;
}

bool ParseResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Diagnostic::Severity::Error) return false;
  return true;
}

namespace {

enum class Tok { Name, LBrace, RBrace, LParen, RParen, Comma, Colon, Dot, At, Eq, Arrow, FatArrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

bool is_delimiter(char c) {
  switch (c) {
    case '{': case '}': case '(': case ')': case ',': case ':': case '.': case '@': case '=': case '#':
    case ' ': case '\t': case '\r': case '\n':
      return true;
    default:
      return false;
  }
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t n) {
    Token t{kind, text.substr(i, n), Span{line, col, line, col + n, i, n}};
    out.push_back(std::move(t));
    advance(n);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (text.compare(i, 2, "->") == 0) {
      push(Tok::Arrow, 2);
    } else if (text.compare(i, 2, "=>") == 0) {
      push(Tok::FatArrow, 2);
    } else if (c == '{') {
      push(Tok::LBrace, 1);
    } else if (c == '}') {
      push(Tok::RBrace, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == ':') {
      push(Tok::Colon, 1);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (c == '@') {
      push(Tok::At, 1);
    } else if (c == '=') {
      push(Tok::Eq, 1);
    } else {
      std::size_t n = 0;
      while (i + n < text.size() && !is_delimiter(text[i + n]) && text.compare(i + n, 2, "->") != 0) ++n;
      push(Tok::Name, n);
    }
  }
  out.push_back(Token{Tok::End, "", Span{line, col, line, col, text.size(), 0}});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"sorts", "object", "gen", "id", "compose", "free", "cone", "distinguished"};
  return k;
}

struct SyntaxError {};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ParseResult run() {
    ParseResult r;
    try {
      expect_keyword("sketch");
      r.document.name = name("sketch name");
      expect(Tok::LBrace, "'{'");
    } catch (const SyntaxError&) {
      r.diagnostics = std::move(diags_);
      return r;
    }
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::RBrace) {
        ++pos_;
        break;
      }
      if (t.kind == Tok::End) {
        error(t.span, "missing '}' at end of input");
        break;
      }
      try {
        item(r.document);
      } catch (const SyntaxError&) {
        recover();
      }
    }
    if (peek().kind != Tok::End) error(peek().span, "unexpected text after the closing '}'");
    r.diagnostics = std::move(diags_);
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Span& s, const std::string& msg) {
    error(s, msg);
    throw SyntaxError{};
  }
  void error(const Span& s, const std::string& msg) {
    diags_.push_back(Diagnostic{Diagnostic::Severity::Error, s, msg, "syntax"});
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek().span, "expected " + what + ", found '" + describe(peek()) + "'");
    ++pos_;
  }
  void expect_keyword(const std::string& kw) {
    if (peek().kind != Tok::Name || peek().text != kw) fail(peek().span, "expected '" + kw + "'");
    ++pos_;
  }
  static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : t.text; }

  NameRef name(const std::string& what) {
    if (peek().kind != Tok::Name) fail(peek().span, "expected " + what + ", found '" + describe(peek()) + "'");
    const Token& t = next();
    return NameRef{t.text, t.span};
  }

  std::vector<NameRef> path() {
    std::vector<NameRef> out{name("morphism name")};
    while (peek().kind == Tok::Dot) {
      ++pos_;
      out.push_back(name("morphism name"));
    }
    return out;
  }

  std::vector<NameRef> same_line_names(std::size_t line) {
    std::vector<NameRef> out;
    while (peek().kind == Tok::Name && peek().span.line == line) out.push_back(name("name"));
    return out;
  }

  std::vector<NameRef> tuple() {
    expect(Tok::LParen, "'('");
    std::vector<NameRef> out;
    while (peek().kind != Tok::RParen) {
      out.push_back(name("sort name"));
      if (peek().kind == Tok::Comma) ++pos_;
    }
    ++pos_;
    return out;
  }

  void item(SketchDocument& doc) {
    const Token& kw = peek();
    if (kw.kind != Tok::Name || !keywords().count(kw.text)) fail(kw.span, "expected an item, found '" + describe(kw) + "'");
    const std::size_t line = kw.span.line;
    const std::string k = next().text;
    if (k == "sorts") {
      auto names = same_line_names(line);
      doc.sorts.insert(doc.sorts.end(), names.begin(), names.end());
    } else if (k == "distinguished") {
      auto names = same_line_names(line);
      doc.distinguished.insert(doc.distinguished.end(), names.begin(), names.end());
    } else if (k == "free") {
      doc.free = true;
    } else if (k == "object") {
      ObjectDecl o{name("object name"), {}};
      while (peek().kind == Tok::At) {
        ++pos_;
        o.tuples.push_back(tuple());
      }
      doc.objects.push_back(std::move(o));
    } else if (k == "gen") {
      GenDecl g;
      g.name = name("generator name");
      expect(Tok::Colon, "':'");
      g.dom = name("domain object");
      expect(Tok::Arrow, "'->'");
      g.cod = name("codomain object");
      doc.gens.push_back(std::move(g));
    } else if (k == "id") {
      IdDecl d;
      d.object = name("object name");
      d.name = name("identity name");
      doc.ids.push_back(std::move(d));
    } else if (k == "compose") {
      ComposeDecl c;
      c.path = path();
      expect(Tok::Eq, "'='");
      c.result = name("morphism name");
      doc.composes.push_back(std::move(c));
    } else if (k == "cone") {
      ConeDecl c;
      c.name = name("cone name");
      expect(Tok::Colon, "':'");
      c.apex = name("apex object");
      expect(Tok::FatArrow, "'=>'");
      expect(Tok::LParen, "'('");
      if (peek().kind != Tok::RParen) {
        while (true) {
          LegDecl l;
          l.object = name("leg object");
          expect_keyword("via");
          l.path = path();
          c.legs.push_back(std::move(l));
          if (peek().kind != Tok::Comma) break;
          ++pos_;
        }
      }
      expect(Tok::RParen, "')'");
      doc.cones.push_back(std::move(c));
    }
  }

  /// Skips to the next item keyword opening a line, or to the closing brace.
  void recover() {
    std::size_t line = peek().span.line;
    if (pos_ > 0) line = toks_[pos_ - 1].span.line;
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::End || t.kind == Tok::RBrace) return;
      if (t.kind == Tok::Name && t.span.line > line && keywords().count(t.text)) return;
      ++pos_;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
};

std::string join_path(const std::vector<NameRef>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "." : "") + p[i].text;
  return out;
}

}  // namespace

ParseResult parse_document(const std::string& text) { return Parser(text).run(); }

std::string print_document(const SketchDocument& doc) {
  std::string out = "sketch " + doc.name.text + " {\n";
  auto names = [](const std::vector<NameRef>& v) {
    std::string s;
    for (const auto& n : v) s += " " + n.text;
    return s;
  };
  if (!doc.sorts.empty()) out += "  sorts" + names(doc.sorts) + "\n";
  if (doc.free) out += "  free\n";
  for (const auto& o : doc.objects) {
    out += "  object " + o.name.text;
    for (const auto& t : o.tuples) {
      out += " @ (";
      for (std::size_t i = 0; i < t.size(); ++i) out += (i ? " " : "") + t[i].text;
      out += ")";
    }
    out += "\n";
  }
  for (const auto& g : doc.gens) out += "  gen " + g.name.text + " : " + g.dom.text + " -> " + g.cod.text + "\n";
  for (const auto& d : doc.ids) out += "  id " + d.object.text + " " + d.name.text + "\n";
  for (const auto& c : doc.composes) out += "  compose " + join_path(c.path) + " = " + c.result.text + "\n";
  for (const auto& c : doc.cones) {
    out += "  cone " + c.name.text + " : " + c.apex.text + " => (";
    for (std::size_t i = 0; i < c.legs.size(); ++i)
      out += (i ? ", " : "") + c.legs[i].object.text + " via " + join_path(c.legs[i].path);
    out += ")\n";
  }
  if (!doc.distinguished.empty()) out += "  distinguished" + names(doc.distinguished) + "\n";
  return out + "}\n";
}

// ---------------------------------------------------------------------------

namespace {

class Builder {
 public:
  explicit Builder(const SketchDocument& doc) : doc_(doc) {}

  BuildResult run() {
    BuildResult r;
    objects();
    if (doc_.free) {
      if (!doc_.ids.empty()) error(doc_.ids.front().object.span, "free-and-table", "identity names are fixed in a free category");
      if (!doc_.composes.empty())
        error(doc_.composes.front().path.front().span, "free-and-table", "a free category takes no composition table");
    }
    generators();
    if (!diags_.empty()) return finish(r);
    Sketch s;
    s.name = doc_.name.text;
    if (doc_.free) {
      std::vector<GeneratorId> gens;
      for (const auto& g : doc_.gens) gens.push_back({g.name.text, g.dom.text, g.cod.text});
      s.cat = std::make_shared<const FreeCategory>(free_category(object_names_, gens));
    } else {
      auto cat = explicit_category();
      if (!cat) return finish(r);
      s.cat = cat;
    }
    for (const auto& c : doc_.cones) {
      Cone cone{c.name.text, c.apex.text, {}};
      bool ok = object_ref(c.apex);
      for (const auto& l : c.legs) {
        ok = object_ref(l.object) && ok;
        auto m = path(s.cat, l.path);
        if (!m) {
          ok = false;
          continue;
        }
        cone.legs.push_back(ConeLeg{l.object.text, *m});
      }
      if (ok) s.cones.push_back(std::move(cone));
    }
    if (!doc_.sorts.empty() || has_tuples_) {
      SortedStructure sorted;
      for (const auto& x : doc_.sorts) sorted.sorts.push_back(x.text);
      for (const auto& o : doc_.objects)
        for (const auto& t : o.tuples) {
          SortTuple tuple;
          for (const auto& x : t) tuple.push_back(x.text);
          sorted.object_index[tuple] = o.name.text;
        }
      s.sorting = sorted;
    }
    for (const auto& d : doc_.distinguished)
      if (object_ref(d)) r.distinguished.push_back(d.text);
    if (diags_.empty()) r.sketch = std::move(s);
    return finish(r);
  }

 private:
  BuildResult& finish(BuildResult& r) {
    r.diagnostics = std::move(diags_);
    if (!r.diagnostics.empty()) r.sketch.reset();
    return r;
  }

  void error(const Span& s, const std::string& rule, const std::string& msg) {
    diags_.push_back(Diagnostic{Diagnostic::Severity::Error, s, msg, rule});
  }

  bool object_ref(const NameRef& n) {
    if (object_set_.count(n.text)) return true;
    error(n.span, "unresolved-name", "unknown object '" + n.text + "'");
    return false;
  }

  void objects() {
    std::set<std::string> sorts;
    for (const auto& x : doc_.sorts)
      if (!sorts.insert(x.text).second) error(x.span, "duplicate-name", "sort '" + x.text + "' declared twice");
    for (const auto& o : doc_.objects) {
      if (!object_set_.insert(o.name.text).second) {
        error(o.name.span, "duplicate-name", "object '" + o.name.text + "' declared twice");
        continue;
      }
      object_names_.push_back(o.name.text);
      for (const auto& t : o.tuples) {
        has_tuples_ = true;
        for (const auto& x : t)
          if (!sorts.count(x.text)) error(x.span, "unresolved-name", "unknown sort '" + x.text + "'");
      }
    }
  }

  void generators() {
    if (!doc_.free) {
      for (const auto& o : object_names_) identity_of_[o] = "id_" + o;
      for (const auto& d : doc_.ids)
        if (object_ref(d.object)) identity_of_[d.object.text] = d.name.text;
      for (const auto& [o, n] : identity_of_)
        if (!morph_names_.insert(n).second) error(Span{}, "duplicate-name", "identity name '" + n + "' used twice");
    }
    for (const auto& g : doc_.gens) {
      bool ok = object_ref(g.dom);
      ok = object_ref(g.cod) && ok;
      if (!morph_names_.insert(g.name.text).second)
        error(g.name.span, "duplicate-name", "morphism '" + g.name.text + "' declared twice");
      else if (ok)
        gen_index_[g.name.text] = &g;
    }
  }

  std::shared_ptr<const ExplicitCategory> explicit_category() {
    using MorphId = ExplicitCategory::MorphId;
    std::vector<ExplicitCategory::Arrow> arrows;
    std::vector<MorphId> ids;
    std::map<std::string, MorphId> id_of;
    std::map<std::string, std::size_t> obj;
    for (std::size_t i = 0; i < object_names_.size(); ++i) obj[object_names_[i]] = i;
    for (std::size_t i = 0; i < object_names_.size(); ++i) {
      ids.push_back(static_cast<MorphId>(arrows.size()));
      id_of[identity_of_[object_names_[i]]] = ids.back();
      arrows.push_back({identity_of_[object_names_[i]], i, i});
    }
    for (const auto& g : doc_.gens) {
      id_of[g.name.text] = static_cast<MorphId>(arrows.size());
      arrows.push_back({g.name.text, obj.at(g.dom.text), obj.at(g.cod.text)});
    }
    std::map<std::pair<MorphId, MorphId>, MorphId> table;
    for (const auto& c : doc_.composes) {
      if (c.path.size() != 2) {
        error(c.path.front().span, "bad-composite", "composition entries take exactly two morphisms");
        continue;
      }
      std::vector<MorphId> ms;
      for (const auto* n : {&c.path[0], &c.path[1], &c.result}) {
        auto it = id_of.find(n->text);
        if (it == id_of.end()) error(n->span, "unresolved-name", "unknown morphism '" + n->text + "'");
        else ms.push_back(it->second);
      }
      if (ms.size() != 3) continue;
      const auto &f = arrows[ms[0]], &g = arrows[ms[1]], &h = arrows[ms[2]];
      if (f.cod != g.dom) {
        error(c.path[1].span, "not-composable", c.path[0].text + " does not end where " + c.path[1].text + " starts");
        continue;
      }
      if (h.dom != f.dom || h.cod != g.cod) {
        error(c.result.span, "bad-composite", c.result.text + " has the wrong endpoints");
        continue;
      }
      if (!table.emplace(std::make_pair(ms[0], ms[1]), ms[2]).second)
        error(c.path[0].span, "duplicate-name", "composite of " + join_path(c.path) + " given twice");
    }
    const auto first_gen = static_cast<MorphId>(object_names_.size());
    for (MorphId f = first_gen; f < arrows.size(); ++f)
      for (MorphId g = first_gen; g < arrows.size(); ++g)
        if (arrows[f].cod == arrows[g].dom && !table.count({f, g}))
          error(doc_.gens[f - first_gen].name.span, "missing-composite",
                "no composite given for " + arrows[f].name + "." + arrows[g].name);
    if (!diags_.empty()) return nullptr;
    auto cat = std::make_shared<const ExplicitCategory>(
        object_names_, arrows, ids, [&](MorphId f, MorphId g) -> MorphId {
          if (f < first_gen) return g;
          if (g < first_gen) return f;
          return table.at({f, g});
        });
    auto laws = check_category_laws(*cat);
    if (!laws.empty()) {
      std::string w;
      for (const auto& x : laws.front().witness) w += " " + x;
      error(doc_.name.span, "category-law", laws.front().rule + " fails at" + w);
      return nullptr;
    }
    return cat;
  }

  std::optional<Morphism> path(const CategoryView& cat, const std::vector<NameRef>& p) {
    std::optional<Morphism> acc;
    for (const auto& n : p) {
      Morphism m;
      if (auto fc = cat.as_free()) {
        if (n.text.rfind("id_", 0) == 0 && fc->has_object(n.text.substr(3))) {
          m = fc->identity(n.text.substr(3));
        } else if (fc->generator_index(n.text)) {
          m = fc->generator_morphism(n.text);
        } else {
          error(n.span, "unresolved-name", "unknown morphism '" + n.text + "'");
          return std::nullopt;
        }
      } else {
        const auto& ec = cat.explicit_category();
        auto id = ec.find(n.text);
        if (!id) {
          error(n.span, "unresolved-name", "unknown morphism '" + n.text + "'");
          return std::nullopt;
        }
        m = ec.as_morphism(*id);
      }
      if (!acc) {
        acc = m;
        continue;
      }
      if (acc->cod != m.dom) {
        error(n.span, "not-composable", "path breaks before '" + n.text + "'");
        return std::nullopt;
      }
      acc = cat.compose(*acc, m);
    }
    return acc;
  }

  const SketchDocument& doc_;
  std::vector<Diagnostic> diags_;
  std::vector<std::string> object_names_;
  std::set<std::string> object_set_;
  std::set<std::string> morph_names_;
  std::map<std::string, std::string> identity_of_;
  std::map<std::string, const GenDecl*> gen_index_;
  bool has_tuples_ = false;
};

NameRef ref(std::string s) { return NameRef{std::move(s), {}}; }

}  // namespace

BuildResult build_sketch(const SketchDocument& doc) { return Builder(doc).run(); }

BuildResult parse_sketch(const std::string& text) {
  auto p = parse_document(text);
  if (!p.ok()) {
    BuildResult r;
    r.diagnostics = std::move(p.diagnostics);
    return r;
  }
  return build_sketch(p.document);
}

SketchDocument document_of(const Sketch& s, const std::vector<std::string>& distinguished) {
  SketchDocument doc;
  doc.name = ref(s.name);
  CategoryView cat = s.cat;
  if (auto sc = s.cat.as_sigma()) cat = std::make_shared<const ExplicitCategory>(sc->materialize());
  std::map<std::string, std::vector<SortTuple>> tuples;
  if (s.sorting) {
    for (const auto& x : s.sorting->sorts) doc.sorts.push_back(ref(x));
    for (const auto& [t, o] : s.sorting->object_index) tuples[o].push_back(t);
  }
  for (const auto& o : cat.objects()) {
    ObjectDecl d{ref(o), {}};
    for (const auto& t : tuples[o]) {
      std::vector<NameRef> v;
      for (const auto& x : t) v.push_back(ref(x));
      d.tuples.push_back(std::move(v));
    }
    doc.objects.push_back(std::move(d));
  }
  auto leg_path = [&](const Morphism& m) {
    std::vector<NameRef> p;
    if (s.cat.as_sigma()) {
      p.push_back(ref(SigmaCategory::morphism_name(m)));
    } else if (cat.as_free()) {
      for (const auto& l : m.word) p.push_back(ref(l));
      if (p.empty()) p.push_back(ref("id_" + m.dom));
    } else {
      const auto& ec = cat.explicit_category();
      p.push_back(ref(ec.name(ec.resolve(m))));
    }
    return p;
  };
  if (auto fc = cat.as_free()) {
    doc.free = true;
    for (const auto& g : fc->generators()) doc.gens.push_back(GenDecl{ref(g.name), ref(g.dom), ref(g.cod)});
  } else {
    const auto& ec = cat.explicit_category();
    using MorphId = ExplicitCategory::MorphId;
    for (std::size_t o = 0; o < ec.object_count(); ++o) {
      const auto& n = ec.name(ec.identity(o));
      if (n != "id_" + ec.object_name(o)) doc.ids.push_back(IdDecl{ref(ec.object_name(o)), ref(n)});
    }
    for (MorphId f = 0; f < ec.morphism_count(); ++f)
      if (!ec.is_identity(f))
        doc.gens.push_back(GenDecl{ref(ec.name(f)), ref(ec.object_name(ec.dom(f))), ref(ec.object_name(ec.cod(f)))});
    for (MorphId f = 0; f < ec.morphism_count(); ++f) {
      if (ec.is_identity(f)) continue;
      for (MorphId g : ec.out(ec.cod(f)))
        if (!ec.is_identity(g))
          doc.composes.push_back(ComposeDecl{{ref(ec.name(f)), ref(ec.name(g))}, ref(ec.name(ec.compose(f, g)))});
    }
  }
  for (const auto& c : s.cones) {
    ConeDecl d{ref(c.name), ref(c.apex), {}};
    for (const auto& l : c.legs) d.legs.push_back(LegDecl{ref(l.object), leg_path(l.projection)});
    doc.cones.push_back(std::move(d));
  }
  for (const auto& d : distinguished) doc.distinguished.push_back(ref(d));
  return doc;
}

std::string print_sketch(const Sketch& s, const std::vector<std::string>& distinguished) {
  return print_document(document_of(s, distinguished));
}

}  // namespace sketchforge
