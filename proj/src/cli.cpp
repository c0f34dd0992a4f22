#include "sketchforge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "sketchforge/builtins.hpp"
#include "sketchforge/dsl.hpp"
#include "sketchforge/error.hpp"
#include "sketchforge/evaluation.hpp"
#include "sketchforge/resolution.hpp"
#include "sketchforge/serialize.hpp"
#include "sketchforge/transforms.hpp"

namespace sketchforge {

namespace {

struct Usage {
  std::string message;
};

struct Options {
  std::string format = "text";
  unsigned seed = 1;
  std::string builtin;
  std::size_t trunc = 3;
  std::size_t m = 1;
  std::string sketch_file;
  std::string file;
};

struct Loaded {
  Sketch sketch;
  std::vector<std::string> distinguished;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage{"cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
  const auto i = text.find_first_not_of(" \t\r\n");
  return i != std::string::npos && text[i] == '{';
}

Loaded load_sketch(const Options& o, const std::string& file, std::ostream& err) {
  if (!o.builtin.empty() && !file.empty()) throw Usage{"give either --builtin or a sketch file, not both"};
  if (!o.builtin.empty()) return Loaded{builtin(o.builtin, BuiltinParams{o.trunc, o.m}), {}};
  if (file.empty()) throw Usage{"no sketch given (use --builtin NAME or a file)"};
  const std::string text = read_file(file);
  BuildResult r;
  if (looks_like_json(file, text)) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Usage{file + ": " + e.what()};
    }
    r = build_sketch(document_from_json(j));
  } else {
    r = parse_sketch(text);
  }
  for (const auto& d : r.diagnostics) err << format_diagnostic(d, file) << "\n";
  if (!r.sketch) throw Usage{file + ": " + std::to_string(r.diagnostics.size()) + " error(s)"};
  return Loaded{*r.sketch, r.distinguished};
}

FreeSemiTheory load_theory(const Options& o, const std::string& file, std::ostream& err) {
  if (!o.builtin.empty()) {
    if (!file.empty()) throw Usage{"give either --builtin or a sketch file, not both"};
    BuiltinParams p{std::max<std::size_t>(o.trunc, 2), o.m};
    return builtin_signature(o.builtin, p).theory;
  }
  return FreeSemiTheory(load_sketch(o, file, err).sketch);
}

SortTuple parse_tuple(std::string s) {
  SortTuple t;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == ')' || c == ',' || c == ' ') {
      if (!cur.empty()) t.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) t.push_back(cur);
  return t;
}

Json report_json(const CheckReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"rule", x.rule}, {"witness", x.witness}});
  return {{"verdict", r.verdict()}, {"violations", v}};
}

int emit_report(const Options& o, const CheckReport& r, std::ostream& out) {
  if (o.format == "json") {
    out << report_json(r).dump(2) << "\n";
  } else {
    out << (r.verdict() ? "true" : "false") << "\n";
    for (const auto& v : r.violations) out << "  " << v.rule << ": " << v.witness << "\n";
  }
  return r.verdict() ? 0 : 1;
}

std::string bracketed(const std::string& name, std::size_t level) {
  return std::string(level + 1, '[') + name + std::string(level + 1, ']');
}

/// Level-k generators coming from single morphisms of C, each nested in
/// singleton brackets, with the cones read through them.
Sketch resolution_fragment(const Sketch& s, std::size_t level) {
  CategoryView c = s.cat;
  if (auto sc = c.as_sigma()) c = std::make_shared<const ExplicitCategory>(sc->materialize());
  const auto& ec = c.explicit_category();
  std::vector<GeneratorId> gens;
  for (ExplicitCategory::MorphId f = 0; f < ec.morphism_count(); ++f)
    gens.push_back({bracketed(ec.name(f), level), ec.object_name(ec.dom(f)), ec.object_name(ec.cod(f))});
  auto cat = std::make_shared<const FreeCategory>(free_category(ec.objects(), gens));
  Sketch out{s.name + "^F" + std::to_string(level), cat, {}, s.sorting};
  for (const auto& cone : s.cones) {
    Cone d{cone.name, cone.apex, {}};
    for (const auto& l : cone.legs) {
      const auto name = ec.name(ec.resolve(c.normalize(l.projection)));
      d.legs.push_back(ConeLeg{l.object, cat->generator_morphism(bracketed(name, level))});
    }
    out.cones.push_back(std::move(d));
  }
  return out;
}

std::pair<std::size_t, std::size_t> sample_simplicial(const Sketch& s, std::size_t level, unsigned seed) {
  CategoryView c = s.cat;
  if (auto sc = c.as_sigma()) c = std::make_shared<const ExplicitCategory>(sc->materialize());
  std::mt19937 rng(seed);
  std::size_t bad = 0, n = 200;
  for (std::size_t i = 0; i < n; ++i)
    if (simplicial_identity_violation(c, random_resolution_word(c, level, 3, rng))) ++bad;
  return {n, bad};
}

void emit_sketch(const Options& o, const Sketch& s, const std::vector<std::string>& distinguished, std::ostream& out,
                 const std::string& note = "", const Json& extra = Json()) {
  if (o.format == "json") {
    Json j = sketch_to_json(s, distinguished);
    if (!extra.is_null()) j["check"] = extra;
    out << j.dump(2) << "\n";
  } else {
    if (!note.empty()) out << "# " << note << "\n";
    out << print_sketch(s, distinguished);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite product sketches, semi-theories and their strict algebras", "sketchforge"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_option("--builtin", o.builtin, "Built-in sketch: binary, gamma, delta-loop, prezma");
  app.add_option("--trunc", o.trunc, "Truncation of the built-in");
  app.add_option("--loop", o.m, "Loop degree of delta-loop");

  auto* validate = app.add_subcommand("validate", "Check cone legs against the category");
  auto* is_theory = app.add_subcommand("is-theory", "Decide the algebraic-theory clauses");
  auto* is_semi = app.add_subcommand("is-semitheory", "Decide the semi-theory clauses");
  for (auto* sc : {validate, is_theory, is_semi}) sc->add_option("file", o.file, "Sketch file (DSL or JSON)");

  auto* complete = app.add_subcommand("complete", "List trees of the completion of a free semi-theory");
  std::string domain, cod;
  std::size_t max_nodes = 5;
  complete->add_option("file", o.file, "Sketch file");
  complete->add_option("--domain", domain, "Domain tuple, e.g. (s,s)")->required();
  complete->add_option("--cod", cod, "Codomain sort")->required();
  complete->add_option("--max-nodes", max_nodes, "Largest tree, in vertices");

  auto* transform = app.add_subcommand("transform", "Apply the mu, sigma or resolution constructions");
  bool mu = false;
  std::size_t sigma = 0, resolve = 0;
  std::vector<std::size_t> pipe;
  transform->add_option("file", o.file, "Sketch file");
  auto* mu_opt = transform->add_flag("--mu", mu, "B x K x J with lifted cones");
  auto* sigma_opt = transform->add_option("--sigma", sigma, "Add missing tuples up to length L");
  auto* resolve_opt = transform->add_option("--resolve", resolve, "Level-K resolution generators");
  auto* pipe_opt = transform->add_option("--pipeline", pipe, "mu, then sigma L, then resolve K")->expected(2);
  mu_opt->excludes(sigma_opt, resolve_opt, pipe_opt);
  sigma_opt->excludes(resolve_opt, pipe_opt);
  resolve_opt->excludes(pipe_opt);

  auto* enumerate = app.add_subcommand("enumerate-algebras", "Count strict algebras with fixed carriers");
  std::vector<std::string> carriers;
  bool list = false;
  enumerate->add_option("file", o.file, "Sketch file");
  enumerate->add_option("--carrier", carriers, "OBJ=N, repeatable");
  enumerate->add_flag("--list", list, "Print every algebra");

  auto* check = app.add_subcommand("check-algebra", "Decide strictness of an algebra (JSON)");
  check->add_option("file", o.file, "Algebra JSON file")->required();
  check->add_option("--sketch", o.sketch_file, "Sketch file");

  auto* eval = app.add_subcommand("eval-tree", "Evaluate a tree tuple in a strict algebra");
  std::string algebra_file;
  eval->add_option("file", o.file, "Tree file (text or JSON)")->required();
  eval->add_option("--algebra", algebra_file, "Algebra JSON file")->required();
  eval->add_option("--sketch", o.sketch_file, "Free semi-theory file");

  std::vector<std::string> argv_store{"sketchforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    if (validate->parsed()) {
      const auto l = load_sketch(o, o.file, err);
      CheckReport r = validate_sketch(l.sketch);
      if (auto ec = l.sketch.cat.as_explicit())
        for (const auto& v : check_category_laws(*ec)) {
          std::string w;
          for (const auto& x : v.witness) w += (w.empty() ? "" : " ") + x;
          r.add(v.rule, w);
        }
      return emit_report(o, r, out);
    }
    if (is_theory->parsed() || is_semi->parsed()) {
      const auto l = load_sketch(o, o.file, err);
      CheckReport r;
      if (!l.sketch.sorting) r.add("no-sorting", "the sketch declares no sort indexing");
      else if (is_theory->parsed()) r = is_algebraic_theory(l.sketch, *l.sketch.sorting);
      else r = is_semi_theory(l.sketch, *l.sketch.sorting);
      return emit_report(o, r, out);
    }
    if (complete->parsed()) {
      const FreeSemiTheory c = load_theory(o, o.file, err);
      const SortTuple dom = parse_tuple(domain);
      const auto trees = enumerate_trees(c, dom, cod, max_nodes);
      Json arr = Json::array();
      for (const auto& t : trees) {
        const bool image = is_theta_image(c, single(t));
        const std::size_t degree = filtration_degree(c, single(t));
        if (o.format == "json")
          arr.push_back({{"text", tree_to_text(t)}, {"tree", tree_to_json(t)}, {"theta_image", image}, {"degree", degree}});
        else
          out << tree_to_text(t) << "  # " << (image ? "word" : "tupled") << ", degree " << degree << "\n";
      }
      if (o.format == "json")
        out << Json{{"domain", dom}, {"codomain", cod}, {"max_nodes", max_nodes}, {"trees", arr}}.dump(2) << "\n";
      else
        out << "# " << trees.size() << " trees\n";
      return 0;
    }
    if (transform->parsed()) {
      const auto l = load_sketch(o, o.file, err);
      if (mu) {
        const auto m = mu_transform(l.sketch);
        emit_sketch(o, m.sketch, m.distinguished, out, m.trivial ? "no cones: returned unchanged" : "");
        return 0;
      }
      auto sigma_of = [&](const Sketch& s, std::size_t len) -> std::optional<SigmaTheory> {
        if (s.sorting) return sigma_transform(s, *s.sorting, len);
        auto ms = is_multisorted_fps(s);
        if (!ms.verdict) {
          emit_report(o, ms.report, out);
          return std::nullopt;
        }
        return sigma_transform(s, ms.inferred, len);
      };
      if (*sigma_opt) {
        auto st = sigma_of(l.sketch, sigma);
        if (!st) return 1;
        emit_sketch(o, st->sketch, {}, out);
        return 0;
      }
      Sketch base = l.sketch;
      std::size_t level = resolve;
      if (*pipe_opt) {
        const auto p = pipeline(l.sketch, pipe.at(0));
        base = p.sigma.sketch;
        level = pipe.at(1);
      } else if (!*resolve_opt) {
        throw Usage{"transform needs one of --mu, --sigma, --resolve, --pipeline"};
      }
      const auto [n, bad] = sample_simplicial(base, level, o.seed);
      const std::string note = "level " + std::to_string(level) + ": " + std::to_string(n) +
                               " sampled words, " + std::to_string(bad) + " simplicial identity failures";
      emit_sketch(o, resolution_fragment(base, level), {}, out, note,
                  Json{{"level", level}, {"sampled", n}, {"failures", bad}, {"seed", o.seed}});
      return bad == 0 ? 0 : 1;
    }
    if (enumerate->parsed()) {
      const auto l = load_sketch(o, o.file, err);
      std::map<std::string, std::size_t> given;
      for (const auto& c : carriers) {
        const auto eq = c.find('=');
        if (eq == std::string::npos) throw Usage{"--carrier expects OBJ=N, got " + c};
        try {
          given[c.substr(0, eq)] = std::stoul(c.substr(eq + 1));
        } catch (const std::exception&) {
          throw Usage{"--carrier expects OBJ=N, got " + c};
        }
      }
      const auto algebras = enumerate_strict_algebras(l.sketch, given);
      if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& a : algebras) arr.push_back(algebra_to_json(a));
        out << Json{{"count", algebras.size()}, {"algebras", arr}}.dump(2) << "\n";
      } else {
        out << "count " << algebras.size() << "\n";
        if (list)
          for (const auto& a : algebras) out << algebra_to_json(a).dump() << "\n";
      }
      return 0;
    }
    if (check->parsed()) {
      const auto l = load_sketch(o, o.sketch_file, err);
      FinSetAlgebra a;
      try {
        a = algebra_from_json(Json::parse(read_file(o.file)));
      } catch (const nlohmann::json::exception& e) {
        throw Usage{o.file + ": " + e.what()};
      }
      Json j{{"functorial", true}, {"strict", false}, {"cones", Json::array()}};
      if (auto v = functoriality_violation(l.sketch.cat, a)) {
        j["functorial"] = false;
        j["witness"] = *v;
      } else {
        const auto w = is_strict_algebra(l.sketch, a);
        j["strict"] = w.verdict;
        for (const auto& c : w.cones) j["cones"].push_back({{"name", c.cone}, {"bijective", c.bijective}});
      }
      if (o.format == "json") {
        out << j.dump(2) << "\n";
      } else {
        if (!j["functorial"].get<bool>()) out << "not functorial: " << j["witness"].get<std::string>() << "\n";
        for (const auto& c : j["cones"])
          out << "cone " << c["name"].get<std::string>() << ": " << (c["bijective"].get<bool>() ? "bijective" : "not bijective") << "\n";
        out << (j["strict"].get<bool>() ? "strict" : "not strict") << "\n";
      }
      return j["strict"].get<bool>() ? 0 : 1;
    }
    if (eval->parsed()) {
      const FreeSemiTheory c = load_theory(o, o.sketch_file, err);
      const std::string text = read_file(o.file);
      Trees t;
      try {
        t = looks_like_json(o.file, text) ? trees_from_json(Json::parse(text)) : trees_from_text(text);
      } catch (const nlohmann::json::exception& e) {
        throw Usage{o.file + ": " + e.what()};
      }
      FinSetAlgebra a;
      try {
        a = algebra_from_json(Json::parse(read_file(algebra_file)));
      } catch (const nlohmann::json::exception& e) {
        throw Usage{algebra_file + ": " + e.what()};
      }
      std::optional<TreeEvaluator> ev;
      try {
        ev.emplace(c, a);
      } catch (const NotStrict& e) {
        err << e.what() << "\n";
        return 1;
      }
      const Table table = ev->evaluate(t);
      const auto& from = a.carriers.at(c.object_of(t.domain));
      const auto& to = a.carriers.at(c.object_of(t.codomain));
      if (o.format == "json") {
        out << Json{{"domain", t.domain}, {"codomain", t.codomain}, {"table", table}}.dump(2) << "\n";
      } else {
        for (std::size_t x = 0; x < table.size(); ++x) out << from.at(x) << " -> " << to.at(table[x]) << "\n";
      }
      return 0;
    }
  } catch (const Usage& u) {
    err << u.message << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace sketchforge
