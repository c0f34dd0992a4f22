#include "sketchforge/completion.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "sketchforge/error.hpp"

namespace sketchforge {

FreeSemiTheory::FreeSemiTheory(Sketch sketch) : sketch_(std::move(sketch)) {
  const FreeCategory* fc = sketch_.cat.as_free();
  if (!fc) throw NotSemiTheory("category is not free");
  if (!sketch_.sorting) throw NotSemiTheory("no sort indexing");
  const auto& sorted = *sketch_.sorting;
  auto report = is_semi_theory(sketch_, sorted);
  if (!report.verdict()) throw NotSemiTheory(report.violations.front().rule + ": " + report.violations.front().witness);
  for (const auto& [t, obj] : sorted.object_index) tuples_.push_back(t);
  std::sort(tuples_.begin(), tuples_.end(), [](const SortTuple& a, const SortTuple& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::map<std::string, std::pair<SortTuple, std::size_t>> proj;
  for (const auto& c : sketch_.cones) {
    const SortTuple t = *sorted.tuple_of(c.apex);
    for (std::size_t k = 0; k < c.legs.size(); ++k) {
      const auto& w = c.legs[k].projection.word;
      if (t.size() == 1 && w.empty()) continue;
      if (w.size() != 1) throw NotSemiTheory("projection of cone '" + c.name + "' is not a generator");
      if (!proj.emplace(w[0], std::make_pair(t, k + 1)).second)
        throw NotSemiTheory("generator " + w[0] + " is a projection of two cones");
    }
  }
  for (const auto& g : fc->generators()) {
    auto dt = sorted.tuple_of(g.dom);
    auto ct = sorted.tuple_of(g.cod);
    if (!dt || !ct) throw NotSemiTheory("generator " + g.name + " joins unindexed objects");
    Info info{*dt, *ct, std::nullopt};
    if (auto it = proj.find(g.name); it != proj.end()) info.projection = it->second.second;
    else operations_.push_back(g.name);
    info_.emplace(g.name, std::move(info));
  }
}

std::string FreeSemiTheory::default_object_name(const SortTuple& tuple) {
  std::string out = "c[";
  for (std::size_t i = 0; i < tuple.size(); ++i) out += (i ? "|" : "") + tuple[i];
  return out + "]";
}

std::string FreeSemiTheory::default_projection_name(const SortTuple& tuple, std::size_t k) {
  return "p" + std::to_string(k) + default_object_name(tuple).substr(1);
}

FreeSemiTheory FreeSemiTheory::make(const std::string& name, const std::vector<std::string>& sorts,
                                    const std::vector<SortTuple>& tuples, const std::vector<Operation>& operations) {
  SortedStructure sorted;
  sorted.sorts = sorts;
  std::vector<std::string> objects;
  std::vector<GeneratorId> gens;
  std::set<SortTuple> all(tuples.begin(), tuples.end());
  for (const auto& s : sorts) all.insert({s});
  std::vector<SortTuple> ordered(all.begin(), all.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const SortTuple& a, const SortTuple& b) { return a.size() < b.size(); });
  for (const auto& t : ordered) {
    objects.push_back(default_object_name(t));
    sorted.object_index[t] = objects.back();
  }
  std::vector<Cone> cones;
  for (const auto& t : ordered) {
    if (t.size() == 1) continue;
    Cone c{"cone" + default_object_name(t).substr(1), default_object_name(t), {}};
    for (std::size_t k = 1; k <= t.size(); ++k) {
      const std::string pn = default_projection_name(t, k);
      gens.push_back({pn, default_object_name(t), default_object_name({t[k - 1]})});
      c.legs.push_back(ConeLeg{default_object_name({t[k - 1]}), Morphism{c.apex, default_object_name({t[k - 1]}), {pn}}});
    }
    cones.push_back(std::move(c));
  }
  for (const auto& op : operations) {
    if (!all.count(op.domain) || !all.count(op.codomain)) throw SortMismatch("operation " + op.name + " uses an unindexed tuple");
    gens.push_back({op.name, default_object_name(op.domain), default_object_name(op.codomain)});
  }
  Sketch s;
  s.name = name;
  s.cat = std::make_shared<const FreeCategory>(free_category(objects, gens));
  s.cones = std::move(cones);
  s.sorting = sorted;
  return FreeSemiTheory(std::move(s));
}

SortTuple FreeSemiTheory::domain(const std::string& g) const {
  auto it = info_.find(g);
  if (it == info_.end()) throw UnknownMorphism(g);
  return it->second.domain;
}

SortTuple FreeSemiTheory::codomain(const std::string& g) const {
  auto it = info_.find(g);
  if (it == info_.end()) throw UnknownMorphism(g);
  return it->second.codomain;
}

bool FreeSemiTheory::is_projection(const std::string& g) const { return projection_index(g).has_value(); }

std::optional<std::size_t> FreeSemiTheory::projection_index(const std::string& g) const {
  auto it = info_.find(g);
  if (it == info_.end()) return std::nullopt;
  return it->second.projection;
}

const std::string& FreeSemiTheory::object_of(const SortTuple& t) const {
  auto it = sorted().object_index.find(t);
  if (it == sorted().object_index.end()) throw SortMismatch("tuple " + to_string(t) + " is not indexed");
  return it->second;
}

SortTuple FreeSemiTheory::tuple_of(const std::string& object) const {
  auto t = sorted().tuple_of(object);
  if (!t) throw SortMismatch("object " + object + " is not indexed");
  return *t;
}

Morphism FreeSemiTheory::projection(const SortTuple& t, std::size_t k) const {
  if (k < 1 || k > t.size()) throw IndexOutOfRange("projection " + std::to_string(k) + " of " + to_string(t));
  if (t.size() == 1) return category().identity(object_of(t));
  for (const auto& [name, info] : info_)
    if (info.projection == k && info.domain == t) return category().generator_morphism(name);
  throw SortMismatch("no projection " + std::to_string(k) + " of " + to_string(t));
}

bool FreeSemiTheory::reachable(const SortTuple& from, const SortTuple& to) const {
  std::set<SortTuple> seen{from};
  std::deque<SortTuple> queue{from};
  while (!queue.empty()) {
    SortTuple t = queue.front();
    queue.pop_front();
    if (t == to) return true;
    for (const auto& [name, info] : info_)
      if (info.domain == t && seen.insert(info.codomain).second) queue.push_back(info.codomain);
  }
  return false;
}

// ---------------------------------------------------------------------------

Trees single(const Tree& t) { return Trees{t.domain, {t.codomain_sort}, {t}}; }

Trees theta_generator(const FreeSemiTheory& c, const std::string& g) {
  const SortTuple dom = c.domain(g);
  const SortTuple cod = c.codomain(g);
  if (auto k = c.projection_index(g)) return Trees{dom, cod, {projection_tree<std::string>(dom, *k)}};
  Trees out{dom, cod, {}};
  for (std::size_t j = 1; j <= cod.size(); ++j) {
    TreeEdge e{EdgeLabel<std::string>{g, j}, {}};
    for (std::size_t i = 1; i <= dom.size(); ++i) e.inputs.push_back(projection_edge<std::string>(dom, i));
    out.trees.push_back(Tree{dom, cod[j - 1], {std::move(e)}});
  }
  return out;
}

Trees theta(const FreeSemiTheory& c, const Morphism& word) {
  c.category().check_word(word);
  Trees acc = identity_tuple<std::string>(c.tuple_of(word.dom));
  for (const auto& g : word.word) acc = graft_compose(theta_generator(c, g), acc);
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

class TreeEnumerator {
 public:
  TreeEnumerator(const FreeSemiTheory& c, SortTuple domain) : c_(c), domain_(std::move(domain)) {}

  // edges producing `sort` with exactly `size` edges
  const std::vector<TreeEdge>& edges(const std::string& sort, std::size_t size) {
    auto key = std::make_pair(sort, size);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TreeEdge> out;
    if (size == 1)
      for (std::size_t k = 1; k <= domain_.size(); ++k)
        if (domain_[k - 1] == sort) out.push_back(projection_edge<std::string>(domain_, k));
    for (const auto& g : c_.operations()) {
      const SortTuple cod = c_.codomain(g);
      const SortTuple dom = c_.domain(g);
      for (std::size_t j = 1; j <= cod.size(); ++j) {
        if (cod[j - 1] != sort) continue;
        if (dom.empty()) {
          if (size == 1) out.push_back(TreeEdge{EdgeLabel<std::string>{g, j}, {}});
          continue;
        }
        if (size < 1 + dom.size()) continue;
        std::vector<TreeEdge> inputs;
        fill(dom, 0, size - 1, inputs, [&](const std::vector<TreeEdge>& in) {
          out.push_back(TreeEdge{EdgeLabel<std::string>{g, j}, in});
        });
      }
    }
    return memo_[key] = std::move(out);
  }

 private:
  template <class F>
  void fill(const SortTuple& dom, std::size_t i, std::size_t budget, std::vector<TreeEdge>& acc, const F& emit) {
    if (i == dom.size()) {
      if (budget == 0) emit(acc);
      return;
    }
    const std::size_t rest = dom.size() - i - 1;
    for (std::size_t s = 1; s + rest <= budget; ++s) {
      const auto& choices = edges(dom[i], s);
      for (std::size_t n = 0; n < choices.size(); ++n) {
        acc.push_back(edges(dom[i], s)[n]);
        fill(dom, i + 1, budget - s, acc, emit);
        acc.pop_back();
      }
    }
  }

  const FreeSemiTheory& c_;
  SortTuple domain_;
  std::map<std::pair<std::string, std::size_t>, std::vector<TreeEdge>> memo_;
};

}  // namespace

std::vector<Tree> enumerate_trees(const FreeSemiTheory& c, const SortTuple& domain, const std::string& codomain_sort,
                                  std::size_t max_nodes) {
  c.object_of(domain);
  TreeEnumerator en(c, domain);
  std::vector<Tree> out;
  for (std::size_t nodes = 2; nodes <= max_nodes; ++nodes)
    for (const auto& e : en.edges(codomain_sort, nodes - 1)) out.push_back(Tree{domain, codomain_sort, {e}});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// the tuple of input subtrees of an operation edge, as a morphism into the
// generator's domain
Trees inputs_tuple(const FreeSemiTheory& c, const SortTuple& domain, const TreeEdge& e) {
  const SortTuple dom = c.domain(e.label.op());
  Trees v{domain, dom, {}};
  for (std::size_t i = 0; i < e.inputs.size(); ++i) v.trees.push_back(Tree{domain, dom.at(i), {e.inputs[i]}});
  return v;
}

bool is_identity(const Trees& t) { return t.domain == t.codomain && t == identity_tuple<std::string>(t.domain); }

// common operation of all lowest edges, with coordinates 1..m and identical inputs
std::optional<std::string> shared_operation(const FreeSemiTheory& c, const Trees& t) {
  if (t.trees.empty()) return std::nullopt;
  const auto& first = t.trees[0].lowest();
  if (first.label.is_projection()) return std::nullopt;
  const std::string g = first.label.op();
  if (c.codomain(g) != t.codomain) return std::nullopt;
  for (std::size_t j = 0; j < t.trees.size(); ++j) {
    const auto& e = t.trees[j].lowest();
    if (e.label.is_projection() || e.label.op() != g || e.label.coordinate != j + 1 || e.inputs != first.inputs)
      return std::nullopt;
  }
  return g;
}

std::size_t degree(const FreeSemiTheory& c, const Trees& t);

std::size_t degree_of_tree(const FreeSemiTheory& c, const Tree& tree) {
  const auto& e = tree.lowest();
  if (e.label.is_projection()) return 0;
  return degree(c, inputs_tuple(c, tree.domain, e));
}

std::size_t degree(const FreeSemiTheory& c, const Trees& t) {
  if (t.codomain.size() == 1) return degree_of_tree(c, t.trees.at(0));
  if (t.codomain.empty()) return c.reachable(t.domain, t.codomain) ? 0 : 1;
  if (is_identity(t)) return 0;
  std::size_t best = 0;
  for (const auto& tree : t.trees) best = std::max(best, degree_of_tree(c, tree));
  best += 1;
  if (auto g = shared_operation(c, t)) best = std::min(best, degree(c, inputs_tuple(c, t.domain, t.trees[0].lowest())));
  return best;
}

}  // namespace

bool is_theta_image(const FreeSemiTheory& c, const Trees& t) {
  if (t.codomain.size() == 1) {
    const auto& e = t.trees.at(0).lowest();
    if (e.label.is_projection()) return true;
    return is_theta_image(c, inputs_tuple(c, t.domain, e));
  }
  if (t.codomain.empty()) return c.reachable(t.domain, t.codomain);
  if (is_identity(t)) return true;
  if (!shared_operation(c, t)) return false;
  return is_theta_image(c, inputs_tuple(c, t.domain, t.trees[0].lowest()));
}

std::size_t filtration_degree(const FreeSemiTheory& c, const Trees& t) {
  auto r = tuple_validate(t, c);
  if (!r.verdict()) throw NotComposable("invalid tree tuple: " + r.violations.front().rule + " " + r.violations.front().witness);
  return degree(c, t);
}

}  // namespace sketchforge
