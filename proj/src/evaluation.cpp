#include "sketchforge/evaluation.hpp"

#include "sketchforge/error.hpp"

namespace sketchforge {

TreeEvaluator::TreeEvaluator(FreeSemiTheory c, FinSetAlgebra a) : c_(std::move(c)), a_(std::move(a)) {
  const auto& cat = c_.sketch().cat;
  if (auto v = functoriality_violation(cat, a_)) throw NotStrict("not functorial: " + *v);
  StrictnessWitness w;
  try {
    w = is_strict_algebra(c_.sketch(), a_);
  } catch (const NotFunctorial& e) {
    throw NotStrict(e.what());
  }
  for (const auto& cc : w.cones)
    if (!cc.bijective) throw NotStrict("comparison of cone " + cc.cone + " is not bijective");

  for (const auto& t : c_.tuples()) {
    const std::size_t n = a_.size(c_.object_of(t));
    std::vector<Table> legs;
    for (std::size_t k = 1; k <= t.size(); ++k) legs.push_back(action_of(cat, a_, c_.projection(t, k)));
    auto& dec = decode_[t];
    auto& enc = encode_[t];
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> coords;
      for (const auto& l : legs) coords.push_back(l[x]);
      enc[coords] = x;
      dec.push_back(std::move(coords));
    }
  }
}

const std::string& TreeEvaluator::carrier_object(const SortTuple& t) const { return c_.object_of(t); }

const std::vector<std::size_t>& TreeEvaluator::decode(const SortTuple& tuple, std::size_t x) const {
  auto it = decode_.find(tuple);
  if (it == decode_.end()) throw SortMismatch("tuple " + to_string(tuple) + " is not indexed");
  return it->second.at(x);
}

std::size_t TreeEvaluator::encode(const SortTuple& tuple, const std::vector<std::size_t>& coords) const {
  auto it = encode_.find(tuple);
  if (it == encode_.end()) throw SortMismatch("tuple " + to_string(tuple) + " is not indexed");
  return it->second.at(coords);
}

std::size_t TreeEvaluator::apply_edge(const TreeEdge& e, const std::vector<std::size_t>& xs) const {
  if (e.label.is_projection()) return xs.at(e.label.projection().k - 1);
  const std::string& g = e.label.op();
  std::vector<std::size_t> args;
  args.reserve(e.inputs.size());
  for (const auto& in : e.inputs) args.push_back(apply_edge(in, xs));
  const std::size_t y = encode(c_.domain(g), args);
  const std::size_t z = a_.actions.at(g).at(y);
  return decode(c_.codomain(g), z).at(e.label.coordinate - 1);
}

std::size_t TreeEvaluator::apply(const Tree& t, const std::vector<std::size_t>& xs) const {
  return apply_edge(t.lowest(), xs);
}

Table TreeEvaluator::evaluate(const Trees& t) const {
  auto r = tuple_validate(t, c_);
  if (!r.verdict()) throw BadParam("invalid tree tuple: " + r.violations.front().rule + " " + r.violations.front().witness);
  const std::size_t n = a_.size(carrier_object(t.domain));
  Table out(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& xs = decode(t.domain, x);
    std::vector<std::size_t> ys;
    for (const auto& tree : t.trees) ys.push_back(apply(tree, xs));
    out[x] = encode(t.codomain, ys);
  }
  return out;
}

Table evaluate_tree(const FreeSemiTheory& c, const FinSetAlgebra& a, const Trees& t) {
  return TreeEvaluator(c, a).evaluate(t);
}

CheckReport extend_restrict_roundtrip(const FreeSemiTheory& c, const FinSetAlgebra& a, const RoundtripOptions& options) {
  const TreeEvaluator ev(c, a);
  CheckReport r;
  const auto& cat = c.sketch().cat;

  for (const auto& d : c.tuples())
    for (const auto& e : c.tuples())
      for (const auto& w : cat.hom(c.object_of(d), c.object_of(e), options.word_length))
        if (ev.evaluate(theta(c, w)) != action_of(cat, a, w)) r.add("theta-mismatch", to_string(w));

  // trees[d][s]: all trees from d to s within the bound
  std::map<SortTuple, std::map<std::string, std::vector<Tree>>> trees;
  std::map<SortTuple, std::map<std::string, std::vector<Table>>> values;
  for (const auto& d : c.tuples())
    for (const auto& s : c.sorted().sorts) {
      auto& ts = trees[d][s];
      ts = enumerate_trees(c, d, s, options.tree_bound);
      for (const auto& t : ts) {
        try {
          values[d][s].push_back(ev.evaluate(t));
        } catch (const Error& err) {
          r.add("invalid-tree", err.what());
          values[d][s].push_back({});
        }
      }
    }

  // grafting: evaluate(W after T) = evaluate(T) then evaluate(W)
  std::size_t checks = 0;
  for (const auto& e : c.tuples()) {
    if (e.empty()) continue;
    for (const auto& d : c.tuples())
      for (const auto& s : c.sorted().sorts) {
        const auto& ws = trees[e][s];
        for (std::size_t wi = 0; wi < ws.size() && checks < options.graft_limit; ++wi) {
          // tuples T: d -> e with one tree per coordinate, grafted size within the bound
          const std::size_t wn = ws[wi].node_count();
          if (wn + 2 * e.size() > options.tree_bound + e.size()) continue;
          const std::size_t each = options.tree_bound + e.size() - wn - 2 * (e.size() - 1);
          std::vector<std::size_t> limit;
          for (const auto& sort : e) {
            const auto& pool = trees[d][sort];
            std::size_t n = 0;
            while (n < pool.size() && pool[n].node_count() <= each) ++n;
            limit.push_back(n);
          }
          std::vector<std::size_t> pick(e.size(), 0);
          bool empty = false;
          for (auto n : limit) empty = empty || n == 0;
          while (!empty && checks < options.graft_limit) {
            Trees below{d, e, {}};
            std::size_t nodes = wn;
            for (std::size_t k = 0; k < e.size(); ++k) {
              below.trees.push_back(trees[d][e[k]][pick[k]]);
              nodes += below.trees.back().node_count();
            }
            if (nodes <= options.tree_bound + e.size()) {
              ++checks;
              const Table composite = ev.evaluate(graft_compose(single(ws[wi]), below));
              const Table first = ev.evaluate(below);
              const Table& second = values[e][s][wi];
              for (std::size_t x = 0; x < composite.size(); ++x)
                if (composite[x] != second.at(first[x])) {
                  r.add("graft-mismatch", "tree " + std::to_string(wi) + " over " + to_string(e) + " from " + to_string(d));
                  break;
                }
            }
            std::size_t k = 0;
            while (k < e.size() && ++pick[k] == limit[k]) pick[k++] = 0;
            if (k == e.size()) break;
          }
        }
      }
  }
  return r;
}

}  // namespace sketchforge
