// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sketchforge/algebra.hpp"
#include "sketchforge/builtins.hpp"
#include "sketchforge/completion.hpp"
#include "sketchforge/evaluation.hpp"
#include "sketchforge/resolution.hpp"
#include "sketchforge/serialize.hpp"
#include "sketchforge/transforms.hpp"

using namespace sketchforge;

namespace {

// wall-clock limits in seconds
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 10.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit9 = 60.0;

constexpr std::size_t kGraftTriples = 1000;
constexpr std::size_t kGraftMaxNodes = 12;
constexpr std::size_t kThetaWordLength = 4;
constexpr std::size_t kRoundtripTreeBound = 10;
constexpr std::size_t kCounitWords = 500;
constexpr std::size_t kSigmaTupleLength = 3;
constexpr std::size_t kRandomAlgebras = 30;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

template <class F>
void guarded(int n, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

std::string timing(double s, double limit) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << "s (limit " << limit << "s)";
  return o.str();
}

const std::map<std::string, std::size_t> kBinaryCarrier{{"b1", 2}};
const std::map<std::string, std::size_t> kGammaCarrier{{"[1]", 2}};
const std::map<std::string, std::size_t> kPrezmaCarrier{{"[1]*i1", 2}, {"[0]*i0", 2}};

std::vector<FinSetAlgebra> binary_algebras, gamma_algebras, prezma_algebras;

void criterion1() {
  const auto t = Clock::now();
  binary_algebras = enumerate_strict_algebras(builtin_binary(), kBinaryCarrier);
  const double s = seconds_since(t);
  const auto oracle = oracle::magma_count(2);
  report(1, binary_algebras.size() == oracle && s < kLimit1,
         "count " + std::to_string(binary_algebras.size()) + ", oracle " + std::to_string(oracle) + ", " +
             timing(s, kLimit1));
}

void criterion2() {
  const auto t = Clock::now();
  gamma_algebras = enumerate_strict_algebras(builtin_gamma(3), kGammaCarrier);
  const double s = seconds_since(t);
  const auto oracle = oracle::monoids(2, true).size();
  report(2, gamma_algebras.size() == oracle && s < kLimit2,
         "count " + std::to_string(gamma_algebras.size()) + ", oracle " + std::to_string(oracle) + ", " +
             timing(s, kLimit2));
}

void criterion3() {
  const auto t = Clock::now();
  prezma_algebras = enumerate_strict_algebras(builtin_prezma(2), kPrezmaCarrier);
  const double s = seconds_since(t);
  const auto oracle = oracle::monoid_actions(2, 2);
  report(3, prezma_algebras.size() == oracle.pairs && s < kLimit3,
         "count " + std::to_string(prezma_algebras.size()) + ", oracle (monoid, action) pairs " +
             std::to_string(oracle.pairs) + ", pairs with bijective translations " +
             std::to_string(oracle.bijective) + ", " + timing(s, kLimit3));
}

FreeSemiTheory rich_signature() {
  return FreeSemiTheory::make("rich", {"s", "t"}, {{}, {"s", "s"}, {"s", "t"}, {"t", "s"}},
                              {{"mu", {"s", "s"}, {"s"}},
                               {"e", {}, {"s"}},
                               {"sw", {"s", "t"}, {"t", "s"}},
                               {"dup", {"s"}, {"s", "s"}},
                               {"f", {"t"}, {"s"}}});
}

void criterion4() {
  const auto c = rich_signature();
  std::map<std::pair<SortTuple, std::string>, std::vector<Tree>> pool;
  auto trees_of = [&](const SortTuple& dom, const std::string& sort) -> const std::vector<Tree>& {
    auto key = std::make_pair(dom, sort);
    auto it = pool.find(key);
    if (it == pool.end()) it = pool.emplace(key, enumerate_trees(c, dom, sort, 5)).first;
    return it->second;
  };
  std::mt19937 rng(2024);
  auto random_trees = [&](const SortTuple& dom, const SortTuple& cod) -> std::optional<Trees> {
    Trees t{dom, cod, {}};
    for (const auto& s : cod) {
      const auto& p = trees_of(dom, s);
      if (p.empty()) return std::nullopt;
      t.trees.push_back(p[rng() % p.size()]);
    }
    return t;
  };
  const std::vector<SortTuple> tuples{{}, {"s"}, {"t"}, {"s", "s"}, {"s", "t"}, {"t", "s"}};
  std::size_t done = 0, law_failures = 0, closure_failures = 0;
  for (std::size_t attempts = 0; done < kGraftTriples && attempts < 200000; ++attempts) {
    const auto& a = tuples[rng() % tuples.size()];
    const auto& b = tuples[rng() % tuples.size()];
    const auto& d = tuples[rng() % tuples.size()];
    const auto& e = tuples[rng() % tuples.size()];
    const auto t = random_trees(a, b), w = random_trees(b, d), u = random_trees(d, e);
    if (!t || !w || !u) continue;
    if (t->node_count() > kGraftMaxNodes || w->node_count() > kGraftMaxNodes || u->node_count() > kGraftMaxNodes)
      continue;
    ++done;
    const auto inner = graft_compose(*w, *t);
    const auto left = graft_compose(*u, inner);
    const auto right = graft_compose(graft_compose(*u, *w), *t);
    law_failures += left != right;
    law_failures += graft_compose(*w, identity_tuple<std::string>(b)) != *w;
    law_failures += graft_compose(identity_tuple<std::string>(d), *w) != *w;
    closure_failures += !tuple_validate(inner, c).verdict();
    closure_failures += !tuple_validate(left, c).verdict();
  }

  const auto sig = builtin_signature("binary", {});
  const auto& bc = sig.theory;
  const auto& cat = bc.category();
  std::size_t words = 0, functor_failures = 0;
  std::set<std::string> images;
  for (const auto& a : cat.objects())
    for (const auto& b : cat.objects())
      for (const auto& w : cat.hom(a, b, kThetaWordLength)) {
        ++words;
        const auto t = theta(bc, w);
        images.insert(trees_to_text(t));
        closure_failures += !tuple_validate(t, bc).verdict();
        for (std::size_t cut = 0; cut <= w.word.size(); ++cut) {
          Morphism v{w.dom, "", {w.word.begin(), w.word.begin() + cut}};
          Morphism u{"", w.cod, {w.word.begin() + cut, w.word.end()}};
          v.cod = cut == 0 ? w.dom : cat.generator(v.word.back()).cod;
          u.dom = v.cod;
          functor_failures += graft_compose(theta(bc, u), theta(bc, v)) != t;
        }
      }
  const bool pass = done == kGraftTriples && law_failures == 0 && functor_failures == 0 && closure_failures == 0 &&
                    images.size() == words;
  report(4, pass,
         std::to_string(done) + " triples, " + std::to_string(law_failures) + " law failures; " +
             std::to_string(words) + " words, " + std::to_string(functor_failures) + " theta failures, " +
             std::to_string(images.size()) + " distinct images; " + std::to_string(closure_failures) +
             " closure failures");
}

void criterion5() {
  struct Case {
    std::string name;
    std::size_t trunc;
    const std::vector<FinSetAlgebra>* algebras;
  };
  const std::vector<Case> cases{{"binary", 1, &binary_algebras},
                                {"gamma", 3, &gamma_algebras},
                                {"prezma", 2, &prezma_algebras}};
  std::size_t checked = 0, failed = 0;
  std::string detail;
  for (const auto& c : cases) {
    BuiltinParams p;
    p.trunc = c.trunc;
    const auto sig = builtin_signature(c.name, p);
    for (const auto& a : *c.algebras) {
      ++checked;
      const auto x = restrict_along(sig.interpretation, a);
      const auto r = extend_restrict_roundtrip(sig.theory, x, {kRoundtripTreeBound, 3, 2000});
      if (!r.verdict()) {
        ++failed;
        if (detail.empty()) detail = "; first failure in " + c.name;
      }
    }
  }
  const std::size_t expected = binary_algebras.size() + gamma_algebras.size() + prezma_algebras.size();
  report(5, failed == 0 && checked == expected && checked > 0,
         std::to_string(checked) + " algebras, " + std::to_string(failed) + " failures, tree bound " +
             std::to_string(kRoundtripTreeBound) + detail);
}

void criterion6() {
  const CategoryView c(std::make_shared<const FreeCategory>(
      free_category({"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}, {"h", "a", "a"}})));
  std::size_t words = 0, violations = 0;
  for (std::size_t level = 0; level <= 2; ++level)
    for (const auto& w : enumerate_resolution_words(c, level, 3)) {
      ++words;
      violations += simplicial_identity_violation(c, w).has_value();
    }
  std::mt19937 rng(5);
  std::size_t pairs = 0, counit_failures = 0;
  for (std::size_t i = 0; i < kCounitWords; ++i) {
    const std::size_t level = rng() % 3;
    const auto a = random_resolution_word(c, level, 3, rng);
    auto b = random_resolution_word(c, level, 3, rng);
    for (int tries = 0; b.dom != a.cod && tries < 20; ++tries) b = random_resolution_word(c, level, 3, rng);
    if (b.dom == a.cod) {
      ++pairs;
      counit_failures += counit(c, resolution_compose(a, b)) != c.compose(counit(c, a), counit(c, b));
    }
    counit_failures += counit(c, resolution_identity(level, a.dom)) != c.identity(a.dom);
  }
  report(6, violations == 0 && counit_failures == 0 && words > 0,
         std::to_string(words) + " words at levels <= 2, " + std::to_string(violations) + " identity violations; " +
             std::to_string(kCounitWords) + " random words (" + std::to_string(pairs) + " composable pairs), " +
             std::to_string(counit_failures) + " counit failures");
}

void criterion7() {
  std::size_t homs = 0, mismatches = 0;
  bool multisorted = true;
  for (const auto& s : {builtin_binary(), builtin_prezma(1)}) {
    const auto m = pipeline(s, 2).mu;
    const auto& base = s.cat.explicit_category();
    const auto& big = m.sketch.cat.explicit_category();
    for (const auto& x : big.objects())
      for (const auto& y : big.objects()) {
        ++homs;
        const auto& ox = m.origin_of.at(x).object;
        const auto& oy = m.origin_of.at(y).object;
        mismatches += big.hom(big.object_index(x), big.object_index(y)).size() !=
                      base.hom(base.object_index(ox), base.object_index(oy)).size();
      }
    const auto found = is_multisorted_fps(m.sketch);
    multisorted = multisorted && found.verdict && found.distinguished == m.distinguished &&
                  check_multisorted(m.sketch, m.distinguished).verdict();
  }
  report(7, mismatches == 0 && multisorted,
         std::to_string(homs) + " hom sets, " + std::to_string(mismatches) + " mismatches; multi-sorted " +
             (multisorted ? "true" : "false"));
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

void criterion8() {
  const auto p = pipeline(builtin_binary(), kSigmaTupleLength);
  const auto& s = *p.sigma.category;
  std::size_t tuples = 0, mismatches = 0;
  for (const auto& t : s.new_tuples()) {
    if (t.size() > kSigmaTupleLength) continue;
    ++tuples;
    const auto words = oracle::sigma_words(s, t, 4);
    const std::string obj = SigmaCategory::tuple_object_name(t);
    for (const auto& c : s.objects()) {
      std::set<std::string> got;
      for (const auto& m : s.hom(obj, c)) got.insert(sigma_key(s, t, m));
      const auto it = words.find(c);
      mismatches += got != (it == words.end() ? std::set<std::string>{} : it->second);
    }
  }
  const bool semi = is_semi_theory(p.sigma.sketch, p.sigma.sorted).verdict();
  report(8, tuples > 0 && mismatches == 0 && semi,
         std::to_string(tuples) + " new tuples, " + std::to_string(mismatches) + " hom mismatches; semi-theory " +
             (semi ? "true" : "false"));
}

// every table n -> m
void for_each_function(std::size_t n, std::size_t m, const std::function<void(const Table&)>& f) {
  if (n > 0 && m == 0) return;
  Table t(n, 0);
  while (true) {
    f(t);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++t[i] < m) break;
      t[i] = 0;
    }
    if (i == n) return;
  }
}

void criterion9() {
  const auto t0 = Clock::now();
  const auto p = initial_semitheory({"s"}, 2);
  const auto c = FreeSemiTheory::make("c", {"s"}, {{}, {"s", "s"}}, {{"mu", {"s", "s"}, {"s"}}, {"e", {}, {"s"}}});
  const auto e0 = p.object_of({}), e1 = p.object_of({"s"}), e2 = p.object_of({"s", "s"});
  const std::vector<std::string> objs{e0, e1, e2};
  std::vector<oracle::Gen> pgens, cgens;
  for (const auto& g : p.category().generators()) pgens.push_back({g.name, g.dom, g.cod});
  for (const auto& g : c.category().generators()) cgens.push_back({g.name, g.dom, g.cod});
  const auto p1 = FreeSemiTheory::default_projection_name({"s", "s"}, 1);
  const auto p2 = FreeSemiTheory::default_projection_name({"s", "s"}, 2);

  auto with_carriers = [&](const std::function<void(const FinSetAlgebra&)>& f) {
    for (std::size_t n0 = 0; n0 <= 2; ++n0)
      for (std::size_t n1 = 0; n1 <= 2; ++n1)
        for (std::size_t n2 = 0; n2 <= 2; ++n2) {
          FinSetAlgebra a;
          a.carriers[e0] = numbered_carrier(n0);
          a.carriers[e1] = numbered_carrier(n1);
          a.carriers[e2] = numbered_carrier(n2);
          f(a);
        }
  };
  std::vector<FinSetAlgebra> ys, xs;
  with_carriers([&](const FinSetAlgebra& base) {
    for_each_function(base.size(e2), base.size(e1), [&](const Table& a) {
      for_each_function(base.size(e2), base.size(e1), [&](const Table& b) {
        auto y = base;
        y.actions[p1] = a;
        y.actions[p2] = b;
        ys.push_back(y);
        for_each_function(base.size(e2), base.size(e1), [&](const Table& m) {
          for_each_function(base.size(e0), base.size(e1), [&](const Table& e) {
            auto x = y;
            x.actions["mu"] = m;
            x.actions["e"] = e;
            xs.push_back(x);
          });
        });
      });
    });
  });
  std::vector<FinSetAlgebra> extended, restricted;
  for (const auto& y : ys) extended.push_back(left_extend(p, y, c));
  for (const auto& x : xs) restricted.push_back(restrict_to_initial(p, c, x));

  std::size_t pairs = 0, mismatches = 0;
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      ++pairs;
      mismatches += oracle::nat_count(objs, cgens, extended[i], xs[j]) !=
                    oracle::nat_count(objs, pgens, ys[i], restricted[j]);
    }
  const double s = seconds_since(t0);
  report(9, mismatches == 0 && s < kLimit9,
         std::to_string(ys.size()) + " x " + std::to_string(xs.size()) + " = " + std::to_string(pairs) +
             " pairs, " + std::to_string(mismatches) + " mismatches, " + timing(s, kLimit9));
}

FinSetAlgebra random_binary_algebra(std::mt19937& rng) {
  const std::size_t n1 = 1 + rng() % 2;
  const std::size_t n2 = rng() % 2 ? n1 * n1 : 1 + rng() % 4;
  FinSetAlgebra a;
  a.carriers["b1"] = numbered_carrier(n1);
  a.carriers["b2"] = numbered_carrier(n2);
  Table id1(n1), id2(n2);
  for (std::size_t i = 0; i < n1; ++i) id1[i] = i;
  for (std::size_t i = 0; i < n2; ++i) id2[i] = i;
  a.actions["id_b1"] = id1;
  a.actions["id_b2"] = id2;
  for (const auto* g : {"phi1", "phi2", "mu"}) {
    Table t(n2);
    for (auto& v : t) v = rng() % n1;
    a.actions[g] = t;
  }
  if (n2 == n1 * n1 && rng() % 2)
    for (std::size_t x = 0; x < n2; ++x) {
      a.actions["phi1"][x] = x / n1;
      a.actions["phi2"][x] = x % n1;
    }
  return a;
}

void criterion10() {
  const auto b = builtin_binary();
  std::mt19937 rng(23);
  std::vector<FinSetAlgebra> algebras = binary_algebras;
  for (std::size_t i = 0; i < kRandomAlgebras; ++i) algebras.push_back(random_binary_algebra(rng));
  std::size_t strict = 0, disagreements = 0;
  for (const auto& a : algebras) {
    const bool s = is_strict_algebra(b, a).verdict;
    strict += s;
    disagreements += s != is_strictly_local(b, a);
  }
  report(10, disagreements == 0 && algebras.size() == kRandomAlgebras + 16,
         std::to_string(algebras.size()) + " algebras (" + std::to_string(strict) + " strict), " +
             std::to_string(disagreements) + " disagreements");
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
