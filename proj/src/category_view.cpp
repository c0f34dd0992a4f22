#include "sketchforge/category_view.hpp"

#include "sketchforge/error.hpp"

namespace sketchforge {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

const ExplicitCategory* CategoryView::as_explicit() const {
  auto p = std::get_if<std::shared_ptr<const ExplicitCategory>>(&rep_);
  return p ? p->get() : nullptr;
}

const FreeCategory* CategoryView::as_free() const {
  auto p = std::get_if<std::shared_ptr<const FreeCategory>>(&rep_);
  return p ? p->get() : nullptr;
}

const SigmaCategory* CategoryView::as_sigma() const {
  auto p = std::get_if<std::shared_ptr<const SigmaCategory>>(&rep_);
  return p ? p->get() : nullptr;
}

const ExplicitCategory& CategoryView::explicit_category() const {
  if (auto c = as_explicit()) return *c;
  throw NotExplicit("operation needs an explicit finite category");
}

std::shared_ptr<const ExplicitCategory> CategoryView::explicit_ptr() const {
  if (auto p = std::get_if<std::shared_ptr<const ExplicitCategory>>(&rep_)) return *p;
  throw NotExplicit("operation needs an explicit finite category");
}

std::vector<std::string> CategoryView::objects() const {
  return std::visit([](const auto& c) -> std::vector<std::string> { return c->objects(); }, rep_);
}

bool CategoryView::has_object(const std::string& name) const {
  return std::visit(overloaded{
                        [&](const std::shared_ptr<const ExplicitCategory>& c) { return c->find_object(name).has_value(); },
                        [&](const std::shared_ptr<const FreeCategory>& c) { return c->has_object(name); },
                        [&](const std::shared_ptr<const SigmaCategory>& c) { return c->has_object(name); },
                    },
                    rep_);
}

std::vector<Morphism> CategoryView::hom(const std::string& a, const std::string& b, std::size_t bound) const {
  return std::visit(overloaded{
                        [&](const std::shared_ptr<const ExplicitCategory>& c) {
                          std::vector<Morphism> out;
                          for (auto f : c->hom(c->object_index(a), c->object_index(b))) out.push_back(c->as_morphism(f));
                          return out;
                        },
                        [&](const std::shared_ptr<const FreeCategory>& c) { return c->hom(a, b, bound); },
                        [&](const std::shared_ptr<const SigmaCategory>& c) { return c->hom(a, b); },
                    },
                    rep_);
}

Morphism CategoryView::compose(const Morphism& f, const Morphism& g) const {
  return std::visit(overloaded{
                        [&](const std::shared_ptr<const ExplicitCategory>& c) {
                          return c->as_morphism(c->compose(c->resolve(f), c->resolve(g)));
                        },
                        [&](const std::shared_ptr<const FreeCategory>& c) {
                          c->check_word(f);
                          c->check_word(g);
                          return c->compose(f, g);
                        },
                        [&](const std::shared_ptr<const SigmaCategory>& c) { return c->compose(f, g); },
                    },
                    rep_);
}

Morphism CategoryView::identity(const std::string& a) const {
  return std::visit(overloaded{
                        [&](const std::shared_ptr<const ExplicitCategory>& c) {
                          return c->as_morphism(c->identity(c->object_index(a)));
                        },
                        [&](const std::shared_ptr<const FreeCategory>& c) { return c->identity(a); },
                        [&](const std::shared_ptr<const SigmaCategory>& c) { return c->identity(a); },
                    },
                    rep_);
}

Morphism CategoryView::normalize(const Morphism& m) const {
  return std::visit(overloaded{
                        [&](const std::shared_ptr<const ExplicitCategory>& c) { return c->as_morphism(c->resolve(m)); },
                        [&](const std::shared_ptr<const FreeCategory>& c) {
                          c->check_word(m);
                          return m;
                        },
                        [&](const std::shared_ptr<const SigmaCategory>& c) {
                          c->check(m);
                          return m;
                        },
                    },
                    rep_);
}

bool CategoryView::is_identity(const Morphism& m) const { return normalize(m) == identity(m.dom); }

}  // namespace sketchforge
