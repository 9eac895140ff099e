#include "cofinal/setfun.hpp"

#include <numeric>

namespace cofinal {

bool ClassFunction::injective() const {
  std::vector<bool> hit(codomain_size, false);
  for (std::size_t y : image) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool ClassFunction::surjective() const {
  std::vector<bool> hit(codomain_size, false);
  for (std::size_t y : image) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

ClassFunction ClassFunction::then(const ClassFunction& next) const {
  ClassFunction out;
  out.codomain_size = next.codomain_size;
  for (std::size_t y : image) out.image.push_back(next.image.at(y));
  return out;
}

ClassFunction induced_on_classes(const FinSetQuotient& domain,
                                 const std::vector<std::size_t>& generator_image,
                                 std::size_t codomain_size) {
  ClassFunction out;
  out.codomain_size = codomain_size;
  out.image.resize(domain.class_count());
  for (std::size_t c = 0; c < domain.class_count(); ++c) {
    const auto& members = domain.members(c);
    const std::size_t y = generator_image[members.front()];
    for (std::size_t g : members) {
      if (generator_image[g] != y) {
        throw Error(ErrorKind::InternalInvariant, "map is not constant on a class",
                    domain.generator(g));
      }
    }
    out.image[c] = y;
  }
  return out;
}

Weight::Weight(FinCategory base, SetDiagram diagram) : base_(std::move(base)), diagram_(std::move(diagram)) {
  if (!(diagram_.shape() == opposite(base_))) {
    throw Error(ErrorKind::ShapeMismatch, "weight is not a diagram on the opposite category");
  }
}

void check_natural(const Weight& from, const Weight& to, const WeightMap& map) {
  const FinCategory& c = from.base();
  if (!(c == to.base()) || map.component.size() != c.object_count()) {
    throw Error(ErrorKind::ShapeMismatch, "weight map between different categories");
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor u(m);
    const std::size_t b = c.src(u).index();
    const std::size_t b2 = c.tgt(u).index();
    for (std::size_t w = 0; w < from.size(c.tgt(u)); ++w) {
      if (map.component[b][from.apply(u, w)] != to.apply(u, map.component[b2][w])) {
        throw Error(ErrorKind::InternalInvariant, "weight map is not natural", c.name(u));
      }
    }
  }
}

SetDiagram restrict(const SetDiagram& x, const FinFunctor& f) {
  if (!(x.shape() == f.target())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram is not defined on the functor's target");
  }
  const FinCategory& j = f.source();
  std::vector<std::vector<std::string>> labels(j.object_count());
  for (std::size_t b = 0; b < labels.size(); ++b) {
    const auto l = x.labels(f(Obj(b)));
    labels[b].assign(l.begin(), l.end());
  }
  std::vector<std::vector<std::size_t>> action(j.morphism_count());
  for (std::size_t m = 0; m < action.size(); ++m) {
    const auto a = x.action(f(Mor(m)));
    action[m].assign(a.begin(), a.end());
  }
  return SetDiagram::make(j, std::move(labels), std::move(action));
}

ColimitValue colimit(const SetDiagram& x) {
  const FinCategory& c = x.shape();
  std::vector<std::string> generators;
  std::vector<std::size_t> offset;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    offset.push_back(generators.size());
    for (const auto& l : x.labels(Obj(a))) generators.push_back(c.name(Obj(a)) + ":" + l);
  }
  std::vector<std::pair<std::size_t, std::size_t>> witnesses;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor f(m);
    if (c.is_identity(f)) continue;
    const std::size_t s = offset[c.src(f).index()];
    const std::size_t t = offset[c.tgt(f).index()];
    for (std::size_t e = 0; e < x.size(c.src(f)); ++e) witnesses.emplace_back(s + e, t + x.apply(f, e));
  }
  ColimitValue out{FinSetQuotient(std::move(generators), std::move(witnesses)), {}};
  out.cocone.resize(c.object_count());
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    for (std::size_t e = 0; e < x.size(Obj(a)); ++e) out.cocone[a].push_back(out.value.class_of(offset[a] + e));
  }
  return out;
}

ComparisonResult comparison_map(const FinFunctor& f, const SetDiagram& x) {
  ComparisonResult r;
  const SetDiagram pulled = restrict(x, f);
  r.restricted = colimit(pulled);
  r.full = colimit(x);
  std::vector<std::size_t> image;
  const FinCategory& j = f.source();
  for (std::size_t b = 0; b < j.object_count(); ++b) {
    for (std::size_t e = 0; e < pulled.size(Obj(b)); ++e) image.push_back(r.full.class_of(f(Obj(b)), e));
  }
  r.map = induced_on_classes(r.restricted.value, image, r.full.size());
  return r;
}

LanResult lan(const FinFunctor& f, const SetDiagram& x) {
  if (!(x.shape() == f.source())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram is not defined on the functor's source");
  }
  const FinCategory& j = f.source();
  const FinCategory& i = f.target();
  std::vector<CommaResult> fibers;
  std::vector<ColimitValue> values;
  std::vector<std::vector<std::string>> labels(i.object_count());
  for (std::size_t a = 0; a < i.object_count(); ++a) {
    fibers.push_back(oplax_fiber(f, Obj(a)));
    values.push_back(colimit(restrict(x, fibers.back().projection)));
    for (std::size_t c = 0; c < values.back().size(); ++c) labels[a].push_back(values.back().value.class_label(c));
  }
  std::vector<std::vector<std::size_t>> action(i.morphism_count());
  for (std::size_t m = 0; m < i.morphism_count(); ++m) {
    const Mor v(m);
    const auto& from = fibers[i.src(v).index()];
    const auto& to = fibers[i.tgt(v).index()];
    std::vector<std::size_t> image;
    for (std::size_t o = 0; o < from.category.object_count(); ++o) {
      const Obj b = from.fiber_source[o];
      const Obj target = to.object_at(b, i.compose(v, from.fiber_arrow[o]));
      for (std::size_t e = 0; e < x.size(b); ++e) image.push_back(values[i.tgt(v).index()].class_of(target, e));
    }
    action[m] = induced_on_classes(values[i.src(v).index()].value, image, labels[i.tgt(v).index()].size()).image;
  }
  LanResult r;
  r.diagram = SetDiagram::make(i, std::move(labels), std::move(action));
  r.unit.resize(j.object_count());
  for (std::size_t b = 0; b < j.object_count(); ++b) {
    const Obj fb = f(Obj(b));
    const Obj o = fibers[fb.index()].object_at(Obj(b), i.identity(fb));
    for (std::size_t e = 0; e < x.size(Obj(b)); ++e) r.unit[b].push_back(values[fb.index()].class_of(o, e));
  }
  return r;
}

Weight representable_weight(const FinCategory& c, Obj a) {
  if (!a.valid() || a.index() >= c.object_count()) {
    throw Error(ErrorKind::UnknownObject, "object not in the category");
  }
  std::vector<std::vector<std::string>> labels(c.object_count());
  for (std::size_t b = 0; b < c.object_count(); ++b) {
    for (Mor h : c.hom(Obj(b), a)) labels[b].push_back(c.name(h));
  }
  std::vector<std::vector<std::size_t>> action(c.morphism_count());
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor u(m);
    for (Mor h : c.hom(c.tgt(u), a)) action[m].push_back(c.hom_position(c.compose(h, u)));
  }
  const FinCategory op = opposite(c);
  return Weight(c, SetDiagram::make(op, std::move(labels), std::move(action)));
}

Weight constant_weight(const FinCategory& c) {
  return Weight(c, constant_diagram(opposite(c), {"*"}));
}

SetDiagram tensor_diagram(const Weight& w, const SetDiagram& x) {
  const FinCategory& c = w.base();
  if (!(x.shape() == c)) throw Error(ErrorKind::ShapeMismatch, "weight and diagram live on different categories");
  const FinCategory op = opposite(c);
  const FinCategory shape = product(op, c);
  std::vector<std::vector<std::string>> labels(shape.object_count());
  for (std::size_t p = 0; p < c.object_count(); ++p) {
    for (std::size_t b = 0; b < c.object_count(); ++b) {
      auto& l = labels[product_object(c, Obj(p), Obj(b)).index()];
      for (const auto& wl : w.diagram().labels(Obj(p))) {
        for (const auto& xl : x.labels(Obj(b))) l.push_back("(" + wl + "," + xl + ")");
      }
    }
  }
  std::vector<std::vector<std::size_t>> action(shape.morphism_count());
  for (std::size_t h = 0; h < c.morphism_count(); ++h) {
    // h is a morphism of I^op: in I it runs tgt(h) → src(h), and W acts
    // covariantly along it.
    for (std::size_t g = 0; g < c.morphism_count(); ++g) {
      auto& act = action[product_morphism(c, Mor(h), Mor(g)).index()];
      const std::size_t nx_src = x.size(c.src(Mor(g)));
      const std::size_t nx_tgt = x.size(c.tgt(Mor(g)));
      for (std::size_t wi = 0; wi < w.size(c.tgt(Mor(h))); ++wi) {
        for (std::size_t xi = 0; xi < nx_src; ++xi) {
          act.push_back(pair_index(w.apply(Mor(h), wi), x.apply(Mor(g), xi), nx_tgt));
        }
      }
    }
  }
  return SetDiagram::make(shape, std::move(labels), std::move(action));
}

ColimitValue weighted_colimit_tw(const Weight& w, const SetDiagram& x) {
  return weighted_colimit_tw(w, x, twisted_arrow(w.base()));
}

ColimitValue weighted_colimit_tw(const Weight& w, const SetDiagram& x, const TwistedArrowResult& tw) {
  return colimit(restrict(tensor_diagram(w, x), tw.projection_ts));
}

ColimitValue weighted_colimit_coend(const Weight& w, const SetDiagram& x) {
  const FinCategory& c = w.base();
  if (!(x.shape() == c)) throw Error(ErrorKind::ShapeMismatch, "weight and diagram live on different categories");
  std::vector<std::string> generators;
  std::vector<std::size_t> offset;
  for (std::size_t b = 0; b < c.object_count(); ++b) {
    offset.push_back(generators.size());
    for (const auto& wl : w.diagram().labels(Obj(b))) {
      for (const auto& xl : x.labels(Obj(b))) generators.push_back(c.name(Obj(b)) + ":(" + wl + "," + xl + ")");
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> witnesses;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor u(m);
    const Obj b = c.src(u);
    const Obj b2 = c.tgt(u);
    for (std::size_t w2 = 0; w2 < w.size(b2); ++w2) {
      for (std::size_t e = 0; e < x.size(b); ++e) {
        const std::size_t left = offset[b.index()] + pair_index(w.apply(u, w2), e, x.size(b));
        const std::size_t right = offset[b2.index()] + pair_index(w2, x.apply(u, e), x.size(b2));
        witnesses.emplace_back(left, right);
      }
    }
  }
  ColimitValue out{FinSetQuotient(std::move(generators), std::move(witnesses)), {}};
  out.cocone.resize(c.object_count());
  for (std::size_t b = 0; b < c.object_count(); ++b) {
    const std::size_t n = w.size(Obj(b)) * x.size(Obj(b));
    for (std::size_t g = 0; g < n; ++g) out.cocone[b].push_back(out.value.class_of(offset[b] + g));
  }
  return out;
}

ClassFunction tw_to_coend(const Weight& w, const SetDiagram& x, const ColimitValue& tw_value,
                          const ColimitValue& coend_value) {
  const FinCategory& c = w.base();
  std::vector<std::size_t> image;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor u(m);
    const Obj b = c.src(u);
    const Obj b2 = c.tgt(u);
    for (std::size_t wi = 0; wi < w.size(b2); ++wi) {
      for (std::size_t e = 0; e < x.size(b); ++e) {
        image.push_back(coend_value.class_of(b2, pair_index(wi, x.apply(u, e), x.size(b2))));
      }
    }
  }
  return induced_on_classes(tw_value.value, image, coend_value.size());
}

ClassFunction weight_map_induced(const Weight& from, const Weight& to, const WeightMap& map,
                                 const SetDiagram& x, const ColimitValue& from_value,
                                 const ColimitValue& to_value) {
  check_natural(from, to, map);
  const FinCategory& c = from.base();
  std::vector<std::size_t> image;
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor u(m);
    const Obj b = c.src(u);
    const Obj b2 = c.tgt(u);
    for (std::size_t wi = 0; wi < from.size(b2); ++wi) {
      for (std::size_t e = 0; e < x.size(b); ++e) {
        image.push_back(to_value.class_of(Obj(u.index()), pair_index(map.component[b2.index()][wi], e, x.size(b))));
      }
    }
  }
  return induced_on_classes(from_value.value, image, to_value.size());
}

std::vector<std::size_t> coyoneda_map(const SetDiagram& x, Obj a, const ColimitValue& weighted) {
  const FinCategory& c = x.shape();
  const Mor id = c.identity(a);
  // Map(a, a) lists id_a at its hom position.
  const std::size_t w = c.hom_position(id);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < x.size(a); ++e) out.push_back(weighted.class_of(Obj(id.index()), pair_index(w, e, x.size(a))));
  return out;
}

ClassFunction constant_weight_map(const SetDiagram& x, const ColimitValue& plain,
                                  const ColimitValue& weighted) {
  const FinCategory& c = x.shape();
  std::vector<std::size_t> image;
  for (std::size_t b = 0; b < c.object_count(); ++b) {
    const Mor id = c.identity(Obj(b));
    for (std::size_t e = 0; e < x.size(Obj(b)); ++e) image.push_back(weighted.class_of(Obj(id.index()), e));
  }
  return induced_on_classes(plain.value, image, weighted.size());
}

WeightMap extend_from_unit(const FinFunctor& f, const LanResult& lan_w, const Weight& target,
                           const std::vector<std::vector<std::size_t>>& on_unit) {
  const FinCategory& i = f.target();
  const Weight extended(i, lan_w.diagram);
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  WeightMap map;
  map.component.resize(i.object_count());
  for (std::size_t a = 0; a < i.object_count(); ++a) map.component[a].assign(extended.size(Obj(a)), unset);
  for (std::size_t b = 0; b < f.source().object_count(); ++b) {
    const Obj fb = f(Obj(b));
    for (std::size_t w = 0; w < on_unit[b].size(); ++w) {
      for (std::size_t a = 0; a < i.object_count(); ++a) {
        for (Mor u : i.hom(Obj(a), fb)) {
          const std::size_t from = extended.apply(u, lan_w.unit[b][w]);
          const std::size_t to = target.apply(u, on_unit[b][w]);
          auto& slot = map.component[a][from];
          if (slot != unset && slot != to) {
            throw Error(ErrorKind::InternalInvariant, "extension from the unit is not well defined", i.name(u));
          }
          slot = to;
        }
      }
    }
  }
  for (std::size_t a = 0; a < i.object_count(); ++a) {
    for (std::size_t v : map.component[a]) {
      if (v == unset) throw Error(ErrorKind::InternalInvariant, "element not reached from the unit", i.name(Obj(a)));
    }
  }
  check_natural(extended, target, map);
  return map;
}

Weight pi0_fiber_weight(const FinFunctor& f) {
  const FinCategory& i = f.target();
  std::vector<CommaResult> fibers;
  std::vector<std::vector<std::size_t>> component;
  std::vector<std::vector<std::string>> labels(i.object_count());
  for (std::size_t a = 0; a < i.object_count(); ++a) {
    fibers.push_back(lax_fiber(f, Obj(a)));
    std::size_t count = 0;
    component.push_back(connected_components(fibers.back().category, &count));
    labels[a].resize(count);
    for (std::size_t o = component.back().size(); o-- > 0;) {
      labels[a][component.back()[o]] = fibers.back().category.name(Obj(o));
    }
  }
  std::vector<std::vector<std::size_t>> action(i.morphism_count());
  for (std::size_t m = 0; m < i.morphism_count(); ++m) {
    const Mor v(m);
    const std::size_t a = i.src(v).index();
    const std::size_t a2 = i.tgt(v).index();
    const auto& from = fibers[a2];
    // Components are numbered by first object, so the first object of each
    // component is a representative.
    action[m].resize(labels[a2].size());
    std::vector<bool> done(labels[a2].size(), false);
    for (std::size_t o = 0; o < from.category.object_count(); ++o) {
      const std::size_t comp = component[a2][o];
      const Obj target = fibers[a].object_at(from.fiber_source[o], i.compose(from.fiber_arrow[o], v));
      const std::size_t value = component[a][target.index()];
      if (done[comp] && action[m][comp] != value) {
        throw Error(ErrorKind::InternalInvariant, "precomposition does not respect components");
      }
      action[m][comp] = value;
      done[comp] = true;
    }
  }
  return Weight(i, SetDiagram::make(opposite(i), std::move(labels), std::move(action)));
}

}  // namespace cofinal
