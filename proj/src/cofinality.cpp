#include "cofinal/cofinality.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

namespace cofinal {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::cofinal_for_1_categories: return "cofinal_for_1_categories";
    case Verdict::rationally_cofinal_up_to_d: return "rationally_cofinal_up_to_d";
    case Verdict::not_cofinal: return "not_cofinal";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool FiberCertificate::passes() const { return !budget_exceeded && certificate.acyclic(); }

namespace {

void summarize(const FinFunctor& f, CofinalityReport& r) {
  r.source_objects = f.source().object_count();
  r.source_morphisms = f.source().morphism_count();
  r.target_objects = f.target().object_count();
  r.target_morphisms = f.target().morphism_count();
}

FiberCertificate graph_certificate(const CommaResult& fiber, Obj a) {
  FiberCertificate fc;
  fc.object = a;
  fc.fiber_objects = fiber.category.object_count();
  connected_components(fiber.category, &fc.components);
  fc.certificate.nonempty = !fiber.category.empty();
  fc.certificate.connected = fc.components == 1;
  fc.certificate.complete = is_loop_free(fiber.category);
  fc.certificate.reduced_betti = {static_cast<std::int64_t>(fc.components) - 1};
  return fc;
}

std::vector<std::string> element_labels(std::size_t n, char prefix) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

}  // namespace

CofinalityReport classical_cofinal(const FinFunctor& f, std::size_t cross_checks, std::uint64_t seed) {
  CofinalityReport r;
  summarize(f, r);
  r.seed = seed;
  r.verdict = Verdict::cofinal_for_1_categories;
  const FinCategory& i = f.target();
  for (std::size_t a = 0; a < i.object_count(); ++a) {
    r.fibers.push_back(graph_certificate(lax_fiber(f, Obj(a)), Obj(a)));
    if (!r.witness && !r.fibers.back().passes()) {
      r.verdict = Verdict::not_cofinal;
      r.witness = Obj(a);
    }
  }
  for (std::size_t t = 0; t < cross_checks; ++t) {
    const std::uint64_t s = derive_seed(seed, t);
    std::mt19937_64 rng(s);
    const auto cmp = comparison_map(f, random_diagram(rng, i, 4));
    r.empirical.push_back({s, cmp.restricted.size(), cmp.full.size(), cmp.map.bijective()});
  }
  return r;
}

CofinalityReport rational_cofinal(const FinFunctor& f, std::size_t degree_bound, std::size_t budget) {
  CofinalityReport r;
  summarize(f, r);
  r.degree_bound = degree_bound;
  const FinCategory& i = f.target();
  bool exceeded = false;
  for (std::size_t a = 0; a < i.object_count(); ++a) {
    const CommaResult fiber = lax_fiber(f, Obj(a));
    FiberCertificate fc = graph_certificate(fiber, Obj(a));
    try {
      fc.certificate = acyclicity_certificate(fiber.category, degree_bound, budget);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SimplexBudgetExceeded) throw;
      fc.budget_exceeded = true;
      fc.certificate.degree_bound = degree_bound;
    }
    exceeded = exceeded || fc.budget_exceeded;
    if (!r.witness && !fc.budget_exceeded && !fc.passes()) r.witness = Obj(a);
    r.fibers.push_back(std::move(fc));
  }
  if (r.witness) {
    r.verdict = Verdict::not_cofinal;
  } else {
    r.verdict = exceeded ? Verdict::inconclusive : Verdict::rationally_cofinal_up_to_d;
  }
  return r;
}

DualityReport duality_check(const FinFunctor& f, const Weight& w, const SetDiagram& x) {
  if (!(w.base() == f.source())) throw Error(ErrorKind::ShapeMismatch, "weight is not on the functor's source");
  if (!(x.shape() == f.target())) throw Error(ErrorKind::ShapeMismatch, "diagram is not on the functor's target");
  const FinCategory& j = f.source();
  DualityReport r;
  r.lhs = weighted_colimit_tw(w, restrict(x, f));
  const LanResult ext = lan(opposite(f), w.diagram());
  r.rhs = weighted_colimit_tw(Weight(f.target(), ext.diagram), x);

  std::vector<std::size_t> image;
  for (std::size_t m = 0; m < j.morphism_count(); ++m) {
    const Mor u(m);
    const std::size_t b2 = j.tgt(u).index();
    const std::size_t nx = x.size(f(j.src(u)));
    const Obj fu(f(u).index());
    for (std::size_t wi = 0; wi < w.size(j.tgt(u)); ++wi) {
      for (std::size_t e = 0; e < nx; ++e) image.push_back(r.rhs.class_of(fu, pair_index(ext.unit[b2][wi], e, nx)));
    }
  }
  r.canonical_map = induced_on_classes(r.lhs.value, image, r.rhs.size());
  r.bijection = r.canonical_map.bijective();
  return r;
}

QuantReport cof_quant_check(const FinFunctor& f, const SetDiagram& x) {
  if (!(x.shape() == f.target())) throw Error(ErrorKind::ShapeMismatch, "diagram is not on the functor's target");
  const FinCategory& j = f.source();
  const FinCategory& i = f.target();
  const SetDiagram pulled = restrict(x, f);
  const Weight pi0 = pi0_fiber_weight(f);

  QuantReport q;
  DualityReport& r = q.report;
  r.lhs = colimit(pulled);
  r.rhs = weighted_colimit_tw(pi0, x);

  std::vector<std::vector<std::size_t>> component(i.object_count());
  std::vector<CommaResult> fibers(i.object_count());
  std::vector<bool> built(i.object_count(), false);
  std::vector<std::vector<std::size_t>> on_unit(j.object_count());
  for (std::size_t b = 0; b < j.object_count(); ++b) {
    const Obj fb = f(Obj(b));
    if (!built[fb.index()]) {
      fibers[fb.index()] = lax_fiber(f, fb);
      component[fb.index()] = connected_components(fibers[fb.index()].category);
      built[fb.index()] = true;
    }
    const Obj o = fibers[fb.index()].object_at(Obj(b), i.identity(fb));
    on_unit[b] = {component[fb.index()][o.index()]};
  }

  std::vector<std::size_t> image;
  for (std::size_t b = 0; b < j.object_count(); ++b) {
    const Obj fb = f(Obj(b));
    const Obj id(i.identity(fb).index());
    for (std::size_t e = 0; e < x.size(fb); ++e) {
      image.push_back(r.rhs.class_of(id, pair_index(on_unit[b][0], e, x.size(fb))));
    }
  }
  r.canonical_map = induced_on_classes(r.lhs.value, image, r.rhs.size());
  r.bijection = r.canonical_map.bijective();

  // The same map through the duality theorem at the constant weight.
  const Weight point_weight = constant_weight(j);
  const DualityReport d = duality_check(f, point_weight, x);
  const LanResult ext = lan(opposite(f), point_weight.diagram());
  const Weight extended(i, ext.diagram);
  const WeightMap phi = extend_from_unit(f, ext, pi0, on_unit);
  const ClassFunction transport = weight_map_induced(extended, pi0, phi, x, d.rhs, r.rhs);
  const ClassFunction via_duality =
      constant_weight_map(pulled, r.lhs, d.lhs).then(d.canonical_map).then(transport);
  q.consistent_with_duality = via_duality.image == r.canonical_map.image && transport.bijective() &&
                              d.bijection == r.bijection;
  return q;
}

SetDiagram probe_diagram(const FinCategory& c, Obj a, std::size_t set_size) {
  return lan(object_functor(c, a), constant_diagram(point(), element_labels(set_size, 's'))).diagram;
}

ConverseReport converse_witness(const FinFunctor& f, Obj a, std::size_t set_size) {
  const FinCategory& i = f.target();
  if (!a.valid() || a.index() >= i.object_count()) throw Error(ErrorKind::UnknownObject, "object not in the category");
  ConverseReport r;
  r.object = a;
  r.set_size = set_size;
  connected_components(lax_fiber(f, a).category, &r.fiber_components);
  const auto cmp = comparison_map(f, probe_diagram(i, a, set_size));
  r.restricted_size = cmp.restricted.size();
  r.full_size = cmp.full.size();
  r.comparison_bijective = cmp.map.bijective();
  return r;
}

// ---------------------------------------------------------------------------
// Random instances

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct Function {
  std::size_t src = 0;
  std::size_t tgt = 0;
  std::vector<std::size_t> table;

  auto key() const { return std::tie(src, tgt, table); }
  bool operator<(const Function& o) const { return key() < o.key(); }
};

// Closes `fns` under composition; false when the closure exceeds `cap`.
bool close_under_composition(std::vector<Function>& fns, std::size_t cap) {
  std::map<Function, std::size_t> known;
  for (std::size_t k = 0; k < fns.size(); ++k) known.emplace(fns[k], k);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = fns.size();
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = 0; g < n; ++g) {
        if (fns[f].tgt != fns[g].src) continue;
        Function h{fns[f].src, fns[g].tgt, {}};
        for (std::size_t v : fns[f].table) h.table.push_back(fns[g].table[v]);
        if (known.contains(h)) continue;
        if (fns.size() >= cap) return false;
        known.emplace(h, fns.size());
        fns.push_back(std::move(h));
        grew = true;
      }
    }
  }
  return true;
}

// Composable pairs of non-identity morphisms with their composite.
struct Triple {
  Mor g, f, gf;
};

std::vector<Triple> composable_triples(const FinCategory& c) {
  std::vector<Triple> out;
  for (std::size_t fm = 0; fm < c.morphism_count(); ++fm) {
    const Mor f(fm);
    if (c.is_identity(f)) continue;
    for (Mor g : c.out(c.tgt(f))) {
      if (!c.is_identity(g)) out.push_back({g, f, c.compose(g, f)});
    }
  }
  return out;
}

// Backtracking over the morphism images of a functor with a fixed object map.
// `order` permutes candidate lists; `visit` returns false to stop.
class FunctorSearch {
 public:
  FunctorSearch(const FinCategory& j, const FinCategory& i, std::vector<Obj> objects, std::size_t node_budget)
      : j_(j), i_(i), objects_(std::move(objects)), budget_(node_budget) {
    for (std::size_t m = 0; m < j.morphism_count(); ++m) {
      if (!j.is_identity(Mor(m))) free_.push_back(Mor(m));
    }
    std::vector<std::size_t> rank(j.morphism_count(), 0);
    for (std::size_t k = 0; k < free_.size(); ++k) rank[free_[k].index()] = k;
    checks_.resize(free_.size());
    for (const Triple& t : composable_triples(j)) {
      std::size_t ready = std::max(rank[t.g.index()], rank[t.f.index()]);
      if (!j.is_identity(t.gf)) ready = std::max(ready, rank[t.gf.index()]);
      checks_[ready].push_back(t);
    }
    image_.assign(j.morphism_count(), Mor());
    for (std::size_t a = 0; a < j.object_count(); ++a) {
      image_[j.identity(Obj(a)).index()] = i.identity(objects_[a]);
    }
  }

  using Order = std::function<void(std::vector<Mor>&)>;
  using Visit = std::function<bool(const std::vector<Mor>&)>;

  /// False when the node budget ran out.
  bool run(const Order& order, const Visit& visit) { return step(0, order, visit); }

 private:
  bool step(std::size_t k, const Order& order, const Visit& visit) {
    if (k == free_.size()) {
      stopped_ = !visit(image_);
      return true;
    }
    const Mor m = free_[k];
    const auto hom = i_.hom(objects_[j_.src(m).index()], objects_[j_.tgt(m).index()]);
    std::vector<Mor> candidates(hom.begin(), hom.end());
    order(candidates);
    for (Mor c : candidates) {
      if (nodes_++ >= budget_) return false;
      image_[m.index()] = c;
      if (consistent(k) && !step(k + 1, order, visit)) return false;
      if (stopped_) return true;
    }
    image_[m.index()] = Mor();
    return true;
  }

  bool consistent(std::size_t k) const {
    for (const Triple& t : checks_[k]) {
      if (i_.compose(image_[t.g.index()], image_[t.f.index()]) != image_[t.gf.index()]) return false;
    }
    return true;
  }

  const FinCategory& j_;
  const FinCategory& i_;
  std::vector<Obj> objects_;
  std::size_t budget_;
  std::vector<Mor> free_;
  std::vector<std::vector<Triple>> checks_;
  std::vector<Mor> image_;
  std::size_t nodes_ = 0;
  bool stopped_ = false;
};

FinFunctor constant_functor(const FinCategory& j, const FinCategory& i, Obj a) {
  std::vector<Obj> objects(j.object_count(), a);
  std::vector<Mor> morphisms(j.morphism_count(), i.identity(a));
  return FinFunctor::make(j, i, std::move(objects), std::move(morphisms));
}

constexpr std::size_t kFunctorNodes = 5000;
constexpr std::size_t kDiagramNodes = 20000;
constexpr std::size_t kObjectMapTries = 32;
constexpr std::size_t kDiagramTries = 12;
constexpr std::size_t kInstanceTries = 32;

}  // namespace

FinCategory random_category(std::mt19937_64& rng, std::size_t max_objects, std::size_t max_morphisms) {
  const std::size_t cap = std::min(max_objects, max_morphisms);
  if (cap == 0) return validate_category({});
  const std::size_t k = uniform(rng, 1, cap);
  std::vector<std::size_t> carrier(k);
  for (auto& n : carrier) n = uniform(rng, 1, 3);

  std::vector<Function> fns;
  for (std::size_t a = 0; a < k; ++a) {
    Function id{a, a, std::vector<std::size_t>(carrier[a])};
    std::iota(id.table.begin(), id.table.end(), 0);
    fns.push_back(std::move(id));
  }
  const std::size_t attempts = uniform(rng, 0, max_morphisms - k);
  for (std::size_t t = 0; t < attempts && fns.size() < max_morphisms; ++t) {
    std::size_t a = uniform(rng, 0, k - 1);
    std::size_t b = a;
    if (k > 1 && !chance(rng, 0.2)) {
      while (b == a) b = uniform(rng, 0, k - 1);
      if (a > b && chance(rng, 0.8)) std::swap(a, b);
    }
    Function g{a, b, {}};
    for (std::size_t e = 0; e < carrier[a]; ++e) g.table.push_back(uniform(rng, 0, carrier[b] - 1));
    if (std::find_if(fns.begin(), fns.end(), [&](const Function& h) { return !(h < g) && !(g < h); }) != fns.end()) {
      continue;
    }
    std::vector<Function> trial = fns;
    trial.push_back(std::move(g));
    if (close_under_composition(trial, max_morphisms)) fns = std::move(trial);
  }

  CategorySpec spec;
  for (std::size_t a = 0; a < k; ++a) spec.objects.push_back(std::to_string(a));
  std::map<Function, std::string> name;
  for (std::size_t a = 0; a < k; ++a) name[fns[a]] = identity_name(spec.objects[a]);
  for (std::size_t m = k; m < fns.size(); ++m) {
    const std::string id = "m" + std::to_string(m - k);
    name[fns[m]] = id;
    spec.morphisms.push_back({id, spec.objects[fns[m].src], spec.objects[fns[m].tgt]});
  }
  for (std::size_t f = k; f < fns.size(); ++f) {
    for (std::size_t g = k; g < fns.size(); ++g) {
      if (fns[f].tgt != fns[g].src) continue;
      Function h{fns[f].src, fns[g].tgt, {}};
      for (std::size_t v : fns[f].table) h.table.push_back(fns[g].table[v]);
      spec.composites.push_back({name.at(fns[g]), name.at(fns[f]), name.at(h)});
    }
  }
  return validate_category(spec);
}

std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const FinCategory& source,
                                         const FinCategory& target) {
  if (source.empty()) return FinFunctor::make(source, target, {}, {});
  if (target.empty()) return std::nullopt;
  for (std::size_t t = 0; t < kObjectMapTries; ++t) {
    std::vector<Obj> objects;
    for (std::size_t a = 0; a < source.object_count(); ++a) {
      objects.emplace_back(uniform(rng, 0, target.object_count() - 1));
    }
    FunctorSearch search(source, target, objects, kFunctorNodes);
    std::optional<std::vector<Mor>> found;
    search.run([&](std::vector<Mor>& c) { std::shuffle(c.begin(), c.end(), rng); },
               [&](const std::vector<Mor>& image) {
                 found = image;
                 return false;
               });
    if (found) return FinFunctor::make(source, target, std::move(objects), std::move(*found));
  }
  return constant_functor(source, target, Obj(uniform(rng, 0, target.object_count() - 1)));
}

SetDiagram random_diagram(std::mt19937_64& rng, const FinCategory& shape, std::size_t max_carrier) {
  const std::size_t n = shape.object_count();
  const auto triples = composable_triples(shape);
  std::vector<std::vector<Triple>> touching(shape.morphism_count());
  for (const Triple& t : triples) {
    touching[t.g.index()].push_back(t);
    touching[t.f.index()].push_back(t);
    if (!shape.is_identity(t.gf)) touching[t.gf.index()].push_back(t);
  }
  constexpr std::size_t unset = static_cast<std::size_t>(-1);

  for (std::size_t attempt = 0; attempt < kDiagramTries && max_carrier > 0; ++attempt) {
    std::vector<std::size_t> size(n);
    for (auto& s : size) s = chance(rng, 0.1) ? 0 : uniform(rng, 1, max_carrier);
    std::vector<std::vector<std::size_t>> action(shape.morphism_count());
    std::vector<std::pair<Mor, std::size_t>> vars;
    for (std::size_t m = 0; m < shape.morphism_count(); ++m) {
      const Mor f(m);
      const std::size_t from = size[shape.src(f).index()];
      if (shape.is_identity(f)) {
        action[m].resize(from);
        std::iota(action[m].begin(), action[m].end(), 0);
        continue;
      }
      action[m].assign(from, unset);
      for (std::size_t e = 0; e < from; ++e) vars.emplace_back(f, e);
    }
    auto consistent = [&](Mor m) {
      for (const Triple& t : touching[m.index()]) {
        const auto& f = action[t.f.index()];
        const auto& g = action[t.g.index()];
        const auto& gf = action[t.gf.index()];
        for (std::size_t e = 0; e < f.size(); ++e) {
          if (f[e] == unset || g[f[e]] == unset || gf[e] == unset) continue;
          if (g[f[e]] != gf[e]) return false;
        }
      }
      return true;
    };
    std::size_t nodes = 0;
    std::function<int(std::size_t)> step = [&](std::size_t k) -> int {
      if (k == vars.size()) return 1;
      const auto [m, e] = vars[k];
      std::vector<std::size_t> candidates(size[shape.tgt(m).index()]);
      std::iota(candidates.begin(), candidates.end(), 0);
      std::shuffle(candidates.begin(), candidates.end(), rng);
      for (std::size_t c : candidates) {
        if (nodes++ >= kDiagramNodes) return -1;
        action[m.index()][e] = c;
        if (consistent(m)) {
          const int r = step(k + 1);
          if (r != 0) return r;
        }
      }
      action[m.index()][e] = unset;
      return 0;
    };
    if (step(0) == 1) {
      std::vector<std::vector<std::string>> labels(n);
      for (std::size_t a = 0; a < n; ++a) labels[a] = element_labels(size[a], 'e');
      return SetDiagram::make(shape, std::move(labels), std::move(action));
    }
  }
  return constant_diagram(shape, element_labels(max_carrier == 0 ? 0 : uniform(rng, 1, max_carrier), 'e'));
}

RandomInstance random_instance(std::uint64_t seed, const SizeConfig& config) {
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < kInstanceTries; ++t) {
    FinCategory target = random_category(rng, config.max_objects, config.max_morphisms);
    FinCategory source = random_category(rng, config.max_objects, config.max_morphisms);
    auto f = random_functor(rng, source, target);
    if (!f) continue;
    RandomInstance inst;
    inst.seed = seed;
    inst.weight = Weight(source, random_diagram(rng, opposite(source), config.max_carrier));
    inst.diagram = random_diagram(rng, target, config.max_carrier);
    inst.source = std::move(source);
    inst.target = std::move(target);
    inst.functor = std::move(*f);
    return inst;
  }
  throw Error(ErrorKind::GenerationRetryExceeded, "no instance found", std::to_string(seed));
}

std::vector<FinFunctor> all_functors(const FinCategory& source, const FinCategory& target, std::size_t limit) {
  std::vector<FinFunctor> out;
  const std::size_t n = source.object_count();
  if (n == 0) return {FinFunctor::make(source, target, {}, {})};
  if (target.empty()) return out;
  std::vector<std::size_t> digits(n, 0);
  while (out.size() < limit) {
    std::vector<Obj> objects;
    for (auto d : digits) objects.emplace_back(d);
    FunctorSearch search(source, target, objects, static_cast<std::size_t>(-1));
    search.run([](std::vector<Mor>&) {},
               [&](const std::vector<Mor>& image) {
                 out.push_back(FinFunctor::make(source, target, objects, image));
                 return out.size() < limit;
               });
    std::size_t k = n;
    while (k > 0 && ++digits[k - 1] == target.object_count()) digits[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

TrialOutcome duality_trial(std::uint64_t seed, const SizeConfig& config) {
  const RandomInstance inst = random_instance(seed, config);
  TrialOutcome t;
  t.seed = seed;
  t.source_objects = inst.source.object_count();
  t.source_morphisms = inst.source.morphism_count();
  t.target_objects = inst.target.object_count();
  t.target_morphisms = inst.target.morphism_count();

  const DualityReport d = duality_check(inst.functor, inst.weight, inst.diagram);
  t.lhs_size = d.lhs.size();
  t.rhs_size = d.rhs.size();
  t.duality = d.bijection;

  const SetDiagram pulled = restrict(inst.diagram, inst.functor);
  const Weight extended(inst.target, lan(opposite(inst.functor), inst.weight.diagram()).diagram);
  const auto lhs_coend = weighted_colimit_coend(inst.weight, pulled);
  const auto rhs_coend = weighted_colimit_coend(extended, inst.diagram);
  t.oracle = tw_to_coend(inst.weight, pulled, d.lhs, lhs_coend).bijective() &&
             tw_to_coend(extended, inst.diagram, d.rhs, rhs_coend).bijective();

  const QuantReport q = cof_quant_check(inst.functor, inst.diagram);
  t.quant = q.report.bijection;
  t.quant_consistent = q.consistent_with_duality;
  return t;
}

std::vector<TrialOutcome> run_duality_trials(std::uint64_t root, std::size_t count, const SizeConfig& config,
                                             std::size_t threads) {
  std::vector<TrialOutcome> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        out[k] = duality_trial(derive_seed(root, k), config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace cofinal
