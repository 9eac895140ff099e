#include "cofinal/fincat.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <numeric>
#include <set>
#include <sstream>

namespace cofinal {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::UnitViolation: return "UnitViolation";
    case ErrorKind::TypingMismatch: return "TypingMismatch";
    case ErrorKind::CompositionNotPreserved: return "CompositionNotPreserved";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::GeneratorClosureTooLarge: return "GeneratorClosureTooLarge";
    case ErrorKind::SimplexBudgetExceeded: return "SimplexBudgetExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::GenerationRetryExceeded: return "GenerationRetryExceeded";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// FinCategory

FinCategory::FinCategory() : data_(std::make_shared<const Data>()) {}

FinCategory FinCategory::assemble(CategoryTable table, const ComposeFn& compose) {
  auto data = std::make_shared<Data>();
  const std::size_t n_obj = table.objects.size();
  const std::size_t n_mor = table.morphisms.size();
  if (table.src.size() != n_mor || table.tgt.size() != n_mor || table.identity.size() != n_obj) {
    throw Error(ErrorKind::InvalidInput, "inconsistent table sizes");
  }
  for (std::size_t a = 0; a < n_obj; ++a) {
    if (!data->object_index.emplace(table.objects[a], Obj(a)).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate object id", table.objects[a]);
    }
  }
  for (std::size_t m = 0; m < n_mor; ++m) {
    if (!data->morphism_index.emplace(table.morphisms[m], Mor(m)).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate morphism id", table.morphisms[m]);
    }
    if (!table.src[m].valid() || table.src[m].index() >= n_obj || !table.tgt[m].valid() ||
        table.tgt[m].index() >= n_obj) {
      throw Error(ErrorKind::TypingMismatch, "morphism endpoint out of range", table.morphisms[m]);
    }
  }
  for (std::size_t a = 0; a < n_obj; ++a) {
    const Mor id = table.identity[a];
    if (!id.valid() || id.index() >= n_mor || table.src[id.index()] != Obj(a) ||
        table.tgt[id.index()] != Obj(a)) {
      throw Error(ErrorKind::UnitViolation, "identity has wrong type", table.objects[a]);
    }
  }

  data->objects = std::move(table.objects);
  data->morphisms = std::move(table.morphisms);
  data->src = std::move(table.src);
  data->tgt = std::move(table.tgt);
  data->identity = std::move(table.identity);
  data->hom.resize(n_obj * n_obj);
  data->out.resize(n_obj);
  data->in.resize(n_obj);
  data->hom_position.resize(n_mor);
  data->out_position.resize(n_mor);
  data->in_position.resize(n_mor);
  for (std::size_t m = 0; m < n_mor; ++m) {
    const std::size_t s = data->src[m].index();
    const std::size_t t = data->tgt[m].index();
    auto& h = data->hom[s * n_obj + t];
    data->hom_position[m] = h.size();
    h.push_back(Mor(m));
    data->out_position[m] = data->out[s].size();
    data->out[s].push_back(Mor(m));
    data->in_position[m] = data->in[t].size();
    data->in[t].push_back(Mor(m));
  }

  const auto& names = data->morphisms;
  auto pair_name = [&](std::size_t g, std::size_t f) {
    return "(" + names[g] + ", " + names[f] + ")";
  };

  data->after.resize(n_mor);
  for (std::size_t f = 0; f < n_mor; ++f) {
    const auto& next = data->out[data->tgt[f].index()];
    auto& row = data->after[f];
    row.reserve(next.size());
    for (Mor g : next) {
      const Mor gf = compose(g, Mor(f));
      if (!gf.valid()) {
        throw Error(ErrorKind::MissingComposite, "no composite for composable pair",
                    pair_name(g.index(), f));
      }
      if (gf.index() >= n_mor || data->src[gf.index()] != data->src[f] ||
          data->tgt[gf.index()] != data->tgt[g.index()]) {
        throw Error(ErrorKind::TypingMismatch, "composite has the wrong source or target",
                    pair_name(g.index(), f));
      }
      row.push_back(gf);
    }
  }

  auto comp = [&](std::size_t g, std::size_t f) {
    return data->after[f][data->out_position[g]].index();
  };
  for (std::size_t f = 0; f < n_mor; ++f) {
    const std::size_t left = data->identity[data->tgt[f].index()].index();
    const std::size_t right = data->identity[data->src[f].index()].index();
    if (comp(left, f) != f || comp(f, right) != f) {
      throw Error(ErrorKind::UnitViolation, "identity law fails", names[f]);
    }
  }
  for (std::size_t f = 0; f < n_mor; ++f) {
    for (Mor g : data->out[data->tgt[f].index()]) {
      const std::size_t gf = comp(g.index(), f);
      for (Mor h : data->out[data->tgt[g.index()].index()]) {
        if (comp(h.index(), gf) != comp(comp(h.index(), g.index()), f)) {
          throw Error(ErrorKind::AssociativityViolation, "h(gf) != (hg)f",
                      "(" + names[h.index()] + ", " + names[g.index()] + ", " + names[f] + ")");
        }
      }
    }
  }
  return FinCategory(std::move(data));
}

std::optional<Obj> FinCategory::find_object(std::string_view id) const {
  auto it = data_->object_index.find(id);
  if (it == data_->object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<Mor> FinCategory::find_morphism(std::string_view id) const {
  auto it = data_->morphism_index.find(id);
  if (it == data_->morphism_index.end()) return std::nullopt;
  return it->second;
}

Obj FinCategory::object(std::string_view id) const {
  if (auto a = find_object(id)) return *a;
  throw Error(ErrorKind::UnknownObject, "no object with this id", std::string(id));
}

Mor FinCategory::morphism(std::string_view id) const {
  if (auto m = find_morphism(id)) return *m;
  throw Error(ErrorKind::InvalidInput, "no morphism with this id", std::string(id));
}

Mor FinCategory::compose(Mor g, Mor f) const {
  if (tgt(f) != src(g)) {
    throw Error(ErrorKind::TypingMismatch, "morphisms are not composable",
                "(" + name(g) + ", " + name(f) + ")");
  }
  return data_->after[f.index()][data_->out_position[g.index()]];
}

Mor FinCategory::compose_path(std::span<const Mor> path) const {
  Mor acc = path.front();
  for (std::size_t i = 1; i < path.size(); ++i) acc = compose(path[i], acc);
  return acc;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  if (a.data_ == b.data_) return true;
  const auto& x = *a.data_;
  const auto& y = *b.data_;
  return x.objects == y.objects && x.morphisms == y.morphisms && x.src == y.src &&
         x.tgt == y.tgt && x.identity == y.identity && x.after == y.after;
}

// ---------------------------------------------------------------------------
// Raw descriptions

std::string identity_name(std::string_view object) { return "id_" + std::string(object); }

FinCategory validate_category(const CategorySpec& spec) {
  CategoryTable table;
  table.objects = spec.objects;
  std::map<std::string, Obj, std::less<>> obj_index;
  for (std::size_t a = 0; a < spec.objects.size(); ++a) {
    if (!obj_index.emplace(spec.objects[a], Obj(a)).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate object id", spec.objects[a]);
    }
    table.morphisms.push_back(identity_name(spec.objects[a]));
    table.src.push_back(Obj(a));
    table.tgt.push_back(Obj(a));
    table.identity.push_back(Mor(a));
  }
  auto lookup_obj = [&](const std::string& id) {
    auto it = obj_index.find(id);
    if (it == obj_index.end()) throw Error(ErrorKind::UnknownObject, "unknown object", id);
    return it->second;
  };
  for (const auto& m : spec.morphisms) {
    table.morphisms.push_back(m.id);
    table.src.push_back(lookup_obj(m.src));
    table.tgt.push_back(lookup_obj(m.tgt));
  }
  std::map<std::string, Mor, std::less<>> mor_index;
  for (std::size_t m = 0; m < table.morphisms.size(); ++m) {
    if (!mor_index.emplace(table.morphisms[m], Mor(m)).second) {
      throw Error(ErrorKind::InvalidInput, "duplicate morphism id", table.morphisms[m]);
    }
  }
  auto lookup_mor = [&](const std::string& id) {
    auto it = mor_index.find(id);
    if (it == mor_index.end()) throw Error(ErrorKind::InvalidInput, "unknown morphism", id);
    return it->second;
  };
  auto is_id = [&](Mor m) { return table.identity[table.src[m.index()].index()] == m; };

  std::map<std::pair<std::int32_t, std::int32_t>, Mor> table_entries;
  for (const auto& [g_id, f_id, gf_id] : spec.composites) {
    const Mor g = lookup_mor(g_id);
    const Mor f = lookup_mor(f_id);
    const Mor gf = lookup_mor(gf_id);
    const std::string witness = "(" + g_id + ", " + f_id + ")";
    if (table.tgt[f.index()] != table.src[g.index()]) {
      throw Error(ErrorKind::TypingMismatch, "composite listed for a non-composable pair", witness);
    }
    if (table.src[gf.index()] != table.src[f.index()] ||
        table.tgt[gf.index()] != table.tgt[g.index()]) {
      throw Error(ErrorKind::TypingMismatch, "composite has the wrong source or target", witness);
    }
    if ((is_id(g) && gf != f) || (is_id(f) && gf != g)) {
      throw Error(ErrorKind::UnitViolation, "composite with an identity must be the other factor",
                  witness);
    }
    auto [it, inserted] = table_entries.emplace(std::pair{g.value, f.value}, gf);
    if (!inserted && it->second != gf) {
      throw Error(ErrorKind::InvalidInput, "conflicting composites listed", witness);
    }
  }
  const auto identity = table.identity;
  const auto src = table.src;
  return FinCategory::assemble(std::move(table), [&](Mor g, Mor f) {
    if (identity[src[g.index()].index()] == g) return f;
    if (identity[src[f.index()].index()] == f) return g;
    auto it = table_entries.find({g.value, f.value});
    return it == table_entries.end() ? Mor() : it->second;
  });
}

CategorySpec describe(const FinCategory& c) {
  CategorySpec spec;
  for (std::size_t a = 0; a < c.object_count(); ++a) spec.objects.push_back(c.name(Obj(a)));
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor f(m);
    if (c.is_identity(f)) continue;
    spec.morphisms.push_back({c.name(f), c.name(c.src(f)), c.name(c.tgt(f))});
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor f(m);
    if (c.is_identity(f)) continue;
    for (Mor g : c.out(c.tgt(f))) {
      if (c.is_identity(g)) continue;
      spec.composites.push_back({c.name(g), c.name(f), c.name(c.compose(g, f))});
    }
  }
  return spec;
}

FinCategory opposite(const FinCategory& c) {
  CategoryTable table;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    table.objects.push_back(c.name(Obj(a)));
    table.identity.push_back(c.identity(Obj(a)));
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    table.morphisms.push_back(c.name(Mor(m)));
    table.src.push_back(c.tgt(Mor(m)));
    table.tgt.push_back(c.src(Mor(m)));
  }
  return FinCategory::assemble(std::move(table), [&](Mor g, Mor f) { return c.compose(f, g); });
}

FinCategory product(const FinCategory& c, const FinCategory& d) {
  CategoryTable table;
  for (std::size_t i = 0; i < c.object_count(); ++i) {
    for (std::size_t j = 0; j < d.object_count(); ++j) {
      table.objects.push_back("(" + c.name(Obj(i)) + "," + d.name(Obj(j)) + ")");
      table.identity.push_back(product_morphism(d, c.identity(Obj(i)), d.identity(Obj(j))));
    }
  }
  for (std::size_t f = 0; f < c.morphism_count(); ++f) {
    for (std::size_t g = 0; g < d.morphism_count(); ++g) {
      const Mor mf(f), mg(g);
      const Obj s = product_object(d, c.src(mf), d.src(mg));
      const Obj t = product_object(d, c.tgt(mf), d.tgt(mg));
      if (c.is_identity(mf) && d.is_identity(mg)) {
        table.morphisms.push_back(identity_name(table.objects[s.index()]));
      } else {
        table.morphisms.push_back("(" + c.name(mf) + "," + d.name(mg) + ")");
      }
      table.src.push_back(s);
      table.tgt.push_back(t);
    }
  }
  const std::size_t nd = d.morphism_count();
  return FinCategory::assemble(std::move(table), [&](Mor g, Mor f) {
    const Mor g1(g.index() / nd), g2(g.index() % nd);
    const Mor f1(f.index() / nd), f2(f.index() % nd);
    return product_morphism(d, c.compose(g1, f1), d.compose(g2, f2));
  });
}

std::vector<std::size_t> connected_components(const FinCategory& c, std::size_t* count) {
  const std::size_t n = c.object_count();
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t a = 0; a < n; ++a) sets.make_set(a);
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    sets.union_set(c.src(Mor(m)).index(), c.tgt(Mor(m)).index());
  }
  std::vector<std::size_t> component(n);
  std::map<std::size_t, std::size_t> numbering;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t root = sets.find_set(a);
    component[a] = numbering.emplace(root, numbering.size()).first->second;
  }
  if (count) *count = numbering.size();
  return component;
}

bool is_loop_free(const FinCategory& c) {
  const std::size_t n = c.object_count();
  for (std::size_t a = 0; a < n; ++a) {
    if (c.hom(Obj(a), Obj(a)).size() != 1) return false;
  }
  // Kahn's algorithm on the graph of non-identity morphisms.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && !c.hom(Obj(a), Obj(b)).empty()) ++indegree[b];
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t a = 0; a < n; ++a) {
    if (indegree[a] == 0) ready.push_back(a);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t a = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && !c.hom(Obj(a), Obj(b)).empty() && --indegree[b] == 0) ready.push_back(b);
    }
  }
  return seen == n;
}

// ---------------------------------------------------------------------------
// Functors

FinFunctor FinFunctor::make(FinCategory source, FinCategory target, std::vector<Obj> on_objects,
                            std::vector<Mor> on_morphisms) {
  if (on_objects.size() != source.object_count() ||
      on_morphisms.size() != source.morphism_count()) {
    throw Error(ErrorKind::InvalidInput, "functor maps do not cover the source");
  }
  for (std::size_t a = 0; a < on_objects.size(); ++a) {
    if (!on_objects[a].valid() || on_objects[a].index() >= target.object_count()) {
      throw Error(ErrorKind::TypingMismatch, "object image out of range", source.name(Obj(a)));
    }
  }
  for (std::size_t m = 0; m < on_morphisms.size(); ++m) {
    const Mor f(m);
    const Mor img = on_morphisms[m];
    if (!img.valid() || img.index() >= target.morphism_count() ||
        target.src(img) != on_objects[source.src(f).index()] ||
        target.tgt(img) != on_objects[source.tgt(f).index()]) {
      throw Error(ErrorKind::TypingMismatch, "morphism image has the wrong type", source.name(f));
    }
  }
  for (std::size_t a = 0; a < on_objects.size(); ++a) {
    const Mor id = source.identity(Obj(a));
    if (on_morphisms[id.index()] != target.identity(on_objects[a])) {
      throw Error(ErrorKind::CompositionNotPreserved, "identity not preserved", source.name(id));
    }
  }
  for (std::size_t m = 0; m < source.morphism_count(); ++m) {
    const Mor f(m);
    for (Mor g : source.out(source.tgt(f))) {
      const Mor lhs = on_morphisms[source.compose(g, f).index()];
      const Mor rhs = target.compose(on_morphisms[g.index()], on_morphisms[m]);
      if (lhs != rhs) {
        throw Error(ErrorKind::CompositionNotPreserved, "F(g∘f) != F(g)∘F(f)",
                    "(" + source.name(g) + ", " + source.name(f) + ")");
      }
    }
  }
  FinFunctor result;
  result.source_ = std::move(source);
  result.target_ = std::move(target);
  result.on_objects_ = std::move(on_objects);
  result.on_morphisms_ = std::move(on_morphisms);
  return result;
}

FinFunctor validate_functor(const FunctorSpec& spec, const FinCategory& source,
                            const FinCategory& target) {
  std::vector<Obj> on_objects(source.object_count());
  for (std::size_t a = 0; a < source.object_count(); ++a) {
    const auto& id = source.name(Obj(a));
    auto it = spec.on_objects.find(id);
    if (it == spec.on_objects.end()) {
      throw Error(ErrorKind::InvalidInput, "object image missing", id);
    }
    on_objects[a] = target.object(it->second);
  }
  for (const auto& [from, _] : spec.on_objects) source.object(from);

  std::vector<Mor> on_morphisms(source.morphism_count());
  for (std::size_t m = 0; m < source.morphism_count(); ++m) {
    const Mor f(m);
    const Obj s = on_objects[source.src(f).index()];
    const Obj t = on_objects[source.tgt(f).index()];
    auto it = spec.on_morphisms.find(source.name(f));
    if (it != spec.on_morphisms.end()) {
      const Mor img = target.morphism(it->second);
      if (target.src(img) != s || target.tgt(img) != t) {
        throw Error(ErrorKind::TypingMismatch, "morphism image has the wrong type", source.name(f));
      }
      on_morphisms[m] = img;
    } else if (source.is_identity(f)) {
      on_morphisms[m] = target.identity(s);
    } else if (target.hom(s, t).size() == 1) {
      on_morphisms[m] = target.hom(s, t).front();
    } else {
      throw Error(ErrorKind::InvalidInput, "morphism image missing", source.name(f));
    }
  }
  for (const auto& [from, _] : spec.on_morphisms) source.morphism(from);
  return FinFunctor::make(source, target, std::move(on_objects), std::move(on_morphisms));
}

FunctorSpec describe(const FinFunctor& f) {
  FunctorSpec spec;
  const auto& s = f.source();
  const auto& t = f.target();
  for (std::size_t a = 0; a < s.object_count(); ++a) {
    spec.on_objects[s.name(Obj(a))] = t.name(f(Obj(a)));
  }
  for (std::size_t m = 0; m < s.morphism_count(); ++m) {
    if (s.is_identity(Mor(m))) continue;
    spec.on_morphisms[s.name(Mor(m))] = t.name(f(Mor(m)));
  }
  return spec;
}

FinFunctor identity_functor(const FinCategory& c) {
  std::vector<Obj> objs(c.object_count());
  std::vector<Mor> mors(c.morphism_count());
  for (std::size_t a = 0; a < objs.size(); ++a) objs[a] = Obj(a);
  for (std::size_t m = 0; m < mors.size(); ++m) mors[m] = Mor(m);
  return FinFunctor::make(c, c, std::move(objs), std::move(mors));
}

FinFunctor opposite(const FinFunctor& f) {
  return FinFunctor::make(opposite(f.source()), opposite(f.target()), f.object_map(),
                          f.morphism_map());
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorKind::ShapeMismatch, "functors are not composable");
  }
  std::vector<Obj> objs;
  std::vector<Mor> mors;
  for (Obj a : f.object_map()) objs.push_back(g(a));
  for (Mor m : f.morphism_map()) mors.push_back(g(m));
  return FinFunctor::make(f.source(), g.target(), std::move(objs), std::move(mors));
}

FinFunctor object_functor(const FinCategory& c, Obj a) {
  if (!a.valid() || a.index() >= c.object_count()) {
    throw Error(ErrorKind::UnknownObject, "object out of range");
  }
  return FinFunctor::make(point(), c, {a}, {c.identity(a)});
}

FinFunctor terminal_functor(const FinCategory& c) {
  return FinFunctor::make(c, point(), std::vector<Obj>(c.object_count(), Obj(0)),
                          std::vector<Mor>(c.morphism_count(), Mor(0)));
}

FinFunctor first_projection(const FinCategory& c, const FinCategory& d) {
  std::vector<Obj> objs;
  std::vector<Mor> mors;
  for (std::size_t i = 0; i < c.object_count(); ++i)
    for (std::size_t j = 0; j < d.object_count(); ++j) objs.push_back(Obj(i));
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    for (std::size_t g = 0; g < d.morphism_count(); ++g) mors.push_back(Mor(f));
  return FinFunctor::make(product(c, d), c, std::move(objs), std::move(mors));
}

FinFunctor second_projection(const FinCategory& c, const FinCategory& d) {
  std::vector<Obj> objs;
  std::vector<Mor> mors;
  for (std::size_t i = 0; i < c.object_count(); ++i)
    for (std::size_t j = 0; j < d.object_count(); ++j) objs.push_back(Obj(j));
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    for (std::size_t g = 0; g < d.morphism_count(); ++g) mors.push_back(Mor(g));
  return FinFunctor::make(product(c, d), d, std::move(objs), std::move(mors));
}

// ---------------------------------------------------------------------------
// Diagrams

SetDiagram SetDiagram::make(FinCategory shape, std::vector<std::vector<std::string>> labels,
                            std::vector<std::vector<std::size_t>> action) {
  if (labels.size() != shape.object_count() || action.size() != shape.morphism_count()) {
    throw Error(ErrorKind::InvalidInput, "diagram does not cover its shape");
  }
  for (std::size_t m = 0; m < action.size(); ++m) {
    const Mor f(m);
    const std::size_t n_src = labels[shape.src(f).index()].size();
    const std::size_t n_tgt = labels[shape.tgt(f).index()].size();
    if (action[m].size() != n_src ||
        std::any_of(action[m].begin(), action[m].end(), [&](std::size_t y) { return y >= n_tgt; })) {
      throw Error(ErrorKind::TypingMismatch, "action is not a function between the carriers",
                  shape.name(f));
    }
  }
  for (std::size_t a = 0; a < shape.object_count(); ++a) {
    const auto& act = action[shape.identity(Obj(a)).index()];
    for (std::size_t x = 0; x < act.size(); ++x) {
      if (act[x] != x) {
        throw Error(ErrorKind::FunctorialityViolation, "identity does not act trivially",
                    shape.name(shape.identity(Obj(a))));
      }
    }
  }
  for (std::size_t m = 0; m < action.size(); ++m) {
    const Mor f(m);
    for (Mor g : shape.out(shape.tgt(f))) {
      const auto& gf = action[shape.compose(g, f).index()];
      for (std::size_t x = 0; x < gf.size(); ++x) {
        if (gf[x] != action[g.index()][action[m][x]]) {
          throw Error(ErrorKind::FunctorialityViolation, "X(g∘f) != X(g)∘X(f)",
                      "(" + shape.name(g) + ", " + shape.name(f) + ")");
        }
      }
    }
  }
  SetDiagram result;
  result.shape_ = std::move(shape);
  result.labels_ = std::move(labels);
  result.action_ = std::move(action);
  return result;
}

std::optional<std::size_t> SetDiagram::find(Obj a, std::string_view label) const {
  const auto& l = labels_[a.index()];
  auto it = std::find(l.begin(), l.end(), label);
  if (it == l.end()) return std::nullopt;
  return static_cast<std::size_t>(it - l.begin());
}

SetDiagram validate_diagram(const DiagramSpec& spec, const FinCategory& shape) {
  std::vector<std::vector<std::string>> labels(shape.object_count());
  for (std::size_t a = 0; a < shape.object_count(); ++a) {
    const auto& id = shape.name(Obj(a));
    auto it = spec.sets.find(id);
    if (it == spec.sets.end()) throw Error(ErrorKind::InvalidInput, "set missing for object", id);
    labels[a] = it->second;
    std::set<std::string> unique(labels[a].begin(), labels[a].end());
    if (unique.size() != labels[a].size()) {
      throw Error(ErrorKind::InvalidInput, "duplicate element label", id);
    }
  }
  for (const auto& [id, _] : spec.sets) shape.object(id);

  std::vector<std::vector<std::size_t>> action(shape.morphism_count());
  for (std::size_t m = 0; m < shape.morphism_count(); ++m) {
    const Mor f(m);
    const auto& from = labels[shape.src(f).index()];
    const auto& to = labels[shape.tgt(f).index()];
    auto it = spec.functions.find(shape.name(f));
    if (it == spec.functions.end()) {
      if (shape.is_identity(f)) {
        action[m].resize(from.size());
        std::iota(action[m].begin(), action[m].end(), std::size_t{0});
        continue;
      }
      if (!from.empty() && to.size() != 1) {
        throw Error(ErrorKind::InvalidInput, "function missing for morphism", shape.name(f));
      }
      action[m].assign(from.size(), 0);
      continue;
    }
    for (const auto& x : from) {
      auto img = it->second.find(x);
      if (img == it->second.end()) {
        throw Error(ErrorKind::InvalidInput, "function undefined on element",
                    shape.name(f) + ":" + x);
      }
      auto pos = std::find(to.begin(), to.end(), img->second);
      if (pos == to.end()) {
        throw Error(ErrorKind::InvalidInput, "function value outside the target set",
                    shape.name(f) + ":" + img->second);
      }
      action[m].push_back(static_cast<std::size_t>(pos - to.begin()));
    }
    if (it->second.size() != from.size()) {
      throw Error(ErrorKind::InvalidInput, "function defined outside its source set", shape.name(f));
    }
  }
  for (const auto& [id, _] : spec.functions) shape.morphism(id);
  return SetDiagram::make(shape, std::move(labels), std::move(action));
}

DiagramSpec describe(const SetDiagram& x) {
  DiagramSpec spec;
  const auto& shape = x.shape();
  for (std::size_t a = 0; a < shape.object_count(); ++a) {
    const auto l = x.labels(Obj(a));
    spec.sets[shape.name(Obj(a))] = {l.begin(), l.end()};
  }
  for (std::size_t m = 0; m < shape.morphism_count(); ++m) {
    const Mor f(m);
    if (shape.is_identity(f)) continue;
    auto& fn = spec.functions[shape.name(f)];
    for (std::size_t e = 0; e < x.size(shape.src(f)); ++e) {
      fn[x.label(shape.src(f), e)] = x.label(shape.tgt(f), x.apply(f, e));
    }
  }
  return spec;
}

SetDiagram constant_diagram(const FinCategory& shape, std::vector<std::string> labels) {
  std::vector<std::size_t> id(labels.size());
  std::iota(id.begin(), id.end(), std::size_t{0});
  return SetDiagram::make(shape, std::vector(shape.object_count(), labels),
                          std::vector(shape.morphism_count(), id));
}

// ---------------------------------------------------------------------------
// Quotients

FinSetQuotient::FinSetQuotient(std::vector<std::string> generators,
                               std::vector<std::pair<std::size_t, std::size_t>> witnesses)
    : generators_(std::move(generators)), witnesses_(std::move(witnesses)) {
  const std::size_t n = generators_.size();
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t g = 0; g < n; ++g) sets.make_set(g);
  for (auto [x, y] : witnesses_) {
    if (x >= n || y >= n) throw Error(ErrorKind::InternalInvariant, "witness out of range");
    sets.union_set(x, y);
  }
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t g = 0; g < n; ++g) by_root[sets.find_set(g)].push_back(g);
  auto by_label = [this](std::size_t a, std::size_t b) { return generators_[a] < generators_[b]; };
  for (auto& [_, members] : by_root) {
    std::sort(members.begin(), members.end(), by_label);
    classes_.push_back(std::move(members));
  }
  std::sort(classes_.begin(), classes_.end(),
            [&](const auto& a, const auto& b) { return by_label(a.front(), b.front()); });
  class_of_.resize(n);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (std::size_t g : classes_[c]) class_of_[g] = c;
  }
}

// ---------------------------------------------------------------------------
// Standard categories

Permutation parse_cycles(std::string_view text, std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::InvalidInput, "bad cycle notation", std::string(text));
    ++i;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw Error(ErrorKind::InvalidInput, "unterminated cycle", std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t value = 0;
      const std::size_t start = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') value = value * 10 + (text[i++] - '0');
      if (i == start || value == 0 || value > n) {
        throw Error(ErrorKind::InvalidInput, "letter out of range in cycle", std::string(text));
      }
      cycle.push_back(value - 1);
    }
    std::set<std::size_t> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) {
      throw Error(ErrorKind::InvalidInput, "repeated letter in cycle", std::string(text));
    }
    // A cycle (a b c) sends a→b→c→a; cycles compose right to left.
    Permutation c(n);
    std::iota(c.begin(), c.end(), std::size_t{0});
    for (std::size_t k = 0; k < cycle.size(); ++k) c[cycle[k]] = cycle[(k + 1) % cycle.size()];
    Permutation next(n);
    for (std::size_t x = 0; x < n; ++x) next[x] = p[c[x]];
    p = std::move(next);
    skip_space();
  }
  return p;
}

std::string permutation_name(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i] + 1);
  }
  return s + "]";
}

std::optional<StandardKind> parse_standard_kind(std::string_view name) {
  static const std::map<std::string_view, StandardKind> kinds{
      {"point", StandardKind::point},
      {"walking_arrow", StandardKind::walking_arrow},
      {"discrete", StandardKind::discrete},
      {"chain_poset", StandardKind::chain_poset},
      {"span", StandardKind::span},
      {"cospan", StandardKind::cospan},
      {"group", StandardKind::group},
      {"fin_inj_leq", StandardKind::fin_inj_leq},
  };
  auto it = kinds.find(name);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

FinCategory build_standard(StandardKind kind, const StandardParams& params) {
  switch (kind) {
    case StandardKind::point: return point();
    case StandardKind::walking_arrow: return walking_arrow();
    case StandardKind::discrete: return discrete(params.n);
    case StandardKind::chain_poset: return chain_poset(params.n);
    case StandardKind::span:
      return validate_category({{"0", "1", "2"}, {{"f", "0", "1"}, {"g", "0", "2"}}, {}});
    case StandardKind::cospan:
      return validate_category({{"0", "1", "2"}, {{"f", "0", "2"}, {"g", "1", "2"}}, {}});
    case StandardKind::group:
      return permutation_group(params.n, params.generators, params.max_group_order);
    case StandardKind::fin_inj_leq: return fin_inj_leq(params.n);
  }
  throw Error(ErrorKind::InvalidInput, "unknown standard kind");
}

FinCategory point() { return validate_category({{"*"}, {}, {}}); }

FinCategory walking_arrow() { return validate_category({{"0", "1"}, {{"f", "0", "1"}}, {}}); }

FinCategory discrete(std::size_t n) {
  CategorySpec spec;
  for (std::size_t i = 0; i < n; ++i) spec.objects.push_back(std::to_string(i));
  return validate_category(spec);
}

FinCategory chain_poset(std::size_t n) {
  CategorySpec spec;
  auto arrow = [](std::size_t i, std::size_t j) {
    return std::to_string(i) + "<" + std::to_string(j);
  };
  for (std::size_t i = 0; i < n; ++i) spec.objects.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      spec.morphisms.push_back({arrow(i, j), std::to_string(i), std::to_string(j)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        spec.composites.push_back({arrow(j, k), arrow(i, j), arrow(i, k)});
  return validate_category(spec);
}

FinCategory permutation_group(std::size_t letters, const std::vector<Permutation>& generators,
                              std::size_t max_order) {
  for (const auto& g : generators) {
    Permutation sorted = g;
    std::sort(sorted.begin(), sorted.end());
    Permutation expected(letters);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    if (sorted != expected) throw Error(ErrorKind::InvalidInput, "not a permutation", permutation_name(g));
  }
  Permutation id(letters);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::set<Permutation> elements{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier) {
      for (const auto& g : generators) {
        Permutation q(letters);
        for (std::size_t x = 0; x < letters; ++x) q[x] = g[p[x]];
        if (elements.insert(q).second) {
          if (elements.size() > max_order) {
            throw Error(ErrorKind::GeneratorClosureTooLarge, "group order exceeds the cap",
                        std::to_string(max_order));
          }
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  // std::set orders lexicographically, so the identity comes first.
  std::vector<Permutation> list(elements.begin(), elements.end());
  std::map<Permutation, Mor> index;
  CategoryTable table;
  table.objects = {"*"};
  table.identity = {Mor(0)};
  for (std::size_t i = 0; i < list.size(); ++i) {
    index.emplace(list[i], Mor(i));
    table.morphisms.push_back(i == 0 ? identity_name("*") : permutation_name(list[i]));
    table.src.push_back(Obj(0));
    table.tgt.push_back(Obj(0));
  }
  return FinCategory::assemble(std::move(table), [&](Mor g, Mor f) {
    const auto& pg = list[g.index()];
    const auto& pf = list[f.index()];
    Permutation q(letters);
    for (std::size_t x = 0; x < letters; ++x) q[x] = pg[pf[x]];
    return index.at(q);
  });
}

namespace {

std::vector<Permutation> adjacent_transpositions(std::size_t n) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Permutation t(n);
    std::iota(t.begin(), t.end(), std::size_t{0});
    std::swap(t[i], t[i + 1]);
    gens.push_back(std::move(t));
  }
  return gens;
}

struct Injection {
  std::size_t from;
  std::size_t to;
  std::vector<std::size_t> images;  // 0-based values in {0..to-1}

  auto operator<=>(const Injection&) const = default;
};

std::string injection_name(const Injection& u) {
  std::string s = std::to_string(u.from) + "->" + std::to_string(u.to) + ":[";
  for (std::size_t i = 0; i < u.images.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(u.images[i] + 1);
  }
  return s + "]";
}

}  // namespace

FinCategory symmetric_group(std::size_t n) {
  return permutation_group(n, adjacent_transpositions(n));
}

FinCategory fin_inj_leq(std::size_t n) {
  std::vector<Injection> list;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      // k-permutations of {0..j-1} in lexicographic order
      std::vector<std::size_t> pool(j);
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      std::set<std::vector<std::size_t>> seen;
      do {
        std::vector<std::size_t> prefix(pool.begin(), pool.begin() + static_cast<long>(k));
        seen.insert(prefix);
      } while (std::next_permutation(pool.begin(), pool.end()));
      for (const auto& images : seen) list.push_back({k, j, images});
    }
  }
  std::map<Injection, Mor> index;
  CategoryTable table;
  for (std::size_t k = 0; k <= n; ++k) table.objects.push_back(std::to_string(k));
  table.identity.resize(n + 1);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& u = list[i];
    index.emplace(u, Mor(i));
    bool is_id = u.from == u.to;
    for (std::size_t x = 0; is_id && x < u.images.size(); ++x) is_id = u.images[x] == x;
    if (is_id) table.identity[u.from] = Mor(i);
    table.morphisms.push_back(is_id ? identity_name(std::to_string(u.from)) : injection_name(u));
    table.src.push_back(Obj(u.from));
    table.tgt.push_back(Obj(u.to));
  }
  return FinCategory::assemble(std::move(table), [&](Mor g, Mor f) {
    const auto& ug = list[g.index()];
    const auto& uf = list[f.index()];
    Injection h{uf.from, ug.to, {}};
    for (std::size_t x : uf.images) h.images.push_back(ug.images[x]);
    return index.at(h);
  });
}

FinFunctor fin_inj_inclusion(std::size_t n) {
  const FinCategory group = symmetric_group(n);
  const FinCategory target = fin_inj_leq(n);
  const Obj top(n);
  std::vector<Mor> mors;
  Permutation id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  // Group elements are listed in lexicographic order, as are the
  // endomorphisms of the top object of fin_inj_leq(n).
  const auto endos = target.hom(top, top);
  if (endos.size() != group.morphism_count()) {
    throw Error(ErrorKind::InternalInvariant, "symmetric group order mismatch");
  }
  for (std::size_t m = 0; m < group.morphism_count(); ++m) mors.push_back(endos[m]);
  return FinFunctor::make(group, target, {top}, std::move(mors));
}

}  // namespace cofinal
