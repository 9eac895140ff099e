#include "cofinal/constructions.hpp"

#include <array>
#include <map>

namespace cofinal {

Obj CommaResult::object_at(Obj b, Mor u) const {
  return Obj(offset[b.index()] + base.hom_position(u));
}

Mor CommaResult::morphism_at(Obj o, Mor w) const {
  const FinCategory& j = source;
  const std::size_t pos = variance == Variance::lax ? j.out_position(w) : j.in_position(w);
  return Mor(morphism_start[o.index()] + pos);
}

namespace {

std::string pair_name(const std::string& b, const std::string& u) {
  return "(" + b + "," + u + ")";
}

}  // namespace

CommaResult comma(const FinFunctor& f, Obj a, Variance variance) {
  const FinCategory& j = f.source();
  const FinCategory& i = f.target();
  if (!a.valid() || a.index() >= i.object_count()) {
    throw Error(ErrorKind::UnknownObject, "base object not in the target category");
  }
  const bool lax = variance == Variance::lax;

  CommaResult r;
  r.source = j;
  r.base = i;
  r.base_object = a;
  r.variance = variance;
  CategoryTable table;
  for (std::size_t b = 0; b < j.object_count(); ++b) {
    r.offset.push_back(r.fiber_source.size());
    const Obj fb = f(Obj(b));
    for (Mor u : lax ? i.hom(a, fb) : i.hom(fb, a)) {
      r.fiber_source.push_back(Obj(b));
      r.fiber_arrow.push_back(u);
      table.objects.push_back(pair_name(j.name(Obj(b)), i.name(u)));
    }
  }
  const std::size_t n_obj = r.fiber_source.size();
  table.identity.resize(n_obj);

  // Each morphism is (anchor object, w); the other endpoint is forced.
  std::vector<Mor> over;
  for (std::size_t o = 0; o < n_obj; ++o) {
    r.morphism_start.push_back(over.size());
    const Obj b = r.fiber_source[o];
    const Mor u = r.fiber_arrow[o];
    for (Mor w : lax ? j.out(b) : j.in(b)) {
      const Mor idx(over.size());
      over.push_back(w);
      Obj other;
      if (lax) {
        other = r.object_at(j.tgt(w), i.compose(f(w), u));
        table.src.push_back(Obj(o));
        table.tgt.push_back(other);
      } else {
        other = r.object_at(j.src(w), i.compose(u, f(w)));
        table.src.push_back(other);
        table.tgt.push_back(Obj(o));
      }
      if (j.is_identity(w)) {
        table.identity[o] = idx;
        table.morphisms.push_back(identity_name(table.objects[o]));
      } else {
        table.morphisms.push_back(j.name(w) + "@" + table.objects[o]);
      }
    }
  }
  const auto src = table.src;
  const auto tgt = table.tgt;
  r.category = FinCategory::assemble(std::move(table), [&](Mor g, Mor h) {
    const Mor w = j.compose(over[g.index()], over[h.index()]);
    return r.morphism_at(lax ? src[h.index()] : tgt[g.index()], w);
  });
  r.projection = FinFunctor::make(r.category, j, r.fiber_source, over);
  return r;
}

CommaResult lax_fiber(const FinFunctor& f, Obj a) { return comma(f, a, Variance::lax); }

CommaResult oplax_fiber(const FinFunctor& f, Obj a) { return comma(f, a, Variance::oplax); }

FinFunctor lax_fiber_restriction(const CommaResult& to_fiber, const CommaResult& from_fiber,
                                 const FinFunctor& f, Mor v) {
  const FinCategory& i = f.target();
  if (to_fiber.variance != Variance::lax || from_fiber.variance != Variance::lax ||
      i.src(v) != to_fiber.base_object || i.tgt(v) != from_fiber.base_object) {
    throw Error(ErrorKind::ShapeMismatch, "fibers do not match the morphism");
  }
  const FinCategory& source = from_fiber.category;
  std::vector<Obj> objs(source.object_count());
  for (std::size_t o = 0; o < objs.size(); ++o) {
    const Mor u = i.compose(from_fiber.fiber_arrow[o], v);
    objs[o] = to_fiber.object_at(from_fiber.fiber_source[o], u);
  }
  std::vector<Mor> mors(source.morphism_count());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    const Obj o = source.src(Mor(m));
    mors[m] = to_fiber.morphism_at(objs[o.index()], from_fiber.projection(Mor(m)));
  }
  return FinFunctor::make(source, to_fiber.category, std::move(objs), std::move(mors));
}

TwistedArrowResult twisted_arrow(const FinCategory& c) {
  TwistedArrowResult r;
  CategoryTable table;
  const std::size_t n = c.morphism_count();
  for (std::size_t u = 0; u < n; ++u) table.objects.push_back(c.name(Mor(u)));
  table.identity.resize(n);

  std::map<std::array<std::int32_t, 4>, Mor> index;  // (u, v, g, h)
  for (std::size_t ui = 0; ui < n; ++ui) {
    const Mor u(ui);
    for (std::size_t vi = 0; vi < n; ++vi) {
      const Mor v(vi);
      for (Mor g : c.hom(c.src(u), c.src(v))) {
        const Mor vg = c.compose(v, g);
        for (Mor h : c.hom(c.tgt(v), c.tgt(u))) {
          if (c.compose(h, vg) != u) continue;
          const Mor idx(r.lower.size());
          index.emplace(std::array{u.value, v.value, g.value, h.value}, idx);
          r.lower.push_back(g);
          r.upper.push_back(h);
          table.src.push_back(Obj(ui));
          table.tgt.push_back(Obj(vi));
          if (ui == vi && c.is_identity(g) && c.is_identity(h)) {
            table.identity[ui] = idx;
            table.morphisms.push_back(identity_name(c.name(u)));
          } else {
            table.morphisms.push_back("<" + c.name(g) + "," + c.name(h) + ">:" + c.name(u) + "->" +
                                      c.name(v));
          }
        }
      }
    }
  }
  const auto src = table.src;
  const auto tgt = table.tgt;
  r.category = FinCategory::assemble(std::move(table), [&](Mor second, Mor first) {
    const Mor g = c.compose(r.lower[second.index()], r.lower[first.index()]);
    const Mor h = c.compose(r.upper[first.index()], r.upper[second.index()]);
    auto it = index.find({src[first.index()].value, tgt[second.index()].value, g.value, h.value});
    return it == index.end() ? Mor() : it->second;
  });

  const FinCategory op = opposite(c);
  const FinCategory base = product(op, c);
  std::vector<Obj> objs(n);
  for (std::size_t u = 0; u < n; ++u) {
    objs[u] = product_object(c, c.tgt(Mor(u)), c.src(Mor(u)));
  }
  std::vector<Mor> mors(r.lower.size());
  for (std::size_t m = 0; m < mors.size(); ++m) {
    mors[m] = product_morphism(c, r.upper[m], r.lower[m]);
  }
  r.projection_ts = FinFunctor::make(r.category, base, std::move(objs), std::move(mors));
  return r;
}

}  // namespace cofinal
