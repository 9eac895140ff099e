#include <doctest.h>

#include "cofinal/cofinality.hpp"
#include "oracles.hpp"

using namespace cofinal;

TEST_CASE("lax fibers of small functors") {
  const FinCategory arrow = walking_arrow();
  const CommaResult under0 = lax_fiber(identity_functor(arrow), arrow.object("0"));
  CHECK(under0.category.object_count() == 2);
  CHECK(under0.category.morphism_count() == 3);

  const CommaResult at1 = lax_fiber(object_functor(arrow, arrow.object("1")), arrow.object("0"));
  CHECK(at1.category.object_count() == 1);
  CHECK(at1.category.morphism_count() == 1);

  const CommaResult at0 = lax_fiber(object_functor(arrow, arrow.object("0")), arrow.object("1"));
  CHECK(at0.category.empty());

  const FinFunctor inc = fin_inj_inclusion(2);
  const CommaResult over1 = lax_fiber(inc, Obj(1));
  CHECK(over1.category.object_count() == 2);
  std::size_t count = 0;
  connected_components(over1.category, &count);
  CHECK(count == 1);
  CHECK(over1.object_at(Obj(0), over1.fiber_arrow[1]) == Obj(1));
}

TEST_CASE("oplax fibers of small functors") {
  const FinCategory arrow = walking_arrow();
  const CommaResult over1 = oplax_fiber(identity_functor(arrow), arrow.object("1"));
  CHECK(over1.category.object_count() == 2);
  CHECK(over1.category.morphism_count() == 3);
  const FinCategory chain = chain_poset(3);
  CHECK(oplax_fiber(identity_functor(chain), Obj(0)).category.object_count() == 1);
}

TEST_CASE("fiber object counts are hom-set sums") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RandomInstance inst = random_instance(seed, {3, 10, 3});
    const FinFunctor& f = inst.functor;
    for (std::size_t a = 0; a < f.target().object_count(); ++a) {
      std::size_t lax = 0;
      std::size_t oplax = 0;
      for (std::size_t b = 0; b < f.source().object_count(); ++b) {
        lax += f.target().hom(Obj(a), f(Obj(b))).size();
        oplax += f.target().hom(f(Obj(b)), Obj(a)).size();
      }
      CHECK(lax_fiber(f, Obj(a)).category.object_count() == lax);
      CHECK(oplax_fiber(f, Obj(a)).category.object_count() == oplax);
    }
  }
}

TEST_CASE("oplax fiber is the opposite of the lax fiber of the opposite functor") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const FinFunctor& f = inst.functor;
    for (std::size_t a = 0; a < f.target().object_count(); ++a) {
      const CommaResult oplax = oplax_fiber(f, Obj(a));
      const CommaResult lax_op = lax_fiber(opposite(f), Obj(a));
      CHECK(opposite(lax_op.category) == oplax.category);
      CHECK(lax_op.fiber_source == oplax.fiber_source);
      CHECK(lax_op.fiber_arrow == oplax.fiber_arrow);
    }
  }
}

TEST_CASE("fiber restriction is functorial") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const RandomInstance inst = random_instance(seed, {3, 10, 3});
    const FinFunctor& f = inst.functor;
    const FinCategory& c = f.target();
    std::vector<CommaResult> fibers;
    for (std::size_t a = 0; a < c.object_count(); ++a) fibers.push_back(lax_fiber(f, Obj(a)));
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      CHECK(lax_fiber_restriction(fibers[a], fibers[a], f, c.identity(Obj(a))) ==
            identity_functor(fibers[a].category));
    }
    for (std::size_t i = 0; i < c.morphism_count(); ++i) {
      for (std::size_t j = 0; j < c.morphism_count(); ++j) {
        const Mor v(i);
        const Mor w(j);
        if (c.tgt(v) != c.src(w)) continue;
        const auto& fa = fibers[c.src(v).index()];
        const auto& fb = fibers[c.tgt(v).index()];
        const auto& fc = fibers[c.tgt(w).index()];
        const FinFunctor rv = lax_fiber_restriction(fa, fb, f, v);
        const FinFunctor rw = lax_fiber_restriction(fb, fc, f, w);
        CHECK(lax_fiber_restriction(fa, fc, f, c.compose(w, v)) == compose(rv, rw));
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("twisted arrow category") {
  const TwistedArrowResult pt = twisted_arrow(point());
  CHECK(pt.category.object_count() == 1);
  CHECK(pt.category.morphism_count() == 1);

  const TwistedArrowResult arrow = twisted_arrow(walking_arrow());
  CHECK(arrow.category.object_count() == 3);
  CHECK(arrow.category.morphism_count() == 5);

  const TwistedArrowResult bs2 = twisted_arrow(symmetric_group(2));
  CHECK(bs2.category.object_count() == 2);
  CHECK(bs2.category.morphism_count() == 8);
  CHECK(oracle::twisted_arrow_morphisms(symmetric_group(2)) == 8);

  // (t, s) sends u: b → b′ to (b′, b).
  const FinCategory a = walking_arrow();
  const Mor f = a.morphism("f");
  CHECK(arrow.projection_ts(Obj(f.index())) == product_object(a, a.object("1"), a.object("0")));
  for (std::size_t m = 0; m < arrow.category.morphism_count(); ++m) {
    const Mor u(arrow.category.src(Mor(m)).index());
    const Mor v(arrow.category.tgt(Mor(m)).index());
    CHECK(a.compose(arrow.upper[m], a.compose(v, arrow.lower[m])) == u);
  }
}

TEST_CASE("twisted arrow morphism counts match brute force") {
  for (const FinCategory& c : {chain_poset(3), chain_poset(4), symmetric_group(3), fin_inj_leq(2),
                               build_standard(StandardKind::span), discrete(2)}) {
    CHECK(twisted_arrow(c).category.morphism_count() == oracle::twisted_arrow_morphisms(c));
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const FinCategory c = random_category(rng, 4, 14);
    const TwistedArrowResult tw = twisted_arrow(c);
    CHECK(tw.category.object_count() == c.morphism_count());
    CHECK(tw.category.morphism_count() == oracle::twisted_arrow_morphisms(c));
  }
}
