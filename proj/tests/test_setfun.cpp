#include <doctest.h>

#include "cofinal/cofinality.hpp"
#include "oracles.hpp"

using namespace cofinal;

namespace {

SetDiagram arrow_xy_to_z() {
  return validate_diagram({{{"0", {"x", "y"}}, {"1", {"z"}}}, {{"f", {{"x", "z"}, {"y", "z"}}}}}, walking_arrow());
}

// Components of the category of elements of a weight.
std::size_t weight_components(const Weight& w) {
  return oracle::colimit_size(w.diagram());
}

}  // namespace

TEST_CASE("restriction along functors") {
  const SetDiagram x = arrow_xy_to_z();
  CHECK(restrict(x, identity_functor(walking_arrow())) == x);
  const SetDiagram at1 = restrict(x, object_functor(walking_arrow(), Obj(1)));
  CHECK(at1.size(Obj(0)) == 1);
  CHECK(at1.label(Obj(0), 0) == "z");

  // Hom(1, −) on fin_inj_leq(2), restricted to BΣ_2, is the regular Σ_2-set.
  const FinCategory inj = fin_inj_leq(2);
  const SetDiagram hom1 = probe_diagram(inj, Obj(1), 1);
  const FinFunctor inc = fin_inj_inclusion(2);
  const SetDiagram r = restrict(hom1, inc);
  CHECK(r.size(Obj(0)) == 2);
  const Mor swap = inc.source().morphism("[2 1]");
  CHECK(r.apply(swap, 0) == 1);
  CHECK(r.apply(swap, 1) == 0);
}

TEST_CASE("colimits of small diagrams") {
  CHECK(colimit(arrow_xy_to_z()).size() == 1);

  const FinCategory d2 = validate_category({{"p", "q"}, {}, {}});
  const SetDiagram five = validate_diagram({{{"p", {"a", "b"}}, {"q", {"c", "d", "e"}}}, {}}, d2);
  CHECK(colimit(five).size() == 5);

  const FinCategory span = build_standard(StandardKind::span);
  const SetDiagram pushout =
      validate_diagram({{{"0", {"a", "b"}}, {"1", {"*"}}, {"2", {"*"}}},
                        {{"f", {{"a", "*"}, {"b", "*"}}}, {"g", {{"a", "*"}, {"b", "*"}}}}},
                       span);
  const ColimitValue v = colimit(pushout);
  CHECK(v.size() == 1);
  CHECK(v.value.class_label(0) == "0:a");

  const SetDiagram empty_to_z =
      validate_diagram({{{"0", {}}, {"1", {"z"}}}, {}}, walking_arrow());
  CHECK(colimit(empty_to_z).size() == 1);
}

TEST_CASE("colimits match a component count and form a cocone") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    std::mt19937_64 rng(seed);
    const FinCategory c = random_category(rng, 4, 14);
    const SetDiagram x = random_diagram(rng, c, 4);
    const ColimitValue v = colimit(x);
    CHECK(v.size() == oracle::colimit_size(x));
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      const Mor f(m);
      for (std::size_t e = 0; e < x.size(c.src(f)); ++e) {
        CHECK(v.class_of(c.src(f), e) == v.class_of(c.tgt(f), x.apply(f, e)));
      }
    }
  }
}

TEST_CASE("comparison map") {
  const FinCategory arrow = walking_arrow();
  const SetDiagram x = arrow_xy_to_z();
  CHECK(comparison_map(identity_functor(arrow), x).map.bijective());
  CHECK(comparison_map(object_functor(arrow, Obj(1)), x).map.bijective());

  const SetDiagram empty_to_z = validate_diagram({{{"0", {}}, {"1", {"z"}}}, {}}, arrow);
  const ComparisonResult r = comparison_map(object_functor(arrow, Obj(0)), empty_to_z);
  CHECK(r.restricted.size() == 0);
  CHECK(r.full.size() == 1);
  CHECK_FALSE(r.map.surjective());
}

TEST_CASE("left Kan extension") {
  const FinCategory arrow = walking_arrow();
  const SetDiagram x = arrow_xy_to_z();
  const LanResult id = lan(identity_functor(arrow), x);
  for (std::size_t a = 0; a < 2; ++a) CHECK(id.diagram.size(Obj(a)) == x.size(Obj(a)));

  // (a_!S)(b) = Hom(a, b) × S.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    const FinCategory c = random_category(rng, 4, 12);
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      const SetDiagram probe = probe_diagram(c, Obj(a), 2);
      for (std::size_t b = 0; b < c.object_count(); ++b) {
        CHECK(probe.size(Obj(b)) == 2 * c.hom(Obj(a), Obj(b)).size());
      }
      CHECK(colimit(probe).size() == 2);
    }
  }
}

TEST_CASE("Kan extension preserves colimits and its unit is natural") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const FinFunctor& f = inst.functor;
    std::mt19937_64 rng(seed);
    const SetDiagram x = random_diagram(rng, f.source(), 3);
    const LanResult l = lan(f, x);
    const FinCategory& j = f.source();
    for (std::size_t m = 0; m < j.morphism_count(); ++m) {
      const Mor w(m);
      for (std::size_t e = 0; e < x.size(j.src(w)); ++e) {
        CHECK(l.unit[j.tgt(w).index()][x.apply(w, e)] == l.diagram.apply(f(w), l.unit[j.src(w).index()][e]));
      }
    }
    const ColimitValue small = colimit(x);
    const ColimitValue big = colimit(l.diagram);
    std::vector<std::size_t> image;
    for (std::size_t b = 0; b < j.object_count(); ++b) {
      for (std::size_t e = 0; e < x.size(Obj(b)); ++e) image.push_back(big.class_of(f(Obj(b)), l.unit[b][e]));
    }
    const ClassFunction map = induced_on_classes(small.value, image, big.size());
    CHECK(map.bijective());
  }
}

TEST_CASE("representable and constant weights") {
  CHECK(representable_weight(point(), Obj(0)).size(Obj(0)) == 1);
  const FinCategory arrow = walking_arrow();
  const Weight w = representable_weight(arrow, Obj(1));
  CHECK(w.size(Obj(0)) == 1);
  CHECK(w.size(Obj(1)) == 1);
  CHECK(representable_weight(arrow, Obj(0)).size(Obj(1)) == 0);
  CHECK(representable_weight(symmetric_group(3), Obj(0)).size(Obj(0)) == 6);
  const Weight pt = constant_weight(arrow);
  CHECK(pt.size(Obj(0)) == 1);
  CHECK(pt.size(Obj(1)) == 1);
  CHECK_THROWS_AS(Weight(arrow, arrow_xy_to_z()), Error);
}

TEST_CASE("weighted colimits: Tw formula agrees with the coend") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const SetDiagram x = restrict(inst.diagram, inst.functor);
    const ColimitValue tw = weighted_colimit_tw(inst.weight, x);
    const ColimitValue coend = weighted_colimit_coend(inst.weight, x);
    CHECK(tw.size() == coend.size());
    CHECK(tw_to_coend(inst.weight, x, tw, coend).bijective());
  }
}

TEST_CASE("weighted colimit with a singleton diagram counts weight components") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const SetDiagram one = constant_diagram(inst.source, {"*"});
    CHECK(weighted_colimit_coend(inst.weight, one).size() == weight_components(inst.weight));
  }
}

TEST_CASE("constant weight recovers the ordinary colimit") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const ColimitValue plain = colimit(inst.diagram);
    const ColimitValue weighted = weighted_colimit_tw(constant_weight(inst.target), inst.diagram);
    CHECK(constant_weight_map(inst.diagram, plain, weighted).bijective());
  }
}

TEST_CASE("co-Yoneda: representable weights evaluate, naturally in the object") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const FinCategory& c = inst.target;
    const SetDiagram& x = inst.diagram;
    std::vector<Weight> reps;
    std::vector<ColimitValue> values;
    std::vector<std::vector<std::size_t>> maps;
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      reps.push_back(representable_weight(c, Obj(a)));
      values.push_back(weighted_colimit_tw(reps[a], x));
      maps.push_back(coyoneda_map(x, Obj(a), values[a]));
      ClassFunction fn{maps[a], values[a].size()};
      CHECK(fn.bijective());
      CHECK(values[a].size() == x.size(Obj(a)));
    }
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      const Mor v(m);
      const std::size_t a = c.src(v).index();
      const std::size_t b = c.tgt(v).index();
      // Postcomposition with v: Hom(−, a) → Hom(−, b).
      WeightMap post;
      for (std::size_t d = 0; d < c.object_count(); ++d) {
        std::vector<std::size_t> comp;
        for (Mor h : c.hom(Obj(d), Obj(a))) comp.push_back(c.hom_position(c.compose(v, h)));
        post.component.push_back(comp);
      }
      const ClassFunction induced = weight_map_induced(reps[a], reps[b], post, x, values[a], values[b]);
      for (std::size_t e = 0; e < x.size(Obj(a)); ++e) {
        CHECK(induced.image[maps[a][e]] == maps[b][x.apply(v, e)]);
      }
    }
  }
}

TEST_CASE("Kan extension of a representable weight is representable") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const FinFunctor& f = inst.functor;
    const FinCategory& j = f.source();
    const FinCategory& c = f.target();
    for (std::size_t b = 0; b < j.object_count(); ++b) {
      const Weight w = representable_weight(j, Obj(b));
      const LanResult l = lan(opposite(f), w.diagram());
      const Weight pushed(c, l.diagram);
      const Weight target = representable_weight(c, f(Obj(b)));
      std::vector<std::vector<std::size_t>> on_unit;
      for (std::size_t d = 0; d < j.object_count(); ++d) {
        std::vector<std::size_t> comp;
        for (Mor h : j.hom(Obj(d), Obj(b))) comp.push_back(c.hom_position(f(h)));
        on_unit.push_back(comp);
      }
      const WeightMap map = extend_from_unit(f, l, target, on_unit);
      for (std::size_t a = 0; a < c.object_count(); ++a) {
        const ClassFunction comp{map.component[a], target.size(Obj(a))};
        CHECK(comp.bijective());
        CHECK(pushed.size(Obj(a)) == target.size(Obj(a)));
      }
    }
  }
}

TEST_CASE("fiber component weight") {
  const FinCategory arrow = walking_arrow();
  const Weight id = pi0_fiber_weight(identity_functor(arrow));
  CHECK(id.size(Obj(0)) == 1);
  CHECK(id.size(Obj(1)) == 1);
  const Weight at0 = pi0_fiber_weight(object_functor(arrow, Obj(0)));
  CHECK(at0.size(Obj(0)) == 1);
  CHECK(at0.size(Obj(1)) == 0);
  const Weight inc = pi0_fiber_weight(fin_inj_inclusion(2));
  for (std::size_t a = 0; a < 3; ++a) CHECK(inc.size(Obj(a)) == 1);

  const Weight collapse = pi0_fiber_weight(terminal_functor(discrete(2)));
  CHECK(collapse.size(Obj(0)) == 2);

  // Agrees with the Kan extension of the point along f^op.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RandomInstance inst = random_instance(seed, {4, 12, 3});
    const FinFunctor& f = inst.functor;
    const Weight pi0 = pi0_fiber_weight(f);
    const LanResult l = lan(opposite(f), constant_weight(f.source()).diagram());
    for (std::size_t a = 0; a < f.target().object_count(); ++a) {
      CHECK(pi0.size(Obj(a)) == l.diagram.size(Obj(a)));
      std::size_t count = 0;
      connected_components(lax_fiber(f, Obj(a)).category, &count);
      CHECK(pi0.size(Obj(a)) == count);
    }
  }
}
