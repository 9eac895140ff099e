#pragma once

#include <vector>

#include "cofinal/constructions.hpp"
#include "cofinal/fincat.hpp"

namespace cofinal {

/// Colimit of a Set-valued diagram: the quotient of the disjoint union of the
/// carriers, together with the class of every element (`cocone[a][x]`).
///
/// For coend-style quotients `cocone[b]` indexes the generators W(b)×X(b).
struct ColimitValue {
  FinSetQuotient value;
  std::vector<std::vector<std::size_t>> cocone;

  std::size_t size() const { return value.class_count(); }
  std::size_t class_of(Obj a, std::size_t x) const { return cocone[a.index()][x]; }
};

/// A function between two finite sets of classes.
struct ClassFunction {
  std::vector<std::size_t> image;
  std::size_t codomain_size = 0;

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }
  ClassFunction then(const ClassFunction& next) const;
};

/// The map on classes induced by a map on generators. Throws
/// ErrorKind::InternalInvariant when two generators of one class disagree.
ClassFunction induced_on_classes(const FinSetQuotient& domain,
                                 const std::vector<std::size_t>& generator_image,
                                 std::size_t codomain_size);

/// A presheaf W: I^op → Set, stored as a diagram on opposite(I). For
/// u: b → b′ in I, `apply(u, w)` sends w ∈ W(b′) to W(u)(w) ∈ W(b).
class Weight {
 public:
  Weight() = default;
  /// Throws ErrorKind::ShapeMismatch unless diagram.shape() == opposite(base).
  Weight(FinCategory base, SetDiagram diagram);

  const FinCategory& base() const { return base_; }
  const SetDiagram& diagram() const { return diagram_; }
  std::size_t size(Obj b) const { return diagram_.size(b); }
  std::size_t apply(Mor u, std::size_t w) const { return diagram_.apply(u, w); }

 private:
  FinCategory base_;
  SetDiagram diagram_;
};

/// A natural transformation between weights on the same category.
struct WeightMap {
  std::vector<std::vector<std::size_t>> component;
};

/// Checks naturality; throws ErrorKind::InternalInvariant otherwise.
void check_natural(const Weight& from, const Weight& to, const WeightMap& map);

struct LanResult {
  SetDiagram diagram;
  /// unit[b][x] ∈ (f_!X)(f b)
  std::vector<std::vector<std::size_t>> unit;
};

struct ComparisonResult {
  ColimitValue restricted;  // colim_J f*X
  ColimitValue full;        // colim_I X
  ClassFunction map;
};

SetDiagram restrict(const SetDiagram& x, const FinFunctor& f);
ColimitValue colimit(const SetDiagram& x);
ComparisonResult comparison_map(const FinFunctor& f, const SetDiagram& x);

/// Pointwise left Kan extension over oplax fibers.
LanResult lan(const FinFunctor& f, const SetDiagram& x);

Weight representable_weight(const FinCategory& c, Obj a);
Weight constant_weight(const FinCategory& c);

/// W ⊠ X on I^op × I: (c, b) ↦ W(c) × X(b); element (w, x) sits at w·|X(b)| + x.
SetDiagram tensor_diagram(const Weight& w, const SetDiagram& x);

inline std::size_t pair_index(std::size_t w, std::size_t x, std::size_t x_count) {
  return w * x_count + x;
}

/// Colimit over Tw(I) of (u: b → b′) ↦ W(b′) × X(b). `cocone[u]` is indexed
/// by pair_index(w, x, |X(b)|).
ColimitValue weighted_colimit_tw(const Weight& w, const SetDiagram& x);
/// Same, reusing a precomputed Tw(I).
ColimitValue weighted_colimit_tw(const Weight& w, const SetDiagram& x, const TwistedArrowResult& tw);

/// ⨿_b W(b)×X(b) modulo (W(u)w′, x) ∼ (w′, X(u)x) for every u: b → b′.
/// `cocone[b]` is indexed by pair_index(w, x, |X(b)|).
ColimitValue weighted_colimit_coend(const Weight& w, const SetDiagram& x);

/// Canonical comparison: (u: b → b′, w, x) ↦ [(b′, w, X(u)x)].
ClassFunction tw_to_coend(const Weight& w, const SetDiagram& x, const ColimitValue& tw_value,
                          const ColimitValue& coend_value);

/// Map on weighted colimits over Tw(I) induced by a weight map.
ClassFunction weight_map_induced(const Weight& from, const Weight& to, const WeightMap& map,
                                 const SetDiagram& x, const ColimitValue& from_value,
                                 const ColimitValue& to_value);

/// X(a) → colim^{Map(−,a)} X, x ↦ [(id_a, id_a, x)].
std::vector<std::size_t> coyoneda_map(const SetDiagram& x, Obj a, const ColimitValue& weighted);

/// colim X → colim^{pt} X, [(b, x)] ↦ [(id_b, ∗, x)].
ClassFunction constant_weight_map(const SetDiagram& x, const ColimitValue& plain,
                                  const ColimitValue& weighted);

/// The weight map f^op_! W → V determined by its values on the unit: for
/// f: J → I and `on_unit[b]`: W(b) → V(f b), every element V(u)(η(w)) with
/// u: a → f b is sent to V(u)(on_unit[b][w]). Throws
/// ErrorKind::InternalInvariant when this is not well defined or not natural.
WeightMap extend_from_unit(const FinFunctor& f, const LanResult& lan_w, const Weight& target,
                           const std::vector<std::vector<std::size_t>>& on_unit);

/// W(a) = π₀(J_{a/}); v: a → a′ acts by precomposition.
Weight pi0_fiber_weight(const FinFunctor& f);

}  // namespace cofinal
