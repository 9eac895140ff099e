#pragma once

#include "cofinal/fincat.hpp"

namespace cofinal {

enum class Variance { lax, oplax };

/// A comma category of f: J → I over a base object a.
///
/// lax:   objects (b, u: a → f b), morphisms w: b₁ → b₂ with f(w)∘u₁ = u₂.
/// oplax: objects (b, u: f b → a), morphisms w: b₁ → b₂ with u₂∘f(w) = u₁.
///
/// Objects are listed by b, then by u in hom order; `object_at` recovers the
/// position of a pair.
struct CommaResult {
  FinCategory category;
  FinFunctor projection;
  FinCategory source;  // J
  FinCategory base;    // I
  Obj base_object;
  Variance variance = Variance::lax;
  std::vector<Obj> fiber_source;  // b of each object
  std::vector<Mor> fiber_arrow;   // u of each object
  std::vector<std::size_t> offset;  // first object index for each b ∈ J
  // Morphisms are listed per object: for lax fibers by source object in
  // out(b) order, for oplax fibers by target object in in(b) order.
  std::vector<std::size_t> morphism_start;

  Obj object_at(Obj b, Mor u) const;
  /// The fiber morphism over w anchored at object o (its source for lax
  /// fibers, its target for oplax fibers).
  Mor morphism_at(Obj o, Mor w) const;
};

CommaResult lax_fiber(const FinFunctor& f, Obj a);
CommaResult oplax_fiber(const FinFunctor& f, Obj a);
CommaResult comma(const FinFunctor& f, Obj a, Variance variance);

/// The functor lax_fiber(f, a′) → lax_fiber(f, a) given by precomposition
/// with v: a → a′.
FinFunctor lax_fiber_restriction(const CommaResult& to_fiber, const CommaResult& from_fiber,
                                 const FinFunctor& f, Mor v);

/// Tw(I): objects are the morphisms of I (same order); a morphism u → v is a
/// pair (g, h) with u = h∘v∘g, g: s(u) → s(v), h: t(v) → t(u). Composition is
/// (g₂, h₂)∘(g₁, h₁) = (g₂∘g₁, h₁∘h₂).
struct TwistedArrowResult {
  FinCategory category;
  /// (t, s): Tw(I) → I^op × I, u: b → b′ ↦ (b′, b).
  FinFunctor projection_ts;
  std::vector<Mor> lower;  // g of each Tw morphism
  std::vector<Mor> upper;  // h of each Tw morphism
};

TwistedArrowResult twisted_arrow(const FinCategory& c);

}  // namespace cofinal
