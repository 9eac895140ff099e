#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cofinal/homotopy.hpp"
#include "cofinal/setfun.hpp"

namespace cofinal {

enum class Verdict { cofinal_for_1_categories, rationally_cofinal_up_to_d, not_cofinal, inconclusive };

std::string_view to_string(Verdict v);

struct FiberCertificate {
  Obj object;
  std::size_t fiber_objects = 0;
  std::size_t components = 0;
  AcyclicityCertificate certificate;
  /// The simplex budget ran out; `certificate` only carries the graph data.
  bool budget_exceeded = false;

  bool passes() const;
};

struct DiagramTest {
  std::uint64_t seed = 0;
  std::size_t restricted_size = 0;
  std::size_t full_size = 0;
  bool bijection = false;
};

struct CofinalityReport {
  std::size_t source_objects = 0;
  std::size_t source_morphisms = 0;
  std::size_t target_objects = 0;
  std::size_t target_morphisms = 0;
  std::size_t degree_bound = 0;
  std::vector<FiberCertificate> fibers;
  Verdict verdict = Verdict::inconclusive;
  std::optional<Obj> witness;
  std::uint64_t seed = 0;
  std::vector<DiagramTest> empirical;

  bool cofinal() const {
    return verdict == Verdict::cofinal_for_1_categories || verdict == Verdict::rationally_cofinal_up_to_d;
  }
};

/// Every lax fiber nonempty and connected. With `cross_checks` > 0 the
/// comparison map is also tested on that many random diagrams on I.
CofinalityReport classical_cofinal(const FinFunctor& f, std::size_t cross_checks = 0,
                                   std::uint64_t seed = 0);

/// Every lax fiber rationally acyclic up to `degree_bound`. A fiber whose
/// nerve exceeds the budget makes the verdict inconclusive unless another
/// fiber already fails.
CofinalityReport rational_cofinal(const FinFunctor& f, std::size_t degree_bound,
                                  std::size_t budget = kDefaultSimplexBudget);

struct DualityReport {
  ColimitValue lhs;
  ColimitValue rhs;
  ClassFunction canonical_map;
  bool bijection = false;
};

/// colim^W_J f*X → colim^{f^op_! W}_I X, [(u, w, x)] ↦ [(f u, η(w), x)].
DualityReport duality_check(const FinFunctor& f, const Weight& w, const SetDiagram& x);

struct QuantReport {
  DualityReport report;
  /// duality_check at the constant weight, transported along
  /// f^op_!(pt) ≅ π₀(J_{(-)/}), agrees with `report.canonical_map`.
  bool consistent_with_duality = false;
};

/// colim_J f*X → colim^{π₀ J_{(-)/}}_I X, [(b, x)] ↦ [(id_{f b}, [(b, id)], x)].
QuantReport cof_quant_check(const FinFunctor& f, const SetDiagram& x);

struct ConverseReport {
  Obj object;
  std::size_t set_size = 0;
  std::size_t fiber_components = 0;
  std::size_t restricted_size = 0;  // |colim_J f*(a_!S)|
  std::size_t full_size = 0;        // |colim_I a_!S| = |S|
  bool comparison_bijective = false;

  /// |colim_J f*(a_!S)| = |π₀(J_{a/})|·|S|.
  bool formula_holds() const { return restricted_size == fiber_components * set_size; }
};

/// The probe a_!S = lan(a: pt → I, S).
SetDiagram probe_diagram(const FinCategory& c, Obj a, std::size_t set_size);
ConverseReport converse_witness(const FinFunctor& f, Obj a, std::size_t set_size);

// ---------------------------------------------------------------------------
// Random instances

struct SizeConfig {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 14;
  std::size_t max_carrier = 4;
};

struct RandomInstance {
  std::uint64_t seed = 0;
  FinCategory source;
  FinCategory target;
  FinFunctor functor;
  Weight weight;
  SetDiagram diagram;
};

/// Seed of the index-th instance of a run rooted at `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// A subcategory of FinSet generated by random functions between random
/// carriers and closed under composition; associative by construction.
/// Objects "0", "1", …; morphisms "m0", "m1", ….
FinCategory random_category(std::mt19937_64& rng, std::size_t max_objects, std::size_t max_morphisms);

/// Backtracking search from a random object assignment; falls back to a
/// constant functor. Empty when no functor exists (J nonempty, I empty).
std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const FinCategory& source,
                                         const FinCategory& target);

/// Element-level backtracking with a node budget; falls back to a constant
/// diagram.
SetDiagram random_diagram(std::mt19937_64& rng, const FinCategory& shape, std::size_t max_carrier);

/// Throws ErrorKind::GenerationRetryExceeded when no instance is found.
RandomInstance random_instance(std::uint64_t seed, const SizeConfig& config = {});

/// All functors source → target, in lexicographic order of the object map,
/// stopping after `limit`.
std::vector<FinFunctor> all_functors(const FinCategory& source, const FinCategory& target,
                                     std::size_t limit = 10000);

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::size_t source_objects = 0;
  std::size_t source_morphisms = 0;
  std::size_t target_objects = 0;
  std::size_t target_morphisms = 0;
  std::size_t lhs_size = 0;
  std::size_t rhs_size = 0;
  bool duality = false;
  bool oracle = false;  // Tw and coend presentations agree on both sides
  bool quant = false;
  bool quant_consistent = false;

  bool passed() const { return duality && oracle && quant && quant_consistent; }
};

TrialOutcome duality_trial(std::uint64_t seed, const SizeConfig& config = {});

/// Trials derive_seed(root, 0 … count−1), run on up to `threads` workers and
/// returned in index order.
std::vector<TrialOutcome> run_duality_trials(std::uint64_t root, std::size_t count, const SizeConfig& config = {},
                                             std::size_t threads = 0);

}  // namespace cofinal
