#pragma once

#include <cstdint>
#include <vector>

#include "cofinal/homotopy.hpp"

namespace cofinal {

inline constexpr std::size_t kDefaultTensorBudget = 4096;

/// A pointed rational vector space 1 → X with X = Q^dim and the point at
/// basis vector `unit`. The pointing splits, so X ≅ 1 ⊕ X̄.
struct PointedSpaceQ {
  std::size_t dim = 1;
  std::size_t unit = 0;

  /// X = 1 ⊕ Q^m
  static PointedSpaceQ with_complement(std::size_t m) { return {m + 1, 0}; }
  std::size_t complement_dim() const { return dim - 1; }
};

/// Rank of the symmetrizer on the n-th tensor power of Q^dim, i.e. the
/// dimension of the homotopy orbits X^{⊗n}_{hΣ_n} (orbits and invariants
/// agree over Q). Throws ErrorKind::BudgetExceeded when dim^n > budget.
std::int64_t sym_orbit_dim(std::size_t dim, std::size_t n, std::size_t budget = kDefaultTensorBudget);

/// The sequence 1 → X → X^{⊗2}_{Σ_2} → … → X^{⊗N}_{Σ_N}, each map inserting
/// the point in the last slot and symmetrizing.
struct SymStageReport {
  std::size_t complement_dim = 0;
  std::vector<std::int64_t> stage_dims;    // n = 0 … N
  std::vector<std::int64_t> map_ranks;     // map into stage n, n = 1 … N
  std::vector<bool> injective;             // map into stage n, n = 1 … N
  std::vector<std::int64_t> new_dims;      // dim coker of the map into stage n; new_dims[0] = stage_dims[0]
  std::vector<std::int64_t> colimit_dims;  // colimit of stages 0 … n

  bool all_injective() const;
};

SymStageReport reduced_sym_sequential(const PointedSpaceQ& x, std::size_t stages,
                                      std::size_t budget = kDefaultTensorBudget);

/// Σ_{k ≤ n} C(m + k − 1, k) for n = 0 … N, from X ≅ 1 ⊕ X̄.
std::vector<std::int64_t> reduced_sym_oracle(const PointedSpaceQ& x, std::size_t stages);

/// C(m + k − 1, k) = dim Sym^k(Q^m).
std::int64_t sym_power_dim(std::size_t m, std::size_t k);

struct FinInjFiber {
  std::size_t subset_size = 0;
  std::size_t fiber_objects = 0;
  std::size_t fiber_morphisms = 0;
  std::size_t components = 0;
  bool groupoid = false;
  std::size_t automorphism_order = 0;  // of the first fiber object
  std::size_t group_order = 0;         // |Σ_{n−|S|}|
  AcyclicityCertificate fiber_certificate;
  AcyclicityCertificate group_certificate;  // BΣ_{n−|S|}

  bool agrees() const;
};

struct FinInjReport {
  std::size_t n = 0;
  std::size_t degree_bound = 0;
  std::vector<FinInjFiber> fibers;

  bool passed() const;
};

/// Lax fibers of BΣ_n → fin_inj_leq(n) compared with BΣ_{n−|S|}.
FinInjReport fin_inj_fiber_check(std::size_t n, std::size_t degree_bound,
                                 std::size_t budget = kDefaultSimplexBudget);

}  // namespace cofinal
