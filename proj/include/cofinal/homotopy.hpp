#pragma once

#include <cstdint>
#include <vector>

#include "cofinal/fincat.hpp"
#include "cofinal/linalg.hpp"

namespace cofinal {

inline constexpr std::size_t kDefaultDegree = 3;
inline constexpr std::size_t kDefaultSimplexBudget = 200000;

/// Normalized rational chains on the nerve, truncated at degree_bound + 1.
///
/// A degree-k basis element is a composable tuple (m₁, …, m_k) of
/// non-identity morphisms, m_{i+1} applied after m_i. Degree 0 is the object
/// set. `boundary[k]` maps C_k → C_{k−1}; `boundary[0]` has no rows.
struct ChainComplexQ {
  std::size_t degree_bound = 0;
  std::vector<std::vector<std::vector<Mor>>> basis;
  std::vector<SparseMatrix<Rational>> boundary;

  std::size_t dimension(std::size_t k) const { return basis[k].size(); }
  std::size_t top_degree() const { return basis.size() - 1; }
};

/// Throws ErrorKind::SimplexBudgetExceeded when some degree would exceed
/// `budget` simplices; checks ∂∘∂ = 0 on the result.
ChainComplexQ nerve_chains(const FinCategory& c, std::size_t degree_bound,
                           std::size_t budget = kDefaultSimplexBudget);

/// b₀ … b_d with d = degree_bound.
std::vector<std::int64_t> rational_homology(const ChainComplexQ& k);

struct AcyclicityCertificate {
  bool nonempty = false;
  bool connected = false;
  /// b̃₀ … b̃_d; b̃₀ = b₀ − 1, so the empty category has b̃₀ = −1.
  std::vector<std::int64_t> reduced_betti;
  /// No non-identity endomorphisms and no cycles of objects: the
  /// nondegenerate nerve is finite-dimensional.
  bool complete = false;
  std::size_t degree_bound = 0;

  bool acyclic() const;
};

AcyclicityCertificate acyclicity_certificate(const FinCategory& c, std::size_t degree_bound,
                                             std::size_t budget = kDefaultSimplexBudget);

/// Induced map of normalized chains; tuples hitting an identity go to zero.
/// `maps[k]` is C_k(J) → C_k(I). Commutation with the boundaries is checked.
std::vector<SparseMatrix<Rational>> induced_chain_map(const FinFunctor& f, const ChainComplexQ& source,
                                                      const ChainComplexQ& target);

struct DegreeComparison {
  std::size_t degree = 0;
  std::int64_t source_betti = 0;
  std::int64_t target_betti = 0;
  std::int64_t induced_rank = 0;
  /// False for the top degree, where only ranks are reported.
  bool conclusive = true;
  bool isomorphism = false;
};

struct HomologyComparison {
  std::size_t degree_bound = 0;
  std::vector<DegreeComparison> degrees;

  /// Every conclusive degree is an isomorphism.
  bool isomorphic() const;
};

HomologyComparison functor_homology_comparison(const FinFunctor& f, std::size_t degree_bound,
                                               std::size_t budget = kDefaultSimplexBudget);

}  // namespace cofinal
