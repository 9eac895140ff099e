#include "cofinal/symalg.hpp"

#include <algorithm>

#include "cofinal/constructions.hpp"
#include "cofinal/error.hpp"

namespace cofinal {

namespace {

std::size_t tensor_size(std::size_t dim, std::size_t n, std::size_t budget) {
  std::size_t size = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (dim != 0 && size > budget / dim) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(dim) + "^" + std::to_string(n) + " exceeds the tensor budget",
                  std::to_string(budget));
    }
    size *= dim;
  }
  if (size > budget) throw Error(ErrorKind::BudgetExceeded, "tensor power exceeds the budget", std::to_string(budget));
  return size;
}

Rational factorial(std::size_t n) {
  Rational r(1);
  for (std::size_t k = 2; k <= n; ++k) r *= Rational(static_cast<long>(k));
  return r;
}

// Basis vector of the n-th tensor power: slot 0 is the most significant digit.
std::vector<std::size_t> digits(std::size_t index, std::size_t dim, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t k = n; k-- > 0;) {
    d[k] = index % dim;
    index /= dim;
  }
  return d;
}

std::size_t encode(const std::vector<std::size_t>& d, std::size_t dim) {
  std::size_t index = 0;
  for (std::size_t v : d) index = index * dim + v;
  return index;
}

// (1/n!) Σ_σ σ on (Q^dim)^{⊗n}.
SparseMatrix<Rational> symmetrizer(std::size_t dim, std::size_t n, std::size_t budget) {
  const std::size_t size = tensor_size(dim, n, budget);
  const Rational inv = Rational(1) / factorial(n);
  std::vector<Eigen::Triplet<Rational, Eigen::Index>> triplets;
  for (std::size_t col = 0; col < size; ++col) {
    auto d = digits(col, dim, n);
    std::sort(d.begin(), d.end());
    Rational stabilizer(1);
    for (std::size_t k = 0; k < n;) {
      std::size_t run = 1;
      while (k + run < n && d[k + run] == d[k]) ++run;
      stabilizer *= factorial(run);
      k += run;
    }
    const Rational value = stabilizer * inv;
    do {
      triplets.emplace_back(static_cast<Eigen::Index>(encode(d, dim)), static_cast<Eigen::Index>(col), value);
    } while (std::next_permutation(d.begin(), d.end()));
  }
  SparseMatrix<Rational> p(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  p.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

// v ↦ v ⊗ e_unit
SparseMatrix<Rational> append_unit(std::size_t dim, std::size_t unit, std::size_t n, std::size_t budget) {
  const std::size_t from = tensor_size(dim, n - 1, budget);
  const std::size_t to = tensor_size(dim, n, budget);
  std::vector<Eigen::Triplet<Rational, Eigen::Index>> triplets;
  for (std::size_t i = 0; i < from; ++i) {
    triplets.emplace_back(static_cast<Eigen::Index>(i * dim + unit), static_cast<Eigen::Index>(i), Rational(1));
  }
  SparseMatrix<Rational> m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

std::int64_t sym_orbit_dim(std::size_t dim, std::size_t n, std::size_t budget) {
  return exact_rank(symmetrizer(dim, n, budget));
}

bool SymStageReport::all_injective() const {
  return std::all_of(injective.begin(), injective.end(), [](bool b) { return b; });
}

SymStageReport reduced_sym_sequential(const PointedSpaceQ& x, std::size_t stages, std::size_t budget) {
  if (x.dim == 0 || x.unit >= x.dim) throw Error(ErrorKind::InvalidInput, "pointing outside the space");
  tensor_size(x.dim, stages, budget);
  SymStageReport r;
  r.complement_dim = x.complement_dim();
  SparseMatrix<Rational> previous = symmetrizer(x.dim, 0, budget);
  r.stage_dims.push_back(exact_rank(previous));
  r.new_dims.push_back(r.stage_dims.back());
  r.colimit_dims.push_back(r.stage_dims.back());
  for (std::size_t n = 1; n <= stages; ++n) {
    SparseMatrix<Rational> p = symmetrizer(x.dim, n, budget);
    const SparseMatrix<Rational> map = p * append_unit(x.dim, x.unit, n, budget) * previous;
    const std::int64_t rank = exact_rank(map);
    r.stage_dims.push_back(exact_rank(p));
    r.map_ranks.push_back(rank);
    r.injective.push_back(rank == r.stage_dims[n - 1]);
    r.new_dims.push_back(r.stage_dims[n] - rank);
    // A finite sequential colimit is its last stage.
    r.colimit_dims.push_back(r.stage_dims[n]);
    previous = std::move(p);
  }
  return r;
}

std::int64_t sym_power_dim(std::size_t m, std::size_t k) {
  if (k == 0) return 1;
  if (m == 0) return 0;
  // C(m + k − 1, k), computed incrementally to stay exact.
  std::int64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<std::int64_t>(m + i - 1) / static_cast<std::int64_t>(i);
  }
  return c;
}

std::vector<std::int64_t> reduced_sym_oracle(const PointedSpaceQ& x, std::size_t stages) {
  std::vector<std::int64_t> out;
  std::int64_t total = 0;
  for (std::size_t n = 0; n <= stages; ++n) {
    total += sym_power_dim(x.complement_dim(), n);
    out.push_back(total);
  }
  return out;
}

bool FinInjFiber::agrees() const {
  return components == 1 && groupoid && automorphism_order == group_order && fiber_certificate.acyclic() &&
         group_certificate.acyclic() && fiber_certificate.reduced_betti == group_certificate.reduced_betti;
}

bool FinInjReport::passed() const {
  return !fibers.empty() &&
         std::all_of(fibers.begin(), fibers.end(), [](const FinInjFiber& f) { return f.agrees(); });
}

FinInjReport fin_inj_fiber_check(std::size_t n, std::size_t degree_bound, std::size_t budget) {
  const FinFunctor f = fin_inj_inclusion(n);
  FinInjReport r;
  r.n = n;
  r.degree_bound = degree_bound;
  for (std::size_t k = 0; k <= n; ++k) {
    const CommaResult fiber = lax_fiber(f, Obj(k));
    const FinCategory& c = fiber.category;
    FinInjFiber entry;
    entry.subset_size = k;
    entry.fiber_objects = c.object_count();
    entry.fiber_morphisms = c.morphism_count();
    connected_components(c, &entry.components);
    entry.groupoid = true;
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      const Mor w(m);
      const auto back = c.hom(c.tgt(w), c.src(w));
      entry.groupoid = entry.groupoid && std::any_of(back.begin(), back.end(), [&](Mor v) {
        return c.is_identity(c.compose(v, w)) && c.is_identity(c.compose(w, v));
      });
    }
    if (!c.empty()) entry.automorphism_order = c.hom(Obj(std::size_t{0}), Obj(std::size_t{0})).size();
    entry.fiber_certificate = acyclicity_certificate(c, degree_bound, budget);
    const FinCategory group = symmetric_group(n - k);
    entry.group_order = group.morphism_count();
    entry.group_certificate = acyclicity_certificate(group, degree_bound, budget);
    r.fibers.push_back(std::move(entry));
  }
  return r;
}

}  // namespace cofinal
