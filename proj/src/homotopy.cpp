#include "cofinal/homotopy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

namespace cofinal {

namespace {

using Tuple = std::vector<Mor>;
using Triplets = std::vector<Eigen::Triplet<Rational, Eigen::Index>>;

std::vector<Mor> non_identity_out(const FinCategory& c, Obj a) {
  std::vector<Mor> r;
  for (Mor m : c.out(a)) {
    if (!c.is_identity(m)) r.push_back(m);
  }
  return r;
}

// Number of k-chains ending at each object, saturating.
std::uint64_t projected_count(const FinCategory& c, std::size_t k) {
  const std::size_t n = c.object_count();
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max() / 2;
  std::vector<std::uint64_t> ending(n, 1);
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      const Mor f(m);
      if (c.is_identity(f)) continue;
      auto& slot = next[c.tgt(f).index()];
      slot = std::min(cap, slot + ending[c.src(f).index()]);
    }
    ending = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto v : ending) total = std::min(cap, total + v);
  return total;
}

}  // namespace

ChainComplexQ nerve_chains(const FinCategory& c, std::size_t degree_bound, std::size_t budget) {
  ChainComplexQ k;
  k.degree_bound = degree_bound;
  const std::size_t top = degree_bound + 1;
  for (std::size_t deg = 0; deg <= top; ++deg) {
    const auto count = projected_count(c, deg);
    if (count > budget) {
      throw Error(ErrorKind::SimplexBudgetExceeded,
                  "degree " + std::to_string(deg) + " needs " + std::to_string(count) + " simplices",
                  std::to_string(deg));
    }
  }

  std::vector<std::vector<Mor>> next(c.object_count());
  for (std::size_t a = 0; a < c.object_count(); ++a) next[a] = non_identity_out(c, Obj(a));

  k.basis.resize(top + 1);
  k.basis[0].assign(c.object_count(), Tuple{});
  if (top >= 1) {
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      if (!c.is_identity(Mor(m))) k.basis[1].push_back({Mor(m)});
    }
  }
  for (std::size_t deg = 2; deg <= top; ++deg) {
    for (const auto& t : k.basis[deg - 1]) {
      for (Mor m : next[c.tgt(t.back()).index()]) {
        Tuple ext = t;
        ext.push_back(m);
        k.basis[deg].push_back(std::move(ext));
      }
    }
  }

  k.boundary.resize(top + 1);
  k.boundary[0] = SparseMatrix<Rational>(0, static_cast<Eigen::Index>(k.dimension(0)));
  for (std::size_t deg = 1; deg <= top; ++deg) {
    std::map<Tuple, Eigen::Index> lower_index;
    if (deg >= 2) {
      for (std::size_t i = 0; i < k.basis[deg - 1].size(); ++i) {
        lower_index.emplace(k.basis[deg - 1][i], static_cast<Eigen::Index>(i));
      }
    }
    Triplets triplets;
    for (std::size_t col = 0; col < k.basis[deg].size(); ++col) {
      const auto& t = k.basis[deg][col];
      const auto j = static_cast<Eigen::Index>(col);
      if (deg == 1) {
        triplets.emplace_back(c.tgt(t[0]).index(), j, Rational(1));
        triplets.emplace_back(c.src(t[0]).index(), j, Rational(-1));
        continue;
      }
      for (std::size_t face = 0; face <= deg; ++face) {
        Tuple f;
        if (face == 0) {
          f.assign(t.begin() + 1, t.end());
        } else if (face == deg) {
          f.assign(t.begin(), t.end() - 1);
        } else {
          const Mor composite = c.compose(t[face], t[face - 1]);
          if (c.is_identity(composite)) continue;
          f.assign(t.begin(), t.begin() + static_cast<long>(face) - 1);
          f.push_back(composite);
          f.insert(f.end(), t.begin() + static_cast<long>(face) + 1, t.end());
        }
        triplets.emplace_back(lower_index.at(f), j, Rational(face % 2 == 0 ? 1 : -1));
      }
    }
    SparseMatrix<Rational> d(static_cast<Eigen::Index>(k.dimension(deg - 1)),
                             static_cast<Eigen::Index>(k.dimension(deg)));
    d.setFromTriplets(triplets.begin(), triplets.end());
    k.boundary[deg] = std::move(d);
  }
  for (std::size_t deg = 2; deg <= top; ++deg) {
    const SparseMatrix<Rational> dd = k.boundary[deg - 1] * k.boundary[deg];
    if (!is_zero(dd)) {
      throw Error(ErrorKind::InternalInvariant, "boundary squares to a nonzero map",
                  std::to_string(deg));
    }
  }
  return k;
}

std::vector<std::int64_t> rational_homology(const ChainComplexQ& k) {
  std::vector<std::int64_t> rank(k.boundary.size(), 0);
  for (std::size_t deg = 1; deg < k.boundary.size(); ++deg) rank[deg] = exact_rank(k.boundary[deg]);
  std::vector<std::int64_t> betti;
  for (std::size_t deg = 0; deg <= k.degree_bound; ++deg) {
    betti.push_back(static_cast<std::int64_t>(k.dimension(deg)) - rank[deg] - rank[deg + 1]);
  }
  return betti;
}

bool AcyclicityCertificate::acyclic() const {
  return nonempty && connected &&
         std::all_of(reduced_betti.begin(), reduced_betti.end(), [](auto b) { return b == 0; });
}

AcyclicityCertificate acyclicity_certificate(const FinCategory& c, std::size_t degree_bound,
                                             std::size_t budget) {
  AcyclicityCertificate cert;
  cert.degree_bound = degree_bound;
  cert.nonempty = !c.empty();
  std::size_t components = 0;
  connected_components(c, &components);
  cert.connected = components == 1;
  cert.complete = is_loop_free(c);
  cert.reduced_betti = rational_homology(nerve_chains(c, degree_bound, budget));
  cert.reduced_betti[0] -= 1;
  return cert;
}

std::vector<SparseMatrix<Rational>> induced_chain_map(const FinFunctor& f, const ChainComplexQ& source,
                                                      const ChainComplexQ& target) {
  const FinCategory& i = f.target();
  const std::size_t top = std::min(source.top_degree(), target.top_degree());
  std::vector<SparseMatrix<Rational>> maps(top + 1);
  for (std::size_t deg = 0; deg <= top; ++deg) {
    Triplets triplets;
    if (deg == 0) {
      for (std::size_t a = 0; a < source.dimension(0); ++a) {
        triplets.emplace_back(f(Obj(a)).index(), static_cast<Eigen::Index>(a), Rational(1));
      }
    } else {
      std::map<Tuple, Eigen::Index> index;
      for (std::size_t r = 0; r < target.basis[deg].size(); ++r) {
        index.emplace(target.basis[deg][r], static_cast<Eigen::Index>(r));
      }
      for (std::size_t col = 0; col < source.basis[deg].size(); ++col) {
        Tuple image;
        bool degenerate = false;
        for (Mor m : source.basis[deg][col]) {
          const Mor fm = f(m);
          degenerate = degenerate || i.is_identity(fm);
          image.push_back(fm);
        }
        if (degenerate) continue;
        triplets.emplace_back(index.at(image), static_cast<Eigen::Index>(col), Rational(1));
      }
    }
    SparseMatrix<Rational> m(static_cast<Eigen::Index>(target.dimension(deg)),
                             static_cast<Eigen::Index>(source.dimension(deg)));
    m.setFromTriplets(triplets.begin(), triplets.end());
    maps[deg] = std::move(m);
  }
  for (std::size_t deg = 1; deg <= top; ++deg) {
    const SparseMatrix<Rational> lhs = target.boundary[deg] * maps[deg];
    const SparseMatrix<Rational> rhs = maps[deg - 1] * source.boundary[deg];
    if (!is_zero(SparseMatrix<Rational>(lhs - rhs))) {
      throw Error(ErrorKind::InternalInvariant, "induced map does not commute with boundaries",
                  std::to_string(deg));
    }
  }
  return maps;
}

bool HomologyComparison::isomorphic() const {
  return std::all_of(degrees.begin(), degrees.end(),
                     [](const DegreeComparison& d) { return !d.conclusive || d.isomorphism; });
}

HomologyComparison functor_homology_comparison(const FinFunctor& f, std::size_t degree_bound,
                                               std::size_t budget) {
  const auto source = nerve_chains(f.source(), degree_bound, budget);
  const auto target = nerve_chains(f.target(), degree_bound, budget);
  const auto maps = induced_chain_map(f, source, target);
  const auto source_betti = rational_homology(source);
  const auto target_betti = rational_homology(target);

  HomologyComparison out;
  out.degree_bound = degree_bound;
  for (std::size_t deg = 0; deg <= degree_bound; ++deg) {
    // rank of H_k(J) → H_k(I) = rank[B_k(I) | φ Z_k(J)] − rank B_k(I)
    const SparseMatrix<Rational> cycles = kernel_basis(source.boundary[deg]);
    const SparseMatrix<Rational> pushed = maps[deg] * cycles;
    const auto& boundaries = target.boundary[deg + 1];
    const auto base_rank = exact_rank(boundaries);
    const auto joint_rank = exact_rank(hconcat<Rational>(boundaries, pushed));

    DegreeComparison d;
    d.degree = deg;
    d.source_betti = source_betti[deg];
    d.target_betti = target_betti[deg];
    d.induced_rank = joint_rank - base_rank;
    d.conclusive = deg + 1 <= degree_bound;
    d.isomorphism = d.source_betti == d.target_betti && d.induced_rank == d.source_betti;
    out.degrees.push_back(d);
  }
  return out;
}

}  // namespace cofinal
