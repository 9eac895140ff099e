#include <doctest.h>

#include <random>

#include "cofinal/cofinality.hpp"
#include "oracles.hpp"

using namespace cofinal;

namespace {

std::vector<std::int64_t> betti(const FinCategory& c, std::size_t d) {
  return rational_homology(nerve_chains(c, d));
}

// Two uniquely isomorphic objects.
FinCategory indiscrete2() {
  return validate_category({{"x", "y"},
                            {{"s", "x", "y"}, {"t", "y", "x"}},
                            {{"t", "s", "id_x"}, {"s", "t", "id_y"}}});
}

}  // namespace

TEST_CASE("exact rank agrees with dense elimination") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> size(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = size(rng);
    const int cols = size(rng);
    DenseMatrix<Rational> m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) = Rational(trial % 3 == 0 && entry(rng) != 0 ? 0 : entry(rng));
    }
    const SparseMatrix<Rational> s = m.sparseView();
    const auto rank = exact_rank(s);
    CHECK(rank == oracle::dense_rank(m));
    CHECK(exact_rank(m) == rank);
    const SparseMatrix<Rational> k = kernel_basis(s);
    CHECK(k.cols() == cols - rank);
    CHECK(is_zero(SparseMatrix<Rational>(s * k)));
    CHECK(exact_rank(k) == k.cols());
  }
}

TEST_CASE("nerve chains of small categories") {
  const ChainComplexQ pt = nerve_chains(point(), 3);
  CHECK(pt.dimension(0) == 1);
  CHECK(pt.dimension(1) == 0);
  CHECK(rational_homology(pt) == std::vector<std::int64_t>{1, 0, 0, 0});

  const ChainComplexQ arrow = nerve_chains(walking_arrow(), 2);
  CHECK(arrow.dimension(0) == 2);
  CHECK(arrow.dimension(1) == 1);
  CHECK(arrow.dimension(2) == 0);

  // BΣ_2: one simplex per degree; ∂ alternates between 0 and multiplication by 2.
  const ChainComplexQ bs2 = nerve_chains(symmetric_group(2), 4);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(bs2.dimension(k) == 1);
  CHECK(exact_rank(bs2.boundary[1]) == 0);
  CHECK(exact_rank(bs2.boundary[2]) == 1);
  CHECK(exact_rank(bs2.boundary[3]) == 0);
  CHECK(exact_rank(bs2.boundary[4]) == 1);

  for (std::size_t k = 2; k < bs2.boundary.size(); ++k) {
    CHECK(is_zero(SparseMatrix<Rational>(bs2.boundary[k - 1] * bs2.boundary[k])));
  }

  CHECK(betti(discrete(2), 2) == std::vector<std::int64_t>{2, 0, 0});
  CHECK(betti(symmetric_group(3), 4) == std::vector<std::int64_t>{1, 0, 0, 0, 0});
  // A non-commuting square is a circle; a commuting one is contractible.
  const std::vector<MorphismSpec> edges{{"a", "0", "1"}, {"b", "1", "2"}, {"c", "0", "3"}, {"d", "3", "2"}};
  auto open = edges;
  open.push_back({"e1", "0", "2"});
  open.push_back({"e2", "0", "2"});
  CHECK(betti(validate_category({{"0", "1", "2", "3"}, open, {{"b", "a", "e1"}, {"d", "c", "e2"}}}), 3) ==
        std::vector<std::int64_t>{1, 1, 0, 0});
  auto closed = edges;
  closed.push_back({"e", "0", "2"});
  CHECK(betti(validate_category({{"0", "1", "2", "3"}, closed, {{"b", "a", "e"}, {"d", "c", "e"}}}), 3) ==
        std::vector<std::int64_t>{1, 0, 0, 0});
}

TEST_CASE("nerve dimensions count composable chains") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 25; ++i) {
    const FinCategory c = random_category(rng, 3, 8);
    const ChainComplexQ k = nerve_chains(c, 2);
    std::size_t non_id = 0;
    for (std::size_t m = 0; m < c.morphism_count(); ++m) non_id += c.is_identity(Mor(m)) ? 0 : 1;
    std::size_t pairs = 0;
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
      for (std::size_t g = 0; g < c.morphism_count(); ++g) {
        if (c.is_identity(Mor(f)) || c.is_identity(Mor(g))) continue;
        if (c.tgt(Mor(f)) == c.src(Mor(g))) ++pairs;
      }
    }
    CHECK(k.dimension(0) == c.object_count());
    CHECK(k.dimension(1) == non_id);
    CHECK(k.dimension(2) == pairs);
  }
}

TEST_CASE("Euler characteristic of loop-free categories") {
  std::mt19937_64 rng(8);
  std::size_t checked = 0;
  for (int i = 0; i < 200 && checked < 20; ++i) {
    const FinCategory c = random_category(rng, 4, 10);
    if (!is_loop_free(c)) continue;
    const std::size_t d = c.object_count() + 1;
    const ChainComplexQ k = nerve_chains(c, d);
    const auto b = rational_homology(k);
    std::int64_t chains = 0;
    std::int64_t homology = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      const std::int64_t sign = j % 2 == 0 ? 1 : -1;
      chains += sign * static_cast<std::int64_t>(k.dimension(j));
      homology += sign * b[j];
    }
    CHECK(chains == homology);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("categories with an initial or terminal object are acyclic") {
  CHECK(acyclicity_certificate(point(), 3).acyclic());
  CHECK(acyclicity_certificate(point(), 3).complete);
  CHECK(acyclicity_certificate(chain_poset(4), 3).acyclic());
  CHECK(acyclicity_certificate(build_standard(StandardKind::span), 3).acyclic());
  CHECK(acyclicity_certificate(build_standard(StandardKind::cospan), 3).acyclic());
  CHECK(acyclicity_certificate(fin_inj_leq(2), 3).acyclic());
  CHECK_FALSE(acyclicity_certificate(discrete(2), 3).acyclic());

  const AcyclicityCertificate empty = acyclicity_certificate(discrete(0), 2);
  CHECK_FALSE(empty.nonempty);
  CHECK(empty.reduced_betti[0] == -1);

  const AcyclicityCertificate bs2 = acyclicity_certificate(symmetric_group(2), 4);
  CHECK(bs2.acyclic());
  CHECK_FALSE(bs2.complete);
  CHECK(bs2.reduced_betti == std::vector<std::int64_t>{0, 0, 0, 0, 0});

  // Coslices of the identity have an initial object.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const FinCategory c = random_category(rng, 3, 8);
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      CHECK(acyclicity_certificate(lax_fiber(identity_functor(c), Obj(a)).category, 2).acyclic());
    }
  }
}

TEST_CASE("homology is invariant under equivalence") {
  CHECK(betti(indiscrete2(), 3) == betti(point(), 3));
  const FinCategory g = symmetric_group(2);
  CHECK(betti(product(g, indiscrete2()), 3) == betti(g, 3));
  const FinCategory chain = chain_poset(3);
  CHECK(betti(product(chain, indiscrete2()), 3) == betti(point(), 3));
}

TEST_CASE("induced maps on homology") {
  const FinCategory arrow = walking_arrow();
  CHECK(functor_homology_comparison(identity_functor(arrow), 3).isomorphic());
  CHECK(functor_homology_comparison(object_functor(arrow, Obj(1)), 3).isomorphic());
  CHECK(functor_homology_comparison(terminal_functor(chain_poset(3)), 3).isomorphic());
  CHECK_FALSE(functor_homology_comparison(terminal_functor(discrete(2)), 3).isomorphic());

  const HomologyComparison inc = functor_homology_comparison(fin_inj_inclusion(2), 3);
  CHECK(inc.isomorphic());
  CHECK(inc.degrees.back().conclusive == false);
  for (std::size_t k = 0; k + 1 < inc.degrees.size(); ++k) CHECK(inc.degrees[k].isomorphism);
}

TEST_CASE("simplex budget") {
  try {
    (void)nerve_chains(symmetric_group(3), 10, 1000);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SimplexBudgetExceeded);
  }
}
