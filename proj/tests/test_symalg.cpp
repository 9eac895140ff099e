#include <doctest.h>

#include "cofinal/symalg.hpp"
#include "oracles.hpp"

using namespace cofinal;

TEST_CASE("symmetric orbit dimensions") {
  CHECK(sym_orbit_dim(2, 3) == 4);
  CHECK(sym_orbit_dim(1, 5) == 1);
  CHECK(sym_orbit_dim(3, 0) == 1);
  for (std::size_t d = 1; d <= 4; ++d) {
    for (std::size_t n = 0; n <= 4; ++n) {
      CHECK(sym_orbit_dim(d, n) == oracle::binomial(static_cast<std::int64_t>(d + n - 1), static_cast<std::int64_t>(n)));
    }
  }
  try {
    (void)sym_orbit_dim(4, 7, 100);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("symmetric power dimensions") {
  CHECK(sym_power_dim(0, 0) == 1);
  CHECK(sym_power_dim(0, 3) == 0);
  CHECK(sym_power_dim(2, 3) == 4);
  CHECK(sym_power_dim(3, 2) == 6);
}

TEST_CASE("filtered stages of the symmetric algebra") {
  const SymStageReport r = reduced_sym_sequential(PointedSpaceQ::with_complement(2), 3);
  CHECK(r.stage_dims == std::vector<std::int64_t>{1, 3, 6, 10});
  CHECK(r.all_injective());
  CHECK(r.new_dims == std::vector<std::int64_t>{1, 2, 3, 4});

  for (std::size_t m = 0; m <= 3; ++m) {
    const PointedSpaceQ x = PointedSpaceQ::with_complement(m);
    const SymStageReport s = reduced_sym_sequential(x, 4);
    const auto expected = reduced_sym_oracle(x, 4);
    CHECK(s.stage_dims == expected);
    CHECK(s.colimit_dims == expected);
    CHECK(s.all_injective());
    std::int64_t running = 0;
    for (std::size_t k = 0; k <= 4; ++k) {
      running += k == 0 ? 1 : oracle::binomial(static_cast<std::int64_t>(m + k - 1), static_cast<std::int64_t>(k));
      CHECK(expected[k] == running);
      CHECK(s.stage_dims[k] == oracle::binomial(static_cast<std::int64_t>(m + k), static_cast<std::int64_t>(k)));
      CHECK(s.new_dims[k] == sym_power_dim(m, k));
    }
  }
}

TEST_CASE("fibers of the symmetric group inclusion into injections") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const FinInjReport r = fin_inj_fiber_check(n, 3);
    CHECK(r.passed());
    REQUIRE(r.fibers.size() == n + 1);
    for (const auto& f : r.fibers) {
      std::size_t fact = 1;
      for (std::size_t k = 2; k <= n - f.subset_size; ++k) fact *= k;
      CHECK(f.group_order == fact);
      CHECK(f.automorphism_order == fact);
      CHECK(f.groupoid);
      CHECK(f.components == 1);
      CHECK(f.fiber_certificate.acyclic());
    }
  }
  const FinInjReport three = fin_inj_fiber_check(3, 3);
  CHECK(three.fibers[0].fiber_objects == 1);
  CHECK(three.fibers[1].fiber_objects == 3);
  CHECK(three.fibers[2].fiber_objects == 6);
  CHECK(three.fibers[3].fiber_objects == 6);
}
