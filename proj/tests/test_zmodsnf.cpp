#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rickartlab/errors.hpp"
#include "rickartlab/zmodsnf.hpp"

using namespace rickart;

namespace {

  ZModHom hom(FgZModule const& M, std::vector<std::vector<std::int64_t>> const& rows) {
    return ZModHom::make(M, M, IntMatrix::from_rows(rows));
  }

}  // namespace

TEST_CASE("Smith normal form examples") {
  auto const a = smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(a.diagonal() == std::vector<std::int64_t>{2, 6, 12});
  auto const b = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(b.diagonal() == std::vector<std::int64_t>{1, 6});
  auto const z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.rank() == 0);
  CHECK(fixtures::snf_problem(IntMatrix(2, 3), z).empty());
  auto const e = smith_normal_form(IntMatrix(0, 0));
  CHECK(e.rank() == 0);
}

TEST_CASE("random matrices satisfy the SNF invariants") {
  std::mt19937_64 rng(0x5eed'0001);
  for (int t = 0; t < 1000; ++t) {
    auto const A = fixtures::random_matrix(rng, 6, 20);
    auto const r = smith_normal_form(A);
    auto const problem = fixtures::snf_problem(A, r);
    CAPTURE(A.to_string());
    CHECK(problem.empty());
    if (A.rows() <= 4 && A.cols() <= 4) {
      CHECK(fixtures::nonzero_diagonal(r) == oracle::invariant_factors(A.to_rows()));
      if (A.rows() == A.cols()) {
        CHECK(std::llabs(oracle::det(r.U.to_rows())) == 1);
        CHECK(std::llabs(oracle::det(r.V.to_rows())) == 1);
      }
    }
  }
}

TEST_CASE("overflow is reported") {
  CHECK_THROWS_AS(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), OverflowError);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), OverflowError);
  CHECK_THROWS_AS(smith_normal_form(IntMatrix::from_rows({{5'000'000'000, 1}}), kDefaultEntryBound), OverflowError);
}

TEST_CASE("canonical forms") {
  CHECK(FgZModule::canonical(0, {2, 3}) == FgZModule::canonical(0, {6}));
  CHECK(FgZModule::canonical(0, {4, 6}).torsion == std::vector<std::int64_t>{2, 12});
  CHECK(FgZModule::canonical(1, {0, 1}).rank == 2);
  CHECK(FgZModule::canonical(0, {}).exponent() == 1);
  CHECK(FgZModule::canonical(1, {2}).exponent() == 0);
}

TEST_CASE("homomorphisms are validated") {
  auto const M = FgZModule::canonical(1, {2});
  // Torsion generator cannot map to the free part.
  CHECK_THROWS_AS(ZModHom::make(M, M, IntMatrix::from_rows({{1, 1}, {0, 1}})), ConstructionError);
  auto const Z2 = FgZModule::canonical(0, {2});
  auto const Z4 = FgZModule::canonical(0, {4});
  // Z_2 -> Z_4, 1 -> 1 ignores the order condition.
  CHECK_THROWS_AS(ZModHom::make(Z2, Z4, IntMatrix::from_rows({{1}})), ConstructionError);
  CHECK_NOTHROW(ZModHom::make(Z2, Z4, IntMatrix::from_rows({{2}})));
}

TEST_CASE("kernels") {
  auto const Z = FgZModule::canonical(1, {});
  auto const k = zhom_kernel(hom(Z, {{2}}));
  CHECK(k.module == FgZModule::canonical(0, {}));

  auto const M  = FgZModule::canonical(1, {2});
  auto const f  = hom(M, {{0, 0}, {1, 0}});  // e1 -> (0, 1)
  auto const kf = zhom_kernel(f);
  CHECK(kf.module == M);  // 2Z + Z_2
  CHECK(compose(f, kf.inclusion).is_zero());
  CHECK(zsummand_test(kf.inclusion).status == Status::fails);
}

TEST_CASE("kernel soundness on random endomorphisms") {
  std::mt19937_64 rng(0x5eed'0002);
  std::vector<FgZModule> const mods{FgZModule::canonical(2, {}), FgZModule::canonical(1, {2}),
                                    FgZModule::canonical(1, {4}), FgZModule::canonical(0, {2, 4}),
                                    FgZModule::canonical(2, {6})};
  std::uniform_int_distribution<std::int64_t> entry(-6, 6);
  for (auto const& M : mods) {
    CAPTURE(M.to_string());
    for (int t = 0; t < 100; ++t) {
      auto const n = M.generator_count();
      IntMatrix  A(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          A(i, j) = entry(rng);
        }
      }
      // Torsion columns: scale so the order condition holds.
      for (std::size_t j = M.rank; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          if (i < M.rank) {
            A(i, j) = 0;
          } else {
            auto const di = M.generator_order(i), dj = M.generator_order(j);
            auto const step = di / std::gcd(di, dj);
            A(i, j) *= step;
          }
        }
      }
      auto const h = ZModHom::make(M, M, A);
      auto const k = zhom_kernel(h);
      CHECK(compose(h, k.inclusion).is_zero());
      // Some random elements outside the kernel map to nonzero values.
      for (int s = 0; s < 8; ++s) {
        std::vector<std::int64_t> x(n);
        for (auto& v : x) {
          v = entry(rng);
        }
        x = normalize(M, x);
        auto const hx = h.apply(x);
        bool const zero = std::all_of(hx.begin(), hx.end(), [](auto v) { return v == 0; });
        if (zero) {
          auto const kx = solve_integer_system(k.inclusion.matrix(), x);
          // Torsion coordinates are only defined modulo d_j; accept a
          // solution of the congruence system instead.
          if (!kx) {
            std::vector<std::int64_t> rhs = x;
            IntMatrix                 aug(n, k.module.generator_count() + (n - M.rank));
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t j = 0; j < k.module.generator_count(); ++j) {
                aug(i, j) = k.inclusion.matrix()(i, j);
              }
              if (i >= M.rank) {
                aug(i, k.module.generator_count() + (i - M.rank)) = M.generator_order(i);
              }
            }
            CHECK(solve_integer_system(aug, rhs));
          }
        }
      }
    }
  }
}

TEST_CASE("summand test") {
  auto const Z  = FgZModule::canonical(1, {});
  auto const r2 = zsummand_test(ZModHom::make(Z, Z, IntMatrix::from_rows({{2}})));
  CHECK(r2.status == Status::fails);
  CHECK(r2.failing_coordinate);
  CHECK_FALSE(r2.obstruction.empty());

  auto const Z2 = FgZModule::canonical(2, {});
  auto const first = ZModHom::make(Z, Z2, IntMatrix::from_rows({{1}, {3}}));
  auto const s     = zsummand_test(first);
  REQUIRE(s.status == Status::holds);
  REQUIRE(s.retraction);
  CHECK(compose(*s.retraction, first) == ZModHom::identity(Z));

  CHECK_THROWS_AS(zsummand_test(ZModHom::make(Z, Z, IntMatrix::from_rows({{0}}))), std::invalid_argument);
}

TEST_CASE("Z + Z_2 is not Rickart") {
  auto const r = zrickart_check(FgZModule::canonical(1, {2}));
  REQUIRE(r.status == Status::fails);
  REQUIRE(r.witness);
  REQUIRE(r.kernel);
  CHECK(r.kernel->module == FgZModule::canonical(1, {2}));
  CHECK(zsummand_test(r.kernel->inclusion).status == Status::fails);
}

TEST_CASE("zrickart branches") {
  auto const z  = zrickart_check(FgZModule::canonical(1, {}));
  CHECK(z.status == Status::holds);
  CHECK(z.branch == "torsion_free");
  auto const z2 = zrickart_check(FgZModule::canonical(2, {}));
  CHECK(z2.status == Status::holds);
  auto const z4 = zrickart_check(FgZModule::canonical(0, {4}));
  CHECK(z4.status == Status::fails);
  CHECK(z4.branch == "finite");
  CHECK(zrickart_check(FgZModule::canonical(0, {6})).status == Status::holds);
  CHECK(zrickart_check(FgZModule::canonical(0, {2, 4})).status == Status::fails);
}

TEST_CASE("finite Z-modules agree with the finite engine") {
  for (auto const& z : app::builtin_corpus().zmodules) {
    if (!z.module.is_torsion()) {
      continue;
    }
    CAPTURE(z.name);
    auto const& t = z.module.torsion;
    std::vector<int> orders(t.begin(), t.end());
    auto const n = static_cast<int>(z.module.exponent());
    auto const M = FiniteModule::cyclic_sum(make_zmod(n), orders);
    auto const finite = decide_module_property(M, ModuleProperty::rickart).status;
    CHECK(zrickart_check(z.module).status == finite);
    CHECK(zrickart_sweep(z.module).status == finite);
    // zmod(exponent) endomorphisms are exactly the Z-endomorphisms.
    CHECK(static_cast<std::int64_t>(M.endomorphism_tables().size()) == oracle::endo_count(orders));
    for (auto const& f : M.endomorphisms()) {
      auto const h = zhom_from_finite(z.module, f);
      for (std::size_t i = 0; i < M.generator_count(); ++i) {
        auto const img = M.coordinates(f(M.generator(i)));
        for (std::size_t j = 0; j < img.size(); ++j) {
          CHECK(h.matrix()(j, i) == img[j]);
        }
      }
    }
  }
}
