#include "doctest.h"

#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rickartlab/modprops.hpp"

using namespace rickart;
using fixtures::set_of;

namespace {

  Status decide(FiniteModule const& M, ModuleProperty p) {
    return decide_module_property(M, p).status;
  }

  using StatusMap = std::map<ModuleProperty, Status>;

  StatusMap all_statuses(FiniteModule const& M) {
    StatusMap out;
    for (auto p : all_module_properties()) {
      out[p] = decide(M, p);
    }
    return out;
  }

  bool implies(Status a, Status b) {
    return a != Status::holds || b == Status::holds || b == Status::unsupported;
  }

}  // namespace

TEST_CASE("property names round-trip") {
  for (auto p : all_module_properties()) {
    CHECK(module_property_from_string(to_string(p)) == p);
  }
  CHECK_FALSE(module_property_from_string("noetherian"));
}

TEST_CASE("zmod(4) regular: k-local-retractable but not Rickart") {
  auto const M = FiniteModule::regular(make_zmod(4));
  CHECK(decide(M, ModuleProperty::k_local_retractable) == Status::holds);
  auto const v = decide_module_property(M, ModuleProperty::rickart);
  REQUIRE(v.status == Status::fails);
  REQUIRE(v.witness);
  REQUIRE(v.witness->maps.size() == 1);
  auto const two = M.module_element_of()[2];
  CHECK(v.witness->maps[0](M.module_element_of()[1]) == two);
  CHECK(v.witness->submodule->members == set_of({0, two}));
  CHECK(decide(M, ModuleProperty::baer) == Status::fails);
  CHECK(decide(M, ModuleProperty::k_nonsingular) == Status::fails);
  CHECK(decide(M, ModuleProperty::quasi_injective) == Status::holds);
  CHECK(decide(M, ModuleProperty::extending) == Status::holds);
  CHECK(decide(M, ModuleProperty::retractable) == Status::holds);
}

TEST_CASE("semisimple examples satisfy every property") {
  for (auto const& name : {"z2_z2", "reg_z6", "reg_m2_z2", "reg_f4", "z2_z3_over_z6"}) {
    CAPTURE(name);
    auto const M = fixtures::builtin_module(name);
    for (auto [p, s] : all_statuses(M)) {
      CAPTURE(to_string(p));
      CHECK(s == Status::holds);
    }
  }
}

TEST_CASE("zero module satisfies every property") {
  auto const M = FiniteModule::zero(make_zmod(2));
  for (auto [p, s] : all_statuses(M)) {
    CAPTURE(to_string(p));
    CHECK(s == Status::holds);
  }
}

TEST_CASE("Z_2 + Z_4 over zmod(4)") {
  auto const M = FiniteModule::cyclic_sum(make_zmod(4), {2, 4});
  CHECK(decide(M, ModuleProperty::rickart) == Status::fails);
  CHECK(decide(M, ModuleProperty::quasi_injective) == Status::fails);
  CHECK(decide(M, ModuleProperty::retractable) == Status::holds);
}

TEST_CASE("relative Rickart examples") {
  auto const Z4 = make_zmod(4);
  auto const Z6 = make_zmod(6);
  auto const z4 = FiniteModule::cyclic_sum(Z4, {4});
  auto const z2 = FiniteModule::cyclic_sum(Z4, {2});
  CHECK(is_relatively_rickart(z4, z2).status == Status::fails);
  CHECK(is_relatively_rickart(z2, z4).status == Status::holds);
  CHECK(is_relatively_rickart(FiniteModule::cyclic_sum(Z6, {2}), FiniteModule::cyclic_sum(Z6, {3})).status
        == Status::holds);
  // M is M-Rickart exactly when M is Rickart.
  for (auto const& [name, M] : fixtures::corpus_modules(16)) {
    CAPTURE(name);
    CHECK(is_relatively_rickart(M, M).status == decide(M, ModuleProperty::rickart));
  }
}

TEST_CASE("direct sum theorem: Z_2, Z_3 over zmod(6)") {
  auto const Z6 = make_zmod(6);
  auto const r  = check_direct_sum_theorem(FiniteModule::cyclic_sum(Z6, {2}), FiniteModule::cyclic_sum(Z6, {3}));
  CHECK(r.m1_rickart == Status::holds);
  CHECK(r.m2_rickart == Status::holds);
  CHECK(r.condition1 == Status::holds);
  CHECK(r.m1_rel_m2 == Status::holds);
  CHECK(r.m2_rel_m1 == Status::holds);
  CHECK(r.corollary_condition == Status::holds);
  CHECK(r.annihilator1.members == set_of({0, 2, 4}));
  CHECK(r.annihilator2.members == set_of({0, 3}));
  CHECK(r.conclusion == Status::holds);
  CHECK(r.hypotheses_hold);
  CHECK(r.corollary_hypotheses_hold);
  CHECK(r.outcome == TheoremOutcome::consistent);
}

TEST_CASE("direct sum theorem: Z_2, Z_4 over zmod(4)") {
  auto const Z4 = make_zmod(4);
  auto const r  = check_direct_sum_theorem(FiniteModule::cyclic_sum(Z4, {2}), FiniteModule::cyclic_sum(Z4, {4}));
  CHECK(r.condition1 == Status::fails);
  REQUIRE(r.condition1_witness);
  CHECK(r.m2_rel_m1 == Status::fails);
  CHECK(r.corollary_condition == Status::fails);
  CHECK(r.conclusion == Status::fails);
  CHECK_FALSE(r.hypotheses_hold);
  CHECK(r.outcome == TheoremOutcome::hypotheses_not_met);
}

TEST_CASE("module implications on the corpus") {
  for (auto const& [name, M] : fixtures::corpus_modules(64)) {
    CAPTURE(name);
    auto const s = all_statuses(M);
    CHECK(implies(s.at(ModuleProperty::baer), s.at(ModuleProperty::rickart)));
    CHECK(implies(s.at(ModuleProperty::rickart), s.at(ModuleProperty::sip)));
    CHECK(implies(s.at(ModuleProperty::rickart), s.at(ModuleProperty::k_nonsingular)));
    CHECK(implies(s.at(ModuleProperty::rickart), s.at(ModuleProperty::k_local_retractable)));
    // No infinite sets of orthogonal idempotents in a finite End(M).
    if (s.at(ModuleProperty::baer) != Status::unsupported && s.at(ModuleProperty::rickart) != Status::unsupported) {
      CHECK(s.at(ModuleProperty::baer) == s.at(ModuleProperty::rickart));
    }
  }
}

TEST_CASE("rickart decider matches the definitional oracle") {
  for (auto const& [name, M] : fixtures::corpus_modules(16)) {
    CAPTURE(name);
    CHECK((decide(M, ModuleProperty::rickart) == Status::holds) == oracle::rickart(M));
  }
}

TEST_CASE("every FAILS witness re-checks independently") {
  std::size_t rechecked = 0;
  for (auto const& [name, M] : fixtures::corpus_modules(64)) {
    CAPTURE(name);
    for (auto p : all_module_properties()) {
      auto const v = decide_module_property(M, p, DecideOptions{.all_witnesses = true});
      if (v.status != Status::fails) {
        continue;
      }
      CAPTURE(to_string(p));
      REQUIRE(v.witness);
      CHECK(!v.all_witnesses.empty());
      for (auto const& w : v.all_witnesses) {
        auto const r = recheck_witness(M, p, w);
        CHECK(r != Status::fails);
        rechecked += r == Status::holds;
      }
    }
  }
  CHECK(rechecked > 0);
}

TEST_CASE("summands of Rickart modules are Rickart") {
  for (auto const& [name, M] : fixtures::corpus_modules(32)) {
    if (decide(M, ModuleProperty::rickart) != Status::holds) {
      continue;
    }
    CAPTURE(name);
    for (auto const& N : M.submodules()) {
      auto const r = is_direct_summand(M, N.members);
      if (r.status != Status::holds) {
        continue;
      }
      auto const sub = as_module(M, N.members);
      CHECK(decide(sub.module, ModuleProperty::rickart) == Status::holds);
    }
  }
}

TEST_CASE("Rickart iff kernels between summands are summands") {
  for (auto const& [name, M] : fixtures::corpus_modules(16)) {
    CAPTURE(name);
    std::vector<ElementSet> summands;
    for (auto const& N : M.submodules()) {
      if (is_direct_summand(M, N.members).status == Status::holds) {
        summands.push_back(N.members);
      }
    }
    bool all_split = true;
    for (auto const& A : summands) {
      auto const a = as_module(M, A);
      for (auto const& B : summands) {
        auto const b = as_module(M, B);
        for (auto const& f : hom_set(a.module, b.module)) {
          all_split = all_split && is_direct_summand(a.module, kernel(f).members).status == Status::holds;
        }
      }
    }
    CHECK((decide(M, ModuleProperty::rickart) == Status::holds) == all_split);
  }
}

TEST_CASE("complement search agrees with the DFS route") {
  for (auto const& [name, M] : fixtures::corpus_modules(16)) {
    CAPTURE(name);
    for (auto const& N : M.submodules()) {
      CHECK((is_direct_summand(M, N.members).status == Status::holds) == has_complement_dfs(M, N.members));
    }
  }
}

TEST_CASE("k-local retraction for a Rickart module") {
  auto const M = fixtures::builtin_module("reg_z6");
  for (auto const& phi : M.endomorphisms()) {
    auto const K = kernel(phi);
    for (std::size_t m = 1; m < M.size(); ++m) {
      if (!K.members.contains(static_cast<Elem>(m))) {
        continue;
      }
      auto const psi = k_local_retraction(M, phi, static_cast<Elem>(m));
      REQUIRE(psi);
      CHECK(image(*psi).members.contains(static_cast<Elem>(m)));
      CHECK(image(*psi).members.is_subset_of(K.members));
    }
  }
}
