#include "doctest.h"

#include <algorithm>

#include "corpus.hpp"
#include "oracles.hpp"
#include "rickartlab/errors.hpp"
#include "rickartlab/finring.hpp"

using namespace rickart;

namespace {

  std::vector<RingPtr> corpus_rings() {
    std::vector<RingPtr> out;
    for (auto const& r : app::builtin_corpus().rings) {
      out.push_back(build_ring(r.expr));
    }
    return out;
  }

  ElementSet set_of(std::initializer_list<int> xs) {
    ElementSet s;
    for (int x : xs) {
      s.insert(static_cast<Elem>(x));
    }
    return s;
  }

}  // namespace

TEST_CASE("zmod(1) is the zero ring") {
  auto const R = make_zmod(1);
  CHECK(R->order() == 1);
  CHECK(R->zero() == R->one());
}

TEST_CASE("zmod(6) idempotents") {
  auto const R = make_zmod(6);
  CHECK(idempotents(*R) == std::vector<Elem>{0, 1, 3, 4});
  CHECK(oracle::idempotents(*R) == idempotents(*R));
}

TEST_CASE("product(zmod(2), zmod(3)) is isomorphic to zmod(6)") {
  auto const P = build_ring(RingExpr::product({RingExpr::zmod(2), RingExpr::zmod(3)}));
  auto const Z = make_zmod(6);
  auto const phi = find_isomorphism(*P, *Z);
  REQUIRE(phi);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      auto const A = static_cast<Elem>(a), B = static_cast<Elem>(b);
      CHECK((*phi)[P->add(A, B)] == Z->add((*phi)[A], (*phi)[B]));
      CHECK((*phi)[P->mul(A, B)] == Z->mul((*phi)[A], (*phi)[B]));
    }
  }
  CHECK_FALSE(find_isomorphism(*make_zmod(4), *build_ring(RingExpr::product({RingExpr::zmod(2), RingExpr::zmod(2)}))));
}

TEST_CASE("right annihilators") {
  auto const R = make_zmod(4);
  Elem const two = 2, zero = 0, one = 1;
  CHECK(right_annihilator(*R, std::span(&two, 1)).members == set_of({0, 2}));
  CHECK(right_annihilator(*R, std::span(&zero, 1)).members == R->all());
  CHECK(right_annihilator(*R, std::span(&one, 1)).members == set_of({0}));
}

TEST_CASE("constructor text round-trips") {
  for (auto const& r : app::builtin_corpus().rings) {
    if (std::holds_alternative<TableExpr>(r.expr.node)) {
      continue;
    }
    CAPTURE(r.name);
    CHECK(parse_ring_expr(to_string(r.expr)) == r.expr);
  }
  CHECK_THROWS_AS(parse_ring_expr("zmod("), Error);
}

TEST_CASE("explicit tables that break an axiom are rejected") {
  // zmod(2) with a non-distributive multiplication: 1*1 = 0.
  std::vector<Elem> add{0, 1, 1, 0};
  std::vector<Elem> mul{0, 0, 0, 1};
  CHECK_THROWS_AS(FiniteRing::from_tables(2, add, mul, 0, 0, "bad"), ConstructionError);
}

TEST_CASE("order above the construction cap is a capacity error") {
  Limits l;
  l.ring_construct_order = 16;
  CHECK_THROWS_AS(build_ring(RingExpr::zmod(17), l), CapacityError);
}

TEST_CASE("polynomial quotients") {
  auto const F4 = build_ring(RingExpr::poly_quotient(2, {1, 1, 1}));
  CHECK(F4->order() == 4);
  CHECK(units(*F4).size() == 3);
  auto const D = build_ring(RingExpr::poly_quotient(2, {1, 0, 0}));
  CHECK(D->order() == 4);
  CHECK(jacobson_radical(*D).size() == 2);
}

TEST_CASE("right ideals match the subset oracle") {
  for (auto const& R : corpus_rings()) {
    CAPTURE(R->label());
    auto const engine = right_ideals(*R);
    auto       ref    = oracle::right_ideals(*R);
    std::sort(ref.begin(), ref.end(), size_then_bits_less);
    REQUIRE(engine.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(engine[i].members == ref[i]);
      CHECK(right_ideal_closure(*R, engine[i].generators).members == ref[i]);
    }
  }
}

TEST_CASE("Jacobson radical matches the maximal-ideal oracle") {
  for (auto const& R : corpus_rings()) {
    CAPTURE(R->label());
    CHECK(jacobson_radical(*R).members == oracle::jacobson_radical(*R));
  }
}

TEST_CASE("deciders match the definitional oracles on the corpus") {
  for (auto const& R : corpus_rings()) {
    CAPTURE(R->label());
    CHECK((decide_ring_property(*R, RingProperty::vn_regular).status == Status::holds) == oracle::vn_regular(*R));
    CHECK((decide_ring_property(*R, RingProperty::right_rickart).status == Status::holds)
          == oracle::right_rickart(*R));
    CHECK((decide_ring_property(*R, RingProperty::right_nonsingular).status == Status::holds)
          == oracle::right_nonsingular(*R));
    CHECK((decide_ring_property(*R, RingProperty::reduced).status == Status::holds) == oracle::reduced(*R));
    if (R->order() <= 12) {
      CHECK((decide_ring_property(*R, RingProperty::baer).status == Status::holds) == oracle::baer(*R));
    }
  }
}

TEST_CASE("frozen decider values") {
  // Oracle values, frozen: vn_regular(zmod(n)) iff n squarefree.
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    bool const squarefree = n % 4 != 0 && n % 9 != 0;
    auto const R          = make_zmod(n);
    CHECK(oracle::vn_regular(*R) == squarefree);
    CHECK((decide_ring_property(*R, RingProperty::vn_regular).status == Status::holds) == squarefree);
  }
  auto const Z4 = make_zmod(4);
  CHECK(decide_ring_property(*Z4, RingProperty::right_rickart).status == Status::fails);
  CHECK(decide_ring_property(*Z4, RingProperty::right_nonsingular).status == Status::fails);
  auto const M2 = build_ring(RingExpr::matrix(RingExpr::zmod(2), 2));
  CHECK(decide_ring_property(*M2, RingProperty::vn_regular).status == Status::holds);
  CHECK(decide_ring_property(*M2, RingProperty::domain).status == Status::fails);
  CHECK(decide_ring_property(*M2, RingProperty::reduced).status == Status::fails);
}

TEST_CASE("FAILS witnesses re-check") {
  for (auto const& R : corpus_rings()) {
    CAPTURE(R->label());
    auto const rr = decide_ring_property(*R, RingProperty::right_rickart);
    if (rr.status == Status::fails) {
      REQUIRE(rr.witness.elements.size() == 1);
      auto const a = rr.witness.elements[0];
      CHECK_FALSE(oracle::generated_by_idempotent(*R, oracle::right_annihilator(*R, {a})));
    }
    auto const vn = decide_ring_property(*R, RingProperty::vn_regular);
    if (vn.status == Status::fails) {
      REQUIRE(!vn.witness.elements.empty());
      auto const a = vn.witness.elements[0];
      for (std::size_t x = 0; x < R->order(); ++x) {
        CHECK(R->mul(R->mul(a, static_cast<Elem>(x)), a) != a);
      }
    }
    auto const dom = decide_ring_property(*R, RingProperty::domain);
    if (dom.status == Status::fails && dom.witness.elements.size() == 2) {
      auto const a = dom.witness.elements[0], b = dom.witness.elements[1];
      CHECK(a != R->zero());
      CHECK(b != R->zero());
      CHECK(R->mul(a, b) == R->zero());
    }
  }
}

TEST_CASE("chart implications hold on every corpus ring") {
  for (auto const& R : corpus_rings()) {
    CAPTURE(R->label());
    auto h = [&](RingProperty p) { return decide_ring_property(*R, p).status == Status::holds; };
    bool const vn = h(RingProperty::vn_regular), sh = h(RingProperty::right_semihereditary),
               rr = h(RingProperty::right_rickart), ns = h(RingProperty::right_nonsingular),
               ba = h(RingProperty::baer);
    CHECK((!vn || sh));
    CHECK((!sh || rr));
    CHECK((!rr || ns));
    CHECK((!ba || rr));
    CHECK(ba == rr);  // finite rings have no infinite orthogonal idempotent sets
  }
}

TEST_CASE("quotient ring by the radical") {
  auto const R = make_zmod(8);
  auto const J = jacobson_radical(*R);
  CHECK(J.members == set_of({0, 2, 4, 6}));
  auto const Q = quotient_ring(*R, J.members);
  CHECK(Q->order() == 2);
  CHECK(decide_ring_property(*Q, RingProperty::vn_regular).status == Status::holds);
}

TEST_CASE("decider cap yields UNSUPPORTED") {
  Limits l;
  l.ring_decider_order = 8;
  auto const R = make_zmod(12);
  auto const v = decide_ring_property(*R, RingProperty::baer, l);
  CHECK(v.status == Status::unsupported);
  CHECK(v.witness.description.find("ring_decider_order") != std::string::npos);
}
