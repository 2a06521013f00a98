#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rickartlab/abelian_group.hpp"
#include "rickartlab/element_set.hpp"
#include "rickartlab/limits.hpp"
#include "rickartlab/verdict.hpp"

namespace rickart {

  ////////////////////////////////////////////////////////////////////////
  // Constructor expressions
  ////////////////////////////////////////////////////////////////////////

  struct RingExpr;

  struct ZmodExpr {
    int  n = 1;
    bool operator==(ZmodExpr const&) const = default;
  };

  struct ProductExpr {
    std::vector<RingExpr> factors;
    bool                  operator==(ProductExpr const&) const;
  };

  struct MatrixExpr {
    std::shared_ptr<RingExpr const> base;
    int                             k = 1;
    bool                            operator==(MatrixExpr const&) const;
  };

  // zmod(modulus)[x] / (f) with f monic; coefficients are listed from the
  // leading coefficient down to the constant term, e.g. x^2+x+1 -> {1,1,1}.
  struct PolyQuotientExpr {
    int              modulus = 2;
    std::vector<int> coefficients;
    bool             operator==(PolyQuotientExpr const&) const = default;
  };

  struct TableExpr {
    std::vector<std::vector<int>> add;
    std::vector<std::vector<int>> mul;
    int                           zero = 0;
    int                           one  = 0;
    bool                          operator==(TableExpr const&) const = default;
  };

  struct RingExpr {
    std::variant<ZmodExpr, ProductExpr, MatrixExpr, PolyQuotientExpr, TableExpr>
        node;

    bool operator==(RingExpr const&) const = default;

    static RingExpr zmod(int n) {
      return RingExpr{ZmodExpr{n}};
    }
    static RingExpr product(std::vector<RingExpr> factors) {
      return RingExpr{ProductExpr{std::move(factors)}};
    }
    static RingExpr matrix(RingExpr base, int k) {
      return RingExpr{
          MatrixExpr{std::make_shared<RingExpr const>(std::move(base)), k}};
    }
    static RingExpr poly_quotient(int modulus, std::vector<int> coefficients) {
      return RingExpr{PolyQuotientExpr{modulus, std::move(coefficients)}};
    }
  };

  // "product(zmod(2),matrix(zmod(2),2))" etc. Tables render as table(order=n).
  std::string to_string(RingExpr const& expr);

  // Inverse of to_string for every constructor except explicit tables.
  // Throws Error on malformed text.
  RingExpr parse_ring_expr(std::string_view text);

  ////////////////////////////////////////////////////////////////////////
  // FiniteRing
  ////////////////////////////////////////////////////////////////////////

  // Finite associative ring with identity, stored as dense Cayley tables
  // over element indices 0..order-1. Immutable; all axioms are verified at
  // construction.
  class FiniteRing {
   public:
    // Throws ConstructionError naming the first failed axiom, or
    // CapacityError above limits.ring_construct_order.
    static FiniteRing from_tables(std::size_t              order,
                                  std::vector<Elem>        add,
                                  std::vector<Elem>        mul,
                                  Elem                     zero,
                                  Elem                     one,
                                  std::string              label,
                                  std::vector<std::string> names  = {},
                                  Limits const&            limits = default_limits());

    std::size_t order() const noexcept {
      return order_;
    }
    Elem zero() const noexcept {
      return zero_;
    }
    Elem one() const noexcept {
      return one_;
    }

    Elem add(Elem a, Elem b) const noexcept {
      return add_[a * order_ + b];
    }
    Elem mul(Elem a, Elem b) const noexcept {
      return mul_[a * order_ + b];
    }
    Elem neg(Elem a) const noexcept {
      return neg_[a];
    }
    Elem sub(Elem a, Elem b) const noexcept {
      return add(a, neg(b));
    }

    std::span<Elem const> add_table() const noexcept {
      return add_;
    }
    std::span<Elem const> mul_table() const noexcept {
      return mul_;
    }

    std::string const& label() const noexcept {
      return label_;
    }
    std::string const& element_name(Elem e) const {
      return names_[e];
    }
    std::optional<RingExpr> const& expression() const noexcept {
      return expr_;
    }

    // Basis of (R, +) as a product of cyclic groups.
    CyclicDecomposition const& additive_basis() const noexcept {
      return basis_;
    }

    ElementSet all() const {
      return ElementSet::all(order_);
    }

    bool is_commutative() const noexcept;

   private:
    friend std::shared_ptr<FiniteRing const> build_ring(RingExpr const&,
                                                        Limits const&);
    FiniteRing() = default;

    std::size_t              order_ = 0;
    std::vector<Elem>        add_;
    std::vector<Elem>        mul_;
    std::vector<Elem>        neg_;
    Elem                     zero_ = 0;
    Elem                     one_  = 0;
    std::string              label_;
    std::vector<std::string> names_;
    std::optional<RingExpr>  expr_;
    CyclicDecomposition      basis_;
  };

  using RingPtr = std::shared_ptr<FiniteRing const>;

  // Builds and validates the ring described by `expr`.
  RingPtr build_ring(RingExpr const& expr, Limits const& limits = default_limits());

  inline RingPtr make_zmod(int n) {
    return build_ring(RingExpr::zmod(n));
  }

  ////////////////////////////////////////////////////////////////////////
  // Ideals
  ////////////////////////////////////////////////////////////////////////

  // Closed under addition and under right multiplication by R; `members` is
  // the closure of `generators`.
  struct RightIdeal {
    ElementSet        members;
    std::vector<Elem> generators;

    std::size_t size() const {
      return members.size();
    }
    bool contains(Elem e) const {
      return members.contains(e);
    }
    bool operator==(RightIdeal const& other) const {
      return members == other.members;
    }
  };

  // Closed under addition and under left multiplication by R.
  struct LeftIdeal {
    ElementSet        members;
    std::vector<Elem> generators;

    std::size_t size() const {
      return members.size();
    }
    bool contains(Elem e) const {
      return members.contains(e);
    }
  };

  RightIdeal right_ideal_closure(FiniteRing const& R, std::span<Elem const> gens);
  // Validates that `members` is a right ideal and picks generators greedily.
  RightIdeal make_right_ideal(FiniteRing const& R, ElementSet const& members);
  LeftIdeal  left_ideal_closure(FiniteRing const& R, std::span<Elem const> gens);

  // aR
  ElementSet principal_right_ideal(FiniteRing const& R, Elem a);

  bool is_right_ideal(FiniteRing const& R, ElementSet const& s);
  bool is_two_sided_ideal(FiniteRing const& R, ElementSet const& s);

  // {r : x r = 0 for all x in X}
  RightIdeal right_annihilator(FiniteRing const& R, std::span<Elem const> X);
  // {r : r x = 0 for all x in X}
  LeftIdeal left_annihilator(FiniteRing const& R, std::span<Elem const> X);

  // Every e with e*e = e, ascending.
  std::vector<Elem> idempotents(FiniteRing const& R);

  // Every right ideal exactly once, sorted by (size, members). Throws
  // CapacityError past limits.ideal_count or limits.ring_decider_order.
  std::vector<RightIdeal> right_ideals(FiniteRing const& R,
                                       Limits const&     limits = default_limits());

  // A right annihilator r_R(X) together with the subset X realizing it.
  struct AnnihilatorIdeal {
    RightIdeal        ideal;
    std::vector<Elem> subset;
  };

  // {r_R(X) : X a subset of R}, computed as the intersection-closure of the
  // element annihilators. Sorted by (size, members); `subset` is the first
  // realizing set found in ascending scan order.
  std::vector<AnnihilatorIdeal> right_annihilator_lattice(FiniteRing const& R);

  // True iff I meets every nonzero principal right ideal nontrivially.
  bool is_essential_right_ideal(FiniteRing const& R, ElementSet const& I);

  // Z(R_R) = {a : r_R(a) essential in R_R}.
  RightIdeal right_singular_ideal(FiniteRing const& R);

  ElementSet units(FiniteRing const& R);

  // {x : 1 - r x is a unit for all r}; two-sided, returned as a right ideal.
  RightIdeal jacobson_radical(FiniteRing const& R);

  // R / I for a two-sided ideal I, built from coset tables. Coset
  // representatives are the least element index of each coset.
  RingPtr quotient_ring(FiniteRing const& R, ElementSet const& ideal);

  // Brute-force isomorphism search with propagation. Returns phi with
  // phi[a] in B for every a in A. Throws CapacityError above
  // limits.isomorphism_order.
  std::optional<std::vector<Elem>> find_isomorphism(FiniteRing const& A,
                                                    FiniteRing const& B,
                                                    Limits const& limits = default_limits());

  ////////////////////////////////////////////////////////////////////////
  // Property deciders
  ////////////////////////////////////////////////////////////////////////

  enum class RingProperty {
    vn_regular,
    right_rickart,
    baer,
    right_nonsingular,
    right_semihereditary,
    reduced,
    domain
  };

  std::string_view                  to_string(RingProperty p) noexcept;
  std::optional<RingProperty>       ring_property_from_string(std::string_view s);
  std::span<RingProperty const>     all_ring_properties() noexcept;

  struct RingWitness {
    // Counterexample elements, e.g. a for vn_regular, (a, b) for domain.
    std::vector<Elem> elements;
    // Offending ideal (annihilator, non-projective ideal, singular ideal).
    std::optional<RightIdeal> ideal;
    // HOLDS certificate for right_rickart / baer: (a or ideal index, e).
    std::vector<std::pair<Elem, Elem>> certificate;
    std::string                        description;
  };

  struct RingVerdict {
    RingProperty property = RingProperty::vn_regular;
    Status       status   = Status::unsupported;
    RingWitness  witness;
  };

  // Exact decision with a canonical witness (first counterexample in
  // ascending element order). UNSUPPORTED, with the exceeded cap in the
  // description, when a cap is hit.
  RingVerdict decide_ring_property(FiniteRing const& R,
                                   RingProperty      p,
                                   Limits const&     limits = default_limits());

}  // namespace rickart
