#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rickartlab/element_set.hpp"
#include "rickartlab/finring.hpp"
#include "rickartlab/limits.hpp"
#include "rickartlab/verdict.hpp"

namespace rickart {

  class Homomorphism;

  // Closed under addition and under the action of every ring element;
  // `members` is the closure of `generators`.
  struct Submodule {
    ElementSet        members;
    std::vector<Elem> generators;

    std::size_t size() const {
      return members.size();
    }
    bool contains(Elem m) const {
      return members.contains(m);
    }
    bool operator==(Submodule const& other) const {
      return members == other.members;
    }
  };

  namespace detail {
    struct ModuleData;
  }

  // Finite unital right module over a FiniteRing, presented as
  // Z_{d_1} x ... x Z_{d_k} with the action of each ring element given by
  // the images of the k canonical generators.
  //
  // Elements are indexed by their coordinate tuples in lexicographic order
  // (first coordinate most significant), so index 0 is zero and the
  // canonical generator g_i has a single 1 in position i.
  //
  // A FiniteModule is a cheap, immutable handle. The submodule lattice and
  // the endomorphism tables are computed on first use and cached; the cache
  // is write-once and safe for concurrent readers.
  class FiniteModule {
   public:
    // Images of the canonical generators under one ring element, as
    // coordinate tuples: images[i] = coordinates of g_i * r.
    using GeneratorImages = std::vector<std::vector<int>>;

    // action[r] holds the generator images for ring element r; all ring
    // elements must be present. Throws ConstructionError naming the failed
    // module axiom, or CapacityError past limits.module_order.
    static FiniteModule create(RingPtr                      ring,
                               std::vector<int>             cyclic_orders,
                               std::vector<GeneratorImages> action,
                               std::string                  label,
                               Limits const&                limits = default_limits());

    // As create, but only some ring elements are given; the rest follow by
    // additivity. The given elements must additively generate the ring.
    static FiniteModule create_additive(
        RingPtr                                     ring,
        std::vector<int>                            cyclic_orders,
        std::vector<std::pair<Elem, GeneratorImages>> partial_action,
        std::string                                 label,
        Limits const&                               limits = default_limits());

    // R as a right module over itself, on an additive basis of R.
    static FiniteModule regular(RingPtr ring, Limits const& limits = default_limits());

    static FiniteModule zero(RingPtr ring, Limits const& limits = default_limits());

    // Z_{d_1} x ... x Z_{d_k} over zmod(n) with the natural action; every d_i
    // must divide n.
    static FiniteModule cyclic_sum(RingPtr          zmod_ring,
                                   std::vector<int> cyclic_orders,
                                   Limits const&    limits = default_limits());

    // M1 (+) M2 over the same ring. Remembers its factors.
    static FiniteModule direct_sum(FiniteModule const& first,
                                   FiniteModule const& second,
                                   Limits const&       limits = default_limits());

    FiniteRing const& ring() const noexcept;
    RingPtr const&    ring_ptr() const noexcept;
    std::string const& label() const noexcept;
    Limits const&     limits() const noexcept;

    std::size_t           size() const noexcept;
    std::span<int const>  cyclic_orders() const noexcept;
    std::size_t           generator_count() const noexcept;
    Elem                  generator(std::size_t i) const noexcept;
    ElementSet            all() const;

    Elem zero_element() const noexcept {
      return 0;
    }
    Elem add(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept {
      return add(a, neg(b));
    }
    // m * r
    Elem act(Elem m, Elem r) const noexcept;
    // k * m for an integer k >= 0
    Elem multiple(Elem m, long k) const noexcept;

    std::vector<int> const& coordinates(Elem m) const noexcept;
    Elem                    from_coordinates(std::span<int const> coords) const;
    std::string             element_name(Elem m) const;

    // Set when built by direct_sum.
    bool                has_factors() const noexcept;
    FiniteModule const& factor(std::size_t i) const;

    // For regular(R): module element -> ring element, and back. Empty
    // otherwise.
    std::span<Elem const> ring_element_of() const noexcept;
    std::span<Elem const> module_element_of() const noexcept;

    // Cached lattices. Throw CapacityError past the module's limits.
    std::vector<Submodule> const&         submodules() const;
    std::vector<std::vector<Elem>> const& endomorphism_tables() const;
    // Images of the idempotent endomorphisms: exactly the direct summands.
    std::vector<ElementSet> const&        summand_lattice() const;

    std::vector<Homomorphism> endomorphisms() const;

    bool same_ring(FiniteModule const& other) const noexcept;
    bool same_object(FiniteModule const& other) const noexcept {
      return data_ == other.data_;
    }

   private:
    explicit FiniteModule(std::shared_ptr<detail::ModuleData const> data)
        : data_(std::move(data)) {}

    friend struct detail::ModuleData;

    std::shared_ptr<detail::ModuleData const> data_;
  };

  // R-linear map between finite modules over the same ring, stored as the
  // full element table. Well-definedness and R-linearity are checked at
  // construction by full-table expansion.
  class Homomorphism {
   public:
    // images[i] = image of the i-th canonical generator of source.
    static Homomorphism from_generator_images(FiniteModule const& source,
                                              FiniteModule const& target,
                                              std::vector<Elem>   images);

    static Homomorphism identity(FiniteModule const& M);
    static Homomorphism zero(FiniteModule const& source, FiniteModule const& target);

    FiniteModule const& source() const noexcept {
      return source_;
    }
    FiniteModule const& target() const noexcept {
      return target_;
    }

    Elem operator()(Elem m) const noexcept {
      return table_[m];
    }
    std::span<Elem const> table() const noexcept {
      return table_;
    }
    std::vector<Elem> generator_images() const;

    bool is_zero() const noexcept;

    // "g1 -> (0,2), g2 -> (1,0)"
    std::string render() const;

    bool operator==(Homomorphism const& other) const {
      return table_ == other.table_;
    }

    // Builds the homomorphism from a precomputed table without validation.
    // Only for enumerators that already enforce the constraints.
    static Homomorphism from_trusted_table(FiniteModule const& source,
                                           FiniteModule const& target,
                                           std::vector<Elem>   table);

   private:
    Homomorphism(FiniteModule source, FiniteModule target, std::vector<Elem> table)
        : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {}

    FiniteModule      source_;
    FiniteModule      target_;
    std::vector<Elem> table_;
  };

  // f o g (apply g first). Throws std::invalid_argument on shape mismatch.
  Homomorphism compose(Homomorphism const& f, Homomorphism const& g);
  // Pointwise f + g.
  Homomorphism add(Homomorphism const& f, Homomorphism const& g);

  ////////////////////////////////////////////////////////////////////////
  // Submodules
  ////////////////////////////////////////////////////////////////////////

  Submodule submodule_closure(FiniteModule const& M, std::span<Elem const> generators);
  // Validates that `members` is a submodule and picks generators greedily.
  Submodule make_submodule(FiniteModule const& M, ElementSet const& members);
  bool      is_submodule(FiniteModule const& M, ElementSet const& members);
  // mR
  ElementSet cyclic_submodule(FiniteModule const& M, Elem m);
  // A + B
  ElementSet submodule_sum(FiniteModule const& M, ElementSet const& a, ElementSet const& b);

  // Every submodule once, sorted by (size, members).
  std::vector<Submodule> submodules(FiniteModule const& M);

  // All R-homomorphisms M -> N by generator-image backtracking, in
  // lexicographic order of the generator images. Throws CapacityError past
  // limits.hom_count.
  std::vector<Homomorphism> hom_set(FiniteModule const& M, FiniteModule const& N);
  std::vector<std::vector<Elem>> hom_tables(FiniteModule const& M, FiniteModule const& N);

  Submodule kernel(Homomorphism const& f);
  Submodule image(Homomorphism const& f);

  // N <=e P inside M (N, P submodules with N in P): every nonzero m in P has
  // some r with 0 != m r in N.
  bool is_essential_in(FiniteModule const& M, ElementSet const& N, ElementSet const& P);
  bool is_essential(FiniteModule const& M, ElementSet const& N);
  bool is_closed(FiniteModule const& M, ElementSet const& N);

  struct SummandCertificate {
    Submodule    complement;
    Homomorphism idempotent;
  };

  struct SummandResult {
    Status                            status = Status::fails;
    std::optional<SummandCertificate> certificate;
  };

  // Complement route: first submodule C with N n C = 0 and N + C = M.
  std::optional<Submodule> find_complement(FiniteModule const& M, ElementSet const& N);
  // Idempotent route: first idempotent endomorphism with image N.
  std::optional<Homomorphism> find_summand_idempotent(FiniteModule const& M, ElementSet const& N);
  // The projection onto N along C, rebuilt from the decomposition M = N + C.
  Homomorphism projection_along(FiniteModule const& M, ElementSet const& N, ElementSet const& C);

  // Runs both routes and requires them to agree (std::logic_error if not).
  SummandResult is_direct_summand(FiniteModule const& M, ElementSet const& N);

  struct QuotientResult {
    FiniteModule module;
    Homomorphism projection;
  };
  QuotientResult quotient(FiniteModule const& M, ElementSet const& N);

  struct EmbeddedSubmodule {
    FiniteModule module;
    Homomorphism inclusion;
  };
  // N as a module in its own right, with its inclusion into M.
  EmbeddedSubmodule as_module(FiniteModule const& M, ElementSet const& N);

  // {r : m r = 0 for all m}; a two-sided ideal.
  RightIdeal annihilator_in_ring(FiniteModule const& M);

  // For M built by direct_sum.
  Homomorphism direct_sum_injection(FiniteModule const& M, std::size_t i);
  Homomorphism direct_sum_projection(FiniteModule const& M, std::size_t i);
  // N = (N n M1) (+) (N n M2).
  bool decomposes_along(FiniteModule const& M, ElementSet const& N);

  // Brute-force search for an isomorphism M -> N.
  std::optional<Homomorphism> find_module_isomorphism(FiniteModule const& M,
                                                      FiniteModule const& N);

  std::string describe(FiniteModule const& M, ElementSet const& s);

}  // namespace rickart
