#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rickartlab/limits.hpp"
#include "rickartlab/modprops.hpp"
#include "rickartlab/verdict.hpp"

namespace rickart {

  // Overflow-checked int64 arithmetic; throws OverflowError.
  std::int64_t checked_add(std::int64_t a, std::int64_t b);
  std::int64_t checked_sub(std::int64_t a, std::int64_t b);
  std::int64_t checked_mul(std::int64_t a, std::int64_t b);

  // Dense row-major integer matrix. Zero-sized dimensions are allowed.
  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);
    // Throws std::invalid_argument on ragged input.
    static IntMatrix from_rows(std::vector<std::vector<std::int64_t>> const& rows);

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }
    std::int64_t& operator()(std::size_t i, std::size_t j) {
      return data_[i * cols_ + j];
    }
    std::int64_t operator()(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    std::vector<std::vector<std::int64_t>> to_rows() const;
    std::string                            to_string() const;

    bool operator==(IntMatrix const&) const = default;

   private:
    std::size_t               rows_ = 0;
    std::size_t               cols_ = 0;
    std::vector<std::int64_t> data_;
  };

  IntMatrix multiply(IntMatrix const& a, IntMatrix const& b);

  // U * A * V = D with U, V unimodular (U_inv, V_inv are their inverses) and
  // D diagonal, nonnegative, d_1 | d_2 | ... (zeros last).
  struct SnfResult {
    IntMatrix U;
    IntMatrix V;
    IntMatrix D;
    IntMatrix U_inv;
    IntMatrix V_inv;

    std::size_t               rank() const;
    std::vector<std::int64_t> diagonal() const;
  };

  constexpr std::int64_t kDefaultEntryBound = 1'000'000'000;

  // Pivot rule: smallest nonzero absolute value (first in row-major order),
  // rows cleared before columns. Throws OverflowError when an input entry
  // exceeds `entry_bound` in absolute value or an intermediate overflows.
  SnfResult smith_normal_form(IntMatrix const& A, std::int64_t entry_bound = kDefaultEntryBound);

  // Some integer x with A x = b, or nullopt.
  std::optional<std::vector<std::int64_t>> solve_integer_system(IntMatrix const&                 A,
                                                                std::vector<std::int64_t> const& b);

  // Z^rank (+) Z_{d_1} (+) ... (+) Z_{d_k}, d_i >= 2, d_i | d_{i+1}.
  struct FgZModule {
    std::size_t               rank = 0;
    std::vector<std::int64_t> torsion;

    // Canonical form of Z^rank (+) sum of Z_{orders[i]}; orders of 1 vanish,
    // orders of 0 count as free summands.
    static FgZModule canonical(std::size_t rank, std::vector<std::int64_t> const& orders);

    std::size_t generator_count() const noexcept {
      return rank + torsion.size();
    }
    // Order of generator i: 0 for free generators.
    std::int64_t generator_order(std::size_t i) const {
      return i < rank ? 0 : torsion[i - rank];
    }
    bool        is_torsion() const noexcept {
      return rank == 0;
    }
    std::int64_t exponent() const;  // 1 for the zero group; 0 if rank > 0
    std::string  to_string() const;

    bool operator==(FgZModule const&) const = default;
  };

  // Homomorphism source -> target. Column i is the image of generator i of
  // the source (free generators first); torsion rows are reduced to
  // [0, d_j). Validated at construction.
  class ZModHom {
   public:
    // Throws ConstructionError if the torsion->free block is nonzero or a
    // torsion image violates the order condition.
    static ZModHom make(FgZModule source, FgZModule target, IntMatrix matrix);
    static ZModHom identity(FgZModule const& M);

    FgZModule const& source() const noexcept {
      return source_;
    }
    FgZModule const& target() const noexcept {
      return target_;
    }
    IntMatrix const& matrix() const noexcept {
      return matrix_;
    }

    std::vector<std::int64_t> apply(std::vector<std::int64_t> const& x) const;
    bool                      is_zero() const;

    // "e1 -> (0,1), e2 -> (0,0)"
    std::string render() const;

    bool operator==(ZModHom const&) const = default;

   private:
    ZModHom(FgZModule source, FgZModule target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

    FgZModule source_;
    FgZModule target_;
    IntMatrix matrix_;
  };

  // g o f
  ZModHom compose(ZModHom const& g, ZModHom const& f);

  // Reduces x to canonical coordinates of M (torsion coordinates mod d_j).
  std::vector<std::int64_t> normalize(FgZModule const& M, std::vector<std::int64_t> x);

  struct ZKernel {
    FgZModule module;
    ZModHom   inclusion;  // module -> h.source()
  };

  ZKernel zhom_kernel(ZModHom const& h);

  struct ZSummandResult {
    Status                 status = Status::fails;
    std::optional<ZModHom> retraction;  // HOLDS: retraction o inclusion = id
    // FAILS: coordinate of the submodule with no retraction component and
    // the reason the integer system is unsolvable.
    std::optional<std::size_t> failing_coordinate;
    std::string                obstruction;
  };

  // Throws std::invalid_argument when `inclusion` is not injective.
  ZSummandResult zsummand_test(ZModHom const& inclusion);

  struct ZRickartResult {
    Status                 status = Status::undecided;
    std::string            branch;  // "finite", "torsion_free" or "mixed"
    std::optional<ZModHom> witness;
    std::optional<ZKernel> kernel;
    std::string            obstruction;
    std::string            justification;
    std::size_t            maps_checked = 0;
    int                    bound        = 0;
    std::string            reason;  // for UNSUPPORTED
  };

  constexpr int kDefaultBound = 5;

  // Three branches: rank 0 delegates to the finite engine over
  // zmod(exponent); torsion-free is HOLDS by structure, confirmed by the
  // bounded sweep; mixed runs the bounded sweep and is UNDECIDED without a
  // counterexample.
  ZRickartResult zrickart_check(FgZModule const& M,
                                int              bound  = kDefaultBound,
                                Limits const&    limits = default_limits());

  // The sweep alone: free->free entries in [-bound, bound] (ordered 0, 1, -1,
  // 2, ...), free->torsion entries over all residues, torsion->torsion over
  // all valid residues; kernels tested with zsummand_test. Exhaustive, hence
  // exact, when rank = 0.
  ZRickartResult zrickart_sweep(FgZModule const& M,
                                int              bound  = kDefaultBound,
                                Limits const&    limits = default_limits());

  // Endomorphism of the finite module `cyclic_sum(zmod(exponent), torsion)`
  // expressed as a ZModHom on the torsion group M.
  ZModHom zhom_from_finite(FgZModule const& M, Homomorphism const& f);

}  // namespace rickart
