#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rickartlab/finmod.hpp"
#include "rickartlab/finring.hpp"
#include "rickartlab/modprops.hpp"

namespace rickart {

  // S = End_R(M) as a FiniteRing. Element i of `ring` is carrier[i];
  // multiplication is composition, (f * g)(m) = f(g(m)), so End(regular(R))
  // is isomorphic to R through left multiplications.
  struct EndoRing {
    RingPtr                   ring;
    std::vector<Homomorphism> carrier;
    FiniteModule              module;

    // Index of an endomorphism given by its table; throws std::out_of_range.
    Elem index_of(std::span<Elem const> table) const;
  };

  // Throws CapacityError when |End(M)| exceeds limits.ring_construct_order.
  EndoRing endomorphism_ring(FiniteModule const& M);

  struct FaithUtumiReport {
    Status         quasi_injective = Status::unsupported;
    // Ring indices of the endomorphisms with essential kernel.
    ElementSet     essential_kernels;
    RightIdeal     radical;
    bool           sets_equal          = false;
    std::size_t    quotient_order      = 0;
    Status         quotient_vn_regular = Status::unsupported;
    TheoremOutcome outcome             = TheoremOutcome::undecided;
    std::string    reason;
  };

  // For quasi-injective M: compares {f : Ker f essential} with J(S) and
  // decides vn_regular on S / J(S). NOT_APPLICABLE otherwise.
  FaithUtumiReport faith_utumi_radical_check(FiniteModule const& M);

  struct CorrespondenceReport {
    Status      rickart             = Status::unsupported;
    Status      baer                = Status::unsupported;
    Status      s_right_rickart     = Status::unsupported;
    Status      retractable         = Status::unsupported;
    Status      k_local_retractable = Status::unsupported;
    std::size_t endo_order          = 0;

    // rickart(M) => right_rickart(S)
    bool rickart_gives_s_rickart = true;
    // retractable(M) => (rickart(M) <=> right_rickart(S))
    bool retractable_equivalence = true;
    // rickart(M) <=> right_rickart(S) and k_local_retractable(M)
    bool k_local_characterization = true;
    // baer(M) <=> rickart(M)
    bool baer_iff_rickart = true;
    // rickart(M) <=> right_rickart(S)
    bool rickart_iff_s_rickart = true;
    // The retractable-gated equivalence held although M is not retractable.
    bool equivalence_without_retractable = false;

    TheoremOutcome outcome = TheoremOutcome::undecided;
    std::string    reason;
  };

  CorrespondenceReport correspondence_report(FiniteModule const& M);

  struct QuasiInjectiveReport {
    Status quasi_injective = Status::unsupported;
    // baer(M), rickart(M), vn_regular(S), right_semihereditary(S),
    // right_rickart(S), right_nonsingular(S)
    std::array<Status, 6> conditions{Status::unsupported,
                                     Status::unsupported,
                                     Status::unsupported,
                                     Status::unsupported,
                                     Status::unsupported,
                                     Status::unsupported};
    bool           all_equal = false;
    TheoremOutcome outcome   = TheoremOutcome::undecided;
    std::string    reason;

    static std::array<std::string_view, 6> const& condition_names();
  };

  QuasiInjectiveReport quasi_injective_equivalence_report(FiniteModule const& M);

}  // namespace rickart
