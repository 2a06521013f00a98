#pragma once

#include <cstddef>

namespace rickart {

  // Size caps shared by every decider. Exceeding one yields a CapacityError
  // (surfaced by deciders as UNSUPPORTED), never a truncated answer.
  struct Limits {
    std::size_t ring_construct_order = 256;
    std::size_t ring_decider_order   = 64;
    std::size_t ideal_count          = 4096;
    std::size_t module_order         = 64;
    std::size_t submodule_count      = 4096;
    std::size_t hom_count            = 65536;
    std::size_t quasi_injective_order = 32;
    std::size_t isomorphism_order    = 16;
    // Candidate combinations tried by the semihereditary splitting search.
    std::size_t split_search         = std::size_t{1} << 22;
  };

  inline Limits const& default_limits() {
    static Limits const limits{};
    return limits;
  }

}  // namespace rickart
