#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rickartlab/element_set.hpp"

namespace rickart {

  // A basis of a finite abelian group: the group is the internal direct sum
  // of the cyclic subgroups generated by `generators`, with orders forming
  // the invariant-factor chain orders[0] | orders[1] | ...
  struct CyclicDecomposition {
    std::vector<int>  orders;
    std::vector<Elem> generators;
  };

  // Decomposes the group on elements 0..n-1 with row-major addition table
  // `add` (n*n entries) and identity `zero`. The table is trusted to be an
  // abelian group law.
  CyclicDecomposition decompose_abelian_group(std::size_t            n,
                                              std::span<Elem const>  add,
                                              Elem                   zero);

  // Additive order of every element.
  std::vector<int> element_orders(std::size_t           n,
                                  std::span<Elem const> add,
                                  Elem                  zero);

}  // namespace rickart
