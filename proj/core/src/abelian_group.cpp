#include "rickartlab/abelian_group.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rickart {

  namespace {

    std::vector<int> prime_factors(std::size_t n) {
      std::vector<int> primes;
      for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
          primes.push_back(static_cast<int>(p));
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        primes.push_back(static_cast<int>(n));
      }
      return primes;
    }

    // Invariant factors, ascending, read off from torsion-subgroup sizes.
    std::vector<int> invariant_factors(std::size_t             n,
                                       std::vector<int> const& orders) {
      std::vector<std::vector<int>> exponents;  // per prime, descending
      auto const                    primes = prime_factors(n);
      for (int p : primes) {
        // c[j] = #{x : p^j x = 0}
        std::vector<std::size_t> c{1};
        std::size_t              pj = 1;
        while (true) {
          pj *= static_cast<std::size_t>(p);
          std::size_t count = 0;
          for (int o : orders) {
            if (pj % static_cast<std::size_t>(o) == 0) {
              ++count;
            }
          }
          if (count == c.back()) {
            break;
          }
          c.push_back(count);
        }
        // t[j] = number of cyclic p-factors of order >= p^j
        std::vector<int> t;
        for (std::size_t j = 1; j < c.size(); ++j) {
          std::size_t ratio = c[j] / c[j - 1];
          int         k     = 0;
          while (ratio > 1) {
            ratio /= static_cast<std::size_t>(p);
            ++k;
          }
          t.push_back(k);
        }
        std::vector<int> ex;
        int const        factors = t.empty() ? 0 : t.front();
        for (int i = 0; i < factors; ++i) {
          int e = 0;
          for (int tj : t) {
            if (tj > i) {
              ++e;
            }
          }
          ex.push_back(e);
        }
        exponents.push_back(ex);
      }
      std::size_t k = 0;
      for (auto const& ex : exponents) {
        k = std::max(k, ex.size());
      }
      // descending: position i takes the i-th largest exponent of each prime
      std::vector<int> inv(k, 1);
      for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        for (std::size_t i = 0; i < exponents[pi].size(); ++i) {
          for (int e = 0; e < exponents[pi][i]; ++e) {
            inv[i] *= primes[pi];
          }
        }
      }
      std::reverse(inv.begin(), inv.end());
      return inv;
    }

  }  // namespace

  std::vector<int> element_orders(std::size_t           n,
                                  std::span<Elem const> add,
                                  Elem                  zero) {
    std::vector<int> orders(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      Elem acc = static_cast<Elem>(x);
      int  o   = 1;
      while (acc != zero) {
        acc = add[acc * n + x];
        ++o;
      }
      orders[x] = o;
    }
    return orders;
  }

  CyclicDecomposition decompose_abelian_group(std::size_t           n,
                                              std::span<Elem const> add,
                                              Elem                  zero) {
    auto const orders = element_orders(n, add, zero);
    auto const target = invariant_factors(n, orders);  // ascending
    std::vector<int> descending(target.rbegin(), target.rend());

    auto cyclic = [&](Elem g) {
      ElementSet s;
      Elem       acc = zero;
      do {
        s.insert(acc);
        acc = add[acc * n + g];
      } while (acc != zero);
      return s;
    };
    auto sum = [&](ElementSet const& a, ElementSet const& b) {
      ElementSet s;
      a.for_each([&](Elem x) { b.for_each([&](Elem y) { s.insert(add[x * n + y]); }); });
      return s;
    };

    std::vector<Elem> chosen;
    std::function<bool(std::size_t, ElementSet const&)> search =
        [&](std::size_t i, ElementSet const& h) -> bool {
      if (i == descending.size()) {
        return h.size() == n;
      }
      for (std::size_t g = 0; g < n; ++g) {
        if (orders[g] != descending[i] || h.contains(static_cast<Elem>(g))) {
          continue;
        }
        auto c = cyclic(static_cast<Elem>(g));
        if ((c & h).size() != 1) {
          continue;
        }
        chosen.push_back(static_cast<Elem>(g));
        if (search(i + 1, sum(h, c))) {
          return true;
        }
        chosen.pop_back();
      }
      return false;
    };
    if (!search(0, ElementSet::singleton(zero))) {
      throw std::logic_error("decompose_abelian_group: no basis found");
    }
    CyclicDecomposition out;
    out.orders = target;
    out.generators.assign(chosen.rbegin(), chosen.rend());
    return out;
  }

}  // namespace rickart
