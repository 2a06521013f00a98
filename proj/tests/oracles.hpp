#pragma once

// Brute-force reference implementations. They use only the element-level
// tables of rings and modules (add, mul, act) and never call the engine's
// lattice, homomorphism or decision code.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "rickartlab/finmod.hpp"
#include "rickartlab/finring.hpp"

namespace oracle {

  using rickart::Elem;
  using rickart::ElementSet;
  using rickart::FiniteModule;
  using rickart::FiniteRing;

  // Every subset of {0..n-1} satisfying `pred`, by bitmask scan (n <= 16).
  template <typename Pred>
  std::vector<ElementSet> subsets_where(std::size_t n, Pred&& pred) {
    std::vector<ElementSet> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      if ((mask & 1U) == 0) {
        continue;  // must contain index 0
      }
      ElementSet s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) {
          s.insert(static_cast<Elem>(i));
        }
      }
      if (pred(s)) {
        out.push_back(s);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rings
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<Elem> idempotents(FiniteRing const& R) {
    std::vector<Elem> out;
    for (std::size_t a = 0; a < R.order(); ++a) {
      auto const e = static_cast<Elem>(a);
      if (R.mul(e, e) == e) {
        out.push_back(e);
      }
    }
    return out;
  }

  inline ElementSet right_annihilator(FiniteRing const& R, std::vector<Elem> const& X) {
    ElementSet out;
    for (std::size_t r = 0; r < R.order(); ++r) {
      bool kills = true;
      for (auto x : X) {
        kills = kills && R.mul(x, static_cast<Elem>(r)) == R.zero();
      }
      if (kills) {
        out.insert(static_cast<Elem>(r));
      }
    }
    return out;
  }

  inline ElementSet principal(FiniteRing const& R, Elem a) {
    ElementSet out;
    for (std::size_t r = 0; r < R.order(); ++r) {
      out.insert(R.mul(a, static_cast<Elem>(r)));
    }
    return out;
  }

  inline bool is_right_ideal(FiniteRing const& R, ElementSet const& s) {
    if (!s.contains(R.zero())) {
      return false;
    }
    bool ok = true;
    s.for_each([&](Elem a) {
      for (std::size_t r = 0; r < R.order() && ok; ++r) {
        ok = s.contains(R.mul(a, static_cast<Elem>(r)));
      }
      s.for_each([&](Elem b) { ok = ok && s.contains(R.add(a, b)); });
    });
    return ok;
  }

  // Requires zero to have index 0 (true for every builtin constructor).
  inline std::vector<ElementSet> right_ideals(FiniteRing const& R) {
    return subsets_where(R.order(), [&](ElementSet const& s) { return oracle::is_right_ideal(R, s); });
  }

  inline bool vn_regular(FiniteRing const& R) {
    for (std::size_t a = 0; a < R.order(); ++a) {
      bool found = false;
      for (std::size_t x = 0; x < R.order() && !found; ++x) {
        auto const A = static_cast<Elem>(a);
        found        = R.mul(R.mul(A, static_cast<Elem>(x)), A) == A;
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  inline bool generated_by_idempotent(FiniteRing const& R, ElementSet const& I) {
    for (auto e : oracle::idempotents(R)) {
      if (oracle::principal(R, e) == I) {
        return true;
      }
    }
    return false;
  }

  inline bool right_rickart(FiniteRing const& R) {
    for (std::size_t a = 0; a < R.order(); ++a) {
      if (!oracle::generated_by_idempotent(R, oracle::right_annihilator(R, {static_cast<Elem>(a)}))) {
        return false;
      }
    }
    return true;
  }

  // Every subset X (order <= 12 keeps 4096 subsets).
  inline bool baer(FiniteRing const& R) {
    std::size_t const n = R.order();
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      std::vector<Elem> X;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) {
          X.push_back(static_cast<Elem>(i));
        }
      }
      if (!oracle::generated_by_idempotent(R, oracle::right_annihilator(R, X))) {
        return false;
      }
    }
    return true;
  }

  // Essential right ideal: meets every nonzero right ideal.
  inline bool essential_ideal(std::vector<ElementSet> const& ideals, ElementSet const& I) {
    for (auto const& J : ideals) {
      if (J.size() > 1 && (I & J).size() == 1) {
        return false;
      }
    }
    return true;
  }

  inline bool right_nonsingular(FiniteRing const& R) {
    auto const ideals = oracle::right_ideals(R);
    for (std::size_t a = 1; a < R.order(); ++a) {
      if (oracle::essential_ideal(ideals, oracle::right_annihilator(R, {static_cast<Elem>(a)}))) {
        return false;
      }
    }
    return true;
  }

  inline bool reduced(FiniteRing const& R) {
    for (std::size_t a = 1; a < R.order(); ++a) {
      auto const A = static_cast<Elem>(a);
      if (R.mul(A, A) == R.zero()) {
        return false;
      }
    }
    return true;
  }

  // Intersection of the maximal right ideals.
  inline ElementSet jacobson_radical(FiniteRing const& R) {
    auto const  ideals = oracle::right_ideals(R);
    ElementSet  J      = R.all();
    ElementSet const all = R.all();
    for (auto const& I : ideals) {
      if (I == all) {
        continue;
      }
      bool maximal = true;
      for (auto const& K : ideals) {
        if (K != all && K != I && I.is_subset_of(K)) {
          maximal = false;
        }
      }
      if (maximal) {
        J &= I;
      }
    }
    return J;
  }

  ////////////////////////////////////////////////////////////////////////
  // Modules
  ////////////////////////////////////////////////////////////////////////

  inline bool is_submodule(FiniteModule const& M, ElementSet const& s) {
    if (!s.contains(0)) {
      return false;
    }
    bool ok = true;
    s.for_each([&](Elem a) {
      s.for_each([&](Elem b) { ok = ok && s.contains(M.add(a, b)); });
      for (std::size_t r = 0; r < M.ring().order() && ok; ++r) {
        ok = s.contains(M.act(a, static_cast<Elem>(r)));
      }
    });
    return ok;
  }

  // |M| <= 16.
  inline std::vector<ElementSet> submodules(FiniteModule const& M) {
    return subsets_where(M.size(), [&](ElementSet const& s) { return oracle::is_submodule(M, s); });
  }

  inline ElementSet sum(FiniteModule const& M, ElementSet const& a, ElementSet const& b) {
    ElementSet out;
    a.for_each([&](Elem x) { b.for_each([&](Elem y) { out.insert(M.add(x, y)); }); });
    return out;
  }

  inline bool is_summand(FiniteModule const& M, std::vector<ElementSet> const& subs, ElementSet const& N) {
    for (auto const& C : subs) {
      if ((N & C).size() == 1 && N.size() * C.size() == M.size()) {
        return true;
      }
    }
    return false;
  }

  inline bool is_essential(std::vector<ElementSet> const& subs, ElementSet const& N) {
    return oracle::essential_ideal(subs, N);
  }

  // Maps determined by generator images, evaluated through coordinates and
  // validated on every pair and every ring element. Each map is its full
  // table.
  inline std::vector<std::vector<Elem>> homs(FiniteModule const& M, FiniteModule const& N) {
    std::size_t const k = M.generator_count();
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t>       idx(k, 0);
    for (;;) {
      std::vector<Elem> table(M.size());
      for (std::size_t x = 0; x < M.size(); ++x) {
        auto const& c = M.coordinates(static_cast<Elem>(x));
        Elem        y = 0;
        for (std::size_t i = 0; i < k; ++i) {
          y = N.add(y, N.multiple(static_cast<Elem>(idx[i]), c[i]));
        }
        table[x] = y;
      }
      bool ok = true;
      for (std::size_t a = 0; a < M.size() && ok; ++a) {
        for (std::size_t b = 0; b < M.size() && ok; ++b) {
          ok = table[M.add(static_cast<Elem>(a), static_cast<Elem>(b))] == N.add(table[a], table[b]);
        }
        for (std::size_t r = 0; r < M.ring().order() && ok; ++r) {
          ok = table[M.act(static_cast<Elem>(a), static_cast<Elem>(r))] == N.act(table[a], static_cast<Elem>(r));
        }
      }
      if (ok) {
        out.push_back(std::move(table));
      }
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++idx[i] < N.size()) {
          break;
        }
        idx[i] = 0;
        if (i == 0) {
          return out;
        }
      }
      if (k == 0) {
        return out;
      }
    }
  }

  inline ElementSet kernel(std::vector<Elem> const& table) {
    ElementSet out;
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x] == 0) {
        out.insert(static_cast<Elem>(x));
      }
    }
    return out;
  }

  inline bool rickart(FiniteModule const& M) {
    auto const subs = oracle::submodules(M);
    for (auto const& f : oracle::homs(M, M)) {
      if (!oracle::is_summand(M, subs, oracle::kernel(f))) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Integers
  ////////////////////////////////////////////////////////////////////////

  inline std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
    std::size_t const n = m.size();
    if (n == 0) {
      return 1;
    }
    if (n == 1) {
      return m[0][0];
    }
    std::int64_t total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<std::int64_t>> minor;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != j) {
            row.push_back(m[i][c]);
          }
        }
        minor.push_back(row);
      }
      auto const term = m[0][j] * det(minor);
      total += (j % 2 == 0) ? term : -term;
    }
    return total;
  }

  // Invariant factors as ratios of gcds of k x k minors.
  inline std::vector<std::int64_t> invariant_factors(std::vector<std::vector<std::int64_t>> const& A) {
    std::size_t const rows = A.size();
    std::size_t const cols = rows ? A[0].size() : 0;
    std::vector<std::int64_t> g{1};
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      std::int64_t gk = 0;
      std::vector<bool> rsel(rows, false), csel(cols, false);
      std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
      do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
        do {
          std::vector<std::vector<std::int64_t>> sub;
          for (std::size_t i = 0; i < rows; ++i) {
            if (!rsel[i]) {
              continue;
            }
            std::vector<std::int64_t> row;
            for (std::size_t j = 0; j < cols; ++j) {
              if (csel[j]) {
                row.push_back(A[i][j]);
              }
            }
            sub.push_back(row);
          }
          gk = std::gcd(gk, std::llabs(det(sub)));
        } while (std::prev_permutation(csel.begin(), csel.end()));
      } while (std::prev_permutation(rsel.begin(), rsel.end()));
      if (gk == 0) {
        break;
      }
      g.push_back(gk);
    }
    std::vector<std::int64_t> out;
    for (std::size_t k = 1; k < g.size(); ++k) {
      out.push_back(g[k] / g[k - 1]);
    }
    return out;
  }

  // |End(Z_{d_1} + ... + Z_{d_k})| = prod gcd(d_i, d_j).
  inline std::int64_t endo_count(std::vector<int> const& orders) {
    std::int64_t n = 1;
    for (int a : orders) {
      for (int b : orders) {
        n *= std::gcd(a, b);
      }
    }
    return n;
  }

}  // namespace oracle
