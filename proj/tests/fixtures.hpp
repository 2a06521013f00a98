#pragma once

#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "rickartlab/element_set.hpp"
#include "rickartlab/finmod.hpp"
#include "rickartlab/zmodsnf.hpp"

namespace fixtures {

  inline rickart::ElementSet set_of(std::initializer_list<int> xs) {
    rickart::ElementSet s;
    for (int x : xs) {
      s.insert(static_cast<rickart::Elem>(x));
    }
    return s;
  }

  struct NamedModule {
    std::string          name;
    rickart::FiniteModule module;
  };

  inline std::vector<NamedModule> corpus_modules(std::size_t max_order) {
    std::vector<NamedModule> out;
    for (auto const& m : rickart::app::builtin_corpus().modules) {
      auto M = rickart::app::build_module(m.spec);
      if (M.size() <= max_order) {
        out.push_back({m.name, std::move(M)});
      }
    }
    return out;
  }

  // M1 (+) M2 for the suite's direct-sum pairs: i <= j, same ring,
  // |M1| * |M2| <= max_order.
  inline std::vector<NamedModule> corpus_pair_sums(std::size_t max_order) {
    auto const mods = corpus_modules(max_order);
    std::vector<NamedModule> out;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      for (std::size_t j = i; j < mods.size(); ++j) {
        auto const& a = mods[i].module;
        auto const& b = mods[j].module;
        if (a.same_ring(b) && a.size() * b.size() <= max_order) {
          out.push_back({"(" + mods[i].name + ", " + mods[j].name + ")", rickart::FiniteModule::direct_sum(a, b)});
        }
      }
    }
    return out;
  }

  inline rickart::FiniteModule builtin_module(std::string const& name) {
    auto spec = rickart::app::find_builtin_module(name);
    if (!spec) {
      throw std::invalid_argument("no builtin module " + name);
    }
    return rickart::app::build_module(*spec);
  }

  __extension__ using Wide = __int128;
  using WideRows           = std::vector<std::vector<Wide>>;

  inline WideRows widen(rickart::IntMatrix const& M) {
    WideRows out(M.rows(), std::vector<Wide>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        out[i][j] = M(i, j);
      }
    }
    return out;
  }

  // Exact product in 128-bit arithmetic; throws on overflow.
  inline WideRows wide_product(WideRows const& a, WideRows const& b, std::size_t inner, std::size_t cols) {
    WideRows c(a.size(), std::vector<Wide>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t k = 0; k < inner; ++k) {
        for (std::size_t j = 0; j < cols; ++j) {
          Wide p = 0;
          if (__builtin_mul_overflow(a[i][k], b[k][j], &p) || __builtin_add_overflow(c[i][j], p, &c[i][j])) {
            throw std::overflow_error("128-bit overflow in verification product");
          }
        }
      }
    }
    return c;
  }

  inline bool is_identity(WideRows const& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        if (m[i][j] != (i == j ? 1 : 0)) {
          return false;
        }
      }
    }
    return true;
  }

  // Validates U A V = D, unimodularity through the stored inverses and the
  // divisibility chain, with exact 128-bit products. Returns an empty string
  // on success.
  inline std::string snf_problem(rickart::IntMatrix const& A, rickart::SnfResult const& r) {
    auto const m = A.rows(), n = A.cols();
    auto const U = widen(r.U), V = widen(r.V), Ui = widen(r.U_inv), Vi = widen(r.V_inv);
    if (wide_product(wide_product(U, widen(A), m, n), V, n, n) != widen(r.D)) {
      return "U A V != D";
    }
    if (!is_identity(wide_product(U, Ui, m, m)) || !is_identity(wide_product(Ui, U, m, m))) {
      return "U is not invertible over Z";
    }
    if (!is_identity(wide_product(V, Vi, n, n)) || !is_identity(wide_product(Vi, V, n, n))) {
      return "V is not invertible over Z";
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && r.D(i, j) != 0) {
          return "D is not diagonal";
        }
      }
    }
    auto const d = r.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < 0) {
        return "negative diagonal entry";
      }
      if (i + 1 < d.size()) {
        if (d[i] == 0 && d[i + 1] != 0) {
          return "zero before a nonzero diagonal entry";
        }
        if (d[i] != 0 && d[i + 1] % d[i] != 0) {
          return "divisibility chain broken";
        }
      }
    }
    return {};
  }

  inline rickart::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, std::int64_t max_abs) {
    std::uniform_int_distribution<std::size_t>  dim(1, max_dim);
    std::uniform_int_distribution<std::int64_t> entry(-max_abs, max_abs);
    rickart::IntMatrix A(dim(rng), dim(rng));
    for (std::size_t i = 0; i < A.rows(); ++i) {
      for (std::size_t j = 0; j < A.cols(); ++j) {
        A(i, j) = entry(rng);
      }
    }
    return A;
  }

  inline std::vector<std::int64_t> nonzero_diagonal(rickart::SnfResult const& r) {
    std::vector<std::int64_t> out;
    for (auto d : r.diagonal()) {
      if (d != 0) {
        out.push_back(d);
      }
    }
    return out;
  }

}  // namespace fixtures
