#include "rickartlab/zmodsnf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "rickartlab/errors.hpp"
#include "rickartlab/finmod.hpp"

namespace rickart {

  std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
      throw OverflowError("integer overflow in addition");
    }
    return r;
  }

  std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a, b, &r)) {
      throw OverflowError("integer overflow in subtraction");
    }
    return r;
  }

  std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw OverflowError("integer overflow in multiplication");
    }
    return r;
  }

  namespace {

    std::int64_t abs_checked(std::int64_t a) {
      return a < 0 ? checked_sub(0, a) : a;
    }

    // d * a == 0 mod m
    bool kills(std::int64_t d, std::int64_t a, std::int64_t m) {
      return a % (m / std::gcd(d, m)) == 0;
    }

    std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
      auto r = a % m;
      return r < 0 ? r + m : r;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // IntMatrix
  ////////////////////////////////////////////////////////////////////////

  IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  IntMatrix IntMatrix::from_rows(std::vector<std::vector<std::int64_t>> const& rows) {
    std::size_t const cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix         m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw std::invalid_argument("IntMatrix: ragged rows");
      }
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out[i][j] = (*this)(i, j);
      }
    }
    return out;
  }

  std::string IntMatrix::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        s += (j ? "," : "") + std::to_string((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

  IntMatrix multiply(IntMatrix const& a, IntMatrix const& b) {
    if (a.cols() != b.rows()) {
      throw std::invalid_argument("multiply: shape mismatch");
    }
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
          c(i, j) = checked_add(c(i, j), checked_mul(a(i, k), b(k, j)));
        }
      }
    }
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Smith normal form
  ////////////////////////////////////////////////////////////////////////

  std::size_t SnfResult::rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
      r += D(i, i) != 0 ? 1 : 0;
    }
    return r;
  }

  std::vector<std::int64_t> SnfResult::diagonal() const {
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
      d.push_back(D(i, i));
    }
    return d;
  }

  namespace {

    // The elimination runs in 128-bit arithmetic and narrows at the end, so
    // transient growth that the post-reduction removes is not an error.
    __extension__ using Wide = __int128;

    Wide wadd(Wide a, Wide b) {
      Wide r = 0;
      if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in smith_normal_form");
      }
      return r;
    }

    Wide wmul(Wide a, Wide b) {
      Wide r = 0;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in smith_normal_form");
      }
      return r;
    }

    Wide wneg(Wide a) {
      return wmul(a, -1);
    }

    Wide wabs(Wide a) {
      return a < 0 ? wneg(a) : a;
    }

    // Quotient rounded to the nearest integer, so remainders are at most
    // |p| / 2.
    Wide nearest_quotient(Wide a, Wide p) {
      auto q = a / p;
      auto r = a - q * p;
      if (2 * wabs(r) > wabs(p)) {
        q += ((r < 0) == (p < 0)) ? 1 : -1;
      }
      return q;
    }

    struct Bezout {
      Wide g;
      Wide s;
      Wide t;
    };

    // s a + t b = g = gcd(a, b) for a, b > 0.
    Bezout extended_gcd(Wide a, Wide b) {
      Wide r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (r1 != 0) {
        auto const q = r0 / r1;
        r0           = std::exchange(r1, r0 - q * r1);
        s0           = std::exchange(s1, wadd(s0, wneg(wmul(q, s1))));
        t0           = std::exchange(t1, wadd(t0, wneg(wmul(q, t1))));
      }
      return {r0, s0, t0};
    }

    struct WideMatrix {
      std::size_t       rows = 0;
      std::size_t       cols = 0;
      std::vector<Wide> data;

      WideMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

      static WideMatrix identity(std::size_t n) {
        WideMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
          m(i, i) = 1;
        }
        return m;
      }

      Wide& operator()(std::size_t i, std::size_t j) {
        return data[i * cols + j];
      }

      // row_i += c * row_j
      void add_row(std::size_t i, std::size_t j, Wide c) {
        for (std::size_t k = 0; k < cols; ++k) {
          (*this)(i, k) = wadd((*this)(i, k), wmul(c, (*this)(j, k)));
        }
      }

      // col_i += c * col_j
      void add_col(std::size_t i, std::size_t j, Wide c) {
        for (std::size_t k = 0; k < rows; ++k) {
          (*this)(k, i) = wadd((*this)(k, i), wmul(c, (*this)(k, j)));
        }
      }

      void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < cols; ++k) {
          std::swap((*this)(i, k), (*this)(j, k));
        }
      }

      void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < rows; ++k) {
          std::swap((*this)(k, i), (*this)(k, j));
        }
      }

      long double norm2() const {
        long double s = 0;
        for (auto x : data) {
          auto const v = static_cast<long double>(x);
          s += v * v;
        }
        return s;
      }

      Wide max_abs() const {
        Wide m = 0;
        for (auto x : data) {
          m = std::max(m, wabs(x));
        }
        return m;
      }

      IntMatrix narrow() const {
        IntMatrix out(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < cols; ++j) {
            auto const x = data[i * cols + j];
            if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
              throw OverflowError("smith_normal_form: a transform entry does not fit in 64 bits");
            }
            out(i, j) = static_cast<std::int64_t>(x);
          }
        }
        return out;
      }
    };

    class SnfWorker {
     public:
      explicit SnfWorker(IntMatrix const& A)
          : m_(A.rows()),
            n_(A.cols()),
            U_(WideMatrix::identity(m_)),
            V_(WideMatrix::identity(n_)),
            D_(m_, n_),
            Ui_(WideMatrix::identity(m_)),
            Vi_(WideMatrix::identity(n_)) {
        for (std::size_t i = 0; i < m_; ++i) {
          for (std::size_t j = 0; j < n_; ++j) {
            D_(i, j) = A(i, j);
          }
        }
      }

      SnfResult run() {
        eliminate_and_shrink();
        return SnfResult{U_.narrow(), V_.narrow(), D_.narrow(), Ui_.narrow(), Vi_.narrow()};
      }

      // Diagonalization and divisibility chain, without post-reduction.
      void eliminate() {
        for (std::size_t t = 0; t < std::min(m_, n_); ++t) {
          if (!select_pivot(t)) {
            break;
          }
          reduce(t);
          if (D_(t, t) < 0) {
            row_neg(t);
          }
          ++rank_;
        }
        // Divisibility chain on the diagonal: (a, b) -> (gcd, lcm).
        for (std::size_t i = 0; i < rank_; ++i) {
          for (std::size_t j = i + 1; j < rank_; ++j) {
            if (D_(j, j) % D_(i, i) != 0) {
              gcd_lcm(i, j);
            }
          }
        }
      }

      void eliminate_and_shrink() {
        eliminate();
        shrink_transforms();
      }

      WideMatrix const& diagonal_form() const {
        return D_;
      }
      WideMatrix const& u_matrix() const {
        return U_;
      }
      WideMatrix const& u_inverse() const {
        return Ui_;
      }

     private:
      // row_i += c * row_j, keeping U_inv = U^-1.
      void row_add(std::size_t i, std::size_t j, Wide c) {
        D_.add_row(i, j, c);
        U_.add_row(i, j, c);
        Ui_.add_col(j, i, wneg(c));
      }

      // col_i += c * col_j, keeping V_inv = V^-1.
      void col_add(std::size_t i, std::size_t j, Wide c) {
        D_.add_col(i, j, c);
        V_.add_col(i, j, c);
        Vi_.add_row(j, i, wneg(c));
      }

      void row_swap(std::size_t i, std::size_t j) {
        if (i != j) {
          D_.swap_rows(i, j);
          U_.swap_rows(i, j);
          Ui_.swap_cols(i, j);
        }
      }

      void col_swap(std::size_t i, std::size_t j) {
        if (i != j) {
          D_.swap_cols(i, j);
          V_.swap_cols(i, j);
          Vi_.swap_rows(i, j);
        }
      }

      void row_neg(std::size_t i) {
        for (std::size_t k = 0; k < n_; ++k) {
          D_(i, k) = wneg(D_(i, k));
        }
        for (std::size_t k = 0; k < m_; ++k) {
          U_(i, k)  = wneg(U_(i, k));
          Ui_(k, i) = wneg(Ui_(k, i));
        }
      }

      // diag(a, b) with a, b > 0 becomes diag(gcd, lcm):
      // [[s, t], [-b/g, a/g]] diag(a, b) [[1, -tb/g], [1, sa/g]].
      void gcd_lcm(std::size_t i, std::size_t j) {
        auto const a = D_(i, i), b = D_(j, j);
        auto const [g, s, t] = extended_gcd(a, b);
        mix_rows(i, j, s, t, -(b / g), a / g);
        mix_cols(i, j, 1, wneg(wmul(t, b / g)), 1, wmul(s, a / g));
      }

      // (row_i, row_j) <- [[a, b], [c, d]] (row_i, row_j), ad - bc = 1.
      void mix_rows(std::size_t i, std::size_t j, Wide a, Wide b, Wide c, Wide d) {
        auto mix = [](Wide& x, Wide& y, Wide p, Wide q, Wide r, Wide s) {
          auto const nx = wadd(wmul(p, x), wmul(q, y));
          auto const ny = wadd(wmul(r, x), wmul(s, y));
          x             = nx;
          y             = ny;
        };
        for (std::size_t k = 0; k < n_; ++k) {
          mix(D_(i, k), D_(j, k), a, b, c, d);
        }
        for (std::size_t k = 0; k < m_; ++k) {
          mix(U_(i, k), U_(j, k), a, b, c, d);
          mix(Ui_(k, i), Ui_(k, j), d, -c, -b, a);
        }
      }

      // (col_i, col_j) <- (col_i, col_j) [[a, b], [c, d]], ad - bc = 1.
      void mix_cols(std::size_t i, std::size_t j, Wide a, Wide b, Wide c, Wide d) {
        auto mix = [](Wide& x, Wide& y, Wide p, Wide q, Wide r, Wide s) {
          auto const nx = wadd(wmul(p, x), wmul(q, y));
          auto const ny = wadd(wmul(r, x), wmul(s, y));
          x             = nx;
          y             = ny;
        };
        for (std::size_t k = 0; k < m_; ++k) {
          mix(D_(k, i), D_(k, j), a, c, b, d);
        }
        for (std::size_t k = 0; k < n_; ++k) {
          mix(V_(k, i), V_(k, j), a, c, b, d);
          mix(Vi_(i, k), Vi_(j, k), d, -b, -c, a);
        }
      }

      bool select_pivot(std::size_t t) {
        Wide        best = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < m_; ++i) {
          for (std::size_t j = t; j < n_; ++j) {
            auto const a = wabs(D_(i, j));
            if (a != 0 && (best == 0 || a < best)) {
              best = a;
              bi   = i;
              bj   = j;
            }
          }
        }
        if (best == 0) {
          return false;
        }
        row_swap(t, bi);
        col_swap(t, bj);
        return true;
      }

      void reduce(std::size_t t) {
        while (true) {
          bool dirty = false;
          for (std::size_t i = t + 1; i < m_; ++i) {
            if (D_(i, t) != 0) {
              row_add(i, t, wneg(nearest_quotient(D_(i, t), D_(t, t))));
              dirty = dirty || D_(i, t) != 0;
            }
          }
          if (dirty) {
            std::size_t best = t;
            for (std::size_t i = t + 1; i < m_; ++i) {
              if (D_(i, t) != 0 && wabs(D_(i, t)) < wabs(D_(best, t))) {
                best = i;
              }
            }
            row_swap(t, best);
            continue;
          }
          for (std::size_t j = t + 1; j < n_; ++j) {
            if (D_(t, j) != 0) {
              col_add(j, t, wneg(nearest_quotient(D_(t, j), D_(t, t))));
              dirty = dirty || D_(t, j) != 0;
            }
          }
          if (!dirty) {
            return;
          }
          std::size_t best = t;
          for (std::size_t j = t + 1; j < n_; ++j) {
            if (D_(t, j) != 0 && wabs(D_(t, j)) < wabs(D_(t, best))) {
              best = j;
            }
          }
          col_swap(t, best);
        }
      }

      // D is fixed by the following moves, so they trade one transform for
      // another:
      //   row move (i, j): U row_i += c row_j; allowed when j >= rank, or
      //     i, j < rank with d_i | d_j (then V col_j -= c d_j/d_i col_i);
      //   col move (j, i): V col_j += c col_i; allowed when i >= rank, or
      //     i, j < rank with d_j | d_i (then U row_i -= c d_i/d_j row_j).
      // Moves are taken greedily while they shrink the total squared size.
      static Wide gcd_wide(Wide a, Wide b) {
        a = wabs(a);
        b = wabs(b);
        while (b != 0) {
          a = std::exchange(b, a % b);
        }
        return a;
      }

      // Granularity of c in row_move(i, j, c): D is preserved exactly when
      // d_i divides c d_j. Zero when no multiple works.
      Wide row_step(std::size_t i, std::size_t j) const {
        if (i == j) {
          return 0;
        }
        if (j >= rank_) {
          return 1;
        }
        if (i >= rank_) {
          return 0;
        }
        auto const di = diag(i), dj = diag(j);
        return di / gcd_wide(di, dj);
      }

      // Granularity of c in col_move(j, i, c): d_j divides c d_i.
      Wide col_step(std::size_t j, std::size_t i) const {
        if (i == j) {
          return 0;
        }
        if (i >= rank_) {
          return 1;
        }
        if (j >= rank_) {
          return 0;
        }
        auto const di = diag(i), dj = diag(j);
        return dj / gcd_wide(di, dj);
      }

      Wide diag(std::size_t i) const {
        return D_.data[i * n_ + i];
      }

      // U row_i += c row_j; c a multiple of row_step(i, j).
      void row_move(std::size_t i, std::size_t j, Wide c) {
        U_.add_row(i, j, c);
        Ui_.add_col(j, i, wneg(c));
        if (j < rank_) {
          auto const k = wmul(c / row_step(i, j), diag(j) / gcd_wide(diag(i), diag(j)));
          V_.add_col(j, i, wneg(k));
          Vi_.add_row(i, j, k);
        }
      }

      // V col_j += c col_i; c a multiple of col_step(j, i).
      void col_move(std::size_t j, std::size_t i, Wide c) {
        V_.add_col(j, i, c);
        Vi_.add_row(i, j, wneg(c));
        if (i < rank_) {
          auto const k = wmul(c / col_step(j, i), diag(i) / gcd_wide(diag(i), diag(j)));
          U_.add_row(i, j, wneg(k));
          Ui_.add_col(j, i, k);
        }
      }

      long double size() const {
        return U_.norm2() + V_.norm2() + Ui_.norm2() + Vi_.norm2();
      }

      static long double line_norm2(WideMatrix const& M, bool row, std::size_t k) {
        long double s = 0;
        if (row ? k >= M.rows : k >= M.cols) {
          return s;
        }
        std::size_t const len = row ? M.cols : M.rows;
        for (std::size_t t = 0; t < len; ++t) {
          auto const v = static_cast<long double>(row ? M.data[k * M.cols + t] : M.data[t * M.cols + k]);
          s += v * v;
        }
        return s;
      }

      // Part of size() touched by row_move(i, j, .) and col_move(j, i, .).
      long double local_size(std::size_t i, std::size_t j) const {
        return line_norm2(U_, true, i) + line_norm2(Ui_, false, j) + line_norm2(V_, false, j)
             + line_norm2(Vi_, true, i);
      }

      // Nearest multiple of `step` to `x`.
      static Wide round_to(Wide x, Wide step) {
        if (step == 1) {
          return x;
        }
        auto const q = std::round(static_cast<long double>(x) / static_cast<long double>(step));
        if (!(std::fabs(q) < 1e30L)) {
          return 0;
        }
        return wmul(static_cast<Wide>(q), step);
      }

      static Wide projection(WideMatrix const& M, bool by_rows, std::size_t target, std::size_t source) {
        long double dot = 0, nn = 0;
        std::size_t const len = by_rows ? M.cols : M.rows;
        for (std::size_t k = 0; k < len; ++k) {
          auto const t = static_cast<long double>(by_rows ? M.data[target * M.cols + k] : M.data[k * M.cols + target]);
          auto const s = static_cast<long double>(by_rows ? M.data[source * M.cols + k] : M.data[k * M.cols + source]);
          dot += t * s;
          nn += s * s;
        }
        if (nn == 0) {
          return 0;
        }
        auto const q = std::round(dot / nn);
        if (!(std::fabs(q) < 1e30L)) {
          return 0;
        }
        return static_cast<Wide>(q);
      }

      // LLL (delta = 0.99) over an ordered list of vectors. `vec(k)` reads
      // vector k; `sub(k, j, q)` sets b_k -= q b_j (called only when
      // `may_sub(k, j)`); `swap(k - 1, k)` exchanges neighbours (only when
      // `may_swap(k - 1, k)`). A forbidden swap counts as satisfied.
     public:
      template <typename Vec, typename MaySub, typename Sub, typename MaySwap, typename Swap>
      static void lll(std::size_t count, Vec&& vec, MaySub&& may_sub, Sub&& sub, MaySwap&& may_swap, Swap&& swap) {
        if (count < 2) {
          return;
        }
        using Row = std::vector<long double>;
        std::vector<Row> mu(count, Row(count, 0));
        Row              B(count, 0);
        auto gram_schmidt = [&] {
          std::vector<Row> star;
          for (std::size_t k = 0; k < count; ++k) {
            Row b = vec(k), bs = b;
            for (std::size_t j = 0; j < k; ++j) {
              long double dot = 0;
              for (std::size_t t = 0; t < b.size(); ++t) {
                dot += b[t] * star[j][t];
              }
              mu[k][j] = B[j] == 0 ? 0 : dot / B[j];
              for (std::size_t t = 0; t < b.size(); ++t) {
                bs[t] -= mu[k][j] * star[j][t];
              }
            }
            B[k] = 0;
            for (auto x : bs) {
              B[k] += x * x;
            }
            star.push_back(std::move(bs));
          }
        };
        gram_schmidt();
        std::size_t k = 1;
        for (int steps = 0; k < count && steps < 4096; ++steps) {
          for (std::size_t j = k; j-- > 0;) {
            auto const q = std::round(mu[k][j]);
            if (q != 0 && std::fabs(q) < 1e30L && may_sub(k, j)) {
              sub(k, j, static_cast<Wide>(q));
              gram_schmidt();
            }
          }
          if (!may_swap(k - 1, k) || B[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
          } else {
            swap(k - 1, k);
            gram_schmidt();
            k = std::max<std::size_t>(k - 1, 1);
          }
        }
      }

      static std::vector<long double> read(WideMatrix const& M, bool row, std::size_t idx) {
        std::size_t const        len = row ? M.cols : M.rows;
        std::vector<long double> out(len);
        for (std::size_t t = 0; t < len; ++t) {
          out[t] = static_cast<long double>(row ? M.data[idx * M.cols + t] : M.data[t * M.cols + idx]);
        }
        return out;
      }

     private:
      // Row i of U satisfies u A = 0 mod d_i (u A = 0 for i >= rank). Listing
      // the most constrained rows first, adding an earlier row to a later one
      // and swapping rows with equal d keep every row in its lattice.
      void reduce_u() {
        std::vector<std::size_t> order;
        for (std::size_t i = rank_; i < m_; ++i) {
          order.push_back(i);
        }
        for (std::size_t i = rank_; i-- > 0;) {
          order.push_back(i);
        }
        auto factor = [&](std::size_t idx) { return idx >= rank_ ? Wide{0} : D_(idx, idx); };
        lll(
            order.size(), [&](std::size_t k) { return read(U_, true, order[k]); },
            [](std::size_t, std::size_t) { return true; },
            [&](std::size_t k, std::size_t j, Wide q) { row_move(order[k], order[j], wneg(q)); },
            [&](std::size_t a, std::size_t b) { return factor(order[a]) == factor(order[b]); },
            [&](std::size_t a, std::size_t b) {
              auto const i = order[a], j = order[b];
              if (i < rank_) {
                col_swap(i, j);
              }
              row_swap(i, j);
            });
      }

      // Kernel columns of V are free; the others may absorb multiples of
      // them without disturbing U.
      void reduce_v_kernel() {
        std::vector<std::size_t> order;
        for (std::size_t j = rank_; j < n_; ++j) {
          order.push_back(j);
        }
        for (std::size_t j = rank_; j-- > 0;) {
          order.push_back(j);
        }
        auto const free_cols = n_ - rank_;
        lll(
            order.size(), [&](std::size_t k) { return read(V_, false, order[k]); },
            [&](std::size_t, std::size_t j) { return j < free_cols; },
            [&](std::size_t k, std::size_t j, Wide q) { col_move(order[k], order[j], wneg(q)); },
            [&](std::size_t a, std::size_t b) { return a < free_cols && b < free_cols; },
            [&](std::size_t a, std::size_t b) { col_swap(order[a], order[b]); });
      }

      void shrink_transforms() {
        constexpr Wide kSmall = Wide{1} << 20;
        if (std::max({U_.max_abs(), V_.max_abs(), Ui_.max_abs(), Vi_.max_abs()}) < kSmall) {
          return;
        }
        reduce_u();
        reduce_v_kernel();
        auto try_move = [&](auto&& apply, std::size_t i, std::size_t j, Wide c) {
          if (c == 0) {
            return false;
          }
          auto const before = local_size(i, j);
          apply(c);
          if (local_size(i, j) < before) {
            return true;
          }
          apply(-c);
          return false;
        };
        for (int pass = 0; pass < 64; ++pass) {
          bool improved = false;
          for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < m_; ++j) {
              auto const step = row_step(i, j);
              if (step == 0) {
                continue;
              }
              auto const apply = [&](Wide c) { row_move(i, j, c); };
              for (auto c : {-projection(U_, true, i, j), projection(Ui_, false, j, i), step, -step}) {
                if (try_move(apply, i, j, round_to(c, step))) {
                  improved = true;
                  break;
                }
              }
            }
          }
          for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t i = 0; i < n_; ++i) {
              auto const step = col_step(j, i);
              if (step == 0) {
                continue;
              }
              auto const apply = [&](Wide c) { col_move(j, i, c); };
              for (auto c : {-projection(V_, false, j, i), projection(Vi_, true, i, j), step, -step}) {
                if (try_move(apply, i, j, round_to(c, step))) {
                  improved = true;
                  break;
                }
              }
            }
          }
          if (!improved) {
            return;
          }
        }
      }

      std::size_t m_;
      std::size_t n_;
      std::size_t rank_ = 0;
      WideMatrix  U_;
      WideMatrix  V_;
      WideMatrix  D_;
      WideMatrix  Ui_;
      WideMatrix  Vi_;
    };

    Wide floor_mod(Wide a, Wide m) {
      auto r = a % m;
      return r < 0 ? r + m : r;
    }

    Wide floor_div(Wide a, Wide b) {
      auto q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
      }
      return q;
    }

    // Fraction-free (Bareiss) determinant.
    Wide wide_det(WideMatrix M) {
      std::size_t const n    = M.rows;
      Wide              sign = 1;
      Wide              prev = 1;
      for (std::size_t k = 0; k < n; ++k) {
        if (M(k, k) == 0) {
          std::size_t p = k + 1;
          while (p < n && M(p, k) == 0) {
            ++p;
          }
          if (p == n) {
            return 0;
          }
          M.swap_rows(k, p);
          sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
          for (std::size_t j = k + 1; j < n; ++j) {
            M(i, j) = wadd(wmul(M(i, j), M(k, k)), wneg(wmul(M(i, k), M(k, j)))) / prev;
          }
          M(i, k) = 0;
        }
        prev = M(k, k);
      }
      return sign * M(n - 1, n - 1);
    }

    WideMatrix wide_product(WideMatrix const& a, WideMatrix const& b) {
      WideMatrix out(a.rows, b.cols);
      for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
          auto const x = a.data[i * a.cols + k];
          for (std::size_t j = 0; x != 0 && j < b.cols; ++j) {
            out(i, j) = wadd(out(i, j), wmul(x, b.data[k * b.cols + j]));
          }
        }
      }
      return out;
    }

    WideMatrix widen(IntMatrix const& A) {
      WideMatrix out(A.rows(), A.cols());
      for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
          out(i, j) = A(i, j);
        }
      }
      return out;
    }

    // U A = D V^-1, U U^-1 = I, V V^-1 = I and D a divisibility chain.
    // Throws OverflowError when the check itself leaves 128 bits.
    bool certified(IntMatrix const& A, SnfResult const& r) {
      auto const m = A.rows(), n = A.cols();
      if (r.D.rows() != m || r.D.cols() != n || r.U.rows() != m || r.U.cols() != m || r.V.rows() != n
          || r.V.cols() != n || r.U_inv.rows() != m || r.U_inv.cols() != m || r.V_inv.rows() != n
          || r.V_inv.cols() != n) {
        return false;
      }
      std::int64_t prev = 1;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          auto const x = r.D(i, j);
          if (i != j ? x != 0 : (x < 0 || (prev == 0 ? x != 0 : x % prev != 0))) {
            return false;
          }
          if (i == j) {
            prev = x;
          }
        }
      }
      auto const is_identity = [](WideMatrix const& M) {
        for (std::size_t i = 0; i < M.rows; ++i) {
          for (std::size_t j = 0; j < M.cols; ++j) {
            if (M.data[i * M.cols + j] != (i == j ? 1 : 0)) {
              return false;
            }
          }
        }
        return true;
      };
      if (!is_identity(wide_product(widen(r.U), widen(r.U_inv)))
          || !is_identity(wide_product(widen(r.V), widen(r.V_inv)))) {
        return false;
      }
      auto const UA = wide_product(widen(r.U), widen(A));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Wide const rhs = i < n ? wmul(r.D(i, i), r.V_inv(i, j)) : 0;
          if (UA.data[i * n + j] != rhs) {
            return false;
          }
        }
      }
      return true;
    }

    constexpr std::uint64_t kComfortableTransform = std::uint64_t{1} << 40;

    std::uint64_t transform_size(SnfResult const& r) {
      std::uint64_t m = 0;
      for (auto const* M : {&r.U, &r.V, &r.U_inv, &r.V_inv}) {
        for (std::size_t i = 0; i < M->rows(); ++i) {
          for (std::size_t j = 0; j < M->cols(); ++j) {
            auto const x = (*M)(i, j);
            m = std::max(m, x < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x));
          }
        }
      }
      return m;
    }

    // adj(A)(j, i) = (-1)^(i+j) det(A without row i, column j).
    WideMatrix adjugate(WideMatrix const& A) {
      std::size_t const n = A.rows;
      WideMatrix        adj(n, n);
      if (n == 1) {
        adj(0, 0) = 1;
        return adj;
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          WideMatrix minor(n - 1, n - 1);
          for (std::size_t r = 0, mr = 0; r < n; ++r) {
            if (r == i) {
              continue;
            }
            for (std::size_t c = 0, mc = 0; c < n; ++c) {
              if (c != j) {
                minor(mr, mc++) = A.data[r * n + c];
              }
            }
            ++mr;
          }
          auto const m = wide_det(minor);
          adj(j, i)    = (i + j) % 2 == 0 ? m : wneg(m);
        }
      }
      return adj;
    }

    // X / q entrywise, or nullopt when a division is inexact.
    std::optional<WideMatrix> exact_divide(WideMatrix X, Wide q) {
      for (auto& x : X.data) {
        if (x % q != 0) {
          return std::nullopt;
        }
        x /= q;
      }
      return X;
    }

    // Nonsingular square A. With b_i the columns of U^-1, the vectors
    // w_i = d_i b_i are a basis of the column lattice of A (W = A V). Any
    // such adapted basis determines the other transforms exactly:
    // V = A^-1 W, V^-1 = W^-1 A, U = D W^-1. So only W is reduced: LLL with
    // the largest factors first (w_j may absorb integer multiples of w_i when
    // d_j | d_i), then the b_i are size-reduced in the opposite order. Every
    // transform is then bounded by the adjugates of A and of the reduced W
    // instead of by the elimination history.
    std::optional<SnfResult> snf_adapted(IntMatrix const& input) {
      std::size_t const n = input.rows();
      if (n == 0 || n != input.cols() || n > 16) {
        return std::nullopt;
      }
      auto const A   = widen(input);
      auto const det = wide_det(A);
      if (det == 0) {
        return std::nullopt;
      }
      SnfWorker worker(input);
      worker.eliminate_and_shrink();
      WideMatrix const  D = worker.diagonal_form();
      std::vector<Wide> d(n);
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = D.data[i * n + i];
      }
      auto const adj_a = adjugate(A);

      // U and B = U^-1, changed together.
      struct Pair {
        WideMatrix U;
        WideMatrix B;
      };
      auto line = [&](WideMatrix const& M, bool row, std::size_t k, bool scaled) {
        std::vector<long double> out(n);
        for (std::size_t t = 0; t < n; ++t) {
          out[t] = static_cast<long double>(row ? M.data[k * n + t] : M.data[t * n + k]);
          if (scaled) {
            out[t] *= static_cast<long double>(d[k]);
          }
        }
        return out;
      };
      std::vector<std::size_t> descending(n), ascending(n);
      for (std::size_t k = 0; k < n; ++k) {
        descending[k] = n - 1 - k;
        ascending[k]  = k;
      }
      auto same_factor = [&](std::vector<std::size_t> const& order) {
        return [&d, &order](std::size_t a, std::size_t b) { return d[order[a]] == d[order[b]]; };
      };
      auto always = [](std::size_t, std::size_t) { return true; };

      // Rows of U, largest factor first: u_j += c u_i is free when d_j | d_i.
      auto reduce_rows = [&](Pair& p) {
        SnfWorker::lll(
            n, [&](std::size_t k) { return line(p.U, true, descending[k], false); }, always,
            [&](std::size_t k, std::size_t j, Wide q) {
              p.U.add_row(descending[k], descending[j], wneg(q));
              p.B.add_col(descending[j], descending[k], q);
            },
            same_factor(descending),
            [&](std::size_t a, std::size_t b) {
              p.U.swap_rows(descending[a], descending[b]);
              p.B.swap_cols(descending[a], descending[b]);
            });
      };
      // Columns of B (or of W = B D), in the given order.
      auto reduce_cols = [&](Pair& p, bool scaled) {
        auto const& order = scaled ? descending : ascending;
        SnfWorker::lll(
            n, [&](std::size_t k) { return line(p.B, false, order[k], scaled); }, always,
            [&](std::size_t k, std::size_t j, Wide q) {
              // Scaled: w_k -= q w_j is b_k -= q (d_j / d_k) b_j.
              auto const f = scaled ? wmul(q, d[order[j]] / d[order[k]]) : q;
              p.B.add_col(order[k], order[j], wneg(f));
              p.U.add_row(order[j], order[k], f);
            },
            same_factor(order),
            [&](std::size_t a, std::size_t b) {
              p.U.swap_rows(order[a], order[b]);
              p.B.swap_cols(order[a], order[b]);
            });
      };
      // V = A^-1 B D and V^-1 = D^-1 U A, both exact.
      auto finish = [&](Pair const& p) -> std::optional<SnfResult> {
        WideMatrix W = p.B;
        for (std::size_t t = 0; t < n; ++t) {
          for (std::size_t c = 0; c < n; ++c) {
            W(t, c) = wmul(p.B.data[t * n + c], d[c]);
          }
        }
        auto const V = exact_divide(wide_product(adj_a, W), det);
        if (!V) {
          return std::nullopt;
        }
        auto UA = wide_product(p.U, A);
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t c = 0; c < n; ++c) {
            if (UA(r, c) % d[r] != 0) {
              return std::nullopt;
            }
            UA(r, c) /= d[r];
          }
        }
        return SnfResult{p.U.narrow(), V->narrow(), D.narrow(), p.B.narrow(), UA.narrow()};
      };

      Pair const start{worker.u_matrix(), worker.u_inverse()};
      std::vector<std::function<void(Pair&)>> const strategies{
          [&](Pair& p) { reduce_rows(p); },
          [&](Pair& p) {
            reduce_rows(p);
            reduce_cols(p, false);
          },
          [&](Pair& p) {
            reduce_cols(p, true);
            reduce_cols(p, false);
          },
      };
      std::optional<SnfResult> best;
      for (auto const& strategy : strategies) {
        try {
          Pair p = start;
          strategy(p);
          auto r = finish(p);
          if (r && (!best || transform_size(*r) < transform_size(*best))) {
            best = std::move(r);
          }
        } catch (OverflowError const&) {
        }
        if (best && transform_size(*best) < kComfortableTransform) {
          break;
        }
      }
      return best;
    }

    // Lower-triangular column Hermite form H = A V1 of a nonsingular square
    // matrix, computed modulo |det A| so entries never exceed it.
    std::optional<WideMatrix> hermite_mod_det(WideMatrix const& A, Wide det) {
      std::size_t const n = A.rows;
      Wide              R = wabs(det);
      WideMatrix        C(n, n);
      for (std::size_t k = 0; k < n * n; ++k) {
        C.data[k] = floor_mod(A.data[k], R);
      }
      WideMatrix W(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (C(i, j) == 0) {
            continue;
          }
          auto const a = C(i, i);
          auto const b = C(i, j);
          auto const e = extended_gcd(a, b);
          for (std::size_t k = i; k < n; ++k) {
            auto const x = C(k, i);
            auto const y = C(k, j);
            C(k, i)      = floor_mod(wadd(wmul(e.s, x), wmul(e.t, y)), R);
            C(k, j)      = floor_mod(wadd(wmul(a / e.g, y), wneg(wmul(b / e.g, x))), R);
          }
        }
        auto const e = extended_gcd(C(i, i), R);
        for (std::size_t k = i; k < n; ++k) {
          W(k, i) = floor_mod(wmul(e.s, C(k, i)), R);
        }
        if (W(i, i) == 0) {
          W(i, i) = R;
        }
        for (std::size_t j = 0; j < i; ++j) {
          auto const q = floor_div(W(i, j), W(i, i));
          for (std::size_t k = i; k < n; ++k) {
            W(k, j) = wadd(W(k, j), wneg(wmul(q, W(k, i))));
          }
        }
        if (R % W(i, i) != 0) {
          return std::nullopt;
        }
        R /= W(i, i);
      }
      return W;
    }

    // Nonsingular square input: reduce to the Hermite form first and run the
    // elimination there. V1 = A^-1 H and V1^-1 = H^-1 A are recovered exactly,
    // so their size is bounded by the adjugate of A rather than by the
    // elimination history. Returns nullopt when the route does not apply.
    std::optional<SnfResult> snf_via_hermite_core(IntMatrix const& input) {
      std::size_t const n = input.rows();
      if (n < 2 || n != input.cols() || n > 16) {
        return std::nullopt;
      }
      auto const A   = widen(input);
      auto const det = wide_det(A);
      if (det == 0) {
        return std::nullopt;
      }
      auto const H = hermite_mod_det(A, det);
      if (!H) {
        return std::nullopt;
      }
      auto V1 = wide_product(adjugate(A), *H);
      for (auto& x : V1.data) {
        if (x % det != 0) {
          return std::nullopt;
        }
        x /= det;
      }
      // Forward substitution for H Y = A.
      WideMatrix V1_inv(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < n; ++c) {
          Wide s = A.data[i * n + c];
          for (std::size_t k = 0; k < i; ++k) {
            s = wadd(s, wneg(wmul((*H).data[i * n + k], V1_inv(k, c))));
          }
          auto const h = (*H).data[i * n + i];
          if (s % h != 0) {
            return std::nullopt;
          }
          V1_inv(i, c) = s / h;
        }
      }
      auto       inner = SnfWorker(H->narrow()).run();
      auto const V     = wide_product(V1, widen(inner.V));
      auto const V_inv = wide_product(widen(inner.V_inv), V1_inv);
      return SnfResult{std::move(inner.U), V.narrow(), std::move(inner.D), std::move(inner.U_inv),
                       V_inv.narrow()};
    }

    IntMatrix transpose(IntMatrix const& A) {
      IntMatrix T(A.cols(), A.rows());
      for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
          T(j, i) = A(i, j);
        }
      }
      return T;
    }

    // Column reversal J, with J = J^-1.
    IntMatrix reverse_cols(IntMatrix const& A) {
      IntMatrix R(A.rows(), A.cols());
      for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
          R(i, A.cols() - 1 - j) = A(i, j);
        }
      }
      return R;
    }

    IntMatrix reverse_rows(IntMatrix const& A) {
      return transpose(reverse_cols(transpose(A)));
    }

    // The Hermite shape depends on orientation and column order, so a few
    // equivalent inputs are tried when the first one gives large transforms.
    enum class HermiteVariant { plain, transposed, reversed, transposed_reversed };

    std::optional<SnfResult> snf_via_hermite(IntMatrix const& A, HermiteVariant variant) {
      bool const flip    = variant == HermiteVariant::transposed || variant == HermiteVariant::transposed_reversed;
      bool const reverse = variant == HermiteVariant::reversed || variant == HermiteVariant::transposed_reversed;
      auto       B       = flip ? transpose(A) : A;
      if (reverse) {
        B = reverse_cols(B);
      }
      auto r = snf_via_hermite_core(B);
      if (!r) {
        return r;
      }
      if (reverse) {
        // U (B) V = D with B = A' J: V' = J V, V'^-1 = V^-1 J.
        r->V     = reverse_rows(r->V);
        r->V_inv = reverse_cols(r->V_inv);
      }
      if (flip) {
        // U A^T V = D gives V^T A U^T = D^T.
        return SnfResult{transpose(r->V), transpose(r->U), transpose(r->D), transpose(r->V_inv), transpose(r->U_inv)};
      }
      return r;
    }


    struct SolveOutcome {
      std::optional<std::vector<std::int64_t>> x;
      std::string                              obstruction;
    };

    SolveOutcome solve_with_reason(IntMatrix const& A, std::vector<std::int64_t> const& b) {
      if (b.size() != A.rows()) {
        throw std::invalid_argument("solve_integer_system: shape mismatch");
      }
      auto const snf = smith_normal_form(A, std::numeric_limits<std::int64_t>::max());
      IntMatrix  bm(b.size(), 1);
      for (std::size_t i = 0; i < b.size(); ++i) {
        bm(i, 0) = b[i];
      }
      auto const        c = multiply(snf.U, bm);
      std::size_t const r = snf.rank();
      IntMatrix         y(A.cols(), 1);
      for (std::size_t i = 0; i < A.rows(); ++i) {
        auto const d = i < r ? snf.D(i, i) : 0;
        if (d == 0) {
          if (c(i, 0) != 0) {
            return {std::nullopt,
                    "transformed right-hand side " + std::to_string(c(i, 0))
                        + " meets a zero invariant factor"};
          }
          continue;
        }
        if (c(i, 0) % d != 0) {
          return {std::nullopt,
                  "transformed right-hand side " + std::to_string(c(i, 0))
                      + " is not divisible by invariant factor " + std::to_string(d)};
        }
        y(i, 0) = c(i, 0) / d;
      }
      auto const                x = multiply(snf.V, y);
      std::vector<std::int64_t> out(A.cols());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = x(i, 0);
      }
      return {out, {}};
    }

  }  // namespace

  SnfResult smith_normal_form(IntMatrix const& A, std::int64_t entry_bound) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      for (std::size_t j = 0; j < A.cols(); ++j) {
        if (A(i, j) > entry_bound || A(i, j) < -entry_bound) {
          throw OverflowError("smith_normal_form: entry " + std::to_string(A(i, j))
                              + " exceeds the bound " + std::to_string(entry_bound));
        }
      }
    }
    // Routes in order of preference; the first with small transforms wins,
    // otherwise the smallest result that fits in 64 bits.
    std::vector<std::function<std::optional<SnfResult>()>> const routes{
        [&] { return snf_adapted(A); },
        [&] { return snf_via_hermite(A, HermiteVariant::plain); },
        [&] { return snf_via_hermite(A, HermiteVariant::transposed); },
        [&] { return std::optional<SnfResult>(SnfWorker(A).run()); },
    };
    std::optional<SnfResult>    best;
    std::optional<OverflowError> last_error;
    for (auto const& route : routes) {
      try {
        auto candidate = route();
        if (candidate && !certified(A, *candidate)) {
          throw std::logic_error("smith_normal_form: a route returned an invalid factorisation");
        }
        if (candidate && (!best || transform_size(*candidate) < transform_size(*best))) {
          best = std::move(candidate);
        }
      } catch (OverflowError const& e) {
        last_error = e;
      }
      if (best && transform_size(*best) < kComfortableTransform) {
        break;
      }
    }
    if (best) {
      return *std::move(best);
    }
    throw last_error ? *last_error : OverflowError("smith_normal_form: no route produced a result");
  }

  std::optional<std::vector<std::int64_t>> solve_integer_system(IntMatrix const&                 A,
                                                                std::vector<std::int64_t> const& b) {
    return solve_with_reason(A, b).x;
  }

  ////////////////////////////////////////////////////////////////////////
  // FgZModule and ZModHom
  ////////////////////////////////////////////////////////////////////////

  FgZModule FgZModule::canonical(std::size_t rank, std::vector<std::int64_t> const& orders) {
    std::vector<std::int64_t> finite;
    for (auto d : orders) {
      if (d == 0) {
        ++rank;
      } else if (abs_checked(d) > 1) {
        finite.push_back(abs_checked(d));
      }
    }
    FgZModule M;
    M.rank = rank;
    IntMatrix diag(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) {
      diag(i, i) = finite[i];
    }
    for (auto d : smith_normal_form(diag, std::numeric_limits<std::int64_t>::max()).diagonal()) {
      if (d > 1) {
        M.torsion.push_back(d);
      }
    }
    return M;
  }

  std::int64_t FgZModule::exponent() const {
    if (rank > 0) {
      return 0;
    }
    return torsion.empty() ? 1 : torsion.back();
  }

  std::string FgZModule::to_string() const {
    std::string s;
    if (rank == 1) {
      s = "Z";
    } else if (rank > 1) {
      s = "Z^" + std::to_string(rank);
    }
    for (auto d : torsion) {
      s += (s.empty() ? "Z_" : "+Z_") + std::to_string(d);
    }
    return s.empty() ? "0" : s;
  }

  std::vector<std::int64_t> normalize(FgZModule const& M, std::vector<std::int64_t> x) {
    if (x.size() != M.generator_count()) {
      throw std::invalid_argument("normalize: wrong coordinate count");
    }
    for (std::size_t j = M.rank; j < x.size(); ++j) {
      x[j] = mod_floor(x[j], M.torsion[j - M.rank]);
    }
    return x;
  }

  ZModHom ZModHom::make(FgZModule source, FgZModule target, IntMatrix matrix) {
    if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count()) {
      throw ConstructionError("matrix shape", "expected " + std::to_string(target.generator_count())
                                                  + " x " + std::to_string(source.generator_count()));
    }
    for (std::size_t j = 0; j < matrix.rows(); ++j) {
      auto const dj = target.generator_order(j);
      for (std::size_t i = 0; i < matrix.cols(); ++i) {
        auto const di = source.generator_order(i);
        if (dj == 0) {
          if (di != 0 && matrix(j, i) != 0) {
            throw ConstructionError("torsion to free",
                                    "torsion generator " + std::to_string(i + 1)
                                        + " cannot map to a nonzero free coordinate");
          }
          continue;
        }
        matrix(j, i) = mod_floor(matrix(j, i), dj);
        if (di != 0) {
          if (!kills(di, matrix(j, i), dj)) {
            throw ConstructionError("order condition",
                                    "image of generator " + std::to_string(i + 1) + " in Z_"
                                        + std::to_string(dj) + " has order not dividing "
                                        + std::to_string(di));
          }
        }
      }
    }
    return ZModHom(std::move(source), std::move(target), std::move(matrix));
  }

  ZModHom ZModHom::identity(FgZModule const& M) {
    return make(M, M, IntMatrix::identity(M.generator_count()));
  }

  std::vector<std::int64_t> ZModHom::apply(std::vector<std::int64_t> const& x) const {
    if (x.size() != source_.generator_count()) {
      throw std::invalid_argument("ZModHom::apply: wrong coordinate count");
    }
    std::vector<std::int64_t> y(matrix_.rows(), 0);
    for (std::size_t j = 0; j < matrix_.rows(); ++j) {
      for (std::size_t i = 0; i < matrix_.cols(); ++i) {
        y[j] = checked_add(y[j], checked_mul(matrix_(j, i), x[i]));
      }
    }
    return normalize(target_, std::move(y));
  }

  bool ZModHom::is_zero() const {
    for (std::size_t j = 0; j < matrix_.rows(); ++j) {
      for (std::size_t i = 0; i < matrix_.cols(); ++i) {
        if (matrix_(j, i) != 0) {
          return false;
        }
      }
    }
    return true;
  }

  std::string ZModHom::render() const {
    if (matrix_.cols() == 0) {
      return "0";
    }
    std::string s;
    for (std::size_t i = 0; i < matrix_.cols(); ++i) {
      s += (i ? ", e" : "e") + std::to_string(i + 1) + " -> (";
      for (std::size_t j = 0; j < matrix_.rows(); ++j) {
        s += (j ? "," : "") + std::to_string(matrix_(j, i));
      }
      s += ")";
    }
    return s;
  }

  ZModHom compose(ZModHom const& g, ZModHom const& f) {
    if (!(f.target() == g.source())) {
      throw std::invalid_argument("compose: shapes do not match");
    }
    return ZModHom::make(f.source(), g.target(), multiply(g.matrix(), f.matrix()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Kernels and summands
  ////////////////////////////////////////////////////////////////////////

  ZKernel zhom_kernel(ZModHom const& h) {
    auto const&       M  = h.source();
    auto const&       N  = h.target();
    std::size_t const n  = M.generator_count();
    std::size_t const nt = N.torsion.size();
    constexpr auto    big = std::numeric_limits<std::int64_t>::max();

    // x in the lifted kernel  <=>  A x = E y for some y.
    IntMatrix B(N.generator_count(), n + nt);
    for (std::size_t j = 0; j < B.rows(); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        B(j, i) = h.matrix()(j, i);
      }
    }
    for (std::size_t j = 0; j < nt; ++j) {
      B(N.rank + j, n + j) = -N.torsion[j];
    }
    auto const        snfB = smith_normal_form(B, big);
    std::size_t const rB   = snfB.rank();
    IntMatrix         G(n, n + nt - rB);
    for (std::size_t c = rB; c < n + nt; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        G(i, c - rB) = snfB.V(i, c);
      }
    }

    // A basis of the lifted kernel: b_i = d_i * U^-1 e_i.
    auto const        snfG = smith_normal_form(G, big);
    std::size_t const s    = snfG.rank();
    IntMatrix         basis(n, s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t r = 0; r < n; ++r) {
        basis(r, i) = checked_mul(snfG.D(i, i), snfG.U_inv(r, i));
      }
    }

    // Relations of M in that basis.
    IntMatrix L(n, M.torsion.size());
    for (std::size_t i = 0; i < M.torsion.size(); ++i) {
      L(M.rank + i, i) = M.torsion[i];
    }
    auto const UL = multiply(snfG.U, L);
    IntMatrix  C(s, L.cols());
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t c = 0; c < L.cols(); ++c) {
        if (UL(i, c) % snfG.D(i, i) != 0) {
          throw std::logic_error("zhom_kernel: relations outside the kernel lattice");
        }
        C(i, c) = UL(i, c) / snfG.D(i, i);
      }
    }
    auto const        snfC = smith_normal_form(C, big);
    std::size_t const rC   = snfC.rank();

    std::vector<std::size_t>  free_gens, torsion_gens;
    std::vector<std::int64_t> orders;
    for (std::size_t i = 0; i < s; ++i) {
      auto const o = i < rC ? snfC.D(i, i) : 0;
      if (o == 0) {
        free_gens.push_back(i);
      } else if (o > 1) {
        torsion_gens.push_back(i);
        orders.push_back(o);
      }
    }
    FgZModule K;
    K.rank    = free_gens.size();
    K.torsion = orders;

    auto const gens_in_basis = snfC.U_inv;
    IntMatrix  X(n, K.generator_count());
    std::size_t col = 0;
    for (auto list : {&free_gens, &torsion_gens}) {
      for (auto i : *list) {
        for (std::size_t r = 0; r < n; ++r) {
          std::int64_t acc = 0;
          for (std::size_t b = 0; b < s; ++b) {
            acc = checked_add(acc, checked_mul(basis(r, b), gens_in_basis(b, i)));
          }
          X(r, col) = acc;
        }
        ++col;
      }
    }
    auto inclusion = ZModHom::make(K, M, std::move(X));
    if (!compose(h, inclusion).is_zero()) {
      throw std::logic_error("zhom_kernel: inclusion does not compose to zero");
    }
    return ZKernel{std::move(K), std::move(inclusion)};
  }

  ZSummandResult zsummand_test(ZModHom const& inclusion) {
    if (zhom_kernel(inclusion).module.generator_count() != 0) {
      throw std::invalid_argument("zsummand_test: map is not injective");
    }
    auto const&       K  = inclusion.source();
    auto const&       M  = inclusion.target();
    auto const&       X  = inclusion.matrix();
    std::size_t const nK = K.generator_count();
    std::size_t const nM = M.generator_count();

    IntMatrix P(nK, nM);
    for (std::size_t j = 0; j < nK; ++j) {
      auto const                e = K.generator_order(j);
      std::vector<std::int64_t> scale(nM, 1);
      for (std::size_t l = M.rank; l < nM; ++l) {
        auto const d = M.generator_order(l);
        scale[l]     = e == 0 ? 0 : e / std::gcd(e, d);
      }
      // sum_l scale_l X[l][c] t_l (+ e z_c) = delta_jc for every c.
      IntMatrix                 A(nK, nM + (e == 0 ? 0 : nK));
      std::vector<std::int64_t> b(nK, 0);
      b[j] = 1;
      for (std::size_t c = 0; c < nK; ++c) {
        for (std::size_t l = 0; l < nM; ++l) {
          A(c, l) = checked_mul(scale[l], X(l, c));
        }
        if (e != 0) {
          A(c, nM + c) = e;
        }
      }
      auto const sol = solve_with_reason(A, b);
      if (!sol.x) {
        ZSummandResult out;
        out.status             = Status::fails;
        out.failing_coordinate = j;
        out.obstruction        = "generator " + std::to_string(j + 1) + " of the submodule ("
                          + (e == 0 ? std::string("free") : "order " + std::to_string(e))
                          + ") has no retraction component: " + sol.obstruction;
        return out;
      }
      for (std::size_t l = 0; l < nM; ++l) {
        P(j, l) = checked_mul(scale[l], (*sol.x)[l]);
      }
    }
    auto rho = ZModHom::make(M, K, std::move(P));
    if (!(compose(rho, inclusion) == ZModHom::identity(K))) {
      throw std::logic_error("zsummand_test: retraction does not verify");
    }
    ZSummandResult out;
    out.status     = Status::holds;
    out.retraction = std::move(rho);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rickart check
  ////////////////////////////////////////////////////////////////////////

  ZModHom zhom_from_finite(FgZModule const& M, Homomorphism const& f) {
    std::size_t const k = M.generator_count();
    IntMatrix         X(k, k);
    auto const        imgs = f.generator_images();
    for (std::size_t i = 0; i < k; ++i) {
      auto const& c = f.target().coordinates(imgs[i]);
      for (std::size_t j = 0; j < k; ++j) {
        X(j, i) = c[j];
      }
    }
    return ZModHom::make(M, M, std::move(X));
  }

  namespace {

    std::vector<std::vector<std::int64_t>> sweep_values(FgZModule const& M, int bound) {
      std::size_t const                      n = M.generator_count();
      std::vector<std::vector<std::int64_t>> values;
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          auto const            dj = M.generator_order(j);
          auto const            di = M.generator_order(i);
          std::vector<std::int64_t> v;
          if (dj == 0 && di == 0) {
            v.push_back(0);
            for (int b = 1; b <= bound; ++b) {
              v.push_back(b);
              v.push_back(-b);
            }
          } else if (dj == 0) {
            v.push_back(0);
          } else {
            for (std::int64_t a = 0; a < dj; ++a) {
              if (di == 0 || kills(di, a, dj)) {
                v.push_back(a);
              }
            }
          }
          values.push_back(std::move(v));
        }
      }
      return values;
    }

  }  // namespace

  ZRickartResult zrickart_sweep(FgZModule const& M, int bound, Limits const& limits) {
    ZRickartResult res;
    res.branch = "sweep";
    res.bound  = bound;
    if (bound < 0) {
      throw std::invalid_argument("zrickart_sweep: bound must be >= 0");
    }
    auto const        values = sweep_values(M, bound);
    std::size_t const n      = M.generator_count();
    std::size_t       total  = 1;
    for (auto const& v : values) {
      total *= v.size();
      if (total > limits.split_search) {
        res.status = Status::unsupported;
        res.reason = CapacityError("split_search", limits.split_search, total).what();
        return res;
      }
    }
    std::vector<std::size_t> digit(values.size(), 0);
    for (std::size_t count = 0; count < total; ++count) {
      IntMatrix X(n, n);
      for (std::size_t p = 0; p < values.size(); ++p) {
        X(p / n, p % n) = values[p][digit[p]];
      }
      auto h   = ZModHom::make(M, M, std::move(X));
      auto ker = zhom_kernel(h);
      ++res.maps_checked;
      auto test = zsummand_test(ker.inclusion);
      if (test.status == Status::fails) {
        res.status      = Status::fails;
        res.witness     = std::move(h);
        res.kernel      = std::move(ker);
        res.obstruction = std::move(test.obstruction);
        return res;
      }
      for (std::size_t p = values.size(); p-- > 0;) {
        if (++digit[p] < values[p].size()) {
          break;
        }
        digit[p] = 0;
      }
    }
    res.status = M.rank == 0 ? Status::holds : Status::undecided;
    return res;
  }

  ZRickartResult zrickart_check(FgZModule const& M, int bound, Limits const& limits) {
    if (M.rank == 0) {
      ZRickartResult res;
      res.branch = "finite";
      res.bound  = bound;
      try {
        auto const e = M.exponent();
        if (e > static_cast<std::int64_t>(limits.ring_construct_order)) {
          throw CapacityError("ring_construct_order", limits.ring_construct_order,
                              static_cast<std::size_t>(e));
        }
        auto const       ring = build_ring(RingExpr::zmod(static_cast<int>(e)), limits);
        std::vector<int> orders(M.torsion.begin(), M.torsion.end());
        auto const       fm = FiniteModule::cyclic_sum(ring, orders, limits);
        auto const       v  = decide_module_property(fm, ModuleProperty::rickart);
        res.status          = v.status;
        res.reason          = v.reason;
        res.maps_checked    = fm.endomorphism_tables().size();
        res.justification   = "decided exactly over zmod(" + std::to_string(e)
                            + "), whose module endomorphisms are the group endomorphisms";
        if (v.status == Status::fails) {
          res.witness = zhom_from_finite(M, v.witness->maps.front());
          res.kernel  = zhom_kernel(*res.witness);
          auto test   = zsummand_test(res.kernel->inclusion);
          if (test.status != Status::fails) {
            throw std::logic_error("zrickart_check: finite witness kernel splits over Z");
          }
          res.obstruction = test.obstruction;
        }
      } catch (CapacityError const& e) {
        res.status = Status::unsupported;
        res.reason = e.what();
      }
      return res;
    }
    auto res  = zrickart_sweep(M, bound, limits);
    res.bound = bound;
    if (M.torsion.empty()) {
      res.branch        = "torsion_free";
      res.justification = "the kernel of an endomorphism of Z^r is a pure sublattice; the quotient "
                          "embeds in Z^r, so it is free and the inclusion splits";
      if (res.status == Status::unsupported) {
        res.justification += "; bounded sweep skipped: " + res.reason;
        res.reason.clear();
        res.status = Status::holds;
      } else if (res.status == Status::undecided) {
        res.justification += "; no counterexample among " + std::to_string(res.maps_checked)
                             + " matrices with entries in [-" + std::to_string(bound) + ", "
                             + std::to_string(bound) + "]";
        res.status = Status::holds;
      }
      return res;
    }
    res.branch = "mixed";
    if (res.status == Status::undecided) {
      res.justification = "no counterexample among " + std::to_string(res.maps_checked)
                          + " endomorphisms with free entries in [-" + std::to_string(bound)
                          + ", " + std::to_string(bound) + "]";
    }
    return res;
  }

}  // namespace rickart
