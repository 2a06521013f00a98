#include "rickartlab/finring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "rickartlab/errors.hpp"

namespace rickart {

  bool ProductExpr::operator==(ProductExpr const& other) const {
    return factors == other.factors;
  }

  bool MatrixExpr::operator==(MatrixExpr const& other) const {
    if (k != other.k) {
      return false;
    }
    if (!base || !other.base) {
      return base == other.base;
    }
    return *base == *other.base;
  }

  ////////////////////////////////////////////////////////////////////////
  // Expression text
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(RingExpr const& expr) {
    return std::visit(
        [](auto const& node) -> std::string {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ZmodExpr>) {
            return "zmod(" + std::to_string(node.n) + ")";
          } else if constexpr (std::is_same_v<T, ProductExpr>) {
            std::string s = "product(";
            for (std::size_t i = 0; i < node.factors.size(); ++i) {
              s += (i ? "," : "") + to_string(node.factors[i]);
            }
            return s + ")";
          } else if constexpr (std::is_same_v<T, MatrixExpr>) {
            return "matrix(" + to_string(*node.base) + ","
                   + std::to_string(node.k) + ")";
          } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
            std::string s = "poly_quotient(zmod(" + std::to_string(node.modulus)
                            + "),[";
            for (std::size_t i = 0; i < node.coefficients.size(); ++i) {
              s += (i ? "," : "") + std::to_string(node.coefficients[i]);
            }
            return s + "])";
          } else {
            return "table(order=" + std::to_string(node.add.size()) + ")";
          }
        },
        expr.node);
  }

  namespace {

    class ExprParser {
     public:
      explicit ExprParser(std::string_view text) : text_(text) {}

      RingExpr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
          fail("trailing characters");
        }
        return e;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw Error("ring expression: " + what + " at offset "
                    + std::to_string(pos_) + " in '" + std::string(text_) + "'");
      }

      void skip_ws() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos_;
      }

      bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
          ++pos_;
          return true;
        }
        return false;
      }

      std::string ident() {
        skip_ws();
        auto start = pos_;
        while (pos_ < text_.size()
               && (std::isalpha(static_cast<unsigned char>(text_[pos_]))
                   || text_[pos_] == '_')) {
          ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
      }

      int integer() {
        skip_ws();
        auto start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') {
          ++pos_;
        }
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (start == pos_) {
          fail("expected integer");
        }
        try {
          return std::stoi(std::string(text_.substr(start, pos_ - start)));
        } catch (std::exception const&) {
          fail("integer out of range");
        }
      }

      RingExpr expr() {
        auto name = ident();
        expect('(');
        if (name == "zmod") {
          int n = integer();
          expect(')');
          return RingExpr::zmod(n);
        }
        if (name == "product") {
          std::vector<RingExpr> factors{expr()};
          while (accept(',')) {
            factors.push_back(expr());
          }
          expect(')');
          return RingExpr::product(std::move(factors));
        }
        if (name == "matrix") {
          auto base = expr();
          expect(',');
          int k = integer();
          expect(')');
          return RingExpr::matrix(std::move(base), k);
        }
        if (name == "poly_quotient") {
          auto base = expr();
          auto const* z = std::get_if<ZmodExpr>(&base.node);
          if (z == nullptr) {
            fail("poly_quotient base must be zmod(n)");
          }
          expect(',');
          expect('[');
          std::vector<int> coeffs{integer()};
          while (accept(',')) {
            coeffs.push_back(integer());
          }
          expect(']');
          expect(')');
          return RingExpr::poly_quotient(z->n, std::move(coeffs));
        }
        fail("unknown constructor '" + name + "'");
      }

      std::string_view text_;
      std::size_t      pos_ = 0;
    };

  }  // namespace

  RingExpr parse_ring_expr(std::string_view text) {
    return ExprParser(text).parse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void check_order(std::size_t order, Limits const& limits) {
      auto const cap = std::min(limits.ring_construct_order, ElementSet::kCapacity);
      if (order > cap) {
        throw CapacityError("ring_construct_order", cap, order);
      }
    }

    std::size_t checked_power(std::size_t base, std::size_t exp, Limits const& limits) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
        check_order(r, limits);
      }
      return r;
    }

    std::string render_poly(std::vector<int> const& c) {
      // c[i] is the coefficient of x^i
      std::string s;
      for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) {
          continue;
        }
        if (!s.empty()) {
          s += "+";
        }
        if (i == 0 || c[i] != 1) {
          s += std::to_string(c[i]);
        }
        if (i >= 1) {
          s += "x";
        }
        if (i >= 2) {
          s += "^" + std::to_string(i);
        }
      }
      return s.empty() ? "0" : s;
    }

    struct Tables {
      std::size_t              order = 0;
      std::vector<Elem>        add, mul;
      Elem                     zero = 0, one = 0;
      std::vector<std::string> names;
    };

    Tables zmod_tables(int n, Limits const& limits) {
      if (n < 1) {
        throw ConstructionError("constructor", "zmod(n) requires n >= 1");
      }
      check_order(static_cast<std::size_t>(n), limits);
      Tables t;
      t.order = static_cast<std::size_t>(n);
      t.add.resize(t.order * t.order);
      t.mul.resize(t.order * t.order);
      for (int a = 0; a < n; ++a) {
        t.names.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b) {
          t.add[a * n + b] = static_cast<Elem>((a + b) % n);
          t.mul[a * n + b] = static_cast<Elem>((a * b) % n);
        }
      }
      t.zero = 0;
      t.one  = static_cast<Elem>(1 % n);
      return t;
    }

    Tables product_tables(std::vector<RingPtr> const& factors, Limits const& limits) {
      std::size_t order = 1;
      for (auto const& f : factors) {
        order *= f->order();
        check_order(order, limits);
      }
      std::size_t const k = factors.size();
      auto decode = [&](std::size_t x) {
        std::vector<Elem> c(k);
        for (std::size_t i = k; i-- > 0;) {
          c[i] = static_cast<Elem>(x % factors[i]->order());
          x /= factors[i]->order();
        }
        return c;
      };
      auto encode = [&](std::vector<Elem> const& c) {
        std::size_t x = 0;
        for (std::size_t i = 0; i < k; ++i) {
          x = x * factors[i]->order() + c[i];
        }
        return static_cast<Elem>(x);
      };
      Tables t;
      t.order = order;
      t.add.resize(order * order);
      t.mul.resize(order * order);
      std::vector<std::vector<Elem>> coords(order);
      for (std::size_t x = 0; x < order; ++x) {
        coords[x] = decode(x);
        std::string name = "(";
        for (std::size_t i = 0; i < k; ++i) {
          name += (i ? "," : "") + factors[i]->element_name(coords[x][i]);
        }
        t.names.push_back(name + ")");
      }
      std::vector<Elem> s(k), p(k);
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
          for (std::size_t i = 0; i < k; ++i) {
            s[i] = factors[i]->add(coords[a][i], coords[b][i]);
            p[i] = factors[i]->mul(coords[a][i], coords[b][i]);
          }
          t.add[a * order + b] = encode(s);
          t.mul[a * order + b] = encode(p);
        }
      }
      std::vector<Elem> z(k), o(k);
      for (std::size_t i = 0; i < k; ++i) {
        z[i] = factors[i]->zero();
        o[i] = factors[i]->one();
      }
      t.zero = encode(z);
      t.one  = encode(o);
      return t;
    }

    Tables matrix_tables(FiniteRing const& B, int k, Limits const& limits) {
      if (k < 1) {
        throw ConstructionError("constructor", "matrix(R, k) requires k >= 1");
      }
      auto const        kk    = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
      std::size_t const order = checked_power(B.order(), kk, limits);
      std::size_t const q     = B.order();
      auto decode = [&](std::size_t x) {
        std::vector<Elem> c(kk);
        for (std::size_t i = kk; i-- > 0;) {
          c[i] = static_cast<Elem>(x % q);
          x /= q;
        }
        return c;
      };
      auto encode = [&](std::vector<Elem> const& c) {
        std::size_t x = 0;
        for (auto v : c) {
          x = x * q + v;
        }
        return static_cast<Elem>(x);
      };
      Tables t;
      t.order = order;
      t.add.resize(order * order);
      t.mul.resize(order * order);
      std::vector<std::vector<Elem>> coords(order);
      auto const                     ks = static_cast<std::size_t>(k);
      for (std::size_t x = 0; x < order; ++x) {
        coords[x]        = decode(x);
        std::string name = "[";
        for (std::size_t i = 0; i < ks; ++i) {
          name += i ? ",[" : "[";
          for (std::size_t j = 0; j < ks; ++j) {
            name += (j ? "," : "") + B.element_name(coords[x][i * ks + j]);
          }
          name += "]";
        }
        t.names.push_back(name + "]");
      }
      std::vector<Elem> s(kk), p(kk);
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
          auto const& A  = coords[a];
          auto const& Bm = coords[b];
          for (std::size_t i = 0; i < kk; ++i) {
            s[i] = B.add(A[i], Bm[i]);
          }
          for (std::size_t i = 0; i < ks; ++i) {
            for (std::size_t j = 0; j < ks; ++j) {
              Elem acc = B.zero();
              for (std::size_t l = 0; l < ks; ++l) {
                acc = B.add(acc, B.mul(A[i * ks + l], Bm[l * ks + j]));
              }
              p[i * ks + j] = acc;
            }
          }
          t.add[a * order + b] = encode(s);
          t.mul[a * order + b] = encode(p);
        }
      }
      std::vector<Elem> z(kk, B.zero()), o(kk, B.zero());
      for (std::size_t i = 0; i < ks; ++i) {
        o[i * ks + i] = B.one();
      }
      t.zero = encode(z);
      t.one  = encode(o);
      return t;
    }

    Tables poly_tables(PolyQuotientExpr const& e, Limits const& limits) {
      int const n = e.modulus;
      if (n < 1) {
        throw ConstructionError("constructor", "poly_quotient base zmod(n) requires n >= 1");
      }
      if (e.coefficients.size() < 2) {
        throw ConstructionError("constructor", "poly_quotient needs a polynomial of degree >= 1");
      }
      auto mod = [n](long v) { return static_cast<int>(((v % n) + n) % n); };
      if (mod(e.coefficients.front()) != mod(1)) {
        throw ConstructionError("constructor", "poly_quotient polynomial must be monic");
      }
      std::size_t const d     = e.coefficients.size() - 1;
      std::size_t const order = checked_power(static_cast<std::size_t>(n), d, limits);
      // low[i] = coefficient of x^i in f, for i < d
      std::vector<int> low(d);
      for (std::size_t i = 0; i < d; ++i) {
        low[i] = mod(e.coefficients[d - i]);
      }
      auto decode = [&](std::size_t x) {
        std::vector<int> c(d);
        for (std::size_t i = 0; i < d; ++i) {
          c[i] = static_cast<int>(x % static_cast<std::size_t>(n));
          x /= static_cast<std::size_t>(n);
        }
        return c;
      };
      auto encode = [&](std::vector<int> const& c) {
        std::size_t x = 0;
        for (std::size_t i = d; i-- > 0;) {
          x = x * static_cast<std::size_t>(n) + static_cast<std::size_t>(c[i]);
        }
        return static_cast<Elem>(x);
      };
      Tables t;
      t.order = order;
      t.add.resize(order * order);
      t.mul.resize(order * order);
      std::vector<std::vector<int>> coords(order);
      for (std::size_t x = 0; x < order; ++x) {
        coords[x] = decode(x);
        t.names.push_back(render_poly(coords[x]));
      }
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
          std::vector<int>  s(d);
          std::vector<long> prod(2 * d - 1, 0);
          for (std::size_t i = 0; i < d; ++i) {
            s[i] = mod(coords[a][i] + coords[b][i]);
            for (std::size_t j = 0; j < d; ++j) {
              prod[i + j] += static_cast<long>(coords[a][i]) * coords[b][j];
            }
          }
          // x^d = -(low[d-1] x^{d-1} + ... + low[0])
          for (std::size_t deg = prod.size(); deg-- > d;) {
            long const c = prod[deg] % n;
            prod[deg]    = 0;
            for (std::size_t j = 0; j < d; ++j) {
              prod[deg - d + j] -= c * low[j];
            }
          }
          std::vector<int> p(d);
          for (std::size_t i = 0; i < d; ++i) {
            p[i] = mod(prod[i]);
          }
          t.add[a * order + b] = encode(s);
          t.mul[a * order + b] = encode(p);
        }
      }
      t.zero = 0;
      t.one  = static_cast<Elem>(1 % n);
      return t;
    }

    Tables explicit_tables(TableExpr const& e, Limits const& limits) {
      std::size_t const n = e.add.size();
      if (n == 0) {
        throw ConstructionError("tables", "empty addition table");
      }
      check_order(n, limits);
      if (e.mul.size() != n) {
        throw ConstructionError("tables", "addition and multiplication tables differ in size");
      }
      Tables t;
      t.order = n;
      t.add.resize(n * n);
      t.mul.resize(n * n);
      auto in_range = [n](int v) { return v >= 0 && static_cast<std::size_t>(v) < n; };
      for (std::size_t a = 0; a < n; ++a) {
        if (e.add[a].size() != n || e.mul[a].size() != n) {
          throw ConstructionError("tables", "row " + std::to_string(a) + " is not of length "
                                                + std::to_string(n));
        }
        for (std::size_t b = 0; b < n; ++b) {
          if (!in_range(e.add[a][b]) || !in_range(e.mul[a][b])) {
            throw ConstructionError("closure", "entry (" + std::to_string(a) + ","
                                                   + std::to_string(b) + ") out of range");
          }
          t.add[a * n + b] = static_cast<Elem>(e.add[a][b]);
          t.mul[a * n + b] = static_cast<Elem>(e.mul[a][b]);
        }
        t.names.push_back(std::to_string(a));
      }
      if (!in_range(e.zero) || !in_range(e.one)) {
        throw ConstructionError("closure", "zero/one index out of range");
      }
      t.zero = static_cast<Elem>(e.zero);
      t.one  = static_cast<Elem>(e.one);
      return t;
    }

    Tables tables_for(RingExpr const& expr, Limits const& limits) {
      return std::visit(
          [&](auto const& node) -> Tables {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ZmodExpr>) {
              return zmod_tables(node.n, limits);
            } else if constexpr (std::is_same_v<T, ProductExpr>) {
              if (node.factors.empty()) {
                throw ConstructionError("constructor", "product of zero factors");
              }
              std::vector<RingPtr> factors;
              for (auto const& f : node.factors) {
                factors.push_back(build_ring(f, limits));
              }
              return product_tables(factors, limits);
            } else if constexpr (std::is_same_v<T, MatrixExpr>) {
              if (!node.base) {
                throw ConstructionError("constructor", "matrix without base ring");
              }
              return matrix_tables(*build_ring(*node.base, limits), node.k, limits);
            } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
              return poly_tables(node, limits);
            } else {
              return explicit_tables(node, limits);
            }
          },
          expr.node);
    }

    void validate(std::size_t              n,
                  std::vector<Elem> const& add,
                  std::vector<Elem> const& mul,
                  Elem                     zero,
                  Elem                     one) {
      auto A = [&](std::size_t a, std::size_t b) { return add[a * n + b]; };
      auto M = [&](std::size_t a, std::size_t b) { return mul[a * n + b]; };
      auto where = [](std::size_t a, std::size_t b, std::size_t c) {
        return "at (" + std::to_string(a) + "," + std::to_string(b) + ","
               + std::to_string(c) + ")";
      };
      for (std::size_t a = 0; a < n; ++a) {
        if (A(a, zero) != a || A(zero, a) != a) {
          throw ConstructionError("additive identity", "fails for element " + std::to_string(a));
        }
        bool has_inverse = false;
        for (std::size_t b = 0; b < n; ++b) {
          if (A(a, b) != A(b, a)) {
            throw ConstructionError("additive commutativity", where(a, b, 0));
          }
          has_inverse = has_inverse || A(a, b) == zero;
        }
        if (!has_inverse) {
          throw ConstructionError("additive inverse", "element " + std::to_string(a) + " has none");
        }
        if (M(a, one) != a || M(one, a) != a) {
          throw ConstructionError("multiplicative identity",
                                  "fails for element " + std::to_string(a));
        }
      }
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            if (A(A(a, b), c) != A(a, A(b, c))) {
              throw ConstructionError("additive associativity", where(a, b, c));
            }
            if (M(M(a, b), c) != M(a, M(b, c))) {
              throw ConstructionError("multiplicative associativity", where(a, b, c));
            }
            if (M(a, A(b, c)) != A(M(a, b), M(a, c))) {
              throw ConstructionError("left distributivity", where(a, b, c));
            }
            if (M(A(a, b), c) != A(M(a, c), M(b, c))) {
              throw ConstructionError("right distributivity", where(a, b, c));
            }
          }
        }
      }
    }

  }  // namespace

  FiniteRing FiniteRing::from_tables(std::size_t              order,
                                     std::vector<Elem>        add,
                                     std::vector<Elem>        mul,
                                     Elem                     zero,
                                     Elem                     one,
                                     std::string              label,
                                     std::vector<std::string> names,
                                     Limits const&            limits) {
    check_order(order, limits);
    if (order == 0 || add.size() != order * order || mul.size() != order * order) {
      throw ConstructionError("tables", "table sizes do not match order "
                                            + std::to_string(order));
    }
    for (auto v : add) {
      if (v >= order) {
        throw ConstructionError("closure", "addition entry out of range");
      }
    }
    for (auto v : mul) {
      if (v >= order) {
        throw ConstructionError("closure", "multiplication entry out of range");
      }
    }
    if (zero >= order || one >= order) {
      throw ConstructionError("closure", "zero/one index out of range");
    }
    validate(order, add, mul, zero, one);
    FiniteRing R;
    R.order_ = order;
    R.add_   = std::move(add);
    R.mul_   = std::move(mul);
    R.zero_  = zero;
    R.one_   = one;
    R.label_ = std::move(label);
    R.neg_.resize(order);
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        if (R.add_[a * order + b] == zero) {
          R.neg_[a] = static_cast<Elem>(b);
          break;
        }
      }
    }
    if (names.size() != order) {
      names.clear();
      for (std::size_t a = 0; a < order; ++a) {
        names.push_back("#" + std::to_string(a));
      }
    }
    R.names_ = std::move(names);
    R.basis_ = decompose_abelian_group(order, R.add_, zero);
    return R;
  }

  bool FiniteRing::is_commutative() const noexcept {
    for (std::size_t a = 0; a < order_; ++a) {
      for (std::size_t b = a + 1; b < order_; ++b) {
        if (mul_[a * order_ + b] != mul_[b * order_ + a]) {
          return false;
        }
      }
    }
    return true;
  }

  RingPtr build_ring(RingExpr const& expr, Limits const& limits) {
    auto t = tables_for(expr, limits);
    auto R = FiniteRing::from_tables(t.order,
                                     std::move(t.add),
                                     std::move(t.mul),
                                     t.zero,
                                     t.one,
                                     to_string(expr),
                                     std::move(t.names),
                                     limits);
    R.expr_ = expr;
    return std::make_shared<FiniteRing const>(std::move(R));
  }

  ////////////////////////////////////////////////////////////////////////
  // Ideals
  ////////////////////////////////////////////////////////////////////////

  namespace {

    ElementSet subgroup_sum(FiniteRing const& R, ElementSet const& a, ElementSet const& b) {
      ElementSet out;
      a.for_each([&](Elem x) { b.for_each([&](Elem y) { out.insert(R.add(x, y)); }); });
      return out;
    }

    ElementSet principal_left_ideal(FiniteRing const& R, Elem a) {
      ElementSet s;
      for (std::size_t r = 0; r < R.order(); ++r) {
        s.insert(R.mul(static_cast<Elem>(r), a));
      }
      return s;
    }

    std::vector<ElementSet> principal_right_ideals(FiniteRing const& R) {
      std::vector<ElementSet> out;
      out.reserve(R.order());
      for (std::size_t a = 0; a < R.order(); ++a) {
        out.push_back(principal_right_ideal(R, static_cast<Elem>(a)));
      }
      return out;
    }

    void check_decider_order(FiniteRing const& R, Limits const& limits) {
      if (R.order() > limits.ring_decider_order) {
        throw CapacityError("ring_decider_order", limits.ring_decider_order, R.order());
      }
    }

    std::string describe(FiniteRing const& R, ElementSet const& s) {
      std::string out = "{";
      bool        first = true;
      s.for_each([&](Elem e) {
        out += (first ? "" : ",") + R.element_name(e);
        first = false;
      });
      return out + "}";
    }

  }  // namespace

  ElementSet principal_right_ideal(FiniteRing const& R, Elem a) {
    ElementSet s;
    for (std::size_t r = 0; r < R.order(); ++r) {
      s.insert(R.mul(a, static_cast<Elem>(r)));
    }
    return s;
  }

  RightIdeal right_ideal_closure(FiniteRing const& R, std::span<Elem const> gens) {
    RightIdeal I;
    I.members = ElementSet::singleton(R.zero());
    for (auto g : gens) {
      if (!I.members.contains(g)) {
        I.members = subgroup_sum(R, I.members, principal_right_ideal(R, g));
      }
      I.generators.push_back(g);
    }
    return I;
  }

  LeftIdeal left_ideal_closure(FiniteRing const& R, std::span<Elem const> gens) {
    LeftIdeal I;
    I.members = ElementSet::singleton(R.zero());
    for (auto g : gens) {
      if (!I.members.contains(g)) {
        I.members = subgroup_sum(R, I.members, principal_left_ideal(R, g));
      }
      I.generators.push_back(g);
    }
    return I;
  }

  bool is_right_ideal(FiniteRing const& R, ElementSet const& s) {
    if (!s.contains(R.zero())) {
      return false;
    }
    bool ok = true;
    s.for_each([&](Elem x) {
      s.for_each([&](Elem y) { ok = ok && s.contains(R.add(x, y)); });
      for (std::size_t r = 0; r < R.order() && ok; ++r) {
        ok = s.contains(R.mul(x, static_cast<Elem>(r)));
      }
    });
    return ok;
  }

  bool is_two_sided_ideal(FiniteRing const& R, ElementSet const& s) {
    if (!is_right_ideal(R, s)) {
      return false;
    }
    bool ok = true;
    s.for_each([&](Elem x) {
      for (std::size_t r = 0; r < R.order() && ok; ++r) {
        ok = s.contains(R.mul(static_cast<Elem>(r), x));
      }
    });
    return ok;
  }

  namespace {

    // Greedy generators (ascending) for a set already known to be closed.
    std::vector<Elem> greedy_right_generators(FiniteRing const& R, ElementSet const& s) {
      std::vector<Elem> gens;
      ElementSet        span = ElementSet::singleton(R.zero());
      s.for_each([&](Elem x) {
        if (!span.contains(x)) {
          span = subgroup_sum(R, span, principal_right_ideal(R, x));
          gens.push_back(x);
        }
      });
      return gens;
    }

  }  // namespace

  RightIdeal make_right_ideal(FiniteRing const& R, ElementSet const& members) {
    if (!is_right_ideal(R, members)) {
      throw std::invalid_argument("make_right_ideal: set is not a right ideal");
    }
    return RightIdeal{members, greedy_right_generators(R, members)};
  }

  RightIdeal right_annihilator(FiniteRing const& R, std::span<Elem const> X) {
    RightIdeal I;
    for (std::size_t r = 0; r < R.order(); ++r) {
      bool killed = true;
      for (auto x : X) {
        if (R.mul(x, static_cast<Elem>(r)) != R.zero()) {
          killed = false;
          break;
        }
      }
      if (killed) {
        I.members.insert(static_cast<Elem>(r));
      }
    }
    if (!is_right_ideal(R, I.members)) {
      throw std::logic_error("right_annihilator: result not a right ideal");
    }
    I.generators = greedy_right_generators(R, I.members);
    return I;
  }

  LeftIdeal left_annihilator(FiniteRing const& R, std::span<Elem const> X) {
    LeftIdeal I;
    for (std::size_t r = 0; r < R.order(); ++r) {
      bool killed = true;
      for (auto x : X) {
        if (R.mul(static_cast<Elem>(r), x) != R.zero()) {
          killed = false;
          break;
        }
      }
      if (killed) {
        I.members.insert(static_cast<Elem>(r));
      }
    }
    ElementSet span = ElementSet::singleton(R.zero());
    I.members.for_each([&](Elem x) {
      if (!span.contains(x)) {
        span = subgroup_sum(R, span, principal_left_ideal(R, x));
        I.generators.push_back(x);
      }
    });
    if (span != I.members) {
      throw std::logic_error("left_annihilator: result not a left ideal");
    }
    return I;
  }

  std::vector<Elem> idempotents(FiniteRing const& R) {
    std::vector<Elem> out;
    for (std::size_t e = 0; e < R.order(); ++e) {
      if (R.mul(static_cast<Elem>(e), static_cast<Elem>(e)) == e) {
        out.push_back(static_cast<Elem>(e));
      }
    }
    return out;
  }

  std::vector<RightIdeal> right_ideals(FiniteRing const& R, Limits const& limits) {
    check_decider_order(R, limits);
    auto const principal = principal_right_ideals(R);
    std::vector<RightIdeal>                        found;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    RightIdeal zero;
    zero.members = ElementSet::singleton(R.zero());
    found.push_back(zero);
    seen.insert(zero.members);
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t a = 0; a < R.order(); ++a) {
        if (found[i].members.contains(static_cast<Elem>(a))) {
          continue;
        }
        auto next = subgroup_sum(R, found[i].members, principal[a]);
        if (seen.insert(next).second) {
          if (found.size() >= limits.ideal_count) {
            throw CapacityError("ideal_count", limits.ideal_count, found.size() + 1);
          }
          RightIdeal J;
          J.members    = next;
          J.generators = found[i].generators;
          J.generators.push_back(static_cast<Elem>(a));
          found.push_back(std::move(J));
        }
      }
    }
    std::sort(found.begin(), found.end(), [](RightIdeal const& x, RightIdeal const& y) {
      return size_then_bits_less(x.members, y.members);
    });
    return found;
  }

  std::vector<AnnihilatorIdeal> right_annihilator_lattice(FiniteRing const& R) {
    std::vector<AnnihilatorIdeal>                  out;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (std::size_t a = 0; a < R.order(); ++a) {
      Elem const x = static_cast<Elem>(a);
      auto       I = right_annihilator(R, std::span<Elem const>(&x, 1));
      if (seen.insert(I.members).second) {
        out.push_back({std::move(I), {x}});
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        auto meet = out[i].ideal.members & out[j].ideal.members;
        if (seen.insert(meet).second) {
          std::vector<Elem> subset = out[j].subset;
          subset.insert(subset.end(), out[i].subset.begin(), out[i].subset.end());
          std::sort(subset.begin(), subset.end());
          subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
          auto I = right_annihilator(R, subset);
          if (I.members != meet) {
            throw std::logic_error("right_annihilator_lattice: intersection mismatch");
          }
          out.push_back({std::move(I), std::move(subset)});
        }
      }
    }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
      return size_then_bits_less(x.ideal.members, y.ideal.members);
    });
    return out;
  }

  bool is_essential_right_ideal(FiniteRing const& R, ElementSet const& I) {
    for (std::size_t x = 0; x < R.order(); ++x) {
      if (x == R.zero()) {
        continue;
      }
      bool meets = false;
      for (std::size_t r = 0; r < R.order() && !meets; ++r) {
        Elem const y = R.mul(static_cast<Elem>(x), static_cast<Elem>(r));
        meets        = y != R.zero() && I.contains(y);
      }
      if (!meets) {
        return false;
      }
    }
    return true;
  }

  RightIdeal right_singular_ideal(FiniteRing const& R) {
    ElementSet z;
    for (std::size_t a = 0; a < R.order(); ++a) {
      Elem const x = static_cast<Elem>(a);
      if (is_essential_right_ideal(R, right_annihilator(R, std::span<Elem const>(&x, 1)).members)) {
        z.insert(x);
      }
    }
    if (!is_right_ideal(R, z)) {
      throw std::logic_error("right_singular_ideal: not a right ideal");
    }
    return RightIdeal{z, greedy_right_generators(R, z)};
  }

  ElementSet units(FiniteRing const& R) {
    ElementSet u;
    for (std::size_t a = 0; a < R.order(); ++a) {
      for (std::size_t b = 0; b < R.order(); ++b) {
        if (R.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == R.one()) {
          u.insert(static_cast<Elem>(a));
          break;
        }
      }
    }
    return u;
  }

  RightIdeal jacobson_radical(FiniteRing const& R) {
    auto const U = units(R);
    ElementSet J;
    for (std::size_t x = 0; x < R.order(); ++x) {
      bool in = true;
      for (std::size_t r = 0; r < R.order() && in; ++r) {
        in = U.contains(R.sub(R.one(), R.mul(static_cast<Elem>(r), static_cast<Elem>(x))));
      }
      if (in) {
        J.insert(static_cast<Elem>(x));
      }
    }
    if (!is_two_sided_ideal(R, J)) {
      throw std::logic_error("jacobson_radical: result is not a two-sided ideal");
    }
    return RightIdeal{J, greedy_right_generators(R, J)};
  }

  RingPtr quotient_ring(FiniteRing const& R, ElementSet const& ideal) {
    if (!is_two_sided_ideal(R, ideal)) {
      throw ConstructionError("quotient", "ideal is not two-sided");
    }
    std::size_t const n = R.order();
    std::vector<Elem> rep(n);
    for (std::size_t x = 0; x < n; ++x) {
      Elem best = static_cast<Elem>(x);
      ideal.for_each([&](Elem i) { best = std::min(best, R.add(static_cast<Elem>(x), i)); });
      rep[x] = best;
    }
    std::vector<Elem> reps;
    for (std::size_t x = 0; x < n; ++x) {
      if (rep[x] == x) {
        reps.push_back(static_cast<Elem>(x));
      }
    }
    std::vector<Elem> index(n, 0);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      index[reps[i]] = static_cast<Elem>(i);
    }
    std::size_t const        m = reps.size();
    std::vector<Elem>        add(m * m), mul(m * m);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) {
      names.push_back("[" + R.element_name(reps[i]) + "]");
      for (std::size_t j = 0; j < m; ++j) {
        add[i * m + j] = index[rep[R.add(reps[i], reps[j])]];
        mul[i * m + j] = index[rep[R.mul(reps[i], reps[j])]];
      }
    }
    return std::make_shared<FiniteRing const>(
        FiniteRing::from_tables(m,
                                std::move(add),
                                std::move(mul),
                                index[rep[R.zero()]],
                                index[rep[R.one()]],
                                "quotient(" + R.label() + "," + describe(R, ideal) + ")",
                                std::move(names)));
  }

  std::optional<std::vector<Elem>> find_isomorphism(FiniteRing const& A,
                                                    FiniteRing const& B,
                                                    Limits const&     limits) {
    if (A.order() > limits.isomorphism_order || B.order() > limits.isomorphism_order) {
      throw CapacityError("isomorphism_order",
                          limits.isomorphism_order,
                          std::max(A.order(), B.order()));
    }
    if (A.order() != B.order()) {
      return std::nullopt;
    }
    std::size_t const n        = A.order();
    constexpr int     kUnset   = -1;
    auto const        orders_a = element_orders(n, A.add_table(), A.zero());
    auto const        orders_b = element_orders(n, B.add_table(), B.zero());

    using Map = std::vector<int>;
    // Assign a -> b and close under sums and products; false on conflict.
    auto propagate = [&](Map& f, std::vector<char>& used, std::size_t a0, std::size_t b0) {
      std::vector<std::pair<std::size_t, std::size_t>> work{{a0, b0}};
      while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        if (f[a] != kUnset) {
          if (static_cast<std::size_t>(f[a]) != b) {
            return false;
          }
          continue;
        }
        if (used[b] || orders_a[a] != orders_b[b]) {
          return false;
        }
        f[a]    = static_cast<int>(b);
        used[b] = 1;
        for (std::size_t c = 0; c < n; ++c) {
          if (f[c] == kUnset) {
            continue;
          }
          auto const fc = static_cast<Elem>(f[c]);
          auto const fa = static_cast<Elem>(b);
          work.emplace_back(A.add(static_cast<Elem>(a), static_cast<Elem>(c)), B.add(fa, fc));
          work.emplace_back(A.mul(static_cast<Elem>(a), static_cast<Elem>(c)), B.mul(fa, fc));
          work.emplace_back(A.mul(static_cast<Elem>(c), static_cast<Elem>(a)), B.mul(fc, fa));
        }
      }
      return true;
    };

    std::function<std::optional<Map>(Map, std::vector<char>)> search =
        [&](Map f, std::vector<char> used) -> std::optional<Map> {
      auto it = std::find(f.begin(), f.end(), kUnset);
      if (it == f.end()) {
        return f;
      }
      auto const a = static_cast<std::size_t>(it - f.begin());
      for (std::size_t b = 0; b < n; ++b) {
        if (used[b] || orders_a[a] != orders_b[b]) {
          continue;
        }
        Map               g = f;
        std::vector<char> u = used;
        if (propagate(g, u, a, b)) {
          if (auto r = search(std::move(g), std::move(u))) {
            return r;
          }
        }
      }
      return std::nullopt;
    };

    Map               f(n, kUnset);
    std::vector<char> used(n, 0);
    if (!propagate(f, used, A.zero(), B.zero()) || !propagate(f, used, A.one(), B.one())) {
      return std::nullopt;
    }
    auto found = search(std::move(f), std::move(used));
    if (!found) {
      return std::nullopt;
    }
    std::vector<Elem> phi(n);
    for (std::size_t a = 0; a < n; ++a) {
      phi[a] = static_cast<Elem>((*found)[a]);
    }
    return phi;
  }

  ////////////////////////////////////////////////////////////////////////
  // Deciders
  ////////////////////////////////////////////////////////////////////////

  namespace {

    constexpr std::array kRingProperties{RingProperty::vn_regular,
                                         RingProperty::right_rickart,
                                         RingProperty::baer,
                                         RingProperty::right_nonsingular,
                                         RingProperty::right_semihereditary,
                                         RingProperty::reduced,
                                         RingProperty::domain};

    RingVerdict holds(RingProperty p) {
      return RingVerdict{p, Status::holds, {}};
    }

    RingVerdict fails(RingProperty p, RingWitness w) {
      return RingVerdict{p, Status::fails, std::move(w)};
    }

    RingVerdict decide_vn_regular(FiniteRing const& R) {
      for (std::size_t a = 0; a < R.order(); ++a) {
        bool found = false;
        for (std::size_t x = 0; x < R.order() && !found; ++x) {
          found = R.mul(R.mul(static_cast<Elem>(a), static_cast<Elem>(x)), static_cast<Elem>(a))
                  == a;
        }
        if (!found) {
          RingWitness w;
          w.elements    = {static_cast<Elem>(a)};
          w.description = "no x with a*x*a = a for a = " + R.element_name(static_cast<Elem>(a));
          return fails(RingProperty::vn_regular, std::move(w));
        }
      }
      return holds(RingProperty::vn_regular);
    }

    // eR for every idempotent e, in ascending order of e.
    std::vector<std::pair<Elem, ElementSet>> idempotent_ideals(FiniteRing const& R) {
      std::vector<std::pair<Elem, ElementSet>> out;
      for (auto e : idempotents(R)) {
        out.emplace_back(e, principal_right_ideal(R, e));
      }
      return out;
    }

    std::optional<Elem> generating_idempotent(
        std::vector<std::pair<Elem, ElementSet>> const& ideals, ElementSet const& I) {
      for (auto const& [e, eR] : ideals) {
        if (eR == I) {
          return e;
        }
      }
      return std::nullopt;
    }

    RingVerdict decide_right_rickart(FiniteRing const& R) {
      auto const  ideals = idempotent_ideals(R);
      RingVerdict v      = holds(RingProperty::right_rickart);
      for (std::size_t a = 0; a < R.order(); ++a) {
        Elem const x   = static_cast<Elem>(a);
        auto       ann = right_annihilator(R, std::span<Elem const>(&x, 1));
        auto       e   = generating_idempotent(ideals, ann.members);
        if (!e) {
          RingWitness w;
          w.elements    = {x};
          w.description = "r(" + R.element_name(x) + ") = " + describe(R, ann.members)
                          + " is not eR for any idempotent e";
          w.ideal       = std::move(ann);
          return fails(RingProperty::right_rickart, std::move(w));
        }
        v.witness.certificate.emplace_back(x, *e);
      }
      return v;
    }

    RingVerdict decide_baer(FiniteRing const& R) {
      auto const  ideals = idempotent_ideals(R);
      RingVerdict v      = holds(RingProperty::baer);
      auto        lattice = right_annihilator_lattice(R);
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        auto e = generating_idempotent(ideals, lattice[i].ideal.members);
        if (!e) {
          RingWitness w;
          w.elements    = lattice[i].subset;
          w.description = "r(X) = " + describe(R, lattice[i].ideal.members)
                          + " is not eR for any idempotent e";
          w.ideal       = std::move(lattice[i].ideal);
          return fails(RingProperty::baer, std::move(w));
        }
        v.witness.certificate.emplace_back(static_cast<Elem>(i), *e);
      }
      return v;
    }

    RingVerdict decide_right_nonsingular(FiniteRing const& R) {
      auto Z = right_singular_ideal(R);
      if (Z.size() == 1) {
        return holds(RingProperty::right_nonsingular);
      }
      Elem a = R.zero();
      Z.members.for_each([&](Elem x) {
        if (a == R.zero() && x != R.zero()) {
          a = x;
        }
      });
      RingWitness w;
      w.elements    = {a};
      w.ideal       = right_annihilator(R, std::span<Elem const>(&a, 1));
      w.description = R.element_name(a) + " lies in Z(R_R): r(" + R.element_name(a)
                      + ") = " + describe(R, w.ideal->members) + " is essential";
      return fails(RingProperty::right_nonsingular, std::move(w));
    }

    // Smallest generating set we can find cheaply: one generator if the
    // ideal is principal, two if some pair works, greedy otherwise.
    std::vector<Elem> small_generating_set(FiniteRing const&              R,
                                           ElementSet const&              I,
                                           std::vector<ElementSet> const& principal) {
      auto const members = I.to_vector();
      for (auto a : members) {
        if (principal[a] == I) {
          return {a};
        }
      }
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if (subgroup_sum(R, principal[members[i]], principal[members[j]]) == I) {
            return {members[i], members[j]};
          }
        }
      }
      return greedy_right_generators(R, I);
    }

    // Decides whether R^k -> I, e_i -> g_i splits, via the dual basis
    // criterion: f_1..f_k in Hom(I, R) with sum_j g_j f_j(g_i) = g_i.
    bool surjection_splits(FiniteRing const& R, std::vector<Elem> const& g, Limits const& limits) {
      std::size_t const k = g.size();
      std::size_t const n = R.order();
      if (k == 0) {
        return true;
      }
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < k; ++i) {
        tuples *= n;
        if (tuples > limits.split_search) {
          throw CapacityError("split_search", limits.split_search, tuples);
        }
      }
      // Relations r with sum g_i r_i = 0, bucketed by last nonzero slot.
      std::vector<std::vector<std::vector<Elem>>> relations(k);
      std::vector<Elem>                           r(k, R.zero());
      for (std::size_t t = 0; t < tuples; ++t) {
        std::size_t x = t;
        for (std::size_t i = k; i-- > 0;) {
          r[i] = static_cast<Elem>(x % n);
          x /= n;
        }
        Elem acc = R.zero();
        for (std::size_t i = 0; i < k; ++i) {
          acc = R.add(acc, R.mul(g[i], r[i]));
        }
        if (acc != R.zero()) {
          continue;
        }
        std::size_t last = k;
        for (std::size_t i = k; i-- > 0;) {
          if (r[i] != R.zero()) {
            last = i;
            break;
          }
        }
        if (last < k) {
          relations[last].push_back(r);
        }
      }
      // Hom(I, R) as tuples u with u_i = f(g_i).
      std::vector<std::vector<Elem>>          homs;
      std::vector<Elem>                       u(k, R.zero());
      std::function<void(std::size_t)>        extend = [&](std::size_t i) {
        if (i == k) {
          homs.push_back(u);
          if (homs.size() > limits.split_search) {
            throw CapacityError("split_search", limits.split_search, homs.size());
          }
          return;
        }
        for (std::size_t c = 0; c < n; ++c) {
          u[i]    = static_cast<Elem>(c);
          bool ok = true;
          for (auto const& rel : relations[i]) {
            Elem acc = R.zero();
            for (std::size_t j = 0; j <= i; ++j) {
              acc = R.add(acc, R.mul(u[j], rel[j]));
            }
            if (acc != R.zero()) {
              ok = false;
              break;
            }
          }
          if (ok) {
            extend(i + 1);
          }
        }
      };
      extend(0);
      std::size_t combos = 1;
      for (std::size_t i = 0; i < k; ++i) {
        combos *= homs.size();
        if (combos > limits.split_search) {
          throw CapacityError("split_search", limits.split_search, combos);
        }
      }
      // sums[i] accumulates sum_j g_j f_j(g_i)
      std::vector<std::size_t>                           pick(k, 0);
      std::function<bool(std::size_t, std::vector<Elem>)> choose =
          [&](std::size_t j, std::vector<Elem> sums) -> bool {
        if (j == k) {
          for (std::size_t i = 0; i < k; ++i) {
            if (sums[i] != g[i]) {
              return false;
            }
          }
          return true;
        }
        for (auto const& f : homs) {
          std::vector<Elem> next = sums;
          for (std::size_t i = 0; i < k; ++i) {
            next[i] = R.add(next[i], R.mul(g[j], f[i]));
          }
          if (choose(j + 1, std::move(next))) {
            return true;
          }
        }
        return false;
      };
      return choose(0, std::vector<Elem>(k, R.zero()));
    }

    RingVerdict decide_right_semihereditary(FiniteRing const& R, Limits const& limits) {
      auto const principal = principal_right_ideals(R);
      for (auto const& I : right_ideals(R, limits)) {
        auto gens = small_generating_set(R, I.members, principal);
        if (!surjection_splits(R, gens, limits)) {
          RingWitness w;
          w.elements    = gens;
          w.description = "right ideal " + describe(R, I.members)
                          + " is not projective: its free cover on "
                          + std::to_string(gens.size()) + " generator(s) does not split";
          w.ideal       = RightIdeal{I.members, gens};
          return fails(RingProperty::right_semihereditary, std::move(w));
        }
      }
      return holds(RingProperty::right_semihereditary);
    }

    RingVerdict decide_reduced(FiniteRing const& R) {
      for (std::size_t a = 0; a < R.order(); ++a) {
        if (a == R.zero()) {
          continue;
        }
        Elem p = static_cast<Elem>(a);
        for (std::size_t k = 1; k <= R.order(); ++k) {
          if (p == R.zero()) {
            RingWitness w;
            w.elements    = {static_cast<Elem>(a)};
            w.description = R.element_name(static_cast<Elem>(a)) + " is nilpotent of index "
                            + std::to_string(k);
            return fails(RingProperty::reduced, std::move(w));
          }
          p = R.mul(p, static_cast<Elem>(a));
        }
      }
      return holds(RingProperty::reduced);
    }

    RingVerdict decide_domain(FiniteRing const& R) {
      if (R.order() == 1) {
        RingWitness w;
        w.description = "the zero ring is not a domain";
        return fails(RingProperty::domain, std::move(w));
      }
      for (std::size_t a = 0; a < R.order(); ++a) {
        for (std::size_t b = 0; b < R.order(); ++b) {
          if (a != R.zero() && b != R.zero()
              && R.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == R.zero()) {
            RingWitness w;
            w.elements    = {static_cast<Elem>(a), static_cast<Elem>(b)};
            w.description = R.element_name(static_cast<Elem>(a)) + " * "
                            + R.element_name(static_cast<Elem>(b)) + " = 0";
            return fails(RingProperty::domain, std::move(w));
          }
        }
      }
      return holds(RingProperty::domain);
    }

  }  // namespace

  std::string_view to_string(RingProperty p) noexcept {
    switch (p) {
      case RingProperty::vn_regular:
        return "vn_regular";
      case RingProperty::right_rickart:
        return "right_rickart";
      case RingProperty::baer:
        return "baer";
      case RingProperty::right_nonsingular:
        return "right_nonsingular";
      case RingProperty::right_semihereditary:
        return "right_semihereditary";
      case RingProperty::reduced:
        return "reduced";
      case RingProperty::domain:
        return "domain";
    }
    return "?";
  }

  std::optional<RingProperty> ring_property_from_string(std::string_view s) {
    for (auto p : kRingProperties) {
      if (to_string(p) == s) {
        return p;
      }
    }
    return std::nullopt;
  }

  std::span<RingProperty const> all_ring_properties() noexcept {
    return kRingProperties;
  }

  RingVerdict decide_ring_property(FiniteRing const& R, RingProperty p, Limits const& limits) {
    try {
      check_decider_order(R, limits);
      switch (p) {
        case RingProperty::vn_regular:
          return decide_vn_regular(R);
        case RingProperty::right_rickart:
          return decide_right_rickart(R);
        case RingProperty::baer:
          return decide_baer(R);
        case RingProperty::right_nonsingular:
          return decide_right_nonsingular(R);
        case RingProperty::right_semihereditary:
          return decide_right_semihereditary(R, limits);
        case RingProperty::reduced:
          return decide_reduced(R);
        case RingProperty::domain:
          return decide_domain(R);
      }
    } catch (CapacityError const& e) {
      RingVerdict v{p, Status::unsupported, {}};
      v.witness.description = e.what();
      return v;
    }
    throw std::logic_error("decide_ring_property: unknown property");
  }

}  // namespace rickart
