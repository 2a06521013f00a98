#include "rickartlab/finmod.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

#include "rickartlab/abelian_group.hpp"
#include "rickartlab/errors.hpp"

namespace rickart {

  namespace detail {

    struct ModuleData {
      RingPtr                       ring;
      std::vector<int>              orders;
      std::size_t                   n = 1;
      std::vector<Elem>             add;
      std::vector<Elem>             neg;
      std::vector<Elem>             act;  // act[m * |R| + r]
      std::vector<std::vector<int>> coords;
      std::vector<Elem>             gens;
      std::string                   label;
      Limits                        limits;
      std::vector<FiniteModule>     factors;
      std::vector<Elem>             ring_of;
      std::vector<Elem>             module_of;

      mutable std::once_flag                 sub_once;
      mutable std::vector<Submodule>         subs;
      mutable std::once_flag                 end_once;
      mutable std::vector<std::vector<Elem>> ends;
      mutable std::once_flag                 summand_once;
      mutable std::vector<ElementSet>        summands;

      static FiniteModule wrap(std::shared_ptr<ModuleData const> d) {
        return FiniteModule(std::move(d));
      }
    };

  }  // namespace detail

  namespace {

    using detail::ModuleData;

    std::size_t encode(std::vector<int> const& orders, std::span<int const> c) {
      std::size_t x = 0;
      for (std::size_t i = 0; i < orders.size(); ++i) {
        int const d = orders[i];
        x           = x * static_cast<std::size_t>(d)
            + static_cast<std::size_t>(((c[i] % d) + d) % d);
      }
      return x;
    }

    // Fills the structural tables shared by every constructor.
    std::shared_ptr<ModuleData> skeleton(RingPtr          ring,
                                         std::vector<int> orders,
                                         std::string      label,
                                         Limits const&    limits) {
      if (!ring) {
        throw std::invalid_argument("FiniteModule: null ring");
      }
      std::size_t n   = 1;
      auto const  cap = std::min(limits.module_order, ElementSet::kCapacity);
      for (int d : orders) {
        if (d < 2) {
          throw ConstructionError("cyclic orders", "every cyclic order must be >= 2");
        }
        n *= static_cast<std::size_t>(d);
        if (n > cap) {
          throw CapacityError("module_order", cap, n);
        }
      }
      auto data    = std::make_shared<ModuleData>();
      data->ring   = std::move(ring);
      data->orders = std::move(orders);
      data->n      = n;
      data->label  = std::move(label);
      data->limits = limits;
      std::size_t const k = data->orders.size();
      data->coords.resize(n, std::vector<int>(k, 0));
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t y = x;
        for (std::size_t i = k; i-- > 0;) {
          data->coords[x][i] = static_cast<int>(y % static_cast<std::size_t>(data->orders[i]));
          y /= static_cast<std::size_t>(data->orders[i]);
        }
      }
      data->add.resize(n * n);
      data->neg.resize(n);
      std::vector<int> c(k);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t i = 0; i < k; ++i) {
            c[i] = data->coords[a][i] + data->coords[b][i];
          }
          data->add[a * n + b] = static_cast<Elem>(encode(data->orders, c));
        }
        for (std::size_t i = 0; i < k; ++i) {
          c[i] = -data->coords[a][i];
        }
        data->neg[a] = static_cast<Elem>(encode(data->orders, c));
      }
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<int> e(k, 0);
        e[i] = 1;
        data->gens.push_back(static_cast<Elem>(encode(data->orders, e)));
      }
      return data;
    }

    // Sum of coordinate-weighted elements: sum_i x_i * images[i].
    Elem combine(ModuleData const& d, std::vector<int> const& x, std::span<Elem const> images) {
      Elem acc = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (int t = 0; t < x[i]; ++t) {
          acc = d.add[acc * d.n + images[i]];
        }
      }
      return acc;
    }

    Elem multiple_of(ModuleData const& d, Elem m, long k) {
      std::vector<int> c = d.coords[m];
      for (std::size_t i = 0; i < c.size(); ++i) {
        long const dd = d.orders[i];
        c[i]          = static_cast<int>(((c[i] * (k % dd)) % dd + dd) % dd);
      }
      return static_cast<Elem>(encode(d.orders, c));
    }

    // Completes the action from generator images (module indices) and
    // verifies every module axiom exhaustively.
    FiniteModule finish(std::shared_ptr<ModuleData>          data,
                        std::vector<std::vector<Elem>> const& gen_images) {
      auto const&       R  = *data->ring;
      std::size_t const nr = R.order();
      std::size_t const n  = data->n;
      std::size_t const k  = data->orders.size();
      if (gen_images.size() != nr) {
        throw ConstructionError("action", "action must list every ring element");
      }
      for (std::size_t r = 0; r < nr; ++r) {
        if (gen_images[r].size() != k) {
          throw ConstructionError("action", "ring element " + std::to_string(r)
                                                + " does not give one image per generator");
        }
        for (std::size_t i = 0; i < k; ++i) {
          if (gen_images[r][i] >= n) {
            throw ConstructionError("action", "generator image out of range");
          }
          if (multiple_of(*data, gen_images[r][i], data->orders[i]) != 0) {
            throw ConstructionError("action well-definedness",
                                    "image of generator " + std::to_string(i)
                                        + " under ring element " + R.element_name(static_cast<Elem>(r))
                                        + " has order not dividing "
                                        + std::to_string(data->orders[i]));
          }
        }
      }
      data->act.resize(n * nr);
      for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t r = 0; r < nr; ++r) {
          data->act[m * nr + r] = combine(*data, data->coords[m], gen_images[r]);
        }
      }
      auto act = [&](std::size_t m, std::size_t r) { return data->act[m * nr + r]; };
      for (std::size_t m = 0; m < n; ++m) {
        if (act(m, R.one()) != m) {
          throw ConstructionError("unital action", "m * 1 != m for m = " + std::to_string(m));
        }
        for (std::size_t a = 0; a < nr; ++a) {
          for (std::size_t b = 0; b < nr; ++b) {
            auto const ma = act(m, a);
            if (act(m, R.add(static_cast<Elem>(a), static_cast<Elem>(b)))
                != data->add[ma * n + act(m, b)]) {
              throw ConstructionError("action additivity in the ring",
                                      "m(a+b) != ma + mb for m = " + std::to_string(m));
            }
            if (act(m, R.mul(static_cast<Elem>(a), static_cast<Elem>(b))) != act(ma, b)) {
              throw ConstructionError("action associativity",
                                      "m(ab) != (ma)b for m = " + std::to_string(m));
            }
          }
        }
      }
      for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t m2 = 0; m2 < n; ++m2) {
          for (std::size_t r = 0; r < nr; ++r) {
            if (act(data->add[m * n + m2], r) != data->add[act(m, r) * n + act(m2, r)]) {
              throw ConstructionError("action additivity in the module",
                                      "(m+m')r != mr + m'r");
            }
          }
        }
      }
      return ModuleData::wrap(std::move(data));
    }

    std::vector<std::vector<Elem>> images_from_coordinates(
        ModuleData const& d, std::vector<FiniteModule::GeneratorImages> const& action) {
      std::vector<std::vector<Elem>> out;
      out.reserve(action.size());
      for (auto const& per_r : action) {
        std::vector<Elem> row;
        for (auto const& c : per_r) {
          if (c.size() != d.orders.size()) {
            throw ConstructionError("action", "coordinate tuple has wrong length");
          }
          row.push_back(static_cast<Elem>(encode(d.orders, c)));
        }
        out.push_back(std::move(row));
      }
      return out;
    }

    bool rings_match(FiniteRing const& a, FiniteRing const& b) {
      if (&a == &b) {
        return true;
      }
      return a.order() == b.order() && a.zero() == b.zero() && a.one() == b.one()
             && std::ranges::equal(a.add_table(), b.add_table())
             && std::ranges::equal(a.mul_table(), b.mul_table());
    }

    struct LocalModule {
      FiniteModule      module;
      std::vector<Elem> local_of_index;
      std::vector<Elem> index_of_local;
    };

    // Presents the group on local elements 0..n-1 (0 = zero) with the given
    // addition table and ring action as a FiniteModule.
    LocalModule module_from_group(RingPtr const&                          ring,
                                  std::size_t                             n,
                                  std::vector<Elem> const&                add_local,
                                  std::function<Elem(Elem, Elem)> const& act_local,
                                  std::string                             label,
                                  Limits const&                           limits) {
      auto const dec  = decompose_abelian_group(n, add_local, 0);
      auto       data = skeleton(ring, dec.orders, std::move(label), limits);
      if (data->n != n) {
        throw std::logic_error("module_from_group: decomposition size mismatch");
      }
      std::vector<Elem> local_of_index(n), index_of_local(n);
      for (std::size_t x = 0; x < n; ++x) {
        Elem acc = 0;
        for (std::size_t i = 0; i < dec.generators.size(); ++i) {
          for (int t = 0; t < data->coords[x][i]; ++t) {
            acc = add_local[acc * n + dec.generators[i]];
          }
        }
        local_of_index[x] = acc;
      }
      std::vector<char> hit(n, 0);
      for (std::size_t x = 0; x < n; ++x) {
        if (hit[local_of_index[x]]) {
          throw std::logic_error("module_from_group: basis is not a bijection");
        }
        hit[local_of_index[x]]            = 1;
        index_of_local[local_of_index[x]] = static_cast<Elem>(x);
      }
      std::size_t const              nr = ring->order();
      std::vector<std::vector<Elem>> gen_images(nr);
      for (std::size_t r = 0; r < nr; ++r) {
        for (auto g : dec.generators) {
          gen_images[r].push_back(index_of_local[act_local(g, static_cast<Elem>(r))]);
        }
      }
      return LocalModule{finish(std::move(data), gen_images),
                         std::move(local_of_index),
                         std::move(index_of_local)};
    }

    void check_hom_count(Limits const& limits, std::size_t count) {
      if (count > limits.hom_count) {
        throw CapacityError("hom_count", limits.hom_count, count);
      }
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // FiniteModule
  ////////////////////////////////////////////////////////////////////////

  FiniteModule FiniteModule::create(RingPtr                      ring,
                                    std::vector<int>             cyclic_orders,
                                    std::vector<GeneratorImages> action,
                                    std::string                  label,
                                    Limits const&                limits) {
    auto data   = skeleton(std::move(ring), std::move(cyclic_orders), std::move(label), limits);
    auto images = images_from_coordinates(*data, action);
    return finish(std::move(data), images);
  }

  FiniteModule FiniteModule::create_additive(
      RingPtr                                       ring,
      std::vector<int>                              cyclic_orders,
      std::vector<std::pair<Elem, GeneratorImages>> partial_action,
      std::string                                   label,
      Limits const&                                 limits) {
    auto data = skeleton(std::move(ring), std::move(cyclic_orders), std::move(label), limits);
    auto const&                    R  = *data->ring;
    std::size_t const              nr = R.order();
    std::size_t const              k  = data->orders.size();
    std::vector<std::vector<Elem>> images(nr);
    std::vector<char>              known(nr, 0);
    for (auto const& [r, imgs] : partial_action) {
      if (r >= nr) {
        throw ConstructionError("action", "ring element index out of range");
      }
      auto row = images_from_coordinates(*data, {imgs}).front();
      if (known[r] && images[r] != row) {
        throw ConstructionError("action", "ring element given twice with different images");
      }
      images[r] = std::move(row);
      known[r]  = 1;
    }
    if (!known[R.zero()]) {
      images[R.zero()].assign(k, 0);
      known[R.zero()] = 1;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < nr; ++a) {
        for (std::size_t b = 0; b < nr && known[a]; ++b) {
          if (!known[b]) {
            continue;
          }
          auto const        s = R.add(static_cast<Elem>(a), static_cast<Elem>(b));
          std::vector<Elem> row(k);
          for (std::size_t i = 0; i < k; ++i) {
            row[i] = data->add[images[a][i] * data->n + images[b][i]];
          }
          if (!known[s]) {
            images[s] = std::move(row);
            known[s]  = 1;
            changed   = true;
          } else if (images[s] != row) {
            throw ConstructionError("action additivity in the ring",
                                    "given images are not additive in the ring element");
          }
        }
      }
    }
    if (std::find(known.begin(), known.end(), 0) != known.end()) {
      throw ConstructionError("action", "listed ring elements do not additively generate the ring");
    }
    return finish(std::move(data), images);
  }

  FiniteModule FiniteModule::regular(RingPtr ring, Limits const& limits) {
    if (!ring) {
      throw std::invalid_argument("FiniteModule::regular: null ring");
    }
    auto const& R    = *ring;
    auto const& dec  = R.additive_basis();
    auto        data = skeleton(ring, dec.orders, "regular(" + R.label() + ")", limits);
    std::size_t const n = data->n;
    data->ring_of.resize(n);
    data->module_of.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      Elem acc = R.zero();
      for (std::size_t i = 0; i < dec.generators.size(); ++i) {
        for (int t = 0; t < data->coords[x][i]; ++t) {
          acc = R.add(acc, dec.generators[i]);
        }
      }
      data->ring_of[x]     = acc;
      data->module_of[acc] = static_cast<Elem>(x);
    }
    std::vector<std::vector<Elem>> gen_images(R.order());
    for (std::size_t r = 0; r < R.order(); ++r) {
      for (auto b : dec.generators) {
        gen_images[r].push_back(data->module_of[R.mul(b, static_cast<Elem>(r))]);
      }
    }
    return finish(std::move(data), gen_images);
  }

  FiniteModule FiniteModule::zero(RingPtr ring, Limits const& limits) {
    auto data = skeleton(std::move(ring), {}, "zero", limits);
    std::vector<std::vector<Elem>> gen_images(data->ring->order());
    return finish(std::move(data), gen_images);
  }

  FiniteModule FiniteModule::cyclic_sum(RingPtr          zmod_ring,
                                        std::vector<int> cyclic_orders,
                                        Limits const&    limits) {
    auto const& R = *zmod_ring;
    std::string label;
    for (int d : cyclic_orders) {
      if (d < 1 || R.order() % static_cast<std::size_t>(d) != 0) {
        throw ConstructionError("cyclic orders", "order " + std::to_string(d)
                                                     + " does not divide the ring order");
      }
      label += (label.empty() ? "Z_" : "+Z_") + std::to_string(d);
    }
    if (label.empty()) {
      label = "0";
    }
    label += " over " + R.label();
    auto data = skeleton(zmod_ring, cyclic_orders, std::move(label), limits);
    std::size_t const              k = data->orders.size();
    std::vector<std::vector<Elem>> gen_images(R.order());
    for (std::size_t r = 0; r < R.order(); ++r) {
      for (std::size_t i = 0; i < k; ++i) {
        // ring element r of zmod(n) acts as the integer r
        gen_images[r].push_back(multiple_of(*data, data->gens[i], static_cast<long>(r)));
      }
    }
    return finish(std::move(data), gen_images);
  }

  FiniteModule FiniteModule::direct_sum(FiniteModule const& first,
                                        FiniteModule const& second,
                                        Limits const&       limits) {
    if (!first.same_ring(second)) {
      throw std::invalid_argument("direct_sum: modules over different rings");
    }
    std::vector<int> orders(first.cyclic_orders().begin(), first.cyclic_orders().end());
    orders.insert(orders.end(), second.cyclic_orders().begin(), second.cyclic_orders().end());
    auto data = skeleton(first.ring_ptr(),
                         std::move(orders),
                         "(" + first.label() + ")+(" + second.label() + ")",
                         limits);
    data->factors = {first, second};
    std::size_t const              n2 = second.size();
    std::vector<std::vector<Elem>> gen_images(first.ring().order());
    for (std::size_t r = 0; r < first.ring().order(); ++r) {
      for (std::size_t i = 0; i < first.generator_count(); ++i) {
        auto const y = first.act(first.generator(i), static_cast<Elem>(r));
        gen_images[r].push_back(static_cast<Elem>(y * n2));
      }
      for (std::size_t i = 0; i < second.generator_count(); ++i) {
        gen_images[r].push_back(second.act(second.generator(i), static_cast<Elem>(r)));
      }
    }
    return finish(std::move(data), gen_images);
  }

  FiniteRing const& FiniteModule::ring() const noexcept {
    return *data_->ring;
  }
  RingPtr const& FiniteModule::ring_ptr() const noexcept {
    return data_->ring;
  }
  std::string const& FiniteModule::label() const noexcept {
    return data_->label;
  }
  Limits const& FiniteModule::limits() const noexcept {
    return data_->limits;
  }
  std::size_t FiniteModule::size() const noexcept {
    return data_->n;
  }
  std::span<int const> FiniteModule::cyclic_orders() const noexcept {
    return data_->orders;
  }
  std::size_t FiniteModule::generator_count() const noexcept {
    return data_->orders.size();
  }
  Elem FiniteModule::generator(std::size_t i) const noexcept {
    return data_->gens[i];
  }
  ElementSet FiniteModule::all() const {
    return ElementSet::all(data_->n);
  }
  Elem FiniteModule::add(Elem a, Elem b) const noexcept {
    return data_->add[a * data_->n + b];
  }
  Elem FiniteModule::neg(Elem a) const noexcept {
    return data_->neg[a];
  }
  Elem FiniteModule::act(Elem m, Elem r) const noexcept {
    return data_->act[m * data_->ring->order() + r];
  }
  Elem FiniteModule::multiple(Elem m, long k) const noexcept {
    return multiple_of(*data_, m, k);
  }
  std::vector<int> const& FiniteModule::coordinates(Elem m) const noexcept {
    return data_->coords[m];
  }
  Elem FiniteModule::from_coordinates(std::span<int const> coords) const {
    if (coords.size() != data_->orders.size()) {
      throw std::invalid_argument("from_coordinates: wrong tuple length");
    }
    return static_cast<Elem>(encode(data_->orders, coords));
  }

  std::string FiniteModule::element_name(Elem m) const {
    if (!data_->ring_of.empty()) {
      return data_->ring->element_name(data_->ring_of[m]);
    }
    auto const& c = data_->coords[m];
    if (c.empty()) {
      return "0";
    }
    if (c.size() == 1) {
      return std::to_string(c[0]);
    }
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      s += (i ? "," : "") + std::to_string(c[i]);
    }
    return s + ")";
  }

  bool FiniteModule::has_factors() const noexcept {
    return !data_->factors.empty();
  }

  FiniteModule const& FiniteModule::factor(std::size_t i) const {
    if (i >= data_->factors.size()) {
      throw std::out_of_range("FiniteModule::factor: not a direct sum");
    }
    return data_->factors[i];
  }

  std::span<Elem const> FiniteModule::ring_element_of() const noexcept {
    return data_->ring_of;
  }
  std::span<Elem const> FiniteModule::module_element_of() const noexcept {
    return data_->module_of;
  }

  bool FiniteModule::same_ring(FiniteModule const& other) const noexcept {
    return data_->ring == other.data_->ring || rings_match(ring(), other.ring());
  }

  std::vector<Submodule> const& FiniteModule::submodules() const {
    std::call_once(data_->sub_once, [this] { data_->subs = rickart::submodules(*this); });
    return data_->subs;
  }

  std::vector<std::vector<Elem>> const& FiniteModule::endomorphism_tables() const {
    std::call_once(data_->end_once, [this] { data_->ends = hom_tables(*this, *this); });
    return data_->ends;
  }

  std::vector<ElementSet> const& FiniteModule::summand_lattice() const {
    std::call_once(data_->summand_once, [this] {
      std::unordered_set<ElementSet, ElementSetHash> seen;
      std::vector<ElementSet>                        out;
      for (auto const& e : endomorphism_tables()) {
        bool       idem = true;
        ElementSet img;
        for (std::size_t m = 0; m < size() && idem; ++m) {
          idem = e[e[m]] == e[m];
          img.insert(e[m]);
        }
        if (idem && seen.insert(img).second) {
          out.push_back(img);
        }
      }
      std::sort(out.begin(), out.end(), size_then_bits_less);
      data_->summands = std::move(out);
    });
    return data_->summands;
  }

  std::vector<Homomorphism> FiniteModule::endomorphisms() const {
    std::vector<Homomorphism> out;
    for (auto const& t : endomorphism_tables()) {
      out.push_back(Homomorphism::from_trusted_table(*this, *this, t));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism
  ////////////////////////////////////////////////////////////////////////

  Homomorphism Homomorphism::from_generator_images(FiniteModule const& source,
                                                   FiniteModule const& target,
                                                   std::vector<Elem>   images) {
    if (!source.same_ring(target)) {
      throw std::invalid_argument("homomorphism between modules over different rings");
    }
    if (images.size() != source.generator_count()) {
      throw ConstructionError("homomorphism", "expected one image per source generator");
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] >= target.size()) {
        throw ConstructionError("homomorphism", "image out of range");
      }
      if (target.multiple(images[i], source.cyclic_orders()[i]) != 0) {
        throw ConstructionError("homomorphism well-definedness",
                                "image of generator " + std::to_string(i)
                                    + " has order not dividing "
                                    + std::to_string(source.cyclic_orders()[i]));
      }
    }
    std::vector<Elem> table(source.size());
    for (std::size_t m = 0; m < source.size(); ++m) {
      auto const& c   = source.coordinates(static_cast<Elem>(m));
      Elem        acc = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        acc = target.add(acc, target.multiple(images[i], c[i]));
      }
      table[m] = acc;
    }
    auto const& R = source.ring();
    for (std::size_t m = 0; m < source.size(); ++m) {
      for (std::size_t m2 = 0; m2 < source.size(); ++m2) {
        if (table[source.add(static_cast<Elem>(m), static_cast<Elem>(m2))]
            != target.add(table[m], table[m2])) {
          throw ConstructionError("homomorphism additivity", "f(m+m') != f(m)+f(m')");
        }
      }
      for (std::size_t r = 0; r < R.order(); ++r) {
        if (table[source.act(static_cast<Elem>(m), static_cast<Elem>(r))]
            != target.act(table[m], static_cast<Elem>(r))) {
          throw ConstructionError("homomorphism R-linearity",
                                  "f(m r) != f(m) r for m = " + source.element_name(static_cast<Elem>(m))
                                      + ", r = " + R.element_name(static_cast<Elem>(r)));
        }
      }
    }
    return Homomorphism(source, target, std::move(table));
  }

  Homomorphism Homomorphism::from_trusted_table(FiniteModule const& source,
                                                FiniteModule const& target,
                                                std::vector<Elem>   table) {
    return Homomorphism(source, target, std::move(table));
  }

  Homomorphism Homomorphism::identity(FiniteModule const& M) {
    std::vector<Elem> table(M.size());
    for (std::size_t m = 0; m < M.size(); ++m) {
      table[m] = static_cast<Elem>(m);
    }
    return Homomorphism(M, M, std::move(table));
  }

  Homomorphism Homomorphism::zero(FiniteModule const& source, FiniteModule const& target) {
    return Homomorphism(source, target, std::vector<Elem>(source.size(), 0));
  }

  std::vector<Elem> Homomorphism::generator_images() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < source_.generator_count(); ++i) {
      out.push_back(table_[source_.generator(i)]);
    }
    return out;
  }

  bool Homomorphism::is_zero() const noexcept {
    return std::all_of(table_.begin(), table_.end(), [](Elem e) { return e == 0; });
  }

  std::string Homomorphism::render() const {
    if (source_.generator_count() == 0) {
      return "0";
    }
    std::string s;
    auto const  imgs = generator_images();
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      s += (i ? ", " : "") + ("g" + std::to_string(i + 1)) + " -> "
           + target_.element_name(imgs[i]);
    }
    return s;
  }

  Homomorphism compose(Homomorphism const& f, Homomorphism const& g) {
    if (g.target().size() != f.source().size() || !f.source().same_ring(g.target())) {
      throw std::invalid_argument("compose: shapes do not match");
    }
    std::vector<Elem> table(g.source().size());
    for (std::size_t m = 0; m < table.size(); ++m) {
      table[m] = f(g(static_cast<Elem>(m)));
    }
    return Homomorphism::from_trusted_table(g.source(), f.target(), std::move(table));
  }

  Homomorphism add(Homomorphism const& f, Homomorphism const& g) {
    if (f.source().size() != g.source().size() || f.target().size() != g.target().size()) {
      throw std::invalid_argument("add: shapes do not match");
    }
    std::vector<Elem> table(f.source().size());
    for (std::size_t m = 0; m < table.size(); ++m) {
      table[m] = f.target().add(f(static_cast<Elem>(m)), g(static_cast<Elem>(m)));
    }
    return Homomorphism::from_trusted_table(f.source(), f.target(), std::move(table));
  }

  ////////////////////////////////////////////////////////////////////////
  // Submodules
  ////////////////////////////////////////////////////////////////////////

  ElementSet cyclic_submodule(FiniteModule const& M, Elem m) {
    ElementSet s;
    for (std::size_t r = 0; r < M.ring().order(); ++r) {
      s.insert(M.act(m, static_cast<Elem>(r)));
    }
    return s;
  }

  ElementSet submodule_sum(FiniteModule const& M, ElementSet const& a, ElementSet const& b) {
    ElementSet out;
    a.for_each([&](Elem x) { b.for_each([&](Elem y) { out.insert(M.add(x, y)); }); });
    return out;
  }

  Submodule submodule_closure(FiniteModule const& M, std::span<Elem const> generators) {
    Submodule N;
    N.members = ElementSet::singleton(0);
    for (auto g : generators) {
      if (!N.members.contains(g)) {
        N.members = submodule_sum(M, N.members, cyclic_submodule(M, g));
      }
      N.generators.push_back(g);
    }
    return N;
  }

  bool is_submodule(FiniteModule const& M, ElementSet const& members) {
    if (!members.contains(0)) {
      return false;
    }
    bool ok = true;
    members.for_each([&](Elem x) {
      members.for_each([&](Elem y) { ok = ok && members.contains(M.add(x, y)); });
      for (std::size_t r = 0; r < M.ring().order() && ok; ++r) {
        ok = members.contains(M.act(x, static_cast<Elem>(r)));
      }
    });
    return ok;
  }

  Submodule make_submodule(FiniteModule const& M, ElementSet const& members) {
    if (!is_submodule(M, members)) {
      throw std::invalid_argument("make_submodule: set is not a submodule");
    }
    Submodule  N;
    ElementSet span = ElementSet::singleton(0);
    members.for_each([&](Elem x) {
      if (!span.contains(x)) {
        span = submodule_sum(M, span, cyclic_submodule(M, x));
        N.generators.push_back(x);
      }
    });
    N.members = members;
    return N;
  }

  std::vector<Submodule> submodules(FiniteModule const& M) {
    std::size_t const       n = M.size();
    std::vector<ElementSet> cyclic(n);
    for (std::size_t m = 0; m < n; ++m) {
      cyclic[m] = cyclic_submodule(M, static_cast<Elem>(m));
    }
    auto const&                                    limits = M.limits();
    std::vector<Submodule>                         found{Submodule{ElementSet::singleton(0), {}}};
    std::unordered_set<ElementSet, ElementSetHash> seen{found.front().members};
    for (std::size_t i = 0; i < found.size(); ++i) {
      std::unordered_set<ElementSet, ElementSetHash> tried;
      for (std::size_t m = 0; m < n; ++m) {
        if (found[i].members.contains(static_cast<Elem>(m)) || !tried.insert(cyclic[m]).second) {
          continue;
        }
        auto next = submodule_sum(M, found[i].members, cyclic[m]);
        if (seen.insert(next).second) {
          if (found.size() >= limits.submodule_count) {
            throw CapacityError("submodule_count", limits.submodule_count, found.size() + 1);
          }
          Submodule S{next, found[i].generators};
          S.generators.push_back(static_cast<Elem>(m));
          found.push_back(std::move(S));
        }
      }
    }
    std::sort(found.begin(), found.end(), [](Submodule const& a, Submodule const& b) {
      return size_then_bits_less(a.members, b.members);
    });
    return found;
  }

  std::vector<std::vector<Elem>> hom_tables(FiniteModule const& M, FiniteModule const& N) {
    if (!M.same_ring(N)) {
      throw std::invalid_argument("hom_set: modules over different rings");
    }
    std::size_t const k = M.generator_count();
    auto const&       R = M.ring();
    // Checking f(g_i b) = f(g_i) b for an additive basis b of R suffices.
    auto const& basis = R.additive_basis().generators;

    std::vector<std::vector<Elem>> candidates(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t y = 0; y < N.size(); ++y) {
        if (N.multiple(static_cast<Elem>(y), M.cyclic_orders()[i]) == 0) {
          candidates[i].push_back(static_cast<Elem>(y));
        }
      }
    }
    struct Constraint {
      std::size_t      gen;
      Elem             ring_elem;
      std::vector<int> coords;  // of g_gen * ring_elem
    };
    std::vector<std::vector<Constraint>> bucket(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (auto b : basis) {
        auto const& c   = M.coordinates(M.act(M.generator(i), b));
        std::size_t top = i;
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (c[j] != 0) {
            top = std::max(top, j);
          }
        }
        bucket[top].push_back({i, b, c});
      }
    }

    std::vector<std::vector<Elem>> out;
    std::vector<Elem>              img(k, 0);
    auto                           combine_images = [&](std::vector<int> const& c) {
      Elem acc = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != 0) {
          acc = N.add(acc, N.multiple(img[j], c[j]));
        }
      }
      return acc;
    };
    std::function<void(std::size_t)> extend = [&](std::size_t t) {
      if (t == k) {
        std::vector<Elem> table(M.size());
        for (std::size_t m = 0; m < M.size(); ++m) {
          table[m] = combine_images(M.coordinates(static_cast<Elem>(m)));
        }
        out.push_back(std::move(table));
        check_hom_count(M.limits(), out.size());
        return;
      }
      for (auto y : candidates[t]) {
        img[t]  = y;
        bool ok = true;
        for (auto const& con : bucket[t]) {
          if (combine_images(con.coords) != N.act(img[con.gen], con.ring_elem)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          extend(t + 1);
        }
      }
    };
    extend(0);
    return out;
  }

  std::vector<Homomorphism> hom_set(FiniteModule const& M, FiniteModule const& N) {
    std::vector<Homomorphism> out;
    for (auto& t : hom_tables(M, N)) {
      out.push_back(Homomorphism::from_trusted_table(M, N, std::move(t)));
    }
    return out;
  }

  Submodule kernel(Homomorphism const& f) {
    ElementSet k;
    for (std::size_t m = 0; m < f.source().size(); ++m) {
      if (f(static_cast<Elem>(m)) == 0) {
        k.insert(static_cast<Elem>(m));
      }
    }
    return make_submodule(f.source(), k);
  }

  Submodule image(Homomorphism const& f) {
    ElementSet im;
    for (auto y : f.table()) {
      im.insert(y);
    }
    return make_submodule(f.target(), im);
  }

  bool is_essential_in(FiniteModule const& M, ElementSet const& N, ElementSet const& P) {
    bool essential = true;
    P.for_each([&](Elem m) {
      if (!essential || m == 0) {
        return;
      }
      bool meets = false;
      for (std::size_t r = 0; r < M.ring().order() && !meets; ++r) {
        Elem const y = M.act(m, static_cast<Elem>(r));
        meets        = y != 0 && N.contains(y);
      }
      essential = meets;
    });
    return essential;
  }

  bool is_essential(FiniteModule const& M, ElementSet const& N) {
    return is_essential_in(M, N, M.all());
  }

  bool is_closed(FiniteModule const& M, ElementSet const& N) {
    for (auto const& P : M.submodules()) {
      if (P.members != N && N.is_subset_of(P.members) && is_essential_in(M, N, P.members)) {
        return false;
      }
    }
    return true;
  }

  std::optional<Submodule> find_complement(FiniteModule const& M, ElementSet const& N) {
    std::size_t const nn = N.size();
    for (auto const& C : M.submodules()) {
      if (nn * C.size() == M.size() && (N & C.members).size() == 1) {
        return C;
      }
    }
    return std::nullopt;
  }

  std::optional<Homomorphism> find_summand_idempotent(FiniteModule const& M, ElementSet const& N) {
    for (auto const& e : M.endomorphism_tables()) {
      bool       idem = true;
      ElementSet img;
      for (std::size_t m = 0; m < M.size() && idem; ++m) {
        idem = e[e[m]] == e[m];
        img.insert(e[m]);
      }
      if (idem && img == N) {
        return Homomorphism::from_trusted_table(M, M, e);
      }
    }
    return std::nullopt;
  }

  Homomorphism projection_along(FiniteModule const& M, ElementSet const& N, ElementSet const& C) {
    std::vector<Elem> images;
    for (std::size_t i = 0; i < M.generator_count(); ++i) {
      Elem const          g = M.generator(i);
      std::optional<Elem> part;
      N.for_each([&](Elem n) {
        if (!part && C.contains(M.sub(g, n))) {
          part = n;
        }
      });
      if (!part) {
        throw std::invalid_argument("projection_along: N + C != M");
      }
      images.push_back(*part);
    }
    return Homomorphism::from_generator_images(M, M, std::move(images));
  }

  SummandResult is_direct_summand(FiniteModule const& M, ElementSet const& N) {
    auto complement = find_complement(M, N);
    auto idempotent = find_summand_idempotent(M, N);
    if (complement.has_value() != idempotent.has_value()) {
      throw std::logic_error("is_direct_summand: complement and idempotent routes disagree on "
                             + describe(M, N));
    }
    if (!complement) {
      return {Status::fails, std::nullopt};
    }
    auto e = projection_along(M, N, complement->members);
    if (!(compose(e, e) == e) || image(e).members != N || kernel(e).members != complement->members) {
      throw std::logic_error("is_direct_summand: reconstructed idempotent does not verify");
    }
    return {Status::holds, SummandCertificate{std::move(*complement), std::move(e)}};
  }

  QuotientResult quotient(FiniteModule const& M, ElementSet const& N) {
    if (!is_submodule(M, N)) {
      throw std::invalid_argument("quotient: not a submodule");
    }
    std::size_t const n = M.size();
    std::vector<Elem> rep(n);
    for (std::size_t m = 0; m < n; ++m) {
      Elem best = static_cast<Elem>(m);
      N.for_each([&](Elem x) { best = std::min(best, M.add(static_cast<Elem>(m), x)); });
      rep[m] = best;
    }
    std::vector<Elem> reps;
    std::vector<Elem> local(n, 0);
    for (std::size_t m = 0; m < n; ++m) {
      if (rep[m] == m) {
        local[m] = static_cast<Elem>(reps.size());
        reps.push_back(static_cast<Elem>(m));
      }
    }
    std::size_t const q = reps.size();
    std::vector<Elem> add_local(q * q);
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        add_local[i * q + j] = local[rep[M.add(reps[i], reps[j])]];
      }
    }
    auto act_local = [&](Elem x, Elem r) { return local[rep[M.act(reps[x], r)]]; };
    auto lm        = module_from_group(M.ring_ptr(),
                                q,
                                add_local,
                                act_local,
                                "(" + M.label() + ")/" + describe(M, N),
                                M.limits());
    std::vector<Elem> images;
    for (std::size_t i = 0; i < M.generator_count(); ++i) {
      images.push_back(lm.index_of_local[local[rep[M.generator(i)]]]);
    }
    auto proj = Homomorphism::from_generator_images(M, lm.module, std::move(images));
    return QuotientResult{std::move(lm.module), std::move(proj)};
  }

  EmbeddedSubmodule as_module(FiniteModule const& M, ElementSet const& N) {
    if (!is_submodule(M, N)) {
      throw std::invalid_argument("as_module: not a submodule");
    }
    auto const        members = N.to_vector();
    std::size_t const q       = members.size();
    std::vector<Elem> local(M.size(), 0);
    for (std::size_t i = 0; i < q; ++i) {
      local[members[i]] = static_cast<Elem>(i);
    }
    std::vector<Elem> add_local(q * q);
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        add_local[i * q + j] = local[M.add(members[i], members[j])];
      }
    }
    auto act_local = [&](Elem x, Elem r) { return local[M.act(members[x], r)]; };
    auto lm        = module_from_group(
        M.ring_ptr(), q, add_local, act_local, describe(M, N) + " in " + M.label(), M.limits());
    std::vector<Elem> images;
    for (std::size_t i = 0; i < lm.module.generator_count(); ++i) {
      images.push_back(members[lm.local_of_index[lm.module.generator(i)]]);
    }
    auto inc = Homomorphism::from_generator_images(lm.module, M, std::move(images));
    return EmbeddedSubmodule{std::move(lm.module), std::move(inc)};
  }

  RightIdeal annihilator_in_ring(FiniteModule const& M) {
    auto const& R = M.ring();
    ElementSet  ann;
    for (std::size_t r = 0; r < R.order(); ++r) {
      bool kills = true;
      for (std::size_t m = 0; m < M.size() && kills; ++m) {
        kills = M.act(static_cast<Elem>(m), static_cast<Elem>(r)) == 0;
      }
      if (kills) {
        ann.insert(static_cast<Elem>(r));
      }
    }
    if (!is_two_sided_ideal(R, ann)) {
      throw std::logic_error("annihilator_in_ring: not a two-sided ideal");
    }
    return make_right_ideal(R, ann);
  }

  Homomorphism direct_sum_injection(FiniteModule const& M, std::size_t i) {
    auto const&       F  = M.factor(i);
    std::size_t const n2 = M.factor(1).size();
    std::vector<Elem> images;
    for (std::size_t g = 0; g < F.generator_count(); ++g) {
      images.push_back(i == 0 ? static_cast<Elem>(F.generator(g) * n2) : F.generator(g));
    }
    return Homomorphism::from_generator_images(F, M, std::move(images));
  }

  Homomorphism direct_sum_projection(FiniteModule const& M, std::size_t i) {
    auto const&       F  = M.factor(i);
    std::size_t const k1 = M.factor(0).generator_count();
    std::vector<Elem> images;
    for (std::size_t g = 0; g < M.generator_count(); ++g) {
      bool const mine = (i == 0) == (g < k1);
      images.push_back(mine ? F.generator(i == 0 ? g : g - k1) : Elem{0});
    }
    return Homomorphism::from_generator_images(M, F, std::move(images));
  }

  bool decomposes_along(FiniteModule const& M, ElementSet const& N) {
    std::size_t const n2 = M.factor(1).size();
    bool              ok = true;
    N.for_each([&](Elem m) {
      auto const first  = static_cast<Elem>((m / n2) * n2);
      auto const second = static_cast<Elem>(m % n2);
      ok                = ok && N.contains(first) && N.contains(second);
    });
    return ok;
  }

  std::optional<Homomorphism> find_module_isomorphism(FiniteModule const& M,
                                                      FiniteModule const& N) {
    if (M.size() != N.size() || !M.same_ring(N)) {
      return std::nullopt;
    }
    for (auto& t : hom_tables(M, N)) {
      ElementSet img;
      for (auto y : t) {
        img.insert(y);
      }
      if (img.size() == N.size()) {
        return Homomorphism::from_trusted_table(M, N, std::move(t));
      }
    }
    return std::nullopt;
  }

  std::string describe(FiniteModule const& M, ElementSet const& s) {
    std::string out   = "{";
    bool        first = true;
    s.for_each([&](Elem e) {
      out += (first ? "" : ",") + M.element_name(e);
      first = false;
    });
    return out + "}";
  }

}  // namespace rickart
