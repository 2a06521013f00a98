#include "rickartlab/modprops.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "rickartlab/errors.hpp"

namespace rickart {

  namespace {

    constexpr std::array<ModuleProperty, 9> kAllProperties{
        ModuleProperty::rickart,
        ModuleProperty::baer,
        ModuleProperty::k_nonsingular,
        ModuleProperty::retractable,
        ModuleProperty::k_local_retractable,
        ModuleProperty::quasi_injective,
        ModuleProperty::extending,
        ModuleProperty::self_cogenerator,
        ModuleProperty::sip,
    };

    using Table    = std::vector<Elem>;
    using SetIndex = std::unordered_set<ElementSet, ElementSetHash>;

    ElementSet kernel_set(std::span<Elem const> t) {
      ElementSet k;
      for (std::size_t m = 0; m < t.size(); ++m) {
        if (t[m] == 0) {
          k.insert(static_cast<Elem>(m));
        }
      }
      return k;
    }

    ElementSet image_set(std::span<Elem const> t) {
      ElementSet im;
      for (auto y : t) {
        im.insert(y);
      }
      return im;
    }

    bool is_nonzero_table(Table const& t) {
      return std::any_of(t.begin(), t.end(), [](Elem e) { return e != 0; });
    }

    SetIndex summand_index(FiniteModule const& M) {
      auto const& L = M.summand_lattice();
      return SetIndex(L.begin(), L.end());
    }

    class Collector {
     public:
      explicit Collector(bool all) : all_(all) {}

      // True when the caller should stop scanning.
      bool add(ModuleWitness w) {
        found_.push_back(std::move(w));
        return !all_;
      }

      ModuleVerdict finish(ModuleProperty p) {
        ModuleVerdict v;
        v.property = p;
        if (found_.empty()) {
          v.status = Status::holds;
          return v;
        }
        v.status  = Status::fails;
        v.witness = found_.front();
        if (all_) {
          v.all_witnesses = std::move(found_);
        }
        return v;
      }

     private:
      bool                       all_;
      std::vector<ModuleWitness> found_;
    };

    Homomorphism as_endo(FiniteModule const& M, Table const& t) {
      return Homomorphism::from_trusted_table(M, M, t);
    }

    void decide_rickart(FiniteModule const& M, Collector& out) {
      auto const sums = summand_index(M);
      for (auto const& t : M.endomorphism_tables()) {
        auto const K = kernel_set(t);
        if (!sums.contains(K)) {
          auto phi = as_endo(M, t);
          ModuleWitness w;
          w.description = "Ker(" + phi.render() + ") = " + describe(M, K)
                          + " is not a direct summand";
          w.maps.push_back(std::move(phi));
          w.submodule = make_submodule(M, K);
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    // The intersection-closure of single kernels: exactly the r_M(I) for
    // left ideals I of End(M), each with the endomorphism indices used.
    std::vector<std::pair<ElementSet, std::vector<std::size_t>>> kernel_lattice(
        FiniteModule const& M) {
      auto const&                                              ends = M.endomorphism_tables();
      std::vector<std::pair<ElementSet, std::vector<std::size_t>>> base;
      SetIndex                                                 seen;
      for (std::size_t i = 0; i < ends.size(); ++i) {
        auto K = kernel_set(ends[i]);
        if (seen.insert(K).second) {
          base.push_back({K, {i}});
        }
      }
      auto found = base;
      for (std::size_t a = 0; a < found.size(); ++a) {
        for (auto const& [K, gens] : base) {
          auto meet = found[a].first & K;
          if (seen.insert(meet).second) {
            if (found.size() >= M.limits().submodule_count) {
              throw CapacityError("submodule_count", M.limits().submodule_count, found.size() + 1);
            }
            auto g = found[a].second;
            g.push_back(gens.front());
            found.push_back({meet, std::move(g)});
          }
        }
      }
      std::sort(found.begin(), found.end(), [](auto const& x, auto const& y) {
        return size_then_bits_less(x.first, y.first);
      });
      return found;
    }

    void decide_baer(FiniteModule const& M, Collector& out) {
      auto const  sums = summand_index(M);
      auto const& ends = M.endomorphism_tables();
      for (auto const& [K, gens] : kernel_lattice(M)) {
        if (!sums.contains(K)) {
          ModuleWitness w;
          for (auto i : gens) {
            w.maps.push_back(as_endo(M, ends[i]));
          }
          w.submodule   = make_submodule(M, K);
          w.description = "common kernel " + describe(M, K) + " of "
                          + std::to_string(gens.size())
                          + " endomorphism(s) is not a direct summand";
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    void decide_k_nonsingular(FiniteModule const& M, Collector& out) {
      for (auto const& t : M.endomorphism_tables()) {
        if (!is_nonzero_table(t)) {
          continue;
        }
        auto const K = kernel_set(t);
        if (is_essential(M, K)) {
          auto          phi = as_endo(M, t);
          ModuleWitness w;
          w.description = "nonzero " + phi.render() + " has essential kernel " + describe(M, K);
          w.maps.push_back(std::move(phi));
          w.submodule = make_submodule(M, K);
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    void decide_retractable(FiniteModule const& M, Collector& out) {
      std::vector<ElementSet> images;
      for (auto const& t : M.endomorphism_tables()) {
        if (is_nonzero_table(t)) {
          images.push_back(image_set(t));
        }
      }
      for (auto const& N : M.submodules()) {
        if (N.size() == 1) {
          continue;
        }
        bool const reached = std::any_of(images.begin(), images.end(), [&](ElementSet const& im) {
          return im.is_subset_of(N.members);
        });
        if (!reached) {
          ModuleWitness w;
          w.submodule   = N;
          w.description = "Hom(M, " + describe(M, N.members) + ") = 0";
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    void decide_k_local_retractable(FiniteModule const& M, Collector& out) {
      auto const&             ends = M.endomorphism_tables();
      std::vector<ElementSet> images;
      for (auto const& t : ends) {
        images.push_back(image_set(t));
      }
      std::unordered_map<ElementSet, ElementSet, ElementSetHash> covered;
      for (auto const& t : ends) {
        auto const K  = kernel_set(t);
        auto       it = covered.find(K);
        if (it == covered.end()) {
          ElementSet reach;
          for (auto const& im : images) {
            if (im.is_subset_of(K)) {
              reach |= im;
            }
          }
          it = covered.emplace(K, reach).first;
        }
        std::optional<Elem> missing;
        K.for_each([&](Elem m) {
          if (!missing && m != 0 && !it->second.contains(m)) {
            missing = m;
          }
        });
        if (missing) {
          auto          phi = as_endo(M, t);
          ModuleWitness w;
          w.description = "no psi : M -> Ker(" + phi.render() + ") reaches "
                          + M.element_name(*missing);
          w.maps.push_back(std::move(phi));
          w.submodule = make_submodule(M, K);
          w.element   = missing;
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    void decide_quasi_injective(FiniteModule const& M, Collector& out) {
      auto const& ends = M.endomorphism_tables();
      for (auto const& N : M.submodules()) {
        auto const                                    E = as_module(M, N.members);
        std::unordered_set<std::string>               restrictions;
        auto key = [](std::span<Elem const> t) { return std::string(t.begin(), t.end()); };
        for (auto const& g : ends) {
          std::string r;
          for (std::size_t x = 0; x < E.module.size(); ++x) {
            r.push_back(static_cast<char>(g[E.inclusion(static_cast<Elem>(x))]));
          }
          restrictions.insert(std::move(r));
        }
        for (auto& f : hom_tables(E.module, M)) {
          if (!restrictions.contains(key(f))) {
            auto          map = Homomorphism::from_trusted_table(E.module, M, std::move(f));
            ModuleWitness w;
            w.description = "f : " + describe(M, N.members) + " -> M, " + map.render()
                            + ", has no extension to M";
            w.maps.push_back(std::move(map));
            w.submodule = N;
            if (out.add(std::move(w))) {
              return;
            }
            break;
          }
        }
      }
    }

    void decide_extending(FiniteModule const& M, Collector& out) {
      auto const& sums = M.summand_lattice();
      for (auto const& N : M.submodules()) {
        bool const ok = std::any_of(sums.begin(), sums.end(), [&](ElementSet const& D) {
          return N.members.is_subset_of(D) && is_essential_in(M, N.members, D);
        });
        if (!ok) {
          ModuleWitness w;
          w.submodule   = N;
          w.description = describe(M, N.members) + " is essential in no direct summand";
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    void decide_self_cogenerator(FiniteModule const& M, Collector& out) {
      std::vector<ElementSet> kernels;
      for (auto const& t : M.endomorphism_tables()) {
        kernels.push_back(kernel_set(t));
      }
      for (auto const& N : M.submodules()) {
        ElementSet cut = M.all();
        for (auto const& K : kernels) {
          if (N.members.is_subset_of(K)) {
            cut &= K;
          }
        }
        if (cut != N.members) {
          Elem x = 0;
          bool found = false;
          cut.for_each([&](Elem e) {
            if (!found && !N.members.contains(e)) {
              x     = e;
              found = true;
            }
          });
          ModuleWitness w;
          w.submodule   = N;
          w.element     = x;
          w.description = "every endomorphism vanishing on " + describe(M, N.members)
                          + " also kills " + M.element_name(x);
          if (out.add(std::move(w))) {
            return;
          }
        }
      }
    }

    void decide_sip(FiniteModule const& M, Collector& out) {
      auto const& sums = M.summand_lattice();
      SetIndex    index(sums.begin(), sums.end());
      for (std::size_t i = 0; i < sums.size(); ++i) {
        for (std::size_t j = i + 1; j < sums.size(); ++j) {
          auto const meet = sums[i] & sums[j];
          if (!index.contains(meet)) {
            ModuleWitness w;
            w.submodule   = make_submodule(M, sums[i]);
            w.submodule2  = make_submodule(M, sums[j]);
            w.description = "summands " + describe(M, sums[i]) + " and " + describe(M, sums[j])
                            + " meet in " + describe(M, meet) + ", not a summand";
            if (out.add(std::move(w))) {
              return;
            }
          }
        }
      }
    }

    // Every homomorphism M -> N by exhaustive generator images, each one
    // validated by full-table expansion. nullopt past `cap` candidates.
    std::optional<std::vector<Homomorphism>> brute_homs(FiniteModule const& M,
                                                        FiniteModule const& N,
                                                        std::size_t         cap = 1U << 16) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < M.generator_count(); ++i) {
        total *= N.size();
        if (total > cap) {
          return std::nullopt;
        }
      }
      std::vector<Homomorphism> out;
      std::vector<Elem>         img(M.generator_count(), 0);
      for (std::size_t c = 0; c < total; ++c) {
        std::size_t x = c;
        for (std::size_t i = img.size(); i-- > 0;) {
          img[i] = static_cast<Elem>(x % N.size());
          x /= N.size();
        }
        try {
          out.push_back(Homomorphism::from_generator_images(M, N, img));
        } catch (ConstructionError const&) {
        }
      }
      return out;
    }

    bool is_summand_dfs(FiniteModule const& M, ElementSet const& N) {
      return has_complement_dfs(M, N);
    }

  }  // namespace

  std::string_view to_string(ModuleProperty p) noexcept {
    switch (p) {
      case ModuleProperty::rickart: return "rickart";
      case ModuleProperty::baer: return "baer";
      case ModuleProperty::k_nonsingular: return "k_nonsingular";
      case ModuleProperty::retractable: return "retractable";
      case ModuleProperty::k_local_retractable: return "k_local_retractable";
      case ModuleProperty::quasi_injective: return "quasi_injective";
      case ModuleProperty::extending: return "extending";
      case ModuleProperty::self_cogenerator: return "self_cogenerator";
      case ModuleProperty::sip: return "sip";
    }
    return "unknown";
  }

  std::optional<ModuleProperty> module_property_from_string(std::string_view s) {
    for (auto p : kAllProperties) {
      if (to_string(p) == s) {
        return p;
      }
    }
    return std::nullopt;
  }

  std::span<ModuleProperty const> all_module_properties() noexcept {
    return kAllProperties;
  }

  std::string_view to_string(TheoremOutcome o) noexcept {
    switch (o) {
      case TheoremOutcome::consistent: return "CONSISTENT";
      case TheoremOutcome::hypotheses_not_met: return "HYPOTHESES_NOT_MET";
      case TheoremOutcome::not_applicable: return "NOT_APPLICABLE";
      case TheoremOutcome::violation: return "THEOREM_VIOLATION";
      case TheoremOutcome::undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
  }

  ModuleVerdict decide_module_property(FiniteModule const&  M,
                                       ModuleProperty       p,
                                       DecideOptions const& options) {
    Collector out(options.all_witnesses);
    try {
      switch (p) {
        case ModuleProperty::rickart: decide_rickart(M, out); break;
        case ModuleProperty::baer: decide_baer(M, out); break;
        case ModuleProperty::k_nonsingular: decide_k_nonsingular(M, out); break;
        case ModuleProperty::retractable: decide_retractable(M, out); break;
        case ModuleProperty::k_local_retractable: decide_k_local_retractable(M, out); break;
        case ModuleProperty::quasi_injective:
          if (M.size() > M.limits().quasi_injective_order) {
            throw CapacityError("quasi_injective_order", M.limits().quasi_injective_order, M.size());
          }
          decide_quasi_injective(M, out);
          break;
        case ModuleProperty::extending: decide_extending(M, out); break;
        case ModuleProperty::self_cogenerator: decide_self_cogenerator(M, out); break;
        case ModuleProperty::sip: decide_sip(M, out); break;
      }
    } catch (CapacityError const& e) {
      ModuleVerdict v;
      v.property = p;
      v.status   = Status::unsupported;
      v.reason   = e.what();
      return v;
    }
    return out.finish(p);
  }

  std::optional<Homomorphism> k_local_retraction(FiniteModule const& M,
                                                 Homomorphism const& phi,
                                                 Elem                m) {
    auto const K = kernel_set(phi.table());
    for (auto const& t : M.endomorphism_tables()) {
      auto const im = image_set(t);
      if (im.contains(m) && im.is_subset_of(K)) {
        return as_endo(M, t);
      }
    }
    return std::nullopt;
  }

  ModuleVerdict is_relatively_rickart(FiniteModule const& M, FiniteModule const& N) {
    ModuleVerdict v;
    v.property = ModuleProperty::rickart;
    try {
      auto const sums = summand_index(M);
      for (auto& t : hom_tables(M, N)) {
        auto const K = kernel_set(t);
        if (!sums.contains(K)) {
          auto          f = Homomorphism::from_trusted_table(M, N, std::move(t));
          ModuleWitness w;
          w.description = "Ker(" + f.render() + ") = " + describe(M, K)
                          + " is not a direct summand of the source";
          w.maps.push_back(std::move(f));
          w.submodule = make_submodule(M, K);
          v.status    = Status::fails;
          v.witness   = std::move(w);
          return v;
        }
      }
      v.status = Status::holds;
    } catch (CapacityError const& e) {
      v.status = Status::unsupported;
      v.reason = e.what();
    }
    return v;
  }

  bool has_complement_dfs(FiniteModule const& M, ElementSet const& N) {
    std::size_t const n = M.size();
    std::size_t const k = N.size();
    if (k == 0 || n % k != 0) {
      return false;
    }
    std::size_t const target = n / k;
    SetIndex          visited;
    ElementSet const  zero = ElementSet::singleton(0);

    std::function<bool(ElementSet const&)> grow = [&](ElementSet const& C) {
      if (C.size() == target) {
        return true;
      }
      for (std::size_t x = 1; x < n; ++x) {
        auto const e = static_cast<Elem>(x);
        if (C.contains(e) || N.contains(e)) {
          continue;
        }
        // C + xR, closed by hand from the action and addition tables.
        ElementSet next = C;
        std::vector<Elem> frontier{e};
        while (!frontier.empty()) {
          Elem const y = frontier.back();
          frontier.pop_back();
          if (next.contains(y)) {
            continue;
          }
          std::vector<Elem> add_now;
          next.for_each([&](Elem c) { add_now.push_back(c); });
          next.insert(y);
          for (auto c : add_now) {
            frontier.push_back(M.add(c, y));
          }
          for (std::size_t r = 0; r < M.ring().order(); ++r) {
            frontier.push_back(M.act(y, static_cast<Elem>(r)));
          }
          frontier.push_back(M.add(y, y));
        }
        if (next.size() > target || (next & N) != zero || !visited.insert(next).second) {
          continue;
        }
        if (grow(next)) {
          return true;
        }
      }
      return false;
    };
    return grow(zero);
  }

  Status recheck_witness(FiniteModule const& M, ModuleProperty p, ModuleWitness const& w) {
    auto confirm = [](bool ok) { return ok ? Status::holds : Status::fails; };
    auto revalidate = [&](Homomorphism const& f) {
      auto again = Homomorphism::from_generator_images(f.source(), f.target(), f.generator_images());
      return again == f;
    };
    try {
      switch (p) {
        case ModuleProperty::rickart: {
          if (w.maps.size() != 1 || !revalidate(w.maps[0])) {
            return Status::fails;
          }
          return confirm(!is_summand_dfs(M, kernel_set(w.maps[0].table())));
        }
        case ModuleProperty::baer: {
          ElementSet K = M.all();
          for (auto const& f : w.maps) {
            if (!revalidate(f)) {
              return Status::fails;
            }
            K &= kernel_set(f.table());
          }
          if (!w.submodule || w.submodule->members != K) {
            return Status::fails;
          }
          return confirm(!is_summand_dfs(M, K));
        }
        case ModuleProperty::k_nonsingular: {
          if (w.maps.size() != 1 || !revalidate(w.maps[0]) || w.maps[0].is_zero()) {
            return Status::fails;
          }
          auto const K  = kernel_set(w.maps[0].table());
          bool       ok = true;
          for (std::size_t m = 1; m < M.size() && ok; ++m) {
            ok = !(cyclic_submodule(M, static_cast<Elem>(m)) & K).is_subset_of(ElementSet::singleton(0));
          }
          return confirm(ok);
        }
        case ModuleProperty::retractable: {
          if (!w.submodule || w.submodule->size() < 2) {
            return Status::fails;
          }
          auto homs = brute_homs(M, M);
          if (!homs) {
            return Status::unsupported;
          }
          for (auto const& f : *homs) {
            if (!f.is_zero() && image_set(f.table()).is_subset_of(w.submodule->members)) {
              return Status::fails;
            }
          }
          return Status::holds;
        }
        case ModuleProperty::k_local_retractable: {
          if (w.maps.size() != 1 || !w.element || !revalidate(w.maps[0])) {
            return Status::fails;
          }
          auto const K = kernel_set(w.maps[0].table());
          if (*w.element == 0 || !K.contains(*w.element)) {
            return Status::fails;
          }
          auto homs = brute_homs(M, M);
          if (!homs) {
            return Status::unsupported;
          }
          for (auto const& f : *homs) {
            auto const im = image_set(f.table());
            if (im.contains(*w.element) && im.is_subset_of(K)) {
              return Status::fails;
            }
          }
          return Status::holds;
        }
        case ModuleProperty::quasi_injective: {
          if (w.maps.size() != 1 || !w.submodule || !revalidate(w.maps[0])) {
            return Status::fails;
          }
          auto const& f = w.maps[0];
          auto const  E = as_module(M, w.submodule->members);
          if (E.module.size() != f.source().size()) {
            return Status::fails;
          }
          auto homs = brute_homs(M, M);
          if (!homs) {
            return Status::unsupported;
          }
          for (auto const& g : *homs) {
            bool extends = true;
            for (std::size_t x = 0; x < E.module.size() && extends; ++x) {
              extends = g(E.inclusion(static_cast<Elem>(x))) == f(static_cast<Elem>(x));
            }
            if (extends) {
              return Status::fails;
            }
          }
          return Status::holds;
        }
        case ModuleProperty::extending: {
          if (!w.submodule) {
            return Status::fails;
          }
          for (auto const& D : M.submodules()) {
            if (w.submodule->members.is_subset_of(D.members)
                && is_essential_in(M, w.submodule->members, D.members)
                && is_summand_dfs(M, D.members)) {
              return Status::fails;
            }
          }
          return Status::holds;
        }
        case ModuleProperty::self_cogenerator: {
          if (!w.submodule || !w.element || w.submodule->contains(*w.element)) {
            return Status::fails;
          }
          auto homs = brute_homs(M, M);
          if (!homs) {
            return Status::unsupported;
          }
          for (auto const& f : *homs) {
            bool kills = true;
            w.submodule->members.for_each([&](Elem e) { kills = kills && f(e) == 0; });
            if (kills && f(*w.element) != 0) {
              return Status::fails;
            }
          }
          return Status::holds;
        }
        case ModuleProperty::sip: {
          if (!w.submodule || !w.submodule2) {
            return Status::fails;
          }
          return confirm(is_summand_dfs(M, w.submodule->members)
                         && is_summand_dfs(M, w.submodule2->members)
                         && !is_summand_dfs(M, w.submodule->members & w.submodule2->members));
        }
      }
    } catch (ConstructionError const&) {
      return Status::fails;
    }
    return Status::fails;
  }

  DirectSumReport check_direct_sum_theorem(FiniteModule const& M1, FiniteModule const& M2) {
    DirectSumReport rep;
    try {
      auto const S  = FiniteModule::direct_sum(M1, M2, M1.limits());
      rep.m1_rickart = decide_module_property(M1, ModuleProperty::rickart).status;
      rep.m2_rickart = decide_module_property(M2, ModuleProperty::rickart).status;

      rep.condition1 = Status::holds;
      for (auto const& N : S.submodules()) {
        if (!decomposes_along(S, N.members)) {
          rep.condition1         = Status::fails;
          rep.condition1_witness = N;
          break;
        }
      }
      rep.m1_rel_m2 = is_relatively_rickart(M1, M2).status;
      rep.m2_rel_m1 = is_relatively_rickart(M2, M1).status;

      auto const& R    = M1.ring();
      rep.annihilator1 = annihilator_in_ring(M1);
      rep.annihilator2 = annihilator_in_ring(M2);
      ElementSet sum;
      rep.annihilator1.members.for_each([&](Elem a) {
        rep.annihilator2.members.for_each([&](Elem b) { sum.insert(R.add(a, b)); });
      });
      rep.corollary_condition = from_bool(sum == R.all());
      rep.conclusion          = decide_module_property(S, ModuleProperty::rickart).status;
    } catch (CapacityError const& e) {
      rep.reason  = e.what();
      rep.outcome = TheoremOutcome::undecided;
      return rep;
    }

    std::array const all{rep.m1_rickart,
                         rep.m2_rickart,
                         rep.condition1,
                         rep.m1_rel_m2,
                         rep.m2_rel_m1,
                         rep.corollary_condition,
                         rep.conclusion};
    if (std::any_of(all.begin(), all.end(), [](Status s) {
          return s != Status::holds && s != Status::fails;
        })) {
      rep.reason  = "a component decision was not exact";
      rep.outcome = TheoremOutcome::undecided;
      return rep;
    }
    auto const holds   = [](Status s) { return s == Status::holds; };
    bool const shared  = holds(rep.m1_rickart) && holds(rep.m2_rickart) && holds(rep.m1_rel_m2)
                        && holds(rep.m2_rel_m1);
    rep.hypotheses_hold           = shared && holds(rep.condition1);
    rep.corollary_hypotheses_hold = shared && holds(rep.corollary_condition);
    rep.theorem_implication       = !rep.hypotheses_hold || holds(rep.conclusion);
    rep.corollary_implication     = !rep.corollary_hypotheses_hold || holds(rep.conclusion);
    rep.corollary_gives_condition1 = !holds(rep.corollary_condition) || holds(rep.condition1);

    if (!rep.theorem_implication || !rep.corollary_implication || !rep.corollary_gives_condition1) {
      rep.outcome = TheoremOutcome::violation;
    } else if (rep.hypotheses_hold || rep.corollary_hypotheses_hold) {
      rep.outcome = TheoremOutcome::consistent;
    } else {
      rep.outcome = TheoremOutcome::hypotheses_not_met;
    }
    return rep;
  }

}  // namespace rickart
