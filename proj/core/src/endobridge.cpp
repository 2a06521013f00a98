#include "rickartlab/endobridge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rickartlab/errors.hpp"

namespace rickart {

  namespace {

    std::string key_of(std::span<Elem const> t) {
      std::string k;
      k.reserve(t.size() * 2);
      for (auto e : t) {
        k.push_back(static_cast<char>(e & 0xff));
        k.push_back(static_cast<char>(e >> 8));
      }
      return k;
    }

    bool exact(Status s) {
      return s == Status::holds || s == Status::fails;
    }

  }  // namespace

  Elem EndoRing::index_of(std::span<Elem const> table) const {
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      if (std::ranges::equal(carrier[i].table(), table)) {
        return static_cast<Elem>(i);
      }
    }
    throw std::out_of_range("EndoRing::index_of: not an endomorphism");
  }

  EndoRing endomorphism_ring(FiniteModule const& M) {
    auto const&       ends   = M.endomorphism_tables();
    std::size_t const n      = ends.size();
    auto const&       limits = M.limits();
    if (n > std::min(limits.ring_construct_order, ElementSet::kCapacity)) {
      throw CapacityError("ring_construct_order", limits.ring_construct_order, n);
    }
    std::map<std::string, Elem> index;
    for (std::size_t i = 0; i < n; ++i) {
      index.emplace(key_of(ends[i]), static_cast<Elem>(i));
    }
    auto lookup = [&](std::vector<Elem> const& t) {
      auto it = index.find(key_of(t));
      if (it == index.end()) {
        throw std::logic_error("endomorphism_ring: End(M) not closed");
      }
      return it->second;
    };

    std::vector<Elem> add(n * n), mul(n * n);
    std::vector<Elem> t(M.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < M.size(); ++m) {
          t[m] = M.add(ends[i][m], ends[j][m]);
        }
        add[i * n + j] = lookup(t);
        for (std::size_t m = 0; m < M.size(); ++m) {
          t[m] = ends[i][ends[j][m]];
        }
        mul[i * n + j] = lookup(t);
      }
    }
    std::vector<Elem> zero(M.size(), 0), id(M.size());
    for (std::size_t m = 0; m < M.size(); ++m) {
      id[m] = static_cast<Elem>(m);
    }

    EndoRing S{nullptr, {}, M};
    std::vector<std::string> names;
    for (auto const& e : ends) {
      S.carrier.push_back(Homomorphism::from_trusted_table(M, M, e));
      names.push_back(S.carrier.back().render());
    }
    S.ring = std::make_shared<FiniteRing const>(FiniteRing::from_tables(n,
                                                                        std::move(add),
                                                                        std::move(mul),
                                                                        lookup(zero),
                                                                        lookup(id),
                                                                        "End(" + M.label() + ")",
                                                                        std::move(names),
                                                                        limits));
    return S;
  }

  FaithUtumiReport faith_utumi_radical_check(FiniteModule const& M) {
    FaithUtumiReport rep;
    try {
      rep.quasi_injective = decide_module_property(M, ModuleProperty::quasi_injective).status;
      if (rep.quasi_injective != Status::holds) {
        rep.outcome = rep.quasi_injective == Status::fails ? TheoremOutcome::not_applicable
                                                           : TheoremOutcome::undecided;
        rep.reason  = "module is not known to be quasi-injective";
        return rep;
      }
      auto const S = endomorphism_ring(M);
      for (std::size_t i = 0; i < S.carrier.size(); ++i) {
        auto const K = kernel(S.carrier[i]).members;
        if (is_essential(M, K)) {
          rep.essential_kernels.insert(static_cast<Elem>(i));
        }
      }
      rep.radical    = jacobson_radical(*S.ring);
      rep.sets_equal = rep.radical.members == rep.essential_kernels;
      auto const Q   = quotient_ring(*S.ring, rep.radical.members);
      rep.quotient_order = Q->order();
      rep.quotient_vn_regular =
          decide_ring_property(*Q, RingProperty::vn_regular, M.limits()).status;
    } catch (CapacityError const& e) {
      rep.reason  = e.what();
      rep.outcome = TheoremOutcome::undecided;
      return rep;
    }
    if (!exact(rep.quotient_vn_regular)) {
      rep.outcome = TheoremOutcome::undecided;
    } else if (rep.sets_equal && rep.quotient_vn_regular == Status::holds) {
      rep.outcome = TheoremOutcome::consistent;
    } else {
      rep.outcome = TheoremOutcome::violation;
    }
    return rep;
  }

  CorrespondenceReport correspondence_report(FiniteModule const& M) {
    CorrespondenceReport rep;
    try {
      rep.rickart             = decide_module_property(M, ModuleProperty::rickart).status;
      rep.baer                = decide_module_property(M, ModuleProperty::baer).status;
      rep.retractable         = decide_module_property(M, ModuleProperty::retractable).status;
      rep.k_local_retractable = decide_module_property(M, ModuleProperty::k_local_retractable).status;
      auto const S            = endomorphism_ring(M);
      rep.endo_order          = S.ring->order();
      rep.s_right_rickart =
          decide_ring_property(*S.ring, RingProperty::right_rickart, M.limits()).status;
    } catch (CapacityError const& e) {
      rep.reason  = e.what();
      rep.outcome = TheoremOutcome::undecided;
      return rep;
    }
    for (auto s : {rep.rickart, rep.baer, rep.retractable, rep.k_local_retractable, rep.s_right_rickart}) {
      if (!exact(s)) {
        rep.reason  = "a component decision was not exact";
        rep.outcome = TheoremOutcome::undecided;
        return rep;
      }
    }
    bool const rk  = rep.rickart == Status::holds;
    bool const br  = rep.baer == Status::holds;
    bool const srk = rep.s_right_rickart == Status::holds;
    bool const ret = rep.retractable == Status::holds;
    bool const klr = rep.k_local_retractable == Status::holds;

    rep.rickart_gives_s_rickart         = !rk || srk;
    rep.retractable_equivalence         = !ret || (rk == srk);
    rep.k_local_characterization        = rk == (srk && klr);
    rep.baer_iff_rickart                = br == rk;
    rep.rickart_iff_s_rickart           = rk == srk;
    rep.equivalence_without_retractable = !ret && rk == srk;

    bool const ok = rep.rickart_gives_s_rickart && rep.retractable_equivalence
                    && rep.k_local_characterization && rep.baer_iff_rickart
                    && rep.rickart_iff_s_rickart;
    rep.outcome = ok ? TheoremOutcome::consistent : TheoremOutcome::violation;
    return rep;
  }

  std::array<std::string_view, 6> const& QuasiInjectiveReport::condition_names() {
    static std::array<std::string_view, 6> const names{"baer(M)",
                                                       "rickart(M)",
                                                       "vn_regular(S)",
                                                       "right_semihereditary(S)",
                                                       "right_rickart(S)",
                                                       "right_nonsingular(S)"};
    return names;
  }

  QuasiInjectiveReport quasi_injective_equivalence_report(FiniteModule const& M) {
    QuasiInjectiveReport rep;
    try {
      rep.quasi_injective = decide_module_property(M, ModuleProperty::quasi_injective).status;
      if (rep.quasi_injective != Status::holds) {
        rep.outcome = rep.quasi_injective == Status::fails ? TheoremOutcome::not_applicable
                                                           : TheoremOutcome::undecided;
        rep.reason  = "module is not known to be quasi-injective";
        return rep;
      }
      auto const S   = endomorphism_ring(M);
      auto const& lm = M.limits();
      rep.conditions = {decide_module_property(M, ModuleProperty::baer).status,
                        decide_module_property(M, ModuleProperty::rickart).status,
                        decide_ring_property(*S.ring, RingProperty::vn_regular, lm).status,
                        decide_ring_property(*S.ring, RingProperty::right_semihereditary, lm).status,
                        decide_ring_property(*S.ring, RingProperty::right_rickart, lm).status,
                        decide_ring_property(*S.ring, RingProperty::right_nonsingular, lm).status};
    } catch (CapacityError const& e) {
      rep.reason  = e.what();
      rep.outcome = TheoremOutcome::undecided;
      return rep;
    }
    if (!std::all_of(rep.conditions.begin(), rep.conditions.end(), exact)) {
      rep.reason  = "a component decision was not exact";
      rep.outcome = TheoremOutcome::undecided;
      return rep;
    }
    rep.all_equal = std::all_of(rep.conditions.begin(), rep.conditions.end(), [&](Status s) {
      return s == rep.conditions.front();
    });
    rep.outcome = rep.all_equal ? TheoremOutcome::consistent : TheoremOutcome::violation;
    return rep;
  }

}  // namespace rickart
