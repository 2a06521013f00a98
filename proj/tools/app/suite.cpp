#include "suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace rickart::app {

  namespace {

    template <typename T>
    class Lazy {
     public:
      template <typename F>
      T const& get(F&& make) const {
        std::call_once(once_, [&] { value_.emplace(make()); });
        return *value_;
      }

     private:
      mutable std::once_flag   once_;
      mutable std::optional<T> value_;
    };

    bool exact(Status s) {
      return s == Status::holds || s == Status::fails;
    }

    std::string st(Status s) {
      return std::string(to_string(s));
    }

    struct RingSubject {
      std::string name;
      RingPtr     ring;
      Limits      limits;

      Lazy<std::vector<RingVerdict>> verdicts;
      Lazy<Status>                   self_injective;

      RingVerdict const& verdict(RingProperty p) const {
        auto const& all = verdicts.get([&] {
          std::vector<RingVerdict> out;
          for (auto q : all_ring_properties()) {
            out.push_back(decide_ring_property(*ring, q, limits));
          }
          return out;
        });
        for (auto const& v : all) {
          if (v.property == p) {
            return v;
          }
        }
        throw std::logic_error("missing ring property");
      }

      Status regular_quasi_injective() const {
        return self_injective.get([&] {
          try {
            auto const M = FiniteModule::regular(ring, limits);
            return decide_module_property(M, ModuleProperty::quasi_injective).status;
          } catch (CapacityError const&) {
            return Status::unsupported;
          }
        });
      }
    };

    struct ModuleSubject {
      std::string  name;
      FiniteModule M;

      Lazy<ModuleVerdict>        rickart_v;
      Lazy<CorrespondenceReport> corr;
      Lazy<std::pair<Status, std::string>> s_vn;

      ModuleVerdict const& rickart() const {
        return rickart_v.get([&] { return decide_module_property(M, ModuleProperty::rickart); });
      }
      CorrespondenceReport const& correspondence() const {
        return corr.get([&] { return correspondence_report(M); });
      }
      // vn_regular(End(M)).
      std::pair<Status, std::string> const& endo_vn_regular() const {
        return s_vn.get([&]() -> std::pair<Status, std::string> {
          try {
            auto const S = endomorphism_ring(M);
            auto const v = decide_ring_property(*S.ring, RingProperty::vn_regular, M.limits());
            return {v.status, v.status == Status::unsupported ? v.witness.description : ""};
          } catch (CapacityError const& e) {
            return {Status::unsupported, e.what()};
          }
        });
      }
    };

    struct PairSubject {
      std::string           name;
      ModuleSubject const*  first;
      ModuleSubject const*  second;
      Lazy<DirectSumReport> report_v;

      DirectSumReport const& report() const {
        return report_v.get([&] { return check_direct_sum_theorem(first->M, second->M); });
      }
    };

    struct ZSubject {
      std::string name;
      FgZModule   module;
    };

    struct Subjects {
      std::vector<std::unique_ptr<RingSubject>>   rings;
      std::vector<std::unique_ptr<ModuleSubject>> modules;
      std::vector<std::unique_ptr<PairSubject>>   pairs;
      std::vector<ZSubject>                       zmodules;
      int                                         bound = kDefaultBound;
    };

    Instance undecided(std::string subject, Json details, std::string const& reason) {
      details["reason"] = reason;
      return {std::move(subject), TheoremOutcome::undecided, std::move(details)};
    }

    Instance outcome_of(std::string subject, bool ok, Json details) {
      return {std::move(subject), ok ? TheoremOutcome::consistent : TheoremOutcome::violation, std::move(details)};
    }

    ElementSet push_forward(Homomorphism const& f, ElementSet const& s) {
      ElementSet out;
      s.for_each([&](Elem e) { out.insert(f(e)); });
      return out;
    }

    ////////////////////////////////////////////////////////////////////
    // Module checkers
    ////////////////////////////////////////////////////////////////////

    // Rickart iff kernels of maps between summands are summands.
    Instance check_summand_maps(ModuleSubject const& s) {
      auto const& M = s.M;
      auto const& v = s.rickart();
      Json        d{{"rickart", st(v.status)}};
      if (!exact(v.status)) {
        return undecided(s.name, d, v.reason);
      }
      auto const&                    summands = M.summand_lattice();
      std::vector<EmbeddedSubmodule> parts;
      for (auto const& A : summands) {
        parts.push_back(as_module(M, A));
      }
      Status      rhs  = Status::holds;
      std::size_t maps = 0;
      for (std::size_t i = 0; i < parts.size() && rhs == Status::holds; ++i) {
        for (std::size_t j = 0; j < parts.size() && rhs == Status::holds; ++j) {
          for (auto const& f : hom_set(parts[i].module, parts[j].module)) {
            ++maps;
            auto const K = kernel(f);
            if (is_direct_summand(parts[i].module, K.members).status != Status::holds) {
              rhs          = Status::fails;
              d["witness"] = Json{{"A", submodule_to_json(M, summands[i])},
                                  {"B", submodule_to_json(M, summands[j])},
                                  {"map", homomorphism_to_json(f)},
                                  {"kernel", submodule_to_json(M, push_forward(parts[i].inclusion, K.members))}};
              break;
            }
          }
        }
      }
      d["summands"]          = summands.size();
      d["maps_checked"]      = maps;
      d["summand_condition"] = st(rhs);
      return outcome_of(s.name, v.status == rhs, std::move(d));
    }

    Instance check_summand_closure(ModuleSubject const& s) {
      auto const& M = s.M;
      auto const& v = s.rickart();
      Json        d{{"rickart", st(v.status)}};
      if (!exact(v.status)) {
        return undecided(s.name, d, v.reason);
      }
      if (v.status == Status::fails) {
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      std::size_t checked = 0;
      for (auto const& N : M.summand_lattice()) {
        auto const cert = is_direct_summand(M, N);
        if (cert.status != Status::holds || !cert.certificate) {
          d["witness"] = Json{{"summand", submodule_to_json(M, N)}, {"error", "no summand certificate"}};
          return outcome_of(s.name, false, std::move(d));
        }
        auto const part = as_module(M, N);
        auto const r    = decide_module_property(part.module, ModuleProperty::rickart);
        ++checked;
        if (!exact(r.status)) {
          return undecided(s.name, d, r.reason);
        }
        if (r.status == Status::fails) {
          d["witness"] = Json{{"summand", submodule_to_json(M, N)},
                              {"complement", submodule_to_json(M, cert.certificate->complement.members)},
                              {"summand_verdict", module_verdict_to_json(part.module, r)}};
          return outcome_of(s.name, false, std::move(d));
        }
      }
      d["summands_checked"] = checked;
      return outcome_of(s.name, true, std::move(d));
    }

    Instance check_endo_rickart(ModuleSubject const& s) {
      auto const& c = s.correspondence();
      Json        d{{"rickart", st(c.rickart)}, {"s_right_rickart", st(c.s_right_rickart)}, {"endo_order", c.endo_order}};
      if (!exact(c.rickart) || !exact(c.s_right_rickart)) {
        return undecided(s.name, d, c.reason);
      }
      if (c.rickart == Status::fails) {
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      return outcome_of(s.name, c.rickart_gives_s_rickart, std::move(d));
    }

    Instance check_retractable_equivalence(ModuleSubject const& s) {
      auto const& c = s.correspondence();
      Json        d{{"retractable", st(c.retractable)},
             {"rickart", st(c.rickart)},
             {"s_right_rickart", st(c.s_right_rickart)}};
      if (!exact(c.retractable) || !exact(c.rickart) || !exact(c.s_right_rickart)) {
        return undecided(s.name, d, c.reason);
      }
      if (c.retractable == Status::fails) {
        d["equivalence_without_retractable"] = c.equivalence_without_retractable;
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      return outcome_of(s.name, c.retractable_equivalence, std::move(d));
    }

    Instance check_k_local(ModuleSubject const& s) {
      auto const& c = s.correspondence();
      Json        d{{"rickart", st(c.rickart)},
             {"s_right_rickart", st(c.s_right_rickart)},
             {"k_local_retractable", st(c.k_local_retractable)}};
      if (!exact(c.rickart) || !exact(c.s_right_rickart) || !exact(c.k_local_retractable)) {
        return undecided(s.name, d, c.reason);
      }
      return outcome_of(s.name, c.k_local_characterization, std::move(d));
    }

    Instance check_regular_endo_forward(ModuleSubject const& s) {
      auto const& [vn, why] = s.endo_vn_regular();
      auto const& c         = s.correspondence();
      Json d{{"s_vn_regular", st(vn)}, {"rickart", st(c.rickart)}, {"s_right_rickart", st(c.s_right_rickart)}};
      if (!exact(vn)) {
        return undecided(s.name, d, why);
      }
      if (vn == Status::fails) {
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      if (!exact(c.rickart) || !exact(c.s_right_rickart)) {
        return undecided(s.name, d, c.reason);
      }
      return outcome_of(s.name, c.rickart == Status::holds && c.s_right_rickart == Status::holds, std::move(d));
    }

    Instance check_regular_endo_reverse(ModuleSubject const& s) {
      auto const& r  = s.rickart();
      auto const  sc = decide_module_property(s.M, ModuleProperty::self_cogenerator);
      Json        d{{"rickart", st(r.status)}, {"self_cogenerator", st(sc.status)}};
      if (!exact(r.status) || !exact(sc.status)) {
        return undecided(s.name, d, r.reason.empty() ? sc.reason : r.reason);
      }
      if (r.status == Status::fails || sc.status == Status::fails) {
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      auto const& [vn, why] = s.endo_vn_regular();
      d["s_vn_regular"]     = st(vn);
      if (!exact(vn)) {
        return undecided(s.name, d, why);
      }
      return outcome_of(s.name, vn == Status::holds, std::move(d));
    }

    Instance check_quasi_injective_equivalence(ModuleSubject const& s) {
      auto const r = quasi_injective_equivalence_report(s.M);
      return {s.name, r.outcome, quasi_injective_to_json(r)};
    }

    Instance check_faith_utumi(ModuleSubject const& s) {
      auto const r = faith_utumi_radical_check(s.M);
      return {s.name, r.outcome, faith_utumi_to_json(r)};
    }

    Instance check_finite_small(ModuleSubject const& s) {
      auto const& c = s.correspondence();
      Json        d{{"baer", st(c.baer)}, {"rickart", st(c.rickart)}, {"s_right_rickart", st(c.s_right_rickart)}};
      if (!exact(c.baer) || !exact(c.rickart) || !exact(c.s_right_rickart)) {
        return undecided(s.name, d, c.reason);
      }
      d["retractable"] = st(c.retractable);
      return outcome_of(s.name, c.baer_iff_rickart && c.rickart_iff_s_rickart, std::move(d));
    }

    Instance check_rickart_gives_k_local(ModuleSubject const& s) {
      auto const& r = s.rickart();
      auto const  k = decide_module_property(s.M, ModuleProperty::k_local_retractable);
      Json        d{{"rickart", st(r.status)}, {"k_local_retractable", st(k.status)}};
      if (!exact(r.status) || !exact(k.status)) {
        return undecided(s.name, d, r.reason.empty() ? k.reason : r.reason);
      }
      if (r.status == Status::fails) {
        d["separates"] = k.status == Status::holds;
        if (r.witness) {
          d["rickart_witness"] = module_witness_to_json(s.M, *r.witness);
        }
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      return outcome_of(s.name, k.status == Status::holds, std::move(d));
    }

    ////////////////////////////////////////////////////////////////////
    // Pair checkers
    ////////////////////////////////////////////////////////////////////

    Instance check_direct_sum(PairSubject const& p) {
      auto const& r = p.report();
      auto const  S = FiniteModule::direct_sum(p.first->M, p.second->M);
      Json        d = direct_sum_to_json(S, r);
      if (r.outcome == TheoremOutcome::undecided) {
        return {p.name, r.outcome, std::move(d)};
      }
      if (!r.theorem_implication) {
        return {p.name, TheoremOutcome::violation, std::move(d)};
      }
      return {p.name, r.hypotheses_hold ? TheoremOutcome::consistent : TheoremOutcome::hypotheses_not_met, std::move(d)};
    }

    Instance check_direct_sum_corollary(PairSubject const& p) {
      auto const& r = p.report();
      auto const  S = FiniteModule::direct_sum(p.first->M, p.second->M);
      Json        d = direct_sum_to_json(S, r);
      if (r.outcome == TheoremOutcome::undecided) {
        return {p.name, r.outcome, std::move(d)};
      }
      if (!r.corollary_implication || !r.corollary_gives_condition1) {
        return {p.name, TheoremOutcome::violation, std::move(d)};
      }
      return {p.name,
              r.corollary_hypotheses_hold ? TheoremOutcome::consistent : TheoremOutcome::hypotheses_not_met,
              std::move(d)};
    }

    ////////////////////////////////////////////////////////////////////
    // Ring checkers
    ////////////////////////////////////////////////////////////////////

    Json ring_statuses(RingSubject const& s, std::initializer_list<RingProperty> ps, bool& all_exact, std::string& why) {
      Json d = Json::object();
      all_exact = true;
      for (auto p : ps) {
        auto const& v             = s.verdict(p);
        d[std::string(to_string(p))] = st(v.status);
        if (!exact(v.status)) {
          all_exact = false;
          why       = v.witness.description;
        }
      }
      return d;
    }

    Instance check_chart(RingSubject const& s) {
      using P = RingProperty;
      bool        ok = true;
      std::string why;
      Json d = ring_statuses(s, {P::vn_regular, P::right_semihereditary, P::right_rickart, P::right_nonsingular, P::baer},
                             ok, why);
      if (!ok) {
        return undecided(s.name, d, why);
      }
      auto holds = [&](P p) { return s.verdict(p).status == Status::holds; };
      std::array<std::pair<P, P>, 4> const arrows{{{P::vn_regular, P::right_semihereditary},
                                                   {P::right_semihereditary, P::right_rickart},
                                                   {P::right_rickart, P::right_nonsingular},
                                                   {P::baer, P::right_rickart}}};
      Json broken = Json::array(), strict = Json::array();
      for (auto [a, b] : arrows) {
        auto const arrow = std::string(to_string(a)) + " => " + std::string(to_string(b));
        if (holds(a) && !holds(b)) {
          broken.push_back(arrow);
        }
        if (!holds(a) && holds(b)) {
          strict.push_back(arrow);
        }
      }
      d["strict_here"] = strict;
      if (!broken.empty()) {
        d["broken"] = broken;
      }
      return outcome_of(s.name, broken.empty(), std::move(d));
    }

    Instance check_closed_annihilators(RingSubject const& s) {
      auto const& ns = s.verdict(RingProperty::right_nonsingular);
      Json        d{{"right_nonsingular", st(ns.status)}};
      if (!exact(ns.status)) {
        return undecided(s.name, d, ns.witness.description);
      }
      auto const M       = FiniteModule::regular(s.ring, s.limits);
      auto const to_mod  = M.module_element_of();
      auto const lattice = right_annihilator_lattice(*s.ring);
      bool       all_closed = true;
      for (auto const& A : lattice) {
        ElementSet N;
        A.ideal.members.for_each([&](Elem r) { N.insert(to_mod[r]); });
        if (!is_closed(M, N)) {
          all_closed = false;
          Json subset = Json::array();
          for (auto x : A.subset) {
            subset.push_back(s.ring->element_name(x));
          }
          Json members = Json::array();
          A.ideal.members.for_each([&](Elem r) { members.push_back(s.ring->element_name(r)); });
          d["witness"] = Json{{"subset", subset}, {"annihilator", members}};
          break;
        }
      }
      d["annihilators"]        = lattice.size();
      d["all_annihilators_closed"] = all_closed;
      return outcome_of(s.name, (ns.status == Status::holds) == all_closed, std::move(d));
    }

    Instance check_ring_small(RingSubject const& s) {
      bool        ok = true;
      std::string why;
      Json        d = ring_statuses(s, {RingProperty::baer, RingProperty::right_rickart}, ok, why);
      if (!ok) {
        return undecided(s.name, d, why);
      }
      return outcome_of(s.name,
                        s.verdict(RingProperty::baer).status == s.verdict(RingProperty::right_rickart).status,
                        std::move(d));
    }

    Instance check_self_injective(RingSubject const& s) {
      using P     = RingProperty;
      auto const qi = s.regular_quasi_injective();
      Json        d{{"right_self_injective", st(qi)}};
      if (!exact(qi)) {
        return undecided(s.name, d, "quasi-injectivity of R_R not decided within caps");
      }
      if (qi == Status::fails) {
        return {s.name, TheoremOutcome::hypotheses_not_met, std::move(d)};
      }
      bool        ok = true;
      std::string why;
      auto const  props = {P::baer, P::vn_regular, P::right_semihereditary, P::right_rickart, P::right_nonsingular};
      d.update(ring_statuses(s, props, ok, why));
      if (!ok) {
        return undecided(s.name, d, why);
      }
      auto const first = s.verdict(P::baer).status;
      bool const same  = std::all_of(props.begin(), props.end(), [&](P p) { return s.verdict(p).status == first; });
      return outcome_of(s.name, same, std::move(d));
    }

    ////////////////////////////////////////////////////////////////////
    // Z-module checkers
    ////////////////////////////////////////////////////////////////////

    Instance check_z_example(ZSubject const& z, int bound) {
      auto const r = zrickart_check(z.module, bound);
      Json       d = zrickart_to_json(r);
      auto const Z     = FgZModule::canonical(1, {});
      auto const Z2    = FgZModule::canonical(0, {2});
      auto const ZZ2   = FgZModule::canonical(1, {2});
      if (z.module == ZZ2) {
        // 2Z -> Z must not split, independently of the sweep.
        auto const twice = ZModHom::make(Z, Z, IntMatrix::from_rows({{2}}));
        auto const split = zsummand_test(twice);
        d["two_z_in_z"]  = st(split.status);
        bool ok = r.status == Status::fails && r.kernel && r.kernel->module == ZZ2
                  && zsummand_test(r.kernel->inclusion).status == Status::fails && split.status == Status::fails;
        return outcome_of(z.name, ok, std::move(d));
      }
      if (z.module == Z || z.module == Z2) {
        return outcome_of(z.name, r.status == Status::holds, std::move(d));
      }
      return {z.name, TheoremOutcome::not_applicable, std::move(d)};
    }

    Instance check_z_agreement(ZSubject const& z, int bound) {
      auto const r = zrickart_check(z.module, bound);
      Json       d{{"check", zrickart_to_json(r)}};
      if (r.status == Status::unsupported) {
        return undecided(z.name, d, r.reason);
      }
      if (z.module.is_torsion()) {
        auto const w = zrickart_sweep(z.module, bound);
        d["sweep"]   = zrickart_to_json(w);
        if (w.status == Status::unsupported) {
          return undecided(z.name, d, w.reason);
        }
        return outcome_of(z.name, w.status == r.status, std::move(d));
      }
      if (z.module.torsion.empty()) {
        return outcome_of(z.name, r.status == Status::holds, std::move(d));
      }
      return {z.name, TheoremOutcome::not_applicable, std::move(d)};
    }

    ////////////////////////////////////////////////////////////////////
    // Registry
    ////////////////////////////////////////////////////////////////////

    using ModuleChecker = Instance (*)(ModuleSubject const&);
    using PairChecker   = Instance (*)(PairSubject const&);
    using RingChecker   = Instance (*)(RingSubject const&);
    using ZChecker      = Instance (*)(ZSubject const&, int);

    struct Checker {
      RegistryEntry entry;
      ModuleChecker module = nullptr;
      PairChecker   pair   = nullptr;
      RingChecker   ring   = nullptr;
      ZChecker      z      = nullptr;
    };

    std::vector<Checker> const& checkers() {
      static std::vector<Checker> const all{
          {{"prop-2.2", "rickart(M) iff every map between summands has a summand kernel", Domain::module},
           check_summand_maps},
          {{"thm-2.3", "summands of a Rickart module are Rickart", Domain::module}, check_summand_closure},
          {{"ex-2.4", "Z and Z_2 are Rickart, Z+Z_2 is not (kernel 2Z+Z_2)", Domain::zmodule},
           nullptr, nullptr, nullptr, check_z_example},
          {{"thm-2.5", "Rickart summands, split submodules and relative Rickart give a Rickart sum",
            Domain::module_pair},
           nullptr, check_direct_sum},
          {{"cor-2.6", "r(M1) + r(M2) = R replaces the splitting condition", Domain::module_pair},
           nullptr, check_direct_sum_corollary},
          {{"prop-3.1", "rickart(M) implies End(M) right Rickart", Domain::module}, check_endo_rickart},
          {{"prop-3.3", "for retractable M: rickart(M) iff End(M) right Rickart", Domain::module},
           check_retractable_equivalence},
          {{"ex-z4", "Rickart implies k-local-retractable; Z_4 separates them", Domain::module},
           check_rickart_gives_k_local},
          {{"thm-3.4", "rickart(M) iff End(M) right Rickart and M k-local-retractable", Domain::module},
           check_k_local},
          {{"prop-3.5-fwd", "End(M) regular implies M Rickart and End(M) right Rickart", Domain::module},
           check_regular_endo_forward},
          {{"prop-3.5-rev", "M Rickart and self-cogenerator implies End(M) regular", Domain::module},
           check_regular_endo_reverse},
          {{"chart", "regular => semihereditary => right Rickart => right nonsingular; Baer => right Rickart",
            Domain::ring},
           nullptr, nullptr, check_chart},
          {{"lemma-3.10", "right nonsingular iff every right annihilator is closed", Domain::ring},
           nullptr, nullptr, check_closed_annihilators},
          {{"thm-qi-equiv", "quasi-injective M: six conditions coincide", Domain::module},
           check_quasi_injective_equivalence},
          {{"cor-self-injective", "right self-injective R: five ring conditions coincide", Domain::ring},
           nullptr, nullptr, check_self_injective},
          {{"faith-utumi", "quasi-injective M: J(S) is the essential-kernel set and S/J(S) is regular",
            Domain::module},
           check_faith_utumi},
          {{"thm-small", "finite End(M): baer(M) iff rickart(M) iff End(M) right Rickart", Domain::module},
           check_finite_small},
          {{"cor-ring-small", "finite R: Baer iff right Rickart", Domain::ring}, nullptr, nullptr, check_ring_small},
          {{"zrickart-agreement", "Z-module Rickart check agrees with the finite engine and the sweep",
            Domain::zmodule},
           nullptr, nullptr, nullptr, check_z_agreement},
      };
      return all;
    }

    Subjects materialize(Corpus const& corpus, SuiteOptions const& options) {
      Subjects out;
      out.bound = options.bound;
      for (auto const& r : corpus.rings) {
        auto s    = std::make_unique<RingSubject>();
        s->name   = r.name;
        s->limits = options.limits;
        try {
          s->ring = build_ring(r.expr, options.limits);
        } catch (Error const& e) {
          throw SchemaError("corpus ring '" + r.name + "': " + e.what());
        }
        out.rings.push_back(std::move(s));
      }
      for (auto const& m : corpus.modules) {
        try {
          out.modules.push_back(
              std::unique_ptr<ModuleSubject>(new ModuleSubject{m.name, build_module(m.spec, options.limits), {}, {}, {}}));
        } catch (Error const& e) {
          throw SchemaError("corpus module '" + m.name + "': " + e.what());
        }
      }
      for (std::size_t i = 0; i < out.modules.size(); ++i) {
        for (std::size_t j = i; j < out.modules.size(); ++j) {
          auto const& a = *out.modules[i];
          auto const& b = *out.modules[j];
          if (a.M.same_ring(b.M) && a.M.size() * b.M.size() <= options.pair_order) {
            auto p    = std::make_unique<PairSubject>();
            p->name   = "(" + a.name + ", " + b.name + ")";
            p->first  = &a;
            p->second = &b;
            out.pairs.push_back(std::move(p));
          }
        }
      }
      for (auto const& z : corpus.zmodules) {
        out.zmodules.push_back({z.name, z.module});
      }
      return out;
    }

    std::size_t subject_count(Subjects const& s, Domain d) {
      switch (d) {
        case Domain::ring:
          return s.rings.size();
        case Domain::module:
          return s.modules.size();
        case Domain::module_pair:
          return s.pairs.size();
        case Domain::zmodule:
          return s.zmodules.size();
      }
      return 0;
    }

    Instance run_one(Checker const& c, Subjects const& s, std::size_t i) {
      std::string subject;
      try {
        switch (c.entry.domain) {
          case Domain::ring:
            subject = s.rings[i]->name;
            return c.ring(*s.rings[i]);
          case Domain::module:
            subject = s.modules[i]->name;
            return c.module(*s.modules[i]);
          case Domain::module_pair:
            subject = s.pairs[i]->name;
            return c.pair(*s.pairs[i]);
          case Domain::zmodule:
            subject = s.zmodules[i].name;
            return c.z(s.zmodules[i], s.bound);
        }
      } catch (CapacityError const& e) {
        return undecided(subject, Json::object(), e.what());
      } catch (OverflowError const& e) {
        return undecided(subject, Json::object(), e.what());
      }
      throw std::logic_error("unknown domain");
    }

  }  // namespace

  std::string_view to_string(Domain d) noexcept {
    switch (d) {
      case Domain::ring:
        return "ring";
      case Domain::module:
        return "module";
      case Domain::module_pair:
        return "module_pair";
      case Domain::zmodule:
        return "zmodule";
    }
    return "?";
  }

  std::span<RegistryEntry const> registry() noexcept {
    static std::vector<RegistryEntry> const entries = [] {
      std::vector<RegistryEntry> out;
      for (auto const& c : checkers()) {
        out.push_back(c.entry);
      }
      return out;
    }();
    return entries;
  }

  std::size_t EntryResult::count(TheoremOutcome o) const {
    return static_cast<std::size_t>(
        std::count_if(instances.begin(), instances.end(), [o](Instance const& i) { return i.outcome == o; }));
  }

  std::size_t SuiteResult::violations() const {
    std::size_t n = 0;
    for (auto const& e : entries) {
      n += e.count(TheoremOutcome::violation);
    }
    return n;
  }

  std::size_t default_thread_count() {
    if (char const* env = std::getenv("RICKARTLAB_THREADS")) {
      char*      end = nullptr;
      long const n   = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && n > 0) {
        return static_cast<std::size_t>(n);
      }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }

  SuiteResult run_suite(Corpus const& corpus, SuiteOptions const& options) {
    if (corpus.empty()) {
      throw SchemaError("corpus is empty; refusing to pass vacuously");
    }
    std::vector<Checker const*> selected;
    for (auto const& id : options.filter) {
      auto it = std::find_if(checkers().begin(), checkers().end(), [&](Checker const& c) { return c.entry.id == id; });
      if (it == checkers().end()) {
        throw SchemaError("unknown theorem id '" + id + "'");
      }
    }
    for (auto const& c : checkers()) {
      if (options.filter.empty()
          || std::find(options.filter.begin(), options.filter.end(), c.entry.id) != options.filter.end()) {
        selected.push_back(&c);
      }
    }

    auto const subjects = materialize(corpus, options);

    SuiteResult result;
    result.corpus_version = corpus.version;
    result.threads        = std::max<std::size_t>(1, options.threads);

    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t e = 0; e < selected.size(); ++e) {
      result.entries.push_back({selected[e]->entry, {}});
      auto const n = subject_count(subjects, selected[e]->entry.domain);
      result.entries.back().instances.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        tasks.emplace_back(e, i);
      }
    }

    std::atomic<std::size_t> next{0};
    std::mutex               error_mutex;
    std::exception_ptr       error;
    auto                     worker = [&] {
      for (;;) {
        auto const t = next.fetch_add(1);
        if (t >= tasks.size()) {
          return;
        }
        auto const [e, i] = tasks[t];
        try {
          result.entries[e].instances[i] = run_one(*selected[e], subjects, i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
        }
      }
    };
    if (result.threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t k = 0; k < result.threads; ++k) {
        pool.emplace_back(worker);
      }
    }
    if (error) {
      std::rethrow_exception(error);
    }
    return result;
  }

  Json suite_to_json(SuiteResult const& r) {
    Json entries = Json::array();
    for (auto const& e : r.entries) {
      Json instances = Json::array();
      for (auto const& i : e.instances) {
        instances.push_back(
            Json{{"subject", i.subject}, {"outcome", std::string(to_string(i.outcome))}, {"details", i.details}});
      }
      entries.push_back(Json{{"id", std::string(e.entry.id)},
                             {"claim", std::string(e.entry.claim)},
                             {"domain", std::string(to_string(e.entry.domain))},
                             {"instances", e.instances.size()},
                             {"counts",
                              {{"consistent", e.count(TheoremOutcome::consistent)},
                               {"hypotheses_not_met", e.count(TheoremOutcome::hypotheses_not_met)},
                               {"not_applicable", e.count(TheoremOutcome::not_applicable)},
                               {"undecided", e.count(TheoremOutcome::undecided)},
                               {"violation", e.count(TheoremOutcome::violation)}}},
                             {"results", instances}});
    }
    return Json{{"corpus_version", r.corpus_version}, {"violations", r.violations()}, {"entries", entries}};
  }

  std::string suite_to_text(SuiteResult const& r) {
    std::ostringstream out;
    out << "corpus " << r.corpus_version << "\n";
    for (auto const& e : r.entries) {
      out << e.entry.id << ": " << e.instances.size() << " instances, "
          << e.count(TheoremOutcome::consistent) << " consistent, "
          << e.count(TheoremOutcome::hypotheses_not_met) << " hypotheses not met, "
          << e.count(TheoremOutcome::not_applicable) << " not applicable, "
          << e.count(TheoremOutcome::undecided) << " undecided, "
          << e.count(TheoremOutcome::violation) << " violations\n";
      for (auto const& i : e.instances) {
        if (i.outcome == TheoremOutcome::violation || i.outcome == TheoremOutcome::undecided) {
          out << "  " << to_string(i.outcome) << " " << i.subject << " " << i.details.dump() << "\n";
        }
      }
    }
    out << "violations: " << r.violations() << "\n";
    return out.str();
  }

}  // namespace rickart::app
