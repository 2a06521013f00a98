// Acceptance run: one PASS/FAIL line per criterion, with pinned limits.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "corpus.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "rickartlab/endobridge.hpp"
#include "rickartlab/modprops.hpp"
#include "suite.hpp"

using namespace rickart;

namespace {

  constexpr double kWitnessSeconds = 1.0;
  constexpr double kSuiteSeconds   = 60.0;
  constexpr double kSnfSeconds     = 10.0;

  constexpr std::size_t   kMinModuleInstances  = 10;
  constexpr std::size_t   kMinRingInstances    = 10;
  constexpr std::size_t   kMinSummandInstances = 200;
  constexpr int           kSnfMatrices         = 1000;
  constexpr std::uint64_t kSnfSeed             = 0x5eed'0001;

  // Collects failed checks for one criterion.
  class Check {
   public:
    void expect(bool ok, std::string const& what) {
      if (!ok) {
        failures_.push_back(what);
      }
    }
    void note(std::string const& s) {
      notes_.push_back(s);
    }
    bool ok() const {
      return failures_.empty();
    }
    std::string summary() const {
      std::ostringstream o;
      char const*        sep = "";
      for (auto const& f : failures_) {
        o << sep << "failed: " << f;
        sep = "; ";
      }
      for (auto const& n : notes_) {
        o << sep << n;
        sep = "; ";
      }
      return o.str();
    }

   private:
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
  };

  struct Criterion {
    int                         number;
    std::string                 title;
    double                      limit_seconds;  // 0 means no time limit
    std::function<void(Check&)> body;
  };

  int cli(std::vector<std::string> const& args, std::string* out = nullptr) {
    std::ostringstream o, e;
    int const          code = app::run_cli(args, o, e);
    if (out != nullptr) {
      *out = o.str();
    }
    return code;
  }

  bool all_are(QuasiInjectiveReport const& r, Status s) {
    for (auto c : r.conditions) {
      if (c != s) {
        return false;
      }
    }
    return true;
  }

  bool quasi_injective(FiniteModule const& M) {
    return decide_module_property(M, ModuleProperty::quasi_injective).status == Status::holds;
  }

  // a => b, ignoring undecidable sides.
  bool implies(Status a, Status b) {
    return a != Status::holds || b != Status::fails;
  }

  ////////////////////////////////////////////////////////////////////////

  void z_plus_z2(Check& c) {
    std::string out;
    c.expect(cli({"check", "zmodule", "builtin:z_plus_z2", "--property", "rickart"}, &out) == app::kExitFails,
             "CLI exit code 1");
    c.expect(out.find("witness") != std::string::npos, "CLI prints a witness");

    auto const M = FgZModule::canonical(1, {2});
    auto const r = zrickart_check(M);
    c.expect(r.status == Status::fails, "zrickart_check FAILS");
    if (!r.witness || !r.kernel) {
      c.expect(false, "witness and kernel present");
      return;
    }
    // Witness (x, a) -> (0, x mod 2), kernel exactly the pairs with x even.
    bool kernel_is_2z_z2 = true;
    for (std::int64_t x = -6; x <= 6; ++x) {
      for (std::int64_t a = 0; a < 2; ++a) {
        auto const img  = r.witness->apply({x, a});
        bool const zero = img == std::vector<std::int64_t>{0, 0};
        kernel_is_2z_z2 = kernel_is_2z_z2 && (zero == (x % 2 == 0));
      }
    }
    c.expect(kernel_is_2z_z2, "witness kernel is 2Z+Z_2");
    c.expect(r.kernel->module == M, "kernel is abstractly Z+Z_2");
    bool image_even = true, hits_20 = false, hits_01 = false;
    for (std::int64_t a = -3; a <= 3; ++a) {
      for (std::int64_t b = 0; b < 2; ++b) {
        auto const img = normalize(M, r.kernel->inclusion.apply({a, b}));
        image_even     = image_even && img[0] % 2 == 0;
        hits_20        = hits_20 || img == std::vector<std::int64_t>{2, 0};
        hits_01        = hits_01 || img == std::vector<std::int64_t>{0, 1};
      }
    }
    c.expect(image_even && hits_20 && hits_01, "kernel inclusion has image 2Z+Z_2");
    c.expect(zsummand_test(r.kernel->inclusion).status == Status::fails, "kernel inclusion is not split");

    auto const Z       = FgZModule::canonical(1, {});
    auto const two_z   = ZModHom::make(Z, Z, IntMatrix::from_rows({{2}}));
    auto const summand = zsummand_test(two_z);
    c.expect(summand.status == Status::fails, "zsummand_test rejects 2Z in Z");
    c.note("witness " + r.witness->render() + ", kernel via " + r.kernel->inclusion.render());
  }

  void z4_pair(Check& c) {
    auto const M = FiniteModule::cyclic_sum(make_zmod(4), {4});
    c.expect(decide_module_property(M, ModuleProperty::k_local_retractable).status == Status::holds,
             "k_local_retractable HOLDS");
    auto const v = decide_module_property(M, ModuleProperty::rickart);
    c.expect(v.status == Status::fails, "rickart FAILS");
    bool times_two = false;
    if (v.witness && !v.witness->maps.empty()) {
      auto const& f = v.witness->maps.front();
      times_two     = true;
      for (Elem m = 0; m < M.size(); ++m) {
        times_two = times_two && f(m) == static_cast<Elem>((2 * m) % 4);
      }
    }
    c.expect(times_two, "witness is multiplication by 2");
    c.expect(cli({"check", "module", "builtin:z4", "--property", "rickart"}) == app::kExitFails, "CLI exit code 1");
    c.expect(cli({"check", "module", "builtin:z4", "--property", "k_local_retractable"}) == app::kExitHolds,
             "CLI exit code 0");
  }

  void suite_green(Check& c) {
    app::SuiteOptions opts;
    opts.threads = 1;
    auto const r = app::run_suite(app::builtin_corpus(), opts);
    c.expect(r.violations() == 0, "zero violations");
    std::size_t min_module = SIZE_MAX, min_ring = SIZE_MAX, undecided = 0;
    for (auto const& e : r.entries) {
      undecided += e.count(TheoremOutcome::undecided);
      if (e.entry.domain == app::Domain::module) {
        min_module = std::min(min_module, e.instances.size());
      }
      if (e.entry.domain == app::Domain::ring) {
        min_ring = std::min(min_ring, e.instances.size());
      }
    }
    c.expect(min_module >= kMinModuleInstances, "module instances per theorem");
    c.expect(min_ring >= kMinRingInstances, "ring instances per theorem");
    for (auto id : {"prop-2.2", "thm-2.3", "thm-2.5", "cor-2.6", "prop-3.1", "prop-3.3", "thm-3.4", "prop-3.5-fwd",
                    "prop-3.5-rev", "chart", "lemma-3.10", "thm-qi-equiv", "thm-small", "cor-ring-small"}) {
      bool found = false;
      for (auto const& e : r.entries) {
        found = found || e.entry.id == id;
      }
      c.expect(found, std::string("registry has ") + id);
    }
    c.expect(cli({"suite", "--corpus", "builtin"}) == app::kExitHolds, "CLI exit code 0");
    c.note(std::to_string(r.entries.size()) + " theorems, min " + std::to_string(min_module) + " module / "
           + std::to_string(min_ring) + " ring instances, " + std::to_string(undecided) + " undecided");
  }

  void qi_six_way(Check& c) {
    c.expect(all_are(quasi_injective_equivalence_report(FiniteModule::regular(make_zmod(6))), Status::holds),
             "regular zmod(6) all true");
    c.expect(all_are(quasi_injective_equivalence_report(FiniteModule::regular(make_zmod(4))), Status::fails),
             "regular zmod(4) all false");
    c.expect(all_are(quasi_injective_equivalence_report(FiniteModule::cyclic_sum(make_zmod(2), {2, 2})),
                     Status::holds),
             "Z_2+Z_2 all true");
    std::size_t qi = 0;
    for (auto const& [name, M] : fixtures::corpus_modules(64)) {
      auto const r = quasi_injective_equivalence_report(M);
      if (r.quasi_injective != Status::holds) {
        continue;
      }
      ++qi;
      c.expect(r.all_equal && r.outcome == TheoremOutcome::consistent, "no mixed outcome on " + name);
    }
    c.note(std::to_string(qi) + " quasi-injective corpus modules");
  }

  void faith_utumi(Check& c) {
    std::size_t checked = 0;
    for (auto const& [name, M] : fixtures::corpus_modules(64)) {
      if (!quasi_injective(M)) {
        continue;
      }
      auto const r = faith_utumi_radical_check(M);
      c.expect(r.outcome == TheoremOutcome::consistent, name + " decided and consistent");
      if (r.outcome == TheoremOutcome::undecided) {
        continue;
      }
      // Kernel side recomputed from the carrier; radical side from the ring.
      auto const E = endomorphism_ring(M);
      ElementSet essential;
      for (std::size_t i = 0; i < E.carrier.size(); ++i) {
        if (is_essential(M, kernel(E.carrier[i]).members)) {
          essential.insert(static_cast<Elem>(i));
        }
      }
      auto const J = jacobson_radical(*E.ring);
      c.expect(essential == J.members, name + " essential kernels equal J(S)");
      if (E.ring->order() <= 16) {
        c.expect(oracle::jacobson_radical(*E.ring) == essential, name + " matches the maximal-ideal oracle");
      }
      auto const quotient = quotient_ring(*E.ring, J.members);
      c.expect(decide_ring_property(*quotient, RingProperty::vn_regular).status == Status::holds,
               name + " S/J(S) is von Neumann regular");
      ++checked;
    }
    c.expect(checked >= 10, "at least 10 quasi-injective modules");
    c.note(std::to_string(checked) + " modules checked");
  }

  void chart(Check& c) {
    std::size_t rings = 0, strict_vn = 0;
    for (auto const& e : app::builtin_corpus().rings) {
      auto const R = build_ring(e.expr);
      if (R->order() > default_limits().ring_decider_order) {
        continue;
      }
      auto const s = [&](RingProperty p) { return decide_ring_property(*R, p).status; };
      auto const vn = s(RingProperty::vn_regular), sh = s(RingProperty::right_semihereditary),
                 rr = s(RingProperty::right_rickart), ns = s(RingProperty::right_nonsingular),
                 ba = s(RingProperty::baer);
      c.expect(implies(vn, sh), e.name + " vn_regular => right_semihereditary");
      c.expect(implies(sh, rr), e.name + " right_semihereditary => right_rickart");
      c.expect(implies(rr, ns), e.name + " right_rickart => right_nonsingular");
      c.expect(implies(ba, rr), e.name + " baer => right_rickart");
      strict_vn += (sh == Status::holds && vn == Status::fails) ? 1 : 0;
      ++rings;
    }
    auto const Z4 = build_ring(RingExpr::zmod(4));
    c.expect(decide_ring_property(*Z4, RingProperty::right_rickart).status == Status::fails, "zmod(4) not rickart");
    c.expect(decide_ring_property(*Z4, RingProperty::right_nonsingular).status == Status::fails,
             "zmod(4) not nonsingular");
    c.note(std::to_string(rings) + " rings, " + std::to_string(strict_vn)
           + " semihereditary but not regular; baer/rickart and rickart/nonsingular strictness needs infinite "
             "rings (see README)");
  }

  void direct_sums(Check& c) {
    auto const R6 = make_zmod(6);
    auto const a  = check_direct_sum_theorem(FiniteModule::cyclic_sum(R6, {2}), FiniteModule::cyclic_sum(R6, {3}));
    c.expect(a.corollary_condition == Status::holds, "(Z_2, Z_3) annihilators sum to R");
    c.expect(a.annihilator1.members == fixtures::set_of({0, 2, 4}) && a.annihilator2.members == fixtures::set_of({0, 3}),
             "annihilators {0,2,4} and {0,3}");
    c.expect(a.m1_rickart == Status::holds && a.m2_rickart == Status::holds, "(Z_2, Z_3) summands Rickart");
    c.expect(a.condition1 == Status::holds, "(Z_2, Z_3) condition 1");
    c.expect(a.m1_rel_m2 == Status::holds && a.m2_rel_m1 == Status::holds, "(Z_2, Z_3) condition 2");
    c.expect(a.conclusion == Status::holds, "(Z_2, Z_3) sum is Rickart");
    c.expect(a.outcome == TheoremOutcome::consistent, "(Z_2, Z_3) consistent");

    auto const R4 = make_zmod(4);
    auto const b  = check_direct_sum_theorem(FiniteModule::cyclic_sum(R4, {2}), FiniteModule::cyclic_sum(R4, {4}));
    c.expect(b.condition1 == Status::fails, "(Z_2, Z_4) condition 1 fails");
    c.expect(b.m1_rel_m2 == Status::fails || b.m2_rel_m1 == Status::fails, "(Z_2, Z_4) condition 2 fails");
    c.expect(b.conclusion == Status::fails, "(Z_2, Z_4) sum is not Rickart");
    c.expect(b.outcome == TheoremOutcome::hypotheses_not_met, "(Z_2, Z_4) reported as hypotheses not met");
  }

  void oracle_equivalence(Check& c) {
    std::size_t instances = 0, skipped = 0;
    auto        subjects  = fixtures::corpus_modules(64);
    for (auto& p : fixtures::corpus_pair_sums(64)) {
      subjects.push_back(std::move(p));
    }
    for (auto const& [name, M] : subjects) {
      try {
        (void)M.endomorphisms();
      } catch (CapacityError const&) {
        ++skipped;
        continue;
      }
      for (auto const& N : M.submodules()) {
        // is_direct_summand throws when its two routes disagree.
        try {
          auto const r = is_direct_summand(M, N.members);
          c.expect((r.status == Status::holds) == find_complement(M, N.members).has_value()
                       && (r.status == Status::holds) == find_summand_idempotent(M, N.members).has_value(),
                   name + " routes agree");
        } catch (std::logic_error const& e) {
          c.expect(false, name + ": " + e.what());
        }
        ++instances;
      }
    }
    c.expect(instances >= kMinSummandInstances, "at least 200 submodule instances");

    std::size_t torsion = 0;
    for (auto const& z : app::builtin_corpus().zmodules) {
      if (!z.module.is_torsion()) {
        continue;
      }
      std::vector<int> orders(z.module.torsion.begin(), z.module.torsion.end());
      auto const       M = FiniteModule::cyclic_sum(make_zmod(static_cast<int>(z.module.exponent())), orders);
      c.expect(zrickart_check(z.module).status == decide_module_property(M, ModuleProperty::rickart).status,
               z.name + " zrickart agrees with the finite decider");
      ++torsion;
    }
    c.note(std::to_string(instances) + " submodule instances (" + std::to_string(skipped)
           + " subjects past the hom cap), " + std::to_string(torsion) + " torsion z-modules");
  }

  void snf(Check& c) {
    std::mt19937_64 rng(kSnfSeed);
    std::size_t     bad = 0, overflow = 0, oracle_checked = 0;
    for (int t = 0; t < kSnfMatrices; ++t) {
      auto const A = fixtures::random_matrix(rng, 6, 20);
      try {
        auto const r = smith_normal_form(A);
        if (!fixtures::snf_problem(A, r).empty()) {
          ++bad;
          continue;
        }
        if (A.rows() <= 4 && A.cols() <= 4) {
          ++oracle_checked;
          bad += fixtures::nonzero_diagonal(r) == oracle::invariant_factors(A.to_rows()) ? 0 : 1;
        }
      } catch (OverflowError const&) {
        ++overflow;
      }
    }
    c.expect(bad == 0, std::to_string(bad) + " invalid decompositions");
    c.expect(overflow == 0, std::to_string(overflow) + " overflows");
    c.note(std::to_string(kSnfMatrices) + " matrices, " + std::to_string(oracle_checked)
           + " checked against gcd of minors");
  }

}  // namespace

int main() {
  std::vector<Criterion> const criteria{
      {1, "Z+Z_2 is not Rickart", kWitnessSeconds, z_plus_z2},
      {2, "Z_4 is k-local-retractable, not Rickart", kWitnessSeconds, z4_pair},
      {3, "theorem suite green", kSuiteSeconds, suite_green},
      {4, "quasi-injective six-way equivalence", 0, qi_six_way},
      {5, "essential kernels form the Jacobson radical", 0, faith_utumi},
      {6, "ring chart implications", 0, chart},
      {7, "direct-sum theorem instances", 0, direct_sums},
      {8, "oracle equivalence", 0, oracle_equivalence},
      {9, "Smith normal form validity", kSnfSeconds, snf},
  };
  int failed = 0;
  for (auto const& k : criteria) {
    Check      check;
    auto const start = std::chrono::steady_clock::now();
    try {
      k.body(check);
    } catch (std::exception const& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (k.limit_seconds > 0) {
      check.expect(seconds < k.limit_seconds, "runtime under " + std::to_string(k.limit_seconds) + " s");
    }
    bool const pass = check.ok();
    failed += pass ? 0 : 1;
    std::printf("criterion %d %s: %s (%.3f s", k.number, pass ? "PASS" : "FAIL", k.title.c_str(), seconds);
    if (k.limit_seconds > 0) {
      std::printf(", limit %.0f s", k.limit_seconds);
    }
    std::printf(") %s\n", check.summary().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
