#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "corpus.hpp"
#include "rickartlab/version.hpp"
#include "specs.hpp"
#include "suite.hpp"

namespace rickart::app {

  namespace {

    constexpr std::string_view kBuiltin = "builtin:";

    struct Common {
      bool        json          = false;
      int         bound         = kDefaultBound;
      std::size_t cap_module    = 0;
      bool        all_witnesses = false;
    };

    Limits limits_for(Common const& c) {
      Limits l = default_limits();
      if (c.cap_module > 0) {
        l.module_order = c.cap_module;
      }
      return l;
    }

    // "builtin:<name>" stays a JSON string; anything else is a file path.
    Json load_source(std::string const& src) {
      if (src.starts_with(kBuiltin)) {
        return Json(src);
      }
      return read_json_file(src);
    }

    int exit_for(Status s) {
      switch (s) {
        case Status::holds:
          return kExitHolds;
        case Status::fails:
          return kExitFails;
        case Status::undecided:
          return kExitUndecided;
        case Status::unsupported:
          return kExitError;
      }
      return kExitError;
    }

    int exit_for(TheoremOutcome o) {
      switch (o) {
        case TheoremOutcome::violation:
          return kExitFails;
        case TheoremOutcome::undecided:
          return kExitUndecided;
        default:
          return kExitHolds;
      }
    }

    class Timer {
     public:
      double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
      }

     private:
      std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
    };

    Json envelope(std::string command, Json const& input, Json result, Timer const& t) {
      return Json{{"engine_version", std::string(kEngineVersion)},
                  {"command", std::move(command)},
                  {"input_digest", fnv1a_hex(input.dump())},
                  {"result", std::move(result)},
                  {"timing_ms", t.elapsed_ms()}};
    }

    void print_json(std::ostream& out, Json const& j) {
      out << j.dump(2) << "\n";
    }

    ////////////////////////////////////////////////////////////////////
    // check ring
    ////////////////////////////////////////////////////////////////////

    int check_ring(std::string const& src, std::string const& prop, Common const& c, std::ostream& out,
                   std::ostream& err) {
      auto const p = ring_property_from_string(prop);
      if (!p) {
        err << "error: unknown ring property '" << prop << "'\n";
        return kExitError;
      }
      Timer      t;
      auto const input = load_source(src);
      auto const expr  = ring_from_json(input);
      auto const R     = build_ring(expr, limits_for(c));
      auto const v     = decide_ring_property(*R, *p, limits_for(c));
      if (v.status == Status::unsupported) {
        err << "error: " << v.witness.description << "\n";
        return kExitError;
      }
      if (c.json) {
        Json res = ring_verdict_to_json(*R, v);
        res["ring"] = R->label();
        print_json(out, envelope("check ring", Json{{"source", input}, {"property", prop}}, res, t));
      } else {
        out << R->label() << " " << prop << ": " << to_string(v.status) << "\n";
        if (v.status == Status::fails) {
          out << "witness:";
          for (auto e : v.witness.elements) {
            out << " " << R->element_name(e);
          }
          out << "\n";
          if (!v.witness.description.empty()) {
            out << "  " << v.witness.description << "\n";
          }
        }
      }
      return exit_for(v.status);
    }

    ////////////////////////////////////////////////////////////////////
    // check module
    ////////////////////////////////////////////////////////////////////

    void print_witness_text(std::ostream& out, FiniteModule const& M, ModuleWitness const& w) {
      out << "witness: " << w.description << "\n";
      for (auto const& f : w.maps) {
        out << "  map: " << f.render() << "\n";
      }
      if (w.submodule) {
        out << "  submodule: " << describe(M, w.submodule->members) << "\n";
      }
      if (w.element) {
        out << "  element: " << M.element_name(*w.element) << "\n";
      }
    }

    int module_report(ModuleSpec const& spec, FiniteModule const& M, std::string const& kind, Json const& input,
                      Common const& c, Timer const& t, std::ostream& out, std::ostream& err) {
      Json           res;
      TheoremOutcome outcome = TheoremOutcome::undecided;
      std::string    reason;
      if (kind == "correspondence") {
        auto const r = correspondence_report(M);
        res          = correspondence_to_json(r);
        outcome      = r.outcome;
        reason       = r.reason;
      } else if (kind == "quasi-injective") {
        auto const r = quasi_injective_equivalence_report(M);
        res          = quasi_injective_to_json(r);
        outcome      = r.outcome;
        reason       = r.reason;
      } else if (kind == "faith-utumi") {
        auto const r = faith_utumi_radical_check(M);
        res          = faith_utumi_to_json(r);
        outcome      = r.outcome;
        reason       = r.reason;
      } else if (kind == "direct-sum") {
        auto const* ds = std::get_if<DirectSumModule>(&spec.node);
        if (ds == nullptr) {
          err << "error: --report direct-sum needs a module given as {\"direct_sum\": [m1, m2]}\n";
          return kExitError;
        }
        auto const M1 = build_module(*ds->first, limits_for(c));
        auto const M2 = build_module(*ds->second, limits_for(c));
        auto const r  = check_direct_sum_theorem(M1, M2);
        res           = direct_sum_to_json(FiniteModule::direct_sum(M1, M2, limits_for(c)), r);
        outcome       = r.outcome;
        reason        = r.reason;
      } else {
        err << "error: unknown report '" << kind
            << "' (expected correspondence, quasi-injective, faith-utumi, direct-sum)\n";
        return kExitError;
      }
      if (outcome == TheoremOutcome::undecided && reason.find("capacity") != std::string::npos) {
        err << "error: " << reason << "\n";
        return kExitError;
      }
      if (c.json) {
        print_json(out, envelope("check module", Json{{"source", input}, {"report", kind}}, res, t));
      } else {
        out << M.label() << " " << kind << ": " << to_string(outcome) << "\n";
        for (auto const& [key, value] : res.items()) {
          if (key != "outcome") {
            out << "  " << key << ": " << value.dump() << "\n";
          }
        }
      }
      return exit_for(outcome);
    }

    int check_module(std::string const& src, std::string const& prop, std::string const& report, Common const& c,
                     std::ostream& out, std::ostream& err) {
      Timer      t;
      auto const input = load_source(src);
      auto const spec  = module_from_json(input);
      auto const M     = build_module(spec, limits_for(c));
      if (!report.empty()) {
        return module_report(spec, M, report, input, c, t, out, err);
      }
      auto const p = module_property_from_string(prop);
      if (!p) {
        err << "error: unknown module property '" << prop << "'\n";
        return kExitError;
      }
      auto const v = decide_module_property(M, *p, DecideOptions{c.all_witnesses});
      if (v.status == Status::unsupported) {
        err << "error: " << v.reason << "\n";
        return kExitError;
      }
      if (c.json) {
        Json res      = module_verdict_to_json(M, v);
        res["module"] = M.label();
        print_json(out, envelope("check module", Json{{"source", input}, {"property", prop}}, res, t));
      } else {
        out << M.label() << " " << prop << ": " << to_string(v.status) << "\n";
        if (v.witness) {
          print_witness_text(out, M, *v.witness);
        }
        for (std::size_t i = 1; i < v.all_witnesses.size(); ++i) {
          print_witness_text(out, M, v.all_witnesses[i]);
        }
      }
      return exit_for(v.status);
    }

    ////////////////////////////////////////////////////////////////////
    // check zmodule
    ////////////////////////////////////////////////////////////////////

    int check_zmodule(std::string const& src, std::string const& prop, Common const& c, std::ostream& out,
                      std::ostream& err) {
      if (prop != "rickart") {
        err << "error: z-modules support only --property rickart\n";
        return kExitError;
      }
      if (c.bound < 0) {
        err << "error: --bound must be nonnegative\n";
        return kExitError;
      }
      Timer      t;
      auto const input = load_source(src);
      auto const M     = zmodule_from_json(input);
      auto const r     = zrickart_check(M, c.bound, limits_for(c));
      if (r.status == Status::unsupported) {
        err << "error: " << r.reason << "\n";
        return kExitError;
      }
      if (c.json) {
        Json res      = zrickart_to_json(r);
        res["module"] = M.to_string();
        print_json(out,
                   envelope("check zmodule", Json{{"source", input}, {"property", prop}, {"bound", c.bound}}, res, t));
      } else {
        out << M.to_string() << " rickart: " << to_string(r.status) << " (" << r.branch << " branch, "
            << r.maps_checked << " maps checked)\n";
        if (r.witness) {
          out << "witness: " << r.witness->render() << "\n";
          if (r.kernel) {
            out << "  kernel: " << r.kernel->module.to_string() << " via " << r.kernel->inclusion.render() << "\n";
          }
          out << "  obstruction: " << r.obstruction << "\n";
        }
        if (!r.justification.empty()) {
          out << "justification: " << r.justification << "\n";
        }
      }
      return exit_for(r.status);
    }

    ////////////////////////////////////////////////////////////////////
    // suite, endo-ring, list-builtins
    ////////////////////////////////////////////////////////////////////

    Corpus load_corpus(std::vector<std::string> const& sources) {
      Corpus merged;
      for (auto const& src : sources) {
        Corpus const c = src == "builtin" ? builtin_corpus() : corpus_from_json(read_json_file(src));
        merged.version = merged.version.empty() ? c.version : merged.version + "+" + c.version;
        merged.rings.insert(merged.rings.end(), c.rings.begin(), c.rings.end());
        merged.modules.insert(merged.modules.end(), c.modules.begin(), c.modules.end());
        merged.zmodules.insert(merged.zmodules.end(), c.zmodules.begin(), c.zmodules.end());
      }
      return merged;
    }

    std::vector<std::string> split_ids(std::vector<std::string> const& raw) {
      std::vector<std::string> ids;
      for (auto const& item : raw) {
        std::stringstream ss(item);
        std::string       id;
        while (std::getline(ss, id, ',')) {
          if (!id.empty()) {
            ids.push_back(id);
          }
        }
      }
      return ids;
    }

    int run_suite_command(std::vector<std::string> const& sources, std::vector<std::string> const& filter,
                          Common const& c, std::ostream& out) {
      Timer        t;
      auto const   corpus = load_corpus(sources);
      SuiteOptions opts;
      opts.filter  = split_ids(filter);
      opts.threads = default_thread_count();
      opts.bound   = c.bound;
      opts.limits  = limits_for(c);
      auto const r = run_suite(corpus, opts);
      if (c.json) {
        Json input{{"corpus", corpus_to_json(corpus)}, {"filter", opts.filter}, {"bound", c.bound}};
        print_json(out, envelope("suite", input, suite_to_json(r), t));
      } else {
        out << suite_to_text(r);
      }
      return r.violations() == 0 ? kExitHolds : kExitFails;
    }

    int endo_ring_command(std::string const& src, std::string const& path, Common const& c, std::ostream& out,
                          std::ostream& err) {
      auto const input = load_source(src);
      auto const M     = build_module(module_from_json(input), limits_for(c));
      auto const S     = endomorphism_ring(M);
      Json const file  = endo_ring_to_json(S);
      if (path.empty() || path == "-") {
        print_json(out, file);
        return kExitHolds;
      }
      std::ofstream f(path);
      if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return kExitError;
      }
      f << file.dump(2) << "\n";
      out << "wrote " << S.ring->label() << " (order " << S.ring->order() << ") to " << path << "\n";
      return kExitHolds;
    }

    int list_builtins(Common const& c, std::ostream& out) {
      auto const& corpus = builtin_corpus();
      if (c.json) {
        print_json(out, corpus_to_json(corpus));
        return kExitHolds;
      }
      out << "corpus " << corpus.version << "\n";
      out << "rings:\n";
      for (auto const& r : corpus.rings) {
        out << "  " << r.name << "  " << to_string(r.expr) << "\n";
      }
      out << "modules:\n";
      for (auto const& m : corpus.modules) {
        out << "  " << m.name << "  " << module_to_json(m.spec).dump() << "\n";
      }
      out << "zmodules:\n";
      for (auto const& z : corpus.zmodules) {
        out << "  " << z.name << "  " << z.module.to_string() << "\n";
      }
      out << "theorems:\n";
      for (auto const& e : registry()) {
        out << "  " << e.id << "  [" << to_string(e.domain) << "] " << e.claim << "\n";
      }
      return kExitHolds;
    }

  }  // namespace

  std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact deciders for Rickart and Baer properties of finite rings and modules", "rickartlab"};
    app.require_subcommand(1);
    Common c;
    app.add_flag("--json", c.json, "Machine-readable JSON report");

    std::string kind, source, property, report, out_path;
    auto*       check = app.add_subcommand("check", "Decide a property of a ring, module or Z-module");
    check->add_option("kind", kind, "ring | module | zmodule")
        ->required()
        ->check(CLI::IsMember({"ring", "module", "zmodule"}));
    check->add_option("source", source, "JSON file or builtin:<name>")->required();
    auto* prop_opt = check->add_option("--property,-p", property, "Property tag");
    check->add_option("--report", report, "correspondence | quasi-injective | faith-utumi | direct-sum")
        ->excludes(prop_opt);
    check->add_option("--bound", c.bound, "Entry bound for the Z-module sweep");
    check->add_option("--cap-module", c.cap_module, "Largest module order");
    check->add_flag("--all-witnesses", c.all_witnesses, "Report every counterexample");
    check->add_flag("--json", c.json, "Machine-readable JSON report");

    std::vector<std::string> corpora{"builtin"}, filter;
    auto* suite = app.add_subcommand("suite", "Evaluate the theorem registry over a corpus");
    suite->add_option("--corpus", corpora, "builtin or corpus JSON files")->expected(1, -1);
    suite->add_option("--filter", filter, "Theorem ids (comma separated)")->expected(1, -1);
    suite->add_option("--bound", c.bound, "Entry bound for the Z-module sweep");
    suite->add_option("--cap-module", c.cap_module, "Largest module order");
    suite->add_flag("--all-witnesses", c.all_witnesses, "Report every counterexample");
    suite->add_flag("--json", c.json, "Machine-readable JSON report");

    auto* endo = app.add_subcommand("endo-ring", "Export End(M) as a ring file");
    endo->add_option("module", source, "Module JSON file or builtin:<name>")->required();
    endo->add_option("--out,-o", out_path, "Output file (default: standard output)");
    endo->add_option("--cap-module", c.cap_module, "Largest module order");

    auto* list = app.add_subcommand("list-builtins", "List the builtin corpus and theorem registry");
    list->add_flag("--json", c.json, "Machine-readable JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return kExitHolds;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitHolds;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }

    try {
      if (check->parsed()) {
        if (kind == "module" && property.empty() && report.empty()) {
          err << "error: check module needs --property or --report\n";
          return kExitError;
        }
        if (kind != "module" && !report.empty()) {
          err << "error: --report applies to modules only\n";
          return kExitError;
        }
        if (kind != "module" && property.empty()) {
          err << "error: check " << kind << " needs --property\n";
          return kExitError;
        }
        if (kind == "ring") {
          return check_ring(source, property, c, out, err);
        }
        if (kind == "module") {
          return check_module(source, property, report, c, out, err);
        }
        return check_zmodule(source, property, c, out, err);
      }
      if (suite->parsed()) {
        return run_suite_command(corpora, filter, c, out);
      }
      if (endo->parsed()) {
        return endo_ring_command(source, out_path, c, out, err);
      }
      return list_builtins(c, out);
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }

}  // namespace rickart::app
