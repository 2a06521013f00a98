#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"

namespace rickart::app {

  enum class Domain { ring, module, module_pair, zmodule };

  std::string_view to_string(Domain d) noexcept;

  struct Instance {
    std::string    subject;
    TheoremOutcome outcome = TheoremOutcome::undecided;
    Json           details;
  };

  struct RegistryEntry {
    std::string_view id;
    std::string_view claim;
    Domain           domain;
  };

  std::span<RegistryEntry const> registry() noexcept;

  struct EntryResult {
    RegistryEntry         entry;
    std::vector<Instance> instances;

    std::size_t count(TheoremOutcome o) const;
  };

  struct SuiteResult {
    std::string              corpus_version;
    std::vector<EntryResult> entries;
    std::size_t              threads = 1;

    std::size_t violations() const;
  };

  struct SuiteOptions {
    // Registry ids to run; empty means all.
    std::vector<std::string> filter;
    std::size_t              threads = 1;
    int                      bound   = kDefaultBound;
    Limits                   limits  = default_limits();
    // Largest |M1| * |M2| for the direct-sum pairs.
    std::size_t pair_order = 64;
  };

  // RICKARTLAB_THREADS if set to a positive integer, else the hardware count.
  std::size_t default_thread_count();

  // Throws SchemaError on an empty corpus, an unknown filter id, or a corpus
  // entry that does not build within the limits.
  SuiteResult run_suite(Corpus const& corpus, SuiteOptions const& options);

  Json        suite_to_json(SuiteResult const& r);
  std::string suite_to_text(SuiteResult const& r);

}  // namespace rickart::app
