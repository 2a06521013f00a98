#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specs.hpp"

namespace rickart::app {

  struct RingEntry {
    std::string name;
    RingExpr    expr;
  };

  struct ModuleEntry {
    std::string name;
    ModuleSpec  spec;
  };

  struct ZModuleEntry {
    std::string name;
    FgZModule   module;
  };

  struct Corpus {
    std::string               version;
    std::vector<RingEntry>    rings;
    std::vector<ModuleEntry>  modules;
    std::vector<ZModuleEntry> zmodules;

    bool empty() const noexcept {
      return rings.empty() && modules.empty() && zmodules.empty();
    }
  };

  Corpus const& builtin_corpus();

  std::optional<RingExpr>   find_builtin_ring(std::string_view name);
  std::optional<ModuleSpec> find_builtin_module(std::string_view name);
  std::optional<FgZModule>  find_builtin_zmodule(std::string_view name);

  // {"version", "rings": [{"name", "ring"}], "modules": [{"name", "module"}],
  //  "zmodules": [{"name", "zmodule"}]}
  Json   corpus_to_json(Corpus const& c);
  Corpus corpus_from_json(Json const& j);

}  // namespace rickart::app
