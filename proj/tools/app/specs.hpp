#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "rickartlab/endobridge.hpp"
#include "rickartlab/errors.hpp"
#include "rickartlab/finmod.hpp"
#include "rickartlab/finring.hpp"
#include "rickartlab/modprops.hpp"
#include "rickartlab/zmodsnf.hpp"

namespace rickart::app {

  using Json = nlohmann::ordered_json;

  // Input that does not match the file schema. The message names the field.
  class SchemaError : public Error {
   public:
    using Error::Error;
  };

  struct ModuleSpec;
  using ModuleSpecPtr = std::shared_ptr<ModuleSpec const>;

  // Explicit action: images of the generators under the listed ring
  // elements; the rest follow by additivity.
  struct ExplicitModule {
    RingExpr                                                 ring;
    std::vector<int>                                         orders;
    std::vector<std::pair<Elem, FiniteModule::GeneratorImages>> action;
    std::string                                              label;
  };

  // Z_{d_1} x ... x Z_{d_k} over zmod(n) with the natural action.
  struct NaturalModule {
    RingExpr         ring;
    std::vector<int> orders;
  };

  struct RegularModule {
    RingExpr ring;
  };

  struct ZeroModule {
    RingExpr ring;
  };

  struct DirectSumModule {
    ModuleSpecPtr first;
    ModuleSpecPtr second;
  };

  struct ModuleSpec {
    std::variant<ExplicitModule, NaturalModule, RegularModule, ZeroModule, DirectSumModule> node;
  };

  RingExpr const& ring_of(ModuleSpec const& spec);
  FiniteModule    build_module(ModuleSpec const& spec, Limits const& limits = default_limits());

  // Ring files: {"constructor": <expr>} or {"tables": {add, mul, zero, one}}.
  // A string is read as "builtin:<name>" or as constructor text.
  Json     ring_to_json(RingExpr const& expr);
  RingExpr ring_from_json(Json const& j);

  // Module files: {"ring", "cyclic_orders", "action"} with action either
  // "natural" or an object from ring-element index to generator images, or
  // {"regular": ring}, {"zero": ring}, {"direct_sum": [m1, m2]}.
  Json       module_to_json(ModuleSpec const& spec);
  ModuleSpec module_from_json(Json const& j);

  // Z-module files: {"rank": r, "torsion": [d_1, ...]}.
  Json      zmodule_to_json(FgZModule const& M);
  FgZModule zmodule_from_json(Json const& j);

  Json read_json_file(std::string const& path);

  // Report fragments.
  Json ring_verdict_to_json(FiniteRing const& R, RingVerdict const& v);
  Json module_verdict_to_json(FiniteModule const& M, ModuleVerdict const& v);
  Json module_witness_to_json(FiniteModule const& M, ModuleWitness const& w);
  Json homomorphism_to_json(Homomorphism const& f);
  Json submodule_to_json(FiniteModule const& M, ElementSet const& s);
  Json zrickart_to_json(ZRickartResult const& r);
  Json zhom_to_json(ZModHom const& h);

  Json correspondence_to_json(CorrespondenceReport const& r);
  Json quasi_injective_to_json(QuasiInjectiveReport const& r);
  Json faith_utumi_to_json(FaithUtumiReport const& r);
  Json direct_sum_to_json(FiniteModule const& sum, DirectSumReport const& r);

  // Ring file for End(M).
  Json endo_ring_to_json(EndoRing const& S);

}  // namespace rickart::app
