#include "specs.hpp"

#include <fstream>
#include <sstream>

#include "corpus.hpp"

namespace rickart::app {

  namespace {

    constexpr std::string_view kBuiltinPrefix = "builtin:";

    int as_int(Json const& j, std::string const& field) {
      if (!j.is_number_integer()) {
        throw SchemaError("field '" + field + "' must be an integer");
      }
      auto const v = j.get<long long>();
      if (v < -(1LL << 30) || v > (1LL << 30)) {
        throw SchemaError("field '" + field + "' is out of range");
      }
      return static_cast<int>(v);
    }

    Json const& member(Json const& j, char const* key, std::string const& where) {
      if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(where + ": missing field '" + key + "'");
      }
      return j.at(key);
    }

    std::vector<int> int_list(Json const& j, std::string const& field) {
      if (!j.is_array()) {
        throw SchemaError("field '" + field + "' must be an array of integers");
      }
      std::vector<int> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_int(j[i], field + "[" + std::to_string(i) + "]"));
      }
      return out;
    }

    std::vector<std::vector<int>> int_table(Json const& j, std::string const& field) {
      if (!j.is_array()) {
        throw SchemaError("field '" + field + "' must be an array of arrays");
      }
      std::vector<std::vector<int>> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(int_list(j[i], field + "[" + std::to_string(i) + "]"));
      }
      return out;
    }

    Json expr_to_json(RingExpr const& e) {
      return std::visit(
          [](auto const& node) -> Json {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ZmodExpr>) {
              return Json{{"zmod", node.n}};
            } else if constexpr (std::is_same_v<T, ProductExpr>) {
              Json arr = Json::array();
              for (auto const& f : node.factors) {
                arr.push_back(expr_to_json(f));
              }
              return Json{{"product", arr}};
            } else if constexpr (std::is_same_v<T, MatrixExpr>) {
              return Json{{"matrix", {{"base", expr_to_json(*node.base)}, {"k", node.k}}}};
            } else if constexpr (std::is_same_v<T, PolyQuotientExpr>) {
              return Json{{"poly_quotient",
                           {{"base", {{"zmod", node.modulus}}}, {"coefficients", node.coefficients}}}};
            } else {
              return Json{{"table",
                           {{"add", node.add}, {"mul", node.mul}, {"zero", node.zero}, {"one", node.one}}}};
            }
          },
          e.node);
    }

    TableExpr tables_from_json(Json const& t) {
      TableExpr e;
      e.add  = int_table(member(t, "add", "tables"), "tables.add");
      e.mul  = int_table(member(t, "mul", "tables"), "tables.mul");
      e.zero = as_int(member(t, "zero", "tables"), "tables.zero");
      e.one  = as_int(member(t, "one", "tables"), "tables.one");
      return e;
    }

    RingExpr expr_from_json(Json const& j, std::string const& where) {
      if (j.is_string()) {
        auto const s = j.get<std::string>();
        if (s.starts_with(kBuiltinPrefix)) {
          auto r = find_builtin_ring(s.substr(kBuiltinPrefix.size()));
          if (!r) {
            throw SchemaError(where + ": unknown builtin ring '" + s + "'");
          }
          return *r;
        }
        try {
          return parse_ring_expr(s);
        } catch (Error const& e) {
          throw SchemaError(where + ": " + e.what());
        }
      }
      if (!j.is_object() || j.size() != 1) {
        throw SchemaError(where + ": expected one of zmod, product, matrix, poly_quotient, table");
      }
      auto const& [key, value] = *j.items().begin();
      if (key == "zmod") {
        return RingExpr::zmod(as_int(value, where + ".zmod"));
      }
      if (key == "product") {
        if (!value.is_array() || value.empty()) {
          throw SchemaError(where + ".product must be a nonempty array");
        }
        std::vector<RingExpr> factors;
        for (std::size_t i = 0; i < value.size(); ++i) {
          factors.push_back(expr_from_json(value[i], where + ".product[" + std::to_string(i) + "]"));
        }
        return RingExpr::product(std::move(factors));
      }
      if (key == "matrix") {
        return RingExpr::matrix(expr_from_json(member(value, "base", where + ".matrix"), where + ".matrix.base"),
                                as_int(member(value, "k", where + ".matrix"), where + ".matrix.k"));
      }
      if (key == "poly_quotient") {
        auto const base = expr_from_json(member(value, "base", where + ".poly_quotient"),
                                         where + ".poly_quotient.base");
        auto const* z = std::get_if<ZmodExpr>(&base.node);
        if (z == nullptr) {
          throw SchemaError(where + ".poly_quotient.base must be zmod(n)");
        }
        return RingExpr::poly_quotient(
            z->n,
            int_list(member(value, "coefficients", where + ".poly_quotient"),
                     where + ".poly_quotient.coefficients"));
      }
      if (key == "table") {
        return RingExpr{tables_from_json(value)};
      }
      throw SchemaError(where + ": unknown constructor '" + key + "'");
    }

    Json string_list(std::vector<std::string> const& v) {
      Json arr = Json::array();
      for (auto const& s : v) {
        arr.push_back(s);
      }
      return arr;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Rings
  ////////////////////////////////////////////////////////////////////////

  Json ring_to_json(RingExpr const& expr) {
    if (auto const* t = std::get_if<TableExpr>(&expr.node)) {
      return Json{{"tables", {{"add", t->add}, {"mul", t->mul}, {"zero", t->zero}, {"one", t->one}}}};
    }
    return Json{{"constructor", expr_to_json(expr)}};
  }

  RingExpr ring_from_json(Json const& j) {
    if (j.is_string()) {
      return expr_from_json(j, "ring");
    }
    if (!j.is_object()) {
      throw SchemaError("ring: expected an object with 'constructor' or 'tables'");
    }
    if (j.contains("constructor")) {
      return expr_from_json(j.at("constructor"), "constructor");
    }
    if (j.contains("tables")) {
      return RingExpr{tables_from_json(j.at("tables"))};
    }
    throw SchemaError("ring: expected field 'constructor' or 'tables'");
  }

  ////////////////////////////////////////////////////////////////////////
  // Modules
  ////////////////////////////////////////////////////////////////////////

  RingExpr const& ring_of(ModuleSpec const& spec) {
    return std::visit(
        [](auto const& node) -> RingExpr const& {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, DirectSumModule>) {
            return ring_of(*node.first);
          } else {
            return node.ring;
          }
        },
        spec.node);
  }

  FiniteModule build_module(ModuleSpec const& spec, Limits const& limits) {
    return std::visit(
        [&](auto const& node) -> FiniteModule {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ExplicitModule>) {
            return FiniteModule::create_additive(build_ring(node.ring, limits),
                                                 node.orders,
                                                 node.action,
                                                 node.label.empty() ? "module" : node.label,
                                                 limits);
          } else if constexpr (std::is_same_v<T, NaturalModule>) {
            auto const ring = build_ring(node.ring, limits);
            if (!std::holds_alternative<ZmodExpr>(node.ring.node)) {
              throw SchemaError("action 'natural' requires a zmod ring");
            }
            return FiniteModule::cyclic_sum(ring, node.orders, limits);
          } else if constexpr (std::is_same_v<T, RegularModule>) {
            return FiniteModule::regular(build_ring(node.ring, limits), limits);
          } else if constexpr (std::is_same_v<T, ZeroModule>) {
            return FiniteModule::zero(build_ring(node.ring, limits), limits);
          } else {
            return FiniteModule::direct_sum(build_module(*node.first, limits),
                                            build_module(*node.second, limits),
                                            limits);
          }
        },
        spec.node);
  }

  Json module_to_json(ModuleSpec const& spec) {
    return std::visit(
        [](auto const& node) -> Json {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ExplicitModule>) {
            Json action = Json::object();
            for (auto const& [r, imgs] : node.action) {
              action[std::to_string(r)] = imgs;
            }
            Json out{{"ring", ring_to_json(node.ring)}, {"cyclic_orders", node.orders}, {"action", action}};
            if (!node.label.empty()) {
              out["label"] = node.label;
            }
            return out;
          } else if constexpr (std::is_same_v<T, NaturalModule>) {
            return Json{{"ring", ring_to_json(node.ring)}, {"cyclic_orders", node.orders}, {"action", "natural"}};
          } else if constexpr (std::is_same_v<T, RegularModule>) {
            return Json{{"regular", ring_to_json(node.ring)}};
          } else if constexpr (std::is_same_v<T, ZeroModule>) {
            return Json{{"zero", ring_to_json(node.ring)}};
          } else {
            return Json{{"direct_sum", Json::array({module_to_json(*node.first), module_to_json(*node.second)})}};
          }
        },
        spec.node);
  }

  ModuleSpec module_from_json(Json const& j) {
    if (j.is_string()) {
      auto const s = j.get<std::string>();
      if (!s.starts_with(kBuiltinPrefix)) {
        throw SchemaError("module: a string must be builtin:<name>");
      }
      auto m = find_builtin_module(s.substr(kBuiltinPrefix.size()));
      if (!m) {
        throw SchemaError("module: unknown builtin module '" + s + "'");
      }
      return *m;
    }
    if (!j.is_object()) {
      throw SchemaError("module: expected an object");
    }
    if (j.contains("regular")) {
      return ModuleSpec{RegularModule{ring_from_json(j.at("regular"))}};
    }
    if (j.contains("zero")) {
      return ModuleSpec{ZeroModule{ring_from_json(j.at("zero"))}};
    }
    if (j.contains("direct_sum")) {
      auto const& ds = j.at("direct_sum");
      if (!ds.is_array() || ds.size() != 2) {
        throw SchemaError("field 'direct_sum' must be an array of two modules");
      }
      return ModuleSpec{DirectSumModule{std::make_shared<ModuleSpec const>(module_from_json(ds[0])),
                                        std::make_shared<ModuleSpec const>(module_from_json(ds[1]))}};
    }
    auto const ring   = ring_from_json(member(j, "ring", "module"));
    auto const orders = int_list(member(j, "cyclic_orders", "module"), "cyclic_orders");
    auto const& action = member(j, "action", "module");
    if (action.is_string()) {
      if (action.get<std::string>() != "natural") {
        throw SchemaError("field 'action' must be \"natural\" or an object");
      }
      return ModuleSpec{NaturalModule{ring, orders}};
    }
    if (!action.is_object()) {
      throw SchemaError("field 'action' must be \"natural\" or an object");
    }
    ExplicitModule m{ring, orders, {}, j.value("label", std::string{})};
    for (auto const& [key, value] : action.items()) {
      long long r = -1;
      try {
        std::size_t used = 0;
        r                = std::stoll(key, &used);
        if (used != key.size()) {
          r = -1;
        }
      } catch (std::exception const&) {
        r = -1;
      }
      if (r < 0 || r >= static_cast<long long>(ElementSet::kCapacity)) {
        throw SchemaError("field 'action': key '" + key + "' is not a ring element index");
      }
      m.action.emplace_back(static_cast<Elem>(r), int_table(value, "action." + key));
    }
    return ModuleSpec{std::move(m)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Z-modules
  ////////////////////////////////////////////////////////////////////////

  Json zmodule_to_json(FgZModule const& M) {
    return Json{{"rank", M.rank}, {"torsion", M.torsion}};
  }

  FgZModule zmodule_from_json(Json const& j) {
    if (j.is_string()) {
      auto const s = j.get<std::string>();
      if (!s.starts_with(kBuiltinPrefix)) {
        throw SchemaError("zmodule: a string must be builtin:<name>");
      }
      auto z = find_builtin_zmodule(s.substr(kBuiltinPrefix.size()));
      if (!z) {
        throw SchemaError("zmodule: unknown builtin z-module '" + s + "'");
      }
      return *z;
    }
    int const rank = as_int(member(j, "rank", "zmodule"), "rank");
    if (rank < 0) {
      throw SchemaError("field 'rank' must be nonnegative");
    }
    std::vector<std::int64_t> torsion;
    if (j.contains("torsion")) {
      for (auto d : int_list(j.at("torsion"), "torsion")) {
        if (d < 2) {
          throw SchemaError("field 'torsion' entries must be >= 2");
        }
        torsion.push_back(d);
      }
    }
    return FgZModule::canonical(static_cast<std::size_t>(rank), torsion);
  }

  Json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw SchemaError("cannot open file '" + path + "': file not found or unreadable");
    }
    try {
      return Json::parse(in);
    } catch (Json::parse_error const& e) {
      throw SchemaError("file '" + path + "' is not valid JSON: " + e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Report fragments
  ////////////////////////////////////////////////////////////////////////

  Json submodule_to_json(FiniteModule const& M, ElementSet const& s) {
    Json members = Json::array();
    s.for_each([&](Elem e) { members.push_back(M.element_name(e)); });
    return Json{{"size", s.size()}, {"members", members}};
  }

  Json homomorphism_to_json(Homomorphism const& f) {
    Json images = Json::array();
    for (auto y : f.generator_images()) {
      images.push_back(f.target().coordinates(y));
    }
    return Json{{"source", f.source().label()},
                {"source_orders", std::vector<int>(f.source().cyclic_orders().begin(), f.source().cyclic_orders().end())},
                {"target_orders", std::vector<int>(f.target().cyclic_orders().begin(), f.target().cyclic_orders().end())},
                {"generator_images", images},
                {"render", f.render()}};
  }

  Json module_witness_to_json(FiniteModule const& M, ModuleWitness const& w) {
    Json out = Json::object();
    if (!w.maps.empty()) {
      Json maps = Json::array();
      for (auto const& f : w.maps) {
        maps.push_back(homomorphism_to_json(f));
      }
      out["maps"] = maps;
    }
    if (w.submodule) {
      out["submodule"] = submodule_to_json(M, w.submodule->members);
    }
    if (w.submodule2) {
      out["submodule2"] = submodule_to_json(M, w.submodule2->members);
    }
    if (w.element) {
      out["element"] = M.element_name(*w.element);
    }
    out["description"] = w.description;
    return out;
  }

  Json module_verdict_to_json(FiniteModule const& M, ModuleVerdict const& v) {
    Json out{{"property", std::string(to_string(v.property))}, {"status", std::string(to_string(v.status))}};
    if (v.witness) {
      out["witness"] = module_witness_to_json(M, *v.witness);
    }
    if (!v.all_witnesses.empty()) {
      Json all = Json::array();
      for (auto const& w : v.all_witnesses) {
        all.push_back(module_witness_to_json(M, w));
      }
      out["all_witnesses"] = all;
    }
    if (!v.reason.empty()) {
      out["reason"] = v.reason;
    }
    return out;
  }

  Json ring_verdict_to_json(FiniteRing const& R, RingVerdict const& v) {
    Json out{{"property", std::string(to_string(v.property))}, {"status", std::string(to_string(v.status))}};
    auto const& w = v.witness;
    Json        wj = Json::object();
    if (!w.elements.empty()) {
      Json els = Json::array();
      for (auto e : w.elements) {
        els.push_back(Json{{"index", e}, {"name", R.element_name(e)}});
      }
      wj["elements"] = els;
    }
    if (w.ideal) {
      Json members = Json::array();
      w.ideal->members.for_each([&](Elem e) { members.push_back(R.element_name(e)); });
      wj["ideal"] = Json{{"size", w.ideal->size()}, {"members", members}};
    }
    if (!w.certificate.empty()) {
      Json cert = Json::array();
      for (auto const& [a, e] : w.certificate) {
        cert.push_back(Json::array({a, e}));
      }
      wj["certificate"] = cert;
    }
    if (!w.description.empty()) {
      wj["description"] = w.description;
    }
    if (!wj.empty()) {
      out[v.status == Status::unsupported ? "reason" : "witness"] =
          v.status == Status::unsupported ? Json(w.description) : wj;
    }
    return out;
  }

  Json zhom_to_json(ZModHom const& h) {
    return Json{{"source", zmodule_to_json(h.source())},
                {"target", zmodule_to_json(h.target())},
                {"matrix", h.matrix().to_rows()},
                {"render", h.render()}};
  }

  Json zrickart_to_json(ZRickartResult const& r) {
    Json out{{"property", "rickart"},
             {"status", std::string(to_string(r.status))},
             {"branch", r.branch},
             {"bound", r.bound},
             {"maps_checked", r.maps_checked}};
    if (r.witness) {
      Json w{{"map", zhom_to_json(*r.witness)}};
      if (r.kernel) {
        w["kernel"] = Json{{"module", zmodule_to_json(r.kernel->module)},
                           {"module_text", r.kernel->module.to_string()},
                           {"inclusion", zhom_to_json(r.kernel->inclusion)}};
      }
      w["obstruction"] = r.obstruction;
      out["witness"]   = w;
    }
    if (!r.justification.empty()) {
      out["justification"] = r.justification;
    }
    if (!r.reason.empty()) {
      out["reason"] = r.reason;
    }
    return out;
  }

  Json correspondence_to_json(CorrespondenceReport const& r) {
    Json out{{"rickart", std::string(to_string(r.rickart))},
             {"baer", std::string(to_string(r.baer))},
             {"s_right_rickart", std::string(to_string(r.s_right_rickart))},
             {"retractable", std::string(to_string(r.retractable))},
             {"k_local_retractable", std::string(to_string(r.k_local_retractable))},
             {"endo_order", r.endo_order},
             {"flags",
              {{"rickart_gives_s_rickart", r.rickart_gives_s_rickart},
               {"retractable_equivalence", r.retractable_equivalence},
               {"k_local_characterization", r.k_local_characterization},
               {"baer_iff_rickart", r.baer_iff_rickart},
               {"rickart_iff_s_rickart", r.rickart_iff_s_rickart},
               {"equivalence_without_retractable", r.equivalence_without_retractable}}},
             {"outcome", std::string(to_string(r.outcome))}};
    if (!r.reason.empty()) {
      out["reason"] = r.reason;
    }
    return out;
  }

  Json quasi_injective_to_json(QuasiInjectiveReport const& r) {
    Json conds = Json::object();
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      conds[std::string(QuasiInjectiveReport::condition_names()[i])] = std::string(to_string(r.conditions[i]));
    }
    Json out{{"quasi_injective", std::string(to_string(r.quasi_injective))},
             {"conditions", conds},
             {"all_equal", r.all_equal},
             {"outcome", std::string(to_string(r.outcome))}};
    if (!r.reason.empty()) {
      out["reason"] = r.reason;
    }
    return out;
  }

  Json faith_utumi_to_json(FaithUtumiReport const& r) {
    Json out{{"quasi_injective", std::string(to_string(r.quasi_injective))},
             {"essential_kernel_indices", r.essential_kernels.to_vector()},
             {"radical_indices", r.radical.members.to_vector()},
             {"sets_equal", r.sets_equal},
             {"quotient_order", r.quotient_order},
             {"quotient_vn_regular", std::string(to_string(r.quotient_vn_regular))},
             {"outcome", std::string(to_string(r.outcome))}};
    if (!r.reason.empty()) {
      out["reason"] = r.reason;
    }
    return out;
  }

  Json direct_sum_to_json(FiniteModule const& sum, DirectSumReport const& r) {
    auto const& R   = sum.ring();
    auto        ids = [&](RightIdeal const& I) {
      std::vector<std::string> names;
      I.members.for_each([&](Elem e) { names.push_back(R.element_name(e)); });
      return string_list(names);
    };
    Json out{{"m1_rickart", std::string(to_string(r.m1_rickart))},
             {"m2_rickart", std::string(to_string(r.m2_rickart))},
             {"condition1", std::string(to_string(r.condition1))},
             {"m1_is_m2_rickart", std::string(to_string(r.m1_rel_m2))},
             {"m2_is_m1_rickart", std::string(to_string(r.m2_rel_m1))},
             {"corollary_condition", std::string(to_string(r.corollary_condition))},
             {"annihilator1", ids(r.annihilator1)},
             {"annihilator2", ids(r.annihilator2)},
             {"conclusion", std::string(to_string(r.conclusion))},
             {"hypotheses_hold", r.hypotheses_hold},
             {"corollary_hypotheses_hold", r.corollary_hypotheses_hold},
             {"outcome", std::string(to_string(r.outcome))}};
    if (r.condition1_witness) {
      out["condition1_witness"] = submodule_to_json(sum, r.condition1_witness->members);
    }
    if (!r.reason.empty()) {
      out["reason"] = r.reason;
    }
    return out;
  }

  Json endo_ring_to_json(EndoRing const& S) {
    auto const&       R = *S.ring;
    std::size_t const n = R.order();
    Json              add = Json::array(), mul = Json::array();
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<int> ra(n), rm(n);
      for (std::size_t b = 0; b < n; ++b) {
        ra[b] = R.add(static_cast<Elem>(a), static_cast<Elem>(b));
        rm[b] = R.mul(static_cast<Elem>(a), static_cast<Elem>(b));
      }
      add.push_back(ra);
      mul.push_back(rm);
    }
    std::vector<std::string> names;
    for (auto const& f : S.carrier) {
      names.push_back(f.render());
    }
    return Json{{"name", R.label()},
                {"tables", {{"add", add}, {"mul", mul}, {"zero", R.zero()}, {"one", R.one()}}},
                {"elements", string_list(names)}};
  }

}  // namespace rickart::app
