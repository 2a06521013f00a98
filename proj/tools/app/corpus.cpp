#include "corpus.hpp"

#include <set>

namespace rickart::app {

  namespace {

    // Upper-triangular 2x2 matrices over zmod(2); [[a,b],[0,d]] has index
    // 4a + 2b + d.
    RingExpr upper_triangular_z2() {
      TableExpr t;
      t.add.assign(8, std::vector<int>(8));
      t.mul.assign(8, std::vector<int>(8));
      for (int x = 0; x < 8; ++x) {
        for (int y = 0; y < 8; ++y) {
          int const a = x >> 2, b = (x >> 1) & 1, d = x & 1;
          int const p = y >> 2, q = (y >> 1) & 1, s = y & 1;
          t.add[x][y] = x ^ y;
          t.mul[x][y] = ((a & p) << 2) | ((((a & q) ^ (b & s))) << 1) | (d & s);
        }
      }
      t.zero = 0;
      t.one  = 5;
      return RingExpr{std::move(t)};
    }

    RingExpr z2_power(int k) {
      return RingExpr::product(std::vector<RingExpr>(static_cast<std::size_t>(k), RingExpr::zmod(2)));
    }

    ModuleSpec natural(RingExpr ring, std::vector<int> orders) {
      return ModuleSpec{NaturalModule{std::move(ring), std::move(orders)}};
    }

    // Row vectors over M_2(zmod(2)); A = [[a,b],[c,d]] has index 8a+4b+2c+d.
    ModuleSpec row_module() {
      ExplicitModule m{RingExpr::matrix(RingExpr::zmod(2), 2), {2, 2}, {}, "row vectors over M_2(Z_2)"};
      for (int bit = 0; bit < 4; ++bit) {
        int const A = 1 << bit;
        int const a = (A >> 3) & 1, b = (A >> 2) & 1, c = (A >> 1) & 1, d = A & 1;
        m.action.emplace_back(static_cast<Elem>(A), FiniteModule::GeneratorImages{{a, b}, {c, d}});
      }
      return ModuleSpec{std::move(m)};
    }

    // e_11 T as a right module over T = T_2(zmod(2)): (x,y)[[a,b],[0,d]] =
    // (xa, xb + yd).
    ModuleSpec first_row_module() {
      ExplicitModule m{upper_triangular_z2(), {2, 2}, {}, "e11 T_2(Z_2)"};
      for (int A : {4, 2, 1}) {
        int const a = A >> 2, b = (A >> 1) & 1, d = A & 1;
        m.action.emplace_back(static_cast<Elem>(A), FiniteModule::GeneratorImages{{a, b}, {0, d}});
      }
      return ModuleSpec{std::move(m)};
    }

    Corpus make_builtin() {
      Corpus c;
      c.version = "rickartlab-corpus-1";
      for (int n = 1; n <= 12; ++n) {
        c.rings.push_back({"z" + std::to_string(n), RingExpr::zmod(n)});
      }
      for (int k = 2; k <= 4; ++k) {
        c.rings.push_back({"z2pow" + std::to_string(k), z2_power(k)});
      }
      c.rings.push_back({"m2_z2", RingExpr::matrix(RingExpr::zmod(2), 2)});
      c.rings.push_back({"z2_dual", RingExpr::poly_quotient(2, {1, 0, 0})});
      c.rings.push_back({"f4", RingExpr::poly_quotient(2, {1, 1, 1})});
      c.rings.push_back({"z3_dual", RingExpr::poly_quotient(3, {1, 0, 0})});
      c.rings.push_back({"z4_dual", RingExpr::poly_quotient(4, {1, 0, 0})});
      c.rings.push_back({"gr_4_2", RingExpr::poly_quotient(4, {1, 1, 1})});
      c.rings.push_back({"z2_z4", RingExpr::product({RingExpr::zmod(2), RingExpr::zmod(4)})});
      c.rings.push_back({"t2_z2", upper_triangular_z2()});

      for (auto const& r : c.rings) {
        c.modules.push_back({"reg_" + r.name, ModuleSpec{RegularModule{r.expr}}});
      }
      c.modules.push_back({"z2_z2", natural(RingExpr::zmod(2), {2, 2})});
      c.modules.push_back({"z2_z4", natural(RingExpr::zmod(4), {2, 4})});
      c.modules.push_back({"z4", natural(RingExpr::zmod(4), {4})});
      c.modules.push_back({"z2_z3_over_z6", natural(RingExpr::zmod(6), {2, 3})});
      c.modules.push_back({"zero_z2", ModuleSpec{ZeroModule{RingExpr::zmod(2)}}});
      c.modules.push_back({"z2_over_z4", natural(RingExpr::zmod(4), {2})});
      c.modules.push_back({"z2_over_z6", natural(RingExpr::zmod(6), {2})});
      c.modules.push_back({"z3_over_z6", natural(RingExpr::zmod(6), {3})});
      c.modules.push_back({"z2_z8", natural(RingExpr::zmod(8), {2, 8})});
      c.modules.push_back({"row_over_m2_z2", row_module()});
      c.modules.push_back({"e11r_over_t2_z2", first_row_module()});

      c.zmodules = {
          {"z", FgZModule::canonical(1, {})},
          {"z_pow2", FgZModule::canonical(2, {})},
          {"z_plus_z2", FgZModule::canonical(1, {2})},
          {"z2_plus_z4", FgZModule::canonical(0, {2, 4})},
          {"z2", FgZModule::canonical(0, {2})},
          {"z4", FgZModule::canonical(0, {4})},
          {"z6", FgZModule::canonical(0, {6})},
          {"z_plus_z4", FgZModule::canonical(1, {4})},
      };
      return c;
    }

    template <typename Entry>
    auto const* find_entry(std::vector<Entry> const& entries, std::string_view name) {
      for (auto const& e : entries) {
        if (e.name == name) {
          return &e;
        }
      }
      return static_cast<Entry const*>(nullptr);
    }

    std::string entry_name(Json const& j, std::string const& where, std::set<std::string>& seen) {
      if (!j.is_object() || !j.contains("name") || !j.at("name").is_string()) {
        throw SchemaError(where + ": missing string field 'name'");
      }
      auto name = j.at("name").get<std::string>();
      if (!seen.insert(name).second) {
        throw SchemaError(where + ": duplicate name '" + name + "'");
      }
      return name;
    }

    Json const& entry_body(Json const& j, char const* key, std::string const& where) {
      if (!j.contains(key)) {
        throw SchemaError(where + ": missing field '" + key + "'");
      }
      return j.at(key);
    }

  }  // namespace

  Corpus const& builtin_corpus() {
    static Corpus const corpus = make_builtin();
    return corpus;
  }

  std::optional<RingExpr> find_builtin_ring(std::string_view name) {
    if (auto const* e = find_entry(builtin_corpus().rings, name)) {
      return e->expr;
    }
    return std::nullopt;
  }

  std::optional<ModuleSpec> find_builtin_module(std::string_view name) {
    if (auto const* e = find_entry(builtin_corpus().modules, name)) {
      return e->spec;
    }
    return std::nullopt;
  }

  std::optional<FgZModule> find_builtin_zmodule(std::string_view name) {
    if (auto const* e = find_entry(builtin_corpus().zmodules, name)) {
      return e->module;
    }
    return std::nullopt;
  }

  Json corpus_to_json(Corpus const& c) {
    Json rings = Json::array(), modules = Json::array(), zmodules = Json::array();
    for (auto const& r : c.rings) {
      rings.push_back(Json{{"name", r.name}, {"ring", ring_to_json(r.expr)}});
    }
    for (auto const& m : c.modules) {
      modules.push_back(Json{{"name", m.name}, {"module", module_to_json(m.spec)}});
    }
    for (auto const& z : c.zmodules) {
      zmodules.push_back(Json{{"name", z.name}, {"zmodule", zmodule_to_json(z.module)}});
    }
    return Json{{"version", c.version}, {"rings", rings}, {"modules", modules}, {"zmodules", zmodules}};
  }

  Corpus corpus_from_json(Json const& j) {
    if (!j.is_object()) {
      throw SchemaError("corpus: expected an object");
    }
    Corpus c;
    c.version = j.value("version", std::string{"unversioned"});
    std::set<std::string> seen;
    auto list = [&](char const* key) -> Json {
      if (!j.contains(key)) {
        return Json::array();
      }
      if (!j.at(key).is_array()) {
        throw SchemaError(std::string("corpus: field '") + key + "' must be an array");
      }
      return j.at(key);
    };
    auto const rings = list("rings");
    for (std::size_t i = 0; i < rings.size(); ++i) {
      auto const where = "rings[" + std::to_string(i) + "]";
      auto       name  = entry_name(rings[i], where, seen);
      c.rings.push_back({std::move(name), ring_from_json(entry_body(rings[i], "ring", where))});
    }
    seen.clear();
    auto const modules = list("modules");
    for (std::size_t i = 0; i < modules.size(); ++i) {
      auto const where = "modules[" + std::to_string(i) + "]";
      auto       name  = entry_name(modules[i], where, seen);
      c.modules.push_back({std::move(name), module_from_json(entry_body(modules[i], "module", where))});
    }
    seen.clear();
    auto const zmodules = list("zmodules");
    for (std::size_t i = 0; i < zmodules.size(); ++i) {
      auto const where = "zmodules[" + std::to_string(i) + "]";
      auto       name  = entry_name(zmodules[i], where, seen);
      c.zmodules.push_back({std::move(name), zmodule_from_json(entry_body(zmodules[i], "zmodule", where))});
    }
    return c;
  }

}  // namespace rickart::app
