#include "cofinal/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cofinal::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_input(const std::string& what, const std::string& witness = {}) {
  throw Error(ErrorKind::InvalidInput, what, witness);
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_input(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) bad_input(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::map<std::string, std::string> string_map(const Json& j, const char* what) {
  std::map<std::string, std::string> out;
  if (j.is_null()) return out;
  if (!j.is_object()) bad_input(std::string(what) + " must be an object");
  for (const auto& [k, v] : j.items()) out.emplace(k, text(v, what));
  return out;
}

FinCategory parse_standard_category(const Json& j) {
  const std::string kind_name = text(member(j, "standard"), "standard");
  const auto kind = parse_standard_kind(kind_name);
  if (!kind) bad_input("unknown standard category", kind_name);
  StandardParams p;
  if (j.contains("n")) p.n = j.at("n").get<std::size_t>();
  if (j.contains("max_order")) p.max_group_order = j.at("max_order").get<std::size_t>();
  if (j.contains("generators")) {
    for (const auto& g : j.at("generators")) p.generators.push_back(parse_cycles(text(g, "generator"), p.n));
  }
  return build_standard(*kind, p);
}

template <typename Parse>
auto with_reference(const Json& j, const fs::path& base_dir, Parse parse) {
  if (j.is_string()) {
    const fs::path path = base_dir / j.get<std::string>();
    return parse(read_json(path), path.parent_path());
  }
  return parse(j, base_dir);
}

DiagramSpec diagram_spec(const Json& j) {
  DiagramSpec spec;
  const Json& sets = member(j, "sets");
  if (!sets.is_object()) bad_input("\"sets\" must be an object");
  for (const auto& [obj, labels] : sets.items()) {
    auto& out = spec.sets[obj];
    for (const auto& l : labels) out.push_back(text(l, "element"));
  }
  if (j.contains("functions")) {
    for (const auto& [mor, fn] : j.at("functions").items()) spec.functions[mor] = string_map(fn, "function");
  }
  return spec;
}

// The category named under `key`, checked against `given` when both exist.
FinCategory resolve_base(const Json& j, const char* key, const fs::path& dir, const FinCategory* given) {
  if (!given) return parse_category(member(j, key), dir);
  if (j.contains(key) && !(parse_category(j.at(key), dir) == *given)) {
    throw Error(ErrorKind::ShapeMismatch, std::string("\"") + key + "\" differs from the expected category");
  }
  return *given;
}

Json betti_json(const std::vector<std::int64_t>& b) {
  Json out = Json::array();
  for (auto v : b) out.push_back(v);
  return out;
}

}  // namespace

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open file", path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad_input(std::string("malformed JSON: ") + e.what(), path.string());
  }
}

FinCategory parse_category(const Json& j, const fs::path& base_dir) {
  return with_reference(j, base_dir, [](const Json& c, const fs::path&) {
    if (c.contains("standard")) return parse_standard_category(c);
    CategorySpec spec;
    for (const auto& o : member(c, "objects")) spec.objects.push_back(text(o, "object"));
    if (c.contains("morphisms")) {
      for (const auto& m : c.at("morphisms")) {
        spec.morphisms.push_back({text(member(m, "id"), "id"), text(member(m, "src"), "src"),
                                  text(member(m, "tgt"), "tgt")});
      }
    }
    if (c.contains("compose")) {
      for (const auto& t : c.at("compose")) {
        if (!t.is_array() || t.size() != 3) bad_input("composites are [g, f, gf] triples");
        spec.composites.push_back({text(t[0], "g"), text(t[1], "f"), text(t[2], "gf")});
      }
    }
    return validate_category(spec);
  });
}

FinCategory load_category(const fs::path& path) { return parse_category(read_json(path), path.parent_path()); }

FinFunctor parse_functor(const Json& j, const fs::path& base_dir) {
  return with_reference(j, base_dir, [](const Json& f, const fs::path& dir) {
    if (f.contains("standard")) {
      const std::string kind = text(f.at("standard"), "standard");
      if (kind == "fin_inj_inclusion") return fin_inj_inclusion(member(f, "n").get<std::size_t>());
      const FinCategory c = parse_category(member(f, "category"), dir);
      if (kind == "identity") return identity_functor(c);
      if (kind == "terminal") return terminal_functor(c);
      if (kind == "object") return object_functor(c, c.object(text(member(f, "object"), "object")));
      bad_input("unknown standard functor", kind);
    }
    const FinCategory source = parse_category(member(f, "source"), dir);
    const FinCategory target = parse_category(member(f, "target"), dir);
    FunctorSpec spec;
    spec.on_objects = string_map(member(f, "on_objects"), "on_objects");
    if (f.contains("on_morphisms")) spec.on_morphisms = string_map(f.at("on_morphisms"), "on_morphisms");
    return validate_functor(spec, source, target);
  });
}

FinFunctor load_functor(const fs::path& path) { return parse_functor(read_json(path), path.parent_path()); }

SetDiagram parse_diagram(const Json& j, const fs::path& base_dir, const FinCategory* shape) {
  return with_reference(j, base_dir, [shape](const Json& x, const fs::path& dir) {
    return validate_diagram(diagram_spec(x), resolve_base(x, "shape", dir, shape));
  });
}

SetDiagram load_diagram(const fs::path& path, const FinCategory* shape) {
  return parse_diagram(read_json(path), path.parent_path(), shape);
}

Weight parse_weight(const Json& j, const fs::path& base_dir, const FinCategory* base) {
  return with_reference(j, base_dir, [base](const Json& w, const fs::path& dir) {
    const FinCategory c = resolve_base(w, "base", dir, base);
    if (w.contains("representable")) return representable_weight(c, c.object(text(w.at("representable"), "object")));
    if (w.value("constant", false)) return constant_weight(c);
    return Weight(c, validate_diagram(diagram_spec(w), opposite(c)));
  });
}

Weight load_weight(const fs::path& path, const FinCategory* base) {
  return parse_weight(read_json(path), path.parent_path(), base);
}

Json to_json(const FinCategory& c) {
  const CategorySpec spec = describe(c);
  Json out;
  out["objects"] = spec.objects;
  out["morphisms"] = Json::array();
  for (const auto& m : spec.morphisms) out["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  out["compose"] = Json::array();
  for (const auto& t : spec.composites) out["compose"].push_back({t[0], t[1], t[2]});
  return out;
}

Json to_json(const FinFunctor& f) {
  const FunctorSpec spec = describe(f);
  Json out;
  out["on_objects"] = Json::object();
  for (const auto& [k, v] : spec.on_objects) out["on_objects"][k] = v;
  out["on_morphisms"] = Json::object();
  for (const auto& [k, v] : spec.on_morphisms) out["on_morphisms"][k] = v;
  return out;
}

Json to_json(const SetDiagram& x) {
  const DiagramSpec spec = describe(x);
  Json out;
  out["sets"] = Json::object();
  for (const auto& [k, v] : spec.sets) out["sets"][k] = v;
  out["functions"] = Json::object();
  for (const auto& [m, fn] : spec.functions) {
    Json entry = Json::object();
    for (const auto& [a, b] : fn) entry[a] = b;
    out["functions"][m] = entry;
  }
  return out;
}

Json to_json(const AcyclicityCertificate& c) {
  return {{"nonempty", c.nonempty},
          {"connected", c.connected},
          {"reduced_betti", betti_json(c.reduced_betti)},
          {"complete", c.complete},
          {"degree_bound", c.degree_bound},
          {"acyclic", c.acyclic()}};
}

Json to_json(const CofinalityReport& r, const FinCategory& target) {
  Json out;
  out["verdict"] = std::string(to_string(r.verdict));
  out["witness"] = r.witness ? Json(target.name(*r.witness)) : Json(nullptr);
  out["functor"] = {{"source_objects", r.source_objects},
                    {"source_morphisms", r.source_morphisms},
                    {"target_objects", r.target_objects},
                    {"target_morphisms", r.target_morphisms}};
  out["degree_bound"] = r.degree_bound;
  out["fibers"] = Json::array();
  for (const auto& f : r.fibers) {
    Json entry = {{"object", target.name(f.object)},
                  {"fiber_objects", f.fiber_objects},
                  {"components", f.components},
                  {"budget_exceeded", f.budget_exceeded}};
    entry["certificate"] = to_json(f.certificate);
    out["fibers"].push_back(entry);
  }
  if (!r.empirical.empty()) {
    out["seed"] = r.seed;
    out["empirical"] = Json::array();
    for (const auto& t : r.empirical) {
      out["empirical"].push_back({{"seed", t.seed},
                                  {"restricted_size", t.restricted_size},
                                  {"full_size", t.full_size},
                                  {"bijection", t.bijection}});
    }
  }
  return out;
}

Json to_json(const SymStageReport& r) {
  Json out;
  out["complement_dim"] = r.complement_dim;
  out["stage_dims"] = betti_json(r.stage_dims);
  out["map_ranks"] = betti_json(r.map_ranks);
  out["injective"] = r.injective;
  out["new_dims"] = betti_json(r.new_dims);
  out["colimit_dims"] = betti_json(r.colimit_dims);
  return out;
}

Json to_json(const FinInjReport& r) {
  Json out;
  out["n"] = r.n;
  out["degree_bound"] = r.degree_bound;
  out["fibers"] = Json::array();
  for (const auto& f : r.fibers) {
    out["fibers"].push_back({{"subset_size", f.subset_size},
                             {"fiber_objects", f.fiber_objects},
                             {"fiber_morphisms", f.fiber_morphisms},
                             {"components", f.components},
                             {"groupoid", f.groupoid},
                             {"automorphism_order", f.automorphism_order},
                             {"group_order", f.group_order},
                             {"fiber_reduced_betti", betti_json(f.fiber_certificate.reduced_betti)},
                             {"group_reduced_betti", betti_json(f.group_certificate.reduced_betti)},
                             {"agrees", f.agrees()}});
  }
  out["passed"] = r.passed();
  return out;
}

Json to_json(const TrialOutcome& t) {
  return {{"seed", t.seed},
          {"source", {t.source_objects, t.source_morphisms}},
          {"target", {t.target_objects, t.target_morphisms}},
          {"lhs_size", t.lhs_size},
          {"rhs_size", t.rhs_size},
          {"duality", t.duality},
          {"oracle", t.oracle},
          {"quant", t.quant},
          {"quant_consistent", t.quant_consistent}};
}

namespace {

Json classes_json(const FinSetQuotient& q) {
  Json out = Json::array();
  for (std::size_t c = 0; c < q.class_count(); ++c) {
    Json members = Json::array();
    for (std::size_t g : q.members(c)) members.push_back(q.generator(g));
    out.push_back(members);
  }
  return out;
}

}  // namespace

Json colimit_json(const ColimitValue& value, const SetDiagram& x) {
  const FinCategory& c = x.shape();
  Json out;
  out["classes"] = classes_json(value.value);
  out["cocone"] = Json::object();
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    Json leg = Json::object();
    for (std::size_t e = 0; e < x.size(Obj(a)); ++e) leg[x.label(Obj(a), e)] = value.cocone[a][e];
    out["cocone"][c.name(Obj(a))] = leg;
  }
  return out;
}

namespace {

std::string pair_label(const std::string& w, const std::string& x) { return "(" + w + "," + x + ")"; }

}  // namespace

Json weighted_tw_json(const ColimitValue& value, const Weight& w, const SetDiagram& x) {
  const FinCategory& c = w.base();
  Json out;
  out["classes"] = classes_json(value.value);
  out["cocone"] = Json::object();
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const Mor u(m);
    const Obj b = c.src(u);
    const Obj b2 = c.tgt(u);
    Json leg = Json::object();
    for (std::size_t wi = 0; wi < w.size(b2); ++wi) {
      for (std::size_t e = 0; e < x.size(b); ++e) {
        leg[pair_label(w.diagram().label(b2, wi), x.label(b, e))] = value.cocone[m][pair_index(wi, e, x.size(b))];
      }
    }
    out["cocone"][c.name(u)] = leg;
  }
  return out;
}

Json weighted_coend_json(const ColimitValue& value, const Weight& w, const SetDiagram& x) {
  const FinCategory& c = w.base();
  Json out;
  out["classes"] = classes_json(value.value);
  out["cocone"] = Json::object();
  for (std::size_t b = 0; b < c.object_count(); ++b) {
    Json leg = Json::object();
    for (std::size_t wi = 0; wi < w.size(Obj(b)); ++wi) {
      for (std::size_t e = 0; e < x.size(Obj(b)); ++e) {
        leg[pair_label(w.diagram().label(Obj(b), wi), x.label(Obj(b), e))] =
            value.cocone[b][pair_index(wi, e, x.size(Obj(b)))];
      }
    }
    out["cocone"][c.name(Obj(b))] = leg;
  }
  return out;
}

Json class_function_json(const ClassFunction& f, const ColimitValue& from, const ColimitValue& to) {
  Json out = Json::object();
  for (std::size_t c = 0; c < f.image.size(); ++c) {
    out[from.value.class_label(c)] = to.value.class_label(f.image[c]);
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_input("cannot open file", path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InternalInvariant, "SHA-256 failed", path.string());
  }
  std::ostringstream hex;
  for (unsigned int k = 0; k < length; ++k) {
    constexpr char digits[] = "0123456789abcdef";
    hex << digits[digest[k] >> 4] << digits[digest[k] & 0xf];
  }
  return hex.str();
}

}  // namespace cofinal::io
