#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cofinal/cofinality.hpp"
#include "cofinal/symalg.hpp"

namespace cofinal::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; throws Error(InvalidInput) on failure.
Json read_json(const std::filesystem::path& path);

// A category reference is one of
//   "path/to/file.json"                     (relative to the referring file)
//   {"standard": "group", "n": 3, "generators": ["(1 2)", "(2 3)"]}
//   {"objects": [...], "morphisms": [...], "compose": [...]}
FinCategory parse_category(const Json& j, const std::filesystem::path& base_dir);
FinCategory load_category(const std::filesystem::path& path);

// A functor is {"source": ref, "target": ref, "on_objects": {...},
// "on_morphisms": {...}} or a descriptor
//   {"standard": "fin_inj_inclusion", "n": 3}
//   {"standard": "identity" | "terminal", "category": ref}
//   {"standard": "object", "category": ref, "object": "a"}
FinFunctor parse_functor(const Json& j, const std::filesystem::path& base_dir);
FinFunctor load_functor(const std::filesystem::path& path);

// A diagram is {"shape": ref, "sets": {...}, "functions": {...}}. When
// `shape` is given the key may be omitted.
SetDiagram parse_diagram(const Json& j, const std::filesystem::path& base_dir,
                         const FinCategory* shape = nullptr);
SetDiagram load_diagram(const std::filesystem::path& path, const FinCategory* shape = nullptr);

// A weight is {"base": ref, "sets": {...}, "functions": {...}} where the
// function listed under u: b → b′ runs W(b′) → W(b), or
//   {"base": ref, "representable": "a"}
//   {"base": ref, "constant": true}
Weight parse_weight(const Json& j, const std::filesystem::path& base_dir, const FinCategory* base = nullptr);
Weight load_weight(const std::filesystem::path& path, const FinCategory* base = nullptr);

Json to_json(const FinCategory& c);
Json to_json(const FinFunctor& f);
Json to_json(const SetDiagram& x);
Json to_json(const AcyclicityCertificate& c);
Json to_json(const CofinalityReport& r, const FinCategory& target);
Json to_json(const SymStageReport& r);
Json to_json(const FinInjReport& r);
Json to_json(const TrialOutcome& t);

/// {"classes": [[generator, …], …], "cocone": {object: {element: class}}}
/// for a colimit whose generators are the elements of `x`.
Json colimit_json(const ColimitValue& value, const SetDiagram& x);
/// Same for a weighted colimit over Tw(I); cocone keys are morphisms of I.
Json weighted_tw_json(const ColimitValue& value, const Weight& w, const SetDiagram& x);
/// Same for a coend quotient; cocone keys are objects of I.
Json weighted_coend_json(const ColimitValue& value, const Weight& w, const SetDiagram& x);
Json class_function_json(const ClassFunction& f, const ColimitValue& from, const ColimitValue& to);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace cofinal::io
