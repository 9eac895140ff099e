// Command-line entry point. Every subcommand prints one JSON report on
// stdout (or a short summary with --format summary) and exits 0 when its
// checks pass, 1 when a check fails, 2 on usage or input errors.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "cofinal/io.hpp"

#ifndef COFINAL_VERSION
#define COFINAL_VERSION "0.0.0"
#endif

namespace {

using cofinal::io::Json;
namespace fs = std::filesystem;
using namespace cofinal;

struct Outcome {
  Json result = Json::object();
  Json verdicts = Json::object();
  bool passed = true;
  Json witness = nullptr;
  std::optional<std::uint64_t> seed;
  std::string summary;
};

struct Options {
  std::string format = "json";
  bool quiet = false;
  bool timing = false;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t degree = kDefaultDegree;

  fs::path category, functor, diagram, weight;
  std::string object;
  std::string variance = "lax";
  std::string method = "both";
  std::string mode = "classical";
  std::size_t set_size = 1;
  std::size_t max_objects = 4, max_morphisms = 14, max_carrier = 4;
  std::size_t threads = 0;
  std::size_t complement_dim = 0, stages = 4;
  bool oracle_only = false;
  std::size_t n = 3;
  std::string kind;
  std::vector<std::string> generators;
};

std::vector<fs::path> g_inputs;

fs::path input(const fs::path& p) {
  g_inputs.push_back(p);
  return p;
}

std::size_t simplex_budget() {
  if (const char* env = std::getenv("COFINAL_BUDGET")) return std::stoul(env);
  return kDefaultSimplexBudget;
}

std::size_t tensor_budget() {
  if (const char* env = std::getenv("COFINAL_BUDGET")) return std::stoul(env);
  return kDefaultTensorBudget;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream out;
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
  return out.str();
}

// ---------------------------------------------------------------------------

Outcome run_comma(const Options& o) {
  const FinFunctor f = io::load_functor(input(o.functor));
  const Obj a = f.target().object(o.object);
  if (o.variance != "lax" && o.variance != "oplax") throw CLI::ValidationError("--variance", "lax or oplax");
  const CommaResult r = comma(f, a, o.variance == "lax" ? Variance::lax : Variance::oplax);
  Outcome out;
  out.result["category"] = io::to_json(r.category);
  out.result["projection"] = io::to_json(r.projection);
  out.summary = o.variance + " fiber over " + o.object + ": " + std::to_string(r.category.object_count()) +
                " objects, " + std::to_string(r.category.morphism_count()) + " morphisms";
  return out;
}

Outcome run_tw(const Options& o) {
  const FinCategory c = io::load_category(input(o.category));
  const TwistedArrowResult tw = twisted_arrow(c);
  Outcome out;
  out.result["category"] = io::to_json(tw.category);
  out.result["projection"] = io::to_json(tw.projection_ts);
  out.summary = "Tw: " + std::to_string(tw.category.object_count()) + " objects, " +
                std::to_string(tw.category.morphism_count()) + " morphisms";
  return out;
}

Outcome run_colim(const Options& o) {
  std::optional<FinCategory> shape;
  if (!o.category.empty()) shape = io::load_category(input(o.category));
  const SetDiagram x = io::load_diagram(input(o.diagram), shape ? &*shape : nullptr);
  const ColimitValue v = colimit(x);
  Outcome out;
  out.result = io::colimit_json(v, x);
  out.summary = "colimit: " + std::to_string(v.size()) + " classes";
  return out;
}

Outcome run_wcolim(const Options& o) {
  const SetDiagram x = io::load_diagram(input(o.diagram));
  const Weight w = io::load_weight(input(o.weight), &x.shape());
  if (o.method != "tw" && o.method != "coend" && o.method != "both") {
    throw CLI::ValidationError("--method", "tw, coend or both");
  }
  Outcome out;
  std::optional<ColimitValue> tw, coend;
  if (o.method != "coend") {
    tw = weighted_colimit_tw(w, x);
    out.result["tw"] = io::weighted_tw_json(*tw, w, x);
  }
  if (o.method != "tw") {
    coend = weighted_colimit_coend(w, x);
    out.result["coend"] = io::weighted_coend_json(*coend, w, x);
  }
  if (tw && coend) {
    const ClassFunction map = tw_to_coend(w, x, *tw, *coend);
    out.result["comparison"] = io::class_function_json(map, *tw, *coend);
    out.verdicts["tw_coend_bijection"] = map.bijective();
    out.passed = map.bijective();
  }
  out.summary = "weighted colimit: " + std::to_string(tw ? tw->size() : coend->size()) + " classes";
  if (tw && coend) out.summary += out.passed ? " (tw and coend agree)" : " (tw and coend DISAGREE)";
  return out;
}

Outcome run_lan(const Options& o) {
  const FinFunctor f = io::load_functor(input(o.functor));
  const SetDiagram x = io::load_diagram(input(o.diagram), &f.source());
  const LanResult r = lan(f, x);
  Outcome out;
  out.result["diagram"] = io::to_json(r.diagram);
  Json unit = Json::object();
  const FinCategory& j = f.source();
  for (std::size_t b = 0; b < j.object_count(); ++b) {
    Json leg = Json::object();
    for (std::size_t e = 0; e < x.size(Obj(b)); ++e) {
      leg[x.label(Obj(b), e)] = r.diagram.label(f(Obj(b)), r.unit[b][e]);
    }
    unit[j.name(Obj(b))] = leg;
  }
  out.result["unit"] = unit;
  const ColimitValue before = colimit(x);
  const ColimitValue after = colimit(r.diagram);
  out.verdicts["colimit_preserved"] = before.size() == after.size();
  out.passed = before.size() == after.size();
  out.summary = "left Kan extension computed; |colim X| = " + std::to_string(before.size()) +
                ", |colim f_!X| = " + std::to_string(after.size());
  return out;
}

Outcome run_homology(const Options& o) {
  const FinCategory c = io::load_category(input(o.category));
  const auto k = nerve_chains(c, o.degree, simplex_budget());
  const auto betti = rational_homology(k);
  Outcome out;
  out.result["degree_bound"] = o.degree;
  out.result["betti"] = betti;
  std::vector<std::size_t> dims;
  for (std::size_t d = 0; d <= k.top_degree(); ++d) dims.push_back(k.dimension(d));
  out.result["chain_dimensions"] = dims;
  out.summary = "rational Betti numbers b0..b" + std::to_string(o.degree) + ": " + join(betti);
  return out;
}

Outcome run_acyclic(const Options& o) {
  const FinCategory c = io::load_category(input(o.category));
  const auto cert = acyclicity_certificate(c, o.degree, simplex_budget());
  Outcome out;
  out.result = io::to_json(cert);
  out.verdicts["acyclic"] = cert.acyclic();
  out.passed = cert.acyclic();
  if (!out.passed) {
    if (!cert.nonempty) {
      out.witness = "empty";
    } else if (!cert.connected) {
      out.witness = "disconnected";
    } else {
      for (std::size_t d = 0; d < cert.reduced_betti.size(); ++d) {
        if (cert.reduced_betti[d] != 0) {
          out.witness = {{"degree", d}, {"reduced_betti", cert.reduced_betti[d]}};
          break;
        }
      }
    }
  }
  out.summary = std::string(cert.acyclic() ? "acyclic" : "not acyclic") + " up to degree " +
                std::to_string(o.degree) + "; reduced Betti " + join(cert.reduced_betti) +
                (cert.complete ? " (complete)" : " (truncated)");
  return out;
}

Outcome run_theorem_a(const Options& o) {
  const FinFunctor f = io::load_functor(input(o.functor));
  const auto cmp = functor_homology_comparison(f, o.degree, simplex_budget());
  Outcome out;
  out.result["degree_bound"] = o.degree;
  out.result["degrees"] = Json::array();
  for (const auto& d : cmp.degrees) {
    out.result["degrees"].push_back({{"degree", d.degree},
                                     {"source_betti", d.source_betti},
                                     {"target_betti", d.target_betti},
                                     {"induced_rank", d.induced_rank},
                                     {"conclusive", d.conclusive},
                                     {"isomorphism", d.isomorphism}});
    if (!out.witness.is_null() || !d.conclusive || d.isomorphism) continue;
    out.witness = {{"degree", d.degree}};
  }
  out.verdicts["homology_isomorphism"] = cmp.isomorphic();
  out.passed = cmp.isomorphic();
  out.summary = std::string(cmp.isomorphic() ? "isomorphism" : "not an isomorphism") +
                " on rational homology below degree " + std::to_string(o.degree);
  return out;
}

Outcome run_cofinal(const Options& o) {
  const FinFunctor f = io::load_functor(input(o.functor));
  CofinalityReport r;
  if (o.mode == "classical") {
    r = classical_cofinal(f, o.trials, o.seed);
  } else if (o.mode == "rational") {
    r = rational_cofinal(f, o.degree, simplex_budget());
  } else {
    throw CLI::ValidationError("--mode", "classical or rational");
  }
  Outcome out;
  out.result = io::to_json(r, f.target());
  if (o.mode == "classical" && o.trials > 0) out.seed = o.seed;
  out.verdicts["verdict"] = std::string(to_string(r.verdict));
  bool empirical = true;
  for (const auto& t : r.empirical) empirical = empirical && (!r.cofinal() || t.bijection);
  if (!r.empirical.empty()) out.verdicts["empirical_consistent"] = empirical;
  out.passed = r.cofinal() && empirical;
  if (r.witness) out.witness = {{"object", f.target().name(*r.witness)}};
  out.summary = std::string(to_string(r.verdict));
  if (r.witness) out.summary += ", witness object " + f.target().name(*r.witness);
  return out;
}

Outcome run_duality_test(const Options& o) {
  const std::size_t trials = o.trials == 0 ? 100 : o.trials;
  const SizeConfig config{o.max_objects, o.max_morphisms, o.max_carrier};
  const auto outcomes = run_duality_trials(o.seed, trials, config, o.threads);
  Outcome out;
  out.seed = o.seed;
  out.result["config"] = {{"max_objects", config.max_objects},
                          {"max_morphisms", config.max_morphisms},
                          {"max_carrier", config.max_carrier}};
  out.result["trials"] = Json::array();
  std::size_t duality = 0, oracle = 0, quant = 0, consistent = 0;
  for (const auto& t : outcomes) {
    out.result["trials"].push_back(io::to_json(t));
    duality += t.duality;
    oracle += t.oracle;
    quant += t.quant;
    consistent += t.quant_consistent;
    if (!t.passed() && out.witness.is_null()) out.witness = io::to_json(t);
  }
  out.verdicts = {{"duality_bijections", duality},
                  {"oracle_agreements", oracle},
                  {"quant_bijections", quant},
                  {"quant_consistent", consistent},
                  {"trials", trials}};
  out.passed = duality == trials && oracle == trials && quant == trials && consistent == trials;
  out.summary = "duality " + std::to_string(duality) + "/" + std::to_string(trials) + ", oracle " +
                std::to_string(oracle) + "/" + std::to_string(trials) + ", quantitative " +
                std::to_string(quant) + "/" + std::to_string(trials);
  return out;
}

Outcome run_quant_check(const Options& o) {
  const FinFunctor f = io::load_functor(input(o.functor));
  const SetDiagram x = io::load_diagram(input(o.diagram), &f.target());
  const QuantReport q = cof_quant_check(f, x);
  Outcome out;
  out.result["lhs"] = io::colimit_json(q.report.lhs, restrict(x, f));
  out.result["rhs_size"] = q.report.rhs.size();
  out.result["map"] = io::class_function_json(q.report.canonical_map, q.report.lhs, q.report.rhs);
  out.verdicts["bijection"] = q.report.bijection;
  out.verdicts["consistent_with_duality"] = q.consistent_with_duality;
  out.passed = q.report.bijection && q.consistent_with_duality;
  out.summary = "colim_J f*X has " + std::to_string(q.report.lhs.size()) + " classes, the weighted colimit " +
                std::to_string(q.report.rhs.size()) + (q.report.bijection ? "; bijection" : "; NOT a bijection");
  return out;
}

Outcome run_converse(const Options& o) {
  const FinFunctor f = io::load_functor(input(o.functor));
  const ConverseReport r = converse_witness(f, f.target().object(o.object), o.set_size);
  Outcome out;
  out.result = {{"object", o.object},
                {"set_size", r.set_size},
                {"fiber_components", r.fiber_components},
                {"restricted_size", r.restricted_size},
                {"full_size", r.full_size},
                {"comparison_bijective", r.comparison_bijective},
                {"formula_holds", r.formula_holds()}};
  out.verdicts["comparison_bijective"] = r.comparison_bijective;
  out.verdicts["formula_holds"] = r.formula_holds();
  out.passed = r.comparison_bijective && r.formula_holds();
  if (!r.comparison_bijective) out.witness = {{"object", o.object}, {"restricted_size", r.restricted_size}};
  out.summary = "|colim_J f*(a_!S)| = " + std::to_string(r.restricted_size) + ", |S| = " +
                std::to_string(r.set_size) + ", components " + std::to_string(r.fiber_components);
  return out;
}

Outcome run_symalg(const Options& o) {
  const PointedSpaceQ x = PointedSpaceQ::with_complement(o.complement_dim);
  const auto oracle = reduced_sym_oracle(x, o.stages);
  Outcome out;
  out.result["oracle"] = oracle;
  if (o.oracle_only) {
    out.summary = "oracle stage dims " + join(oracle);
    return out;
  }
  const SymStageReport r = reduced_sym_sequential(x, o.stages, tensor_budget());
  out.result["sequential"] = io::to_json(r);
  const bool agree = r.stage_dims == oracle;
  out.verdicts["stagewise_agreement"] = agree;
  out.verdicts["injective_maps"] = r.all_injective();
  out.passed = agree && r.all_injective();
  if (!agree) out.witness = {{"sequential", r.stage_dims}, {"oracle", oracle}};
  out.summary = "stage dims " + join(r.stage_dims) + (agree ? " (match oracle)" : " (oracle " + join(oracle) + ")");
  return out;
}

Outcome run_fin_inj(const Options& o) {
  const FinInjReport r = fin_inj_fiber_check(o.n, o.degree, simplex_budget());
  Outcome out;
  out.result = io::to_json(r);
  out.verdicts["passed"] = r.passed();
  out.passed = r.passed();
  for (const auto& f : r.fibers) {
    if (!f.agrees() && out.witness.is_null()) out.witness = {{"subset_size", f.subset_size}};
  }
  out.summary = "fin_inj_leq(" + std::to_string(o.n) + ") fibers " + (r.passed() ? "match" : "do NOT match") +
                " the symmetric groups up to degree " + std::to_string(o.degree);
  return out;
}

Outcome run_standard(const Options& o) {
  const auto kind = parse_standard_kind(o.kind);
  if (!kind) throw CLI::ValidationError("--kind", "unknown standard category " + o.kind);
  StandardParams p;
  p.n = o.n;
  for (const auto& g : o.generators) p.generators.push_back(parse_cycles(g, o.n));
  const FinCategory c = build_standard(*kind, p);
  Outcome out;
  out.result = io::to_json(c);
  out.summary = o.kind + ": " + std::to_string(c.object_count()) + " objects, " +
                std::to_string(c.morphism_count()) + " morphisms";
  return out;
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::SimplexBudgetExceeded:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::GenerationRetryExceeded:
    case ErrorKind::InternalInvariant:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cofinality and weighted colimits on finite categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "json or summary")->check(CLI::IsMember({"json", "summary"}));
  app.add_flag("--quiet", o.quiet, "No summary on stderr");
  app.add_flag("--timing", o.timing, "Include wall time in the report");
  app.add_option("--seed", o.seed, "Root seed");
  app.add_option("--trials", o.trials, "Randomized trials");
  app.add_option("--degree", o.degree, "Homology degree bound");

  std::map<CLI::App*, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Outcome(const Options&)> run) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = std::move(run);
    return s;
  };
  auto existing = CLI::ExistingFile;

  auto* comma_cmd = sub("comma", "Lax or oplax fiber of a functor", run_comma);
  comma_cmd->add_option("--functor", o.functor)->required()->check(existing);
  comma_cmd->add_option("--object", o.object)->required();
  comma_cmd->add_option("--variance", o.variance)->check(CLI::IsMember({"lax", "oplax"}));

  sub("tw", "Twisted arrow category", run_tw)->add_option("--category", o.category)->required()->check(existing);

  auto* colim_cmd = sub("colim", "Colimit of a Set-valued diagram", run_colim);
  colim_cmd->add_option("--diagram", o.diagram)->required()->check(existing);
  colim_cmd->add_option("--category", o.category)->check(existing);

  auto* wcolim_cmd = sub("wcolim", "Weighted colimit", run_wcolim);
  wcolim_cmd->add_option("--weight", o.weight)->required()->check(existing);
  wcolim_cmd->add_option("--diagram", o.diagram)->required()->check(existing);
  wcolim_cmd->add_option("--method", o.method)->check(CLI::IsMember({"tw", "coend", "both"}));

  auto* lan_cmd = sub("lan", "Pointwise left Kan extension", run_lan);
  lan_cmd->add_option("--functor", o.functor)->required()->check(existing);
  lan_cmd->add_option("--diagram", o.diagram)->required()->check(existing);

  for (auto [name, help, run] : {std::tuple{"homology", "Rational homology of the nerve", run_homology},
                                 std::tuple{"acyclic", "Acyclicity certificate", run_acyclic}}) {
    auto* s = sub(name, help, run);
    s->add_option("--category", o.category)->required()->check(existing);
    s->add_option("--degree", o.degree);
  }

  auto* thm_cmd = sub("theorem-a", "Induced map on rational homology", run_theorem_a);
  thm_cmd->add_option("--functor", o.functor)->required()->check(existing);
  thm_cmd->add_option("--degree", o.degree);

  auto* cof_cmd = sub("cofinal", "Decide cofinality", run_cofinal);
  cof_cmd->add_option("--functor", o.functor)->required()->check(existing);
  cof_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"classical", "rational"}));
  cof_cmd->add_option("--degree", o.degree);
  cof_cmd->add_option("--trials", o.trials, "Random diagrams for the comparison map");
  cof_cmd->add_option("--seed", o.seed);

  auto* dual_cmd = sub("duality-test", "Randomized duality harness", run_duality_test);
  dual_cmd->add_option("--trials", o.trials);
  dual_cmd->add_option("--seed", o.seed);
  dual_cmd->add_option("--max-objects", o.max_objects);
  dual_cmd->add_option("--max-morphisms", o.max_morphisms);
  dual_cmd->add_option("--max-carrier", o.max_carrier);
  dual_cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  auto* quant_cmd = sub("quant-check", "Quantitative cofinality", run_quant_check);
  quant_cmd->add_option("--functor", o.functor)->required()->check(existing);
  quant_cmd->add_option("--diagram", o.diagram)->required()->check(existing);

  auto* conv_cmd = sub("converse", "Probe a functor with a_!S", run_converse);
  conv_cmd->add_option("--functor", o.functor)->required()->check(existing);
  conv_cmd->add_option("--object", o.object)->required();
  conv_cmd->add_option("--set-size", o.set_size);

  auto* sym_cmd = sub("symalg", "Reduced symmetric algebra stages", run_symalg);
  sym_cmd->add_option("--complement-dim", o.complement_dim)->required();
  sym_cmd->add_option("--stages", o.stages);
  sym_cmd->add_flag("--oracle-only", o.oracle_only);

  auto* fin_cmd = sub("fin-inj-check", "Lax fibers of BΣ_n → Fin^inj_{≤n}", run_fin_inj);
  fin_cmd->add_option("--n", o.n)->check(CLI::Range(0, 3));
  fin_cmd->add_option("--degree", o.degree);

  auto* std_cmd = sub("standard", "Print a standard category", run_standard);
  std_cmd->add_option("--kind", o.kind)->required();
  std_cmd->add_option("--n", o.n);
  std_cmd->add_option("--generator", o.generators, "Permutation in cycle notation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Json report;
  report["subcommand"] = chosen->get_name();
  report["version"] = COFINAL_VERSION;
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  Outcome out;
  try {
    out = handlers.at(chosen)(o);
    code = out.passed ? 0 : 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    code = is_input_error(e.kind()) ? 2 : 1;
    out.passed = false;
    out.witness = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", e.witness()}};
    out.summary = e.what();
  }

  Json inputs = Json::array();
  for (const auto& p : g_inputs) inputs.push_back({{"path", p.string()}, {"sha256", io::sha256_file(p)}});
  report["inputs"] = inputs;
  report["seed"] = out.seed ? Json(*out.seed) : Json(nullptr);
  report["passed"] = code == 0;
  report["verdicts"] = out.verdicts;
  report["witness"] = out.witness;
  report["result"] = out.result;
  if (o.timing) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  if (o.format == "summary") {
    std::cout << chosen->get_name() << ": " << out.summary << (code == 0 ? "" : " [FAIL]") << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
    if (!o.quiet) std::cerr << chosen->get_name() << ": " << out.summary << "\n";
  }
  return code;
}
