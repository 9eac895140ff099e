// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cofinal/cofinality.hpp"
#include "cofinal/symalg.hpp"

using namespace cofinal;

namespace {

constexpr std::uint64_t kRoot = 20240601;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-40s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string ratio(std::size_t good, std::size_t total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct TrialCounts {
  std::size_t total = 0;
  std::size_t duality = 0;
  std::size_t oracle = 0;
  std::size_t quant = 0;
};

TrialCounts run_trials() {
  const auto outcomes = run_duality_trials(kRoot, 500);
  TrialCounts c;
  c.total = outcomes.size();
  for (const auto& t : outcomes) {
    c.duality += t.duality ? 1 : 0;
    c.oracle += t.oracle ? 1 : 0;
    c.quant += (t.quant && t.quant_consistent) ? 1 : 0;
  }
  return c;
}

void coyoneda_criterion() {
  std::size_t objects = 0;
  std::size_t good = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const RandomInstance inst = random_instance(derive_seed(kRoot + 1, i));
    const FinCategory& c = inst.target;
    const SetDiagram& x = inst.diagram;
    std::vector<Weight> reps;
    std::vector<ColimitValue> values;
    std::vector<std::vector<std::size_t>> maps;
    std::vector<bool> ok(c.object_count(), true);
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      reps.push_back(representable_weight(c, Obj(a)));
      values.push_back(weighted_colimit_tw(reps[a], x));
      maps.push_back(coyoneda_map(x, Obj(a), values[a]));
      ok[a] = ClassFunction{maps[a], values[a].size()}.bijective();
    }
    // Naturality along every v: a → b.
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      const Mor v(m);
      const std::size_t a = c.src(v).index();
      const std::size_t b = c.tgt(v).index();
      WeightMap post;
      for (std::size_t d = 0; d < c.object_count(); ++d) {
        std::vector<std::size_t> comp;
        for (Mor h : c.hom(Obj(d), Obj(a))) comp.push_back(c.hom_position(c.compose(v, h)));
        post.component.push_back(std::move(comp));
      }
      const ClassFunction induced = weight_map_induced(reps[a], reps[b], post, x, values[a], values[b]);
      for (std::size_t e = 0; e < x.size(Obj(a)); ++e) {
        if (induced.image[maps[a][e]] != maps[b][x.apply(v, e)]) ok[a] = false;
      }
    }
    for (bool b : ok) good += b ? 1 : 0;
    objects += c.object_count();
  }
  report(2, "representable weights evaluate", good == objects,
         ratio(good, objects) + " objects in 20 categories, natural");
}

std::vector<FinCategory> small_categories() {
  std::vector<FinCategory> cats{point(),          walking_arrow(),
                                discrete(2),      discrete(3),
                                chain_poset(3),   build_standard(StandardKind::span),
                                build_standard(StandardKind::cospan), symmetric_group(2),
                                symmetric_group(3), fin_inj_leq(1),
                                fin_inj_leq(2),   permutation_group(3, {parse_cycles("(1 2 3)", 3)})};
  std::mt19937_64 rng(kRoot + 2);
  for (int i = 0; i < 12; ++i) cats.push_back(random_category(rng, 3, 8));
  return cats;
}

void classical_criterion() {
  const auto cats = small_categories();
  std::size_t functors = 0;
  std::size_t agree = 0;
  std::size_t cofinal = 0;
  for (const auto& j : cats) {
    for (const auto& i : cats) {
      for (const FinFunctor& f : all_functors(j, i, 200)) {
        const bool verdict = classical_cofinal(f).cofinal();
        bool probes = true;
        for (std::size_t a = 0; a < i.object_count() && probes; ++a) {
          for (std::size_t s = 0; s <= 2; ++s) probes = probes && converse_witness(f, Obj(a), s).comparison_bijective;
        }
        ++functors;
        agree += verdict == probes ? 1 : 0;
        cofinal += verdict ? 1 : 0;
      }
    }
  }
  report(5, "classical criterion both directions", agree == functors,
         ratio(agree, functors) + " functors agree (" + std::to_string(cofinal) + " cofinal)");
}

void symmetric_group_criterion() {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {2, 3}) {
    const AcyclicityCertificate c = acyclicity_certificate(symmetric_group(n), 4);
    const std::vector<std::int64_t> positive(c.reduced_betti.begin() + 1, c.reduced_betti.end());
    ok = ok && c.connected && c.reduced_betti[0] == 0 && positive == std::vector<std::int64_t>(4, 0);
    detail += (n == 2 ? "" : "; ") + std::string("BS") + std::to_string(n) + " reduced b1..b4 = " + join(positive);
  }
  report(6, "symmetric groups rationally acyclic", ok, detail);
}

void fin_inj_criterion() {
  bool ok = true;
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    const FinInjReport r = fin_inj_fiber_check(n, 3);
    ok = ok && r.passed() && r.fibers.size() == n + 1;
    detail += (n == 1 ? "n=" : ",") + std::to_string(n) + (r.passed() ? "" : "(fail)");
  }
  report(7, "injection fibers match BS_{n-|S|}", ok, detail + " at d=3");
}

void symalg_criterion() {
  bool ok = true;
  std::string detail;
  for (std::size_t m = 0; m <= 3; ++m) {
    const PointedSpaceQ x = PointedSpaceQ::with_complement(m);
    const SymStageReport r = reduced_sym_sequential(x, 4);
    ok = ok && r.stage_dims == reduced_sym_oracle(x, 4) && r.colimit_dims == r.stage_dims && r.all_injective();
    if (m == 2) detail = "m=2: " + join(r.stage_dims);
  }
  report(8, "filtered symmetric algebra", ok, detail + "; m=0..3, N=4");
}

void theorem_a_criterion() {
  std::vector<FinCategory> cats{point(), walking_arrow(), discrete(2), chain_poset(3), chain_poset(4),
                                build_standard(StandardKind::span), build_standard(StandardKind::cospan)};
  std::mt19937_64 rng(kRoot + 3);
  for (int i = 0; i < 40 && cats.size() < 14; ++i) {
    FinCategory c = random_category(rng, 4, 10);
    if (is_loop_free(c)) cats.push_back(std::move(c));
  }
  std::size_t found = 0;
  std::size_t iso = 0;
  for (const auto& j : cats) {
    for (const auto& i : cats) {
      if (i.object_count() < 2) continue;
      for (const FinFunctor& f : all_functors(j, i, 50)) {
        if (found == 20) break;
        if (f == identity_functor(j)) continue;
        const CofinalityReport r = rational_cofinal(f, 3);
        if (r.verdict != Verdict::rationally_cofinal_up_to_d) continue;
        bool complete = true;
        for (const auto& fc : r.fibers) complete = complete && fc.certificate.complete;
        if (!complete) continue;
        ++found;
        iso += functor_homology_comparison(f, 3).isomorphic() ? 1 : 0;
      }
    }
  }
  report(9, "rational cofinality gives homology iso", found == 20 && iso == found,
         ratio(iso, found) + " certified functors");
}

void negative_control() {
  const FinCategory arrow = walking_arrow();
  const FinFunctor f = object_functor(arrow, arrow.object("0"));
  const CofinalityReport r = classical_cofinal(f);
  const bool witness = r.verdict == Verdict::not_cofinal && r.witness && arrow.name(*r.witness) == "1";
  const ComparisonResult probe = comparison_map(f, probe_diagram(arrow, arrow.object("1"), 1));
  const bool ok = witness && !probe.map.surjective();
  report(10, "negative control", ok,
         std::string("verdict ") + std::string(to_string(r.verdict)) + ", witness " +
             (r.witness ? arrow.name(*r.witness) : "none") + ", probe " +
             std::to_string(probe.restricted.size()) + " -> " + std::to_string(probe.full.size()));
}

}  // namespace

int main() {
  try {
    const TrialCounts t = run_trials();
    const bool full = t.total == 500;
    report(1, "duality map bijective", full && t.duality == t.total, ratio(t.duality, t.total) + " random instances");
    coyoneda_criterion();
    report(3, "Tw and coend presentations agree", full && t.oracle == t.total, ratio(t.oracle, t.total) + " instances");
    report(4, "fiber-weighted colimit", full && t.quant == t.total, ratio(t.quant, t.total) + " instances");
    classical_criterion();
    symmetric_group_criterion();
    fin_inj_criterion();
    symalg_criterion();
    theorem_a_criterion();
    negative_control();
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d failing\n", failures == 0 ? "all criteria pass" : "some criteria fail", failures);
  return failures == 0 ? 0 : 1;
}
