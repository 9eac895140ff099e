#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string command = std::string(COFINAL_CLI) + " --quiet " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string corpus(const std::string& file) { return std::string(COFINAL_CORPUS) + "/" + file; }

nlohmann::json parse(const Run& run) { return nlohmann::json::parse(run.out); }

}  // namespace

TEST_CASE("reports on the bundled corpus are byte-stable") {
  const std::vector<std::string> commands{
      "comma --functor " + corpus("bs2_inclusion_fin_inj2.json") + " --object 1",
      "comma --functor " + corpus("arrow_identity.json") + " --object 1 --variance oplax",
      "tw --category " + corpus("bs2.json"),
      "colim --diagram " + corpus("pushout_span.json"),
      "colim --diagram " + corpus("discrete_2_3.json"),
      "wcolim --weight " + corpus("bs3_representable.json") + " --diagram " + corpus("bs3_signs.json") +
          " --method both",
      "wcolim --weight " + corpus("arrow_constant.json") + " --diagram " + corpus("arrow_xy_to_z.json"),
      "lan --functor " + corpus("arrow_identity.json") + " --diagram " + corpus("arrow_xy_to_z.json"),
      "homology --category " + corpus("bs3.json") + " --degree 4",
      "acyclic --category " + corpus("fin_inj_leq2.json"),
      "theorem-a --functor " + corpus("bs2_inclusion_fin_inj2.json"),
      "cofinal --functor " + corpus("pt_to_arrow_at_0.json"),
      "cofinal --functor " + corpus("bs3_inclusion_fin_inj3.json") + " --mode rational --degree 3",
      "cofinal --functor " + corpus("discrete2_collapse.json") + " --trials 20 --seed 3",
      "duality-test --trials 25 --seed 7 --threads 3",
      "quant-check --functor " + corpus("pt_to_arrow_at_1.json") + " --diagram " + corpus("arrow_xy_to_z.json"),
      "converse --functor " + corpus("pt_to_arrow_at_0.json") + " --object 1 --set-size 2",
      "symalg --complement-dim 2 --stages 4",
      "fin-inj-check --n 3 --degree 3",
      "standard --kind group --n 3 --generator \"(1 2)\" --generator \"(2 3)\"",
  };
  for (const auto& c : commands) {
    CAPTURE(c);
    const Run first = cli(c);
    const Run second = cli(c);
    CHECK(first.exit_code <= 1);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
    CHECK_NOTHROW(parse(first));
    CHECK(first.out.find("timing_ms") == std::string::npos);
  }
}

TEST_CASE("cofinality report for the negative control") {
  const Run run = cli("cofinal --functor " + corpus("pt_to_arrow_at_0.json"));
  CHECK(run.exit_code == 1);
  const auto j = parse(run);
  CHECK(j["subcommand"] == "cofinal");
  CHECK(j["passed"] == false);
  CHECK(j["witness"]["object"] == "1");
  REQUIRE(j["inputs"].size() == 1);
  CHECK(j["inputs"][0]["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("passing checks exit zero") {
  CHECK(cli("cofinal --functor " + corpus("bs2_inclusion_fin_inj2.json")).exit_code == 0);
  CHECK(cli("theorem-a --functor " + corpus("bs3_inclusion_fin_inj3.json") + " --degree 3").exit_code == 0);
  CHECK(cli("duality-test --trials 10 --seed 1").exit_code == 0);
  CHECK(cli("symalg --complement-dim 3 --stages 4").exit_code == 0);
  const Run timed = cli("--timing symalg --complement-dim 1 --stages 2");
  CHECK(parse(timed).contains("timing_ms"));
}

TEST_CASE("usage and input errors exit two") {
  CHECK(cli("").exit_code == 2);
  CHECK(cli("no-such-command").exit_code == 2);
  CHECK(cli("tw --category /nonexistent.json").exit_code == 2);
  CHECK(cli("comma --functor " + corpus("arrow_identity.json") + " --object nowhere").exit_code == 2);
  CHECK(cli("colim --diagram " + corpus("walking_arrow.json")).exit_code == 2);
}

TEST_CASE("budget overrides come from the environment") {
  const std::string command = "COFINAL_BUDGET=5 " + std::string(COFINAL_CLI) + " --quiet homology --category " +
                              corpus("bs3.json") + " --degree 6 >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
