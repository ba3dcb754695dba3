// Drives the installed CLI binary end to end. Invoked by ctest as
// `cli_tests <path-to-ncsim>`.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "ncsim/serialize.hpp"
#include "ncsim/vendor_json.hpp"

namespace {

int failures = 0;
std::string cli;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int run(const std::string& args) {
  const std::string cmd = cli + " " + args + " > /tmp/cli_stdout.txt 2>/tmp/cli_stderr.txt";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) { return ncsim::read_file(path); }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::printf("usage: cli_tests <ncsim binary>\n");
    return 1;
  }
  cli = argv[1];

  check(run("--help") == 0, "--help exits 0");
  check(run("disseminate --help") == 0, "subcommand --help exits 0");
  check(run("bogus-subcommand") != 0, "unknown subcommand rejected");

  // disseminate: determinism and snapshot artifacts
  check(run("disseminate --generate line --size 4 --n 8 --seed 7 --snapshot 3 --snapshot 4 "
            "--binary-snapshots --out /tmp/cli_a") == 0,
        "disseminate runs");
  check(run("disseminate --generate line --size 4 --n 8 --seed 7 --snapshot 3 --snapshot 4 "
            "--binary-snapshots --out /tmp/cli_b") == 0,
        "disseminate reruns");
  check(slurp("/tmp/cli_a/dims.csv") == slurp("/tmp/cli_b/dims.csv"),
        "same seed gives byte-identical dims.csv");
  check(slurp("/tmp/cli_a/snapshot_t3.json") == slurp("/tmp/cli_b/snapshot_t3.json"),
        "same seed gives identical snapshots");
  check(!slurp("/tmp/cli_a/snapshot_t4.bin").empty(), "binary snapshot written");
  check(run("disseminate --generate line --size 4 --n 8 --seed 8 --out /tmp/cli_c") == 0,
        "different seed runs");
  check(slurp("/tmp/cli_a/dims.csv") != slurp("/tmp/cli_c/dims.csv"),
        "different seed changes the trace");

  // config file driving
  ncsim::write_file("/tmp/cli_cfg.json",
                    R"({"n": 6, "q": 256, "seed": 11, "net": {"nodes": 3, "source": 0,
                        "edges": [{"tail":0,"head":1,"rate":1},{"tail":1,"head":2,"rate":1}]}})");
  check(run("disseminate --config /tmp/cli_cfg.json --out /tmp/cli_cfg_out") == 0,
        "disseminate accepts a JSON config");

  // infer-topology end to end with ground truth
  {
    nlohmann::json tree = {{"nodes", 4},
                           {"source", 0},
                           {"edges", nlohmann::json::array({
                                         {{"tail", 0}, {"head", 1}, {"rate", 1}},
                                         {{"tail", 1}, {"head", 2}, {"rate", 1}},
                                         {{"tail", 1}, {"head", 3}, {"rate", 1}},
                                     })}};
    ncsim::write_file("/tmp/cli_tree.json", tree.dump());
    check(run("infer-topology --net /tmp/cli_tree.json --ground-truth /tmp/cli_tree.json "
              "--mode general --seed 5 --out /tmp/cli_inf") == 0,
          "end-to-end inference exits 0 on exact match");
    const auto est = nlohmann::json::parse(slurp("/tmp/cli_inf/estimate.json"));
    check(est["exact_match"].get<bool>(), "estimate matches the ground truth");
    check(run("infer-topology --net /tmp/cli_tree.json --ground-truth /tmp/cli_tree.json "
              "--mode tree --seed 5 --out /tmp/cli_inf_tree") == 0,
          "tree mode agrees");
  }

  // the indistinguishable-children counterexample exits 2
  {
    nlohmann::json bad = {{"nodes", 4},
                          {"source", 0},
                          {"edges", nlohmann::json::array({
                                        {{"tail", 0}, {"head", 1}, {"rate", 1}},
                                        {{"tail", 1}, {"head", 2}, {"rate", 2}},
                                        {{"tail", 1}, {"head", 3}, {"rate", 2}},
                                    })}};
    ncsim::write_file("/tmp/cli_bad.json", bad.dump());
    check(run("infer-topology --net /tmp/cli_bad.json --mode general --seed 5 "
              "--out /tmp/cli_inf_bad") == 2,
          "distinctness violation exits 2");
  }

  // locate-adversary with a scenario file
  {
    nlohmann::json net = {{"nodes", 5},
                          {"source", 0},
                          {"edges", nlohmann::json::array({
                                        {{"tail", 0}, {"head", 1}, {"rate", 1}},
                                        {{"tail", 1}, {"head", 2}, {"rate", 1}},
                                        {{"tail", 2}, {"head", 3}, {"rate", 1}},
                                        {{"tail", 3}, {"head", 4}, {"rate", 1}},
                                    })}};
    ncsim::write_file("/tmp/cli_line.json", net.dump());
    nlohmann::json scenario = {
        {"attackers", nlohmann::json::array({{{"node", 2},
                                              {"delta", 1},
                                              {"strategy", "truthful"},
                                              {"edges", nlohmann::json::array({{2, 3}})}}})}};
    ncsim::write_file("/tmp/cli_scenario.json", scenario.dump());
    check(run("locate-adversary --net /tmp/cli_line.json --scenario /tmp/cli_scenario.json "
              "--seed 3 --out /tmp/cli_loc") == 0,
          "locate-adversary runs");
    const auto verdict = nlohmann::json::parse(slurp("/tmp/cli_loc/verdict.json"));
    bool found = false;
    for (const auto& s : verdict["subset_method"]["sets"])
      for (const auto& v : s["nodes"])
        if (v.get<int>() == 2) found = true;
    check(found, "verdict names the attacker");
  }

  // verify-lemmas (small trial count for speed)
  check(run("verify-lemmas --q 257 --trials 400 --seed 2 --out /tmp/cli_lem") == 0,
        "verify-lemmas passes");
  check(slurp("/tmp/cli_lem/lemmas.csv").find("full_rank") != std::string::npos,
        "lemma report written");

  // cost-report prints the reference scenario
  check(run("cost-report --q 256 --beta2 5 --cmax 1 --depth 10 --delta-in 5") == 0,
        "cost-report runs");
  check(slurp("/tmp/cli_stdout.txt").find("4 kilobytes") != std::string::npos,
        "cost-report prints 4 kilobytes per node");

  // p2p smoke: csv artifacts and determinism
  check(run("p2p-sim --rows 20 --trials 2 --seed 6 --algo algo2 --out /tmp/cli_p2p") == 0,
        "p2p-sim runs");
  check(run("p2p-sim --rows 20 --trials 2 --seed 6 --algo algo2 --out /tmp/cli_p2p2") == 0,
        "p2p-sim reruns");
  check(slurp("/tmp/cli_p2p/p2p_runs.csv") == slurp("/tmp/cli_p2p2/p2p_runs.csv"),
        "p2p csv is deterministic");

  // bad input exits 1
  check(run("disseminate --net /tmp/does_not_exist.json") == 1, "missing file exits 1");

  std::printf("%s: %d failure(s)\n", failures ? "FAILURE" : "SUCCESS", failures);
  return failures ? 1 : 0;
}
