/* CLI contract checks: exit codes, JSON output shapes, cache files.
 * Usage: cli_check <path-to-ternary-binary> */

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "json.hpp"

namespace {

int failures = 0;

#define EXPECT(cond, what)                                        \
  do {                                                            \
    if (!(cond)) {                                                \
      std::cerr << "FAIL: " << what << " (" << #cond << ")\n";    \
      ++failures;                                                 \
    }                                                             \
  } while (0)

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& command) {
  std::string full = command + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) {
    std::cerr << "cannot spawn: " << command << "\n";
    std::exit(1);
  }
  std::string output;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), got);
  int status = pclose(pipe);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_check <binary>\n";
    return 1;
  }
  std::string bin = argv[1];
  std::string cache = (std::filesystem::temp_directory_path() / "ternary-cli-cache").string();
  std::filesystem::remove_all(cache);

  {
    RunResult r = run(bin + " invariants 1,1,16,0,0,0");
    EXPECT(r.exit_code == 0, "invariants exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["delta"] == 64, "delta 64");
    EXPECT(doc["divisor"] == 4, "divisor 4");
    EXPECT(doc["level"] == 64, "level 64");
    EXPECT(doc["reciprocal"] == "16,16,1,0,0,0", "reciprocal sextuple");
  }
  {
    RunResult r = run(bin + " invariants 1,1,1,0,0,0");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["delta"] == 4 && doc["divisor"] == 4 && doc["level"] == 4, "unit form dossier");
  }
  EXPECT(run(bin + " invariants 2,2,2,0,0,0").exit_code == 2, "imprimitive form exits 2");
  EXPECT(run(bin + " invariants not-a-form").exit_code == 2, "parse failure exits 2");

  {
    RunResult r = run(bin + " --json --cache-dir " + cache + " enumerate --disc 64");
    EXPECT(r.exit_code == 0, "enumerate exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["classes"].size() >= 2, "delta 64 has at least the two classes");
    EXPECT(std::filesystem::exists(cache + "/64.json"), "cache file written");
    std::ifstream in(cache + "/64.json");
    nlohmann::json cached;
    in >> cached;
    std::set<std::string> keys;
    for (auto it = cached.begin(); it != cached.end(); ++it) keys.insert(it.key());
    EXPECT(keys == (std::set<std::string>{"delta", "classes", "aut_counts", "genera",
                                          "tool_version"}),
           "cache schema");
  }
  {
    RunResult r = run(bin + " --csv --cache-dir " + cache + " enumerate --disc 64");
    EXPECT(r.exit_code == 0, "enumerate csv exit code");
    EXPECT(r.output.find("index,a,b,c,r,s,t,aut_count,genus") == 0, "csv header");
  }
  {
    RunResult r = run(bin + " --json --cache-dir " + cache + " genus 1,1,80,0,0,0");
    EXPECT(r.exit_code == 0, "genus exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["spinor_blocks"].size() == 2, "two spinor blocks for 1,1,80");
    bool evidence5 = false;
    for (const auto& row : doc["exceptional_evidence"])
      if (row["t"] == 5) evidence5 = true;
    EXPECT(evidence5, "evidence includes t=5");
  }
  {
    RunResult r = run(bin + " --json --cache-dir " + cache + " genus 1,1,1,0,0,0");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["spinor_blocks"].size() == 1 && doc["inconclusive"] == false,
           "single-class genus is one block");
  }
  {
    RunResult r = run(bin + " --json --cache-dir " + cache + " genus 1,20,400,0,0,0");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["spinor_blocks"].size() == 4, "four spinor blocks for 1,20,400");
    for (const auto& block : doc["spinor_blocks"]) EXPECT(block.size() == 3, "blocks of three");
  }
  {
    RunResult r = run(bin + " --json corresponds 1,1,80,0,0,0 1,1,16,0,0,0 5 --all-witnesses");
    EXPECT(r.exit_code == 0, "all-witnesses exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["present"] == true, "witness lists nonempty");
    EXPECT(doc["forward_witnesses"].size() >= 1 && doc["backward_witnesses"].size() >= 1,
           "matrices listed both ways");
  }
  {
    RunResult r = run(bin + " repcount 1,1,16,0,0,0 0 1 2");
    EXPECT(r.exit_code == 0, "repcount exit code");
    EXPECT(r.output == "0 1 0\n1 4 4\n2 4 4\n", "repcount lines");
  }
  EXPECT(run(bin + " corresponds 1,1,80,0,0,0 1,1,16,0,0,0 3").exit_code == 2,
         "multiplier not matching the ratio exits 2");
  {
    RunResult r = run(bin + " --json corresponds 1,1,80,0,0,0 1,1,16,0,0,0 5");
    EXPECT(r.exit_code == 0, "corresponds exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["present"] == true, "correspondence present");
  }
  EXPECT(run(bin + " corresponds 1,1,80,0,0,0 1,1,48,0,0,0 5").exit_code == 2,
         "non-integral ratio exits 2");

  EXPECT(run(bin + " transform --descend 1,1,16,0,0,0 5").exit_code == 2,
         "descend with p not dividing delta exits 2");
  {
    RunResult r = run(bin + " transform --descend 1,1,80,0,0,0 5");
    EXPECT(r.exit_code == 0, "descend exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["delta_out"] == 64, "descend lands at delta 64");
    EXPECT(doc["delta_law"] == true, "descend delta law");
  }
  {
    RunResult r = run(bin + " transform --descend --all-witnesses 1,1,80,0,0,0 5");
    EXPECT(r.exit_code == 0, "descend all-witnesses exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["all_witness_classes"].size() >= 1, "witness classes listed");
  }
  {
    RunResult r = run(bin + " transform --ascend 1,1,16,0,0,0 5");
    EXPECT(r.exit_code == 0, "ascend exit code");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["delta_out"] == 320, "ascend lands at delta 320");
    std::string result = doc["result"].get<std::string>();
    long long a = std::stoll(result.substr(0, result.find(',')));
    EXPECT(a % 25 == 0, "ascend first coefficient divisible by 25");
  }

  {
    RunResult r = run(bin + " verify repdiff --kmax 25");
    EXPECT(r.exit_code == 0, "verify repdiff exits 0");
    nlohmann::json doc = nlohmann::json::parse(r.output);
    EXPECT(doc["status"] == "verified", "repdiff verified");
    EXPECT(doc["task"] == "repdiff", "task name");
    EXPECT(doc.contains("runtime_ms"), "runtime present");
  }
  EXPECT(run(bin + " verify no-such-task").exit_code == 2, "unknown task exits 2");
  // too small a probe window to separate the no-splitting genera
  EXPECT(run(bin + " --cache-dir " + cache + " verify no-splitting --bound 10").exit_code == 3,
         "inconclusive exits 3");
  // the reproduced obstruction reports as a counterexample; reuses the
  // acceptance cache when the suites run in order
  EXPECT(run(bin + " --cache-dir ./acceptance-cache verify involution-400n --n 21").exit_code == 1,
         "counterexample exits 1");

  std::filesystem::remove_all(cache);
  if (failures == 0) {
    std::cout << "cli_check: all checks passed\n";
    return 0;
  }
  std::cout << "cli_check: " << failures << " failures\n";
  return 1;
}
