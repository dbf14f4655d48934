#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "cli_run.hpp"

using cli::contains;
using cli::run;

namespace {
const std::string kRestrepo = std::string("\"") + TTSTAT_DATA_DIR + "/restrepo_replication.jsonl\"";
const std::string kGoostman = std::string("\"") + TTSTAT_DATA_DIR + "/goostman_sessions.jsonl\"";
}  // namespace

TEST_CASE("analyze with defaults") {
  const auto r = run("analyze " + kRestrepo);
  CHECK(r.status == 0);
  CHECK(contains(r.out, "significant=false"));
  CHECK(contains(r.out, "tail mass: 11/512 = 0.021484375"));
}

TEST_CASE("analyze at 5% and as json") {
  const auto r = run("analyze " + kRestrepo + " --level 0.05");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "significant=true"));
  const auto j = run("analyze " + kRestrepo + " --json");
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema"] == "tt-verdict/1");
}

TEST_CASE("csv input gives the same verdict") {
  const auto a = run("analyze " + kRestrepo + " --json");
  const auto b = run(std::string("analyze \"") + TTSTAT_DATA_DIR + "/restrepo_replication.csv\" --json");
  REQUIRE(b.status == 0);
  auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  ja.erase("source");
  jb.erase("source");
  CHECK(ja == jb);
}

TEST_CASE("two-player analysis reports the threshold") {
  const auto r = run("analyze " + kGoostman);
  CHECK(r.status == 0);
  CHECK(contains(r.out, "required human rate: 5/9"));
  CHECK(contains(r.out, "human baseline: not reported"));
}

TEST_CASE("small subcommands") {
  auto r = run("pmf --n 10 --k 9 --p 1/2");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "5/512"));
  r = run("pmf --n 10 --k 9 --p 0.5 --float");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "0.009765625"));
  r = run("significance --n 10 --k 9 --p0 0.5 --level 0.01");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "11/512"));
  r = run("humanness --format three-player --misid 0.3");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "3/5"));
  r = run("humanness --format two-player --misid 0.5 --human-correct 0.75");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "2/3"));
  r = run("classify --paired true --forced-complementary true");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "three-player"));
  r = run("curve --n 10 --k 9");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "0.50,0.021484375,false"));
  r = run("interval --n 10 --k 9 --level 0.05");
  CHECK(r.status == 0);
  r = run("power --p-true 0.7 --n 10,30 --replications 200 --seed 3");
  CHECK(r.status == 0);
}

TEST_CASE("simulate writes a file analyze can read") {
  const auto path = std::filesystem::temp_directory_path() / "ttstat_cli_sim.jsonl";
  auto r = run("simulate --format three-player --p-misid 0.3 --trials-machine 50 --seed 11 --out \"" +
               path.string() + "\"");
  REQUIRE(r.status == 0);
  const auto again = run("simulate --format three-player --p-misid 0.3 --trials-machine 50 --seed 11");
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == again.out);
  r = run("analyze \"" + path.string() + "\"");
  CHECK(r.status == 0);
  std::filesystem::remove(path);
}

TEST_CASE("input validation exits with 2") {
  CHECK(run("analyze /nonexistent/file.jsonl").status == 2);
  CHECK(run("pmf --n 10 --k 11 --p 0.5").status == 2);
  CHECK(run("pmf --n 10 --k 9 --p abc").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("pmf --n 10").status == 2);
}

TEST_CASE("statistical preconditions exit with 3") {
  CHECK(run("humanness --format two-player --misid 0.4 --human-correct 0").status == 3);
  CHECK(run("significance --n 10 --k 9 --p0 0.5 --level 1.5").status == 3);
  CHECK(run("pmf --n 10 --k 9 --p 1.5").status == 3);
}
