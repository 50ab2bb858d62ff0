#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "clr/cli.hpp"
#include "clr/io.hpp"

using namespace clr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "clr");
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "clr_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("generate, solve and verify the hard family") {
  TempDir dir;
  REQUIRE(cli({"generate", "--lemma3", "5", "--out", dir / "h.clr"}).status == 0);
  auto r = cli({"solve", dir / "h.clr", "--variant", "ip-lkh", "--epsilon", "1",
                "--solution", dir / "h.sol", "--omit-timings"});
  REQUIRE(r.status == 0);
  const auto rows = io::read_csv(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][3].first == "cost");
  CHECK(std::stod(rows[0][3].second) == doctest::Approx(2.0));
  r = cli({"verify", dir / "h.clr", dir / "h.sol", "--strict"});
  CHECK(r.status == 0);
  CHECK(r.out.find("feasible_strict 1") != std::string::npos);

  r = cli({"oracle", dir / "h.clr"});
  CHECK(r.status == 0);
  CHECK(r.out.find("opt 2") != std::string::npos);
  r = cli({"bounds", dir / "h.clr"});
  CHECK(r.status == 0);
  CHECK(r.out.find("cfl_bound 0.5") != std::string::npos);
}

TEST_CASE("verify reports overloaded facilities") {
  TempDir dir;
  REQUIRE(cli({"generate", "--lemma3", "5", "--out", dir / "h.clr"}).status == 0);
  io::write_file(dir / "bad.sol",
                 "SOLUTION\nOPEN 0\nTOUR 0 4 0:1 1:1 2:1 3:1\nTOUR 0 1 4:1\nEND\n");
  auto r = cli({"verify", dir / "h.clr", dir / "bad.sol", "--epsilon", "0"});
  CHECK(r.status == 1);
  CHECK(r.out.find("violation facility 0") != std::string::npos);
  r = cli({"verify", dir / "h.clr", dir / "bad.sol", "--epsilon", "1"});
  CHECK(r.status == 0);
  r = cli({"verify", dir / "h.clr", dir / "bad.sol", "--strict"});
  CHECK(r.status == 1);
}

TEST_CASE("bench is deterministic across worker counts") {
  TempDir dir;
  fs::create_directories(dir / "in");
  for (const char* seed : {"1", "2", "3"}) {
    REQUIRE(cli({"generate", "--n", "50", "-k", "3", "--levels", "msl",
                 "--seed", seed, "--out",
                 dir / (std::string("in/g") + seed + ".clr")})
                .status == 0);
  }
  const auto one = cli({"bench", dir / "in", "--workers", "1", "--omit-timings"});
  const auto two = cli({"bench", dir / "in", "--workers", "2", "--omit-timings"});
  REQUIRE(one.status == 0);
  CHECK(io::read_csv(one.out).size() == 3);
  CHECK(one.out == two.out);

  REQUIRE(cli({"bench", dir / "in", "--variant", "ls-dts", "--variant",
               "ip-lkh", "--out", dir / "r.csv", "--json", dir / "r.json"})
              .status == 0);
  CHECK(io::read_csv(io::read_file(dir / "r.csv")).size() == 6);
  const auto js = nlohmann::json::parse(io::read_file(dir / "r.json"));
  CHECK(js.size() == 6);
  const auto plot = cli({"plotdata", dir / "r.csv"});
  CHECK(plot.status == 0);
  CHECK(io::read_csv(plot.out).size() == 6);
}

TEST_CASE("errors go to stderr") {
  auto r = cli({"solve", "/nonexistent/file.clr"});
  CHECK(r.status != 0);
  CHECK_FALSE(r.err.empty());
  r = cli({"generate", "--n", "50", "-k", "4"});
  CHECK(r.status != 0);
  r = cli({"solve"});
  CHECK(r.status != 0);
}

TEST_CASE("json output and grids") {
  TempDir dir;
  auto r = cli({"generate", "--n", "50", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto inst = io::instance_from_json(nlohmann::json::parse(r.out));
  CHECK(inst.num_clients() == 50);
  r = cli({"generate", "--grid", "50", "--out", dir / "grid"});
  REQUIRE(r.status == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir / "grid")) {
    files += e.is_regular_file();
  }
  CHECK(files == 81);
}
