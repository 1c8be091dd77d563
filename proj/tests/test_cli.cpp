#include "doctest.h"
#include "lefmod/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lefmod;
using namespace lefmod::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cmd(const std::string& command, const std::string& target, const std::string& B = "",
               std::uint64_t seed = 1, const std::string& json_out = "") {
  Options o;
  o.command = command;
  o.target = target;
  o.B = B;
  o.seed = seed;
  o.json_out = json_out;
  std::ostringstream out, err;
  int code = run(o, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(LEFMOD_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("check") {
  auto fano = run_cmd("check", "fano");
  CHECK(fano.code == 0);
  CHECK(contains(fano.out, "result: pass"));
  CHECK(run_cmd("check", "lorentz3").code == 0);
  CHECK(run_cmd("check", "endC").code == 0);
  CHECK(run_cmd("check", "endH").code == 0);

  auto y1 = run_cmd("check", "fano", "y1");
  CHECK(y1.code == 1);
  CHECK(contains(y1.out, "HL degree 1: kernel witness (1, 0, 0, 0, 0, 0, 0) = y1"));

  auto ind = run_cmd("check", "indefinite2");
  CHECK(ind.code == 1);
  CHECK(contains(ind.out, "HR FAIL"));
  CHECK(contains(ind.out, "witness (1, 1/2) = x1+1/2*x2"));
}

TEST_CASE("decompose") {
  auto s4 = run_cmd("decompose", "fano", "y1,y3,y5,y7");
  CHECK(s4.code == 0);
  CHECK(contains(s4.out, "summands: 3 in 2 isomorphism classes"));
  CHECK(contains(s4.out, "spanned by (1, -1, 1, -1, 1, -1, 1) = y1-y2+y3-y4+y5-y6+y7"));
  auto s5 = run_cmd("decompose", "fano", "y1,y3+y5,y2+y4+y6+y7");
  CHECK(s5.code == 0);
  CHECK(contains(s5.out, "(1,5,5,1)"));
  CHECK(contains(s5.out, "(2,2)       1  1"));
  CHECK(contains(run_cmd("decompose", "endH").out, "H       +1"));
  CHECK(contains(run_cmd("decompose", "endC").out, "C       +1"));
  CHECK(contains(run_cmd("decompose", "sqrt2").out, "other(2"));
}

TEST_CASE("perverse") {
  auto s4 = run_cmd("perverse", "fano", "y1,y3,y5,y7");
  CHECK(s4.code == 0);
  CHECK(contains(s4.out, "P dims by level j = 0..6: (0,0,1,15,16,16,16)"));
  CHECK(contains(s4.out, "Gr row j = 3: (1,6,6,1)"));
  CHECK(contains(s4.out, "Deligne splitting: pass"));
  auto u = run_cmd("perverse", "u23", "y1");
  CHECK(u.code == 0);
  CHECK(contains(u.out, "signature identity: -1 -1 -1 pass"));
  auto s5 = run_cmd("perverse", "fano", "y1,y3+y5,y2+y4+y6+y7");
  CHECK(s5.code == 0);
  CHECK(contains(s5.out, "filtration trivial"));
}

TEST_CASE("matroid and apolar") {
  auto m = run_cmd("matroid", "fano");
  CHECK(m.code == 0);
  CHECK(contains(m.out, "flat counts: (1,7,7,1)"));
  auto b = run_cmd("matroid", data("u24_bases.txt"));
  CHECK(b.code == 0);
  CHECK(contains(b.out, "flat counts: (1,4,1)"));
  CHECK(run_cmd("apolar", "lorentz3").code == 0);
  CHECK(run_cmd("apolar", data("lorentz3.json")).code == 0);
  auto ind = run_cmd("apolar", "indefinite2");
  CHECK(ind.code == 1);
  CHECK(contains(ind.out, "HR degree 1 witness"));
  CHECK(run_cmd("matroid", "endC").code == 2);
}

TEST_CASE("instance files") {
  auto e = run_cmd("decompose", data("endC_explicit.json"));
  CHECK(e.code == 0);
  CHECK(contains(e.out, "C       +1"));
  CHECK(run_cmd("check", data("truncated3.json")).code == 0);
  auto f = run_cmd("perverse", data("fano_sym.json"));
  CHECK(contains(f.out, "filtration trivial"));
}

TEST_CASE("invalid input exits with 2 and a location") {
  auto s = run_cmd("check", data("bad_syntax.json"));
  CHECK(s.code == 2);
  CHECK(contains(s.err, "byte 34"));
  auto m = run_cmd("check", data("bad_matrix.json"));
  CHECK(m.code == 2);
  CHECK(contains(m.err, "at /module/action/a/0/1"));
  auto q = run_cmd("check", data("bad_form.json"));
  CHECK(q.code == 2);
  CHECK(contains(q.err, "not symmetric"));
  CHECK(run_cmd("check", "nosuch").code == 2);
  CHECK(run_cmd("frobnicate", "fano").code == 2);
  CHECK(contains(run_cmd("check", "fano", "y9").err, "unknown label 'y9'"));
  CHECK_THROWS_AS(parse_instance(R"({"field": "R", "fixture": "fano"})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"field": "Q", "fixture": "fano", "extra": 1})"), InputError);
}

TEST_CASE("serialization round trip") {
  for (auto name : {"endC_explicit.json", "truncated3.json", "lorentz3.json", "u24_bases.txt", "fano_sym.json"}) {
    CAPTURE(name);
    std::string once = serialize(load_instance(data(name)));
    std::string twice = serialize(parse_instance(once));
    CHECK(once == twice);
    CHECK(sha256_hex(once) == sha256_hex(twice));
  }
  for (auto& name : fixture_names()) CHECK(serialize(parse_instance(serialize(load_instance(name)))) == serialize(load_instance(name)));
  // the explicit instance describes the same module as the fixture
  Fixture a = build_fixture(load_instance(data("endC_explicit.json"))), b = make_fixture("endC");
  CHECK(a.MF.M.dims() == b.MF.M.dims());
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("reports are deterministic") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lefmod_cli_test";
  fs::create_directories(dir);
  std::string j1 = (dir / "a.json").string(), j2 = (dir / "b.json").string();
  auto r1 = run_cmd("decompose", "fano", "y1,y3,y5,y7", 3, j1);
  auto r2 = run_cmd("decompose", "fano", "y1,y3,y5,y7", 3, j2);
  CHECK(r1.out == r2.out);
  CHECK(slurp(j1) == slurp(j2));
  auto rep = nlohmann::json::parse(slurp(j1));
  CHECK(rep["command"] == "decompose");
  CHECK(rep["seed"] == 3);
  CHECK(rep["version"] == version());
  CHECK(rep["input_digest"] == sha256_hex(serialize(load_instance("fano"))));
  CHECK(rep["results"]["canonical"].size() == 3);
  // the multiset does not depend on the seed
  run_cmd("decompose", "fano", "y1,y3,y5,y7", 8, j2);
  CHECK(nlohmann::json::parse(slurp(j2))["results"]["canonical"] == rep["results"]["canonical"]);
  // rationals are p/q strings
  run_cmd("check", "indefinite2", "", 1, j2);
  CHECK(contains(slurp(j2), "\"1/2\""));
}

TEST_CASE("binary: exit codes and LEFMOD_SEED") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lefmod_cli_test";
  fs::create_directories(dir);
  std::string bin = LEFMOD_BIN, out = (dir / "seed.json").string();
  auto status = [](const std::string& cmd) {
    int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status(bin + " check fano") == 0);
  CHECK(status(bin + " check fano --B y1") == 1);
  CHECK(status(bin + " check indefinite2") == 1);
  CHECK(status(bin + " check nosuch") == 2);
  CHECK(status(bin + " check") == 2);
  CHECK(status(bin + " --version") == 0);
  CHECK(status("LEFMOD_SEED=42 " + bin + " decompose u23 --seed 5 --json " + out) == 0);
  CHECK(nlohmann::json::parse(slurp(out))["seed"] == 42);
  CHECK(status(bin + " decompose u23 --seed 5 --json " + out) == 0);
  CHECK(nlohmann::json::parse(slurp(out))["seed"] == 5);
}
