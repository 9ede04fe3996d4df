// CLI-level tests run in-process through run_command; paths are injected by
// the build (PICGEN_CORPUS_DIR / PICGEN_TEST_DATA_DIR).
#include <catch2/catch_amalgamated.hpp>

#include "picgen/cli.hpp"

using namespace picgen;

#ifndef PICGEN_CORPUS_DIR
#define PICGEN_CORPUS_DIR "corpus"
#endif
#ifndef PICGEN_TEST_DATA_DIR
#define PICGEN_TEST_DATA_DIR "tests/data"
#endif

namespace {
std::string corpus(const std::string& file) {
  return std::string(PICGEN_CORPUS_DIR) + "/" + file;
}
}  // namespace

TEST_CASE("validate", "[cli]") {
  auto ok = run_command({"validate", corpus("g1_f5_klein.json")});
  CHECK(ok.exit_code == 0);
  CHECK(ok.output == "valid, g=1, q=5\n");

  auto bad = run_command({"validate",
                          std::string(PICGEN_TEST_DATA_DIR) + "/invalid_curve.json"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("f-separable") != std::string::npos);

  auto missing = run_command({"validate", "/nonexistent/nope.json"});
  CHECK(missing.exit_code == 1);
}

TEST_CASE("usage errors exit 2", "[cli]") {
  CHECK(run_command({}).exit_code == 2);
  CHECK(run_command({"frobnicate"}).exit_code == 2);
  CHECK(run_command({"validate"}).exit_code == 2);  // missing positional
}

TEST_CASE("picard order and enumerate", "[cli]") {
  auto order = run_command({"picard", "order", corpus("g1_f5_klein.json")});
  CHECK(order.exit_code == 0);
  CHECK(order.output == "4\n");

  auto en = run_command({"picard", "enumerate", corpus("g1_f5_klein.json")});
  CHECK(en.exit_code == 0);
  CHECK(en.output.find("order=4 structure=[2,2]") != std::string::npos);
}

TEST_CASE("picard add and psi", "[cli]") {
  auto sum = run_command({"picard", "add", corpus("g1_f5_klein.json"),
                          "--d1", R"({"u":[0,1],"v":[]})",
                          "--d2", R"({"u":[3,1],"v":[]})"});
  CHECK(sum.exit_code == 0);
  CHECK(sum.output == "{\"u\":[2,1],\"v\":[]}\n");

  auto bit = run_command({"picard", "psi", corpus("g1_f2_exceptional.json"),
                          "--d", R"({"u":[0,1],"v":[1]})"});
  CHECK(bit.exit_code == 0);
  CHECK(bit.output == "1\n");
}

TEST_CASE("points and count", "[cli]") {
  auto pts = run_command({"points", corpus("g1_f5_klein.json"),
                          "--xset", "explicit:0,1"});
  CHECK(pts.exit_code == 0);
  CHECK(pts.output == "0,0\ncount=1\n");

  auto cnt = run_command({"count", corpus("g1_f5_klein.json"), "--ext", "2"});
  CHECK(cnt.exit_code == 0);
  CHECK(cnt.output == "32\n");
}

TEST_CASE("shape", "[cli]") {
  auto coset = run_command({"shape", "--group", "8",
                            "--subset", "explicit:0,2,4,6"});
  CHECK(coset.exit_code == 0);
  CHECK(coset.output.find("is_coset=1") != std::string::npos);

  auto ival = run_command({"shape", "--group", "5",
                           "--subset", "interval:5:0:3"});
  CHECK(ival.exit_code == 0);
  CHECK(ival.output.find("size=3") != std::string::npos);

  auto vs = run_command({"shape", "--field-p", "3", "--field-n", "2",
                         "--subset", "vsinterval:2:1"});
  CHECK(vs.exit_code == 0);
  CHECK(vs.output.find("size=6") != std::string::npos);
}

TEST_CASE("generate", "[cli]") {
  auto plan = run_command({"generate", corpus("g1_f5_klein.json"), "--plan-only"});
  CHECK(plan.exit_code == 0);
  CHECK(plan.output.find("t=2704 i=5 q^i=3125") != std::string::npos);

  auto run = run_command({"generate", corpus("g1_f5_klein.json"), "--json"});
  CHECK(run.exit_code == 0);
  // byte-identical output across two runs (determinism gate)
  auto rerun = run_command({"generate", corpus("g1_f5_klein.json"), "--json"});
  CHECK(run.output == rerun.output);

  // the guard turns large runs into plan-only reports
  auto guarded = run_command({"generate", corpus("g1_f5_klein.json"),
                              "--guard", "100"});
  CHECK(guarded.exit_code == 0);
  CHECK(guarded.output.find("plan-only") != std::string::npos);
}

TEST_CASE("check", "[cli]") {
  auto full = run_command({"check", corpus("g1_f5_klein.json"),
                           "--subset", "coset:1:0"});
  CHECK(full.exit_code == 0);
  CHECK(full.output.find("conclusion=1") != std::string::npos);

  auto ker = run_command({"check", corpus("g1_f2_exceptional.json"),
                          "--subset", "explicit:1", "--json"});
  CHECK(ker.exit_code == 0);
  auto j = Json::parse(ker.output);
  CHECK(j.at("exceptional").get<bool>());
  CHECK_FALSE(j.at("meets_H_C").get<bool>());
  CHECK(j.at("generated_kernel").get<bool>());
}

TEST_CASE("charsum", "[cli]") {
  auto cs = run_command({"charsum", corpus("g1_f2_exceptional.json")});
  CHECK(cs.exit_code == 0);
  CHECK(cs.output.find("max_bound_violation") != std::string::npos);
}

TEST_CASE("subset spec errors", "[cli]") {
  auto bad = run_command({"points", corpus("g1_f5_klein.json"),
                          "--xset", "nonsense:1:2"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.error.find("unknown subset spec") != std::string::npos);

  // interval specs need a prime field
  auto wrong = run_command({"points", corpus("g1_f4_exceptional.json"),
                            "--xset", "interval:4:0:2"});
  CHECK(wrong.exit_code == 1);
}

TEST_CASE("deterministic json across repeated invocations", "[cli]") {
  for (const char* sub : {"g1_f2_exceptional.json", "g2_f3.json"}) {
    auto a = run_command({"picard", "enumerate", corpus(sub), "--json"});
    auto b = run_command({"picard", "enumerate", corpus(sub), "--json"});
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("corpus loading errors", "[cli]") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "picgen_corpus_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  // empty directory is an input error
  REQUIRE_THROWS_AS(load_corpus(tmp.string()), input_error);

  // an invalid curve file is reported with its filename and clause
  fs::copy_file(std::string(PICGEN_TEST_DATA_DIR) + "/invalid_curve.json",
                tmp / "bad.json");
  try {
    load_corpus(tmp.string());
    FAIL("expected input_error");
  } catch (const input_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("bad.json") != std::string::npos);
    CHECK(msg.find("f-separable") != std::string::npos);
  }
  fs::remove_all(tmp);

  REQUIRE_THROWS_AS(load_corpus("/nonexistent/corpus"), input_error);
}

TEST_CASE("PICGEN_GUARD raises the desk guards", "[cli]") {
  setenv("PICGEN_GUARD", "100", 1);
  auto blocked = run_command({"count", corpus("g1_f13.json"), "--ext", "2"});
  CHECK(blocked.exit_code == 1);
  CHECK(blocked.error.find("resource guard") != std::string::npos);
  setenv("PICGEN_GUARD", "1000000", 1);
  auto ok = run_command({"count", corpus("g1_f13.json"), "--ext", "2"});
  CHECK(ok.exit_code == 0);
  unsetenv("PICGEN_GUARD");
}

TEST_CASE("field spec with explicit modulus", "[cli]") {
  // a valid non-canonical modulus is accepted
  auto j = Json::parse(R"({"p":2,"n":2,"modulus":[1,1,1]})");
  auto f = field_from_json(j);
  CHECK(f->q() == 4);
  // a reducible modulus is rejected
  auto bad = Json::parse(R"({"p":2,"n":2,"modulus":[1,0,1]})");
  REQUIRE_THROWS_AS(field_from_json(bad), input_error);
  // round trip
  auto back = field_from_json(field_to_json(*f));
  CHECK(back.get() == f.get());
}
