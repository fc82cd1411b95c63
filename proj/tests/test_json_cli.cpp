#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "theta/json_io.hpp"

using namespace theta;
using theta::io::json;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = fs::path("theta_cli_tmp");

struct TmpDir {
  TmpDir() {
    fs::remove_all(kTmp);
    fs::create_directories(kTmp);
  }
} tmp_dir_guard;

int run_cli(const std::string& args) {
  std::string cmd = std::string(THETA_CLI_PATH) + " " + args + " > " +
                    (kTmp / "stdout.txt").string() + " 2> " + (kTmp / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return json::parse(in);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("action json round trip") {
  for (const auto& a : actions::builtin_catalog()) {
    CAPTURE(a.name());
    json j = io::action_to_json(a);
    if (a.kind() == actions::Kind::generator) continue;  // functions don't round-trip
    auto b = io::action_from_json(j);
    CHECK(b.name() == a.name());
    CHECK(b.eval(1.5, 2.5) == a.eval(1.5, 2.5));
  }
}

TEST_CASE("action json: generator construction and validation failures") {
  json j = {{"kind", "generator"},
            {"params", {{"lambda", 0.5}, {"f", {{"kind", "rational"}}}}}};
  auto a = io::action_from_json(j);
  CHECK(a.eval(1.0, 1.0) == doctest::Approx(0.5 * (2.0 / 3.0)));

  CHECK_THROWS_AS(io::action_from_json({{"kind", "nope"}}), Error);
  CHECK_THROWS_AS(io::action_from_json({{"kind", "k_sum"}, {"params", {{"k", 0.0}}}}), Error);
  CHECK_THROWS_AS(io::action_from_json({{"kind", "root_sum_power"}, {"params", {{"n", 0}}}}),
                  Error);
  CHECK_THROWS_AS(io::action_from_json(json::array()), Error);
}

TEST_CASE("space json round trip and validation") {
  auto sp = fixtures::paper_3pt();
  json j = io::space_to_json(sp);
  auto sp2 = io::space_from_json(j, "copy");
  CHECK(sp2.size() == 3);
  CHECK(sp2.dist(2, 1) == 10.0);

  json bad = {{"points", {"a", "b"}}, {"distances", {{0.0, 1.0}}}};
  CHECK_THROWS_AS(io::space_from_json(bad, "bad"), Error);
  CHECK_THROWS_AS(io::space_from_json({{"points", {"a"}}}, "bad"), Error);
}

TEST_CASE("map, multimap and caristi json loaders") {
  auto fx = fixtures::caristi_chain();
  json jm = {{"map", {{"p0", "p1"}, {"p1", "p2"}, {"p2", "p2"}}}};
  auto m = io::map_from_json(jm, fx.space);
  CHECK(m(0) == 1);
  CHECK_THROWS_AS(io::map_from_json({{"map", {{"p0", "p1"}}}}, fx.space), Error);
  CHECK_THROWS_AS(io::map_from_json({{"map", {{"p0", "zz"}, {"p1", "p2"}, {"p2", "p2"}}}},
                                    fx.space),
                  Error);

  json jmm = {{"map", {{"p0", {"p1", "p2"}}, {"p1", {"p2"}}, {"p2", {"p2"}}}}};
  auto mm = io::multimap_from_json(jmm, fx.space);
  CHECK(mm.to[0].size() == 2);

  json jc = {{"gamma", {{"kind", "identity"}}},
             {"psi",
              {{"kind", "odd_root_phi"},
               {"n", 0},
               {"phi", {{"p0", 4.0}, {"p1", 2.0}, {"p2", 0.0}}}}}};
  auto cd = io::caristi_from_json(jc, fx.space);
  CHECK(cd.psi(2, 0) == 4.0);
  CHECK(cd.gamma(3.0) == 3.0);

  json jtable = {{"gamma", {{"kind", "custom_table"}, {"table", {{0.0, 0.0}, {2.0, 1.0}}}}},
                 {"psi", {{"kind", "table"}, {"values", {{0.0, 1.0, 2.0},
                                                          {1.0, 0.0, 1.0},
                                                          {2.0, 1.0, 0.0}}}}}};
  auto cd2 = io::caristi_from_json(jtable, fx.space);
  CHECK(cd2.gamma(1.0) == 0.5);
  CHECK(cd2.psi(0, 2) == 2.0);

  CHECK_THROWS_AS(io::caristi_from_json({{"gamma", {{"kind", "exotic"}}}}, fx.space), Error);
}

TEST_CASE("dump_json: full-precision floats, deterministic text") {
  json j;
  j["tenth"] = 0.1;
  j["two"] = 2.0;
  j["neg"] = -1.0 / 3.0;
  j["int"] = 42;
  j["inf"] = std::numeric_limits<double>::infinity();
  std::string text = io::dump_json(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("-0.33333333333333331") != std::string::npos);
  CHECK(text.find("\"int\": 42") != std::string::npos);
  CHECK(text.find("null") != std::string::npos);  // non-finite mapped to null
  CHECK(io::dump_json(j) == text);

  json round = json::parse(text);
  CHECK(round["tenth"].get<double>() == 0.1);
}

// --- CLI end-to-end -------------------------------------------------------

TEST_CASE("cli: validate-space exit codes and violation payloads") {
  auto out = (kTmp / "val.json").string();

  CHECK(run_cli("validate-space --space builtin:paper-3pt --action builtin:sum_plus_prod "
                "--json-out " + out) == 0);
  json ok = read_json(out);
  CHECK(ok["status"] == "pass");
  CHECK(ok["result"]["pass"] == true);

  CHECK(run_cli("validate-space --space builtin:paper-3pt --action builtin:k_sum:k=1 "
                "--json-out " + out) == 1);
  json bad = read_json(out);
  CHECK(bad["status"] == "violations");
  bool found = false;
  for (const auto& v : bad["violations"])
    if (v["axiom"] == "A3" && v["lhs"] == 10.0 && v["rhs"] == 8.0) found = true;
  CHECK(found);

  CHECK(run_cli("validate-space --space builtin:remark-metric --plain") == 0);
  CHECK(run_cli("validate-space --space builtin:remark-metric --action builtin:k_sum:k=0.5") ==
        1);
}

TEST_CASE("cli: loads a space from a json file") {
  auto path = (kTmp / "space.json").string();
  write_file(path, R"({"points": ["a", "b"], "distances": [[0, 1], [1, 0]]})");
  CHECK(run_cli("validate-space --space " + path + " --action builtin:k_sum:k=1") == 0);
  write_file(path, R"({"points": ["a", "b"], "distances": [[0], [1]]})");
  CHECK(run_cli("validate-space --space " + path + " --action builtin:k_sum:k=1") == 2);
  write_file(path, "not json at all");
  CHECK(run_cli("validate-space --space " + path + " --action builtin:k_sum:k=1") == 2);
}

TEST_CASE("cli: eta, ball, separate, uniformity-base") {
  auto out = (kTmp / "out.json").string();

  CHECK(run_cli("eta --action builtin:k_sum:k=1 --r 10 --s 4 --json-out " + out) == 0);
  CHECK(read_json(out)["result"]["t"] == 6.0);

  // strict-range failure is an input-class error: exit 2
  CHECK(run_cli("eta --action builtin:k_sum:k=0.25 --r 1 --s 0.1 --mode strict") == 2);
  CHECK(run_cli("eta --action builtin:k_sum:k=0.25 --r 1 --s 0.1 --mode existence") == 0);

  CHECK(run_cli("ball --space builtin:paper-3pt --action builtin:k_sum:k=1 --center x "
                "--radius 3 --json-out " + out) == 0);
  json ball = read_json(out);
  CHECK(ball["result"]["members"] == json::array({"x", "y"}));
  CHECK(run_cli("ball --space builtin:paper-3pt --action builtin:k_sum:k=1 --center nope "
                "--radius 3") == 2);

  CHECK(run_cli("separate --space builtin:paper-3pt --action builtin:sum_plus_prod "
                "--x x --y z --json-out " + out) == 0);
  json sep = read_json(out);
  CHECK(sep["result"]["disjoint_verified"] == true);

  CHECK(run_cli("uniformity-base --action builtin:sum_plus_prod --n 2 --json-out " + out) == 0);
  CHECK(read_json(out)["result"]["m"] == 5);
}

TEST_CASE("cli: banach and the caristi pipeline") {
  auto out = (kTmp / "fp.json").string();

  CHECK(run_cli("banach --space builtin:banach-5pt --map builtin:banach-5pt --x0 q0 "
                "--json-out " + out) == 0);
  json b = read_json(out);
  CHECK(b["result"]["status"] == "converged");
  CHECK(b["result"]["result"] == "q4");
  CHECK(b["result"]["contraction_estimate"] == 0.5);

  CHECK(run_cli("banach --space builtin:banach-5pt --map missing.json --x0 q0") == 2);

  CHECK(run_cli("caristi --space builtin:caristi-chain --action builtin:k_sum:k=1 "
                "--map builtin:caristi-chain --caristi builtin:caristi-chain "
                "--json-out " + out) == 0);
  json c = read_json(out);
  CHECK(c["result"]["fixed_point"] == "p2");
  CHECK(c["result"]["minimal_elements"] == json::array({"p2"}));

  CHECK(run_cli("endpoint --space builtin:caristi-chain --action builtin:k_sum:k=1 "
                "--map builtin:caristi-chain --caristi builtin:caristi-chain "
                "--json-out " + out) == 0);
  CHECK(read_json(out)["result"]["fixed_point"] == "p2");

  // hypothesis violation: computed finding, exit 1 with the witness reported
  auto badmap = (kTmp / "badmap.json").string();
  write_file(badmap, R"({"map": {"p0": "p1", "p1": "p2", "p2": "p1"}})");
  CHECK(run_cli("caristi --space builtin:caristi-chain --action builtin:k_sum:k=1 "
                "--map " + badmap + " --caristi builtin:caristi-chain --json-out " + out) == 1);
  json h = read_json(out);
  CHECK(h["error"]["kind"] == "hypothesis");
}

TEST_CASE("cli: identical seeds give byte-identical reports modulo timing") {
  auto out1 = (kTmp / "det1.json").string();
  auto out2 = (kTmp / "det2.json").string();
  std::string cmd = "check-action --action builtin:prod_over_one_plus_prod --seed 7 --json-out ";
  CHECK(run_cli(cmd + out1) == 1);  // (II) violations expected
  CHECK(run_cli(cmd + out2) == 1);
  json a = read_json(out1), b = read_json(out2);
  CHECK(a["timing_ms"].is_number());
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(io::dump_json(a) == io::dump_json(b));
}

TEST_CASE("cli: bad flags exit 2") {
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("eta --action builtin:k_sum:k=1 --r 10") == 2);  // missing --s
}
