#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symq/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = symq::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

json result_of(const CliRun& r) {
  REQUIRE(r.code == 0);
  return json::parse(r.out).at("result");
}

}  // namespace

TEST_CASE("cli: group subcommands") {
  CHECK(result_of(run({"group", "order", "--group", "sym:5"})).at("order") == "120");
  CHECK(result_of(run({"group", "order", "--group", "sum(sym:4,sym:4,sym:4,sym:4)"})).at("order") ==
        "331776");

  json trans = result_of(run({"group", "transitivity", "--group", "graph:4", "--k", "2"}));
  CHECK(trans.at("k_transitive") == false);
  json trans1 = result_of(run({"group", "transitivity", "--group", "graph:4", "--k", "1"}));
  CHECK(trans1.at("k_transitive") == true);

  json prob = result_of(run({"group", "tupleprob", "--group", "sym:4", "--i", "1,2", "--j", "3,4"}));
  CHECK(prob.at("prob") == "1/12");

  json orbits = result_of(run({"group", "orbits", "--group", "triv:3"}));
  CHECK(orbits.at("orbits").size() == 3);

  json build = result_of(run({"group", "build", "--group", "graph:4"}));
  CHECK(build.at("degree") == 6);
  CHECK(build.at("encoding") == "edge-set");
  CHECK(build.at("group").at("generators").size() >= 1);

  json sample = result_of(run({"group", "sample", "--group", "sym:3", "--count", "4", "--seed", "9"}));
  CHECK(sample.at("samples").size() == 4);
}

TEST_CASE("cli: fn subcommands") {
  json sym = result_of(run({"fn", "symcheck", "--fn", "triv:5", "--group", "sym:5"}));
  CHECK(sym.at("symmetric") == true);

  json asym = result_of(run({"fn", "symcheck", "--fn", "dist(sym:4,2)", "--group", "cyc:4"}));
  CHECK(asym.at("symmetric") == true);  // cyclic subgroup preserves both sides

  json evald = result_of(run({"fn", "eval", "--fn", "triv:3", "--x", "111"}));
  CHECK(evald.at("value") == 1);
  json off = result_of(run({"fn", "eval", "--fn", "triv:3", "--x", "011"}));
  CHECK(off.at("on_promise") == false);

  json zoo = result_of(run({"fn", "zoo", "--fn", "collision:4"}));
  CHECK(zoo.at("domain_size") == 60);
}

TEST_CASE("cli: oracle subcommands") {
  json inf = result_of(run({"costproxy", "--group", "sym:3", "--r", "3"}));
  CHECK(inf.at("entries").at(0).at("cost") == "inf");

  json deg = result_of(run({"degree", "--fn", "triv:3", "--eps", "1/3"}));
  CHECK(deg.at("certificate").at("degree") == 1);
  CHECK(deg.at("certificate").at("mode") == "exact");

  json dt = result_of(run({"dtree", "--fn", "triv:4"}));
  CHECK(dt.at("depth") == 1);
  json ddt = result_of(run({"dtree", "--fn", "triv:3", "--dist", "uniform", "--eps", "0"}));
  CHECK(ddt.at("depth") == 1);

  json hd = result_of(run({"harddist", "--fn", "triv:3", "--budget", "0", "--kind", "poly"}));
  CHECK(hd.at("certified_error") == "1/2");

  json sim = result_of(run({"simulate", "--fn", "triv:4", "--group", "sym:4", "--range", "2",
                            "--mode", "bijection", "--trials", "50", "--seed", "3"}));
  CHECK(sim.at("agree") == 50);
  CHECK(sim.at("mismatch") == 0);

  json red = result_of(run({"reduce", "--kind", "power", "--group", "sym:3", "--l", "2",
                            "--mock-queries", "5"}));
  CHECK(red.at("raw_queries") == 10);
  CHECK(red.at("overhead_exact") == true);
}

TEST_CASE("cli: exit codes and error reports") {
  CliRun usage = run({"group", "order"});  // missing --group
  CHECK(usage.code == 2);

  CliRun domain = run({"group", "orbits", "--group", "nosuch:4"});
  CHECK(domain.code == 1);
  CHECK(json::parse(domain.err).at("error").at("kind") == "ParseError");

  CliRun cap = run({"group", "tupleprob", "--group", "sym:3", "--i", "1,1", "--j", "1,2"});
  CHECK(cap.code == 1);
  CHECK(json::parse(cap.err).at("error").at("kind") == "BadShape");
}

TEST_CASE("cli: determinism of reports and envelope fields") {
  std::vector<std::string> args = {"harddist", "--fn",   "dist(sym:3,1)", "--budget",
                                   "1",        "--kind", "poly",          "--seed",
                                   "42"};
  CliRun a = run(args);
  CliRun b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  json report = json::parse(a.out);
  CHECK(report.at("tool") == "symq");
  CHECK(report.at("seed") == 42);
  CHECK(report.at("mode") == "exact");
  CHECK(report.contains("digest"));
  CHECK(report.at("argv").size() == args.size());
}

TEST_CASE("cli: csv output for sweeps") {
  CliRun csv = run({"costproxy", "--group", "sym:3", "--r", "1,3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "r,cost,degree,epsilon");
  CHECK(row1.substr(0, 2) == "1,");
  CHECK(row2.substr(0, 6) == "3,inf,");
}

TEST_CASE("cli: experiment runner is deterministic and collects reports") {
  const char* spec_path = "/tmp/symq_experiment_spec.json";
  {
    std::ofstream spec(spec_path);
    spec << R"({
      "seed": 7,
      "steps": [
        {"args": ["group", "order", "--group", "sym:4"]},
        {"args": ["fn", "symcheck", "--fn", "collision:4", "--group", "sym:4"]},
        {"args": ["group", "sample", "--group", "sym:3", "--count", "3"]}
      ]
    })";
  }
  CliRun a = run({"experiment", "--spec", spec_path});
  CliRun b = run({"experiment", "--spec", spec_path});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  json result = json::parse(a.out).at("result");
  CHECK(result.at("ok") == true);
  CHECK(result.at("steps").size() == 3);
  CHECK(result.at("steps").at(0).at("report").at("result").at("order") == "24");

  // Parallel execution produces the same step reports (the envelope differs
  // by the --parallel flag itself).
  CliRun c = run({"experiment", "--spec", spec_path, "--parallel"});
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out).at("result").at("steps") == json::parse(a.out).at("result").at("steps"));
}

TEST_CASE("cli: group JSON files load through the @ grammar") {
  const char* path = "/tmp/symq_group.json";
  {
    std::ofstream f(path);
    f << R"({"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]})";
  }
  json order = result_of(run({"group", "order", "--group", std::string("@") + path}));
  CHECK(order.at("order") == "6");

  const char* named = "/tmp/symq_group_named.json";
  {
    std::ofstream f(named);
    f << R"({"kind": "alternating", "n": 4})";
  }
  CHECK(result_of(run({"group", "order", "--group", std::string("@") + named})).at("order") == "12");
}
