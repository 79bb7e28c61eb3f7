#include "symq/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "symq/json_io.hpp"
#include "symq/oracles.hpp"
#include "symq/parse.hpp"
#include "symq/version.hpp"

namespace symq {
namespace {

std::string fnv_digest(const std::vector<std::string>& args) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& a : args) {
    for (unsigned char c : a) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0x1f;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) {
    try {
      out.push_back(std::stoi(cur));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad integer list '" + csv + "'");
    }
  }
  if (out.empty()) fail(ErrorKind::ParseError, "empty integer list");
  return out;
}

struct CliState {
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  bool use_float = false;
  size_t closure_cap = kDefaultClosureCap;
  long long domain_cap = kDefaultDomainCap;
  size_t table_cap = kDefaultTableCap;

  std::string command;
  Json result;
  std::vector<std::vector<std::string>> csv;  // optional tabular form

  ParseCaps caps() const { return {closure_cap, domain_cap, table_cap}; }
  DegreeLpOptions lp_opts() const {
    DegreeLpOptions o;
    o.exact = !use_float;
    return o;
  }
};

Json one_indexed(const std::vector<int>& v) {
  Json arr = Json::array();
  for (int x : v) arr.push_back(x + 1);
  return arr;
}

// ---- subcommand handlers ------------------------------------------------

Json handle_group(CliState& st, const std::string& verb, const std::string& group_spec,
                  int k, const std::string& tuple_i, const std::string& tuple_j, int count) {
  GroupSpec g = parse_group_spec(group_spec, st.caps());
  Json r;
  r["group_spec"] = g.canonical;
  r["degree"] = g.action.degree();
  r["encoding"] = g.encoding.kind();
  if (verb == "build" || verb == "inspect") {
    r["order"] = g.action.order().get_str();
    r["num_generators"] = g.action.generators().size();
    r["group"] = group_to_json(g.action);
    if (verb == "inspect") {
      Json orbits = Json::array();
      for (const auto& orb : g.action.orbits()) orbits.push_back(one_indexed(orb));
      r["orbits"] = std::move(orbits);
      r["transitive"] = g.action.is_transitive();
    }
  } else if (verb == "order") {
    r["order"] = g.action.order().get_str();
  } else if (verb == "orbits") {
    Json orbits = Json::array();
    for (const auto& orb : g.action.orbits()) orbits.push_back(one_indexed(orb));
    r["orbits"] = std::move(orbits);
  } else if (verb == "transitivity") {
    r["k"] = k;
    r["k_transitive"] = g.action.is_k_transitive(k);
  } else if (verb == "tupleprob") {
    std::vector<int> from = parse_int_list(tuple_i);
    std::vector<int> to = parse_int_list(tuple_j);
    for (int& v : from) --v;
    for (int& v : to) --v;
    r["i"] = parse_int_list(tuple_i);
    r["j"] = parse_int_list(tuple_j);
    r["prob"] = rat_to_string(g.action.tuple_map_prob(from, to));
  } else if (verb == "sample") {
    Rng rng(st.seed);
    Json samples = Json::array();
    for (int t = 0; t < count; ++t)
      samples.push_back(g.action.uniform_sample(rng).one_indexed_images());
    r["samples"] = std::move(samples);
  }
  return r;
}

Json handle_fn(CliState& st, const std::string& verb, const std::string& fn_spec,
               const std::string& group_spec, const std::string& x, int max_entries) {
  PartialFn f = parse_fn_spec(fn_spec, st.caps());
  Json r;
  r["fn"] = f.name();
  r["n"] = f.n();
  r["m"] = f.m();
  if (verb == "zoo") {
    r["domain_size"] = f.domain_size();
    if (static_cast<int>(f.domain_size()) <= max_entries) r["function"] = fn_to_json(f);
  } else if (verb == "eval") {
    Str input = parse_display(x, f.m());
    std::optional<int> v = f.evaluate(input);
    r["x"] = x;
    r["on_promise"] = v.has_value();
    if (v.has_value()) r["value"] = *v;
  } else if (verb == "symcheck") {
    GroupSpec g = parse_group_spec(group_spec, st.caps());
    SymmetryReport rep = is_symmetric_under(f, g.action);
    r["group_spec"] = g.canonical;
    r["symmetric"] = rep.symmetric;
    if (!rep.symmetric) {
      r["witness_input"] = display_string(*rep.witness_input);
      r["witness_perm"] = rep.witness_perm->one_indexed_images();
    }
  }
  return r;
}

Json handle_simulate(CliState& st, const std::string& fn_spec, const std::string& group_spec,
                     int range, const std::string& mode_name, int trials,
                     const std::string& fixed_x, const std::string& transcript_path) {
  PartialFn f = parse_fn_spec(fn_spec, st.caps());
  GroupSpec g = parse_group_spec(group_spec, st.caps());
  if (g.action.degree() != f.n()) fail(ErrorKind::DegreeMismatch, "group degree != function length");
  ShuffleMode mode = shuffle_mode_from_name(mode_name);

  FiniteDistribution lp_dual;
  const FiniteDistribution* dual_ptr = nullptr;
  if (mode == ShuffleMode::LpDual) {
    // 0-side restriction of the poly hard distribution for the
    // distinguishing function, renormalized over D_{n,r}.
    Rng seed_rng(st.seed);
    HardDistribution hd = hard_distribution(distinguishing_fn(g.action, range, st.closure_cap),
                                            1, HardDistKind::Poly, seed_rng, 60, st.lp_opts());
    std::vector<std::pair<Str, Rat>> zero_side;
    Rat total(0);
    for (size_t i = 0; i < hd.dist.size(); ++i) {
      const Str& s = hd.dist.support()[i];
      if (range_size(s) <= range) {
        zero_side.push_back({s, hd.dist.weights()[i]});
        total += hd.dist.weights()[i];
      }
    }
    if (zero_side.empty()) fail(ErrorKind::BadShape, "hard distribution has no small-range mass");
    for (auto& [s, w] : zero_side) w /= total;
    lp_dual = FiniteDistribution::from_weights(std::move(zero_side));
    dual_ptr = &lp_dual;
  }

  Evaluator eval = evaluator_for(f);
  Rng rng(st.seed);
  std::ofstream transcript;
  if (!transcript_path.empty()) {
    transcript.open(transcript_path);
    if (!transcript) fail(ErrorKind::ParseError, "cannot open transcript path");
  }

  const auto& table = f.table();
  Str pinned;
  if (!fixed_x.empty()) {
    pinned = parse_display(fixed_x, f.m());
    if (!f.evaluate(pinned).has_value())
      fail(ErrorKind::PromiseViolated, "--x is not a promise input");
  }
  long long agree = 0, mismatch = 0, violations = 0;
  long long max_queries = 0;
  int max_range = 0;
  for (int t = 0; t < trials; ++t) {
    Str input = fixed_x.empty() ? table[rng.below(table.size())].first : pinned;
    int expected = *f.evaluate(input);
    QueryOracle oracle = QueryOracle::over_string(input);
    if (transcript.is_open()) {
      std::ofstream* tr = &transcript;
      oracle.set_observer([tr](int pos, int ans) {
        Json line = {{"op", "query"}, {"pos", pos + 1}, {"ans", ans}};
        *tr << line.dump() << "\n";
      });
    }
    ShuffleSimResult res = shuffle_simulate(eval, g.action, range, oracle, mode, rng, dual_ptr);
    max_queries = std::max(max_queries, res.queries_used);
    max_range = std::max(max_range, res.range_used);
    if (res.promise_violated) {
      ++violations;
    } else if (res.value == expected) {
      ++agree;
    } else {
      ++mismatch;
    }
    if (transcript.is_open()) {
      Json line = {{"op", "output"},
                   {"value", res.promise_violated ? Json(nullptr) : Json(res.value)},
                   {"queries", res.queries_used}};
      transcript << line.dump() << "\n";
    }
  }

  Json r;
  r["fn"] = f.name();
  r["group_spec"] = g.canonical;
  r["mode"] = shuffle_mode_name(mode);
  r["r"] = range;
  r["trials"] = trials;
  r["agree"] = agree;
  r["mismatch"] = mismatch;
  r["promise_violations"] = violations;
  r["max_queries_used"] = max_queries;
  r["max_range_used"] = max_range;
  r["within_range_bound"] = mode == ShuffleMode::Bijection || max_queries <= range;
  return r;
}

Json handle_reduce(CliState& st, const std::string& kind, const std::string& group_spec, int ell,
                   const std::string& blocks_json, const std::string& points_json, int n1, int n2,
                   int side, const std::string& fixed, int mock_queries, const std::string& x) {
  // A mock distinguisher making a fixed number of queries, cycling over the
  // transformed domain's positions; the point is counter accounting.
  auto mock = [mock_queries](QueryOracle& oracle) {
    int acc = 0;
    for (int q = 0; q < mock_queries; ++q) acc ^= oracle.query(q % oracle.n());
    return acc & 1;
  };

  Json r;
  r["kind"] = kind;
  r["mock_queries"] = mock_queries;

  Distinguisher wrapped;
  Str input;
  int expected_overhead = 1;
  if (kind == "power") {
    GroupSpec g = parse_group_spec(group_spec, st.caps());
    int n = g.action.degree();
    input = x.empty() ? perm_to_string(Permutation::identity(n)) : parse_display(x, n);
    wrapped = reduce_power(mock, ell, n);
    expected_overhead = ell;
    r["l"] = ell;
  } else if (kind == "quotient") {
    Json arr = Json::parse(blocks_json);
    std::vector<std::vector<int>> blocks;
    for (const Json& blk : arr) {
      std::vector<int> b;
      for (const Json& v : blk) b.push_back(v.get<int>() - 1);
      blocks.push_back(std::move(b));
    }
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    input = x.empty() ? perm_to_string(Permutation::identity(n)) : parse_display(x, n);
    wrapped = reduce_quotient(mock, std::move(blocks), n);
  } else if (kind == "restrict") {
    Json arr = Json::parse(points_json);
    std::vector<int> points;
    for (const Json& v : arr) points.push_back(v.get<int>() - 1);
    GroupSpec g = parse_group_spec(group_spec, st.caps());
    int n = g.action.degree();
    input = x.empty() ? perm_to_string(Permutation::identity(n)) : parse_display(x, n);
    wrapped = reduce_restrict(mock, std::move(points), n);
  } else if (kind == "product") {
    Str fixed_s = parse_display(fixed, std::max(n1, n2));
    int real_n = side == 1 ? n1 : n2;
    input = x.empty() ? perm_to_string(Permutation::identity(real_n)) : parse_display(x, real_n);
    wrapped = reduce_product(mock, n1, n2, side, fixed_s);
  } else if (kind == "merge") {
    GroupSpec g = parse_group_spec(group_spec, st.caps());
    int n = g.action.degree();
    input = x.empty() ? perm_to_string(Permutation::identity(n)) : parse_display(x, n);
    wrapped = reduce_merge(mock);
  } else {
    fail(ErrorKind::ParseError, "unknown reduction kind '" + kind + "'");
  }

  QueryOracle oracle = QueryOracle::over_string(input);
  int output = wrapped(oracle);
  r["output"] = output;
  r["raw_queries"] = oracle.count();
  r["expected_raw_queries"] = static_cast<long long>(expected_overhead) * mock_queries;
  r["overhead_exact"] = oracle.count() == static_cast<long long>(expected_overhead) * mock_queries;
  return r;
}

Json handle_degree(CliState& st, const std::string& fn_spec, const std::string& eps_str,
                   int budget, bool unbounded) {
  PartialFn f = parse_fn_spec(fn_spec, st.caps());
  DegreeLpOptions opts = st.lp_opts();
  opts.bounded = !unbounded;
  Rat eps = rat_from_string(eps_str);
  Json r;
  r["fn"] = f.name();
  LPCertificate cert =
      budget >= 0 ? degree_lp_min_error(f, budget, opts) : approx_degree(f, eps, opts);
  r["eps"] = rat_to_string(eps);
  r["certificate"] = certificate_to_json(cert);
  st.csv = {{"degree", "epsilon", "mode"},
            {std::to_string(cert.degree), rat_to_string(cert.epsilon),
             cert.exact_mode ? "exact" : "float"}};
  return r;
}

Json handle_dtree(CliState& st, const std::string& fn_spec, const std::string& dist_spec,
                  const std::string& eps_str) {
  PartialFn f = parse_fn_spec(fn_spec, st.caps());
  Json r;
  r["fn"] = f.name();
  if (dist_spec.empty()) {
    r["kind"] = "deterministic";
    r["depth"] = det_query_complexity(f);
  } else {
    FiniteDistribution mu;
    if (dist_spec == "uniform") {
      std::vector<Str> support;
      for (const auto& [s, v] : f.table()) support.push_back(s);
      mu = FiniteDistribution::uniform(std::move(support));
    } else if (dist_spec[0] == '@') {
      std::ifstream in(dist_spec.substr(1));
      if (!in) fail(ErrorKind::ParseError, "cannot open distribution file");
      mu = dist_from_json(Json::parse(in), f.m());
    } else {
      fail(ErrorKind::ParseError, "distribution must be 'uniform' or '@file'");
    }
    Rat eps = rat_from_string(eps_str);
    r["kind"] = "distributional";
    r["eps"] = rat_to_string(eps);
    r["depth"] = distributional_rand_complexity(f, mu, eps);
  }
  return r;
}

Json handle_costproxy(CliState& st, const std::string& group_spec, const std::string& r_list,
                      const std::string& eps_str) {
  GroupSpec g = parse_group_spec(group_spec, st.caps());
  Rat eps = rat_from_string(eps_str);
  Json r;
  r["group_spec"] = g.canonical;
  r["eps"] = rat_to_string(eps);
  Json entries = Json::array();
  st.csv = {{"r", "cost", "degree", "epsilon"}};
  for (int rv : parse_int_list(r_list)) {
    CostProxyResult res = cost_lower_proxy(g.action, rv, eps, st.lp_opts(), st.closure_cap);
    Json entry;
    entry["r"] = rv;
    if (res.infinite) {
      entry["cost"] = "inf";
      st.csv.push_back({std::to_string(rv), "inf", "", ""});
    } else {
      entry["cost"] = rat_to_string(res.value);
      entry["degree"] = res.certificate->degree;
      entry["epsilon"] = rat_to_string(res.certificate->epsilon);
      entry["certificate"] = certificate_to_json(*res.certificate);
      st.csv.push_back({std::to_string(rv), rat_to_string(res.value),
                        std::to_string(res.certificate->degree),
                        rat_to_string(res.certificate->epsilon)});
    }
    entries.push_back(std::move(entry));
  }
  r["entries"] = std::move(entries);
  return r;
}

Json handle_harddist(CliState& st, const std::string& fn_spec, int budget,
                     const std::string& kind_name) {
  PartialFn f = parse_fn_spec(fn_spec, st.caps());
  HardDistKind kind;
  if (kind_name == "poly") kind = HardDistKind::Poly;
  else if (kind_name == "dp") kind = HardDistKind::Dp;
  else fail(ErrorKind::ParseError, "kind must be poly or dp");
  Rng rng(st.seed);
  HardDistribution hd = hard_distribution(f, budget, kind, rng, 60, st.lp_opts());
  Json r;
  r["fn"] = f.name();
  r["kind"] = kind_name;
  r["budget"] = budget;
  r["certified_error"] = rat_to_string(hd.certified_error);
  r["dist"] = dist_to_json(hd.dist);
  return r;
}

Json run_experiment(CliState& st, const std::string& spec_path, bool parallel);

// ---- driver --------------------------------------------------------------

int run_cli_impl(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CliState st;
  CLI::App app{"group-action query-complexity laboratory"};
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  app.add_option("--seed", st.seed, "global RNG seed");
  app.add_option("--out", st.out_path, "report path (default stdout)");
  app.add_option("--format", st.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--float", st.use_float, "floating-point LP mode (default exact rational)");
  app.add_option("--closure-cap", st.closure_cap, "max enumerated group elements");
  app.add_option("--domain-cap", st.domain_cap, "max transformed domain size");
  app.add_option("--table-cap", st.table_cap, "max explicit promise strings");

  // group
  std::string group_spec, tuple_i, tuple_j;
  int k_arity = 1, sample_count = 1;
  CLI::App* group = app.add_subcommand("group", "group-action queries");
  group->require_subcommand(1);
  for (const char* verb : {"build", "inspect", "order", "orbits", "transitivity", "tupleprob", "sample"}) {
    CLI::App* sub = group->add_subcommand(verb);
    sub->add_option("--group", group_spec, "group constructor expression")->required();
    if (std::string(verb) == "transitivity")
      sub->add_option("--k", k_arity, "transitivity arity")->required();
    if (std::string(verb) == "tupleprob") {
      sub->add_option("--i", tuple_i, "source tuple, 1-indexed, comma-separated")->required();
      sub->add_option("--j", tuple_j, "target tuple, 1-indexed, comma-separated")->required();
    }
    if (std::string(verb) == "sample") sub->add_option("--count", sample_count, "number of draws");
    sub->callback([&st, verb, &group_spec, &k_arity, &tuple_i, &tuple_j, &sample_count] {
      st.command = std::string("group ") + verb;
      st.result = handle_group(st, verb, group_spec, k_arity, tuple_i, tuple_j, sample_count);
    });
  }

  // fn
  std::string fn_spec, fn_group, fn_x;
  int max_entries = 1024;
  CLI::App* fn = app.add_subcommand("fn", "partial-function queries");
  fn->require_subcommand(1);
  for (const char* verb : {"zoo", "eval", "symcheck"}) {
    CLI::App* sub = fn->add_subcommand(verb);
    sub->add_option("--fn", fn_spec, "function constructor expression")->required();
    if (std::string(verb) == "eval") sub->add_option("--x", fn_x, "input string")->required();
    if (std::string(verb) == "symcheck")
      sub->add_option("--group", fn_group, "group constructor expression")->required();
    if (std::string(verb) == "zoo") sub->add_option("--max-entries", max_entries);
    sub->callback([&st, verb, &fn_spec, &fn_group, &fn_x, &max_entries] {
      st.command = std::string("fn ") + verb;
      st.result = handle_fn(st, verb, fn_spec, fn_group, fn_x, max_entries);
    });
  }

  // simulate
  std::string sim_fn, sim_group, sim_mode = "uniform-balanced", sim_x, sim_transcript;
  int sim_r = 1, sim_trials = 100;
  CLI::App* sim = app.add_subcommand("simulate", "classical shuffle simulation");
  sim->add_option("--fn", sim_fn)->required();
  sim->add_option("--group", sim_group)->required();
  sim->add_option("--range", sim_r, "small-range bound r");
  sim->add_option("--mode", sim_mode)->check(CLI::IsMember({"uniform-balanced", "lp-dual", "bijection"}));
  sim->add_option("--trials", sim_trials);
  sim->add_option("--x", sim_x, "fixed promise input (default: sampled)");
  sim->add_option("--transcript", sim_transcript, "JSONL transcript path");
  sim->callback([&] {
    st.command = "simulate";
    st.result = handle_simulate(st, sim_fn, sim_group, sim_r, sim_mode, sim_trials, sim_x,
                                sim_transcript);
  });

  // reduce
  std::string red_kind, red_blocks, red_points, red_fixed, red_x, red_group;
  int red_l = 2, red_n1 = 2, red_n2 = 2, red_side = 1, red_mock = 3;
  CLI::App* red = app.add_subcommand("reduce", "reduction query accounting");
  red->add_option("--kind", red_kind)->required()->check(
      CLI::IsMember({"power", "quotient", "restrict", "product", "merge"}));
  red->add_option("--group", red_group, "base group (power/restrict/merge)");
  red->add_option("--l", red_l, "tuple power");
  red->add_option("--blocks", red_blocks, "JSON blocks, 1-indexed (quotient)");
  red->add_option("--points", red_points, "JSON point list, 1-indexed (restrict)");
  red->add_option("--n1", red_n1);
  red->add_option("--n2", red_n2);
  red->add_option("--side", red_side, "real factor (1 or 2)");
  red->add_option("--fixed", red_fixed, "synthesized factor sample (product)");
  red->add_option("--mock-queries", red_mock);
  red->add_option("--x", red_x, "input for the raw oracle");
  red->callback([&] {
    st.command = "reduce";
    st.result = handle_reduce(st, red_kind, red_group, red_l, red_blocks, red_points, red_n1,
                              red_n2, red_side, red_fixed, red_mock, red_x);
  });

  // degree
  std::string deg_fn, deg_eps = "1/3";
  int deg_budget = -1;
  bool deg_unbounded = false;
  CLI::App* deg = app.add_subcommand("degree", "approximate degree LP");
  deg->add_option("--fn", deg_fn)->required();
  deg->add_option("--eps", deg_eps);
  deg->add_option("--budget", deg_budget, "fixed degree (min-error mode)");
  deg->add_flag("--unbounded", deg_unbounded, "drop the full-cube [0,1] constraint");
  deg->callback([&] {
    st.command = "degree";
    st.result = handle_degree(st, deg_fn, deg_eps, deg_budget, deg_unbounded);
  });

  // dtree
  std::string dt_fn, dt_dist, dt_eps = "0";
  CLI::App* dt = app.add_subcommand("dtree", "decision-tree complexity");
  dt->add_option("--fn", dt_fn)->required();
  dt->add_option("--dist", dt_dist, "'uniform' or '@file' for distributional mode");
  dt->add_option("--eps", dt_eps);
  dt->callback([&] {
    st.command = "dtree";
    st.result = handle_dtree(st, dt_fn, dt_dist, dt_eps);
  });

  // costproxy
  std::string cp_group, cp_rlist, cp_eps = "1/3";
  CLI::App* cp = app.add_subcommand("costproxy", "distinguishing-cost lower bound");
  cp->add_option("--group", cp_group)->required();
  cp->add_option("--r", cp_rlist, "range bound(s), comma-separated")->required();
  cp->add_option("--eps", cp_eps);
  cp->callback([&] {
    st.command = "costproxy";
    st.result = handle_costproxy(st, cp_group, cp_rlist, cp_eps);
  });

  // harddist
  std::string hd_fn, hd_kind = "poly";
  int hd_budget = 0;
  CLI::App* hd = app.add_subcommand("harddist", "hard-distribution extraction");
  hd->add_option("--fn", hd_fn)->required();
  hd->add_option("--budget", hd_budget, "degree (poly) or depth (dp)")->required();
  hd->add_option("--kind", hd_kind)->check(CLI::IsMember({"poly", "dp"}));
  hd->callback([&] {
    st.command = "harddist";
    st.result = handle_harddist(st, hd_fn, hd_budget, hd_kind);
  });

  // experiment
  std::string exp_spec;
  bool exp_parallel = false;
  CLI::App* exp = app.add_subcommand("experiment", "scripted experiment runner");
  exp->add_option("--spec", exp_spec, "experiment spec JSON")->required();
  exp->add_flag("--parallel", exp_parallel, "run independent steps concurrently");
  exp->callback([&] {
    st.command = "experiment";
    st.result = run_experiment(st, exp_spec, exp_parallel);
  });

  app.require_subcommand(1);

  std::vector<std::string> original = args;
  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Json report;
  report["tool"] = "symq";
  report["version"] = kVersion;
  report["command"] = st.command;
  report["argv"] = original;
  report["digest"] = fnv_digest(original);
  report["seed"] = st.seed;
  report["mode"] = st.use_float ? "float" : "exact";
  report["result"] = std::move(st.result);

  std::string payload;
  if (st.format == "csv") {
    if (st.csv.empty())
      fail(ErrorKind::ParseError, "this subcommand has no CSV form; use --format json");
    std::ostringstream csv;
    for (const auto& row : st.csv) {
      for (size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
      csv << "\n";
    }
    payload = csv.str();
  } else {
    payload = report.dump(2) + "\n";
  }

  if (!st.out_path.empty()) {
    std::ofstream f(st.out_path);
    if (!f) fail(ErrorKind::ParseError, "cannot open --out path");
    f << payload;
  } else {
    out << payload;
  }
  return 0;
}

Json run_experiment(CliState& st, const std::string& spec_path, bool parallel) {
  std::ifstream in(spec_path);
  if (!in) fail(ErrorKind::ParseError, "cannot open experiment spec");
  Json spec = Json::parse(in);
  std::uint64_t base_seed = spec.value("seed", st.seed);

  std::vector<std::vector<std::string>> steps;
  for (const Json& step : spec.at("steps")) {
    std::vector<std::string> args;
    for (const Json& a : step.at("args")) args.push_back(a.get<std::string>());
    steps.push_back(std::move(args));
  }

  auto run_step = [base_seed](std::vector<std::string> args, size_t index) {
    bool has_seed = false;
    for (const std::string& a : args) has_seed |= a == "--seed";
    if (!has_seed) {
      args.push_back("--seed");
      args.push_back(std::to_string(splitmix64(base_seed ^ splitmix64(index + 1))));
    }
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    Json entry;
    entry["index"] = index;
    entry["exit_code"] = code;
    if (code == 0) {
      entry["report"] = Json::parse(out.str());
    } else {
      entry["stderr"] = err.str();
    }
    return entry;
  };

  Json result;
  result["spec"] = spec_path;
  result["seed"] = base_seed;
  Json entries = Json::array();
  if (parallel) {
    std::vector<std::future<Json>> futures;
    for (size_t i = 0; i < steps.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_step, steps[i], i));
    for (auto& fut : futures) entries.push_back(fut.get());
  } else {
    for (size_t i = 0; i < steps.size(); ++i) entries.push_back(run_step(steps[i], i));
  }
  bool ok = true;
  for (const Json& e : entries) ok &= e.at("exit_code").get<int>() == 0;
  result["steps"] = std::move(entries);
  result["ok"] = ok;
  return result;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return run_cli_impl(std::move(args), out, err);
  } catch (const Error& e) {
    Json report;
    report["tool"] = "symq";
    report["version"] = kVersion;
    report["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    err << report.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json report;
    report["tool"] = "symq";
    report["version"] = kVersion;
    report["error"] = {{"kind", "Internal"}, {"message", e.what()}};
    err << report.dump(2) << "\n";
    return 1;
  }
}

}  // namespace symq
