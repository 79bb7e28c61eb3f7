#include "symq/parse.hpp"

#include <fstream>

#include "symq/json_io.hpp"

namespace symq {
namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n\r");
  return s.substr(a, b - a + 1);
}

// Split at top-level commas, respecting () and [] nesting.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
  return out;
}

int parse_int(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad JSON in '") + path + "': " + e.what());
  }
}

// "name:3:4" -> {"name","3","4"}; "func(a,b)" -> head "func" + inner args.
struct Call {
  std::string head;
  std::vector<std::string> args;
  bool is_call = false;
};

Call dissect(const std::string& text) {
  Call c;
  size_t paren = text.find('(');
  if (paren != std::string::npos && text.back() == ')') {
    c.is_call = true;
    c.head = strip(text.substr(0, paren));
    c.args = split_args(text.substr(paren + 1, text.size() - paren - 2));
    return c;
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  c.head = strip(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) c.args.push_back(strip(parts[i]));
  return c;
}

GroupSpec base_group(const std::string& canonical, GroupAction g) {
  DomainEncoding enc = DomainEncoding::flat(g.degree());
  return {std::move(g), std::move(enc), canonical};
}

}  // namespace

GroupSpec parse_group_spec(const std::string& raw, const ParseCaps& caps) {
  std::string text = strip(raw);
  if (text.empty()) fail(ErrorKind::ParseError, "empty group spec");
  if (text[0] == '@') {
    GroupAction g = group_from_json(load_json_file(text.substr(1)));
    return base_group(text, std::move(g));
  }
  Call c = dissect(text);
  auto want_args = [&](size_t k) {
    if (c.args.size() != k)
      fail(ErrorKind::ParseError, "'" + c.head + "' expects " + std::to_string(k) + " argument(s)");
  };

  if (!c.is_call) {
    want_args(c.head == "hyper" || (c.head == "bipartite" && c.args.size() == 2) ? 2 : 1);
    int n = parse_int(c.args[0]);
    if (c.head == "sym") return base_group("sym:" + std::to_string(n), GroupAction::symmetric(n));
    if (c.head == "cyc") return base_group("cyc:" + std::to_string(n), GroupAction::cyclic(n));
    if (c.head == "alt") return base_group("alt:" + std::to_string(n), GroupAction::alternating(n));
    if (c.head == "triv") return base_group("triv:" + std::to_string(n), GroupAction::trivial(n));
    if (c.head == "bitflip") return base_group("bitflip:" + std::to_string(n), GroupAction::bit_flip(n));
    if (c.head == "bitperm")
      return base_group("bitperm:" + std::to_string(n), GroupAction::bit_permutation(n));
    if (c.head == "graph") {
      BuiltAction b = graph_symmetry(n, caps.domain_cap);
      return {std::move(b.action), std::move(b.encoding), "graph:" + std::to_string(n)};
    }
    if (c.head == "digraph") {
      BuiltAction b = digraph_symmetry(n, caps.domain_cap);
      return {std::move(b.action), std::move(b.encoding), "digraph:" + std::to_string(n)};
    }
    if (c.head == "hyper") {
      int p = parse_int(c.args[1]);
      BuiltAction b = hypergraph_symmetry(n, p, caps.domain_cap);
      return {std::move(b.action), std::move(b.encoding),
              "hyper:" + std::to_string(n) + ":" + std::to_string(p)};
    }
    if (c.head == "bipartite") {
      int k2 = c.args.size() == 2 ? parse_int(c.args[1]) : n;
      BuiltAction b = bipartite_symmetry(n, k2, caps.domain_cap);
      return {std::move(b.action), std::move(b.encoding),
              "bipartite:" + std::to_string(n) + (c.args.size() == 2 ? ":" + std::to_string(k2) : "")};
    }
    fail(ErrorKind::ParseError, "unknown group constructor '" + c.head + "'");
  }

  if (c.head == "power" || c.head == "angle") {
    want_args(2);
    GroupSpec inner = parse_group_spec(c.args[0], caps);
    int ell = parse_int(c.args[1]);
    BuiltAction b = c.head == "power" ? power_action(inner.action, ell, caps.domain_cap)
                                      : distinct_tuples_action(inner.action, ell, caps.domain_cap);
    return {std::move(b.action), std::move(b.encoding),
            c.head + "(" + inner.canonical + "," + std::to_string(ell) + ")"};
  }
  if (c.head == "restrict") {
    want_args(2);
    GroupSpec inner = parse_group_spec(c.args[0], caps);
    Json arr = Json::parse(c.args[1], nullptr, true);
    std::vector<int> points;
    for (const Json& v : arr) points.push_back(v.get<int>() - 1);
    BuiltAction b = restrict_to_orbits(inner.action, points);
    return {std::move(b.action), std::move(b.encoding),
            "restrict(" + inner.canonical + "," + c.args[1] + ")"};
  }
  if (c.head == "quotient") {
    want_args(2);
    GroupSpec inner = parse_group_spec(c.args[0], caps);
    Json arr = Json::parse(c.args[1], nullptr, true);
    std::vector<std::vector<int>> blocks;
    for (const Json& blk : arr) {
      std::vector<int> block;
      for (const Json& v : blk) block.push_back(v.get<int>() - 1);
      blocks.push_back(std::move(block));
    }
    BuiltAction b = quotient_action(inner.action, blocks);
    return {std::move(b.action), std::move(b.encoding),
            "quotient(" + inner.canonical + "," + c.args[1] + ")"};
  }
  if (c.head == "product") {
    want_args(2);
    GroupSpec a = parse_group_spec(c.args[0], caps);
    GroupSpec b = parse_group_spec(c.args[1], caps);
    BuiltAction built = product_action(a.action, b.action, caps.domain_cap);
    return {std::move(built.action), std::move(built.encoding),
            "product(" + a.canonical + "," + b.canonical + ")"};
  }
  if (c.head == "sum") {
    if (c.args.size() < 2) fail(ErrorKind::ParseError, "'sum' expects at least 2 arguments");
    GroupSpec acc = parse_group_spec(c.args[0], caps);
    std::string canonical = "sum(" + acc.canonical;
    for (size_t i = 1; i < c.args.size(); ++i) {
      GroupSpec next = parse_group_spec(c.args[i], caps);
      BuiltAction built = sum_action(acc.action, next.action);
      acc = {std::move(built.action), std::move(built.encoding), ""};
      canonical += "," + next.canonical;
    }
    canonical += ")";
    return {std::move(acc.action), std::move(acc.encoding), std::move(canonical)};
  }
  if (c.head == "merge") {
    want_args(2);
    GroupSpec a = parse_group_spec(c.args[0], caps);
    GroupSpec b = parse_group_spec(c.args[1], caps);
    GroupAction merged = merge_actions(a.action, b.action);
    DomainEncoding enc = DomainEncoding::flat(merged.degree());
    return {std::move(merged), std::move(enc), "merge(" + a.canonical + "," + b.canonical + ")"};
  }
  fail(ErrorKind::ParseError, "unknown group combinator '" + c.head + "'");
}

PartialFn parse_fn_spec(const std::string& raw, const ParseCaps& caps) {
  std::string text = strip(raw);
  if (text.empty()) fail(ErrorKind::ParseError, "empty function spec");
  if (text[0] == '@') return fn_from_json(load_json_file(text.substr(1)), caps.table_cap);
  Call c = dissect(text);
  if (c.is_call) {
    if (c.head == "dist") {
      if (c.args.size() != 2) fail(ErrorKind::ParseError, "'dist' expects (group, r)");
      GroupSpec g = parse_group_spec(c.args[0], caps);
      int r = parse_int(c.args[1]);
      return distinguishing_fn(g.action, r, caps.closure_cap, caps.table_cap);
    }
    fail(ErrorKind::ParseError, "unknown function constructor '" + c.head + "'");
  }
  if (c.args.size() != 1) fail(ErrorKind::ParseError, "function spec expects one size argument");
  int n = parse_int(c.args[0]);
  if (c.head == "triv") return triv(n);
  if (c.head == "collision") return collision(n);
  if (c.head == "forrel") return forrelation_decision(n);
  if (c.head == "fortriv") return for_compose_triv(n);
  if (c.head == "simon") return simon_decision(n);
  fail(ErrorKind::ParseError, "unknown function constructor '" + c.head + "'");
}

}  // namespace symq
