#pragma once

#include <string>

#include "symq/boolfn.hpp"
#include "symq/transforms.hpp"

namespace symq {

struct ParseCaps {
  size_t closure_cap = kDefaultClosureCap;
  long long domain_cap = kDefaultDomainCap;
  size_t table_cap = kDefaultTableCap;
};

struct GroupSpec {
  GroupAction action;
  DomainEncoding encoding;
  std::string canonical;  // normalized constructor expression
};

// Constructor grammar for groups:
//   sym:N cyc:N alt:N triv:N bitflip:N bitperm:N
//   graph:K digraph:K hyper:K:P bipartite:K bipartite:K1:K2
//   power(G,L) angle(G,L) restrict(G,[p...]) quotient(G,[[...],...])
//   product(G1,G2) sum(G1,G2,...) merge(G1,G2) @file.json
// Points in restrict/quotient literals are 1-indexed, matching the JSON
// group format.
GroupSpec parse_group_spec(const std::string& text, const ParseCaps& caps = {});

// Function grammar: triv:M collision:N forrel:N fortriv:N simon:N
// dist(G,R) @file.json
PartialFn parse_fn_spec(const std::string& text, const ParseCaps& caps = {});

}  // namespace symq
