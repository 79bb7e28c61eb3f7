#include "symq/json_io.hpp"

namespace symq {

Json group_to_json(const GroupAction& g) {
  Json out;
  out["degree"] = g.degree();
  Json gens = Json::array();
  for (const Permutation& p : g.generators()) gens.push_back(p.one_indexed_images());
  out["generators"] = std::move(gens);
  return out;
}

GroupAction group_from_json(const Json& j) {
  if (j.contains("kind")) {
    std::string kind = j.at("kind").get<std::string>();
    int n = j.at("n").get<int>();
    if (kind == "symmetric") return GroupAction::symmetric(n);
    if (kind == "cyclic") return GroupAction::cyclic(n);
    if (kind == "alternating") return GroupAction::alternating(n);
    if (kind == "trivial") return GroupAction::trivial(n);
    fail(ErrorKind::ParseError, "unknown group kind '" + kind + "'");
  }
  int degree = j.at("degree").get<int>();
  std::vector<Permutation> gens;
  for (const Json& arr : j.at("generators")) {
    std::vector<int> images = arr.get<std::vector<int>>();
    if (static_cast<int>(images.size()) != degree)
      fail(ErrorKind::ParseError, "generator length != degree");
    gens.push_back(Permutation::from_one_indexed(images));
  }
  return GroupAction(degree, std::move(gens));
}

Json fn_to_json(const PartialFn& f) {
  Json out;
  out["n"] = f.n();
  out["m"] = f.m();
  out["name"] = f.name();
  Json entries = Json::array();
  for (const auto& [s, v] : f.table()) entries.push_back(Json::array({display_string(s), v}));
  out["entries"] = std::move(entries);
  return out;
}

PartialFn fn_from_json(const Json& j, size_t table_cap) {
  int n = j.at("n").get<int>();
  int m = j.at("m").get<int>();
  std::string name = j.value("name", std::string("fn"));
  std::vector<std::pair<Str, int>> entries;
  for (const Json& e : j.at("entries"))
    entries.push_back({parse_display(e.at(0).get<std::string>(), m), e.at(1).get<int>()});
  return PartialFn::from_table(n, m, std::move(name), std::move(entries), table_cap);
}

Json dist_to_json(const FiniteDistribution& d) {
  Json out = Json::array();
  for (size_t i = 0; i < d.size(); ++i)
    out.push_back(Json::array({display_string(d.support()[i]), rat_to_string(d.weights()[i])}));
  return out;
}

FiniteDistribution dist_from_json(const Json& j, int m) {
  std::vector<std::pair<Str, Rat>> weighted;
  for (const Json& e : j)
    weighted.push_back(
        {parse_display(e.at(0).get<std::string>(), m), rat_from_string(e.at(1).get<std::string>())});
  return FiniteDistribution::from_weights(std::move(weighted));
}

Json certificate_to_json(const LPCertificate& cert) {
  Json out;
  out["degree"] = cert.degree;
  out["epsilon"] = rat_to_string(cert.epsilon);
  out["dual_objective"] = rat_to_string(cert.dual_objective);
  Json primal = Json::array();
  for (const auto& [mono, coeff] : cert.primal)
    primal.push_back(Json::array({mono.label(), rat_to_string(coeff)}));
  out["primal"] = std::move(primal);
  out["dual"] = dist_to_json(cert.dual);
  out["mode"] = cert.exact_mode ? "exact" : "float";
  return out;
}

Json shuffle_map_to_json(const ShuffleMap& m) {
  Json out;
  std::vector<int> img = m.images();
  for (int& v : img) ++v;
  out["images"] = img;
  out["range_size"] = m.range_size();
  return out;
}

}  // namespace symq
