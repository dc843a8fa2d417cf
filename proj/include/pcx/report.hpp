#pragma once

// JSON and text rendering of verdict reports. Field elements are always
// written as exact strings.

#include <json.hpp>
#include <sstream>
#include <string>

#include "pcx/construction.hpp"

namespace pcx {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "yoshihara-verifier/1";

namespace detail {

inline Json coeff_list(const BinaryForm& F) {
  Json a = Json::array();
  for (auto& c : F.coeffs()) a.push_back(c.to_string());
  return a;
}

inline Json checks_json(const std::vector<Check>& cs) {
  Json a = Json::array();
  for (auto& c : cs) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return a;
}

inline Json points_json(const std::vector<P1Point>& ps) {
  Json a = Json::array();
  for (auto& p : ps) a.push_back(p.to_string());
  return a;
}

}  // namespace detail

inline Json parameters_json(const ParameterSet& p) {
  return {{"field", p.field->to_string()},
          {"alpha", p.alpha.to_string()},
          {"beta", p.beta.to_string()},
          {"lambda", p.lambda.to_string()},
          {"mu", p.mu.to_string()}};
}

inline Json equivalence_json(const EquivalenceResult& r) {
  Json j;
  j["method"] = r.method;
  if (r.witness)
    j["witness"] = {{"a", r.witness->a.to_string()}, {"c", r.witness->c.to_string()}, {"d", r.witness->d.to_string()}};
  else
    j["witness"] = nullptr;
  j["elimination_failure"] = r.elimination_failure;
  j["maps_searched"] = r.maps_searched;
  j["certifying_primes"] = r.certifying_primes;
  return j;
}

inline Json identified_json(const IdentifiedPoints& id) {
  Json roots = Json::array();
  for (auto& [p, m] : id.roots) roots.push_back({{"point", p.to_string()}, {"multiplicity", m}});
  return {{"roots", roots},
          {"residual_degree", id.residual_degree},
          {"extra", detail::points_json(id.extra)},
          {"support", detail::points_json(id.support)},
          {"type_I", id.type_I()}};
}

inline Json forms_json(const FormData& f, const EquivalenceResult& iso) {
  return {{"F1", detail::coeff_list(f.F1)},
          {"F2", detail::coeff_list(f.F2)},
          {"F1_text", f.F1.to_string()},
          {"F2_text", f.F2.to_string()},
          {"equivalence", equivalence_json(iso)}};
}

inline Json classes_json(const ClassMap& classes) {
  Json j = Json::object();
  for (auto& [n, c] : classes) {
    Json v = Json::array();
    for (std::size_t i = 0; i < kLatticeRank; ++i) v.push_back(c[i].get_si());
    j[n] = v;
  }
  return j;
}

inline Json figure_json(const FigureCheck& fc) {
  Json self = Json::object();
  for (auto& [n, v] : fc.computed.self) self[n] = v;
  Json edges = Json::array();
  for (auto& [a, b] : fc.computed.edges) edges.push_back(Json::array({a, b}));
  Json brackets = Json::object();
  for (auto& [n, v] : fc.computed.brackets) brackets[n] = Json::array({v.first, v.second});
  return {{"surface", fc.surface}, {"passed", fc.diffs.empty()}, {"diffs", fc.diffs},
          {"self_intersections", self}, {"edges", edges}, {"brackets", brackets}};
}

inline Json contraction_json(const ContractionReport& cr) {
  Json steps = Json::array();
  for (auto& s : cr.trace.steps)
    steps.push_back({{"stage", s.stage}, {"curve", s.name}, {"self_intersection", s.self},
                     {"canonical_degree", s.canonical_degree}, {"k_squared_after", s.k_squared_after}});
  return {{"eta", cr.i},
          {"steps", steps},
          {"image_degree", cr.degree.degree},
          {"image_self_intersection", cr.degree.self_intersection},
          {"tower_resolution", cr.tower.ok()}};
}

inline Json report_json(const VerdictReport& r, bool verbose = false) {
  Json j;
  j["schema"] = kSchema;
  j["parameters"] = parameters_json(r.params);
  j["gammas"] = {{"Gamma1", r.gammas.g1.closed_form.to_string()}, {"Gamma2", r.gammas.g2.closed_form.to_string()}};
  j["omega_membership"] = {{"Gamma1", detail::checks_json(r.omega1)}, {"Gamma2", detail::checks_json(r.omega2)}};
  Json figs = Json::array();
  for (auto& fc : r.figures) figs.push_back(verbose ? figure_json(fc) : Json{{"surface", fc.surface}, {"passed", fc.diffs.empty()}, {"diffs", fc.diffs}});
  j["figure_checks"] = figs;
  Json contr = Json::array();
  for (auto& cr : r.contractions) contr.push_back(contraction_json(cr));
  j["contractions"] = contr;
  j["degrees"] = Json::array({r.degrees().first, r.degrees().second});
  j["intersections"] = {{"I_a", r.audit.ia_fulton},
                        {"I_b", r.audit.ib_fulton},
                        {"a_chain", r.audit.a_chain},
                        {"b_chain", r.audit.b_chain},
                        {"deg_F1", r.audit.forms_degree},
                        {"total", r.audit.a_chain + r.audit.b_chain + r.audit.forms_degree},
                        {"bezout_consistent", r.audit.bezout.consistent}};
  j["forms"] = forms_json(r.forms, r.isomorphism);
  j["projectively_equivalent"] = r.projectively_equivalent();
  if (r.projective.witness)
    j["projective_witness"] = {{"map", r.projective.witness->to_string()},
                               {"xi", r.projective.witness->xi.to_string()},
                               {"theta", r.projective.witness->theta.to_string()}};
  else
    j["projective_witness"] = nullptr;
  j["projective_method"] = r.projective.method;
  j["isomorphic"] = r.isomorphic();
  j["isomorphism"] = equivalence_json(r.isomorphism);
  j["type_I"] = Json::array({r.type_I().first, r.type_I().second});
  j["identified_points"] = {{"eta2(Gamma1~)", identified_json(r.identified1)}, {"eta1(Gamma2~)", identified_json(r.identified2)}};
  j["checks"] = detail::checks_json(r.checks);
  j["all_passed"] = r.all_passed();
  if (verbose) {
    j["classes"] = classes_json(r.classes);
    Json t = Json::object();
    for (auto& [n, ms] : r.timings_ms) t[n] = t.contains(n) ? t[n].get<double>() + ms : ms;
    j["timings_ms"] = t;
  }
  return j;
}

inline std::string report_text(const VerdictReport& r, bool verbose = false) {
  std::ostringstream o;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  o << "parameters: " << r.params.to_string() << "\n";
  o << "Gamma1: " << r.gammas.g1.closed_form.to_string() << "\n";
  o << "Gamma2: " << r.gammas.g2.closed_form.to_string() << "\n";
  o << "degrees: (" << r.degrees().first << ", " << r.degrees().second << ")\n";
  o << "F1: " << r.forms.F1.to_string() << "\n";
  o << "F2: " << r.forms.F2.to_string() << "\n";
  o << "projectively equivalent: " << yn(r.projectively_equivalent());
  if (r.projective.witness) o << " via " << r.projective.witness->to_string();
  o << "\n";
  o << "isomorphic: " << yn(r.isomorphic()) << " [" << r.isomorphism.method;
  if (r.isomorphism.witness) o << ", witness (a,c,d) = " << r.isomorphism.witness->to_string();
  if (!r.isomorphism.elimination_failure.empty()) o << ", " << r.isomorphism.elimination_failure;
  if (!r.isomorphism.certifying_primes.empty()) {
    o << ", primes";
    for (auto p : r.isomorphism.certifying_primes) o << " " << p;
  }
  if (r.isomorphism.maps_searched) o << ", " << r.isomorphism.maps_searched << " maps searched";
  o << "]\n";
  o << "type I: (" << yn(r.type_I().first) << ", " << yn(r.type_I().second) << ")\n";
  std::size_t failed = 0;
  for (auto& c : r.checks) {
    if (!c.passed) ++failed;
    if (verbose || !c.passed)
      o << (c.passed ? "  ok   " : "  FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  }
  o << r.checks.size() - failed << "/" << r.checks.size() << " checks passed\n";
  if (verbose)
    for (auto& [n, ms] : r.timings_ms) o << "  time " << n << ": " << ms << " ms\n";
  return o.str();
}

}  // namespace pcx
