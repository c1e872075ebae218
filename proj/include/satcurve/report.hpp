#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "satcurve/family.hpp"
#include "satcurve/numeric_verify.hpp"
#include "satcurve/puiseux.hpp"
#include "satcurve/saturation.hpp"

namespace satcurve::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "satcurve-report/1";

inline json rat(const Rat& r) { return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}}; }

/// nullopt stands for +infinity.
inline json rat_or_inf(const std::optional<Rat>& r) { return r ? rat(*r) : json("inf"); }

inline json rats(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

inline Rat parse_rat_json(const json& j) { return make_rat(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>())); }

inline json qpoly(const QPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(rat(c));
  return a;
}

inline json approx(const Complex& z) { return json{{"re", z.re.to_double()}, {"im", z.im.to_double()}}; }

/// Exact coordinates in the generator basis, the field's defining
/// polynomial, and a numeric value for orientation.
inline json field_elem(const FieldElem& a) {
  json j;
  j["coords"] = rats(a.coeffs());
  j["field_min_poly"] = a.field() ? qpoly(a.field()->min_poly) : json(nullptr);
  j["min_poly"] = qpoly(a.minimal_polynomial());
  j["approx"] = approx(a.numeric(128));
  return j;
}

inline json branch(const PuiseuxBranch& b) {
  json j;
  j["branch_id"] = b.branch_id;
  j["ramification_index"] = b.ramification_index;
  j["exact"] = b.exact;
  j["truncation_order"] = rat(b.truncation_order);
  j["field_degree"] = b.field ? b.field->degree() : 1;
  json terms = json::array();
  for (const auto& [e, c] : b.terms) terms.push_back(json{{"exponent", rat(e)}, {"coeff", field_elem(c)}});
  j["terms"] = terms;
  j["tangent_slope"] = field_elem(tangent_slope(b));
  auto cd = characteristic_exponents(b);
  j["characteristic_exponents"] = rats(cd.char_exponents);
  json ladder = json::array();
  for (auto [m, n] : cd.ladder) ladder.push_back(json{{"m", m}, {"n", n}});
  j["ladder"] = ladder;
  j["validity_radius"] = b.validity_radius;
  return j;
}

inline json contact_type(const ContactType& t) {
  return json{{"branch_pair", json::array({t.alpha, t.alpha_prime})},
              {"class_rep", t.class_rep},
              {"m", t.m},
              {"mu", t.mu},
              {"exponent", rat(t.exponent)},
              {"self_contact", t.self_contact}};
}

inline json profile(const SaturationProfile& p) {
  json j;
  j["curve_hash"] = p.curve_hash;
  j["discriminant_order"] = p.discriminant_order;
  j["branch_count"] = p.branches.size();
  json types = json::array();
  for (const auto& t : p.types) types.push_back(contact_type(t));
  j["types"] = types;
  j["distinct_exponents"] = rats(p.distinct_exponents);
  json counts = json::array();
  for (const auto& [pair, n] : p.per_pair_class_count)
    counts.push_back(json{{"branch_pair", json::array({pair.first, pair.second})}, {"classes", n}});
  j["per_pair_class_count"] = counts;
  return j;
}

inline json lipschitz(const LipschitzReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  json per = json::array();
  for (const auto& t : r.per_type)
    per.push_back(json{{"type", contact_type(t.type)}, {"nu", rat_or_inf(t.nu)}, {"pass", t.pass}});
  j["per_type"] = per;
  json bd = json::array();
  for (const auto& o : r.boundedness) bd.push_back(rat_or_inf(o));
  j["boundedness"] = bd;
  j["undefined_branch"] = r.undefined_branch ? json(*r.undefined_branch) : json(nullptr);
  j["difference_bound"] = r.difference_bound ? rat(*r.difference_bound) : json(nullptr);
  return j;
}

inline json samples(const std::vector<RadiusSample>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(json{{"radius", s.radius}, {"value", s.value}});
  return a;
}

inline json consistency(const ConsistencyReport& c) {
  json j;
  j["measured_slope"] = c.measured_slope;
  j["predicted_slope"] = c.predicted_slope ? rat(*c.predicted_slope) : json("inf");
  j["degenerate"] = c.degenerate;
  j["agree"] = c.agree;
  j["tolerance"] = c.tolerance;
  j["residuals"] = samples(c.residuals);
  return j;
}

inline json membership(const IdealMembership& m) {
  json j;
  j["member"] = m.member;
  json per = json::array();
  for (std::size_t i = 0; i < m.ord_h.size(); ++i)
    per.push_back(json{{"branch_id", i},
                       {"ord_h", rat_or_inf(m.ord_h[i])},
                       {"min_generator_order", rat(m.min_generator_order[i])},
                       {"margin", rat_or_inf(m.margin[i])}});
  j["per_branch"] = per;
  return j;
}

inline json fiber(const FiberReport& f) {
  json j;
  j["t"] = rat(f.t);
  j["shear"] = rat(f.shear);
  j["profile"] = profile(f.profile);
  j["root_pattern"] = f.root_pattern;
  return j;
}

inline json equisat(const EquisatReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  j["discriminant"] = r.discriminant.to_string({"x", "t"});
  j["reduced_discriminant"] = r.reduced_discriminant.to_string({"x", "t"});
  j["section_order"] = r.section_order;
  json per = json::array();
  for (const auto& f : r.per_t) per.push_back(fiber(f));
  j["per_t"] = per;
  j["witness_t"] = r.witness_t ? rat(*r.witness_t) : json(nullptr);
  j["contrast_t"] = r.contrast_t ? rat(*r.contrast_t) : json(nullptr);
  j["witness_fiber"] = r.witness_fiber ? fiber(*r.witness_fiber) : json(nullptr);
  return j;
}

/// Common envelope of every report.
inline json envelope(const std::string& command, json input, json result) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["input"] = std::move(input);
  j["result"] = std::move(result);
  return j;
}

}  // namespace satcurve::report
