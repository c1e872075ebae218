#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "satcurve/family.hpp"
#include "satcurve/numeric_verify.hpp"
#include "satcurve/parse.hpp"
#include "satcurve/regularize.hpp"
#include "satcurve/report.hpp"
#include "satcurve/saturation.hpp"

using namespace satcurve;
using report::json;

namespace {

struct Options {
  std::string curve;
  std::string order;
  std::string num = "1";
  std::string den = "1";
  std::vector<std::string> gens;
  std::string family;
  std::vector<std::string> ts;
  bool verify = false;
  bool no_shear = false;
  bool pretty = false;
  bool timing = false;
  std::uint64_t seed = 1;
  unsigned precision = 128;
  unsigned stability = 0;
  std::string output;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownVariable:
    case ErrorKind::NotAGerm:
    case ErrorKind::InvalidArgument:
      return 2;
    case ErrorKind::PrecisionOverflow:
    case ErrorKind::InsufficientTruncation:
      return 4;
    default:
      return 3;
  }
}

struct Regularized {
  BiPoly f, g;
  Rat shear;
};

Regularized regularize(const Options& o) {
  Regularized r;
  r.f = parse_bipoly(o.curve);
  if (o.no_shear) {
    require_y_regular_reduced(r.f);
    r.g = r.f.scaled(Rat(1) / r.f.coeff({0u, static_cast<unsigned>(r.f.degree(1))}));
    r.shear = 0;
  } else {
    auto y = make_y_regular(r.f);
    r.g = y.g;
    r.shear = y.shear;
  }
  return r;
}

json curve_echo(const Options& o, const Regularized& r) {
  return json{{"curve", o.curve},
              {"curve_canonical", r.f.to_string(xy_names())},
              {"shear", report::rat(r.shear)},
              {"curve_used", r.g.to_string(xy_names())}};
}

SamplePlan plan_from(const Options& o) {
  SamplePlan p = SamplePlan::standard();
  p.seed = o.seed;
  p.float_precision = static_cast<mpfr_prec_t>(o.precision);
  return p;
}

json cmd_branches(const Options& o, json& input) {
  auto r = regularize(o);
  input = curve_echo(o, r);
  int d0 = discriminant_order(r.g);
  Rat order = o.order.empty() ? Rat(d0 + 1) : parse_rat(o.order);
  input["order"] = report::rat(order);
  auto br = puiseux_expand(r.g, order);
  json res;
  res["multiplicity"] = multiplicity(r.g);
  res["discriminant_order"] = d0;
  json a = json::array();
  for (const auto& b : br) a.push_back(report::branch(b));
  res["branches"] = a;
  return res;
}

json cmd_profile(const Options& o, json& input) {
  auto r = regularize(o);
  input = curve_echo(o, r);
  json res = report::profile(saturation_profile(r.g));
  if (o.stability > 0) {
    auto st = profile_shear_stability(r.f, o.stability, o.seed);
    json trials = json::array();
    for (const auto& t : st.trials)
      trials.push_back(json{{"lambda", report::rat(t.lambda)}, {"distinct_exponents", report::rats(t.distinct_exponents)}});
    res["shear_stability"] = json{{"stable", st.stable}, {"trials", trials}};
  }
  return res;
}

json cmd_lipschitz(const Options& o, json& input) {
  auto r = regularize(o);
  input = curve_echo(o, r);
  BiPoly p = parse_bipoly(o.num), q = parse_bipoly(o.den);
  input["num"] = o.num;
  input["den"] = o.den;
  input["num_canonical"] = p.to_string(xy_names());
  input["den_canonical"] = q.to_string(xy_names());
  p = apply_shear(p, r.shear);
  q = apply_shear(q, r.shear);
  json res = report::lipschitz(is_lipschitz_fraction(p, q, r.g));
  if (o.verify) res["crosscheck"] = report::consistency(crosscheck(p, q, r.g, plan_from(o)));
  return res;
}

json cmd_ideal(const Options& o, json& input) {
  auto r = regularize(o);
  input = curve_echo(o, r);
  BiPoly p = parse_bipoly(o.num), q = parse_bipoly(o.den);
  input["num"] = o.num;
  input["den"] = o.den;
  input["generators"] = o.gens;
  std::vector<BiPoly> gens;
  for (const auto& g : o.gens) gens.push_back(apply_shear(parse_bipoly(g), r.shear));
  return report::membership(integral_closure_member(apply_shear(p, r.shear), apply_shear(q, r.shear), gens, r.g));
}

json cmd_family(const Options& o, json& input) {
  FamilyCurve F{parse_tripoly(o.family), {}};
  for (const auto& t : o.ts) F.t_range.push_back(parse_rat(t));
  input = json{{"family", o.family}, {"family_canonical", F.poly.to_string(xyt_names())}, {"t", report::rats(F.t_range)}};
  return report::equisat(equisaturation_check(F));
}

/// Raw arguments, echoed when the command fails before canonicalizing them.
json raw_input(const std::string& command, const Options& o) {
  if (command == "family") return json{{"family", o.family}, {"t", o.ts}};
  json j{{"curve", o.curve}};
  if (command == "branches" && !o.order.empty()) j["order"] = o.order;
  if (command == "lipschitz" || command == "ideal") {
    j["num"] = o.num;
    j["den"] = o.den;
  }
  if (command == "ideal") j["generators"] = o.gens;
  return j;
}

std::optional<std::string> scalar_text(const json& v) {
  if (v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den")) {
    std::string d = v["den"].get<std::string>();
    return v["num"].get<std::string>() + (d == "1" ? "" : "/" + d);
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_primitive()) return v.dump();
  return std::nullopt;
}

/// Scalars, and arrays of scalars, fit on one line.
std::optional<std::string> inline_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto s = scalar_text(v[i]);
    if (!s) return std::nullopt;
    out += (i ? ", " : "") + *s;
  }
  return out + "]";
}

/// Indented text rendering; rationals print as a/b.
void render(std::ostream& os, const json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (auto s = inline_text(j)) {
    os << pad << *s << "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (auto s = inline_text(v)) os << pad << k << ": " << *s << "\n";
      else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
    return;
  }
  for (const auto& v : j) {
    os << pad << "-\n";
    render(os, v, indent + 2);
  }
}

void emit(const Options& o, const json& doc) {
  std::ostringstream os;
  if (o.pretty) render(os, doc, 0);
  else os << doc.dump(2) << "\n";
  if (o.output.empty()) {
    std::cout << os.str() << std::flush;
    return;
  }
  std::string tmp = o.output + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    f << os.str();
  }
  std::rename(tmp.c_str(), o.output.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Puiseux branches, Lipschitz saturation profiles and membership tests for plane curve germs"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "human-readable rendering instead of JSON");
  app.add_flag("--json", [&](std::int64_t) { o.pretty = false; }, "JSON output (default)");
  app.add_option("--seed", o.seed, "seed for sampling and random shears");
  app.add_option("--precision", o.precision, "float precision in bits for numeric checks")->check(CLI::Range(53u, 4096u));
  app.add_flag("--timing", o.timing, "record wall-clock time in the report");
  app.add_flag("--no-shear", o.no_shear, "fail instead of shearing a non-y-regular curve");
  app.add_option("--output", o.output, "write the report to this file");

  auto* branches = app.add_subcommand("branches", "Puiseux branches and characteristic exponents");
  branches->add_option("--curve", o.curve, "f(x,y)")->required();
  branches->add_option("--order", o.order, "expansion order (rational)");

  auto* profile = app.add_subcommand("profile", "contact types and saturation profile");
  profile->add_option("--curve", o.curve, "f(x,y)")->required();
  profile->add_option("--stability", o.stability, "number of random shears to recheck the profile under");

  auto* lip = app.add_subcommand("lipschitz", "decide whether num/den is Lipschitz on the curve");
  lip->add_option("--curve", o.curve, "f(x,y)")->required();
  lip->add_option("--num", o.num, "numerator");
  lip->add_option("--den", o.den, "denominator");
  lip->add_flag("--verify", o.verify, "cross-check numerically");

  auto* ideal = app.add_subcommand("ideal", "integral closure membership of num/den");
  ideal->add_option("--curve", o.curve, "f(x,y)")->required();
  ideal->add_option("--num", o.num, "numerator");
  ideal->add_option("--den", o.den, "denominator");
  ideal->add_option("--gen", o.gens, "ideal generator (repeatable)")->required();

  auto* family = app.add_subcommand("family", "equisaturation of a family F(x,y,t)");
  family->add_option("--family", o.family, "F(x,y,t), monic in y")->required();
  family->add_option("--t", o.ts, "sampled t value (repeatable, must include 0)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  json input = json::object();
  auto start = std::chrono::steady_clock::now();
  try {
    json result;
    if (command == "branches") result = cmd_branches(o, input);
    else if (command == "profile") result = cmd_profile(o, input);
    else if (command == "lipschitz") result = cmd_lipschitz(o, input);
    else if (command == "ideal") result = cmd_ideal(o, input);
    else result = cmd_family(o, input);
    json doc = report::envelope(command, input, result);
    doc["seed"] = o.seed;
    doc["precision"] = o.precision;
    if (o.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      doc["timing_ms"] = ms;
    } else {
      doc["timing_ms"] = nullptr;
    }
    emit(o, doc);
    return 0;
  } catch (const Error& e) {
    if (input.empty()) input = raw_input(command, o);
    json doc = report::envelope(command, input, nullptr);
    doc["error"] = json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    emit(o, doc);
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  }
}
