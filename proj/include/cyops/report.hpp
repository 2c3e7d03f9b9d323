#pragma once

#include <string>
#include <vector>

#include <json.hpp>
#include "cyops/cy_checker.hpp"

namespace cyops {

inline constexpr const char* version = "0.1.0";

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Series& s, std::size_t max_terms = static_cast<std::size_t>(-1)) {
  Json c = Json::array();
  const long end = std::min<long>(s.precision(), s.shift() + static_cast<long>(std::min(max_terms, s.order())));
  for (long e = s.shift(); e < end; ++e) c.push_back(to_string(s.coeff(e)));
  return Json{{"shift", s.shift()}, {"coefficients", c}, {"truncation", end}};
}

inline Json to_json(const NIntegralProperty& p) {
  Json j{{"pass", p.pass}};
  if (p.witness.N) j["N"] = p.witness.N->get_str();
  else j["reason"] = p.witness.reason;
  return j;
}

inline Json to_json(const CYVerdict& v) {
  Json j;
  Json P{{"pass", v.property_P.pass}};
  if (v.property_P.alpha) P["alpha"] = v.property_P.alpha->to_string();
  else P["reason"] = v.property_P.reason;
  j["P"] = P;
  Json M{{"pass", v.property_M.pass}, {"indicial", v.property_M.indicial.to_string("T")}};
  if (v.property_M.r) M["r"] = *v.property_M.r;
  j["M"] = M;
  j["N"] = to_json(v.property_N);
  j["Q"] = to_json(v.property_Q);
  Json S{{"pass", v.property_S}, {"structure_series", Json::array()}};
  for (const auto& s : v.structure) S["structure_series"].push_back(to_json(s));
  j["S"] = S;
  if (v.order_one_algebraic) j["order_one_algebraic"] = *v.order_one_algebraic;
  j["irreducibility"] = v.irreducibility;
  j["depth"] = v.depth;
  j["prime_bound"] = v.prime_bound;
  j["cy_type"] = v.overall;
  return j;
}

inline Json to_json(const GaloisVerdict& g) {
  Json j{{"ambient", g.ambient}, {"classification", g.label()}};
  if (g.root) {
    j["sym_root"] = g.root->P.to_string();
    j["twist"] = g.root->twist.to_string();
  }
  if (g.sym_square_order) j["sym_square_order"] = *g.sym_square_order;
  Json ev = Json::array();
  for (const auto& e : g.evidence) ev.push_back(Json{{"criterion", e.criterion}, {"result", e.result}});
  j["evidence"] = ev;
  return j;
}

inline Json to_json(const LambertExpansion& e) {
  Json c = Json::array();
  bool integral = true;
  for (const auto& n : e.coefficients) {
    c.push_back(to_string(n));
    integral = integral && is_integer(n);
  }
  return Json{{"ell", e.ell}, {"coefficients", c}, {"integral", integral}};
}

inline Json to_json(const NormalFormData& d, std::size_t max_terms) {
  Json j;
  j["q"] = to_json(d.q, max_terms);
  Json a = Json::array();
  for (const auto& s : d.alpha) a.push_back(to_json(s, max_terms));
  j["structure_series"] = a;
  Json y = Json::array();
  for (const auto& s : d.y_invariants) y.push_back(to_json(s, max_terms));
  j["y_invariants"] = y;
  return j;
}

inline Json operator_json(const std::string& name, const ThetaOperator& L) {
  return Json{{"name", name}, {"order", L.order()}, {"theta_form", render(L)}, {"d_form", to_d_form(L).monic().to_string()}};
}

struct ReportParams {
  std::size_t truncation = 50;
  std::size_t depth = 200;
  unsigned long prime_bound = 1000000;
  int ell = 3;
};

/// The full analysis document; identical inputs give byte-identical output.
inline Json analyze_report(const std::string& name, const ThetaOperator& L, const ReportParams& p) {
  Json r;
  r["operator"] = operator_json(name, L);
  const CYVerdict v = check_cy_type(L, p.truncation, p.prime_bound, p.depth);
  r["verdict"] = to_json(v);
  Json nf = nullptr, lam = Json::array(), gal = nullptr;
  if (v.property_M.pass && L.order() >= 2) {
    const NormalFormData d = normal_form(L, p.truncation);
    nf = to_json(d, p.truncation);
    for (std::size_t i = 0; i < d.y_invariants.size(); ++i) {
      const auto& Y = d.y_invariants[i];
      const std::size_t count = std::min<std::size_t>(10, static_cast<std::size_t>(std::max(0L, Y.precision() - 1)));
      Json e = to_json(lambert_coefficients(Y, p.ell, count));
      e["index"] = i + 1;
      lam.push_back(e);
    }
  }
  if (v.property_M.pass && v.property_P.pass) {
    try {
      gal = to_json(galois_classify(L, p.truncation));
    } catch (const Error& e) {
      gal = Json{{"error", e.what()}};
    }
  }
  r["normal_form"] = nf;
  r["lambert"] = lam;
  r["galois"] = gal;
  r["params"] = Json{{"truncation", p.truncation}, {"depth", p.depth}, {"prime_bound", p.prime_bound}, {"ell", p.ell}};
  r["version"] = version;
  return r;
}

}  // namespace cyops
