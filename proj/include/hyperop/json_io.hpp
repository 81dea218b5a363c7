#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperop/quadrature.hpp"
#include "hyperop/series.hpp"
#include "hyperop/trimatrix.hpp"

namespace hyperop {

using Json = nlohmann::json;

// Complex numbers serialize as [re, im]; no string parsing of "a+bi".
inline Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex_from_json: expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Series: array of [re, im] pairs ordered by the coefficient index from 1.
inline Json series_to_json(const EntireSeries& f) {
  Json arr = Json::array();
  for (const Complex& c : f.coeffs()) arr.push_back(complex_to_json(c));
  return arr;
}

inline EntireSeries series_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("series_from_json: expected an array");
  std::vector<Complex> coeffs;
  coeffs.reserve(j.size());
  for (const Json& e : j) coeffs.push_back(complex_from_json(e));
  return EntireSeries(std::move(coeffs));
}

// TriMatrix: {"order": N, "rows": [[re, im], ...]} packed row by row.
inline Json trimatrix_to_json(const TriMatrix& m) {
  Json rows = Json::array();
  for (const Complex& c : m.packed()) rows.push_back(complex_to_json(c));
  return Json{{"order", m.order()}, {"rows", rows}};
}

inline TriMatrix trimatrix_from_json(const Json& j) {
  const int order = j.at("order").get<int>();
  TriMatrix m(order);
  const Json& rows = j.at("rows");
  if (rows.size() != m.packed().size())
    throw std::invalid_argument("trimatrix_from_json: packed length does not match order");
  for (std::size_t i = 0; i < m.packed().size(); ++i) m.packed()[i] = complex_from_json(rows[i]);
  return m;
}

inline std::string quad_rule_name(QuadRule r) {
  return r == QuadRule::tanh_sinh ? "tanh_sinh" : "gauss_legendre_adaptive";
}
inline QuadRule quad_rule_from_name(const std::string& s) {
  if (s == "tanh_sinh") return QuadRule::tanh_sinh;
  if (s == "gauss_legendre_adaptive") return QuadRule::gauss_legendre_adaptive;
  throw std::invalid_argument("unknown quadrature rule: " + s);
}

inline std::string endpoint_policy_name(EndpointPolicy e) {
  return e == EndpointPolicy::open_interval ? "open_interval" : "closed";
}
inline EndpointPolicy endpoint_policy_from_name(const std::string& s) {
  if (s == "open_interval") return EndpointPolicy::open_interval;
  if (s == "closed") return EndpointPolicy::closed;
  throw std::invalid_argument("unknown endpoint policy: " + s);
}

inline Json quad_spec_to_json(const QuadratureSpec& q) {
  return Json{{"rule", quad_rule_name(q.rule)},
              {"abs_tol", q.abs_tol},
              {"rel_tol", q.rel_tol},
              {"max_panels", q.max_panels},
              {"endpoint_policy", endpoint_policy_name(q.endpoint_policy)}};
}

inline QuadratureSpec quad_spec_from_json(const Json& j) {
  QuadratureSpec q;
  if (j.contains("rule")) q.rule = quad_rule_from_name(j.at("rule").get<std::string>());
  if (j.contains("abs_tol")) q.abs_tol = j.at("abs_tol").get<double>();
  if (j.contains("rel_tol")) q.rel_tol = j.at("rel_tol").get<double>();
  if (j.contains("max_panels")) q.max_panels = j.at("max_panels").get<int>();
  if (j.contains("endpoint_policy"))
    q.endpoint_policy = endpoint_policy_from_name(j.at("endpoint_policy").get<std::string>());
  q.validate();
  return q;
}

}  // namespace hyperop
