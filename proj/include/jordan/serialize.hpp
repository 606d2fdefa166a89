#pragma once

// JSON and CSV reports. Complex numbers serialize as [re, im]; vectors and matrices
// as arrays of those (matrices row by row). Every report carries "schema": 1.

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "jordan/automorphisms.hpp"
#include "jordan/boundary.hpp"
#include "jordan/harness.hpp"

namespace jordan {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(Vector(m.row(i).transpose())));
  return a;
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("json: complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: vector must be an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("json: matrix must be a non-empty array");
  Matrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) m.row(i) = vector_from_json(j[i]).transpose();
  return m;
}

inline Json to_json(const Transvection& g) {
  return Json{{"schema", kSchemaVersion}, {"kind", g.system().tag()}, {"a", to_json(g.a())}};
}

/// sqrt B(a,a) is recomputed, so a round trip matches to solver precision, not bitwise.
inline Transvection transvection_from_json(const Json& j, const Domain& D) {
  if (j.at("kind").get<std::string>() != D.tag())
    throw std::invalid_argument("json: transvection kind " + j.at("kind").get<std::string>() +
                                " does not match domain " + D.tag());
  return Transvection(D, vector_from_json(j.at("a")));
}

inline Json to_json(const SpectralDecomposition& dec) {
  Json frame = Json::array();
  for (const auto& e : dec.frame) frame.push_back(to_json(e));
  return Json{{"lambdas", dec.lambdas}, {"frame", frame}};
}

inline Json to_json(const RescalingStep& s) {
  return Json{{"k", s.k},
              {"a", to_json(s.a)},
              {"b", to_json(s.b)},
              {"orbit_sup", s.orbit_sup},
              {"nonlinearity", s.nonlinearity},
              {"delta_linear", s.delta_linear},
              {"linear", to_json(s.linear)}};
}

inline Json to_json(const RescalingRun& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  Json out{{"schema", kSchemaVersion},
           {"inputs", {{"d1", r.d1}, {"d2", r.d2}, {"p", to_json(r.p)}, {"k_max", r.k_max},
                       {"fit_points", r.fit_points}}},
           {"steps", steps}};
  out["converged_at"] = r.converged_at ? Json(*r.converged_at) : Json(nullptr);
  out["final_linear"] = r.final_linear.size() ? to_json(r.final_linear) : Json(nullptr);
  out["final_nonlinearity"] = r.final_nonlinearity;
  out["isometry_defect"] = r.isometry_defect;
  out["forward_expansion"] = r.forward_expansion;
  out["inverse_expansion"] = r.inverse_expansion;
  out["verdict"] = to_string(r.verdict);
  out["message"] = r.message;
  return out;
}

namespace detail {
inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}
}  // namespace detail

inline void write_csv(std::ostream& os, const RescalingRun& r) {
  os << "k,orbit_sup,nonlinearity,delta_linear\n";
  for (const auto& s : r.steps)
    os << s.k << ',' << detail::fmt(s.orbit_sup) << ',' << detail::fmt(s.nonlinearity) << ','
       << detail::fmt(s.delta_linear) << '\n';
}

inline void write_csv(std::ostream& os, const ScanResult& s) {
  os << "theta,abs_det\n";
  for (const auto& row : s.rows) os << detail::fmt(row.theta) << ',' << detail::fmt(row.abs_det) << '\n';
}

}  // namespace jordan
