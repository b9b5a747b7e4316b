#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "banded.hpp"
#include "core.hpp"
#include "darboux_forward.hpp"
#include "darboux_inverse.hpp"
#include "quasi.hpp"
#include "szego.hpp"

namespace cmv {

using Json = nlohmann::ordered_json;

// ---- canonical serialization ----
// Numbers are printed with %.17g so output is byte-stable and round-trips.

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void canonical_dump_rec(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        canonical_dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        canonical_dump_rec(v, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string canonical_dump(const Json& j) {
  std::string out;
  detail::canonical_dump_rec(j, out);
  out += '\n';
  return out;
}

// ---- complex values: [re, im], with bare numbers accepted on input ----

inline Json json_of(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::runtime_error("expected a number or [re, im] pair");
}

// "re" or "re,im" as used for command line values.
inline std::complex<double> complex_from_arg(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

// ---- Schur sequences ----

inline Json json_of(const SchurSequence<double>& a) {
  Json j;
  Json pars = Json::array();
  for (const auto& v : a.prefix) pars.push_back(json_of(v));
  j["prefix"] = pars;
  Json tail;
  switch (a.tail) {
    case Tail::Zero: tail["kind"] = "zero"; break;
    case Tail::Constant: tail["kind"] = "constant"; break;
    case Tail::Truncated: tail["kind"] = "truncated"; break;
  }
  if (a.tail == Tail::Constant) tail["value"] = json_of(a.tail_value);
  j["tail"] = tail;
  j["u1"] = a.u1;
  return j;
}

inline SchurSequence<double> schur_from_json(const Json& j) {
  const char* key = j.is_object() && j.contains("prefix") ? "prefix" : "parameters";
  if (!j.is_object() || !j.contains(key))
    throw std::runtime_error("schur data must be an object with a \"prefix\" array");
  SchurSequence<double> a;
  if (j.contains("u1")) {
    a.u1 = j["u1"].get<double>();
    if (a.u1 == 0.0) throw std::runtime_error("u1 must not vanish");
  }
  std::string tail = "zero";
  Json tail_value;
  if (j.contains("tail")) {
    const Json& t = j["tail"];
    if (t.is_string()) tail = t.get<std::string>();
    else if (t.is_object() && t.contains("kind")) {
      tail = t["kind"].get<std::string>();
      if (t.contains("value")) tail_value = t["value"];
    } else {
      throw std::runtime_error("tail must be a kind string or {\"kind\": ...}");
    }
  }
  if (tail == "zero") a.tail = Tail::Zero;
  else if (tail == "constant") a.tail = Tail::Constant;
  else if (tail == "truncated") a.tail = Tail::Truncated;
  else throw std::runtime_error("tail must be zero, constant or truncated");
  if (a.tail == Tail::Constant) {
    if (tail_value.is_null() && j.contains("tail_value")) tail_value = j["tail_value"];
    if (tail_value.is_null()) throw std::runtime_error("constant tail needs a value");
    a.tail_value = complex_from_json(tail_value);
  }
  for (const auto& v : j[key]) a.prefix.push_back(complex_from_json(v));
  return a;
}

inline Json json_of(const QuasiSchurSequence<double>& a) { return json_of(a.seq); }

inline QuasiSchurSequence<double> quasi_schur_from_json(const Json& j) {
  return QuasiSchurSequence<double>{schur_from_json(j)};
}

// ---- transformations ----

inline Json json_of(const HermitianLaurent<double>& l) {
  Json j;
  j["beta"] = l.beta;
  Json al = Json::array();
  for (const auto& v : l.alpha) al.push_back(json_of(v));
  j["alpha"] = al;
  return j;
}

inline HermitianLaurent<double> laurent_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("beta") || !j.contains("alpha"))
    throw std::runtime_error("transformation must be an object with \"beta\" and \"alpha\"");
  HermitianLaurent<double> l;
  l.beta = j["beta"].get<double>();
  for (const auto& v : j["alpha"]) l.alpha.push_back(complex_from_json(v));
  if (l.alpha.empty()) throw std::runtime_error("alpha must hold at least one coefficient");
  return l;
}

// ---- factors, parameters, classifications ----

inline Json json_of(const DarbouxFactor<double>& f) {
  Json j;
  j["r"] = f.r;
  Json s = Json::array(), t = Json::array();
  for (const auto& v : f.s) s.push_back(json_of(v));
  for (const auto& v : f.t) t.push_back(json_of(v));
  j["s"] = s;
  j["t"] = t;
  return j;
}

inline DarbouxFactor<double> factor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("s") || !j.contains("t"))
    throw std::runtime_error("factor must be an object with \"r\", \"s\" and \"t\"");
  DarbouxFactor<double> f;
  for (const auto& v : j["r"]) f.r.push_back(v.get<double>());
  for (const auto& v : j["s"]) f.s.push_back(complex_from_json(v));
  for (const auto& v : j["t"]) f.t.push_back(complex_from_json(v));
  return f;
}

inline Json json_of(const InverseParameters<double>& p) {
  Json j;
  j["r0"] = p.r0;
  j["s0"] = json_of(p.s0);
  j["r1"] = p.r1;
  return j;
}

inline InverseParameters<double> inverse_parameters_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r0") || !j.contains("s0") || !j.contains("r1"))
    throw std::runtime_error("free parameters must be an object with \"r0\", \"s0\", \"r1\"");
  InverseParameters<double> p;
  p.r0 = j["r0"].get<double>();
  p.s0 = complex_from_json(j["s0"]);
  p.r1 = j["r1"].get<double>();
  return p;
}

inline Json json_of(const QuasiInverseParameters<double>& p) {
  Json j;
  j["er0sq"] = p.er0sq;
  j["s0"] = json_of(p.s0);
  j["er1sq"] = p.er1sq;
  return j;
}

inline QuasiInverseParameters<double> quasi_parameters_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("er0sq") || !j.contains("s0") || !j.contains("er1sq"))
    throw std::runtime_error(
        "free parameters must be an object with \"er0sq\", \"s0\", \"er1sq\"");
  QuasiInverseParameters<double> p;
  p.er0sq = j["er0sq"].get<double>();
  p.s0 = complex_from_json(j["s0"]);
  p.er1sq = j["er1sq"].get<double>();
  return p;
}

inline Json json_of(const Classification<double>& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["a1"] = json_of(c.a);
  j["hermitian_residual"] = c.hermitian_residual;
  j["cmv_residual"] = c.cmv_residual;
  j["breakdown"] = c.breakdown;
  return j;
}

inline Json json_of(const QuasiClassification<double>& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["a1"] = json_of(c.a);
  j["hermitian_residual"] = c.hermitian_residual;
  j["cmv_residual"] = c.cmv_residual;
  j["breakdown"] = c.breakdown;
  j["e0"] = c.e0;
  j["e1"] = c.e1;
  return j;
}

inline Json json_of(const Jacobi<double>& jm) {
  Json j;
  j["diag"] = jm.diag;
  j["off"] = jm.off;
  return j;
}

// Dense window of a matrix as rows of [re, im] pairs.
inline Json json_of_window(const DenseMatrix<double>& m, int w) {
  Json rows = Json::array();
  for (int i = 0; i < w; ++i) {
    Json row = Json::array();
    for (int j = 0; j < w; ++j) row.push_back(json_of(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// ---- CSV (flow trajectories): one row per (t, n) pair ----

inline std::string trajectory_csv(const std::vector<double>& times,
                                  const std::vector<std::vector<Cplx<double>>>& states) {
  std::string out = "t,n,re_a,im_a\n";
  char buf[80];
  for (size_t i = 0; i < times.size(); ++i)
    for (size_t k = 0; k < states[i].size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.12g,%zu,%.12g,%.12g\n", times[i], k + 1,
                    states[i][k].real(), states[i][k].imag());
      out += buf;
    }
  return out;
}

}  // namespace cmv
