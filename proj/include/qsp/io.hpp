#pragma once

/**
 * @file io.hpp
 * @brief JSON documents for targets, decompositions and verification reports. Every number
 *        that carries precision travels as a decimal string.
 */

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsp/decompose.hpp"
#include "qsp/errors.hpp"
#include "qsp/ingest.hpp"
#include "qsp/real.hpp"
#include "qsp/verify.hpp"

namespace qsp {

using Json = nlohmann::json;

namespace detail {
inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) throw ValidationError(std::string("field \"") + key + "\" must be a decimal string");
  return v.get<std::string>();
}

inline long require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

inline Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw ValidationError("parity must be \"even\" or \"odd\", got \"" + s + "\"");
}

inline Real parse_decimal(const std::string& s, Bits bits) {
  try {
    return Real::parse(s, bits);
  } catch (const Error&) {
    throw ValidationError("not a decimal number: \"" + s + "\"");
  }
}
}  // namespace detail

inline Json to_json(const TargetSpec& spec) {
  Json j;
  j["epsilon"] = spec.epsilon;
  j["parity_re"] = to_string(spec.parity_re);
  j["parity_im"] = to_string(spec.parity_im);
  Json coeffs = Json::array();
  for (const auto& c : spec.coefficients) coeffs.push_back({{"k", c.k}, {"re", c.re}, {"im", c.im}});
  j["coefficients"] = std::move(coeffs);
  if (spec.normalizer) j["normalizer"] = *spec.normalizer;
  return j;
}

inline TargetSpec target_from_json(const Json& j) {
  TargetSpec spec;
  spec.epsilon = detail::require_string(j, "epsilon");
  spec.parity_re = detail::parse_parity(detail::require_string(j, "parity_re"));
  spec.parity_im = detail::parse_parity(detail::require_string(j, "parity_im"));
  const Json& coeffs = detail::require(j, "coefficients");
  if (!coeffs.is_array()) throw ValidationError("\"coefficients\" must be an array");
  for (const auto& c : coeffs) {
    TargetCoefficient tc;
    tc.k = static_cast<int>(detail::require_int(c, "k"));
    tc.re = detail::require_string(c, "re");
    tc.im = detail::require_string(c, "im");
    detail::parse_decimal(tc.re, 64);
    detail::parse_decimal(tc.im, 64);
    spec.coefficients.push_back(std::move(tc));
  }
  if (j.contains("normalizer")) spec.normalizer = detail::require_string(j, "normalizer");
  detail::parse_decimal(spec.epsilon, 64);
  return spec;
}

/// Angle form when the angles exist, matrix form otherwise. Numbers are printed with enough
/// digits to parse back to the same `output_precision_bits`-bit values.
inline Json to_json(const Decomposition& d) {
  Bits bits = d.output_precision_bits > 0 ? d.output_precision_bits : d.e0.e[0].re.precision();
  int digits = round_trip_digits(bits);
  auto str = [&](const Real& x) { return to_string(x, digits); };
  Json j;
  j["n_factors"] = d.projectors.size();
  j["precision_bits"] = d.precision_bits;
  j["output_precision_bits"] = bits;
  Json ps = Json::array();
  if (d.angles) {
    j["e0"] = {{"angle", str(d.angles->front())}};
    for (std::size_t i = 1; i < d.angles->size(); ++i) ps.push_back({{"phi", str((*d.angles)[i])}});
  } else {
    Json m = Json::array();
    for (const auto& e : d.e0.e) m.push_back({str(e.re), str(e.im)});
    j["e0"] = {{"matrix", std::move(m)}};
    for (const auto& p : d.projectors) ps.push_back({{"px", str(p.px())}, {"py", str(p.py())}, {"pz", str(p.pz())}});
  }
  j["projectors"] = std::move(ps);
  return j;
}

inline Decomposition decomposition_from_json(const Json& j) {
  long n = detail::require_int(j, "n_factors");
  Bits bits = j.contains("output_precision_bits") ? detail::require_int(j, "output_precision_bits") : 256;
  if (bits < 2) throw ValidationError("output_precision_bits must be at least 2");
  PrecisionScope scope(bits);
  auto num = [&](const Json& obj, const char* key) { return detail::parse_decimal(detail::require_string(obj, key), bits); };
  const Json& e0 = detail::require(j, "e0");
  const Json& ps = detail::require(j, "projectors");
  if (!ps.is_array() || static_cast<long>(ps.size()) != n) throw ValidationError("\"projectors\" must hold n_factors entries");
  Decomposition d;
  if (e0.contains("angle")) {
    std::vector<Real> angles{num(e0, "angle")};
    for (const auto& p : ps) angles.push_back(num(p, "phi"));
    d = from_angles(angles);
  } else {
    const Json& m = detail::require(e0, "matrix");
    if (!m.is_array() || m.size() != 4) throw ValidationError("\"matrix\" must hold four [re, im] pairs");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!m[i].is_array() || m[i].size() != 2 || !m[i][0].is_string() || !m[i][1].is_string()) {
        throw ValidationError("matrix entries must be [re, im] decimal strings");
      }
      d.e0.e[i] = Complex(detail::parse_decimal(m[i][0].get<std::string>(), bits),
                          detail::parse_decimal(m[i][1].get<std::string>(), bits));
    }
    for (const auto& p : ps) d.projectors.push_back(Projector2::from_bloch(num(p, "px"), num(p, "py"), num(p, "pz")));
  }
  d.precision_bits = detail::require_int(j, "precision_bits");
  d.output_precision_bits = bits;
  return d;
}

inline Json to_json(const VerifyReport& r) {
  return {{"max_error", to_string(r.max_error, round_trip_digits(r.max_error.precision()))},
          {"grid_size", r.grid_size},
          {"passed", r.passed},
          {"r_used", r.r_used}};
}

inline VerifyReport report_from_json(const Json& j) {
  VerifyReport r;
  r.max_error = detail::parse_decimal(detail::require_string(j, "max_error"), 64);
  r.grid_size = static_cast<std::size_t>(detail::require_int(j, "grid_size"));
  const Json& p = detail::require(j, "passed");
  if (!p.is_boolean()) throw ValidationError("\"passed\" must be a boolean");
  r.passed = p.get<bool>();
  r.r_used = detail::require_int(j, "r_used");
  return r;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qsp
