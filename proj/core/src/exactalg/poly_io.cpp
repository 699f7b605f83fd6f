#include "period_atlas/exactalg/poly_io.hpp"

#include <limits>
#include <sstream>

#include "detail/poly_json.hpp"
#include "period_atlas/errors.hpp"

namespace period_atlas {

namespace {

nlohmann::json integer_to_json(const exactalg::Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

exactalg::Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return exactalg::Integer(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_number_unsigned()) return exactalg::Integer(std::to_string(j.get<std::uint64_t>()), 10);
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    return exactalg::parse_rational(s).get_num();
  }
  throw ParseError("polynomial JSON: coefficient must be an integer or a decimal string");
}

std::uint32_t exponent_from_json(const nlohmann::json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ParseError("polynomial JSON: exponent must be a non-negative integer");
  }
  const auto e = j.get<std::uint64_t>();
  if (e > exactalg::MPoly::kMaxExponent) throw ParseError("polynomial JSON: exponent too large");
  return static_cast<std::uint32_t>(e);
}

}  // namespace

namespace detail {

nlohmann::json poly_to_json(const exactalg::MPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : p.terms()) {
    const auto e = exactalg::MPoly::unpack(key);
    terms.push_back({integer_to_json(c.get_num()), integer_to_json(c.get_den()), e[0], e[1], e[2]});
  }
  return {{"vars", {"u", "w", "D"}}, {"terms", std::move(terms)}};
}

exactalg::MPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw ParseError("polynomial JSON: expected an object with a 'terms' array");
  }
  if (j.contains("vars") && j["vars"] != nlohmann::json({"u", "w", "D"})) {
    throw ParseError("polynomial JSON: vars must be [\"u\",\"w\",\"D\"]");
  }
  exactalg::MPoly p;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 5) throw ParseError("polynomial JSON: each term needs 5 entries");
    const exactalg::Integer num = integer_from_json(t[0]);
    const exactalg::Integer den = integer_from_json(t[1]);
    if (den <= 0) throw ParseError("polynomial JSON: denominator must be positive");
    exactalg::Rational c(num, den);
    c.canonicalize();
    p += exactalg::MPoly::monomial(
        c, {exponent_from_json(t[2]), exponent_from_json(t[3]), exponent_from_json(t[4])});
  }
  return p;
}

}  // namespace detail

namespace exactalg {

std::string to_text(const MPoly& p) {
  std::string out;
  for (const auto& [key, c] : p.terms()) {
    const auto e = MPoly::unpack(key);
    out += to_fraction_string(c);
    for (auto x : e) {
      out += ' ';
      out += std::to_string(x);
    }
    out += '\n';
  }
  return out;
}

MPoly parse_text(std::string_view text) {
  MPoly p;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') throw ParseError("CR line ending", line_no);
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string coef;
    long long e[3];
    if (!(is >> coef >> e[0] >> e[1] >> e[2])) {
      throw ParseError("expected '<num>/<den> <e_u> <e_w> <e_D>'", line_no);
    }
    std::string extra;
    if (is >> extra) throw ParseError("trailing content '" + extra + "'", line_no);
    Exponent ex{};
    for (int i = 0; i < 3; ++i) {
      if (e[i] < 0 || e[i] > static_cast<long long>(MPoly::kMaxExponent)) {
        throw ParseError("exponent out of range", line_no);
      }
      ex[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(e[i]);
    }
    Rational c;
    try {
      c = parse_rational(coef);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), line_no);
    }
    p += MPoly::monomial(c, ex);
  }
  return p;
}

std::string to_json(const MPoly& p) { return detail::poly_to_json(p).dump(); }

MPoly parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("polynomial JSON: ") + e.what());
  }
  return detail::poly_from_json(j);
}

}  // namespace exactalg
}  // namespace period_atlas
