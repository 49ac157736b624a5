#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyzeta/family.hpp"
#include "cyzeta/poly.hpp"
#include "cyzeta/singularities.hpp"

namespace cyzeta {

// Malformed input file; the caller treats it as a usage error.
class FamilyFileError : public std::runtime_error {
 public:
  FamilyFileError(const std::string& where, int line, const std::string& msg)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + msg) {}
};

struct NamedPoint {
  std::string name;
  ParamPoint values;
};

struct FamilyFile {
  FamilySpec family;
  std::vector<NamedPoint> points;
  std::optional<Poly> curve;
  std::vector<CurveSingularStratum> strata;

  const NamedPoint* point(const std::string& name) const {
    for (const auto& p : points)
      if (p.name == name) return &p;
    return nullptr;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  return out;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline Rational parse_rational(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty number");
  auto slash = t.find('/');
  auto integer = [](const std::string& x) {
    std::string y = trim(x);
    std::size_t k = (!y.empty() && (y[0] == '-' || y[0] == '+')) ? 1 : 0;
    if (k == y.size() || !std::all_of(y.begin() + k, y.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("not an integer: " + x);
    return BigInt(y[0] == '+' ? y.substr(1) : y);
  };
  if (slash == std::string::npos) return Rational(integer(t));
  BigInt den = integer(t.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(integer(t.substr(0, slash)), den);
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    std::size_t used = 0;
    int v = std::stoi(part, &used);
    if (used != part.size()) throw std::invalid_argument("not an integer: " + part);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// "a=1,b=-2/3" against the parameter names of fam.
inline ParamPoint parse_point(const std::string& text, const FamilySpec& fam) {
  ParamPoint p;
  for (const auto& item : detail::split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value, got '" + item + "'");
    std::string name = detail::trim(item.substr(0, eq));
    if (fam.index_of(name) < 0) throw std::invalid_argument("unknown parameter '" + name + "'");
    if (p.count(name)) throw std::invalid_argument("parameter '" + name + "' given twice");
    p[name] = detail::parse_rational(item.substr(eq + 1));
  }
  for (const auto& d : fam.deformations)
    if (!p.count(d.name)) throw std::invalid_argument("missing value for parameter '" + d.name + "'");
  return p;
}

inline FamilyFile parse_family(std::istream& in, const std::string& where = "<family>") {
  std::optional<WeightSystem> ws;
  std::vector<Deformation> defs;
  std::vector<std::pair<int, std::string>> points, strata;
  std::pair<int, std::string> curve{0, ""};
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& m) { throw FamilyFileError(where, lineno, m); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'key: value'");
    std::string key = detail::trim(line.substr(0, colon));
    std::string value = detail::trim(line.substr(colon + 1));
    std::istringstream ks(key);
    std::string word, name, extra;
    ks >> word >> name >> extra;
    if (!extra.empty()) fail("malformed key '" + key + "'");
    try {
      if (word == "weights" && name.empty()) {
        if (ws) fail("weights given twice");
        ws = validate_weights(detail::parse_int_list(value));
      } else if (word == "deform") {
        if (!detail::is_identifier(name)) fail("deform needs a parameter name, e.g. 'deform a: 1,1,1'");
        if (!ws) fail("weights must come before deformations");
        defs.push_back({name, ExponentVector(detail::parse_int_list(value))});
      } else if (word == "point") {
        if (!detail::is_identifier(name)) fail("point needs a name, e.g. 'point node: a=4'");
        points.emplace_back(lineno, name + "\n" + value);
      } else if (word == "curve" && name.empty()) {
        if (curve.first) fail("curve given twice");
        curve = {lineno, value};
      } else if (word == "stratum" && name.empty()) {
        strata.emplace_back(lineno, value);
      } else {
        fail("unknown key '" + key + "' (expected weights, deform, point, curve or stratum)");
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    } catch (const std::out_of_range& e) {
      fail("number out of range");
    }
  }
  if (!ws) throw FamilyFileError(where, lineno, "no weights line");
  if (defs.empty()) throw FamilyFileError(where, lineno, "no deformation lines");
  FamilyFile ff;
  ff.family = make_family(*ws, defs);
  std::vector<std::string> params = ff.family.parameter_names();
  for (const auto& [ln, text] : points) {
    lineno = ln;
    auto nl = text.find('\n');
    std::string name = text.substr(0, nl);
    if (ff.point(name)) fail("point '" + name + "' defined twice");
    try {
      ff.points.push_back({name, parse_point(text.substr(nl + 1), ff.family)});
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (curve.first) {
    lineno = curve.first;
    try {
      ff.curve = Poly::parse(curve.second, params);
    } catch (const DomainError& e) {
      fail(e.what());
    }
  }
  for (const auto& [ln, text] : strata) {
    lineno = ln;
    // count=48 type=A_2 milnor=2 locus=eq1, eq2
    auto at = text.find("locus=");
    if (at == std::string::npos) fail("stratum needs count=, type=, milnor= and locus=");
    CurveSingularStratum st;
    st.locus = detail::trim(text.substr(at + 6));
    std::istringstream fs(text.substr(0, at));
    std::string field;
    bool has_count = false, has_milnor = false;
    while (fs >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) fail("bad stratum field '" + field + "'");
      std::string k = field.substr(0, eq), v = field.substr(eq + 1);
      try {
        if (k == "count") {
          st.count = std::stoll(v);
          has_count = true;
        } else if (k == "milnor") {
          st.milnor_each = std::stoll(v);
          has_milnor = true;
        } else if (k == "type") {
          st.type_label = v;
        } else {
          fail("unknown stratum field '" + k + "'");
        }
      } catch (const std::logic_error&) {
        fail("bad number in stratum field '" + field + "'");
      }
    }
    if (!has_count || !has_milnor || st.type_label.empty() || st.locus.empty())
      fail("stratum needs count=, type=, milnor= and locus=");
    try {
      for (const auto& eq : detail::split(st.locus, ',')) Poly::parse(eq, params);
    } catch (const DomainError& e) {
      fail(e.what());
    }
    ff.strata.push_back(st);
  }
  return ff;
}

inline FamilyFile load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FamilyFileError(path, 0, "cannot open file");
  return parse_family(in, path);
}

inline FamilyFile parse_family_text(const std::string& text) {
  std::istringstream in(text);
  return parse_family(in);
}

}  // namespace cyzeta
