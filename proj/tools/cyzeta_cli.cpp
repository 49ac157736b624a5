#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "cyzeta/family_file.hpp"
#include "cyzeta/singularities.hpp"
#include "cyzeta/tables.hpp"
#include "cyzeta/zeta.hpp"

using namespace cyzeta;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::string format = "human";
  int precision = 128;
  std::int64_t budget = kDefaultBudget;
  int threads = 0;
  bool quiet = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void progress(const Options& o, const std::string& msg) {
  if (!o.quiet) std::cerr << msg << std::endl;
}

std::string rat(const Rational& r) { return to_string(r); }

ParamPoint resolve_point(const FamilyFile& ff, const std::string& spec) {
  if (spec.empty()) throw UsageError("a parameter point is required (--at a=... or --point NAME)");
  if (spec.find('=') == std::string::npos) {
    if (auto p = ff.point(spec)) return p->values;
    throw UsageError("no point named '" + spec + "' in the family file");
  }
  try {
    return parse_point(spec, ff.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string point_str(const ParamPoint& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + rat(v);
  return s;
}

ordered_json point_json(const ParamPoint& p) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : p) j[k] = rat(v);
  return j;
}

// ---- renderers ----

void print_tsv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "\t" : "") << cells[k];
  os << "\n";
}

std::string cell(const ordered_json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) {
    std::string s;
    for (const auto& [k, v] : j.items()) s += (s.empty() ? "" : ",") + k + "=" + cell(v);
    return s;
  }
  if (j.is_array()) {
    std::string s;
    for (const auto& x : j) s += (s.empty() ? "" : ",") + cell(x);
    return s;
  }
  if (j.is_null()) return "";
  return j.dump();
}

// Scalar fields as key/value lines, then the named list as a table.
void render_flat(std::ostream& os, const ordered_json& j, const std::string& list, bool tsv) {
  std::vector<std::pair<std::string, std::string>> flat;
  for (const auto& [k, v] : j.items()) {
    if (k == list || (v.is_array() && !v.empty() && v.front().is_object())) continue;
    bool nested = v.is_object() && std::any_of(v.begin(), v.end(), [](const ordered_json& x) { return x.is_structured(); });
    if (!nested) {
      flat.emplace_back(k, cell(v));
      continue;
    }
    for (const auto& [k2, v2] : v.items()) flat.emplace_back(k + "." + k2, cell(v2));
  }
  std::size_t key_width = 0;
  for (const auto& kv : flat) key_width = std::max(key_width, kv.first.size());
  for (const auto& [k, v] : flat) {
    if (tsv)
      print_tsv_row(os, {k, v});
    else
      os << std::left << std::setw(static_cast<int>(key_width + 2)) << k << v << "\n";
  }
  if (list.empty() || !j.contains(list) || j[list].empty()) return;
  std::vector<std::string> cols;
  for (const auto& [k, v] : j[list].front().items()) cols.push_back(k);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : j[list]) {
    std::vector<std::string> row;
    for (const auto& c : cols) row.push_back(r.contains(c) ? cell(r[c]) : "");
    rows.push_back(row);
  }
  if (tsv) {
    print_tsv_row(os, cols);
    for (const auto& r : rows) print_tsv_row(os, r);
    return;
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  os << "\n";
  for (std::size_t c = 0; c < cols.size(); ++c) os << std::left << std::setw(width[c] + 2) << cols[c];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) os << std::left << std::setw(width[c] + 2) << r[c];
    os << "\n";
  }
}

void emit(const Options& o, const ordered_json& j, const std::string& list) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    render_flat(std::cout, j, list, o.format == "tsv");
}

// ---- commands ----

ordered_json classes_json(const WeightSystem& ws, const ExponentVector& beta, bool members) {
  auto classes = beta_classes(ws, beta);
  auto orbits = class_orbits(ws, classes, weight_symmetries(ws, {beta}));
  std::vector<int> mult(classes.size());
  for (const auto& orb : orbits)
    for (int k : orb.classes) mult[k] = orb.multiplicity();
  ordered_json j;
  j["command"] = "classes";
  j["weights"] = ws.w;
  j["d"] = ws.d;
  j["beta"] = beta.e;
  j["class_count"] = classes.size();
  std::int64_t total = 0;
  ordered_json list = ordered_json::array();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    total += c.degree;
    ordered_json r;
    r["representative"] = c.representative.str();
    r["size"] = c.members.size();
    r["degree"] = c.degree;
    r["multiplicity"] = mult[k];
    if (members) {
      ordered_json m = ordered_json::array();
      for (const auto& v : c.members) m.push_back(v.str());
      r["members"] = m;
    }
    list.push_back(r);
  }
  j["total_degree"] = total;
  j["classes"] = list;
  return j;
}

ordered_json one_param_json(const SingularFibreReport& r) {
  ordered_json j;
  j["parameter"] = r.parameter;
  j["component"] = r.component.str();
  j["points"] = r.count;
  j["type"] = r.type_label;
  j["milnor_each"] = r.milnor_each;
  j["milnor_total"] = r.milnor_total;
  j["quadratic_rank"] = r.quadratic_rank;
  j["local_exponents"] = r.local_exponents;
  return j;
}

TwoParamAnalysis two_param(const FamilyFile& ff) { return analyze_two_param(ff.family, ff.curve, ff.strata); }

ordered_json discriminant_json(const FamilyFile& ff) {
  ordered_json j;
  j["command"] = "discriminant";
  j["weights"] = ff.family.ws.w;
  j["parameters"] = ff.family.parameter_names();
  ordered_json comps = ordered_json::array();
  if (ff.family.deformations.size() == 1) {
    const auto& d = ff.family.deformations[0];
    auto r = one_param_report(ff.family.ws, d.e, d.name);
    j["discriminant"] = r.component.str();
    auto c = one_param_json(r);
    c["kind"] = "fibre";
    comps.push_back(c);
  } else {
    auto an = two_param(ff);
    j["discriminant"] = an.lines.str() + " ; " + an.curve.str();
    j["contact"] = an.contact;
    j["curve_source"] = an.curve_given ? "family file" : "computed";
    comps.push_back({{"kind", "lines"},
                     {"component", an.lines.str()},
                     {"points", an.merged.count},
                     {"type", an.line_type.label},
                     {"milnor_each", an.line_type.milnor},
                     {"milnor_total", an.line_milnor()}});
    comps.push_back({{"kind", "curve"},
                     {"component", an.curve.str()},
                     {"points", an.conifold.count},
                     {"type", an.conifold.type_label},
                     {"milnor_each", an.conifold.milnor_each},
                     {"milnor_total", an.curve_milnor()}});
    comps.push_back({{"kind", "lines at " + an.a + "=0"},
                     {"component", an.lines.str() + ", " + an.a},
                     {"points", an.merged.count},
                     {"type", an.merged.type_label},
                     {"milnor_each", an.merged.milnor_each},
                     {"milnor_total", an.merged.milnor_total}});
    for (const auto& s : an.curve_singular)
      comps.push_back({{"kind", "curve singular"},
                       {"component", s.locus},
                       {"points", s.count},
                       {"type", s.type_label},
                       {"milnor_each", s.milnor_each},
                       {"milnor_total", s.count * s.milnor_each}});
  }
  j["components"] = comps;
  return j;
}

ordered_json singularities_json(const FamilyFile& ff, const std::string& at) {
  ordered_json j = discriminant_json(ff);
  j["command"] = "singularities";
  if (at.empty()) return j;
  auto p = resolve_point(ff, at);
  j["point"] = point_json(p);
  if (ff.family.deformations.size() == 1) {
    const auto& d = ff.family.deformations[0];
    auto r = one_param_report(ff.family.ws, d.e, d.name);
    auto mu = total_milnor(r, p.at(d.name));
    j["locus"] = mu ? "singular" : "smooth";
    j["milnor_total"] = mu;
  } else {
    auto an = two_param(ff);
    auto l = locate(an, p);
    std::vector<std::string> where;
    if (l.on_line) where.push_back("lines");
    if (l.on_curve) where.push_back("curve");
    if (l.a_zero && l.on_line) where.push_back(an.a + "=0");
    if (l.curve_singular >= 0) where.push_back("curve singular: " + an.curve_singular[l.curve_singular].locus);
    std::string s;
    for (const auto& w : where) s += (s.empty() ? "" : "; ") + w;
    j["locus"] = s.empty() ? "smooth" : s;
    j["milnor_total"] = total_milnor(an, l);
  }
  return j;
}

CountMethod parse_method(const std::string& m) {
  if (m == "auto") return CountMethod::Auto;
  if (m == "brute") return CountMethod::BruteForce;
  if (m == "charsum") return CountMethod::CharSum;
  throw UsageError("unknown method " + m);
}

ZetaOptions zeta_options(const Options& o, const std::string& method) {
  ZetaOptions z;
  z.method = parse_method(method);
  z.budget = o.budget;
  z.bits = o.precision;
  z.threads = resolve_threads(o.threads);
  if (!o.quiet) z.progress = [](const std::string& m) { std::cerr << m << std::endl; };
  return z;
}

ordered_json count_json(const FamilyFile& ff, const ParamPoint& p, std::int64_t prime, int r, const Options& o,
                        const std::string& method) {
  auto z = zeta_options(o, method);
  auto fq = make_field(prime, r);
  progress(o, "counting over F_" + std::to_string(fq.q()));
  auto pc = count_points(ff.family, p, fq, z.method, z.budget, z.bits, z.threads);
  ordered_json j;
  j["command"] = "count";
  j["point"] = point_json(p);
  j["p"] = prime;
  j["r"] = r;
  j["q"] = pc.q;
  j["method"] = pc.method;
  j["projective"] = pc.projective;
  j["cone"] = pc.cone;
  j["residual"] = pc.residual;
  return j;
}

ordered_json zeta_fit_json(const ZetaFit& z) {
  ordered_json j;
  j["fitted"] = z.fitted;
  if (z.fitted) {
    j["numerator"] = rational_poly_in_t(z.num);
    j["denominator"] = rational_poly_in_t(z.den);
    j["degree"] = z.degree();
    j["checked_by"] = z.verified ? "extra counts" : "Weil moduli";
    j["numerator_weights"] = z.weil_num.weights;
    j["denominator_weights"] = z.weil_den.weights;
  } else {
    j["reason"] = z.reason;
    j["required_rmax"] = z.required_terms;
  }
  return j;
}

ordered_json zeta_json(const FamilyFile& ff, const ParamPoint& p, std::int64_t prime, int R, bool classes, int r0,
                       const Options& o, const std::string& method) {
  auto z = zeta_options(o, method);
  ordered_json j;
  j["command"] = "zeta";
  j["point"] = point_json(p);
  j["p"] = prime;
  j["rmax"] = R;
  auto fit = zeta_total(ff.family, p, prime, R, z);
  ordered_json counts = ordered_json::array();
  for (int r = 1; r <= R; ++r) counts.push_back({{"r", r}, {"projective", fit.counts[r - 1]}});
  j["zeta"] = zeta_fit_json(fit);
  j["counts"] = counts;
  if (classes) {
    auto cl = family_classes(ff.family);
    std::vector<int> all(cl.size());
    std::iota(all.begin(), all.end(), 0);
    progress(o, "class contributions over F_" + std::to_string(prime) + "^" + std::to_string(r0) + "k");
    auto fits = fit_class_factors(ff.family, p, prime, r0, R, cl, all, z.bits, z.threads);
    ordered_json list = ordered_json::array();
    for (const auto& cf : fits) {
      ordered_json r;
      r["representative"] = cl[cf.index].representative.str();
      r["smooth_degree"] = cl[cf.index].degree;
      r["fitted"] = cf.fit.fitted;
      r["degree"] = cf.fit.fitted ? ordered_json(cf.fit.degree()) : ordered_json(nullptr);
      r["integral"] = cf.fit.integral;
      ordered_json vals = ordered_json::array();
      for (const auto& v : cf.values) {
        long double re;
        vals.push_back(near_integer(v, re) ? std::to_string(static_cast<long long>(re))
                                           : std::to_string(static_cast<double>(v.real())) + "+" +
                                                 std::to_string(static_cast<double>(v.imag())) + "i");
      }
      r["values"] = vals;
      list.push_back(r);
    }
    j["t_power"] = r0;
    j["classes"] = list;
  }
  return j;
}

// Milnor total of the fibre at `at`, and whether `at` is singular modulo p.
std::int64_t milnor_at(const FamilyFile& ff, const ParamPoint& at, std::int64_t p, bool& singular_mod_p) {
  auto on_mod_p = [&](const Poly& f) {
    Rational v = f.evaluate(at);
    BigInt den = boost::multiprecision::denominator(v);
    if (den % p == 0) throw DomainError("ffield.bad_reduction", "point does not reduce modulo " + std::to_string(p));
    return boost::multiprecision::numerator(v) % p == 0;
  };
  if (ff.family.deformations.size() == 1) {
    const auto& d = ff.family.deformations[0];
    auto r = one_param_report(ff.family.ws, d.e, d.name);
    singular_mod_p = on_mod_p(r.component);
    return total_milnor_mod_p(r, at.at(d.name), p);
  }
  auto an = two_param(ff);
  singular_mod_p = on_mod_p(an.lines) || on_mod_p(an.curve);
  return total_milnor(an, locate(an, at));
}

ordered_json report_json(const DegreeReport& r) {
  ordered_json j;
  j["command"] = "verify";
  j["mode"] = r.mode;
  j["verdict"] = r.verdict;
  j["smooth_degree"] = r.smooth_degree;
  j["singular_degree"] = r.singular_degree;
  j["degree_change"] = r.change;
  j["milnor_total"] = r.milnor_total;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.smooth_fit) j["smooth_zeta"] = zeta_fit_json(*r.smooth_fit);
  if (r.singular_fit) j["singular_zeta"] = zeta_fit_json(*r.singular_fit);
  ordered_json list = ordered_json::array();
  for (const auto& c : r.classes)
    list.push_back({{"representative", c.representative},
                    {"multiplicity", c.multiplicity},
                    {"smooth", c.smooth},
                    {"singular", c.singular}});
  j["classes"] = list;
  return j;
}

ordered_json table_json(const DegreeTable& t) {
  ordered_json j;
  j["command"] = "tables";
  j["weights"] = t.family.ws.w;
  ordered_json defs = ordered_json::object();
  for (const auto& d : t.family.deformations) defs[d.name] = d.e.str();
  j["deformations"] = defs;
  j["class_count"] = t.classes.size();
  j["row_count"] = t.rows.size();
  j["contact"] = t.contact;
  j["identity_holds"] = t.identity_holds();
  ordered_json cols = ordered_json::array();
  for (const auto& c : t.columns)
    cols.push_back({{"name", c.name},
                    {"locus", c.locus},
                    {"total", c.total},
                    {"degree_change", c.change},
                    {"milnor_total", c.milnor}});
  j["columns"] = cols;
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json row;
    row["representative"] = r.representative.str();
    row["multiplicity"] = r.multiplicity;
    for (std::size_t k = 0; k < t.columns.size(); ++k) row[t.columns[k].name] = r.degrees[k];
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

void render_table(const Options& o, const ordered_json& j) {
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  ordered_json head = j;
  head.erase("columns");
  head.erase("rows");
  render_flat(std::cout, head, "", o.format == "tsv");
  ordered_json rows = j["rows"];
  ordered_json totals;
  totals["representative"] = "total";
  totals["multiplicity"] = j["class_count"];
  ordered_json change = {{"representative", "degree change"}, {"multiplicity", ""}};
  ordered_json milnor = {{"representative", "milnor total"}, {"multiplicity", ""}};
  for (const auto& c : j["columns"]) {
    std::string n = c["name"];
    totals[n] = c["total"];
    change[n] = c["degree_change"];
    milnor[n] = c["milnor_total"];
  }
  rows.push_back(totals);
  rows.push_back(change);
  rows.push_back(milnor);
  if (o.format != "tsv") std::cout << "\n";
  render_flat(std::cout, ordered_json{{"rows", rows}}, "rows", o.format == "tsv");
  if (o.format != "tsv") {
    std::cout << "\n";
    for (const auto& c : j["columns"])
      std::cout << std::left << std::setw(22) << c["name"].get<std::string>() << c["locus"].get<std::string>()
                << "\n";
  }
}

ExponentVector parse_vec(const std::string& s) {
  try {
    return ExponentVector(detail::parse_int_list(s));
  } catch (const std::logic_error&) {
    throw UsageError("expected a comma separated list of integers, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calabi-Yau hypersurface families: classes, discriminants, point counts and zeta degrees"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"human", "json", "tsv"}))
      ->capture_default_str();
  app.add_option("--precision", o.precision, "Gauss-sum precision in bits")->capture_default_str();
  app.add_option("--budget", o.budget, "brute-force iteration cap")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads (default: CYZETA_THREADS or 1)");
  app.add_flag("--quiet", o.quiet, "no progress on stderr");
  app.fallthrough();

  std::string family, weights, beta, at, method = "auto", mode = "arithmetic", column;
  std::string smooth, singular;
  std::vector<std::string> families;
  std::int64_t prime = 0;
  int r = 1, rmax = 4, r0 = 1;
  bool members = false, with_classes = false;

  auto* c_classes = app.add_subcommand("classes", "strong classes of M and their predicted degrees");
  c_classes->add_option("--weights", weights, "weights, e.g. 1,1,2,2,2");
  c_classes->add_option("--beta", beta, "deformation exponent (default all ones)");
  c_classes->add_option("--family", family, "family file (uses its first deformation)");
  c_classes->add_flag("--members", members, "list class members");

  auto* c_disc = app.add_subcommand("discriminant", "discriminant components of a family");
  c_disc->add_option("--family", family, "family file")->required();

  auto* c_sing = app.add_subcommand("singularities", "singular fibres, local types and Milnor numbers");
  c_sing->add_option("--family", family, "family file")->required();
  c_sing->add_option("--at,--point", at, "parameter point: a=..,b=.. or a point name");

  auto* c_count = app.add_subcommand("count", "points over F_{p^r}");
  c_count->add_option("--family", family, "family file")->required();
  c_count->add_option("--at,--point", at, "parameter point")->required();
  c_count->add_option("--p", prime, "prime")->required();
  c_count->add_option("--r", r, "extension degree")->capture_default_str();
  c_count->add_option("--method", method, "auto, brute or charsum")->capture_default_str();

  auto* c_zeta = app.add_subcommand("zeta", "fit the zeta function from counts over F_{p^r}, r <= rmax");
  c_zeta->add_option("--family", family, "family file")->required();
  c_zeta->add_option("--at,--point", at, "parameter point")->required();
  c_zeta->add_option("--p", prime, "prime")->required();
  c_zeta->add_option("--rmax", rmax, "number of extension degrees")->capture_default_str();
  c_zeta->add_option("--method", method, "auto, brute or charsum")->capture_default_str();
  c_zeta->add_flag("--classes", with_classes, "also fit per-class factors (needs p^r0 = 1 mod d)");
  c_zeta->add_option("--r0", r0, "class factors over F_{p^(r0 k)}")->capture_default_str();

  auto* c_verify = app.add_subcommand("verify", "degree change versus total Milnor number");
  c_verify->add_option("--family", family, "family file")->required();
  c_verify->add_option("--mode", mode, "arithmetic or combinatorial")
      ->check(CLI::IsMember({"arithmetic", "combinatorial"}))
      ->capture_default_str();
  c_verify->add_option("--p", prime, "prime (arithmetic mode)");
  c_verify->add_option("--rmax", rmax, "number of extension degrees (arithmetic mode)")->capture_default_str();
  c_verify->add_option("--smooth", smooth, "smooth reference point (arithmetic mode)");
  c_verify->add_option("--singular", singular, "singular point (arithmetic mode)");
  c_verify->add_option("--column", column, "table column (combinatorial mode)");
  c_verify->add_option("--method", method, "auto, brute or charsum")->capture_default_str();
  c_verify->add_flag("--classes", with_classes, "per-class degrees as well (small q only)");

  auto* c_tables = app.add_subcommand("tables", "predicted zeta degrees over the discriminant strata");
  c_tables->add_option("--family", families, "family file(s)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto load = [&](const std::string& path) { return load_family(path); };
    if (*c_classes) {
      ordered_json j;
      if (!family.empty()) {
        auto ff = load(family);
        j = classes_json(ff.family.ws, ff.family.deformations[0].e, members);
      } else {
        if (weights.empty()) throw UsageError("classes needs --weights or --family");
        auto ws = validate_weights(parse_vec(weights).e);
        ExponentVector b = beta.empty() ? ExponentVector(std::vector<int>(ws.n(), 1)) : parse_vec(beta);
        j = classes_json(ws, b, members);
      }
      emit(o, j, "classes");
    } else if (*c_disc) {
      emit(o, discriminant_json(load(family)), "components");
    } else if (*c_sing) {
      emit(o, singularities_json(load(family), at), "components");
    } else if (*c_count) {
      auto ff = load(family);
      emit(o, count_json(ff, resolve_point(ff, at), prime, r, o, method), "");
    } else if (*c_zeta) {
      auto ff = load(family);
      if (rmax < 1) throw UsageError("--rmax must be at least 1");
      auto j = zeta_json(ff, resolve_point(ff, at), prime, rmax, with_classes, r0, o, method);
      emit(o, j, with_classes ? "classes" : "counts");
    } else if (*c_verify) {
      auto ff = load(family);
      DegreeReport rep;
      if (mode == "combinatorial") {
        if (column.empty()) throw UsageError("combinatorial mode needs --column");
        DegreeTable t = ff.family.deformations.size() == 1 ? degree_table(ff.family) : degree_table(two_param(ff));
        rep = verify_combinatorial(t, column);
      } else {
        if (prime == 0 || smooth.empty() || singular.empty())
          throw UsageError("arithmetic mode needs --p, --smooth and --singular");
        if (rmax < 1) throw UsageError("--rmax must be at least 1");
        auto ps = resolve_point(ff, smooth), pn = resolve_point(ff, singular);
        bool s_bad = false, n_bad = false;
        milnor_at(ff, ps, prime, s_bad);
        std::int64_t mu = milnor_at(ff, pn, prime, n_bad);
        if (s_bad)
          throw DomainError("verify.smooth", "smooth point " + point_str(ps) + " lies on the discriminant modulo " +
                                                 std::to_string(prime) + "; choose another smooth point");
        if (!n_bad || mu == 0)
          throw DomainError("verify.singular", "point " + point_str(pn) + " is not on the discriminant modulo " +
                                                   std::to_string(prime));
        auto z = zeta_options(o, method);
        rep = verify_arithmetic(ff.family, ps, pn, prime, rmax, mu, z);
        bool ok = rep.verdict != "INCONCLUSIVE";
        if (with_classes && ok) {
          progress(o, "per-class factors");
          add_class_degrees(rep, ff.family, ps, pn, prime, rmax, z.bits, z.threads);
        }
      }
      emit(o, report_json(rep), "classes");
    } else if (*c_tables) {
      bool first = true;
      ordered_json all = ordered_json::array();
      for (const auto& path : families) {
        auto ff = load(path);
        DegreeTable t = ff.family.deformations.size() == 1 ? degree_table(ff.family) : degree_table(two_param(ff));
        auto j = table_json(t);
        j["family"] = path;
        if (o.format == "json") {
          all.push_back(j);
          continue;
        }
        if (!first) std::cout << "\n";
        first = false;
        render_table(o, j);
      }
      if (o.format == "json") std::cout << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const FamilyFileError& e) {
    std::cerr << "family file error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
