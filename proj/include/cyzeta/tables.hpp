#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cyzeta/singularities.hpp"
#include "cyzeta/weights.hpp"
#include "cyzeta/zeta.hpp"

namespace cyzeta {

// Sub-orbits of a class under adding e that keep every entry with e_i = 0 away from d/w_i - 1.
inline int class_drop(const BetaClass& c, const ExponentVector& e, const WeightSystem& ws) {
  std::vector<ExponentVector> seen;
  int drop = 0;
  for (const auto& v : c.members) {
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    for (const auto& x : orbit(v, e, ws)) seen.push_back(x);
    bool avoids = true;
    for (int i = 0; i < ws.n(); ++i)
      if (e[i] == 0 && v[i] == ws.alpha(i) - 1) avoids = false;
    if (avoids) ++drop;
  }
  return drop;
}

struct TableColumn {
  std::string name;
  std::string locus;
  std::int64_t milnor = 0;  // total Milnor number of a fibre in this column
  std::vector<int> degrees;  // per class
  std::int64_t total = 0;
  std::int64_t change = 0;
  bool identity() const { return change == milnor; }
};

struct TableRow {
  ExponentVector representative;
  int multiplicity = 1;
  std::vector<int> degrees;  // per column
};

struct DegreeTable {
  FamilySpec family;
  std::vector<BetaClass> classes;
  std::vector<TableColumn> columns;
  std::vector<TableRow> rows;
  int contact = 0;

  const TableColumn& column(const std::string& name) const {
    for (const auto& c : columns)
      if (c.name == name) return c;
    throw DomainError("tables.column", "no column named " + name);
  }
  bool identity_holds() const {
    return std::all_of(columns.begin(), columns.end(), [](const TableColumn& c) { return c.identity(); });
  }
};

namespace detail {

inline void finish_table(DegreeTable& t, const std::vector<ExponentVector>& fixed) {
  // columns with identical data are one column
  std::vector<TableColumn> cols;
  for (auto& c : t.columns) {
    auto same = std::find_if(cols.begin(), cols.end(), [&](const TableColumn& x) {
      return x.degrees == c.degrees && x.milnor == c.milnor;
    });
    if (same == cols.end()) {
      cols.push_back(std::move(c));
    } else {
      same->name += " = " + c.name;
      same->locus += "; " + c.locus;
    }
  }
  t.columns = std::move(cols);
  for (auto& c : t.columns) {
    c.total = 0;
    for (int x : c.degrees) c.total += x;
  }
  for (auto& c : t.columns) c.change = t.columns.front().total - c.total;

  const auto& ws = t.family.ws;
  auto orbits = class_orbits(ws, t.classes, weight_symmetries(ws, fixed));
  for (const auto& o : orbits) {
    TableRow r;
    r.representative = t.classes[o.canonical].representative;
    r.multiplicity = o.multiplicity();
    for (const auto& c : t.columns) {
      for (int k : o.classes)
        if (c.degrees[k] != c.degrees[o.canonical])
          throw std::logic_error("permutation-equivalent classes with different degrees");
      r.degrees.push_back(c.degrees[o.canonical]);
    }
    t.rows.push_back(std::move(r));
  }
}

}  // namespace detail

// Smooth and singular-fibre degrees of a one-parameter family.
inline DegreeTable degree_table(const FamilySpec& fam) {
  if (fam.deformations.size() != 1)
    throw DomainError("tables.params", "one-parameter table needs exactly one deformation");
  const auto& ws = fam.ws;
  const auto& beta = fam.deformations[0].e;
  auto rep = one_param_report(ws, beta, fam.deformations[0].name);
  DegreeTable t;
  t.family = fam;
  t.classes = family_classes(fam);
  TableColumn smooth{"smooth", "generic fibre", 0, {}};
  TableColumn sing{"singular", rep.component.str() + " = 0", rep.milnor_total, {}};
  for (const auto& c : t.classes) {
    smooth.degrees.push_back(c.degree);
    sing.degrees.push_back(c.degree - class_drop(c, beta, ws));
  }
  t.columns = {smooth, sing};
  detail::finish_table(t, {beta});
  return t;
}

// Degree columns of a two-parameter family over the strata of its discriminant.
inline DegreeTable degree_table(const TwoParamAnalysis& an) {
  const auto& fam = an.family;
  const auto& ws = fam.ws;
  const int ia = fam.index_of(an.a), ib = fam.index_of(an.b);
  const auto& ea = fam.deformations[ia].e;
  const auto& eb = fam.deformations[ib].e;
  DegreeTable t;
  t.family = fam;
  t.classes = family_classes(fam);
  t.contact = an.contact;
  const std::string lines = an.lines.str() + " = 0";
  const std::string curve = an.curve.str() + " = 0";
  TableColumn smooth{"smooth", "off the discriminant", 0, {}};
  TableColumn C{"C", curve, an.curve_milnor(), {}};
  TableColumn L{"L", lines, an.line_milnor(), {}};
  TableColumn LC{"L.C", "transversal points of L and C", an.line_milnor() + an.curve_milnor(), {}};
  TableColumn M{"L.a0", lines + ", " + an.a + " = 0", an.merged.milnor_total, {}};
  std::vector<TableColumn> strata;
  for (std::size_t k = 0; k < an.curve_singular.size(); ++k) {
    const auto& s = an.curve_singular[k];
    strata.push_back({"Csing" + std::to_string(k + 1), s.locus, s.count * s.milnor_each, {}});
  }
  for (const auto& c : t.classes) {
    int s0 = c.degree, da = class_drop(c, ea, ws), db = class_drop(c, eb, ws);
    int l = db - an.contact * da;
    smooth.degrees.push_back(s0);
    C.degrees.push_back(s0 - da);
    L.degrees.push_back(s0 - l);
    LC.degrees.push_back(s0 - l - da);
    M.degrees.push_back(s0 - db);
    for (auto& s : strata) s.degrees.push_back(s0 - 2 * da);
  }
  t.columns = {smooth, C, L, LC};
  for (auto& s : strata) t.columns.push_back(std::move(s));
  t.columns.push_back(M);
  detail::finish_table(t, {ea, eb});
  return t;
}

// Degree change of a table column against its total Milnor number.
inline DegreeReport verify_combinatorial(const DegreeTable& t, const std::string& column) {
  const auto& c = t.column(column);
  const auto& s = t.columns.front();
  DegreeReport r;
  r.mode = "combinatorial";
  r.smooth_degree = static_cast<int>(s.total);
  r.singular_degree = static_cast<int>(c.total);
  r.change = static_cast<int>(c.change);
  r.milnor_total = c.milnor;
  for (const auto& row : t.rows) {
    std::size_t k = &c - t.columns.data();
    r.classes.push_back({row.representative.str(), row.multiplicity, row.degrees.front(), row.degrees[k]});
  }
  r.verdict = verdict_for(true, r.change, r.milnor_total);
  return r;
}

}  // namespace cyzeta
