#include <iomanip>
#include <iostream>

#include "cyzeta/tables.hpp"

using namespace cyzeta;

int main() {
  auto ws = validate_weights({1, 1, 1, 1, 1});
  ExponentVector beta(std::vector<int>{1, 1, 1, 1, 1});
  auto fam = make_family(ws, {{"a", beta}});
  auto table = degree_table(fam);
  std::cout << "quintic: " << table.classes.size() << " classes, " << table.rows.size()
            << " up to permutation\n\n";
  std::cout << std::left << std::setw(16) << "representative" << std::setw(9) << "classes" << std::setw(8) << "smooth"
            << "singular\n";
  for (const auto& r : table.rows)
    std::cout << std::setw(16) << r.representative.str() << std::setw(9) << r.multiplicity << std::setw(8)
              << r.degrees[0] << r.degrees[1] << "\n";
  const auto& sing = table.columns[1];
  std::cout << "\nsmooth degree " << table.columns[0].total << ", singular " << sing.total << ": drop "
            << sing.change << " against " << sing.milnor << " (" << sing.locus << ")\n";

  auto rep = one_param_report(ws, beta);
  std::cout << rep.count << " singular points of type " << rep.type_label << " on " << rep.component.str()
            << " = 0\n";
}
