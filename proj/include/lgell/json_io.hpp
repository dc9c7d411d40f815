#pragma once

// JSON views of series, groups, potentials and verdicts.

#include "lgell/genus.hpp"
#include "lgell/verify.hpp"

#include "json.hpp"

namespace lgell {

using json = nlohmann::ordered_json;

/// {"D", "qmax", "ywindow", "terms": [{"q", "y", "re"}]}; throws NotRationalError
/// unless every coefficient is rational.
json series_to_json(const BiSeries& s);

/// Series JSON plus {"cbar", "group", "potential"} and the window certificate.
json genus_to_json(const GenusSeries& g);

json group_to_json(const SymmetryGroup& g);

/// d, A, atoms, charges, k, cbar, |Aut|, J, |SL| (the last three only when Calabi-Yau).
json info_to_json(const Potential& p);

json verdict_to_json(const Verdict& v);

} // namespace lgell
