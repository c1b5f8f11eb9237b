#pragma once
#include <string>

#include "qmz/forms.hpp"

namespace qmz {

// Parse a textual form expression over the generators E2, E4, E6, Delta, j
// (plus general even Eisenstein series Ek), with +, -, *, integer powers ^n,
// rational scalar literals p/q, the operators D(...) and theta(...), and the
// named presets gap:k, extremal:k, Ek':k. The result is a homogeneous-weight
// quasimodular form; j-expressions must clear their pole at q = 0.
// order < 0 picks a truncation order from the expression's weight.
QuasiModularForm parse_form(const std::string& text, int order = -1);

}  // namespace qmz
