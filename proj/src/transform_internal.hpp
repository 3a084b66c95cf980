// Unchecked building blocks shared by the transformation entry points.
#pragma once

#include "intuit/transform.hpp"

namespace intuit::detail {

LabelledDerivation rename_label(const LabelledDerivation& d, const std::string& to, const std::string& from);
LabelledDerivation rename_param(const LabelledDerivation& d, const std::string& to, const std::string& from);
LabelledDerivation weaken(const LabelledDerivation& d, const LabelledSequent& extra);
LabelledDerivation invert(const LabelledDerivation& d, Rule rule, Witness wit, int premise);
LabelledDerivation contract(const LabelledDerivation& d, Rule kind, const Witness& dup);

/// The calculus every input is checked against.
const Calculus& universal_calculus();

/// Fills the height and rule-count fields of a report.
void account(TransformReport& r, const LabelledDerivation& in, const LabelledDerivation& out);

[[noreturn]] void breach(const std::string& what);

}  // namespace intuit::detail
