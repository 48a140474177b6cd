#pragma once

#include <string>

namespace eigenbranch {

// Locale-independent scientific formatting with 12 digits after the point.
std::string format_sci(double v);

// Value rounded to the precision `format_sci` prints; used for JSON output so
// that reruns produce byte-identical documents.
double round_sci(double v);

}  // namespace eigenbranch
