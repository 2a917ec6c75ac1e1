#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fineval {

enum class Unit { mm, cm, m, unitless, hounsfield };

// A parsed measurement. `magnitude` is in the stated unit; lengths
// canonicalize to millimeters for comparison.
struct QuantityValue {
  double magnitude = 0.0;
  Unit unit = Unit::unitless;
  std::string raw;

  // Magnitude expressed in mm for length units; identity otherwise.
  double canonical() const;
};

// Parses strings like "12 mm", "1,3 cm", "about 14 millimeters", "-50 HU",
// "10-12 mm" (ranges resolve to the midpoint and are logged). Returns nullopt
// when the text is not a plain quantity: any unrecognized word, more than one
// number outside the range form, or more than one unit makes it non-numeric.
std::optional<QuantityValue> parse_quantity(std::string_view text);

// The deterministic three-band rubric for quantity-vs-quantity comparison.
// Returns nullopt (NotNumeric) unless both sides parse as quantities.
// Otherwise: relative error |p-g|/|g| below 0.10 scores 1, in [0.10, 0.30)
// scores 0.5, at or above 0.30 scores 0. Length units are converted to mm
// first; a unitless side adopts the other side's unit; mixing a length with
// hounsfield scores 0. A zero-magnitude gold falls back to exact match
// (equal scores 1, anything else 0).
std::optional<double> numeric_compare_oracle(const std::string& gold,
                                             const std::string& predicted);

}  // namespace fineval
