#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fineval {

// ASCII lowercase copy; bytes outside A-Z pass through untouched.
std::string to_lower(std::string_view s);

// Trims ASCII whitespace from both ends.
std::string trim(std::string_view s);

// Lowercases, trims, and collapses internal whitespace runs to single spaces.
// This is the canonical form for finding and attribute names and for all
// case-folded matching the pipeline does.
std::string normalize_label(std::string_view s);

// True when normalize_label(needle) occurs as a substring of
// normalize_label(haystack). Empty needle never matches.
bool contains_normalized(std::string_view haystack, std::string_view needle);

}  // namespace fineval
