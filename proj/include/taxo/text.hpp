#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace taxo {

// Simple case folding of UTF-8 text. Covers ASCII, Latin-1, Latin
// Extended-A, Greek and Cyrillic. Diacritics are preserved.
std::string case_fold(std::string_view utf8);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace taxo
