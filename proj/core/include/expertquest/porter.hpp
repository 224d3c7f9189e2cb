#pragma once

#include <string>
#include <string_view>

namespace expertquest::textpipe {

/// Porter (1980) suffix-stripping stemmer, original rule set.
///
/// Expects a lowercase word. Words of one or two characters are returned
/// unchanged, as in the reference implementation. Characters outside a-z
/// are treated as consonants.
std::string porter_stem(std::string_view word);

}  // namespace expertquest::textpipe
