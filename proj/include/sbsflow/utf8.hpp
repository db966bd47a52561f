#pragma once

#include <string>
#include <string_view>

namespace sbsflow::utf8 {

/// Decodes UTF-8; malformed bytes decode to U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

/// Latin letters: ASCII, Latin-1 Supplement and Latin Extended-A/B.
bool is_letter(char32_t c) noexcept;
char32_t to_lower(char32_t c) noexcept;

}  // namespace sbsflow::utf8
