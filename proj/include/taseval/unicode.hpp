#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace taseval {

/// UTF-8 decode; malformed sequences decode to U+FFFD.
std::vector<uint32_t> utf8_decode(const std::string& s);
std::string utf8_encode(const std::vector<uint32_t>& cps);

/// Desk-scale NFC: composes Hangul Jamo sequences algorithmically and kana
/// voicing marks (U+3099/U+309A) by table. Other combining sequences pass
/// through unchanged; real-world manifests are NFC already.
std::vector<uint32_t> normalize_nfc(const std::vector<uint32_t>& cps);

/// True when any code point falls in the Arabic block (right-to-left).
bool is_arabic_text(const std::vector<uint32_t>& cps);

/// Strips Unicode whitespace (ASCII, NBSP, ideographic space).
std::vector<uint32_t> strip_whitespace(const std::vector<uint32_t>& cps);

}  // namespace taseval
