#pragma once

// Internal helpers shared by the library sources. Not part of the public API.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "currimap/errors.hpp"

namespace currimap::detail {

// --- UTF-8 ---------------------------------------------------------------

// Decodes one codepoint starting at `pos`; advances `pos` past it. Invalid
// sequences decode to U+FFFD one byte at a time.
char32_t decode_utf8(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// --- CSV (RFC 4180 flavor) ------------------------------------------------

// Splits into records of fields, honoring quoted fields (with embedded
// commas, quotes, and newlines). Accepts both \n and \r\n record breaks.
// A trailing newline does not produce an empty record.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Quotes the field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// --- numbers --------------------------------------------------------------

// Shortest round-trip decimal form, byte-stable across runs.
std::string format_double(double value);

// --- files ----------------------------------------------------------------

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// --- hashing ---------------------------------------------------------------

// FNV-1a 64-bit as a lowercase hex string; used for content fingerprints.
std::string fnv1a64_hex(std::string_view bytes);

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace currimap::detail
