// Copyright 2026 The QForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFORGE_SRC_TEXT_UTIL_H_
#define QFORGE_SRC_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

// Byte-level helpers. Everything here is ASCII-only on purpose so results do
// not depend on the process locale.
namespace qforge::text {

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool IsDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsAsciiAlnum(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'z') || IsUpper(c);
}
// Bytes >= 0x80 belong to multi-byte UTF-8 sequences and are kept inside words.
inline bool IsWordByte(char c) {
  return IsAsciiAlnum(c) || static_cast<unsigned char>(c) >= 0x80;
}
inline char ToLower(char c) { return IsUpper(c) ? static_cast<char>(c + 32) : c; }

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);

// Maximal runs of non-whitespace.
std::vector<std::string_view> SplitWhitespace(std::string_view s);
size_t CountWords(std::string_view s);

// Lowercase, collapse whitespace runs to one space, trim.
std::string NormalizeSpace(std::string_view s);

bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace qforge::text

#endif  // QFORGE_SRC_TEXT_UTIL_H_
