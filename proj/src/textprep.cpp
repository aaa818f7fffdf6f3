#include "emoarc/textprep.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdint>

namespace emoarc {
namespace {

struct CodePoint {
  UChar32 value;  // negative for an invalid sequence
  std::size_t begin;
  std::size_t end;
};

template <typename F>
void for_each_code_point(std::string_view text, F&& f) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    f(CodePoint{c, static_cast<std::size_t>(begin), static_cast<std::size_t>(i)});
  }
}

void append_utf8(std::string& out, UChar32 c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, c, error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

bool is_space(UChar32 c) { return c >= 0 && (u_isUWhiteSpace(c) || c == 0x200B); }

bool is_mark(UChar32 c) {
  if (c < 0) return false;
  const auto t = u_charType(c);
  return t == U_NON_SPACING_MARK || t == U_COMBINING_SPACING_MARK || t == U_ENCLOSING_MARK;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Offset within `chunk` where a URL begins, or npos.
std::size_t url_start(std::string_view chunk) {
  std::size_t best = std::string_view::npos;
  if (const auto p = chunk.find("://"); p != std::string_view::npos) {
    std::size_t s = p;
    while (s > 0) {
      const char c = chunk[s - 1];
      if (!(is_ascii_alnum(c) || c == '+' || c == '-' || c == '.')) break;
      --s;
    }
    if (s < p) best = s;
  }
  for (std::size_t p = chunk.find("www."); p != std::string_view::npos;
       p = chunk.find("www.", p + 1)) {
    if (p == 0 || !is_ascii_alnum(chunk[p - 1])) {
      best = std::min(best, p);
      break;
    }
  }
  return best;
}

void split_chunk(std::string_view chunk, TokenList& out) {
  std::string run;
  bool has_letter = false;
  bool has_digit = false;
  auto flush = [&] {
    if (has_letter && !has_digit) out.push_back(run);
    run.clear();
    has_letter = has_digit = false;
  };
  for_each_code_point(chunk, [&](const CodePoint& cp) {
    const UChar32 c = cp.value;
    if (c >= 0 && u_isdigit(c)) {
      has_digit = true;
      run.append(chunk.substr(cp.begin, cp.end - cp.begin));
    } else if (c >= 0 && u_isalpha(c)) {
      has_letter = true;
      run.append(chunk.substr(cp.begin, cp.end - cp.begin));
    } else if (is_mark(c) && !run.empty()) {
      run.append(chunk.substr(cp.begin, cp.end - cp.begin));
    } else {
      flush();
    }
  });
  flush();
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for_each_code_point(text, [&](const CodePoint& cp) {
    if (cp.value < 0) {
      out.append(text.substr(cp.begin, cp.end - cp.begin));
    } else {
      append_utf8(out, u_tolower(cp.value));
    }
  });
  return out;
}

bool contains_whitespace(std::string_view text) {
  bool found = false;
  for_each_code_point(text, [&](const CodePoint& cp) { found = found || is_space(cp.value); });
  return found;
}

TokenList tokenize(std::string_view text) {
  const std::string lowered = to_lower(text);
  const std::string_view view(lowered);
  TokenList tokens;

  std::size_t chunk_begin = std::string_view::npos;
  auto emit = [&](std::size_t end) {
    if (chunk_begin == std::string_view::npos) return;
    std::string_view chunk = view.substr(chunk_begin, end - chunk_begin);
    if (const auto u = url_start(chunk); u != std::string_view::npos) chunk = chunk.substr(0, u);
    split_chunk(chunk, tokens);
    chunk_begin = std::string_view::npos;
  };
  for_each_code_point(view, [&](const CodePoint& cp) {
    if (is_space(cp.value)) {
      emit(cp.begin);
    } else if (chunk_begin == std::string_view::npos) {
      chunk_begin = cp.begin;
    }
  });
  emit(view.size());
  return tokens;
}

}  // namespace emoarc
