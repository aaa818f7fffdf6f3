#include "emoarc/error.hpp"

#include <fstream>
#include <sstream>

#include "detail/strings.hpp"

namespace emoarc {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::io: return "io";
    case ErrorCategory::format: return "format";
    case ErrorCategory::degenerate_arc: return "degenerate_arc";
    case ErrorCategory::empty_window: return "empty_window";
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::internal: return "internal";
  }
  return "internal";
}

namespace detail {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCategory::io, "read failed for '" + path + "'");
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCategory::io, "write failed for '" + path + "'");
}

}  // namespace detail
}  // namespace emoarc
