#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emoarc {

enum class ErrorCategory {
  io,
  format,
  degenerate_arc,
  empty_window,
  invalid_argument,
  internal,
};

std::string_view to_string(ErrorCategory category);

/// Exception carrying a category that the C API maps onto a status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& what) {
  throw Error(category, what);
}

}  // namespace emoarc
