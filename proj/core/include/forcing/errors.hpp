#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace forcing {

enum class Errc {
  parse,
  ring_mismatch,
  division_by_zero,
  inexact_division,
  invalid_argument,
  resource_limit,
  unsupported_range,
  unsupported_closure,
  unsupported_base,
  validation,
  io,
};

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Single exception type for the whole library; the code distinguishes
/// recoverable user errors (parse, validation) from unsupported-input
/// conditions that the CLI maps to their own exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<SourcePos> pos = std::nullopt);

  Errc code() const noexcept { return code_; }
  const std::optional<SourcePos>& pos() const noexcept { return pos_; }

 private:
  Errc code_;
  std::optional<SourcePos> pos_;
};

[[noreturn]] void fail(Errc code, const std::string& message,
                       std::optional<SourcePos> pos = std::nullopt);

}  // namespace forcing
