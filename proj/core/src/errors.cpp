#include "forcing/errors.hpp"

namespace forcing {
namespace {

std::string format_message(const std::string& message,
                           const std::optional<SourcePos>& pos) {
  if (!pos) return message;
  return std::to_string(pos->line) + ":" + std::to_string(pos->column) + ": " +
         message;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::optional<SourcePos> pos)
    : std::runtime_error(format_message(message, pos)),
      code_(code),
      pos_(pos) {}

void fail(Errc code, const std::string& message, std::optional<SourcePos> pos) {
  throw Error(code, message, pos);
}

}  // namespace forcing
