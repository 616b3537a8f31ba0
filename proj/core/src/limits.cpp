#include "forcing/limits.hpp"

#include <cstdlib>
#include <string>

namespace forcing {
namespace {

unsigned long env_value(const char* name, unsigned long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  unsigned long value = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) return fallback;
  return value;
}

}  // namespace

Limits Limits::from_env() {
  Limits limits;
  limits.max_degree =
      static_cast<unsigned>(env_value("FORCING_MAX_DEGREE", limits.max_degree));
  limits.max_steps = env_value("FORCING_MAX_STEPS", limits.max_steps);
  limits.max_factor_degree = static_cast<unsigned>(
      env_value("FORCING_MAX_FACTOR_DEGREE", limits.max_factor_degree));
  limits.max_multivar_degree = static_cast<unsigned>(
      env_value("FORCING_MAX_MULTIVAR_DEGREE", limits.max_multivar_degree));
  return limits;
}

}  // namespace forcing
