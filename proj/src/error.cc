#include "multibpe/error.hpp"

namespace multibpe {

int exit_code(const Error& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return 2;
  if (dynamic_cast<const InvariantError*>(&error)) return 4;
  return 3;
}

}  // namespace multibpe
