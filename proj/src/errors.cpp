#include "orthoflow/errors.hpp"

namespace orthoflow {

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ValidationError*>(&e) != nullptr) return 2;
  return 3;
}

}  // namespace orthoflow
