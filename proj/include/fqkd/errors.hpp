#pragma once

#include <stdexcept>

namespace fqkd {

/// File could not be opened, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqkd
