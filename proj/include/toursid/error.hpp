#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace toursid {

// All domain failures are reported as Error. kind() is a stable identifier
// (e.g. "InvalidCharacter", "CapExceeded") that the CLI emits verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message,
        std::optional<long long> detail = std::nullopt)
      : std::runtime_error(message), kind_(std::move(kind)), detail_(detail) {}

  const std::string& kind() const noexcept { return kind_; }

  // Optional integer payload, e.g. the offending position for InvalidCharacter.
  std::optional<long long> detail() const noexcept { return detail_; }

 private:
  std::string kind_;
  std::optional<long long> detail_;
};

}  // namespace toursid
