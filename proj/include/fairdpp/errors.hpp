#pragma once

#include <stdexcept>
#include <string>

namespace fairdpp {

/// Inputs that make a sampler or exact computation collapse (all working
/// norms vanish, zero fair mass, rank deficiency). CLI exit code 4.
struct DegenerateInstanceError : std::runtime_error {
  explicit DegenerateInstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user configuration: bad quotas, unknown sampler, infeasible
/// experiment settings. CLI exit code 2.
struct ConfigurationError : std::runtime_error {
  explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unusable input data. CLI exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Refusal to enumerate a fair family larger than the configured cap.
struct EnumerationCapError : ConfigurationError {
  EnumerationCapError(std::uint64_t size, std::uint64_t cap)
      : ConfigurationError("fair family of size " + std::to_string(size) +
                           " exceeds the enumeration cap " + std::to_string(cap)),
        familySize(size), enumerationCap(cap) {}
  std::uint64_t familySize;
  std::uint64_t enumerationCap;
};

}  // namespace fairdpp
