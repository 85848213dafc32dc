#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tlcs {

/// A key or column outside the structure's universe.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A request whose memory footprint exceeds what we are willing to allocate.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trace storage for reconstruction needs more entries than the configured cap.
/// Carries the measured match count so the caller can fall back to a length-only run.
class MemoryCapExceeded : public ResourceError {
 public:
  MemoryCapExceeded(std::uint64_t matches, std::uint64_t cap)
      : ResourceError("match count " + std::to_string(matches) + " exceeds memory cap " +
                      std::to_string(cap)),
        matches_(matches),
        cap_(cap) {}

  std::uint64_t matches() const noexcept { return matches_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t matches_;
  std::uint64_t cap_;
};

}  // namespace tlcs
