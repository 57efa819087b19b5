#pragma once

#include <stdexcept>
#include <string>

namespace pumbo {

// Thrown for invalid user-supplied configuration (bad flags, bad sizes).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for malformed or inconsistent input data (CSV parse, conflicting
// duplicates, dimension mismatch).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kernel matrix could not be factorized even at the maximum jitter level.
struct IllConditionedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every BO trial for a subdomain failed (ill-conditioned or degenerate split).
struct SubdomainSearchFailed : std::runtime_error {
  SubdomainSearchFailed(std::size_t subdomain, const std::string& what)
      : std::runtime_error(what), subdomain_index(subdomain) {}
  std::size_t subdomain_index;
};

}  // namespace pumbo
