#ifndef SZPIRO_ERRORS_HPP
#define SZPIRO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace szpiro {

// Bad input: precondition or type invariant violated by the caller.
// CLI maps this to exit status 1.
class domain_error : public std::runtime_error {
  public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Structured record rejected during ingestion/validation, with the failed
// condition spelled out.  Also exit status 1.
class validation_error : public domain_error {
  public:
    explicit validation_error(const std::string& what) : domain_error(what) {}
};

// A numeric routine could not meet its declared error budget, or an
// internally asserted inequality failed.  CLI maps this to exit status 2.
class accuracy_error : public std::runtime_error {
  public:
    accuracy_error(const std::string& what, double achieved_bound)
        : std::runtime_error(what), achieved(achieved_bound) {}
    double achieved;
};

}  // namespace szpiro

#endif
