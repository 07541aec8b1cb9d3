// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace apwcert {

// Base for all library errors. `name()` is the stable identity the CLI
// reports next to exit code 2.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

#define APWCERT_DEFINE_ERROR(E)                                  \
  class E : public Error {                                       \
  public:                                                        \
    explicit E(const std::string& what) : Error(#E, what) {}     \
  }

APWCERT_DEFINE_ERROR(DomainError);
APWCERT_DEFINE_ERROR(NodeAtBoundary);
APWCERT_DEFINE_ERROR(NoBracket);
APWCERT_DEFINE_ERROR(RadialNodeAtR);
APWCERT_DEFINE_ERROR(OutOfCell);
APWCERT_DEFINE_ERROR(IncompatibleBasis);
APWCERT_DEFINE_ERROR(QuadratureBudgetExceeded);
APWCERT_DEFINE_ERROR(SingularOverlap);
APWCERT_DEFINE_ERROR(InvalidReciprocal);
APWCERT_DEFINE_ERROR(GeometryUnsupported);
APWCERT_DEFINE_ERROR(GeometryInvalid);
APWCERT_DEFINE_ERROR(NotPositiveDefinite);
APWCERT_DEFINE_ERROR(NoRealSolution);
APWCERT_DEFINE_ERROR(ReferenceUnavailable);
APWCERT_DEFINE_ERROR(ConfigError);

#undef APWCERT_DEFINE_ERROR

} // namespace apwcert
