#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigged {

/// Broad failure classes; the CLI maps these onto process exit codes.
enum class ErrorCategory {
  kConfig,     ///< malformed input or configuration (exit 2)
  kNumerical,  ///< quadrature, root finding, fitting (exit 3)
  kDomain,     ///< semigroup time-domain violation (exit 4)
};

/// Base class of every error thrown by the library.
///
/// `what()` is prefixed with the originating module, e.g.
/// "[friedrichs] NoPoleFound: Newton failed from all seeds".
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string_view module, std::string_view kind,
        const std::string& detail)
      : std::runtime_error("[" + std::string(module) + "] " + std::string(kind) + ": " + detail),
        category_(category),
        module_(module),
        kind_(kind) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string module_;
  std::string kind_;
};

#define RIGGED_DEFINE_ERROR(Name, Category, Module)                 \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& detail)                        \
        : Error(ErrorCategory::Category, Module, #Name, detail) {}  \
  }

RIGGED_DEFINE_ERROR(InvalidArgument, kConfig, "core");
RIGGED_DEFINE_ERROR(QuadratureFailure, kNumerical, "quadrature");

RIGGED_DEFINE_ERROR(BranchCutEvaluation, kNumerical, "friedrichs");
RIGGED_DEFINE_ERROR(NoPoleFound, kNumerical, "friedrichs");
RIGGED_DEFINE_ERROR(MultiplePoles, kNumerical, "friedrichs");
RIGGED_DEFINE_ERROR(BoundStatePresent, kNumerical, "friedrichs");

RIGGED_DEFINE_ERROR(InvalidGrid, kConfig, "wavefunction");

RIGGED_DEFINE_ERROR(NotNormalized, kNumerical, "spectral");
RIGGED_DEFINE_ERROR(NegativeTime, kDomain, "spectral");
RIGGED_DEFINE_ERROR(ContinuationFailure, kNumerical, "spectral");
RIGGED_DEFINE_ERROR(InsufficientSampling, kNumerical, "spectral");

RIGGED_DEFINE_ERROR(TimeOutsideSemigroupDomain, kDomain, "semigroup");

RIGGED_DEFINE_ERROR(AliasRisk, kNumerical, "hardy");

RIGGED_DEFINE_ERROR(Inconclusive, kNumerical, "nelson");
RIGGED_DEFINE_ERROR(PairingDiverges, kNumerical, "nelson");

RIGGED_DEFINE_ERROR(DiagonalizationFailure, kNumerical, "oracle");
RIGGED_DEFINE_ERROR(PoorFit, kNumerical, "oracle");

#undef RIGGED_DEFINE_ERROR

}  // namespace rigged
