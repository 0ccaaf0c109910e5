#ifndef PATHINT_ERRORS_HPP
#define PATHINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pathint {

// Error taxonomy shared by the C++ core and the C API status codes.
enum class ErrorCode {
  Domain = 1,        // invalid parameter value (non-finite, out of range)
  Structural = 2,    // mismatched shapes (path vs lattice, source vs lattice)
  Capacity = 3,      // combinatorial guard exceeded
  Config = 4,        // required configuration missing (e.g. R unset)
  Precondition = 5,  // stated precondition violated (e.g. beta*omega guard)
  Unsupported = 6,   // operation not defined for these inputs (signature, dimension)
  Caustic = 7,       // real-time HO at sin(omega*T) = 0
  Grid = 8,          // spectral grid too small (boundary decay failure)
  Convergence = 9,   // iterative scheme failed to reach tolerance
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};
struct StructuralError : Error {
  explicit StructuralError(const std::string& w) : Error(ErrorCode::Structural, w) {}
};
struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error(ErrorCode::Capacity, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(ErrorCode::Precondition, w) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& w) : Error(ErrorCode::Unsupported, w) {}
};
struct CausticError : Error {
  explicit CausticError(const std::string& w) : Error(ErrorCode::Caustic, w) {}
};
struct GridError : Error {
  explicit GridError(const std::string& w) : Error(ErrorCode::Grid, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorCode::Convergence, w) {}
};

}  // namespace pathint

#endif
