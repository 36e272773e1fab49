#ifndef SLBGK_ERRORS_HPP_
#define SLBGK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace slbgk {

/// Invalid mesh, grid, tableau or experiment parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A macroscopic state that cannot parameterize a Maxwellian (rho <= 0 or
/// T <= 0). `node` is the flattened spatial node index p*(k+1)+i, `stage` the
/// DIRK stage (-1 outside a time step).
class PhysicalStateError : public std::runtime_error {
 public:
  PhysicalStateError(const std::string &what, long node, double rho,
                     double temperature, int stage = -1)
      : std::runtime_error(what), node_(node), rho_(rho),
        temperature_(temperature), stage_(stage) {}

  long node() const { return node_; }
  double rho() const { return rho_; }
  double temperature() const { return temperature_; }
  int stage() const { return stage_; }

  PhysicalStateError at_stage(int stage) const {
    return PhysicalStateError(std::string(what()) + " (stage " +
                                  std::to_string(stage) + ")",
                              node_, rho_, temperature_, stage);
  }

 private:
  long node_;
  double rho_;
  double temperature_;
  int stage_;
};

/// NaN or Inf found in a distribution field.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact Riemann problem generates vacuum.
class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slbgk

#endif  // SLBGK_ERRORS_HPP_
