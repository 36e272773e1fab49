#ifndef SLBGK_IO_HPP_
#define SLBGK_IO_HPP_

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "slbgk/kinetics.hpp"

namespace slbgk {

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// Comma-separated file with a header row and LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::string &path, std::vector<std::string> header);

  void row(const std::vector<std::string> &cells);
  void row(std::initializer_list<double> values);

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
};

/// Macroscopic profile sampled at the spatial nodes.
struct MacroProfile {
  std::vector<double> x, rho, u, T, E;
};

MacroProfile macro_profile(const DistributionField<double> &f);

/// Columns x,rho,u,T,E.
void write_profile_csv(const std::string &path, const MacroProfile &profile);

}  // namespace slbgk

#endif  // SLBGK_IO_HPP_
