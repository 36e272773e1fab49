#include "slbgk/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace slbgk {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

CsvWriter::CsvWriter(const std::string &path, std::vector<std::string> header)
    : out_(path, std::ios::binary), path_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string> &cells) {
  if (cells.size() != columns_) throw std::logic_error(path_ + ": wrong number of CSV columns");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw std::runtime_error("write failed: " + path_);
}

void CsvWriter::row(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

MacroProfile macro_profile(const DistributionField<double> &f) {
  const MacroFields<double> U = moments(f);
  const Vector<double> u = U.velocity();
  const Vector<double> T = U.temperature();
  const Mesh1D<double> &mesh = f.mesh();
  MacroProfile out;
  for (int p = 0; p < mesh.nx(); ++p)
    for (int i = 0; i < mesh.nodes_per_cell(); ++i) {
      const long n = static_cast<long>(p) * mesh.nodes_per_cell() + i;
      out.x.push_back(mesh.node(p, i));
      out.rho.push_back(U.rho()(n));
      out.u.push_back(u(n));
      out.T.push_back(T(n));
      out.E.push_back(U.energy()(n));
    }
  return out;
}

void write_profile_csv(const std::string &path, const MacroProfile &profile) {
  CsvWriter csv(path, {"x", "rho", "u", "T", "E"});
  for (std::size_t i = 0; i < profile.x.size(); ++i)
    csv.row({profile.x[i], profile.rho[i], profile.u[i], profile.T[i], profile.E[i]});
}

}  // namespace slbgk
