#ifndef HALFINV_IO_HPP
#define HALFINV_IO_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfinv/asymptotics.hpp"
#include "halfinv/grid_function.hpp"
#include "halfinv/pipeline.hpp"

namespace halfinv::io {

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (q, h, H) with q sampled on a uniform grid over (a, b).
///   {"a": 0, "b": 6.283185307179586, "samples": [...], "h": 0.5, "H": -0.3}
struct PotentialFile {
  GridFunction q;
  double h = 0.0;
  double H = 0.0;
};

/// Mixed data: q on the right half, H and the spectrum (signed roots).
///   {"a": pi, "b": 2 pi, "samples": [...], "H": ..., "spectrum": [...]}
/// `omega` is optional ground truth written by the synthesizer.
struct MixedDataFile {
  MixedData data;
  std::optional<double> omega;
};

PotentialFile read_potential(std::istream& in);
void write_potential(std::ostream& out, const PotentialFile& p);

MixedDataFile read_mixed_data(std::istream& in);
void write_mixed_data(std::ostream& out, const MixedDataFile& m);

/// Recovered potential as a potential-style document (no "H") plus
/// a "diagnostics" object.
void write_report(std::ostream& out, const SolveReport& r);
/// q_left and h of a report; diagnostics are ignored.
Reconstruction read_report(std::istream& in);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// n, rho_n, lambda_n, kappa_n, omega.
void write_spectrum_csv(std::ostream& out, const std::vector<double>& rhos,
                        const SpectrumDecomposition& d);

/// trial, ok, d, truth_distance, recon_distance, cauchy_distance, ratio, failure.
void write_sweep_csv(std::ostream& out, const SweepResult& r);

}  // namespace halfinv::io

#endif  // HALFINV_IO_HPP
