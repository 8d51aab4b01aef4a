#pragma once

// Two textbook decay calculations recomputed on the true scattering spectrum:
// a decaying scattered wavefront in retarded time, and the first-order field
// correlation of a decaying atom seen at distance delta_r. Each is evaluated
// exactly (half-line) and in the whole-line (Weisskopf-Wigner) form.

#include <vector>

#include "resdecay/amplitudes.hpp"

namespace resdecay {

/// Retarded times tau, strictly increasing, finite and nonzero. Unlike
/// TimeGrid, negative samples are allowed.
class RetardedGrid {
 public:
  static RetardedGrid make(double start, double stop, std::size_t points);
  static RetardedGrid from_samples(std::vector<double> samples);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  explicit RetardedGrid(std::vector<double> s) : samples_(std::move(s)) {}
  std::vector<double> samples_;
};

enum class CaseMode { exact, wwa };

struct TaylorParams {
  Resonance resonance;
  Complex prefactor{1.0, 0.0};
  RetardedGrid tau_grid;
};

/// exact: prefactor * int_0^inf exp(-i(E - E_R) tau) / (E - z_R) dE.
/// wwa:   prefactor * (-2 pi i) exp(-Gamma tau / 2) theta(tau), exactly zero
///        for tau < 0.
AmplitudeSeries taylor_profile(const TaylorParams& p, CaseMode mode, const QuadratureConfig& cfg);

struct ScullyParams {
  double omega;
  double gamma;
  double delta_r;
  double c = 1.0;
  Complex prefactor{1.0, 0.0};

  void validate() const;
  Complex pole() const { return {omega / c, -0.5 * gamma / c}; }
  double transit_time() const { return delta_r / c; }
};

struct ScullyAmplitude {
  Complex exact;
  Complex wwa;
  double est_error;
  /// The residue of the incoming (exp(-ik delta_r)) term, which the whole-line
  /// treatment also produces; exact - incoming_residue - outgoing residue is
  /// the part that exists only because the spectrum is bounded below.
  Complex incoming_residue;
  Complex outgoing_residue;
};

/// prefactor * int_0^inf dk k^2 (e^{ik dr} - e^{-ik dr}) e^{-ickt} / ((ck - omega) + i Gamma/2)
/// split into two phase terms mu1 = dr - ct and mu2 = -(dr + ct), each
/// rotated on its own side. t > 0.
ScullyAmplitude scully_g1(const ScullyParams& p, double t, const QuadratureConfig& cfg);

struct CausalityReport {
  std::vector<double> tau;              // precursor samples, all < 0
  std::vector<double> precursor_curve;  // |exact|^2
  std::vector<double> lower_bound_curve;  // |exact - whole-line residues|^2
  std::vector<double> est_error;        // amplitude error per sample
  double max_precursor = 0.0;
  double max_lower_bound = 0.0;
  double wwa_precursor = 0.0;  // always exactly zero
  double threshold = 0.0;      // (1e3 * largest amplitude error)^2
  bool hegerfeldt_flag = false;
};

/// Samples the Scully amplitude at the tau < 0 points of the grid.
CausalityReport causality_scan(const ScullyParams& p, const RetardedGrid& tau_grid,
                               const QuadratureConfig& cfg);

/// Same report for the wavefront profile.
CausalityReport taylor_causality(const TaylorParams& p, const QuadratureConfig& cfg);

/// Scully profile over a retarded-time grid (tau = t - delta_r / c).
AmplitudeSeries scully_profile(const ScullyParams& p, const RetardedGrid& tau_grid, CaseMode mode,
                               const QuadratureConfig& cfg);

}  // namespace resdecay
