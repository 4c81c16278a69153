#pragma once

#include <vector>

#include "frontlab/hj.hpp"
#include "frontlab/hopf.hpp"
#include "frontlab/rdsim.hpp"

namespace frontlab {

struct BandMetrics {
  double M_in = 0.0;            // sup |1-u| where d(t,x) <= -beta
  double M_out = 0.0;           // sup u where d(t,x) >= beta
  double layer_hausdorff = 0.0; // d_H(u = 1/2 contour, Gamma_t)
};

/// Band metrics of a scaled-coordinates field against the limit interface.
/// The suprema run over grid nodes; layer_hausdorff uses the extracted
/// level-1/2 contour (0 when the level is absent from the field).
BandMetrics band_metrics(const ScalarField& u, const ConvexCurve& gamma_t, double beta);

struct ConvergenceConfig {
  std::vector<double> epsilons;      // strictly decreasing, all < beta/4
  double beta = 0.2;                 // exclusion band half-width
  double eta = 0.1;                  // layer tolerance (reported thresholds)
  double tau = 0.2, T = 1.0;
  std::vector<double> sample_times;  // within [tau, T]
  ScaledRunConfig scaled;            // template; epsilon/horizon/times/gamma0 overwritten

  void validate() const;
};

struct ConvergenceRecord {
  double epsilon = 0.0, t = 0.0;
  double M_in = 0.0, M_out = 0.0, layer_hausdorff = 0.0;
};

/// Theorem-1.3 experiment: for each epsilon runs the scaled problem and
/// evaluates the band metrics against the Hopf interface at each sample
/// time. Front-boundary contact aborts that epsilon with a diagnostic.
std::vector<ConvergenceRecord> run_convergence(const ConvergenceConfig& cfg,
                                               const Nonlinearity& nl, const HopfEvaluator& ev);

struct GenerationConfig {
  std::vector<double> epsilons;
  double eta = 0.1;       // threshold 1 - eta
  double beta_gen = 0.2;  // probe region {d(0,x) <= -beta_gen}
  double horizon = 0.5;   // scaled time cap
  ScaledRunConfig scaled; // template

  void validate() const;
};

struct GenerationRecord {
  double epsilon = 0.0;
  double t_gen = 0.0;
  bool reached = false;
};

struct GenerationResult {
  std::vector<GenerationRecord> records;
  double slope = 0.0;         // through-origin fit of t_gen vs epsilon
  double rel_residual = 0.0;  // RMS residual / RMS t_gen over reached records
};

/// Proposition-5.1 experiment: earliest scaled time at which u^eps >= 1-eta
/// on the probe region; unreached horizons are recorded as failures.
GenerationResult run_generation(const GenerationConfig& cfg, const Nonlinearity& nl,
                                const HopfEvaluator& ev);

struct ExpansionConfig {
  double sigma = 0.1;   // initial level on the region
  double eta = 0.05;    // target 1 - eta
  ConvexCurve region;
  int placements = 3;   // lattice placements of the region
  double horizon = 60.0;
  double h = 0.25;
  double cfl_fraction = 0.9;
  double margin_periods = 6.0;

  void validate() const;
};

struct ExpansionResult {
  std::vector<double> times;  // per placement; NaN marks a failure
  double t_sigma = 0.0;       // max over placements
  bool all_reached = false;
};

/// Lemma-5.2 experiment: u0 = sigma on the region, first time u >= 1-eta on
/// the same region, repeated over lattice placements.
ExpansionResult run_expansion(const ExpansionConfig& cfg, const Nonlinearity& nl);

struct RegularizationConfig {
  std::vector<double> alphas;  // strictly decreasing
  GridSpec grid;
  std::vector<double> snapshot_times;
  SpeedTable table;
  double sigma_cap = 0.1;  // sigma = min(alpha, sigma_cap)

  void validate() const;
};

struct RegularizationRecord {
  double alpha = 0.0;
  double sup_hausdorff = 0.0;
  std::vector<ViscousSnapshot> snapshots;
};

/// Proposition-4.2 experiment: per alpha, sup over snapshot times of
/// d_H(Gamma^alpha_t, Gamma_t).
std::vector<RegularizationRecord> run_regularization(const RegularizationConfig& cfg,
                                                     const HopfEvaluator& ev);

}  // namespace frontlab
