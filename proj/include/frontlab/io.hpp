#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frontlab/frontspeed.hpp"
#include "frontlab/geometry.hpp"
#include "frontlab/grid.hpp"
#include "frontlab/harness.hpp"
#include "frontlab/rdsim.hpp"

namespace frontlab {

/// Shortest round-trippable decimal form of a double (%.17g).
std::string format_double(double v);

/// Polygon CSV, header `x,y,nx,ny`, one row per vertex.
void write_polygon_csv(const std::string& path, const ConvexCurve& curve);
ConvexCurve read_polygon_csv(const std::string& path);

/// `theta,c_star,method,fit_residual`.
void write_speed_table_csv(const std::string& path, const SpeedTable& table);

/// `epsilon,t,M_in,M_out,layer_hausdorff`.
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRecord>& recs);

/// `epsilon,t_gen` (unreached records emit nan).
void write_generation_csv(const std::string& path, const GenerationResult& result);

/// `alpha,sup_hausdorff`.
void write_regularization_csv(const std::string& path,
                              const std::vector<RegularizationRecord>& recs);

struct HJMetricsRow {
  double t = 0.0, alpha = 0.0, hausdorff_to_hopf = 0.0, grad_max = 0.0, min_second_diff = 0.0;
};

/// `t,alpha,hausdorff_to_hopf,grad_max,min_second_diff`.
void write_hj_metrics_csv(const std::string& path, const std::vector<HJMetricsRow>& rows);

/// `time,min,max,mass,front_contact` per snapshot.
void write_snapshot_summary_csv(const std::string& path, const std::vector<Snapshot>& snaps);

/// Flat native 64-bit row-major dump plus a text sidecar `<path>.txt` with
/// `nx ny hx hy x0 y0 time`.
void write_field_binary(const std::string& path, const ScalarField& field, double time);

/// FNV-1a hash of a byte string (config fingerprint for the manifest).
std::uint64_t fnv1a(const std::string& bytes);

/// JSON manifest listing every artifact with its producing subcommand, the
/// config hash, and the wall time.
void write_manifest(const std::string& path, const std::string& subcommand,
                    std::uint64_t config_hash, double wall_seconds,
                    const std::vector<std::string>& outputs);

std::string read_text_file(const std::string& path);

}  // namespace frontlab
