#include "frontlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace frontlab {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_polygon_csv(const std::string& path, const ConvexCurve& curve) {
  std::ofstream os = open_out(path);
  os << "x,y,nx,ny\n";
  for (size_t k = 0; k < curve.vertices.size(); ++k)
    os << format_double(curve.vertices[k].x) << ',' << format_double(curve.vertices[k].y) << ','
       << format_double(curve.normals[k].x) << ',' << format_double(curve.normals[k].y) << '\n';
}

ConvexCurve read_polygon_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open polygon CSV: " + path);
  std::string line;
  if (!std::getline(is, line) || line != "x,y,nx,ny")
    throw std::runtime_error("polygon CSV: bad header in " + path);
  ConvexCurve c;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 4) throw std::runtime_error("polygon CSV: bad row in " + path);
    c.vertices.push_back({std::stod(cells[0]), std::stod(cells[1])});
    c.normals.push_back({std::stod(cells[2]), std::stod(cells[3])});
  }
  c.validate();
  return c;
}

void write_speed_table_csv(const std::string& path, const SpeedTable& table) {
  std::ofstream os = open_out(path);
  os << "theta,c_star,method,fit_residual\n";
  for (const SpeedEntry& e : table.entries)
    os << format_double(e.theta) << ',' << format_double(e.c_star) << ','
       << speed_method_name(e.method) << ',' << format_double(e.fit_residual) << '\n';
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRecord>& recs) {
  std::ofstream os = open_out(path);
  os << "epsilon,t,M_in,M_out,layer_hausdorff\n";
  for (const ConvergenceRecord& r : recs)
    os << format_double(r.epsilon) << ',' << format_double(r.t) << ',' << format_double(r.M_in)
       << ',' << format_double(r.M_out) << ',' << format_double(r.layer_hausdorff) << '\n';
}

void write_generation_csv(const std::string& path, const GenerationResult& result) {
  std::ofstream os = open_out(path);
  os << "epsilon,t_gen\n";
  for (const GenerationRecord& r : result.records)
    os << format_double(r.epsilon) << ',' << format_double(r.t_gen) << '\n';
}

void write_regularization_csv(const std::string& path,
                              const std::vector<RegularizationRecord>& recs) {
  std::ofstream os = open_out(path);
  os << "alpha,sup_hausdorff\n";
  for (const RegularizationRecord& r : recs)
    os << format_double(r.alpha) << ',' << format_double(r.sup_hausdorff) << '\n';
}

void write_hj_metrics_csv(const std::string& path, const std::vector<HJMetricsRow>& rows) {
  std::ofstream os = open_out(path);
  os << "t,alpha,hausdorff_to_hopf,grad_max,min_second_diff\n";
  for (const HJMetricsRow& r : rows)
    os << format_double(r.t) << ',' << format_double(r.alpha) << ','
       << format_double(r.hausdorff_to_hopf) << ',' << format_double(r.grad_max) << ','
       << format_double(r.min_second_diff) << '\n';
}

void write_snapshot_summary_csv(const std::string& path, const std::vector<Snapshot>& snaps) {
  std::ofstream os = open_out(path);
  os << "time,min,max,mass,front_contact\n";
  for (const Snapshot& s : snaps)
    os << format_double(s.time) << ',' << format_double(s.min_value) << ','
       << format_double(s.max_value) << ',' << format_double(s.mass) << ','
       << (s.front_contact ? 1 : 0) << '\n';
}

void write_field_binary(const std::string& path, const ScalarField& field, double time) {
  {
    std::ofstream os = open_out(path, std::ios::binary);
    os.write(reinterpret_cast<const char*>(field.values.data()),
             static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed: " + path);
  }
  std::ofstream side = open_out(path + ".txt");
  const GridSpec& g = field.grid;
  side << g.nx << ' ' << g.ny << ' ' << format_double(g.hx) << ' ' << format_double(g.hy) << ' '
       << format_double(g.x0) << ' ' << format_double(g.y0) << ' ' << format_double(time) << '\n';
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_manifest(const std::string& path, const std::string& subcommand,
                    std::uint64_t config_hash, double wall_seconds,
                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  char hex[19];
  std::snprintf(hex, sizeof(hex), "0x%016llx", static_cast<unsigned long long>(config_hash));
  j["config_hash"] = hex;
  j["wall_time_s"] = wall_seconds;
  j["outputs"] = outputs;
  std::ofstream os = open_out(path);
  os << j.dump(2) << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace frontlab
