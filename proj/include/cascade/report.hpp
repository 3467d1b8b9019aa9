#pragma once

#include <map>
#include <string>
#include <vector>

#include "cascade/driver.hpp"
#include "cascade/problem_io.hpp"

namespace cascade {

struct RunReport {
  Rational big_m;
  bool strict_sp = false;
  std::vector<Vertex> vertices;
  std::vector<std::vector<Vertex>> efficient;  // per level
  std::vector<Vertex> n_hat_dex;
  std::vector<Face> sorting_sets;
  SessionTrace trace;
  RVector final_x;
  std::vector<RVector> final_objectives;
  std::map<std::string, double> timings_ms;
};

RunReport make_report(const Geometry& geometry, const FinalCompromise& final,
                      const DriverConfig& config,
                      std::map<std::string, double> timings_ms = {});

Json to_json(const Vertex& v);
Json to_json(const std::vector<Vertex>& vs);
Json to_json(const Face& face, std::size_t index);
Json to_json(const MolpTrace& trace);
Json to_json(const SessionTrace& trace);
Json to_json(const RunReport& report);

Vertex vertex_from_json(const Json& j);
std::vector<Vertex> vertices_from_json(const Json& j);
Face face_from_json(const Json& j);
MolpTrace molp_trace_from_json(const Json& j);
SessionTrace session_trace_from_json(const Json& j);
/// Inverse of to_json(RunReport); throws ParseError.
RunReport report_from_json(const Json& j);

std::string render_vertices(const std::vector<Vertex>& vertices);
std::string render_faces(const std::vector<Face>& faces);
/// Human-readable table of the whole run.
std::string render_table(const RunReport& report);

}  // namespace cascade
