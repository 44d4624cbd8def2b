#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "circlekit/constellation.hpp"
#include "circlekit/gallai.hpp"
#include "circlekit/graph.hpp"

namespace circlekit::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "circlekit 0.3.0";

// Rationals travel as "num/den" strings; floats never appear in JSON.
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json to_json(const PointN& p);
PointN point_from_json(const json& j);

/// Constellation plus the parameter block and verification report written
/// alongside it.
struct ConstellationFile {
  construct::Constellation constellation;
  json params = json::object();
  std::optional<json> report;
};

json to_json(const ConstellationFile& file);
/// Throws ParseError on any structural or value problem.
ConstellationFile constellation_from_json(const json& j);

struct CertificateFile {
  ramsey::GallaiCertificate certificate;
  json params = json::object();
  std::optional<json> report;
};

json to_json(const CertificateFile& file);
/// Constraint names are resolved through the construction registry.
CertificateFile certificate_from_json(const json& j);

json to_json(const graph::Graph& g);
graph::Graph graph_from_json(const json& j);

/// Verification reports in their persisted form. The budget is part of the
/// record because an inexact chromatic search depends on it.
json report_to_json(const construct::ConstellationReport& report, const construct::StructureReport& structure,
                    const graph::SearchBudget& budget);
json report_to_json(const ramsey::CertificateReport& report, bool check_all_copies, const graph::SearchBudget& budget);

// ---- files ----

/// Throws InvalidPath if the file cannot be read, ParseError if it is not JSON.
json read_json(const std::filesystem::path& path);

/// Output locations resolved against an optional directory and checked
/// before anything is written.
class Workspace {
 public:
  explicit Workspace(std::optional<std::filesystem::path> out_dir = std::nullopt);

  /// Resolves `name` (relative names go under the output directory). Throws
  /// InvalidPath if the target is a directory or its parent does not exist.
  std::filesystem::path output(const std::filesystem::path& name) const;
  /// Validates, then writes through a temporary file and a rename.
  void write_text(const std::filesystem::path& name, const std::string& text) const;
  void write_json(const std::filesystem::path& name, const json& j) const;

 private:
  std::optional<std::filesystem::path> out_dir_;
};

// ---- rendering ----

struct RenderOptions {
  double width = 800;
  bool mark_tangency_points = false;
  /// Draws contact edges between circles of different roles: large to small
  /// in a tangency step, line image to small in a theta step.
  bool highlight_matchings = false;
};

/// SVG of the circles, colored by provenance role. Coordinates are converted
/// to doubles here and nowhere else.
std::string render_svg(const construct::Constellation& c, const RenderOptions& options = {});

}  // namespace circlekit::io
