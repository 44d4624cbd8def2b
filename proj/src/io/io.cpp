#include "circlekit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <functional>
#include <sstream>

#include "circlekit/builders.hpp"
#include "circlekit/errors.hpp"

namespace circlekit::io {

namespace {

namespace fs = std::filesystem;
using construct::Constellation;
using construct::StepRecord;

// Runs a decoder, turning library and JSON errors into ParseError with context.
template <class F>
auto guarded(const std::string& what, F&& decode) {
  try {
    return decode();
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  } catch (const Error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::string hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <class T, class F>
json array_of(const std::vector<T>& items, F&& encode) {
  json out = json::array();
  for (const auto& item : items) out.push_back(encode(item));
  return out;
}

template <class F>
auto vector_from(const json& j, F&& decode) {
  if (!j.is_array()) throw ParseError("expected an array");
  std::vector<decltype(decode(j))> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(decode(item));
  return out;
}

template <class T, class F>
json optional_of(const std::optional<T>& v, F&& encode) {
  return v ? encode(*v) : json(nullptr);
}

json circle_json(const geom::Circle& c) { return {{"cx", to_json(c.cx())}, {"cy", to_json(c.cy())}, {"r", to_json(c.r())}}; }

geom::Circle circle_from(const json& j) {
  return {scalar_from_json(field(j, "cx")), scalar_from_json(field(j, "cy")), scalar_from_json(field(j, "r"))};
}

json point2_json(const geom::Point2& p) { return json::array({to_json(p.x), to_json(p.y)}); }

geom::Point2 point2_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a planar point [x, y]");
  return {scalar_from_json(j[0]), scalar_from_json(j[1])};
}

json map_json(const geom::HomotheticMap& h) {
  return {{"pstar", to_json(h.translation())}, {"lambda", to_json(h.lambda())}};
}

geom::HomotheticMap map_from(const json& j) {
  auto translation = point_from_json(field(j, "pstar"));
  auto lambda = scalar_from_json(field(j, "lambda"));
  if (lambda.sign() > 0) return geom::HomotheticMap::proper(std::move(translation), std::move(lambda));
  return geom::HomotheticMap::relaxed(std::move(translation), std::move(lambda));
}

json provenance_json(const construct::Provenance& p) {
  return {{"role", construct::role_name(p.role)}, {"point", p.point}, {"copy", p.copy}, {"source", p.source}};
}

construct::Provenance provenance_from(const json& j) {
  return {construct::parse_role(field(j, "role").get<std::string>()), field(j, "point").get<std::size_t>(),
          field(j, "copy").get<std::size_t>(), field(j, "source").get<std::size_t>()};
}

json meta_json(const StepRecord& m) {
  return {
      {"construction", m.construction},
      {"g", m.g},
      {"k", m.k},
      {"angle", {{"cos2", to_json(m.angle.cos2())}}},
      {"seed", m.seed},
      {"provider", m.provider},
      {"base", array_of(m.base, circle_json)},
      {"template_owner", m.template_owner},
      {"x", array_of(m.x, [](const PointN& p) { return to_json(p); })},
      {"copy_maps", array_of(m.copy_maps, map_json)},
      {"copy_points", m.copy_points},
      {"R", optional_of(m.R, [](const Scalar& s) { return to_json(s); })},
      {"directions", array_of(m.directions, point2_json)},
      {"rotation",
       optional_of(m.rotation, [](const geom::Rotation& r) { return json{{"c", to_json(r.c())}, {"s", to_json(r.s())}}; })},
      {"offsets", array_of(m.offsets, [](const Scalar& s) { return to_json(s); })},
      {"inversion_center", optional_of(m.inversion_center, point2_json)},
      {"inversion_k2", optional_of(m.inversion_k2, [](const Scalar& s) { return to_json(s); })},
  };
}

template <class T, class F>
std::optional<T> optional_from(const json& j, F&& decode) {
  if (j.is_null()) return std::nullopt;
  return decode(j);
}

StepRecord meta_from(const json& j) {
  StepRecord m;
  m.construction = field(j, "construction").get<std::string>();
  if (m.construction != "base" && m.construction != "tangency-step" && m.construction != "theta-step")
    throw ParseError("unknown construction '" + m.construction + "'");
  m.g = field(j, "g").get<std::size_t>();
  m.k = field(j, "k").get<int>();
  m.angle = geom::CosAngle::from_cos2(scalar_from_json(field(field(j, "angle"), "cos2")));
  m.seed = field(j, "seed").get<std::uint64_t>();
  m.provider = field(j, "provider").get<std::string>();
  m.base = vector_from(field(j, "base"), circle_from);
  m.template_owner = field(j, "template_owner").get<std::vector<std::size_t>>();
  m.x = vector_from(field(j, "x"), point_from_json);
  m.copy_maps = vector_from(field(j, "copy_maps"), map_from);
  m.copy_points = field(j, "copy_points").get<std::vector<std::vector<std::size_t>>>();
  m.R = optional_from<Scalar>(field(j, "R"), scalar_from_json);
  m.directions = vector_from(field(j, "directions"), point2_from);
  m.rotation = optional_from<geom::Rotation>(field(j, "rotation"), [](const json& r) {
    return geom::Rotation(scalar_from_json(field(r, "c")), scalar_from_json(field(r, "s")));
  });
  m.offsets = vector_from(field(j, "offsets"), scalar_from_json);
  m.inversion_center = optional_from<geom::Point2>(field(j, "inversion_center"), point2_from);
  m.inversion_k2 = optional_from<Scalar>(field(j, "inversion_k2"), scalar_from_json);
  return m;
}

json pairs_json(const std::vector<construct::PairIssue>& issues) {
  return array_of(issues, [](const construct::PairIssue& p) {
    return json{{"first", p.first}, {"second", p.second}, {"kind", p.kind}};
  });
}

json trace_json(const graph::SearchTrace& t) { return {{"nodes", t.nodes}, {"digest", hex(t.digest)}}; }

json budget_json(const graph::SearchBudget& b) { return {{"max_nodes", b.max_nodes}}; }

}  // namespace

json to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("rationals must be \"num/den\" strings, got " + j.dump());
  return Scalar::parse(j.get<std::string>());
}

json to_json(const PointN& p) { return array_of(p, [](const Scalar& s) { return to_json(s); }); }

PointN point_from_json(const json& j) { return vector_from(j, scalar_from_json); }

json to_json(const ConstellationFile& file) {
  const auto& c = file.constellation;
  json circles = json::array();
  for (const auto& m : c.members) {
    auto entry = circle_json(m.circle);
    entry["id"] = m.id;
    entry["provenance"] = provenance_json(m.provenance);
    circles.push_back(std::move(entry));
  }
  json out{{"version", kToolVersion},
           {"seed", c.meta.seed},
           {"params", file.params},
           {"circles", std::move(circles)},
           {"meta", meta_json(c.meta)}};
  if (file.report) out["report"] = *file.report;
  return out;
}

ConstellationFile constellation_from_json(const json& j) {
  return guarded("constellation", [&] {
    field(j, "version").get<std::string>();
    auto meta = meta_from(field(j, "meta"));
    if (field(j, "seed").get<std::uint64_t>() != meta.seed) throw ParseError("seed disagrees with meta.seed");
    std::vector<geom::Circle> circles;
    std::vector<construct::Provenance> provenance;
    const auto& list = field(j, "circles");
    if (!list.is_array()) throw ParseError("'circles' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (field(list[i], "id").get<std::size_t>() != i)
        throw ParseError("circle ids must be 0..n-1 in order (entry " + std::to_string(i) + ")");
      circles.push_back(circle_from(list[i]));
      provenance.push_back(provenance_from(field(list[i], "provenance")));
    }
    ConstellationFile file{construct::make_constellation(std::move(circles), std::move(provenance), std::move(meta)),
                           j.value("params", json::object()), std::nullopt};
    if (j.contains("report")) file.report = j["report"];
    return file;
  });
}

json to_json(const CertificateFile& file) {
  const auto& c = file.certificate;
  json lift = nullptr;
  if (c.lift) {
    lift = {{"gamma", array_of(c.lift->gamma, [](const Scalar& s) { return to_json(s); })},
            {"H",
             {{"m", c.lift->h.m()},
              {"n", c.lift->h.n()},
              {"points", array_of(c.lift->h.points(), [](const ramsey::CubePoint& p) { return json(p.coords); })}}}};
  }
  json out{{"version", kToolVersion},
           {"params", file.params},
           {"template",
            {{"d", c.tmpl.dimension()}, {"points", array_of(c.tmpl.points(), [](const PointN& p) { return to_json(p); })}}},
           {"X", array_of(c.x, [](const PointN& p) { return to_json(p); })},
           {"copies", array_of(c.copies,
                               [](const ramsey::HomotheticCopy& h) {
                                 return json{{"map", map_json(h.map)},
                                             {"points", array_of(h.points, [](const PointN& p) { return to_json(p); })}};
                               })},
           {"k", c.k},
           {"g", c.g},
           {"constraints", ramsey::constraint_names(c.constraints)},
           {"lift", std::move(lift)}};
  if (file.report) out["report"] = *file.report;
  return out;
}

CertificateFile certificate_from_json(const json& j) {
  return guarded("certificate", [&] {
    const auto& t = field(j, "template");
    ramsey::Template tmpl(vector_from(field(t, "points"), point_from_json));
    if (field(t, "d").get<std::size_t>() != tmpl.dimension()) throw ParseError("template dimension disagrees with 'd'");
    ramsey::GallaiCertificate cert{std::move(tmpl), vector_from(field(j, "X"), point_from_json), {},
                                   field(j, "k").get<int>(), field(j, "g").get<std::size_t>(), {}, std::nullopt};
    cert.copies = vector_from(field(j, "copies"), [](const json& c) {
      return ramsey::HomotheticCopy{map_from(field(c, "map")), vector_from(field(c, "points"), point_from_json)};
    });
    const auto names = field(j, "constraints").get<std::vector<std::string>>();
    cert.constraints = construct::constraints_by_name(names);
    const auto& lift = field(j, "lift");
    if (!lift.is_null()) {
      const auto& h = field(lift, "H");
      std::vector<ramsey::CubePoint> points;
      for (const auto& p : field(h, "points")) points.push_back({p.get<std::vector<int>>()});
      cert.lift = ramsey::LiftProvenance{vector_from(field(lift, "gamma"), scalar_from_json),
                                         ramsey::CubeSet(field(h, "m").get<int>(), field(h, "n").get<int>(), points)};
    }
    CertificateFile file{std::move(cert), j.value("params", json::object()), std::nullopt};
    if (j.contains("report")) file.report = j["report"];
    return file;
  });
}

json to_json(const graph::Graph& g) {
  json vertices = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) vertices.push_back(v);
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"labels", g.labels}};
}

graph::Graph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    const auto n = field(j, "vertices").size();
    std::vector<graph::Edge> edges;
    for (const auto& e : field(j, "edges")) {
      const auto pair = e.get<std::vector<std::size_t>>();
      if (pair.size() != 2 || pair[0] >= n || pair[1] >= n) throw ParseError("bad edge " + e.dump());
      edges.emplace_back(pair[0], pair[1]);
    }
    graph::Graph g(n, edges);
    g.labels = j.value("labels", std::vector<std::string>{});
    if (!g.labels.empty() && g.labels.size() != n) throw ParseError("one label per vertex required");
    return g;
  });
}

json report_to_json(const construct::ConstellationReport& r, const construct::StructureReport& structure,
                    const graph::SearchBudget& budget) {
  const auto& chi = r.chromatic;
  json below = nullptr;
  if (chi.below) below = {{"colors", chi.below->colors()}, {"trace", trace_json(chi.below->trace())}};
  return {
      {"passed", r.passed() && structure.passed()},
      {"g", r.g},
      {"k", r.k},
      {"budget", budget_json(budget)},
      {"circles", r.circles},
      {"edge_count", r.edges.size()},
      {"girth", optional_of(r.girth, [](std::size_t v) { return json(v); })},
      {"girth_ok", r.girth_ok()},
      {"chromatic",
       {{"lower", chi.lower},
        {"upper", chi.upper},
        {"exact", chi.exact},
        {"clique", chi.clique},
        {"coloring", chi.coloring},
        {"below", std::move(below)}}},
      {"chromatic_ok", r.chromatic_ok()},
      {"concentric", pairs_json(r.concentric)},
      {"internal", pairs_json(r.internal)},
      {"triple", pairs_json(r.triple)},
      {"structure",
       {{"passed", structure.passed()},
        {"predicted_edges", structure.predicted_edges},
        {"deviations", pairs_json(structure.deviations)}}},
  };
}

json report_to_json(const ramsey::CertificateReport& r, bool check_all_copies, const graph::SearchBudget& budget) {
  json violation = nullptr;
  if (r.violation)
    violation = {{"constraint", r.violation->constraint}, {"first", r.violation->first}, {"second", r.violation->second}};
  return {
      {"passed", r.passed()},
      {"check_all_copies", check_all_copies},
      {"budget", budget_json(budget)},
      {"copies_consistent", r.copies_consistent},
      {"copies_detail", r.copies_detail},
      {"copies_checked", r.copies_checked},
      {"respects", r.respects},
      {"violation", std::move(violation)},
      {"copy_girth", optional_of(r.copy_girth, [](std::size_t v) { return json(v); })},
      {"girth_ok", r.girth_ok},
      {"ramsey", r.ramsey},
      {"avoiding_coloring", optional_of(r.avoiding_coloring, [](const graph::Coloring& c) { return json(c); })},
      {"trace", trace_json(r.trace)},
  };
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidPath("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Workspace::Workspace(std::optional<fs::path> out_dir) : out_dir_(std::move(out_dir)) {
  if (out_dir_ && !fs::is_directory(*out_dir_))
    throw InvalidPath("output directory '" + out_dir_->string() + "' does not exist");
}

fs::path Workspace::output(const fs::path& name) const {
  if (name.empty()) throw InvalidPath("empty output path");
  const fs::path target = (out_dir_ && name.is_relative()) ? *out_dir_ / name : name;
  if (fs::is_directory(target)) throw InvalidPath("'" + target.string() + "' is a directory");
  const auto parent = target.has_parent_path() ? target.parent_path() : fs::path(".");
  if (!fs::is_directory(parent)) throw InvalidPath("directory '" + parent.string() + "' does not exist");
  return target;
}

void Workspace::write_text(const fs::path& name, const std::string& text) const {
  const auto target = output(name);
  auto tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidPath("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) throw InvalidPath("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidPath("cannot move output into '" + target.string() + "'");
  }
}

void Workspace::write_json(const fs::path& name, const json& j) const { write_text(name, j.dump(1) + "\n"); }

namespace {

const char* role_color(construct::Role role) {
  switch (role) {
    case construct::Role::base: return "#1f4e9c";
    case construct::Role::large: return "#8c8c8c";
    case construct::Role::small: return "#c0392b";
    case construct::Role::line: return "#2e8b57";
  }
  return "#000000";
}

}  // namespace

std::string render_svg(const Constellation& c, const RenderOptions& options) {
  struct Disc {
    double x, y, r;
  };
  std::vector<Disc> discs;
  for (const auto& m : c.members)
    discs.push_back({m.circle.cx().to_double(), m.circle.cy().to_double(), m.circle.r().to_double()});

  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  if (!discs.empty()) {
    lo_x = lo_y = std::numeric_limits<double>::infinity();
    hi_x = hi_y = -lo_x;
    for (const auto& d : discs) {
      lo_x = std::min(lo_x, d.x - d.r);
      hi_x = std::max(hi_x, d.x + d.r);
      lo_y = std::min(lo_y, d.y - d.r);
      hi_y = std::max(hi_y, d.y + d.r);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double margin = 0.03 * span;
  const double scale = options.width / (span + 2 * margin);
  const double height = (hi_y - lo_y + 2 * margin) * scale;
  const auto sx = [&](double x) { return (x - lo_x + margin) * scale; };
  const auto sy = [&](double y) { return (hi_y - y + margin) * scale; };  // y axis points up

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << options.width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"none\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < discs.size(); ++i) {
    const auto& d = discs[i];
    svg << "<circle data-id=\"" << i << "\" data-role=\"" << construct::role_name(c.members[i].provenance.role)
        << "\" cx=\"" << sx(d.x) << "\" cy=\"" << sy(d.y) << "\" r=\"" << d.r * scale << "\" stroke=\""
        << role_color(c.members[i].provenance.role) << "\"/>\n";
  }
  svg << "</g>\n";

  if (options.mark_tangency_points || options.highlight_matchings) {
    const auto circles = c.circles();
    const auto edges = construct::contact_graph(circles, c.meta.angle).edges();
    if (options.highlight_matchings) {
      svg << "<g class=\"matching\" stroke=\"#e67e22\" stroke-width=\"1.5\">\n";
      for (const auto& [u, v] : edges) {
        if (c.members[u].provenance.role == c.members[v].provenance.role) continue;
        svg << "<line data-edge=\"" << u << '-' << v << "\" x1=\"" << sx(discs[u].x) << "\" y1=\"" << sy(discs[u].y)
            << "\" x2=\"" << sx(discs[v].x) << "\" y2=\"" << sy(discs[v].y) << "\"/>\n";
      }
      svg << "</g>\n";
    }
    if (options.mark_tangency_points && c.meta.angle.is_tangency()) {
      svg << "<g class=\"tangency\" fill=\"black\">\n";
      for (const auto& [u, v] : edges) {
        const auto p = geom::tangency_point(circles[u], circles[v]);
        svg << "<circle cx=\"" << sx(p.x.to_double()) << "\" cy=\"" << sy(p.y.to_double()) << "\" r=\"2\"/>\n";
      }
      svg << "</g>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace circlekit::io
