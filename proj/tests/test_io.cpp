#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "circlekit/builders.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/io.hpp"
#include "oracles.hpp"

using namespace circlekit;
using namespace circlekit::construct;
using io::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("circlekit-io-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Constellation roundtrip(const Constellation& c) {
  const auto text = io::to_json(io::ConstellationFile{c, {}, std::nullopt}).dump();
  return io::constellation_from_json(json::parse(text)).constellation;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("rationals are strings") {
    CHECK(io::to_json(Scalar(-3, 6)) == json("-1/2"));
    CHECK(io::to_json(Scalar(4)) == json("4/1"));
    CHECK(io::scalar_from_json(json("8/6")) == Scalar(4, 3));
    CHECK_THROWS_AS(io::scalar_from_json(json(0.5)), ParseError);
    CHECK_THROWS_AS(io::scalar_from_json(json(2)), ParseError);
  }

  TEST_CASE("constellations round-trip") {
    const auto tri = base_odd_cycle(3);
    CHECK(roundtrip(tri) == tri);
    const auto step = induction_step_tangency(tri, 3, 1, ramsey::SingleCopyProvider());
    CHECK(roundtrip(step) == step);
    const auto right = geom::CosAngle::right();
    const auto theta = induction_step_theta(base_odd_cycle(3, right), right, 3, 2, ramsey::IntervalProvider());
    const auto back = roundtrip(theta);
    CHECK(back == theta);
    REQUIRE(back.meta.inversion_center);
    CHECK(back.meta.rotation == theta.meta.rotation);
  }

  TEST_CASE("serialized text is stable") {
    const auto tri = base_odd_cycle(5);
    const io::ConstellationFile file{tri, {{"command", "test"}}, json{{"passed", true}}};
    const auto once = io::to_json(file).dump(1);
    const auto twice = io::to_json(io::constellation_from_json(json::parse(once))).dump(1);
    CHECK(once == twice);
  }

  TEST_CASE("certificates round-trip with their lift") {
    const ramsey::Template t({{0}, {1}, {2}});
    const auto cert = ramsey::FullCubeProvider().provide({t, {ramsey::distinctness_constraint()}, 2, 2, {}, {}});
    const io::CertificateFile file{cert, {}, std::nullopt};
    const auto text = io::to_json(file).dump();
    const auto back = io::certificate_from_json(json::parse(text)).certificate;
    CHECK(back.tmpl == cert.tmpl);
    CHECK(back.x == cert.x);
    CHECK(back.copies.size() == cert.copies.size());
    for (std::size_t i = 0; i < cert.copies.size(); ++i) {
      CHECK(back.copies[i].map == cert.copies[i].map);
      CHECK(back.copies[i].points == cert.copies[i].points);
    }
    CHECK(ramsey::constraint_names(back.constraints) == std::vector<std::string>{"delta"});
    REQUIRE(back.lift);
    CHECK(back.lift->gamma == cert.lift->gamma);
    CHECK(back.lift->h == cert.lift->h);
    CHECK(io::to_json(io::CertificateFile{back, {}, std::nullopt}).dump() == text);
  }

  TEST_CASE("graphs round-trip") {
    graph::Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    g.labels = {"a", "b", "c", "d"};
    const auto back = io::graph_from_json(io::to_json(g));
    CHECK(back == g);
    CHECK(back.labels == g.labels);
    CHECK_THROWS_AS(io::graph_from_json(json{{"vertices", {0, 1}}, {"edges", {{0, 5}}}}), ParseError);
  }

  TEST_CASE("malformed constellations are parse errors") {
    auto j = io::to_json(io::ConstellationFile{base_odd_cycle(3), {}, std::nullopt});
    auto missing = j;
    missing.erase("meta");
    CHECK_THROWS_AS(io::constellation_from_json(missing), ParseError);
    auto floaty = j;
    floaty["circles"][0]["r"] = 1.0;
    CHECK_THROWS_AS(io::constellation_from_json(floaty), ParseError);
    auto negative = j;
    negative["circles"][0]["r"] = "-1/1";
    CHECK_THROWS_AS(io::constellation_from_json(negative), ParseError);
    auto ids = j;
    ids["circles"][1]["id"] = 7;
    CHECK_THROWS_AS(io::constellation_from_json(ids), ParseError);
    auto role = j;
    role["circles"][0]["provenance"]["role"] = "medium";
    CHECK_THROWS_AS(io::constellation_from_json(role), ParseError);
    CHECK_THROWS_AS(io::constellation_from_json(json::array()), ParseError);
  }

  TEST_CASE("workspace validates paths before writing") {
    const auto dir = scratch("ws");
    const io::Workspace ws(dir);
    CHECK(ws.output("a.json") == dir / "a.json");
    CHECK_THROWS_AS(ws.output("missing/a.json"), InvalidPath);
    fs::create_directory(dir / "sub");
    CHECK_THROWS_AS(ws.output("sub"), InvalidPath);
    ws.write_json("a.json", json{{"x", "1/2"}});
    CHECK(io::read_json(dir / "a.json")["x"] == "1/2");
    CHECK_FALSE(fs::exists(dir / "a.json.partial"));
    CHECK_THROWS_AS(io::Workspace(dir / "nope"), InvalidPath);
    CHECK_THROWS_AS(io::read_json(dir / "absent.json"), InvalidPath);
    std::ofstream(dir / "bad.json") << "{not json";
    CHECK_THROWS_AS(io::read_json(dir / "bad.json"), ParseError);
  }

  TEST_CASE("svg rendering") {
    const auto tri = base_odd_cycle(3);
    const auto svg = io::render_svg(tri);
    CHECK(svg.rfind("<svg", 0) == 0);
    std::size_t circles = 0;
    for (auto pos = svg.find("data-role"); pos != std::string::npos; pos = svg.find("data-role", pos + 1)) ++circles;
    CHECK(circles == 3);

    const auto step = induction_step_tangency(tri, 3, 1, ramsey::SingleCopyProvider());
    io::RenderOptions opts;
    opts.highlight_matchings = true;
    opts.mark_tangency_points = true;
    const auto marked = io::render_svg(step, opts);
    std::size_t matched = 0;
    for (auto pos = marked.find("data-edge"); pos != std::string::npos; pos = marked.find("data-edge", pos + 1))
      ++matched;
    CHECK(matched == 3);
    CHECK(marked.find("class=\"tangency\"") != std::string::npos);
  }

  TEST_CASE("reports serialize deterministically") {
    const auto tri = base_odd_cycle(7);
    const auto a = verify_constellation(tri, 7, 3, geom::CosAngle::tangency());
    const auto b = verify_constellation(tri, 7, 3, geom::CosAngle::tangency());
    const auto s = verify_structure(tri);
    CHECK(io::report_to_json(a, s, {}) == io::report_to_json(b, s, {}));
    CHECK(io::report_to_json(a, s, {})["passed"] == true);
  }
}
