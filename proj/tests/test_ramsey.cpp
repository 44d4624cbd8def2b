#include "doctest.h"

#include <random>

#include "circlekit/cube.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/gallai.hpp"
#include "circlekit/hypergraph.hpp"
#include "circlekit/providers.hpp"
#include "oracles.hpp"

using namespace circlekit;
using namespace circlekit::ramsey;

namespace {

Template line_template(std::initializer_list<long> values) {
  std::vector<PointN> pts;
  for (auto v : values) pts.push_back({Scalar(v)});
  return Template(std::move(pts));
}

std::vector<PointN> interval(long lo, long hi) {
  std::vector<PointN> x;
  for (long i = lo; i <= hi; ++i) x.push_back({Scalar(i)});
  return x;
}

std::set<std::vector<std::size_t>> as_sets(const std::vector<PointN>& x, const std::vector<HomotheticCopy>& copies) {
  std::set<std::vector<std::size_t>> out;
  for (auto e : copies_as_edges(x, copies)) {
    std::sort(e.begin(), e.end());
    out.insert(e);
  }
  return out;
}

GallaiCertificate ap_certificate(long n) {
  auto x = interval(1, n);
  const auto tmpl = line_template({0, 1, 2});
  auto copies = enumerate_copies(x, tmpl);
  return {tmpl, std::move(x), std::move(copies), 2, 2, {distinctness_constraint()}, std::nullopt};
}

Constraint always_zero() {
  return {"zero", [](const PointN&, const PointN&) { return Scalar(0); }};
}

}  // namespace

TEST_SUITE("ramsey") {
  TEST_CASE("template validation") {
    CHECK_THROWS_AS(Template({{0}, {0}}), DegenerateInput);
    CHECK_THROWS_AS(Template({{0}, {1, 2}}), DegenerateInput);
    CHECK(line_template({0, 1, 2}).dimension() == 1);
  }

  TEST_CASE("line counts") {
    CHECK(enumerate_lines(2, 1).size() == 1);
    CHECK(enumerate_lines(2, 2).size() == 5);
    CHECK(enumerate_lines(3, 2).size() == 7);
    CHECK(enumerate_lines(3, 4).size() == 256u - 81u);
    for (const auto& line : enumerate_lines(3, 3)) {
      const auto pts = line.materialize();
      CHECK(pts.size() == 3);
      CHECK(std::set<CubePoint>(pts.begin(), pts.end()).size() == 3);
      CHECK(line.is_ordinary());
    }
  }

  TEST_CASE("generalized lines match definition-based enumeration") {
    for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
      const auto expected = oracle::all_generalized_lines(m, n);
      // Every ordered m-tuple of distinct cube points.
      const auto cube = CubeSet::full(m, n).points();
      std::set<std::vector<std::vector<int>>> accepted;
      std::vector<std::size_t> pick;
      std::function<void()> walk = [&] {
        if (pick.size() == static_cast<std::size_t>(m)) {
          std::vector<CubePoint> pts;
          std::vector<std::vector<int>> key;
          for (auto i : pick) {
            pts.push_back(cube[i]);
            key.push_back(cube[i].coords);
          }
          if (is_generalized_line(pts, m)) accepted.insert(key);
          return;
        }
        for (std::size_t i = 0; i < cube.size(); ++i) {
          if (std::find(pick.begin(), pick.end(), i) != pick.end()) continue;
          pick.push_back(i);
          walk();
          pick.pop_back();
        }
      };
      walk();
      CHECK(accepted == expected);
    }
    CHECK(is_generalized_line(std::vector<CubePoint>{{{1, 2}}, {{2, 1}}}, 2));
    CHECK_FALSE(is_generalized_line(std::vector<CubePoint>{{{1, 1}}, {{1, 2}}, {{2, 1}}}, 3));
  }

  TEST_CASE("monochromatic lines") {
    const auto h = CubeSet::full(2, 2);
    const auto lines = enumerate_lines(2, 2);
    CHECK(find_mono_line(h, std::vector<int>(4, 0), lines));
    // Every 2-coloring of [2]^2 has a monochromatic line.
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<int> c(4);
      for (int i = 0; i < 4; ++i) c[i] = (mask >> i) & 1;
      CHECK(find_mono_line(h, c, lines));
    }
    const CubeSet missing(2, 2, {{{1, 2}}, {{2, 1}}});
    CHECK_FALSE(find_mono_line(missing, std::vector<int>(2, 0), lines));
  }

  TEST_CASE("Ramsey verification") {
    CHECK(verify_ramsey(CubeSet::full(2, 2), enumerate_lines(2, 2), 2).ramsey);
    const auto three = verify_ramsey(CubeSet::full(3, 2), enumerate_lines(3, 2), 2);
    CHECK_FALSE(three.ramsey);
    REQUIRE(three.avoiding_coloring);
    CHECK_FALSE(find_mono_line(CubeSet::full(3, 2), *three.avoiding_coloring, enumerate_lines(3, 2)));
    CHECK(verify_ramsey(CubeSet::full(3, 1), enumerate_lines(3, 1), 1).ramsey);
    CHECK_FALSE(verify_ramsey(CubeSet::full(3, 3), enumerate_lines(3, 3), 2).ramsey);
    CHECK(verify_ramsey(CubeSet::full(3, 4), enumerate_lines(3, 4), 2).ramsey);
  }

  TEST_CASE("Ramsey verification matches exhaustive colorings") {
    for (auto [m, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
      const auto h = CubeSet::full(m, n);
      const auto lines = enumerate_lines(m, n);
      std::vector<std::vector<std::size_t>> edges;
      for (const auto& e : lines_inside(h, lines)) edges.push_back(e);
      for (int k = 1; k <= 3; ++k)
        CHECK(verify_ramsey(h, lines, k).ramsey == oracle::every_coloring_hits(h.size(), edges, k));
    }
  }

  TEST_CASE("sparsification") {
    const auto h = CubeSet::full(2, 2);
    const auto lines = enumerate_lines(2, 2);
    CHECK(sparsify(h, lines, 2, 2).kept == h);
    const auto r = sparsify(h, lines, 3, 1);
    CHECK(verify_ramsey(r.kept, lines, 1).ramsey);
    std::vector<graph::Hyperedge> kept_lines = lines_inside(r.kept, lines);
    const auto girth = berge_girth(kept_lines);
    CHECK((!girth || *girth >= 3));
    CHECK(r.line_girth == girth);
    CHECK_THROWS_AS(sparsify(CubeSet::full(3, 2), enumerate_lines(3, 2), 3, 2), PreconditionViolation);
  }

  TEST_CASE("Berge girth examples") {
    CHECK(berge_girth(std::vector<graph::Hyperedge>{{0, 1, 2}, {1, 2, 3}}) == 2u);
    CHECK(berge_girth(std::vector<graph::Hyperedge>{{0, 1}, {1, 2}, {2, 0}}) == 3u);
    CHECK_FALSE(berge_girth(std::vector<graph::Hyperedge>{{0, 1}, {2, 3}, {4}}));
    const std::vector<graph::Hyperedge> fam{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    const auto c = shortest_berge_cycle(fam);
    REQUIRE(c);
    CHECK(c->length() == 4);
    for (std::size_t i = 0; i < c->length(); ++i) {
      const auto& a = fam[c->sets[i]];
      const auto& b = fam[c->sets[(i + 1) % c->length()]];
      CHECK(std::find(a.begin(), a.end(), c->elements[i]) != a.end());
      CHECK(std::find(b.begin(), b.end(), c->elements[i]) != b.end());
    }
  }

  TEST_CASE("Berge girth matches direct enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t sets = 1 + rng() % 8;
      const std::size_t universe = 3 + rng() % 8;
      std::vector<graph::Hyperedge> fam;
      for (std::size_t s = 0; s < sets; ++s) {
        graph::Hyperedge e;
        for (std::size_t x = 0; x < universe; ++x)
          if (rng() % 4 == 0) e.push_back(x);
        fam.push_back(e);
      }
      CHECK(berge_girth(fam) == oracle::berge_girth(fam));
    }
  }

  TEST_CASE("zeta") {
    const auto t = line_template({0, 1, 2});
    CHECK(zeta(std::vector<Scalar>{1, 0}, CubePoint{{3, 1}}, t) == PointN{2});
    CHECK(zeta(std::vector<Scalar>{0, 0}, CubePoint{{3, 2}}, t) == PointN{0});
    CHECK(zeta(std::vector<Scalar>{1, 1}, CubePoint{{1, 2}}, t) == PointN{1});
    CHECK_THROWS_AS(zeta(std::vector<Scalar>{1}, CubePoint{{1, 2}}, t), DimensionMismatch);
  }

  TEST_CASE("gamma sampling") {
    const auto t = line_template({0, 1, 2});
    const CubeSet single(3, 2, {{{1, 1}}});
    CHECK(sample_gamma(t, single, {distinctness_constraint()}, {}).tries == 1);
    const auto s = sample_gamma(t, CubeSet::full(3, 1), {distinctness_constraint()}, {});
    CHECK(s.gamma.size() == 1);
    CHECK(s.gamma[0].sign() > 0);
    CHECK_THROWS_AS(sample_gamma(t, CubeSet::full(3, 1), {always_zero()}, {}), TriesExhausted);
    GammaSampling seeded;
    seeded.seed = 99;
    CHECK(sample_gamma(t, CubeSet::full(3, 2), {distinctness_constraint()}, seeded).gamma ==
          sample_gamma(t, CubeSet::full(3, 2), {distinctness_constraint()}, seeded).gamma);
  }

  TEST_CASE("lifting full cubes") {
    const auto t = line_template({0, 1, 2});
    const auto one = lift_gallai(t, {distinctness_constraint()}, CubeSet::full(3, 1), enumerate_lines(3, 1), 1, 2, {});
    CHECK(one.x.size() == 3);
    REQUIRE(one.copies.size() == 1);
    REQUIRE(one.lift);
    CHECK(one.copies[0].map.lambda() == one.lift->gamma[0]);

    const auto two = lift_gallai(t, {distinctness_constraint()}, CubeSet::full(3, 2), enumerate_lines(3, 2), 1, 2, {});
    CHECK(two.x.size() == 9);
    CHECK(two.copies.size() == 7);
    CHECK(verify_certificate(two, false).passed());

    CHECK_THROWS_AS(
        lift_gallai(t, {distinctness_constraint()}, CubeSet::full(3, 2), enumerate_lines(3, 2), 2, 2, {}),
        PreconditionViolation);
  }

  TEST_CASE("arithmetic progression certificates") {
    const auto nine = ap_certificate(9);
    CHECK(nine.copies.size() == 16);
    const auto good = verify_certificate(nine, false);
    CHECK(good.passed());
    CHECK(good.copy_girth == 2u);
    const auto eight = verify_certificate(ap_certificate(8), false);
    CHECK_FALSE(eight.ramsey);
    REQUIRE(eight.avoiding_coloring);
    CHECK_FALSE(graph::has_monochromatic_edge(copies_as_edges(ap_certificate(8).x, ap_certificate(8).copies),
                                              *eight.avoiding_coloring));
  }

  TEST_CASE("certificate defects are detected") {
    auto cert = ap_certificate(9);
    cert.constraints.clear();
    CHECK(verify_certificate(cert, false).respects);
    cert.constraints = {always_zero()};
    const auto bad = verify_certificate(cert, false);
    CHECK_FALSE(bad.respects);
    REQUIRE(bad.violation);
    CHECK(bad.violation->constraint == "zero");

    auto wrong = ap_certificate(9);
    wrong.copies[0].points[2] = {Scalar(100)};
    CHECK_FALSE(verify_certificate(wrong, false).copies_consistent);

    auto tall = ap_certificate(9);
    tall.g = 3;
    CHECK_FALSE(verify_certificate(tall, false).girth_ok);
  }

  TEST_CASE("copy enumeration") {
    const auto t = line_template({0, 1, 2});
    CHECK(enumerate_copies(interval(1, 9), t).size() == 16);
    CHECK(enumerate_copies(std::vector<PointN>{{5}, {7}, {9}}, t).size() == 1);
    CHECK(enumerate_copies(std::vector<PointN>{{5}, {7}}, t).empty());
  }

  TEST_CASE("copy enumeration matches subset brute force") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 1 + trial % 3;
      const std::size_t m = 2 + rng() % 2;
      std::vector<PointN> tpts;
      while (tpts.size() < m) {
        PointN p;
        for (std::size_t c = 0; c < d; ++c) p.push_back(Scalar(static_cast<long>(rng() % 4)));
        if (std::find(tpts.begin(), tpts.end(), p) == tpts.end()) tpts.push_back(p);
      }
      const Template t(tpts);
      std::vector<PointN> x;
      const std::size_t size = 4 + rng() % 9;
      while (x.size() < size) {
        PointN p;
        for (std::size_t c = 0; c < d; ++c) p.push_back(Scalar(static_cast<long>(rng() % 13)));
        if (std::find(x.begin(), x.end(), p) == x.end()) x.push_back(p);
      }
      CHECK(as_sets(x, enumerate_copies(x, t)) == oracle::copies_by_subsets(x, t));
    }
  }

  TEST_CASE("proportionality") {
    const auto t = line_template({0, 1, 2});
    CHECK(proportional(t.points(), t, false));
    const std::vector<PointN> flat{{3}, {3}, {3}};
    CHECK(proportional(flat, t, true));
    CHECK_FALSE(proportional(flat, t, false));
    const std::vector<PointN> shuffled{{1}, {0}, {2}};
    CHECK_FALSE(proportional(shuffled, t, true));
    const std::vector<PointN> reversed{{4}, {2}, {0}};
    CHECK(proportional(reversed, t, true));
    CHECK_FALSE(proportional(reversed, t, false));
  }

  TEST_CASE("rebasing onto an image of the template") {
    const auto cert = ap_certificate(9);
    const auto target = line_template({10, 12, 14});
    const auto moved = rebase_certificate(cert, target);
    CHECK(moved.tmpl == target);
    for (const auto& c : moved.copies)
      for (std::size_t i = 0; i < 3; ++i) CHECK(apply_homothety(c.map, target[i]) == c.points[i]);
    CHECK(verify_certificate(moved, false).passed());
    const auto reordered = rebase_certificate(cert, line_template({2, 0, 1}));
    CHECK(verify_certificate(reordered, false).passed());
    CHECK_THROWS_AS(rebase_certificate(cert, line_template({0, 1, 3})), ProviderFailed);
  }

  TEST_CASE("providers") {
    const auto t = line_template({0, 1, 2});
    CertificateRequest req{t, {distinctness_constraint()}, 2, 2, {}, {}};
    const auto ap = IntervalProvider().provide(req);
    CHECK(ap.x.size() == 9);
    CHECK(ap.copies.size() == 16);
    CHECK(ap.tmpl == t);

    const auto hj = FullCubeProvider().provide(req);
    REQUIRE(hj.lift);
    CHECK(hj.lift->h.n() == 4);
    CHECK(verify_certificate(hj, false).passed());

    CertificateRequest k1{t, {distinctness_constraint()}, 1, 2, {}, {}};
    CHECK(SingleCopyProvider().provide(k1).copies.size() == 1);
    CHECK_THROWS_AS(SingleCopyProvider().provide(req), ProviderFailed);

    CHECK(ImportProvider(ap).provide(req).copies.size() == 16);
    auto broken = ap;
    broken.copies.erase(broken.copies.begin() + 3, broken.copies.end());
    CHECK_THROWS_AS(ImportProvider(broken).provide(req), ProviderFailed);
    CHECK_THROWS_AS(make_provider("nope"), ParseError);
    CHECK_THROWS_AS(IntervalProvider(8).provide(req), ProviderFailed);
  }
}
