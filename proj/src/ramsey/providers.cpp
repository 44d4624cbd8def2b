#include "circlekit/providers.hpp"

#include <numeric>

#include "circlekit/errors.hpp"
#include "circlekit/hypergraph.hpp"

namespace circlekit::ramsey {

namespace {

// Re-verifies a certificate against the request; the returned certificate
// carries the request's k, g and constraints.
GallaiCertificate accept(GallaiCertificate cert, const CertificateRequest& request, const std::string& who) {
  if (!(cert.tmpl == request.tmpl)) throw ProviderFailed(who + ": certificate is for a different template");
  if (cert.k < request.k)
    throw ProviderFailed(who + ": certificate covers " + std::to_string(cert.k) + " colors, " +
                         std::to_string(request.k) + " requested");
  cert.k = request.k;
  cert.g = request.g;
  cert.constraints = request.constraints;
  const auto report = verify_certificate(cert, false, request.budget);
  if (!report.copies_consistent) throw ProviderFailed(who + ": " + report.copies_detail);
  if (!report.respects)
    throw ProviderFailed(who + ": constraint " + report.violation->constraint + " vanishes on X");
  if (!report.girth_ok)
    throw ProviderFailed(who + ": copy family has Berge girth " + std::to_string(*report.copy_girth) + " < " +
                         std::to_string(request.g));
  if (!report.ramsey) throw ProviderFailed(who + ": found a coloring of X with no monochromatic copy");
  return cert;
}

struct RamseyCube {
  CubeSet h;
  std::vector<CombinatorialLine> lines;
};

RamseyCube smallest_ramsey_cube(const CertificateRequest& request, int max_n, const std::string& who) {
  const int m = static_cast<int>(request.tmpl.size());
  if (m < 2) throw ProviderFailed(who + ": template needs at least two points");
  for (int n = 1; n <= max_n; ++n) {
    auto h = CubeSet::full(m, n);
    auto lines = enumerate_lines(m, n);
    if (verify_ramsey(h, lines, request.k, request.budget).ramsey) return {std::move(h), std::move(lines)};
  }
  throw ProviderFailed(who + ": no full cube [" + std::to_string(m) + "]^n with n <= " + std::to_string(max_n) +
                       " is " + std::to_string(request.k) + "-Ramsey");
}

GallaiCertificate lift_or_fail(const CertificateRequest& request, const RamseyCube& cube, const std::string& who) {
  try {
    return lift_gallai(request.tmpl, request.constraints, cube.h, cube.lines, request.k, request.g, request.sampling,
                       request.budget);
  } catch (const PreconditionViolation& e) {
    throw ProviderFailed(who + ": " + e.what());
  } catch (const TriesExhausted& e) {
    throw ProviderFailed(who + ": " + e.what());
  }
}

}  // namespace

GallaiCertificate FullCubeProvider::provide(const CertificateRequest& request) const {
  const auto cube = smallest_ramsey_cube(request, max_n_, name());
  return accept(lift_or_fail(request, cube, name()), request, name());
}

GallaiCertificate SparsifyProvider::provide(const CertificateRequest& request) const {
  auto cube = smallest_ramsey_cube(request, max_n_, name());
  try {
    cube.h = sparsify(cube.h, cube.lines, request.g, request.k, request.budget).kept;
  } catch (const SurrogateFailed& e) {
    throw ProviderFailed(name() + ": " + e.what());
  }
  return accept(lift_or_fail(request, cube, name()), request, name());
}

GallaiCertificate ImportProvider::provide(const CertificateRequest& request) const {
  return accept(rebase_certificate(cert_, request.tmpl), request, name());
}

GallaiCertificate IntervalProvider::provide(const CertificateRequest& request) const {
  const auto& t = request.tmpl;
  if (t.dimension() != 1 || t.size() < 2) throw ProviderFailed("ap-1d: needs a one-dimensional template of size >= 2");

  // Normalize to coprime non-negative integers u_i = (t_i - min) * s.
  Scalar lo = t[0][0];
  for (const auto& p : t.points()) lo = std::min(lo, p[0]);
  mpz_class den_lcm = 1;
  for (const auto& p : t.points()) den_lcm = lcm(den_lcm, (p[0] - lo).raw().get_den());
  mpz_class num_gcd = 0;
  for (const auto& p : t.points()) num_gcd = gcd(num_gcd, ((p[0] - lo) * Scalar(mpq_class(den_lcm))).raw().get_num());
  const Scalar scale = Scalar(mpq_class(den_lcm, num_gcd));
  std::vector<PointN> normalized;
  Scalar span;
  for (const auto& p : t.points()) {
    normalized.push_back({(p[0] - lo) * scale});
    span = std::max(span, normalized.back()[0]);
  }
  const Template integer_template(normalized);

  for (std::size_t n = static_cast<std::size_t>(span.to_double()) + 1; n <= max_n_; ++n) {
    std::vector<PointN> x;
    for (std::size_t i = 1; i <= n; ++i) x.push_back({Scalar(i)});
    auto copies = enumerate_copies(x, integer_template);
    const auto edges = copies_as_edges(x, copies);
    if (graph::find_avoiding_coloring(x.size(), edges, request.k, request.budget).coloring) continue;
    GallaiCertificate cert{integer_template, std::move(x), std::move(copies), request.k, request.g,
                           request.constraints, std::nullopt};
    return accept(rebase_certificate(cert, t), request, name());
  }
  throw ProviderFailed("ap-1d: every interval up to " + std::to_string(max_n_) + " has an avoiding " +
                       std::to_string(request.k) + "-coloring");
}

GallaiCertificate SingleCopyProvider::provide(const CertificateRequest& request) const {
  GallaiCertificate cert{request.tmpl, request.tmpl.points(), {}, request.k, request.g, request.constraints,
                         std::nullopt};
  cert.copies.push_back({geom::HomotheticMap::identity(request.tmpl.dimension()), request.tmpl.points()});
  return accept(std::move(cert), request, name());
}

std::unique_ptr<GallaiProvider> make_provider(const std::string& mode, int max_n) {
  if (mode == "hj-lift") return std::make_unique<FullCubeProvider>(max_n);
  if (mode == "sparsify") return std::make_unique<SparsifyProvider>(max_n);
  if (mode == "ap-1d") return std::make_unique<IntervalProvider>();
  if (mode == "single") return std::make_unique<SingleCopyProvider>();
  throw ParseError("unknown provider mode '" + mode + "'");
}

}  // namespace circlekit::ramsey
