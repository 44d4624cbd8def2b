#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "circlekit/gallai.hpp"

namespace circlekit::ramsey {

/// What an induction step asks of a Gallai provider.
struct CertificateRequest {
  Template tmpl;
  ConstraintFamily constraints;
  int k = 1;
  std::size_t g = 2;
  GammaSampling sampling{};
  graph::SearchBudget budget{};
};

/// Source of Gallai certificates. Every implementation re-verifies its
/// output against the request before returning and throws ProviderFailed
/// when it cannot meet it; BudgetExceeded propagates unchanged.
class GallaiProvider {
 public:
  virtual ~GallaiProvider() = default;
  virtual std::string name() const = 0;
  virtual GallaiCertificate provide(const CertificateRequest& request) const = 0;
};

/// Smallest full cube [m]^n (n <= max_n) that is k-Ramsey, lifted through
/// zeta. No sparsity guarantee beyond what the cube's lines happen to have.
class FullCubeProvider : public GallaiProvider {
 public:
  explicit FullCubeProvider(int max_n = 4) : max_n_(max_n) {}
  std::string name() const override { return "hj-lift"; }
  GallaiCertificate provide(const CertificateRequest& request) const override;

 private:
  int max_n_;
};

/// Full cube followed by the local-repair sparsification search.
class SparsifyProvider : public GallaiProvider {
 public:
  explicit SparsifyProvider(int max_n = 4) : max_n_(max_n) {}
  std::string name() const override { return "sparsify"; }
  GallaiCertificate provide(const CertificateRequest& request) const override;

 private:
  int max_n_;
};

/// Hands out a stored certificate, rebased onto the requested template.
class ImportProvider : public GallaiProvider {
 public:
  explicit ImportProvider(GallaiCertificate cert) : cert_(std::move(cert)) {}
  std::string name() const override { return "import"; }
  GallaiCertificate provide(const CertificateRequest& request) const override;

 private:
  GallaiCertificate cert_;
};

/// One-dimensional templates only: X = {1, ..., N} for the least N <= max_n
/// such that every k-coloring has a monochromatic copy of the template
/// (normalized to coprime integers), with all copies in X as the family.
class IntervalProvider : public GallaiProvider {
 public:
  explicit IntervalProvider(std::size_t max_n = 64) : max_n_(max_n) {}
  std::string name() const override { return "ap-1d"; }
  GallaiCertificate provide(const CertificateRequest& request) const override;

 private:
  std::size_t max_n_;
};

/// X is the template itself with the single identity copy. Valid for k = 1.
class SingleCopyProvider : public GallaiProvider {
 public:
  std::string name() const override { return "single"; }
  GallaiCertificate provide(const CertificateRequest& request) const override;
};

/// Provider by mode name ("hj-lift", "sparsify", "ap-1d", "single").
/// Throws ParseError for unknown names; "import" needs a certificate and is
/// built directly.
std::unique_ptr<GallaiProvider> make_provider(const std::string& mode, int max_n = 4);

}  // namespace circlekit::ramsey
