// circlekit: build, certify, verify and render circle constellations.

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circlekit/builders.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/io.hpp"
#include "circlekit/providers.hpp"

namespace {

using namespace circlekit;
using io::json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3 };

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t budget = 5'000'000;
  std::string out;

  graph::SearchBudget search() const { return {budget}; }
  io::Workspace workspace() const {
    return io::Workspace(out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out));
  }
};

// Everything needed to rerun a command: its name, every option as given, and
// the global settings.
json params_of(const CLI::App& sub, const Globals& g) {
  json options = json::object();
  for (const auto* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    options[opt->get_name()] = opt->results();
  }
  return {{"command", sub.get_name()}, {"options", options}, {"seed", g.seed}, {"budget", g.budget}};
}

std::optional<geom::CosAngle> angle_from(const std::string& cos2) {
  if (cos2.empty()) return std::nullopt;
  const auto value = Scalar::parse(cos2);
  if (value.sign() < 0 || value > Scalar(1)) throw ParseError("cos^2 must lie in [0, 1], got " + cos2);
  return geom::CosAngle::from_cos2(value);
}

struct Checked {
  json report;
  int code;
};

Checked check_constellation(const construct::Constellation& c, std::size_t g, int k, const geom::CosAngle& angle,
                            const Globals& globals) {
  const auto report = construct::verify_constellation(c, g, k, angle, globals.search());
  const auto structure = construct::verify_structure(c);
  Checked out{io::report_to_json(report, structure, globals.search()), kPass};
  const auto& chi = report.chromatic;
  std::cout << "circles=" << report.circles << " edges=" << report.edges.size() << " girth="
            << (report.girth ? std::to_string(*report.girth) : "inf") << " chi"
            << (chi.exact ? "=" + std::to_string(chi.upper)
                          : " in [" + std::to_string(chi.lower) + "," + std::to_string(chi.upper) + "]")
            << " (need girth>=" << g << ", chi>=" << k << ")\n";
  const auto name_pairs = [](const char* what, const std::vector<construct::PairIssue>& issues) {
    for (std::size_t i = 0; i < issues.size() && i < 10; ++i)
      std::cout << "  " << what << ": circles " << issues[i].first << " and " << issues[i].second << " ("
                << issues[i].kind << ")\n";
    if (issues.size() > 10) std::cout << "  ... " << issues.size() - 10 << " more\n";
  };
  name_pairs("concentric", report.concentric);
  name_pairs("internal tangency", report.internal);
  name_pairs("shared tangency point", report.triple);
  name_pairs("structure", structure.deviations);
  if (report.passed() && structure.passed()) {
    std::cout << "PASS\n";
  } else if (!report.chromatic_ok() && !chi.exact && report.concentric.empty() && report.internal.empty() &&
             report.triple.empty() && report.girth_ok() && structure.passed()) {
    std::cout << "BUDGET: chromatic number not settled within " << globals.budget << " search nodes\n";
    out.code = kBudget;
  } else {
    std::cout << "FAIL\n";
    out.code = kFail;
  }
  return out;
}

int write_constellation(const construct::Constellation& c, const std::string& name, const CLI::App& sub,
                        const Globals& globals) {
  const auto ws = globals.workspace();
  ws.output(name);  // validate before the (possibly long) verification
  auto checked = check_constellation(c, c.meta.g, c.meta.k, c.meta.angle, globals);
  ws.write_json(name, io::to_json(io::ConstellationFile{c, params_of(sub, globals), checked.report}));
  std::cout << "wrote " << ws.output(name).string() << "\n";
  return checked.code;
}

// ---- template sources for `gallai` ----

struct TemplateSource {
  std::string file;
  std::vector<std::string> points;
  int m = 0;
};

struct LoadedTemplate {
  ramsey::Template tmpl;
  bool from_constellation = false;
};

LoadedTemplate load_template(const TemplateSource& src) {
  const int given = !src.file.empty() + !src.points.empty() + (src.m > 0);
  if (given != 1) throw ParseError("give exactly one of --template, --points, --m");
  if (src.m > 0) {
    std::vector<PointN> pts;
    for (int i = 0; i < src.m; ++i) pts.push_back({Scalar(i)});
    return {ramsey::Template(std::move(pts))};
  }
  if (!src.points.empty()) {
    std::vector<PointN> pts;
    for (const auto& token : src.points) {
      PointN p;
      std::stringstream ss(token);
      for (std::string coord; std::getline(ss, coord, ',');) p.push_back(Scalar::parse(coord));
      pts.push_back(std::move(p));
    }
    return {ramsey::Template(std::move(pts))};
  }
  const auto j = io::read_json(src.file);
  if (j.contains("circles"))
    return {construct::extract_template(io::constellation_from_json(j).constellation), true};
  const auto& body = j.contains("template") ? j["template"] : j;
  if (!body.contains("points")) throw ParseError("template file needs 'points' or 'circles'");
  std::vector<PointN> pts;
  for (const auto& p : body["points"]) pts.push_back(io::point_from_json(p));
  return {ramsey::Template(std::move(pts))};
}

std::unique_ptr<ramsey::GallaiProvider> provider_for(const std::string& mode, const std::string& cert_file,
                                                     int max_n) {
  if (mode == "import") {
    if (cert_file.empty()) throw ParseError("--mode import needs --cert");
    return std::make_unique<ramsey::ImportProvider>(
        io::certificate_from_json(io::read_json(cert_file)).certificate);
  }
  if (!cert_file.empty()) throw ParseError("--cert is only used with --mode import");
  return ramsey::make_provider(mode, max_n);
}

int run(int argc, char** argv) {
  CLI::App app{"Exact circle constellations with large girth and chromatic number"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--budget", globals.budget, "Search-node budget for coloring searches")->capture_default_str();
  app.add_option("--out", globals.out, "Directory for output files");

  // build-base
  auto* base_cmd = app.add_subcommand("build-base", "Odd cycle C_n as a contact graph");
  int base_n = 0;
  std::string base_cos2, base_name;
  base_cmd->add_option("--n", base_n, "Odd cycle length >= 3")->required();
  base_cmd->add_option("--theta-cos2", base_cos2, "cos^2 of the intersection angle (default: tangency)");
  base_cmd->add_option("-o,--output", base_name, "Output file (default base_n<N>.json)");

  // gallai
  auto* gallai_cmd = app.add_subcommand("gallai", "Produce and verify a Gallai certificate");
  std::string mode, cert_in, gallai_name;
  TemplateSource src;
  int gallai_k = 2, max_n = 4;
  std::size_t gallai_g = 2;
  std::vector<std::string> constraint_names;
  gallai_cmd->add_option("--mode", mode, "hj-lift, sparsify, ap-1d, import or single")->required();
  gallai_cmd->add_option("--template", src.file, "Template JSON, or a constellation whose circles become points");
  gallai_cmd->add_option("--points", src.points, "Template points, coordinates comma separated");
  gallai_cmd->add_option("--m", src.m, "Template {0, 1, ..., m-1} on the line");
  gallai_cmd->add_option("--cert", cert_in, "Certificate to import");
  gallai_cmd->add_option("--k", gallai_k, "Number of colors")->capture_default_str();
  gallai_cmd->add_option("--g", gallai_g, "Required Berge girth of the copy family")->capture_default_str();
  gallai_cmd->add_option("--constraints", constraint_names, "delta, f_a, f_b (default delta; all three for circles)");
  gallai_cmd->add_option("--max-n", max_n, "Largest cube dimension tried by hj-lift/sparsify")->capture_default_str();
  gallai_cmd->add_option("-o,--output", gallai_name, "Output file (default cert.json)");

  // build-step
  auto* step_cmd = app.add_subcommand("build-step", "One induction step on a base constellation");
  std::string step_base, step_cert, step_mode = "hj-lift", step_cos2, step_name;
  std::size_t step_g = 3;
  int step_k = 2;
  step_cmd->add_option("--base", step_base, "Base constellation file")->required();
  step_cmd->add_option("--cert", step_cert, "Certificate file (re-verified before use)");
  step_cmd->add_option("--provider", step_mode, "Provider when no certificate is given")->capture_default_str();
  step_cmd->add_option("--max-n", max_n, "Largest cube dimension tried by hj-lift/sparsify");
  step_cmd->add_option("--g", step_g, "Target girth")->capture_default_str();
  step_cmd->add_option("--k", step_k, "Colors the certificate defeats; output has chi >= k + 1")
      ->capture_default_str();
  step_cmd->add_option("--theta-cos2", step_cos2, "cos^2 of the angle for a theta step (default: tangency step)");
  step_cmd->add_option("-o,--output", step_name, "Output file (default step.json)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Re-verify a constellation file");
  std::string verify_in, verify_cos2, report_name;
  std::optional<std::size_t> verify_g;
  std::optional<int> verify_k;
  verify_cmd->add_option("file", verify_in, "Constellation file")->required();
  verify_cmd->add_option("--g", verify_g, "Girth to require (default: from the file)");
  verify_cmd->add_option("--k", verify_k, "Chromatic number to require (default: from the file)");
  verify_cmd->add_option("--theta-cos2", verify_cos2, "Angle to judge by (default: from the file)");
  verify_cmd->add_option("--report", report_name, "Also write the report here");

  // render
  auto* render_cmd = app.add_subcommand("render", "Draw a constellation as SVG");
  std::string render_in, svg_name, highlight;
  io::RenderOptions render_opts;
  render_cmd->add_option("file", render_in, "Constellation file")->required();
  render_cmd->add_option("-o,--output", svg_name, "SVG file (default: input name with .svg)");
  render_cmd->add_option("--highlight", highlight, "What to highlight: matchings")->check(CLI::IsMember({"matchings"}));
  render_cmd->add_flag("--mark-tangency", render_opts.mark_tangency_points, "Dot every tangency point");
  render_cmd->add_option("--width", render_opts.width, "Image width in pixels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*base_cmd) {
    if (base_n < 3 || base_n % 2 == 0) throw PreconditionViolation("--n must be odd and at least 3");
    const auto angle = angle_from(base_cos2).value_or(geom::CosAngle::tangency());
    auto c = construct::base_odd_cycle(base_n, angle);
    c.meta.seed = globals.seed;
    return write_constellation(c, base_name.empty() ? "base_n" + std::to_string(base_n) + ".json" : base_name,
                               *base_cmd, globals);
  }

  if (*gallai_cmd) {
    const auto name = gallai_name.empty() ? std::string("cert.json") : gallai_name;
    const auto ws = globals.workspace();
    ws.output(name);
    const auto loaded = load_template(src);
    ramsey::ConstraintFamily constraints;
    if (!constraint_names.empty())
      constraints = construct::constraints_by_name(constraint_names);
    else if (loaded.from_constellation)
      constraints = construct::tangency_constraints();
    else
      constraints = {ramsey::distinctness_constraint()};
    const auto provider = provider_for(mode, cert_in, max_n);
    ramsey::GammaSampling sampling;
    sampling.seed = globals.seed;
    const auto cert =
        provider->provide({loaded.tmpl, std::move(constraints), gallai_k, gallai_g, sampling, globals.search()});
    const auto report = ramsey::verify_certificate(cert, false, globals.search());
    std::cout << "template size=" << cert.tmpl.size() << " |X|=" << cert.x.size() << " copies=" << cert.copies.size()
              << " k=" << cert.k << " g=" << cert.g
              << " girth=" << (report.copy_girth ? std::to_string(*report.copy_girth) : "inf") << "\n"
              << (report.passed() ? "PASS" : "FAIL") << "\n";
    ws.write_json(name, io::to_json(io::CertificateFile{cert, params_of(*gallai_cmd, globals),
                                                        io::report_to_json(report, false, globals.search())}));
    std::cout << "wrote " << ws.output(name).string() << "\n";
    return report.passed() ? kPass : kFail;
  }

  if (*step_cmd) {
    const auto name = step_name.empty() ? std::string("step.json") : step_name;
    globals.workspace().output(name);
    const auto base = io::constellation_from_json(io::read_json(step_base)).constellation;
    const auto theta = angle_from(step_cos2);
    construct::StepOptions options;
    options.sampling.seed = globals.seed;
    options.budget = globals.search();
    std::unique_ptr<ramsey::GallaiProvider> provider;
    if (!step_cert.empty()) {
      auto cert = io::certificate_from_json(io::read_json(step_cert)).certificate;
      if (!theta || theta->is_tangency()) {
        try {
          ramsey::rebase_certificate(cert, construct::extract_template(base));
        } catch (const ProviderFailed&) {
          throw PreconditionViolation("certificate template does not match the base circles");
        }
      }
      provider = std::make_unique<ramsey::ImportProvider>(cert);
    } else {
      provider = ramsey::make_provider(step_mode, max_n);
    }
    construct::Constellation out;
    if (theta && !theta->is_tangency()) {
      if (!(base.meta.angle == *theta)) throw PreconditionViolation("base was built for a different angle");
      construct::ThetaOptions theta_options;
      theta_options.step = options;
      out = construct::induction_step_theta(base, *theta, step_g, step_k, *provider, theta_options);
    } else {
      if (!base.meta.angle.is_tangency()) throw PreconditionViolation("base is not a tangency constellation");
      out = construct::induction_step_tangency(base, step_g, step_k, *provider, options);
    }
    std::cout << "step: " << base.size() << " -> " << out.size() << " circles\n";
    return write_constellation(out, name, *step_cmd, globals);
  }

  if (*verify_cmd) {
    const auto file = io::constellation_from_json(io::read_json(verify_in));
    const auto& meta = file.constellation.meta;
    const auto angle = angle_from(verify_cos2).value_or(meta.angle);
    auto checked = check_constellation(file.constellation, verify_g.value_or(meta.g), verify_k.value_or(meta.k),
                                       angle, globals);
    if (!report_name.empty()) globals.workspace().write_json(report_name, checked.report);
    if (file.report && (*file.report)["g"] == checked.report["g"] && (*file.report)["k"] == checked.report["k"] &&
        (*file.report)["budget"] == checked.report["budget"] && angle == meta.angle) {
      if (*file.report == checked.report) {
        std::cout << "embedded report reproduced\n";
      } else {
        std::cout << "embedded report differs from the recomputed one\n";
        return kFail;
      }
    }
    return checked.code;
  }

  if (*render_cmd) {
    const auto file = io::constellation_from_json(io::read_json(render_in));
    render_opts.highlight_matchings = highlight == "matchings";
    auto name = svg_name;
    if (name.empty()) name = std::filesystem::path(render_in).filename().replace_extension(".svg").string();
    globals.workspace().write_text(name, io::render_svg(file.constellation, render_opts));
    std::cout << "wrote " << globals.workspace().output(name).string() << "\n";
    return kPass;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const circlekit::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const circlekit::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const circlekit::InvalidPath& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const circlekit::PreconditionViolation& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const circlekit::DegenerateInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const circlekit::DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const circlekit::Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
