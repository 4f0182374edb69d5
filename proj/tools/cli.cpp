#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "tightproj/error.hpp"
#include "tightproj/io.hpp"

namespace tightproj::cli {
namespace {

using io::Json;

enum Exit { kPass = 0, kCertificateFail = 1, kInvalid = 2, kObstructed = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::certificate_failure:
      return kCertificateFail;
    case ErrorKind::infeasible_alpha:
    case ErrorKind::obstruction:
    case ErrorKind::insufficient_truncation:
    case ErrorKind::partition_exhausted:
      return kObstructed;
    default:
      return kInvalid;
  }
}

// "auto" -> nullopt; anything else must be a finite float.
std::optional<double> parse_alpha(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw Error(ErrorKind::invalid_input, "--alpha expects a float or \"auto\", got \"" + text + "\"");
  }
  return v;
}

void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = io::dump(report);
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::invalid_input, "cannot write " + out_path);
  file << text;
}

struct Args {
  std::string path;
  std::string proj_path;
  std::string alpha = "auto";
  std::optional<double> tol;
  std::size_t n = 16;
  std::string out_path;
  std::uint64_t seed = kDefaultProbeSeed;
};

double default_tol(const SymMatrix& s) { return 1e-9 * (1.0 + s.max_abs()); }

int analyze(const Args& a, std::ostream& out) {
  const FrameSpec frame = io::frame_from_json(io::read_json_file(a.path));
  const EigenDecomp eig = jacobi_eigh(frame_operator(frame));
  const FrameBounds fb{eig.eigenvalues.front(), eig.eigenvalues.back()};
  Json report = {{"dim", frame.dim()},
                 {"M", frame.size()},
                 {"lower_bound", fb.lower},
                 {"upper_bound", fb.upper},
                 {"frame", fb.is_frame()},
                 {"verdict", fb.is_tight() ? "tight" : "not-tight"},
                 {"eigenvalues", eig.eigenvalues},
                 {"tool_version", io::kToolVersion}};
  emit(report, a.out_path, out);
  return kPass;
}

int tighten_cmd(const Args& a, std::ostream& out) {
  const FrameSpec frame = io::frame_from_json(io::read_json_file(a.path));
  TightenOptions opts;
  opts.alpha = parse_alpha(a.alpha);
  opts.tol = a.tol;
  opts.seed = a.seed;
  opts.throw_on_failure = false;
  const TightenResult r = tighten(frame, opts);
  Json report = {{"alpha", r.alpha},
                 {"already_tight", r.already_tight},
                 {"eigenvalues", r.eig.eigenvalues},
                 {"plan", io::to_json(r.plan)},
                 {"projection", io::to_json(r.projection)},
                 {"certificate", io::to_json(r.certificate)}};
  emit(report, a.out_path, out);
  return r.certificate.pass ? kPass : kCertificateFail;
}

int classify_cmd(const Args& a, std::ostream& out) {
  const SpectrumModel model = io::model_from_json(io::read_json_file(a.path));
  const Classification c = classify(model);
  Json report = io::to_json(c);
  report["model"] = io::to_json(model);
  report["tool_version"] = io::kToolVersion;
  emit(report, a.out_path, out);
  return is_projectable(c.verdict) ? kPass : kObstructed;
}

int multop_cmd(const Args& a, std::ostream& out) {
  const Json input = io::read_json_file(a.path);
  const MultOpSpec spec = io::multop_from_json(input);
  std::vector<IntervalSet> sets = io::partition_from_json(input);
  const double tol = a.tol.value_or(1e-10);
  MultOpTightening t;
  if (!sets.empty()) {
    const PartitionScheme parts = make_partition(spec, std::move(sets));
    t = tighten_blocks(spec, block_eigenvalues(spec, parts), tol);
  } else {
    t = tighten_multop(spec, a.n, tol);
  }
  Json report = io::to_json(t);
  report["symbol"] = io::to_json(spec);
  emit(report, a.out_path, out);
  return t.certificate.pass ? kPass : kCertificateFail;
}

int verify_cmd(const Args& a, std::ostream& out) {
  const FrameSpec frame = io::frame_from_json(io::read_json_file(a.path));
  const Projection p = io::projection_from_json(io::read_json_file(a.proj_path));
  if (p.dim() != frame.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "projection dim " + std::to_string(p.dim()) +
                                                   " does not match frame dim " +
                                                   std::to_string(frame.dim()));
  }
  const SymMatrix s = frame_operator(frame);
  double alpha = 0.0;
  if (const auto given = parse_alpha(a.alpha)) {
    alpha = *given;
  } else {
    if (p.rank() == 0) throw Error(ErrorKind::invalid_input, "--alpha auto needs a projection of positive rank");
    const SymMatrix psp = compress(p, s);
    double trace = 0.0;
    for (std::size_t i = 0; i < psp.dim(); ++i) trace += psp(i, i);
    alpha = trace / static_cast<double>(p.rank());
  }
  const TightnessCertificate cert =
      verify_tight(frame, p, alpha, a.tol.value_or(default_tol(s)), kDefaultRandomProbes, a.seed);
  emit(io::to_json(cert), a.out_path, out);
  return cert.pass ? kPass : kCertificateFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tight projections of frames and positive operators", "tightproj"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));
  Args a;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", a.out_path, "Write the report here instead of stdout");
  };

  CLI::App* an = app.add_subcommand("analyze", "Frame bounds and spectrum of a frame");
  an->add_option("frame", a.path, "FrameSpec JSON")->required();
  add_common(an);

  CLI::App* ti = app.add_subcommand("tighten", "Projection making the projected frame tight");
  ti->add_option("frame", a.path, "FrameSpec JSON")->required();
  ti->add_option("--alpha", a.alpha, "Frame bound to aim for, or auto");
  ti->add_option("--tol", a.tol, "Certificate tolerance (default 1e-9 * (1 + max|S|))");
  ti->add_option("--seed", a.seed, "Seed for the random probes");
  add_common(ti);

  CLI::App* cl = app.add_subcommand("classify", "Decide projectability of an eigenvalue model");
  cl->add_option("model", a.path, "SpectrumModel JSON")->required();
  add_common(cl);

  CLI::App* mo = app.add_subcommand("multop", "Tight projection for a multiplication operator");
  mo->add_option("symbol", a.path, "MultOpSpec JSON")->required();
  mo->add_option("--n", a.n, "Blocks per ball (default 16)")->check(CLI::Range(2, 64));
  mo->add_option("--tol", a.tol, "Certificate tolerance (default 1e-10)");
  add_common(mo);

  CLI::App* ve = app.add_subcommand("verify", "Check a projection against a frame");
  ve->add_option("frame", a.path, "FrameSpec JSON")->required();
  ve->add_option("projection", a.proj_path, "Projection JSON")->required();
  ve->add_option("--alpha", a.alpha, "Frame bound, or auto for trace(PSP) / rank");
  ve->add_option("--tol", a.tol, "Tolerance (default 1e-9 * (1 + max|S|))");
  ve->add_option("--seed", a.seed, "Seed for the random probes");
  add_common(ve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  if (a.tol && !(*a.tol > 0.0 && std::isfinite(*a.tol))) {
    err << "error: invalid-input: --tol must be a positive float\n";
    return kInvalid;
  }

  try {
    if (*an) return analyze(a, out);
    if (*ti) return tighten_cmd(a, out);
    if (*cl) return classify_cmd(a, out);
    if (*mo) return multop_cmd(a, out);
    return verify_cmd(a, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace tightproj::cli
