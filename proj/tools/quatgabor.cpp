// quatgabor command-line front end. Exit codes: 0 pass, 1 verification failure, 2 usage / IO error.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "quatgabor/quatgabor.hpp"

namespace fs = std::filesystem;
using namespace quatgabor;

namespace {

struct UsageError {
  std::string flag;
  std::string message;
};

double parse_double(const std::string& flag, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw UsageError{flag, "expected a number, got '" + std::string(text) + "'"};
  return v;
}

std::array<std::string_view, 2> split_pair(const std::string& flag, std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
    throw UsageError{flag, "expected two comma-separated values, got '" + std::string(text) + "'"};
  return {text.substr(0, comma), text.substr(comma + 1)};
}

std::array<double, 2> parse_real_pair(const std::string& flag, const std::string& text) {
  const auto p = split_pair(flag, text);
  return {parse_double(flag, p[0]), parse_double(flag, p[1])};
}

Shift parse_shift(const std::string& flag, const std::string& text) {
  const auto p = split_pair(flag, text);
  Shift s;
  for (int k = 0; k < 2; ++k) {
    std::int64_t v = 0;
    const auto* end = p[k].data() + p[k].size();
    const auto [ptr, ec] = std::from_chars(p[k].data(), end, v);
    if (ec != std::errc() || ptr != end) throw UsageError{flag, "expected integer indices, got '" + text + "'"};
    (k == 0 ? s.s1 : s.s2) = v;
  }
  return s;
}

// gaussian:<a> is e^{-pi a |x|^2} on a centered n x n grid with h = 1/sqrt(a n),
// so spatial and frequency extents match.
struct SignalSource {
  QSignal2D signal;
  std::optional<double> gaussian_a;
};

SignalSource load_signal(const std::string& flag, const std::string& text, std::size_t n) {
  if (text.starts_with("gaussian:")) {
    const double a = parse_double(flag, std::string_view(text).substr(9));
    if (!(a > 0.0)) throw UsageError{flag, "gaussian parameter must be positive"};
    if (n < 2) throw UsageError{"--n", "grid size must be at least 2"};
    const double h = 1.0 / std::sqrt(a * static_cast<double>(n));
    const GridSpec spec(n, n, h, h, true);
    auto f = sample([a](double x1, double x2) { return Quaternion(std::exp(-std::numbers::pi * a * (x1 * x1 + x2 * x2))); },
                    spec);
    return {std::move(f), a};
  }
  if (text.starts_with("file:")) return {io::read_qsig(text.substr(5)), std::nullopt};
  throw UsageError{flag, "expected gaussian:<a> or file:<path>, got '" + text + "'"};
}

Window load_window(const std::string& flag, const std::string& text, const GridSpec& spec) {
  if (text == "box") return make_window(BoxWindow{}, spec);
  if (text == "haar") return make_window(Haar2DWindow{}, spec);
  if (text.starts_with("gaussian:")) {
    const double sigma = parse_double(flag, std::string_view(text).substr(9));
    if (!(sigma > 0.0)) throw UsageError{flag, "gaussian sigma must be positive"};
    return make_window(GaussianWindow{sigma}, spec);
  }
  if (text.starts_with("file:")) {
    auto samples = io::read_qsig(text.substr(5));
    if (samples.spec() != spec) throw UsageError{flag, "window file grid differs from the signal grid"};
    return make_window(CustomWindow{std::move(samples)}, spec);
  }
  throw UsageError{flag, "expected box, haar, gaussian:<sigma> or file:<path>, got '" + text + "'"};
}

std::string format_quaternion(const Quaternion& q) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17gi, %.17gj, %.17gk)", q.w, q.x, q.y, q.z);
  return buf;
}

void emit(const io::ReportDocument& doc, const std::string& path) {
  std::cout << doc.str();
  if (!path.empty()) io::detail::write_file(path, doc.str());
}

int verdict_code(const io::ReportDocument& doc) { return doc.verdict() ? 0 : 1; }

// ---------------------------------------------------------------------------

struct QftArgs {
  std::string direction;
  std::string in;
  std::string out;
  bool brute = false;
  bool fast = false;
};

int run_qft(const QftArgs& a) {
  if (a.direction == "fwd") {
    const auto f = io::read_qsig(a.in);
    io::write_qsig(a.out, a.brute ? dqft_brute(f) : dqft_fast(f));
  } else {
    const auto F = io::read_qspectrum(a.in);
    io::write_qsig(a.out, a.brute ? idqft_brute(F) : idqft(F));
  }
  return 0;
}

struct GqftArgs {
  std::string in;
  std::string window;
  std::string b = "0,0";
  std::string spectrogram;
  std::string out;
  std::string out_dir;
};

int run_gqft(const GqftArgs& a) {
  if (a.spectrogram.empty() && a.out.empty() && a.out_dir.empty())
    throw UsageError{"--spectrogram", "nothing to write; give --spectrogram, --out or --out-dir"};
  const auto f = io::read_qsig(a.in);
  const Window w = load_window("--window", a.window, f.spec());
  const Shift b = parse_shift("--b", a.b);
  if (b.s1 < 0 || b.s2 < 0 || static_cast<std::size_t>(b.s1) >= f.n1() || static_cast<std::size_t>(b.s2) >= f.n2())
    throw UsageError{"--b", "shift lies outside the " + std::to_string(f.n1()) + "x" + std::to_string(f.n2()) + " grid"};

  io::ReportDocument doc("gqft");
  doc.add("window", a.window);
  doc.add("window_energy", w.energy());
  doc.add_grid(f.spec());

  if (!a.spectrogram.empty() || !a.out.empty()) {
    const auto slice = gqft_slice(f, w, b);
    if (!a.out.empty()) io::write_qsig(a.out, slice);
    if (!a.spectrogram.empty()) io::export_heatmap(centered_layout(spectrogram(slice)), a.spectrogram);
    doc.add("b1", static_cast<std::size_t>(b.s1));
    doc.add("b2", static_cast<std::size_t>(b.s2));
    doc.add("slice_energy", spectrum_energy(slice));
  }
  if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    double energy = 0.0;
    for_each_slice(f, w, [&](Shift s, const QSpectrum2D& slice) {
      energy += spectrum_energy(slice) * f.spec().cell_area();
      io::write_qsig((fs::path(a.out_dir) / ("b_" + std::to_string(s.s1) + "_" + std::to_string(s.s2) + ".qsig")).string(),
                     slice);
    });
    io::ReportDocument manifest("gqft_manifest");
    manifest.add("window", a.window);
    manifest.add("window_energy", w.energy());
    manifest.add_grid(f.spec());
    manifest.add("slices", f.size());
    manifest.add("energy", energy);
    io::detail::write_file((fs::path(a.out_dir) / "manifest.txt").string(), manifest.str());
    doc.add("energy", energy);
  }
  std::cout << doc.str();
  return 0;
}

struct ReconstructArgs {
  std::string dir;
  std::string window;
  std::string out;
};

int run_reconstruct(const ReconstructArgs& a) {
  const fs::path dir(a.dir);
  const auto manifest = io::parse_report(io::detail::read_file((dir / "manifest.txt").string()));
  const auto field = [&](const std::string& key) {
    const auto it = manifest.find(key);
    if (it == manifest.end()) throw error(errc::io, "manifest lacks '" + key + "'");
    return it->second;
  };
  const auto count = [&](const std::string& key) {
    std::size_t v = 0;
    const std::string s = field(key);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw error(errc::io, "manifest field '" + key + "' is malformed");
    return v;
  };
  const GridSpec spec(count("n1"), count("n2"), parse_double("manifest", field("h1")),
                      parse_double("manifest", field("h2")), field("centered") == "true");

  const Window w = load_window("--window", a.window, spec);
  const double recorded = parse_double("manifest", field("window_energy"));
  if (std::fabs(w.energy() - recorded) > 1e-12 * recorded)
    throw UsageError{"--window", "window energy " + std::to_string(w.energy()) + " does not match the manifest (" +
                                     std::to_string(recorded) + ")"};

  std::vector<QSpectrum2D> slices;
  slices.reserve(spec.size());
  for (std::size_t b1 = 0; b1 < spec.n1; ++b1)
    for (std::size_t b2 = 0; b2 < spec.n2; ++b2) {
      auto s = io::read_qspectrum((dir / ("b_" + std::to_string(b1) + "_" + std::to_string(b2) + ".qsig")).string());
      if (s.grid() != spec) throw error(errc::shape_mismatch, "slice grid differs from the manifest");
      slices.push_back(std::move(s));
    }
  const GaborTransform g(spec, std::move(slices), w.energy());
  io::write_qsig(a.out, reconstruct(g, w));
  return 0;
}

struct VerifyArgs {
  std::string scheme;
  std::string signal;
  std::string window;
  std::size_t n = 64;
  double t = default_log_t;
  int axis = 1;
  std::string y = "1,1";
  std::string report;
  std::optional<double> tol;
};

int run_verify(const VerifyArgs& a) {
  const auto src = load_signal("--signal", a.signal, a.n);
  const auto& f = src.signal;
  const Axis k = [&] {
    if (a.axis != 1 && a.axis != 2) throw UsageError{"--axis", "axis must be 1 or 2"};
    return axis_from_int(a.axis);
  }();
  const bool needs_window = a.scheme == "plancherel" || a.scheme == "shift" || a.scheme == "reflect";
  const std::string window_text = a.window.empty() && needs_window ? "gaussian:1" : a.window;
  std::optional<Window> w;
  if (!window_text.empty()) w = load_window("--window", window_text, f.spec());

  io::ReportDocument doc(a.scheme);
  doc.add("signal", a.signal);
  doc.add("window", window_text.empty() ? "none" : window_text);
  doc.add_grid(f.spec());
  const auto tol_or = [&](double d) { return a.tol.value_or(d); };
  bool pass = true;

  if (a.scheme == "plancherel") {
    const double tol = tol_or(1e-12);
    const double ef = l2_norm_sq(f);
    const double qft_rel = std::fabs(spectrum_energy(dqft(f)) - ef) / ef;
    const double expected = ef * w->energy();
    const double gqft_rel = std::fabs(gqft_energy(f, *w) - expected) / expected;
    doc.add("signal_energy", ef);
    doc.add("window_energy", w->energy());
    doc.add("qft_rel_error", qft_rel);
    doc.add("gqft_rel_error", gqft_rel);
    doc.add("tolerance", tol);
    pass = qft_rel < tol && gqft_rel < tol;
  } else if (a.scheme == "inversion") {
    const double tol = tol_or(1e-11);
    const double err = max_abs_diff(idqft(dqft(f)), f);
    doc.add("qft_max_error", err);
    pass = err < tol;
    if (w) {
      const double rec = max_abs_diff(reconstruct(gqft_full(f, *w), *w), f);
      doc.add("reconstruction_max_error", rec);
      pass = pass && rec < tol_or(1e-10);
    }
    doc.add("tolerance", tol);
  } else if (a.scheme == "shift") {
    const double tol = tol_or(1e-11);
    const Shift y = parse_shift("--y", a.y);
    const auto r = shift_covariance_check(f, *w, y);
    doc.add("y1", static_cast<int>(y.s1));
    doc.add("y2", static_cast<int>(y.s2));
    doc.add("max_deviation", r.max_deviation);
    doc.add("points", r.points);
    doc.add("tolerance", tol);
    pass = r.max_deviation < tol;
  } else if (a.scheme == "reflect") {
    const double tol = tol_or(1e-11);
    const auto r = reflection_check(f, *w);
    doc.add("max_deviation", r.max_deviation);
    doc.add("points", r.points);
    doc.add("tolerance", tol);
    pass = r.max_deviation < tol;
  } else if (a.scheme == "heisenberg") {
    const double tol = tol_or(default_grid_tolerance);
    doc.add("axis", a.axis);
    if (w) {
      const auto g = heisenberg_gqft(f, *w, k);
      doc.add("lhs", g.heisenberg.lhs);
      doc.add("rhs", g.heisenberg.rhs);
      doc.add("ratio", g.heisenberg.ratio);
      doc.add("window_lemma_rel_gap", g.window_lemma_rel_gap);
      doc.add("cauchy_schwarz_holds", g.cauchy_schwarz_holds);
      pass = g.heisenberg.holds(tol) && g.window_lemma_rel_gap < 1e-10 && g.cauchy_schwarz_holds;
    } else {
      const auto r = heisenberg_qft(f, k);
      doc.add("lhs", r.lhs);
      doc.add("rhs", r.rhs);
      doc.add("ratio", r.ratio);
      pass = r.holds(tol);
    }
    doc.add("tolerance", tol);
  } else if (a.scheme == "log") {
    if (!(a.t > 0.0)) throw UsageError{"--t", "t must be positive"};
    const double tol = tol_or(default_grid_tolerance);
    const auto r = w ? log_gqft(f, *w, a.t) : log_qft(f, a.t);
    doc.add("t", r.t);
    doc.add("D", r.D);
    doc.add("lhs", r.lhs);
    doc.add("rhs", r.rhs);
    doc.add("slack", r.slack);
    if (w) {
      doc.add("rhs_intermediate", r.rhs_intermediate);
      doc.add("slack_intermediate", r.slack_intermediate);
      doc.add("intermediate_form_holds", r.slack_intermediate >= 0.0);
      doc.add("window_lemma_rel_gap", r.window_lemma_rel_gap);
    }
    doc.add("tolerance", tol);
    pass = r.holds(tol);
  } else {  // deriv
    doc.add("axis", a.axis);
    DerivativeReport r;
    double tol = 0.0;
    if (src.gaussian_a) {
      const double ga = *src.gaussian_a;
      const auto d = sample(
          [&](double x1, double x2) {
            const double g = std::exp(-std::numbers::pi * ga * (x1 * x1 + x2 * x2));
            return Quaternion(-2.0 * std::numbers::pi * ga * (k == Axis::one ? x1 : x2) * g);
          },
          f.spec());
      r = derivative_identity_check(f, d, k);
      tol = tol_or(1e-8);
      doc.add("derivative", "analytic");
    } else {
      r = derivative_identity_check(f, k);
      tol = tol_or(1e-3);
      doc.add("derivative", "central_difference");
    }
    doc.add("frequency_side", r.frequency_side);
    doc.add("derivative_side", r.derivative_side);
    doc.add("rel_gap", r.rel_gap);
    doc.add("tolerance", tol);
    pass = r.rel_gap < tol;
  }
  doc.set_verdict(pass);
  emit(doc, a.report);
  return verdict_code(doc);
}

struct OracleArgs {
  std::string example;
  std::string omega = "0,0";
  std::string b = "0,0";
  bool compare = false;
  std::size_t resolution = 0;
  std::string report;
};

int run_oracle(const OracleArgs& a) {
  constexpr double tol = 1e-6;
  const auto omega = parse_real_pair("--omega", a.omega);
  const auto b = parse_real_pair("--b", a.b);
  if (a.resolution != 0 && a.resolution % 2 != 0) throw UsageError{"--resolution", "resolution must be even"};
  io::ReportDocument doc(a.example);
  doc.add("omega1", omega[0]);
  doc.add("omega2", omega[1]);
  doc.add("b1", b[0]);
  doc.add("b2", b[1]);

  if (a.example == "example1") {
    const Quaternion v = oracles::example1_closed(omega, b);
    doc.add("value", format_quaternion(v));
    doc.add("modulus", qnorm(v));
    if (!a.compare) {
      emit(doc, a.report);
      return 0;
    }
    const Quaternion q = oracles::example1_quadrature(omega, b, a.resolution ? a.resolution : 400);
    const double rel = oracles::relative_error(v, q);
    doc.add("quadrature", format_quaternion(q));
    doc.add("quadrature_modulus", qnorm(q));
    doc.add("rel_error", rel);
    doc.add("tolerance", tol);
    doc.add("agreement", rel < tol);
    doc.set_verdict(rel < tol);
  } else {
    const Quaternion published = oracles::example2_closed(omega, b);
    const Quaternion corrected = oracles::example2_corrected(omega, b);
    doc.add("published", format_quaternion(published));
    doc.add("published_modulus", qnorm(published));
    doc.add("corrected", format_quaternion(corrected));
    doc.add("corrected_modulus", qnorm(corrected));
    if (!a.compare) {
      emit(doc, a.report);
      return 0;
    }
    const Quaternion q = oracles::example2_quadrature(omega, b, a.resolution ? a.resolution : 200);
    const double rel_pub = qnorm(published - q) / std::fmax(qnorm(q), 1e-300);
    const double rel_cor = qnorm(corrected - q) / std::fmax(qnorm(q), 1e-300);
    doc.add("quadrature", format_quaternion(q));
    doc.add("quadrature_modulus", qnorm(q));
    doc.add("rel_error_published", rel_pub);
    doc.add("rel_error_corrected", rel_cor);
    doc.add("tolerance", tol);
    doc.add("agreement_published", rel_pub < tol);
    doc.add("agreement_corrected", rel_cor < tol);
    if (!(rel_pub < tol))
      doc.add("finding",
              "published closed form disagrees with quadrature (its two products cancel identically); "
              "limits [b, b+1/2] and [b+1/2, b+1] reproduce the integral");
    doc.set_verdict(rel_cor < tol);
  }
  emit(doc, a.report);
  return verdict_code(doc);
}

struct IngestArgs {
  std::string ppm;
  std::string out;
};

int run_ingest(const IngestArgs& a) {
  const auto f = io::ingest_ppm(a.ppm);
  io::write_qsig(a.out, f);
  std::cout << "n1 = " << f.n1() << "\nn2 = " << f.n2() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion Fourier and Gabor transforms of 2D quaternion signals"};
  app.name("quatgabor");
  app.require_subcommand(1);

  QftArgs qa;
  auto* qft = app.add_subcommand("qft", "discrete two-sided QFT of a QSIG file");
  qft->add_option("direction", qa.direction, "fwd or inv")->required()->check(CLI::IsMember({"fwd", "inv"}));
  qft->add_option("--in", qa.in, "input QSIG file")->required();
  qft->add_option("--out", qa.out, "output QSIG file")->required();
  auto* brute = qft->add_flag("--brute", qa.brute, "direct O(N^2) summation");
  qft->add_flag("--fast", qa.fast, "FFT path (default)")->excludes(brute);

  GqftArgs ga;
  auto* gqft = app.add_subcommand("gqft", "Gabor QFT slice, spectrogram and full transform");
  gqft->add_option("--in", ga.in, "input QSIG signal")->required();
  gqft->add_option("--window", ga.window, "box | haar | gaussian:<sigma> | file:<path>")->required();
  gqft->add_option("--b", ga.b, "shift indices i,j")->capture_default_str();
  gqft->add_option("--spectrogram", ga.spectrogram, "PGM output for the slice at --b");
  gqft->add_option("--out", ga.out, "QSIG output for the slice at --b");
  gqft->add_option("--out-dir", ga.out_dir, "directory for every slice plus manifest.txt");

  ReconstructArgs ra;
  auto* rec = app.add_subcommand("reconstruct", "invert a directory written by gqft --out-dir");
  rec->add_option("--in-gqft-dir", ra.dir, "directory with b_<i>_<j>.qsig and manifest.txt")->required();
  rec->add_option("--window", ra.window, "window used for the forward transform")->required();
  rec->add_option("--out", ra.out, "output QSIG signal")->required();

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "check a transform identity or inequality and write a report");
  ver->add_option("scheme", va.scheme, "plancherel | inversion | shift | reflect | heisenberg | log | deriv")
      ->required()
      ->check(CLI::IsMember({"plancherel", "inversion", "shift", "reflect", "heisenberg", "log", "deriv"}));
  ver->add_option("--signal", va.signal, "gaussian:<a> | file:<path>")->required();
  ver->add_option("--window", va.window, "box | haar | gaussian:<sigma> | file:<path>");
  ver->add_option("--n", va.n, "grid size for gaussian signals")->capture_default_str()->check(CLI::Range(2, 4096));
  ver->add_option("--t", va.t, "log uncertainty parameter")->capture_default_str();
  ver->add_option("--axis", va.axis, "axis 1 or 2")->capture_default_str();
  ver->add_option("--y", va.y, "shift indices for the shift check")->capture_default_str();
  ver->add_option("--tol", va.tol, "override the scheme tolerance");
  ver->add_option("--report", va.report, "report output path (also printed)");

  OracleArgs oa;
  auto* ora = app.add_subcommand("oracle", "closed-form worked examples");
  ora->add_option("example", oa.example, "example1 | example2")
      ->required()
      ->check(CLI::IsMember({"example1", "example2"}));
  ora->add_option("--omega", oa.omega, "frequency w1,w2")->capture_default_str();
  ora->add_option("--b", oa.b, "window shift b1,b2")->capture_default_str();
  ora->add_flag("--compare-quadrature", oa.compare, "compare against direct quadrature");
  ora->add_option("--resolution", oa.resolution, "quadrature intervals per axis");
  ora->add_option("--report", oa.report, "report output path (also printed)");

  IngestArgs ia;
  auto* ing = app.add_subcommand("ingest", "convert a binary PPM colour image into a pure quaternion signal");
  ing->add_option("--ppm", ia.ppm, "input P6 image")->required();
  ing->add_option("--out", ia.out, "output QSIG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (qft->parsed()) return run_qft(qa);
    if (gqft->parsed()) return run_gqft(ga);
    if (rec->parsed()) return run_reconstruct(ra);
    if (ver->parsed()) return run_verify(va);
    if (ora->parsed()) return run_oracle(oa);
    if (ing->parsed()) return run_ingest(ia);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.flag << ": " << e.message << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
