// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "quatgabor/quatgabor.hpp"
#include "support.hpp"

using namespace quatgabor;
using qg_test::gaussian;
using qg_test::GaussianParams;
using qg_test::random_quaternion;
using qg_test::random_signal;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> findings;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Criterion {
  const char* id;
  const char* title;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> body;
};

// ---------------------------------------------------------------------------

Outcome algebra() {
  Outcome o;
  const std::array<Quaternion, 4> basis{Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  const Quaternion one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  const std::array<std::array<Quaternion, 4>, 4> table{{
      {one, i, j, k},
      {i, -one, k, -j},
      {j, -k, -one, i},
      {k, j, -i, -one},
  }};
  bool exact = true;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) exact = exact && qmul(basis[r], basis[c]) == table[r][c];
  o.require(exact, "Hamilton table mismatch");

  std::mt19937_64 rng(1001);
  double norm_err = 0.0;
  double conj_err = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const auto p = random_quaternion(rng, 10.0);
    const auto q = random_quaternion(rng, 10.0);
    const double ref = qnorm(p) * qnorm(q);
    norm_err = std::fmax(norm_err, std::fabs(qnorm(p * q) - ref) / ref);
    conj_err = std::fmax(conj_err, qnorm(qconj(p * q) - qconj(q) * qconj(p)) / ref);
  }
  o.require(norm_err < 1e-12, "|pq| = |p||q| rel error " + fmt("%.3g", norm_err));
  o.require(conj_err < 1e-12, "conj anti-involution rel error " + fmt("%.3g", conj_err));
  if (o.pass) o.detail = "table exact, |pq| rel " + fmt("%.2g", norm_err) + ", conj rel " + fmt("%.2g", conj_err);
  return o;
}

// 100 random shapes between 4x4 and 32x32, shared by inversion and Plancherel.
std::vector<QSignal2D> transform_suite() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<std::size_t> size(4, 32);
  std::uniform_real_distribution<double> step(0.05, 2.0);
  std::vector<QSignal2D> out;
  out.push_back(random_signal(rng, GridSpec(4, 4, 1.0, 1.0, true)));
  out.push_back(random_signal(rng, GridSpec(32, 32, 0.25, 0.25, true)));
  while (out.size() < 100)
    out.push_back(random_signal(rng, GridSpec(size(rng), size(rng), step(rng), step(rng), rng() % 2 == 0)));
  return out;
}

Outcome inversion() {
  Outcome o;
  double worst = 0.0;
  for (const auto& f : transform_suite()) worst = std::fmax(worst, max_abs_diff(idqft(dqft(f)), f));
  o.require(worst < 1e-11, "max error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "100 cases, max component error " + fmt("%.2g", worst);
  return o;
}

Outcome plancherel() {
  Outcome o;
  double worst = 0.0;
  for (const auto& f : transform_suite())
    worst = std::fmax(worst, std::fabs(spectrum_energy(dqft(f)) / l2_norm_sq(f) - 1.0));
  o.require(worst < 1e-12, "energy ratio off by " + fmt("%.3g", worst));
  if (o.pass) o.detail = "100 cases, |ratio - 1| <= " + fmt("%.2g", worst);
  return o;
}

Outcome fast_vs_brute() {
  Outcome o;
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  int cases = 0;
  const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 12, 16, 17, 24, 31, 32};
  for (std::size_t n1 : sizes)
    for (std::size_t n2 : {std::size_t{1}, std::size_t{6}, std::size_t{13}, std::size_t{32}, n1}) {
      const auto f = random_signal(rng, GridSpec(n1, n2, 0.5, 0.3, true));
      worst = std::fmax(worst, max_abs_diff(dqft_fast(f), dqft_brute(f)));
      const auto F = dqft_fast(f);
      worst = std::fmax(worst, max_abs_diff(idqft(F), idqft_brute(F)));
      ++cases;
    }
  o.require(worst < 1e-10, "max sample difference " + fmt("%.3g", worst));
  if (o.pass) o.detail = std::to_string(cases) + " shapes up to 32x32, forward and inverse, max diff " + fmt("%.2g", worst);
  return o;
}

std::vector<WindowShape> four_windows(std::mt19937_64& rng, const GridSpec& s) {
  return {BoxWindow{}, Haar2DWindow{}, GaussianWindow{0.7}, CustomWindow{random_signal(rng, s)}};
}

Outcome gqft_plancherel() {
  Outcome o;
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (std::size_t n : {8u, 16u}) {
    const GridSpec s = GridSpec::square(n, 2.0);
    const auto f = random_signal(rng, s);
    for (const auto& shape : four_windows(rng, s)) {
      const Window w = make_window(shape, s);
      const double expected = l2_norm_sq(f) * w.energy();
      worst = std::fmax(worst, std::fabs(gqft_full(f, w).energy() - expected) / expected);
    }
  }
  o.require(worst < 1e-12, "rel error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "box, haar, gaussian, custom at 8x8 and 16x16, rel error " + fmt("%.2g", worst);
  return o;
}

Outcome gqft_reconstruction() {
  Outcome o;
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (std::size_t n : {8u, 16u}) {
    const GridSpec s = GridSpec::square(n, 2.0);
    const auto f = random_signal(rng, s);
    for (const auto& shape : four_windows(rng, s)) {
      const Window w = make_window(shape, s);
      worst = std::fmax(worst, max_abs_diff(reconstruct(gqft_full(f, w), w), f));
    }
  }
  o.require(worst < 1e-10, "max error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "same 8 cases, max error " + fmt("%.2g", worst);
  return o;
}

Outcome shift_reflect() {
  Outcome o;
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<std::size_t> size(3, 12);
  std::uniform_int_distribution<std::int64_t> shift(-20, 20);
  double worst_shift = 0.0;
  double worst_reflect = 0.0;
  for (int c = 0; c < 100; ++c) {
    const GridSpec s(size(rng), size(rng), 0.4, 0.6, c % 3 != 0);
    const auto f = random_signal(rng, s);
    const Window w = make_window(CustomWindow{random_signal(rng, s)}, s);
    const Shift y{shift(rng), shift(rng)};
    worst_shift = std::fmax(worst_shift, shift_covariance_check(f, w, y).max_deviation);
    worst_reflect = std::fmax(worst_reflect, reflection_check(f, w).max_deviation);
  }
  o.require(worst_shift < 1e-11, "shift deviation " + fmt("%.3g", worst_shift));
  o.require(worst_reflect < 1e-11, "reflection deviation " + fmt("%.3g", worst_reflect));
  if (o.pass)
    o.detail = "100 random (f, phi, y), shift " + fmt("%.2g", worst_shift) + ", reflection " + fmt("%.2g", worst_reflect);
  return o;
}

Outcome heisenberg() {
  Outcome o;
  const GridSpec s = GridSpec::square(128, 8.0);
  const auto g = gaussian(s);
  const double saturation = 1.0 / (8.0 * pi);
  for (Axis k : {Axis::one, Axis::two}) {
    const auto r = heisenberg_qft(g, k);
    o.require(r.ratio >= 0.999 && r.ratio <= 1.001, "gaussian ratio " + fmt("%.10f", r.ratio));
    o.require(std::fabs(r.lhs - saturation) < 1e-6 && std::fabs(r.rhs - saturation) < 1e-6,
              "sides " + fmt("%.8f", r.lhs) + " / " + fmt("%.8f", r.rhs) + " vs 1/(8 pi)");
  }
  double lowest = INFINITY;
  const GaussianParams sweep[] = {{0.25}, {0.5}, {2.0}, {4.0}, {1.0, 1.5, -2.0}, {1.0, -0.5, 3.0},
                                  {1.0, 0.0, 0.0, 1.2, -0.7}, {2.0, 0.5, 0.5, 0.5, 0.5}, {0.5, -1.0, 1.0, -2.0, 1.0}};
  for (const auto& p : sweep)
    for (Axis k : {Axis::one, Axis::two}) lowest = std::fmin(lowest, heisenberg_qft(gaussian(s, p), k).ratio);
  o.require(lowest >= 0.99, "sweep ratio " + fmt("%.6f", lowest));
  if (o.pass)
    o.detail = "gaussian ratio " + fmt("%.10f", heisenberg_qft(g, Axis::one).ratio) + ", sweep min ratio " +
               fmt("%.6f", lowest);
  return o;
}

Outcome heisenberg_gabor() {
  Outcome o;
  const GridSpec s = GridSpec::square(32, 4.0);
  const std::vector<WindowShape> windows{BoxWindow{}, Haar2DWindow{}, GaussianWindow{0.5}};
  const std::vector<GaussianParams> signals{{1.0}, {2.0}, {1.0, 0.5, -0.25}, {1.0, 0.0, 0.0, 0.5, -0.25}};
  double lowest = INFINITY;
  double lemma = 0.0;
  bool cs = true;
  for (const auto& shape : windows) {
    const Window w = make_window(shape, s);
    for (const auto& p : signals)
      for (Axis k : {Axis::one, Axis::two}) {
        const auto r = heisenberg_gqft(gaussian(s, p), w, k);
        lowest = std::fmin(lowest, r.heisenberg.ratio);
        lemma = std::fmax(lemma, r.window_lemma_rel_gap);
        cs = cs && r.cauchy_schwarz_holds;
      }
  }
  o.require(lowest >= 0.99, "min ratio " + fmt("%.6f", lowest));
  o.require(lemma < 1e-10, "window-moment identity gap " + fmt("%.3g", lemma));
  o.require(cs, "Cauchy-Schwarz step violated");
  if (o.pass) o.detail = "3 windows x 4 signals x 2 axes, min ratio " + fmt("%.4f", lowest) + ", lemma gap " + fmt("%.2g", lemma);
  return o;
}

Outcome derivative() {
  Outcome o;
  const GridSpec s = GridSpec::square(256, 8.0);
  const auto f = gaussian(s);
  double analytic = 0.0;
  for (Axis k : {Axis::one, Axis::two}) {
    const auto d = sample(
        [k](double x1, double x2) {
          return Quaternion(-2.0 * pi * (k == Axis::one ? x1 : x2) * std::exp(-pi * (x1 * x1 + x2 * x2)));
        },
        s);
    analytic = std::fmax(analytic, derivative_identity_check(f, d, k).rel_gap);
  }
  // Central differences carry an O(h^2) bias; 512 points on [-4, 4] gives h = 1/64.
  const auto fine = gaussian(GridSpec::square(512, 4.0));
  double central = 0.0;
  for (Axis k : {Axis::one, Axis::two}) central = std::fmax(central, derivative_identity_check(fine, k).rel_gap);
  o.require(analytic < 1e-8, "analytic gap " + fmt("%.3g", analytic));
  o.require(central < 1e-3, "central-difference gap " + fmt("%.3g", central));
  if (o.pass)
    o.detail = "analytic 256^2 gap " + fmt("%.2g", analytic) + ", central differences 512^2 on [-4,4] gap " + fmt("%.2g", central);
  return o;
}

Outcome log_uncertainty() {
  Outcome o;
  const double D = log_bound_constant(0.5);
  o.require(std::fabs(D + 3.1082399) < 1e-7, "D = " + fmt("%.9f", D));
  // digamma against a central difference of lgamma
  double psi_gap = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.5, 7.0}) {
    const double h = 1e-5;
    const double numeric = (std::lgamma(t + h) - std::lgamma(t - h)) / (2 * h);
    psi_gap = std::fmax(psi_gap, std::fabs(digamma(t) - numeric));
  }
  o.require(psi_gap < 1e-8, "digamma vs d ln Gamma " + fmt("%.3g", psi_gap));

  double min_qft = INFINITY;
  const GridSpec s = GridSpec::square(256, 8.0);
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const auto f = gaussian(s, {a});
    min_qft = std::fmin(min_qft, log_qft(f, 0.5).slack / l2_norm_sq(f));
  }
  double min_gqft = INFINITY;
  int intermediate_violations = 0;
  int gqft_cases = 0;
  const GridSpec sg = GridSpec::square(32, 4.0);
  for (double sigma : {0.5, 0.8})
    for (double a : {1.0, 2.0, 4.0}) {
      const auto f = gaussian(sg, {a});
      const auto r = log_gqft(f, make_window(GaussianWindow{sigma}, sg), 0.5);
      min_gqft = std::fmin(min_gqft, r.slack / std::fabs(r.rhs));
      intermediate_violations += r.slack_intermediate < 0.0;
      ++gqft_cases;
    }
  o.require(min_qft >= 0.0, "QFT slack " + fmt("%.3g", min_qft));
  o.require(min_gqft >= 0.0, "GQFT slack " + fmt("%.3g", min_gqft));
  if (intermediate_violations > 0)
    o.findings.push_back("the pre-Plancherel GQFT form with right side D ||phi||^4 ||f||^2 is violated in " +
                         std::to_string(intermediate_violations) + "/" + std::to_string(gqft_cases) +
                         " cases (extra ||phi||^2 factor); the final form holds in all of them");
  if (o.pass)
    o.detail = "D = " + fmt("%.7f", D) + ", QFT min slack/||f||^2 " + fmt("%.3f", min_qft) + " over 5 dilations, GQFT min slack/|rhs| " +
               fmt("%.3f", min_gqft) + " over 6 cases";
  return o;
}

Outcome oracles_agreement() {
  Outcome o;
  const double omegas[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const double shifts1[] = {-0.5, 0.0, 0.5, 1.0, 2.0};
  const double shifts2[] = {-0.7, -0.2, 0.0, 0.3, 0.9};
  double worst1 = 0.0;
  double worst2 = 0.0;
  int published_misses = 0;
  int points = 0;
  for (double w1 : omegas)
    for (double w2 : omegas)
      for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q) {
          const std::array<double, 2> om{w1, w2};
          worst1 = std::fmax(worst1, oracles::relative_error(oracles::example1_closed(om, {shifts1[p], shifts1[q]}),
                                                             oracles::example1_quadrature(om, {shifts1[p], shifts1[q]})));
          const std::array<double, 2> b{shifts2[p], shifts2[q]};
          const Quaternion quad = oracles::example2_quadrature(om, b);
          worst2 = std::fmax(worst2, oracles::relative_error(oracles::example2_corrected(om, b), quad));
          published_misses += !(oracles::relative_error(oracles::example2_closed(om, b), quad) < 1e-6);
          ++points;
        }
  o.require(worst1 < 1e-6, "example 1 rel error " + fmt("%.3g", worst1));
  o.require(worst2 < 1e-6, "example 2 (corrected limits) rel error " + fmt("%.3g", worst2));
  if (published_misses > 0)
    o.findings.push_back("example 2 published closed form disagrees with quadrature at " + std::to_string(published_misses) +
                         "/" + std::to_string(points) +
                         " lattice points (it is identically zero); limits [b, b+1/2], [b+1/2, b+1] agree to " +
                         fmt("%.2g", worst2));
  if (o.pass)
    o.detail = "5^4 lattice, example 1 rel error " + fmt("%.2g", worst1) + ", example 2 corrected " + fmt("%.2g", worst2);
  return o;
}

// ---------------------------------------------------------------------------
// CLI

int run_cli(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(QUATGABOR_CLI_PATH) + " " + args + " >" + (dir / "stdout.txt").string() +
                          " 2>" + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_round_trips() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("qg_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const auto p = [&](const char* name) { return (dir / name).string(); };
  std::mt19937_64 rng(1013);

  // QSIG bit exactness, through the library and through qft fwd/inv
  const auto f = random_signal(rng, GridSpec(8, 8, 0.3, 0.7, true));
  io::write_qsig(p("f.qsig"), f);
  const auto back = io::read_qsig(p("f.qsig"));
  o.require(back.spec() == f.spec() && std::memcmp(back.data().data(), f.data().data(), 32 * f.size()) == 0,
            "QSIG read/write not bit-exact");
  o.require(run_cli("qft fwd --in " + p("f.qsig") + " --out " + p("F.qsig"), dir) == 0 &&
                run_cli("qft inv --in " + p("F.qsig") + " --out " + p("g.qsig"), dir) == 0,
            "qft round trip exit code");
  if (fs::exists(p("g.qsig")))
    o.require(max_abs_diff(io::read_qsig(p("g.qsig")), f) < 1e-11, "qft fwd/inv round trip error");

  // verify exit codes against library verdicts
  const double h = 1.0 / std::sqrt(64.0);
  const auto g = gaussian(GridSpec(64, 64, h, h, true));
  const bool lib_heis = heisenberg_qft(g, Axis::one).holds();
  const bool lib_log = log_qft(g).holds();
  o.require(run_cli("verify heisenberg --signal gaussian:1 --n 64", dir) == (lib_heis ? 0 : 1), "heisenberg exit code");
  o.require(run_cli("verify log --signal gaussian:1 --n 64", dir) == (lib_log ? 0 : 1), "log exit code");
  o.require(run_cli("verify plancherel --signal gaussian:1 --n 32", dir) == 0, "plancherel exit code");
  o.require(run_cli("verify heisenberg --signal gaussian:1 --n 64 --tol -1 --report " + p("fail.txt"), dir) == 1,
            "forced failure exit code");
  o.require(io::parse_report(slurp(p("fail.txt"))).count("verdict") == 1, "failure report not emitted");
  o.require(run_cli("verify heisenberg --signal nothing", dir) == 2, "usage error exit code");

  // PPM -> QSIG -> spectrogram -> PGM, twice
  std::string ppm = "P6\n7 5\n255\n";
  std::mt19937 bytes(1013);
  for (int k = 0; k < 7 * 5 * 3; ++k) ppm.push_back(static_cast<char>(bytes() & 0xFF));
  std::ofstream(p("img.ppm"), std::ios::binary) << ppm;
  std::string images[2];
  for (int run = 0; run < 2; ++run) {
    const std::string q = p(run == 0 ? "a.qsig" : "b.qsig");
    const std::string pgm = p(run == 0 ? "a.pgm" : "b.pgm");
    o.require(run_cli("ingest --ppm " + p("img.ppm") + " --out " + q, dir) == 0, "ingest exit code");
    o.require(run_cli("gqft --in " + q + " --window gaussian:1.5 --b 2,4 --spectrogram " + pgm, dir) == 0,
              "gqft exit code");
    images[run] = slurp(pgm);
  }
  o.require(!images[0].empty() && images[0] == images[1], "spectrogram pipeline not deterministic");
  o.require(slurp(p("a.qsig")) == slurp(p("b.qsig")), "ingest not deterministic");
  fs::remove_all(dir);
  if (o.pass) o.detail = "QSIG bit-exact, verify exit codes match library verdicts, PPM pipeline deterministic";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC-01", "algebra suite", 1.0, algebra},
      {"AC-02", "DQFT inversion", 10.0, inversion},
      {"AC-03", "DQFT Plancherel", 10.0, plancherel},
      {"AC-04", "fast vs brute", 60.0, fast_vs_brute},
      {"AC-05", "GQFT Plancherel", 0.0, gqft_plancherel},
      {"AC-06", "GQFT reconstruction", 0.0, gqft_reconstruction},
      {"AC-07", "shift and reflection", 0.0, shift_reflect},
      {"AC-08", "Heisenberg QFT", 30.0, heisenberg},
      {"AC-09", "Heisenberg GQFT", 0.0, heisenberg_gabor},
      {"AC-10", "derivative identity", 0.0, derivative},
      {"AC-11", "logarithmic uncertainty", 0.0, log_uncertainty},
      {"AC-12", "oracle agreement", 120.0, oracles_agreement},
      {"AC-13", "CLI round trips", 0.0, cli_round_trips},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += "; runtime " + fmt("%.1f", secs) + " s over the " + fmt("%.0f", c.time_limit) + " s limit";
    }
    failures += !o.pass;
    std::printf("%s %s  %s: %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
    for (const auto& f : o.findings) std::printf("      finding: %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
