#ifndef SCHLAFLI_ACCEPTANCE_HPP
#define SCHLAFLI_ACCEPTANCE_HPP

// End-to-end acceptance criteria. Each criterion is a deterministic function
// of a seed; tolerances and time budgets are fixed here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "schlafli/contour.hpp"
#include "schlafli/geometry.hpp"
#include "schlafli/qdeform.hpp"
#include "schlafli/reduction.hpp"
#include "schlafli/sampling.hpp"
#include "schlafli/sixj.hpp"

namespace schlafli::acceptance {

inline constexpr std::uint64_t default_seed = 20260418;

struct Criterion {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 means no budget
};

namespace detail {

inline std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

inline std::string le(const std::string& what, double value, double tol) {
  return what + " " + fmt("%.3e", value) + (value <= tol ? " <= " : " > ") + fmt("%.0e", tol);
}

struct Geometry {
  std::vector<EdgeLengths> samples;
  std::vector<ResidualReport> reports;
};

// Residual reports for the shared 100-sample set, computed once per seed.
inline const Geometry& geometry_sample(std::uint64_t seed) {
  static std::map<std::uint64_t, Geometry> cache;
  auto it = cache.find(seed);
  if (it != cache.end()) return it->second;
  Geometry g;
  sampling::Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    g.samples.push_back(sampling::edges(rng, 0.5, 3.0));
    g.reports.push_back(residuals(g.samples.back()));
  }
  return cache.emplace(seed, std::move(g)).first->second;
}

}  // namespace detail

inline Criterion schlafli_identity(std::uint64_t seed) {
  Criterion c{1, "Schlafli identity, 100 random tetrahedra", false, "", 0.0, 10.0};
  double worst = 0.0;
  for (const auto& r : detail::geometry_sample(seed).reports) worst = std::max(worst, r.schlafli);
  c.passed = worst <= 1e-5;
  c.detail = detail::le("max_s |sum_r J_r dpsi_r/dJ_s|", worst, 1e-5);
  return c;
}

inline Criterion jacobian_symmetry_euler(std::uint64_t seed) {
  Criterion c{2, "Jacobian symmetry and Euler identity", false, "", 0.0, 0.0};
  double sym = 0.0, euler = 0.0;
  for (const auto& r : detail::geometry_sample(seed).reports) {
    sym = std::max(sym, r.symmetry);
    euler = std::max(euler, r.euler);
  }
  c.passed = sym <= 1e-5 && euler <= 1e-5;
  c.detail = detail::le("|D - D^T|", sym, 1e-5) + ", " + detail::le("Euler", euler, 1e-5);
  return c;
}

inline Criterion generating_function(std::uint64_t seed) {
  Criterion c{3, "Generating function dS/dJ_r = psi_r", false, "", 0.0, 0.0};
  double worst = 0.0;
  for (const auto& r : detail::geometry_sample(seed).reports) worst = std::max(worst, r.genfun);
  c.passed = worst <= 1e-5;
  c.detail = detail::le("max_r |dS/dJ_r - psi_r|", worst, 1e-5);
  return c;
}

inline Criterion contour_holonomy(std::uint64_t seed) {
  Criterion c{4, "Contour holonomy of legs 1-2, 20 random tetrahedra", false, "", 0.0, 5.0};
  sampling::Rng rng(seed + 4);
  double phase = 0.0, primed = 0.0;
  for (int i = 0; i < 20; ++i) {
    const TetraEmbedding emb = embed(sampling::edges(rng));
    const SpinorConfig p = build_config(emb);
    const SpinorConfig pp = leg2(leg1(p, emb.normals), emb.normals);
    for (int r = 0; r < 6; ++r) {
      phase = std::max(phase, std::abs(std::arg(p.z[r].v.dot(pp.z[r].v)) - emb.psi[r]));
      primed = std::max(primed, (pp.zp[r].v - p.zp[r].v).cwiseAbs().maxCoeff());
    }
  }
  c.passed = phase <= 1e-9 && primed <= 1e-12;
  c.detail = detail::le("|phase - psi|", phase, 1e-9) + ", " + detail::le("|z'(P') - z'(P)|", primed, 1e-12);
  return c;
}

inline Criterion leg_actions(std::uint64_t seed) {
  Criterion c{5, "Per-leg actions, N = 1e4", false, "", 0.0, 0.0};
  sampling::Rng rng(seed + 5);
  std::vector<EdgeLengths> cases{EdgeLengths{{1, 1, 1, 1, 1, 1}}};
  for (int i = 0; i < 4; ++i) cases.push_back(sampling::edges(rng));
  double legs12 = 0.0, leg3 = 0.0, imag = 0.0;
  for (const auto& e : cases) {
    const ContourResult res = run_contour(e, 10000);
    legs12 = std::max({legs12, std::abs(res.actions[0]), std::abs(res.actions[1])});
    leg3 = std::max(leg3, std::abs(res.actions[2].real() - 2.0 * res.S));
    for (const auto& a : res.actions) imag = std::max(imag, std::abs(a.imag()));
  }
  c.passed = legs12 <= 1e-8 && leg3 <= 1e-6 && imag <= 1e-9;
  c.detail = detail::le("|leg1|,|leg2|", legs12, 1e-8) + ", " + detail::le("|leg3 - 2S|", leg3, 1e-6) + ", " +
             detail::le("|Im|", imag, 1e-9);
  return c;
}

inline std::vector<SweepSpec> stokes_families(std::uint64_t seed) {
  const EdgeLengths regular{{1, 1, 1, 1, 1, 1}};
  SweepSpec uniform{regular, {1, 1, 1, 1, 1, 1}, 0.0, 1.0, 200};
  SweepSpec single{regular, {1, 0, 0, 0, 0, 0}, 0.0, 0.1, 200};
  sampling::Rng rng(seed + 6);
  std::array<double, 6> dir{};
  for (double& d : dir) d = sampling::uniform(rng, -1.0, 1.0);
  SweepSpec random{regular, dir, 0.0, 0.2, 200};
  return {uniform, single, random};
}

inline Criterion stokes_and_cylinder(std::uint64_t seed) {
  Criterion c{6, "Stokes proof and reduced cylinder contour, 3 families", false, "", 0.0, 0.0};
  double stokes = 0.0, cyl = 0.0, resid = 0.0;
  for (const auto& fam : stokes_families(seed)) {
    const StokesReport s = stokes_sweep(fam);
    const CylinderContourReport k = cylinder_contour_check(fam);
    stokes = std::max(stokes, s.discrepancy());
    resid = std::max(resid, s.max_residual);
    cyl = std::max({cyl, k.upstairs_discrepancy(), k.discrepancy()});
  }
  c.passed = stokes <= 1e-5 && cyl <= 1e-5 && resid <= 1e-5;
  c.detail = detail::le("|dS - int psi dJ|", stokes, 1e-5) + ", " + detail::le("cylinder vs upstairs", cyl, 1e-5) +
             ", " + detail::le("|sum J dpsi/dlambda|", resid, 1e-5);
  return c;
}

inline Criterion reduction_equivariance(std::uint64_t seed) {
  Criterion c{7, "Reduction equivariance and one-form agreement, 100 samples", false, "", 0.0, 0.0};
  sampling::Rng rng(seed + 7);
  double flows = 0.0, forms = 0.0;
  const std::array<Generator, 4> gens{Generator::J_n, Generator::Jp_n, Generator::I, Generator::J_plus_Jp_n};
  for (int i = 0; i < 100; ++i) {
    const Spinor zp = sampling::spinor(rng);
    const Spinor z = sampling::su2(rng) * time_reversal(zp);
    const ReducedPoint p = project_pair(z, zp);
    for (Generator gen : gens) {
      const Vec3 n = sampling::unit_vector(rng);
      const double alpha = sampling::uniform(rng, -2.0 * pi, 2.0 * pi);
      const auto [z2, zp2] = flow_spinors(z, zp, gen, n, alpha);
      const ReducedPoint up = project_pair(z2, zp2);
      const ReducedPoint down = flow(p, gen, n, alpha);
      flows = std::max({flows, (up.g.matrix() - down.g.matrix()).cwiseAbs().maxCoeff(), (up.J - down.J).norm(),
                        (up.Jp() - down.Jp()).norm()});
    }
    const ReducedTangent t{right_tangent(p.g, Vec3(sampling::normal(rng), sampling::normal(rng), sampling::normal(rng))),
                           Vec3::Zero()};
    const OneFormValue v = one_form_value(p, t);
    forms = std::max(forms, std::abs(v.right - v.left));
  }
  c.passed = flows <= 1e-12 && forms <= 1e-12;
  c.detail = detail::le("flow intertwining", flows, 1e-12) + ", " + detail::le("J.rho_R + J'.rho_L", forms, 1e-12);
  return c;
}

inline Criterion character_formula() {
  Criterion c{8, "Character formula vs sum_m exp(i m phi), 2j <= 20", false, "", 0.0, 0.0};
  double worst = 0.0;
  const double lo = 0.05, hi = 2.0 * pi - 0.05;
  for (int two_j = 0; two_j <= 20; ++two_j) {
    for (int k = 0; k < 100; ++k) {
      const double phi = lo + (hi - lo) * k / 99.0;
      Complex sum = 0.0;
      for (int two_m = -two_j; two_m <= two_j; two_m += 2) sum += std::exp(Complex(0.0, 0.5 * two_m * phi));
      worst = std::max(worst, std::abs(character(two_j, phi) - sum));
    }
  }
  c.passed = worst <= 1e-12;
  c.detail = detail::le("max |chi - sum|", worst, 1e-12);
  return c;
}

inline Criterion exact_sixj() {
  Criterion c{9, "Exact 6j: 24 symmetries for j <= 3, orthogonality, {1 1 1;1 1 1} = 1/6", false, "", 0.0, 30.0};
  std::map<std::array<int, 6>, ExactRational> table;
  std::array<int, 6> t{};
  for (t[0] = 0; t[0] <= 6; ++t[0])
    for (t[1] = 0; t[1] <= 6; ++t[1])
      for (t[2] = 0; t[2] <= 6; ++t[2])
        for (t[3] = 0; t[3] <= 6; ++t[3])
          for (t[4] = 0; t[4] <= 6; ++t[4])
            for (t[5] = 0; t[5] <= 6; ++t[5]) {
              const SixJArgs a{t};
              if (sixj_admissible(a)) table.emplace(t, exact_6j(a));
            }
  long violations = 0;
  for (const auto& [args, value] : table) {
    for (const auto& s : sixj_symmetries(SixJArgs{args})) {
      const auto it = table.find(s.two_j);
      if (it == table.end() || !(it->second == value)) ++violations;
    }
  }
  // sum_x (2x+1) {a b x; c d e}{a b x; c d f} = delta_ef / (2e+1)
  long ortho_checked = 0, ortho_bad = 0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int cc = 0; cc <= 4; ++cc)
        for (int d = 0; d <= 4; ++d)
          for (int e = 0; e <= 4; ++e)
            for (int f = 0; f <= 4; ++f) {
              using schlafli::detail::triad_ok;
              if (!triad_ok(a, d, e) || !triad_ok(cc, b, e) || !triad_ok(a, d, f) || !triad_ok(cc, b, f)) continue;
              ExactRational sum;
              for (int x = 0; x <= a + b; ++x) {
                const ExactRational u = exact_6j(SixJArgs{{a, b, x, cc, d, e}});
                const ExactRational v = exact_6j(SixJArgs{{a, b, x, cc, d, f}});
                sum += ExactRational(BigRational(x + 1)) * u * v;
              }
              const ExactRational expected = e == f ? ExactRational(BigRational(1, e + 1)) : ExactRational();
              ++ortho_checked;
              if (!(sum == expected)) ++ortho_bad;
            }
  const ExactRational ones = exact_6j(SixJArgs{{2, 2, 2, 2, 2, 2}});
  c.passed = violations == 0 && ortho_bad == 0 && ortho_checked > 0 && ones.to_string() == "1/6";
  c.detail = std::to_string(table.size()) + " symbols, " + std::to_string(violations) + " symmetry violations, " +
             std::to_string(ortho_checked) + " orthogonality sums (" + std::to_string(ortho_bad) +
             " wrong), all-ones = " + ones.to_string();
  return c;
}

inline Criterion pr_asymptotics() {
  Criterion c{10, "Ponzano-Regge convergence, all-equal pattern", false, "", 0.0, 60.0};
  const SixJArgs pattern{{2, 2, 2, 2, 2, 2}};
  std::vector<double> rms;
  std::string d = "RMS |exact - asym| / amplitude:";
  for (int k0 : {10, 20, 30, 40}) {
    rms.push_back(windowed_relative_rms(pattern, k0));
    d += " k0=" + std::to_string(k0) + " " + detail::fmt("%.3e", rms.back());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < rms.size(); ++i) decreasing = decreasing && rms[i] < rms[i - 1];
  c.passed = decreasing;
  c.detail = d + (decreasing ? " (strictly decreasing)" : " (NOT strictly decreasing)");
  return c;
}

inline Criterion qdeform_coproduct(std::uint64_t seed) {
  Criterion c{11, "q-deformed coproduct = B multiplication, 1000 samples", false, "", 0.0, 0.0};
  sampling::Rng rng(seed + 11);
  double product = 0.0, assoc = 0.0, diangle = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const q::DeformedJ a = sampling::deformed_j(rng), b = sampling::deformed_j(rng), d = sampling::deformed_j(rng);
    const q::DeformedJ viaB = q::J_from_b(q::b_from_J(a) * q::b_from_J(b));
    const q::DeformedJ co = q::comult2(a, b);
    product = std::max(product, q::distance(co, viaB) / std::max(1.0, std::abs(co.Jminus) + std::abs(co.Jz)));
    const q::DeformedJ three = q::comult3(a, b, d);
    assoc = std::max(assoc, q::distance(q::comult2(co, d), three) / std::max(1.0, std::abs(three.Jminus) + std::abs(three.Jz)));
    assoc = std::max(assoc, q::distance(q::comult2(a, q::comult2(b, d)), three) /
                                std::max(1.0, std::abs(three.Jminus) + std::abs(three.Jz)));
    diangle = std::max(diangle, q::distance(q::comult2(a, q::diangle_closure(a)), q::DeformedJ{}));
  }
  c.passed = product <= 1e-13 && assoc <= 1e-13 && diangle == 0.0;
  c.detail = detail::le("coproduct vs matrix product", product, 1e-13) + ", " +
             detail::le("associativity", assoc, 1e-13) + ", diangle coproduct " + detail::fmt("%.1e", diangle) +
             (diangle == 0.0 ? " (exact zero)" : " (not zero)");
  return c;
}

inline std::vector<Criterion> run_all(std::uint64_t seed = default_seed,
                                      const std::function<void(const Criterion&)>& on_result = {}) {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::function<Criterion()>> runs{
      [&] { return schlafli_identity(seed); },      [&] { return jacobian_symmetry_euler(seed); },
      [&] { return generating_function(seed); },    [&] { return contour_holonomy(seed); },
      [&] { return leg_actions(seed); },            [&] { return stokes_and_cylinder(seed); },
      [&] { return reduction_equivariance(seed); }, [] { return character_formula(); },
      [] { return exact_sixj(); },                  [] { return pr_asymptotics(); },
      [&] { return qdeform_coproduct(seed); }};
  std::vector<Criterion> out;
  for (const auto& run : runs) {
    const auto t0 = Clock::now();
    Criterion c;
    try {
      c = run();
    } catch (const std::exception& ex) {
      c.passed = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && c.seconds > c.budget_seconds) {
      c.passed = false;
      c.detail += ", over time budget";
    }
    out.push_back(c);
    if (on_result) on_result(out.back());
  }
  return out;
}

inline std::string format_line(const Criterion& c) {
  char head[96];
  std::snprintf(head, sizeof head, "%s criterion %2d: ", c.passed ? "PASS" : "FAIL", c.id);
  std::string s = head + c.name + " | " + c.detail + " | " + detail::fmt("%.2f s", c.seconds);
  if (c.budget_seconds > 0.0) s += " (budget " + detail::fmt("%.0f s", c.budget_seconds) + ")";
  return s;
}

}  // namespace schlafli::acceptance

#endif
