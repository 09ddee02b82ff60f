#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schlafli/acceptance.hpp"
#include "schlafli/contour.hpp"
#include "schlafli/geometry.hpp"
#include "schlafli/qdeform.hpp"
#include "schlafli/reduction.hpp"
#include "schlafli/sampling.hpp"
#include "schlafli/sixj.hpp"

namespace schlafli::cli {

namespace {

using json = nlohmann::json;

// Bad flag values that CLI11 cannot catch by itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("not a number: '" + raw + "'");
  }
  return v;
}

long parse_long(const std::string& raw) {
  const std::string s = trim(raw);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("not an integer: '" + raw + "'");
  return v;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json mat2_json(const Mat2c& m) {
  return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                      json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

template <class Range>
json array_json(const Range& r) {
  json a = json::array();
  for (const auto& x : r) a.push_back(x);
  return a;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + "\n";
}

Orientation parse_orientation(const std::string& s) {
  if (s == "+" || s == "positive" || s == "1" || s == "+1") return Orientation::positive;
  if (s == "-" || s == "negative" || s == "-1") return Orientation::negative;
  throw UsageError("orientation must be + or -");
}

Spinor spinor_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw UsageError("a spinor is [[re, im], [re, im]]");
  auto c = [](const json& x) {
    if (!x.is_array() || x.size() != 2) throw UsageError("a complex number is [re, im]");
    return Complex(x[0].get<double>(), x[1].get<double>());
  };
  return Spinor(c(j[0]), c(j[1]));
}

json spinor_json(const Spinor& z) { return json::array({complex_json(z[0]), complex_json(z[1])}); }

json config_json(const SpinorConfig& c) {
  json z = json::array(), zp = json::array();
  for (int r = 0; r < 6; ++r) {
    z.push_back(spinor_json(c.z[r]));
    zp.push_back(spinor_json(c.zp[r]));
  }
  return {{"z", z}, {"zp", zp}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

EdgeLengths edges_from(const std::array<double, 6>& a) {
  EdgeLengths e;
  e.J = a;
  return e;
}

SweepSpec sweep_from_json(const json& j) {
  try {
    SweepSpec s;
    const auto base = j.at("base").get<std::vector<double>>();
    const auto dir = j.at("direction").get<std::vector<double>>();
    if (base.size() != 6 || dir.size() != 6) throw UsageError("base and direction need six entries");
    for (int r = 0; r < 6; ++r) {
      s.base[r] = base[r];
      s.direction[r] = dir[r];
    }
    s.lambda0 = j.at("lambda0").get<double>();
    s.lambda1 = j.at("lambda1").get<double>();
    s.n = j.value("n", 200);
    return s;
  } catch (const json::exception& e) {
    throw UsageError(std::string("sweep spec: ") + e.what());
  }
}

q::DeformedJ deformed_from(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("deformed J is given as Jz,Jx,Jy");
  return q::DeformedJ::from_vector(Vec3(parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[0])));
}

json deformed_json(const q::DeformedJ& j) { return {{"Jz", j.Jz}, {"Jx", j.Jx()}, {"Jy", j.Jy()}}; }

struct Format {
  std::string value = "json";
  bool csv() const { return value == "csv"; }
};

void add_format(CLI::App* sub, Format& f, const std::string& def) {
  f.value = def;
  sub->add_option("--format", f.value, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

// tetra
int cmd_tetra(const std::string& edges_text, const std::string& orient, const Format& fmt, std::ostream& out) {
  const EdgeLengths e = edges_from(parse_edges(edges_text));
  const ExistenceClass cls = classify(e);
  const TetraEmbedding emb = embed(e, parse_orientation(orient));
  double s = 0.0;
  for (int r = 0; r < 6; ++r) s += e[r] * emb.psi[r];
  if (fmt.csv()) {
    std::vector<std::string> head{"J1", "J2", "J3", "J4", "J5", "J6", "class", "volume"};
    std::vector<std::string> row;
    for (double x : e.J) row.push_back(format_double(x));
    row.push_back(to_string(cls));
    row.push_back(format_double(emb.volume));
    for (int r = 0; r < 6; ++r) {
      head.push_back("psi" + std::to_string(r + 1));
      row.push_back(format_double(emb.psi[r]));
    }
    head.push_back("S");
    row.push_back(format_double(s));
    out << csv_row(head) << csv_row(row);
    return exit_ok;
  }
  json verts = json::array(), normals = json::array();
  for (const auto& v : emb.vertices) verts.push_back(vec_json(v));
  for (const auto& n : emb.normals) normals.push_back(vec_json(n));
  json j{{"edges", array_json(e.J)}, {"class", to_string(cls)},   {"volume", emb.volume},
         {"vertices", verts},        {"normals", normals},         {"psi", array_json(emb.psi)},
         {"S", s}};
  out << j.dump(2) << "\n";
  return exit_ok;
}

// schlafli
int cmd_schlafli(const std::string& edges_text, std::optional<double> h, int order, const Format& fmt,
                 std::ostream& out) {
  const EdgeLengths e = edges_from(parse_edges(edges_text));
  if (h && !(*h > 0.0)) throw UsageError("--h must be positive");
  const Stencil st = order == 2 ? Stencil::central2 : order == 4 ? Stencil::central4 : Stencil::central6;
  const ResidualReport rep = residuals(e, h, {}, st);
  if (fmt.csv()) {
    out << csv_row({"h", "stencil", "schlafli_residual", "euler_residual", "symmetry_residual", "genfun_residual"});
    out << csv_row({format_double(rep.step), std::to_string(order), format_double(rep.schlafli),
                    format_double(rep.euler), format_double(rep.symmetry), format_double(rep.genfun)});
    return exit_ok;
  }
  json jac = json::array();
  for (int r = 0; r < 6; ++r) {
    json row = json::array();
    for (int s = 0; s < 6; ++s) row.push_back(rep.jacobian(r, s));
    jac.push_back(row);
  }
  json j{{"edges", array_json(e.J)},
         {"h", rep.step},
         {"stencil", order},
         {"schlafli_residual", rep.schlafli},
         {"euler_residual", rep.euler},
         {"symmetry_residual", rep.symmetry},
         {"genfun_residual", rep.genfun},
         {"jacobian", jac}};
  out << j.dump(2) << "\n";
  return exit_ok;
}

// contour
int cmd_contour(const std::string& edges_text, const std::string& orient, int samples, const Format& fmt,
                std::ostream& out) {
  if (samples < 2) throw UsageError("--samples must be at least 2");
  const EdgeLengths e = edges_from(parse_edges(edges_text));
  const ContourResult res = run_contour(e, samples, parse_orientation(orient));
  if (fmt.csv()) {
    out << csv_row({"r", "J", "psi", "holonomy_phase"});
    for (int r = 0; r < 6; ++r) {
      out << csv_row({std::to_string(r + 1), format_double(e[r]), format_double(res.psi[r]),
                      format_double(res.holonomy_phases[r])});
    }
    return exit_ok;
  }
  json actions = json::array();
  for (const auto& a : res.actions) actions.push_back(complex_json(a));
  json j{{"edges", array_json(e.J)},
         {"samples", samples},
         {"actions", actions},
         {"total_action", complex_json(res.total())},
         {"S", res.S},
         {"two_S", 2.0 * res.S},
         {"psi", array_json(res.psi)},
         {"holonomy_phases", array_json(res.holonomy_phases)},
         {"primed_return", res.primed_return},
         {"closure", res.closure},
         {"diangle_defect_at_Q", res.diangle_at_q},
         {"triangle_defect_at_Pprime", res.triangle_at_pprime}};
  out << j.dump(2) << "\n";
  return exit_ok;
}

// stokes
int cmd_stokes(const std::string& spec_path, const Format& fmt, std::ostream& out) {
  if (spec_path.empty()) throw UsageError("stokes needs --sweep-spec FILE");
  const SweepSpec spec = sweep_from_json(read_json_file(spec_path));
  const StokesReport rep = stokes_sweep(spec);
  if (fmt.csv()) {
    out << csv_row({"lambda", "S", "psi1", "psi2", "psi3", "psi4", "psi5", "psi6", "residual"});
    for (std::size_t k = 0; k < rep.lambda.size(); ++k) {
      std::vector<std::string> row{format_double(rep.lambda[k]), format_double(rep.S[k])};
      for (double p : rep.psi[k]) row.push_back(format_double(p));
      row.push_back(format_double(rep.residual[k]));
      out << csv_row(row);
    }
    return exit_ok;
  }
  const CylinderContourReport cyl = cylinder_contour_check(spec);
  json rows = json::array();
  for (std::size_t k = 0; k < rep.lambda.size(); ++k) {
    rows.push_back({{"lambda", rep.lambda[k]}, {"S", rep.S[k]}, {"psi", array_json(rep.psi[k])},
                    {"residual", rep.residual[k]}});
  }
  json j{{"delta_S", rep.delta_S},
         {"psi_dJ_integral", rep.psi_dJ_integral},
         {"wall_action", rep.wall_action},
         {"discrepancy", rep.discrepancy()},
         {"max_residual", rep.max_residual},
         {"cylinder",
          {{"segments", array_json(cyl.segments)},
           {"per_edge", array_json(cyl.per_edge)},
           {"total", cyl.total},
           {"expected", cyl.expected},
           {"upstairs", cyl.upstairs}}},
         {"rows", rows}};
  out << j.dump(2) << "\n";
  return exit_ok;
}

// reduce
int cmd_reduce(const std::string& config_path, const std::string& edges_text, const std::string& point,
               const Format& fmt, std::ostream& out) {
  SpinorConfig c;
  if (!config_path.empty()) {
    const json j = read_json_file(config_path);
    if (!j.contains("z") || !j.contains("zp") || j["z"].size() != 6 || j["zp"].size() != 6) {
      throw UsageError("config needs six spinors under \"z\" and six under \"zp\"");
    }
    for (int r = 0; r < 6; ++r) {
      c.z[r] = spinor_from_json(j["z"][r]);
      c.zp[r] = spinor_from_json(j["zp"][r]);
    }
  } else if (!edges_text.empty()) {
    const TetraEmbedding emb = embed(edges_from(parse_edges(edges_text)));
    if (emb.existence != ExistenceClass::nondegenerate) throw ExistenceError("reduce needs a nondegenerate tetrahedron");
    c = build_config(emb);
    if (point == "Q") {
      c = leg1(c, emb.normals);
    } else if (point == "Pprime") {
      c = leg2(leg1(c, emb.normals), emb.normals);
    } else if (point != "P") {
      throw UsageError("--point must be P, Q or Pprime");
    }
  } else {
    throw UsageError("reduce needs --config FILE or --edges");
  }
  struct Row {
    ReducedPoint p;
    LambdaBranch branch;
    std::optional<CylinderPoint> cyl;
  };
  std::vector<Row> rows;
  for (int r = 0; r < 6; ++r) {
    Row row{project_pair(c.z[r], c.zp[r]), LambdaBranch::not_member, std::nullopt};
    const double j = row.p.J.norm();
    if (j > 0.0) row.branch = lambda_membership(row.p, j);
    if (row.branch != LambdaBranch::not_member) row.cyl = project_cylinder(row.p);
    rows.push_back(row);
  }
  if (fmt.csv()) {
    out << csv_row({"r", "branch", "J", "tau", "Jx", "Jy", "Jz", "Jpx", "Jpy", "Jpz"});
    for (int r = 0; r < 6; ++r) {
      const auto& row = rows[r];
      const Vec3 jp = row.p.Jp();
      out << csv_row({std::to_string(r + 1), to_string(row.branch), row.cyl ? format_double(row.cyl->J) : "",
                      row.cyl ? format_double(row.cyl->tau) : "", format_double(row.p.J.x()),
                      format_double(row.p.J.y()), format_double(row.p.J.z()), format_double(jp.x()),
                      format_double(jp.y()), format_double(jp.z())});
    }
    return exit_ok;
  }
  json arr = json::array();
  for (const auto& row : rows) {
    json cyl = nullptr;
    if (row.cyl) cyl = {{"J", row.cyl->J}, {"tau", row.cyl->tau}};
    arr.push_back({{"g", mat2_json(row.p.g.matrix())},
                   {"J", vec_json(row.p.J)},
                   {"Jp", vec_json(row.p.Jp())},
                   {"branch", to_string(row.branch)},
                   {"cylinder", cyl}});
  }
  out << json{{"config", config_json(c)}, {"reduced", arr}}.dump(2) << "\n";
  return exit_ok;
}

// character
int cmd_character(const std::string& j_text, int n, const Format& fmt, std::ostream& out) {
  if (n < 1) throw UsageError("--n must be positive");
  std::vector<int> two_js;
  for (const auto& part : split(j_text, ',')) two_js.push_back(parse_two_j(part));
  if (fmt.csv()) out << csv_row({"j", "phi", "chi"});
  json rows = json::array();
  for (int tj : two_js) {
    for (int k = 0; k < n; ++k) {
      const double phi = 2.0 * pi * (k + 1) / (n + 1);
      const double chi = character(tj, phi);
      if (fmt.csv()) {
        out << csv_row({format_double(0.5 * tj), format_double(phi), format_double(chi)});
      } else {
        rows.push_back({{"j", 0.5 * tj}, {"phi", phi}, {"chi", chi}});
      }
    }
  }
  if (!fmt.csv()) out << rows.dump(2) << "\n";
  return exit_ok;
}

std::vector<int> parse_scales(const std::string& text) {
  std::vector<int> ks;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw UsageError("--sweep takes K0:K1 or a comma-separated list");
    const long a = parse_long(parts[0]), b = parse_long(parts[1]);
    if (b < a || b - a > 100000) throw UsageError("--sweep range is empty or too large");
    for (long k = a; k <= b; ++k) ks.push_back(static_cast<int>(k));
  } else {
    for (const auto& p : split(text, ',')) {
      if (!trim(p).empty()) ks.push_back(static_cast<int>(parse_long(p)));
    }
  }
  return ks;
}

// sixj
int cmd_sixj(const std::string& j_text, bool want_exact, bool want_asym, const std::string& sweep, const Format& fmt,
             std::ostream& out, std::ostream& err) {
  const auto parts = split(j_text, ',');
  if (parts.size() != 6) throw UsageError("--j needs six values");
  SixJArgs args;
  for (int r = 0; r < 6; ++r) args.two_j[r] = parse_two_j(parts[r]);

  if (!sweep.empty()) {
    const SweepResult res = compare_sweep(args, parse_scales(sweep));
    for (const auto& note : res.notes) err << "note: " << note << "\n";
    if (fmt.csv()) {
      out << csv_row({"k", "exact", "asym", "abs_err", "rel_err_vs_amplitude"});
      for (const auto& row : res.rows) {
        out << csv_row({std::to_string(row.k), format_double(row.exact_value), format_double(row.asym),
                        format_double(row.abs_err), format_double(row.rel_err)});
      }
    } else {
      json rows = json::array();
      for (const auto& row : res.rows) {
        rows.push_back({{"k", row.k},
                        {"exact", row.exact_value},
                        {"exact_rational", row.exact.to_string()},
                        {"asym", row.asym},
                        {"abs_err", row.abs_err},
                        {"rel_err_vs_amplitude", row.rel_err}});
      }
      out << json{{"rows", rows}, {"notes", res.notes}}.dump(2) << "\n";
    }
    return exit_ok;
  }

  // Without flags, report the exact value and the asymptotic one when it exists.
  const bool implicit = !want_exact && !want_asym;
  std::optional<ExactRational> exact;
  std::optional<double> asym;
  if (want_exact || implicit) exact = exact_6j(args);
  if (want_asym) {
    asym = pr_asymptotic(args);
  } else if (implicit) {
    try {
      asym = pr_asymptotic(args);
    } catch (const DomainError&) {
    }
  }
  if (fmt.csv()) {
    // A single requested quantity prints as a bare value.
    if (want_exact && !want_asym) {
      out << exact->to_string() << "\n";
    } else if (want_asym && !want_exact) {
      out << format_double(*asym) << "\n";
    } else {
      out << csv_row({"exact", "value", "asym"});
      out << csv_row({exact->to_string(), format_double(exact->to_double()), asym ? format_double(*asym) : ""});
    }
    return exit_ok;
  }
  json j{{"j", json::array()}};
  for (int r = 0; r < 6; ++r) j["j"].push_back(args.j(r));
  if (exact) {
    j["exact"] = exact->to_string();
    j["value"] = exact->to_double();
  }
  j["asym"] = asym ? json(*asym) : json(nullptr);
  out << j.dump(2) << "\n";
  return exit_ok;
}

// qgroup
int cmd_qgroup(const std::string& demo, const std::string& j1_text, const std::string& j2_text,
               const std::string& j3_text, std::uint64_t seed, int count, std::ostream& out) {
  sampling::Rng rng(seed);
  auto pick = [&](const std::string& t) { return t.empty() ? sampling::deformed_j(rng) : deformed_from(t); };
  const q::DeformedJ j1 = pick(j1_text), j2 = pick(j2_text), j3 = pick(j3_text);
  json j;
  if (demo == "coproduct") {
    if (count < 0) throw UsageError("--count must be nonnegative");
    double product = 0.0, assoc = 0.0;
    for (int i = 0; i < count; ++i) {
      const auto a = sampling::deformed_j(rng), b = sampling::deformed_j(rng), c = sampling::deformed_j(rng);
      product = std::max(product, q::distance(q::comult2(a, b), q::J_from_b(q::b_from_J(a) * q::b_from_J(b))));
      assoc = std::max(assoc, q::distance(q::comult2(q::comult2(a, b), c), q::comult3(a, b, c)));
    }
    j = {{"demo", demo},
         {"J1", deformed_json(j1)},
         {"J2", deformed_json(j2)},
         {"J3", deformed_json(j3)},
         {"comult2", deformed_json(q::comult2(j1, j2))},
         {"comult2_reversed", deformed_json(q::comult2(j2, j1))},
         {"matrix_product", deformed_json(q::J_from_b(q::b_from_J(j1) * q::b_from_J(j2)))},
         {"comult3", deformed_json(q::comult3(j1, j2, j3))},
         {"random_samples", count},
         {"max_product_error", product},
         {"max_associativity_error", assoc}};
  } else if (demo == "diangle") {
    const q::DeformedJ j2c = q::diangle_closure(j1);
    j = {{"demo", demo},
         {"J1", deformed_json(j1)},
         {"J2", deformed_json(j2c)},
         {"comult2", deformed_json(q::comult2(j1, j2c))}};
  } else if (demo == "triangle") {
    const q::TriangleClosure t = q::triangle_closure(j1, j2);
    j = {{"demo", demo},
         {"J1", deformed_json(j1)},
         {"J2", deformed_json(j2)},
         {"J3", deformed_json(t.J3)},
         {"comult3", deformed_json(t.total)},
         {"sides", array_json(t.sides)},
         {"lengths", array_json(t.lengths)}};
  } else {
    throw UsageError("--demo must be coproduct, diangle or triangle");
  }
  out << j.dump(2) << "\n";
  return exit_ok;
}

// acceptance
int cmd_acceptance(std::uint64_t seed, const Format& fmt, std::ostream& out) {
  json arr = json::array();
  const auto results = acceptance::run_all(seed, [&](const acceptance::Criterion& c) {
    if (!fmt.csv() && fmt.value == "text") out << acceptance::format_line(c) << std::endl;
  });
  bool all = true;
  for (const auto& c : results) all = all && c.passed;
  if (fmt.value == "json") {
    for (const auto& c : results) {
      arr.push_back({{"id", c.id},
                     {"name", c.name},
                     {"passed", c.passed},
                     {"detail", c.detail},
                     {"seconds", c.seconds}});
    }
    out << json{{"seed", seed}, {"all_passed", all}, {"criteria", arr}}.dump(2) << "\n";
  } else if (fmt.csv()) {
    out << csv_row({"id", "passed", "seconds", "name", "detail"});
    for (const auto& c : results) {
      out << csv_row({std::to_string(c.id), c.passed ? "true" : "false", format_double(c.seconds),
                      "\"" + c.name + "\"", "\"" + c.detail + "\""});
    }
  }
  return all ? exit_ok : exit_domain;
}

}  // namespace

std::array<double, 6> parse_edges(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 6) throw UsageError("--edges needs six comma-separated lengths");
  std::array<double, 6> e{};
  for (int r = 0; r < 6; ++r) {
    e[r] = parse_double(parts[r]);
    if (e[r] < 0.0) throw UsageError("edge lengths must be nonnegative");
  }
  return e;
}

int parse_two_j(const std::string& raw) {
  const std::string s = trim(raw);
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const long num = parse_long(s.substr(0, slash));
    const long den = parse_long(s.substr(slash + 1));
    if (den == 2 && num >= 0) return static_cast<int>(num);
    if (den == 1 && num >= 0) return static_cast<int>(2 * num);
    throw UsageError("not a nonnegative half-integer: '" + raw + "'");
  }
  const double v = parse_double(s);
  const double t = 2.0 * v;
  if (t < 0.0 || t != std::round(t) || t > 1e6) throw UsageError("not a nonnegative half-integer: '" + raw + "'");
  return static_cast<int>(t);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schlafli identity numerics: tetrahedra, spinor contours, reductions, 6j symbols"};
  app.require_subcommand(1);
  // -h is taken by the step size of the schlafli subcommand.
  app.set_help_flag("--help", "print this help and exit");

  std::string edges, orient = "+", sweep_spec, config, point = "P", jtext, sweep, demo = "coproduct", j1, j2, j3;
  std::optional<double> h;
  int order = 6, samples = 10000, n = 100, count = 1000;
  std::uint64_t seed = acceptance::default_seed;
  bool want_exact = false, want_asym = false;
  Format f_tetra, f_schlafli, f_contour, f_stokes, f_reduce, f_character, f_sixj, f_qgroup, f_accept;

  auto* tetra = app.add_subcommand("tetra", "classify and embed a tetrahedron");
  tetra->add_option("--edges", edges, "J1..J6 as a,b,c,d,e,f")->required();
  tetra->add_option("--orientation", orient, "+ or -")->capture_default_str();
  add_format(tetra, f_tetra, "json");

  auto* schl = app.add_subcommand("schlafli", "Schlafli, Euler, symmetry and generating-function residuals");
  schl->add_option("--edges", edges, "J1..J6")->required();
  schl->add_option("--h", h, "finite-difference step (default 1e-5 * mean edge)");
  schl->add_option("--stencil", order, "central stencil order")->check(CLI::IsMember({2, 4, 6}))->capture_default_str();
  add_format(schl, f_schlafli, "json");

  auto* contour = app.add_subcommand("contour", "run the P -> Q -> P' -> P contour");
  contour->add_option("--edges", edges, "J1..J6")->required();
  contour->add_option("--orientation", orient, "+ or -")->capture_default_str();
  contour->add_option("--samples", samples, "samples per flow")->capture_default_str();
  add_format(contour, f_contour, "json");

  auto* stokes = app.add_subcommand("stokes", "Stokes-theorem sweep over a one-parameter family");
  stokes->add_option("--sweep-spec", sweep_spec, "JSON {base, direction, lambda0, lambda1, n}")->required();
  add_format(stokes, f_stokes, "csv");

  auto* reduce = app.add_subcommand("reduce", "project a spinor configuration to T*SU(2) and the cylinders");
  reduce->add_option("--config", config, "JSON {z: [...6], zp: [...6]}, spinors as [[re,im],[re,im]]");
  reduce->add_option("--edges", edges, "build the configuration from a tetrahedron instead");
  reduce->add_option("--point", point, "P, Q or Pprime (with --edges)")->capture_default_str();
  add_format(reduce, f_reduce, "json");

  auto* chr = app.add_subcommand("character", "SU(2) characters on a phi grid in (0, 2 pi)");
  jtext = "0,1/2,1,3/2,2";
  chr->add_option("--j", jtext, "comma-separated spins, 3/2 or 1.5")->capture_default_str();
  chr->add_option("--n", n, "grid points")->capture_default_str();
  add_format(chr, f_character, "csv");

  auto* sixj = app.add_subcommand("sixj", "exact and asymptotic 6j symbols");
  sixj->add_option("--j", jtext, "j1..j6, each 3/2 or 1.5")->required();
  sixj->add_flag("--exact", want_exact, "exact value");
  sixj->add_flag("--asym", want_asym, "Ponzano-Regge asymptotic value");
  sixj->add_option("--sweep", sweep, "scales K0:K1 or k1,k2,...");
  add_format(sixj, f_sixj, "csv");

  auto* qgroup = app.add_subcommand("qgroup", "q-deformed coproduct, diangle and triangle demos");
  qgroup->add_option("--demo", demo, "coproduct, diangle or triangle")->capture_default_str();
  qgroup->add_option("--J1", j1, "Jz,Jx,Jy (random if omitted)");
  qgroup->add_option("--J2", j2, "Jz,Jx,Jy");
  qgroup->add_option("--J3", j3, "Jz,Jx,Jy");
  qgroup->add_option("--seed", seed, "random seed")->capture_default_str();
  qgroup->add_option("--count", count, "random coproduct checks")->capture_default_str();
  qgroup->add_option("--format", f_qgroup.value, "output format (json only)")->check(CLI::IsMember({"json"}));

  auto* accept = app.add_subcommand("acceptance", "run every acceptance criterion");
  accept->add_option("--seed", seed, "random seed")->capture_default_str();
  f_accept.value = "text";
  accept->add_option("--format", f_accept.value, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (*tetra) return cmd_tetra(edges, orient, f_tetra, out);
    if (*schl) return cmd_schlafli(edges, h, order, f_schlafli, out);
    if (*contour) return cmd_contour(edges, orient, samples, f_contour, out);
    if (*stokes) return cmd_stokes(sweep_spec, f_stokes, out);
    if (*reduce) return cmd_reduce(config, edges, point, f_reduce, out);
    if (*chr) return cmd_character(jtext, n, f_character, out);
    if (*sixj) return cmd_sixj(jtext, want_exact, want_asym, sweep, f_sixj, out, err);
    if (*qgroup) return cmd_qgroup(demo, j1, j2, j3, seed, count, out);
    if (*accept) return cmd_acceptance(seed, f_accept, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  }
  err << "usage error: no subcommand\n";
  return exit_usage;
}

}  // namespace schlafli::cli
