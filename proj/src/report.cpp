#include "ckforms/report.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ckf {

namespace {

const std::vector<std::string> kSectionOrder = {"omega1", "omega2", "omega3", "theta1", "theta2",
                                                "theta3", "theta4", "sigma1", "sigma2", "sigma3"};

const std::map<std::string, std::vector<std::string>>& family_parameters() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"abelian", {}}, {"type2", {"c"}}, {"type3", {"alpha"}}, {"type4", {"a", "b"}}, {"type6", {}}, {"gab", {"a", "b"}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <Scalar S>
S require_scalar(const std::string& text, const std::string& what) {
  auto v = parse_scalar<S>(text);
  if (!v) throw InputError("cannot read " + what + " = '" + text + "' as a number");
  return *v;
}

template <Scalar S>
WeylSpectrum spectrum(const Matrix<S>& w, const Tolerance& tol, double scale) {
  WeylSpectrum s;
  s.zero = w.is_zero(tol, scale);
  const S tr = w.trace();
  const S minors = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0) + w(0, 0) * w(2, 2) - w(0, 2) * w(2, 0) +
                   w(1, 1) * w(2, 2) - w(1, 2) * w(2, 1);
  const S det = w(0, 0) * (w(1, 1) * w(2, 2) - w(1, 2) * w(2, 1)) - w(0, 1) * (w(1, 0) * w(2, 2) - w(1, 2) * w(2, 0)) +
                w(0, 2) * (w(1, 0) * w(2, 1) - w(1, 1) * w(2, 0));
  s.char_poly = {to_string(S(-tr)), to_string(minors), to_string(S(-det))};
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m(r, c) = ScalarTraits<S>::to_double(w(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m, Eigen::EigenvaluesOnly);
  const double cut = 1e-12 * std::max(1.0, m.norm());
  for (int k = 0; k < 3; ++k) {
    const double v = es.eigenvalues()(k);
    s.eigenvalues.push_back(std::fabs(v) < cut ? 0.0 : v);
  }
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string param_list(const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out;
  for (const auto& [k, v] : params) out += (out.empty() ? "" : ", ") + k + " = " + v;
  return out;
}

ordered_json spectrum_json(const WeylSpectrum& s) {
  ordered_json j;
  j["zero"] = s.zero;
  j["char_poly"] = s.char_poly;
  j["eigenvalues"] = s.eigenvalues;
  return j;
}

WeylSpectrum spectrum_from_json(const ordered_json& j) {
  WeylSpectrum s;
  s.zero = j.at("zero").get<bool>();
  s.char_poly = j.at("char_poly").get<std::array<std::string, 3>>();
  s.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  return s;
}

std::string weyl_cell(const WeylSpectrum& s) {
  if (s.zero) return "0";
  std::string out = "t^3";
  const char* powers[] = {" t^2", " t", ""};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string& c = s.char_poly[k];
    if (c == "0") continue;
    const bool neg = !c.empty() && c[0] == '-';
    out += neg ? " - " : " + ";
    out += (neg ? c.substr(1) : c) + powers[k];
  }
  out += "; eigenvalues";
  for (double v : s.eigenvalues) out += " " + format_double(v);
  return out;
}

}  // namespace

const std::vector<std::string>& family_parameter_names(const std::string& family) {
  const auto it = family_parameters().find(family);
  if (it == family_parameters().end()) throw InputError("unknown family '" + family + "'");
  return it->second;
}

Backend parse_backend(const std::string& name) {
  if (name == "auto" || name.empty()) return Backend::automatic;
  if (name == "rational") return Backend::rational;
  if (name == "float") return Backend::floating;
  throw InputError("unknown backend '" + name + "' (expected rational or float)");
}

bool AlgebraInput::exact() const {
  if (requested_float) return false;
  for (const auto& [k, v] : parameters)
    if (!is_rational_literal(v)) return false;
  for (const auto& b : brackets)
    for (const auto& v : b.v)
      if (!is_rational_literal(v)) return false;
  return true;
}

AlgebraInput parse_algebra_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("algebra description must be a JSON object");
  AlgebraInput in;
  try {
    in.label = doc.value("label", std::string("custom"));
    const std::string scalars = doc.value("scalars", std::string("rational"));
    if (scalars != "rational" && scalars != "float") throw InputError("scalars must be \"rational\" or \"float\"");
    in.requested_float = scalars == "float";
    if (!doc.contains("brackets") || !doc["brackets"].is_array()) throw InputError("missing \"brackets\" array");
    for (const auto& b : doc["brackets"]) {
      AlgebraInput::Bracket br;
      br.i = b.at("i").get<int>();
      br.j = b.at("j").get<int>();
      const auto& v = b.at("v");
      if (!v.is_array() || v.size() != 4) throw InputError("bracket value must be an array of 4 scalars");
      for (std::size_t k = 0; k < 4; ++k) {
        if (v[k].is_string())
          br.v[k] = v[k].get<std::string>();
        else if (v[k].is_number())
          br.v[k] = v[k].dump();
        else
          throw InputError("bracket entries must be strings or numbers");
      }
      in.brackets.push_back(br);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed algebra description: ") + e.what());
  }
  return in;
}

AlgebraInput family_input(const std::string& family, std::vector<std::pair<std::string, std::string>> params) {
  const auto& expected = family_parameter_names(family);
  for (const auto& [k, v] : params)
    if (std::find(expected.begin(), expected.end(), k) == expected.end())
      throw InputError("family " + family + " takes no parameter '" + k + "'");
  AlgebraInput in;
  in.family = family;
  in.label = family;
  for (const auto& name : expected) {
    auto p = std::find_if(params.begin(), params.end(), [&](const auto& kv) { return kv.first == name; });
    if (p == params.end()) throw InputError("family " + family + " requires --" + name);
    in.parameters.emplace_back(name, trim(p->second));
  }
  return in;
}

template <Scalar S>
MetricLieAlgebra<S> build_algebra(const AlgebraInput& in) {
  if (!in.family.empty()) {
    std::map<std::string, S> p;
    for (const auto& [k, v] : in.parameters) p.emplace(k, require_scalar<S>(v, k));
    try {
      if (in.family == "abelian") return abelian<S>();
      if (in.family == "type2") return type2<S>(p.at("c"));
      if (in.family == "type3") return type3<S>(p.at("alpha"));
      if (in.family == "type4") return type4<S>(p.at("a"), p.at("b"));
      if (in.family == "type6") return type6<S>();
      if (in.family == "gab") return gab<S>(p.at("a"), p.at("b"));
    } catch (const std::invalid_argument& e) {
      throw InputError(in.family + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw InputError(in.family + ": missing parameter");
    }
    throw InputError("unknown family '" + in.family + "'");
  }
  MetricLieAlgebra<S> g(in.label);
  std::vector<std::pair<int, int>> seen;
  for (const auto& b : in.brackets) {
    if (b.i < 1 || b.i > 4 || b.j < 1 || b.j > 4 || b.i == b.j)
      throw InputError("bracket indices must be distinct and in 1..4, got (" + std::to_string(b.i) + "," +
                       std::to_string(b.j) + ")");
    const std::pair<int, int> key{std::min(b.i, b.j), std::max(b.i, b.j)};
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw InputError("bracket [e" + std::to_string(key.first) + ",e" + std::to_string(key.second) + "] given twice");
    seen.push_back(key);
    Vector4<S> v;
    for (int k = 0; k < 4; ++k) v[k] = require_scalar<S>(b.v[static_cast<std::size_t>(k)], "bracket entry");
    g.set_bracket(b.i - 1, b.j - 1, v);
  }
  return g;
}

Backend resolve_backend(Backend requested, const AlgebraInput& in) {
  const bool exact = in.exact();
  if (requested == Backend::automatic) return exact ? Backend::rational : Backend::floating;
  if (requested == Backend::rational && !exact)
    throw InputError("rational backend needs \"p/q\" literals; use --backend float for decimal input");
  return requested;
}

template <Scalar S>
std::string describe(const AlmostComplexStructure<S>& j) {
  auto image = [&](int k) {
    const Vector4<S> v = j(Vector4<S>::basis(k));
    int idx = -1, count = 0;
    for (int m = 0; m < 4; ++m)
      if (!exactly_zero(v[m])) {
        idx = m;
        ++count;
      }
    if (count == 1 && (v[idx] == S(1) || v[idx] == S(-1)))
      return std::make_pair(idx, std::string(v[idx] == S(1) ? "" : "-") + "e" + std::to_string(idx + 1));
    return std::make_pair(-1, "(" + Form<S>::vector(v).str() + ")");
  };
  const auto [to, first] = image(0);
  int p = 1;
  if (to == 1) p = 2;
  return "Je1=" + first + ",Je" + std::to_string(p + 1) + "=" + image(p).second;
}

template <Scalar S>
ClassificationReport analyze(const MetricLieAlgebra<S>& g, const AnalyzeOptions& opts) {
  const Tolerance& tol = opts.tol;
  if (const auto bad = validate(g, tol); !bad.empty()) {
    std::vector<std::string> lines;
    for (const auto& v : bad)
      lines.push_back("(e" + std::to_string(v.triple[0] + 1) + ",e" + std::to_string(v.triple[1] + 1) + ",e" +
                      std::to_string(v.triple[2] + 1) + "): " + Form<S>::vector(v.defect).str());
    throw ValidationError("Jacobi identity fails on " + std::to_string(bad.size()) + " triple(s)", std::move(lines));
  }
  ClassificationReport r;
  r.label = g.label();
  r.backend = ScalarTraits<S>::name;
  for (const auto& p : g.parameters()) r.parameters.emplace_back(p.name, to_string(p.value));

  const CurvatureData<S> cd = riemann(g);
  if (const std::string err = curvature_sign_selftest(cd, tol); !err.empty())
    r.warnings.push_back("curvature sign self-test: " + err);
  const CkDims dims = ck_dims(g, cd, tol);
  const Classification<S> c = classify_theorem_main(g, cd, dims, tol);

  r.flags = c.flags;
  r.scalar_curvature = to_string(cd.scalar);
  r.weyl_plus = spectrum(cd.w_plus, tol, cd.scale);
  r.weyl_minus = spectrum(cd.w_minus, tol, cd.scale);
  r.ck_plus = dims.plus;
  r.ck_minus = dims.minus;
  const bool wp = c.flags.half_cf_plus, wm = c.flags.half_cf_minus;
  r.weyl_vanishing_side = wp && wm ? "both" : wp ? "plus" : wm ? "minus" : "none";
  r.theorem_case = case_name(c.theorem_case);
  for (const auto& l : c.lck)
    r.lck.push_back({describe(l.j), side_name(l.j.side()), Form<S>::vector(l.report.lee_form).str(), l.report.is_kahler});
  for (Side s : {Side::plus, Side::minus})
    if (dims.on(s) >= 2 && !(s == Side::plus ? wp : wm)) r.dimension_weyl_check = false;
  r.notes = c.notes;
  r.low_confidence = dims.low_confidence;
  if (r.low_confidence)
    r.warnings.push_back("a rank decision had a singular value within 10x of the tolerance; dimensions are uncertain");

  if (opts.include_connection) {
    for (Side s : {Side::plus, Side::minus}) {
      auto& out = r.killing_connection[side_name(s)];
      const auto kc = build_killing_connection(g, cd, s);
      for (const auto& m : kc.gamma) {
        std::vector<std::vector<std::string>> rows(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t k = 0; k < m.cols(); ++k) rows[i].push_back(to_string(m(i, k)));
        out.push_back(std::move(rows));
      }
    }
  }
  return r;
}

ClassificationReport analyze(const AlgebraInput& in, Backend backend, const AnalyzeOptions& opts) {
  ClassificationReport r;
  if (resolve_backend(backend, in) == Backend::rational) {
    auto g = build_algebra<Rational>(in);
    g.set_label(in.label);
    r = analyze(g, opts);
  } else {
    auto g = build_algebra<double>(in);
    g.set_label(in.label);
    r = analyze(g, opts);
    if (in.exact()) r.notes.push_back("rational input evaluated on the floating backend; the exact backend is preferred");
  }
  if (!in.family.empty()) r.parameters = in.parameters;
  return r;
}

ordered_json to_json(const ClassificationReport& r) {
  ordered_json j;
  j["label"] = r.label;
  j["backend"] = r.backend;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["flags"] = {{"flat", r.flags.flat},
                {"einstein", r.flags.einstein},
                {"conformally_flat", r.flags.conformally_flat},
                {"weyl_plus_zero", r.flags.half_cf_plus},
                {"weyl_minus_zero", r.flags.half_cf_minus}};
  j["scalar_curvature"] = r.scalar_curvature;
  j["weyl"] = {{"plus", spectrum_json(r.weyl_plus)}, {"minus", spectrum_json(r.weyl_minus)}};
  j["ck_dims"] = {{"plus", r.ck_plus}, {"minus", r.ck_minus}, {"weyl_vanishing_side", r.weyl_vanishing_side}};
  j["theorem_case"] = r.theorem_case;
  ordered_json lck = ordered_json::array();
  for (const auto& l : r.lck)
    lck.push_back({{"j", l.j}, {"side", l.side}, {"lee_form", l.lee_form}, {"kahler", l.kahler}});
  j["lck"] = lck;
  j["dimension_weyl_check"] = r.dimension_weyl_check;
  j["notes"] = r.notes;
  j["warnings"] = r.warnings;
  j["low_confidence"] = r.low_confidence;
  j["section_order"] = kSectionOrder;
  if (!r.killing_connection.empty()) {
    ordered_json kc = ordered_json::object();
    for (const auto& [side, mats] : r.killing_connection) kc[side] = mats;
    j["killing_connection"] = kc;
  }
  return j;
}

ClassificationReport report_from_json(const ordered_json& j) {
  ClassificationReport r;
  try {
    r.label = j.at("label").get<std::string>();
    r.backend = j.at("backend").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
    const auto& f = j.at("flags");
    r.flags.flat = f.at("flat").get<bool>();
    r.flags.einstein = f.at("einstein").get<bool>();
    r.flags.conformally_flat = f.at("conformally_flat").get<bool>();
    r.flags.half_cf_plus = f.at("weyl_plus_zero").get<bool>();
    r.flags.half_cf_minus = f.at("weyl_minus_zero").get<bool>();
    r.scalar_curvature = j.at("scalar_curvature").get<std::string>();
    r.weyl_plus = spectrum_from_json(j.at("weyl").at("plus"));
    r.weyl_minus = spectrum_from_json(j.at("weyl").at("minus"));
    r.ck_plus = j.at("ck_dims").at("plus").get<std::size_t>();
    r.ck_minus = j.at("ck_dims").at("minus").get<std::size_t>();
    r.weyl_vanishing_side = j.at("ck_dims").at("weyl_vanishing_side").get<std::string>();
    r.theorem_case = j.at("theorem_case").get<std::string>();
    for (const auto& l : j.at("lck"))
      r.lck.push_back({l.at("j").get<std::string>(), l.at("side").get<std::string>(),
                       l.at("lee_form").get<std::string>(), l.at("kahler").get<bool>()});
    r.dimension_weyl_check = j.at("dimension_weyl_check").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.low_confidence = j.at("low_confidence").get<bool>();
    if (j.contains("killing_connection"))
      for (const auto& [side, mats] : j.at("killing_connection").items())
        r.killing_connection[side] = mats.get<std::vector<std::vector<std::vector<std::string>>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("not a classification report: ") + e.what());
  }
  return r;
}

std::string to_markdown(const ClassificationReport& r) {
  std::ostringstream md;
  md << "# " << r.label;
  if (!r.parameters.empty()) md << " (" << param_list(r.parameters) << ")";
  md << "\n\nbackend: " << r.backend << "\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| scalar curvature | " << r.scalar_curvature << " |\n";
  md << "| flat | " << yes_no(r.flags.flat) << " |\n";
  md << "| Einstein | " << yes_no(r.flags.einstein) << " |\n";
  md << "| conformally flat | " << yes_no(r.flags.conformally_flat) << " |\n";
  md << "| W+ | " << weyl_cell(r.weyl_plus) << " |\n";
  md << "| W- | " << weyl_cell(r.weyl_minus) << " |\n";
  md << "| conformal Killing dims (plus, minus) | " << r.ck_plus << ", " << r.ck_minus << " |\n";
  md << "| Weyl-vanishing side | " << r.weyl_vanishing_side << " |\n";
  md << "| case | " << r.theorem_case << " |\n";
  md << "| dimension >= 2 only where Weyl vanishes | " << yes_no(r.dimension_weyl_check) << " |\n";
  if (!r.lck.empty()) {
    md << "\n## Invariant lcK structures\n\n| J | side | Lee form | Kaehler |\n|---|---|---|---|\n";
    for (const auto& l : r.lck)
      md << "| " << l.j << " | " << l.side << " | " << l.lee_form << " | " << yes_no(l.kahler) << " |\n";
  }
  if (!r.notes.empty()) {
    md << "\n## Notes\n\n";
    for (const auto& n : r.notes) md << "- " << n << "\n";
  }
  if (!r.warnings.empty()) {
    md << "\n## Warnings\n\n";
    for (const auto& w : r.warnings) md << "- " << w << "\n";
  }
  return md.str();
}

std::vector<std::string> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  std::vector<std::string> out;
  if (t.empty()) return out;
  constexpr std::size_t kMaxPoints = 10000;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3) throw InputError("range must be start:step:stop, got '" + t + "'");
    const auto a = Rational::parse(parts[0]), d = Rational::parse(parts[1]), b = Rational::parse(parts[2]);
    if (a && d && b) {
      if (d->is_zero()) throw InputError("range step must be nonzero");
      for (Rational v = *a; d->sign() > 0 ? v <= *b : v >= *b; v += *d) {
        if (out.size() == kMaxPoints) throw InputError("range has too many points");
        out.push_back(v.str());
      }
      return out;
    }
    const auto fa = parse_scalar<double>(parts[0]), fd = parse_scalar<double>(parts[1]), fb = parse_scalar<double>(parts[2]);
    if (!fa || !fd || !fb) throw InputError("cannot read range '" + t + "'");
    if (*fd == 0.0) throw InputError("range step must be nonzero");
    const double n = std::floor((*fb - *fa) / *fd + 1e-9);
    if (n >= static_cast<double>(kMaxPoints)) throw InputError("range has too many points");
    for (long k = 0; k <= static_cast<long>(n); ++k) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.15g", *fa + static_cast<double>(k) * *fd);
      out.emplace_back(buf);
    }
    return out;
  }
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) {
    p = trim(p);
    if (p.empty()) throw InputError("empty entry in list '" + t + "'");
    out.push_back(p);
  }
  return out;
}

SweepResult run_sweep(const std::string& family,
                      const std::vector<std::pair<std::string, std::vector<std::string>>>& axes, Backend backend,
                      const AnalyzeOptions& opts) {
  SweepResult s;
  s.family = family;
  std::size_t total = 1;
  for (const auto& [name, values] : axes) total *= values.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    SweepRow row;
    row.index = idx;
    std::size_t rest = idx;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
      row.parameters.insert(row.parameters.begin(), {it->first, it->second[rest % it->second.size()]});
      rest /= it->second.size();
    }
    try {
      row.report = analyze(family_input(family, row.parameters), backend, opts);
      ++s.checked;
      if (!row.report->dimension_weyl_check) s.dimension_weyl_check = false;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

std::string sweep_markdown(const SweepResult& s) {
  std::ostringstream md;
  md << "# sweep: " << s.family << "\n\n";
  md << "| # | parameters | S | Einstein | W+ = 0 | W- = 0 | dims (plus, minus) | case | notes |\n";
  md << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : s.rows) {
    md << "| " << row.index << " | " << param_list(row.parameters) << " | ";
    if (!row.report) {
      md << "| | | | | | error: " << row.error << " |\n";
      continue;
    }
    const auto& r = *row.report;
    std::string notes;
    for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
    md << r.scalar_curvature << " | " << yes_no(r.flags.einstein) << " | " << yes_no(r.flags.half_cf_plus) << " | "
       << yes_no(r.flags.half_cf_minus) << " | " << r.ck_plus << ", " << r.ck_minus << " | " << r.theorem_case
       << " | " << notes << " |\n";
  }
  md << "| summary | " << s.checked << " of " << s.rows.size() << " rows analyzed | | | | | | | "
     << "dimension >= 2 only where Weyl vanishes: " << (s.dimension_weyl_check ? "pass" : "FAIL") << " |\n";
  return md.str();
}

ordered_json sweep_json(const SweepResult& s) {
  ordered_json j;
  j["family"] = s.family;
  ordered_json rows = ordered_json::array();
  for (const auto& row : s.rows) {
    ordered_json r;
    r["index"] = row.index;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : row.parameters) params[k] = v;
    r["parameters"] = params;
    if (row.report)
      r["report"] = to_json(*row.report);
    else
      r["error"] = row.error;
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["summary"] = {{"rows", s.rows.size()}, {"analyzed", s.checked}, {"dimension_weyl_check", s.dimension_weyl_check}};
  return j;
}

bool SelftestReport::ok() const { return failures.empty(); }

SelftestReport run_selftest(Backend backend, Fault fault, std::size_t trials, std::uint64_t seed) {
  SelftestReport r;
  r.identities = run_identity_suite(seed, trials, fault);
  for (const auto& id : r.identities) {
    if (id.ok())
      r.passed.push_back(id.name);
    else
      r.failures.emplace_back(id.name, id.first_failure);
  }

  using Q = Rational;
  const std::vector<MetricLieAlgebra<Q>> families = {abelian<Q>(),          type2<Q>(Q(1)),        type3<Q>(Q(1)),
                                                     type4<Q>(Q(1), Q(1)), type6<Q>(),            gab<Q>(Q(1, 2), Q(1)),
                                                     gab<Q>(Q(2), Q(1))};
  for (const auto& g : families) {
    const std::string err = curvature_sign_selftest(riemann(g));
    const std::string name = "curvature-sign:" + g.label() + "(" +
                             [&] {
                               std::string p;
                               for (const auto& x : g.parameters()) p += (p.empty() ? "" : ",") + x.value.str();
                               return p;
                             }() +
                             ")";
    if (err.empty())
      r.passed.push_back(name);
    else
      r.failures.emplace_back(name, err);
  }

  const auto g = gab<Q>(Q(1, 2), Q(1));
  const CkDims exact = ck_dims(g);
  const bool known = (exact.plus == 8 && exact.minus == 1) || (exact.plus == 1 && exact.minus == 8);
  if (known)
    r.passed.push_back("killing-dims:gab(1/2,1)");
  else
    r.failures.emplace_back("killing-dims:gab(1/2,1)",
                            "got (" + std::to_string(exact.plus) + "," + std::to_string(exact.minus) + ")");

  if (backend == Backend::floating) {
    const CkDims fl = ck_dims(gab<double>(0.5, 1.0));
    if (fl.plus == exact.plus && fl.minus == exact.minus)
      r.passed.push_back("floating-backend:gab(0.5,1)");
    else
      r.failures.emplace_back("floating-backend:gab(0.5,1)", "floating dimensions differ from exact ones");
    r.notes.push_back(
        "the identity suites require exact zero residuals and ran on the rational backend; the exact backend is "
        "preferred for rational input");
  }
  return r;
}

std::string selftest_text(const SelftestReport& r) {
  std::ostringstream out;
  for (const auto& id : r.identities)
    out << (id.ok() ? "PASS " : "FAIL ") << id.name << " (" << id.trials << " trials)"
        << (id.ok() ? "" : ": " + id.first_failure) << "\n";
  for (const auto& p : r.passed)
    if (p.find(':') != std::string::npos) out << "PASS " << p << "\n";
  for (const auto& [name, detail] : r.failures)
    if (name.find(':') != std::string::npos) out << "FAIL " << name << ": " << detail << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "selftest: " << (r.ok() ? "ok" : "FAILED") << "\n";
  return out.str();
}

template MetricLieAlgebra<Rational> build_algebra(const AlgebraInput&);
template MetricLieAlgebra<double> build_algebra(const AlgebraInput&);
template ClassificationReport analyze(const MetricLieAlgebra<Rational>&, const AnalyzeOptions&);
template ClassificationReport analyze(const MetricLieAlgebra<double>&, const AnalyzeOptions&);
template std::string describe(const AlmostComplexStructure<Rational>&);
template std::string describe(const AlmostComplexStructure<double>&);

}  // namespace ckf
