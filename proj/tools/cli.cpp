#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ckforms/report.hpp"

namespace ckf::cli {

namespace {

struct Common {
  std::string family;
  std::map<std::string, std::string> values;  // a, b, alpha, c as typed
  std::string format = "md";
  std::string backend = "auto";
  double tol = 1e-9;
};

void add_common(CLI::App* cmd, Common& c, bool with_family) {
  if (with_family)
    cmd->add_option("--family", c.family, "abelian, type2, type3, type4, type6 or gab")
        ->check(CLI::IsMember({"abelian", "type2", "type3", "type4", "type6", "gab"}));
  for (const char* name : {"a", "b", "alpha", "c"}) {
    c.values[name];  // keep map nodes stable before binding
    cmd->add_option(std::string("--") + name, c.values[name]);
  }
  cmd->add_option("--format", c.format, "md or json")->check(CLI::IsMember({"md", "json"}));
  cmd->add_option("--backend", c.backend, "rational or float (default: rational when the input allows it)")
      ->check(CLI::IsMember({"auto", "rational", "float"}));
  cmd->add_option("--tol", c.tol, "relative tolerance of the floating backend")->check(CLI::PositiveNumber);
}

std::vector<std::pair<std::string, std::string>> given(const CLI::App* cmd, const Common& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const char* name : {"a", "b", "alpha", "c"})
    if (cmd->count(std::string("--") + name) > 0) out.emplace_back(name, c.values.at(name));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_analyze(const CLI::App* cmd, const Common& c, const std::string& path, bool connection, std::ostream& out,
                std::ostream& err) {
  if (path.empty() == c.family.empty()) {
    err << "error: give either a JSON file or --family\n";
    return parse_error;
  }
  const AlgebraInput in = path.empty() ? family_input(c.family, given(cmd, c)) : parse_algebra_json(read_file(path));
  if (!path.empty() && !given(cmd, c).empty()) throw InputError("family parameters need --family");
  const ClassificationReport r = analyze(in, parse_backend(c.backend), {Tolerance{c.tol}, connection});
  if (c.format == "json")
    out << to_json(r).dump(2) << "\n";
  else
    out << to_markdown(r);
  if (r.low_confidence) {
    err << "warning: numerically borderline rank decision; rerun with the rational backend or a different --tol\n";
    return low_confidence;
  }
  return ok;
}

int cmd_sweep(const CLI::App* cmd, const Common& c, std::ostream& out, std::ostream& err) {
  if (c.family.empty()) {
    err << "error: sweep needs --family\n";
    return parse_error;
  }
  const auto& names = family_parameter_names(c.family);
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& name : names) {
    if (cmd->count("--" + name) == 0) {
      err << "error: sweep over " << c.family << " needs --" << name << " (list or start:step:stop)\n";
      return parse_error;
    }
    axes.emplace_back(name, parse_grid(c.values.at(name)));
  }
  for (const auto& [name, value] : given(cmd, c))
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw InputError("family " + c.family + " takes no parameter '" + name + "'");
  const SweepResult s = run_sweep(c.family, axes, parse_backend(c.backend), {Tolerance{c.tol}, false});
  if (c.format == "json")
    out << sweep_json(s).dump(2) << "\n";
  else
    out << sweep_markdown(s);
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformal Killing 2-forms on 4-dimensional metric Lie algebras", "ckforms"};
  app.require_subcommand(1);

  Common ac;
  std::string path;
  bool connection = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "classify one algebra (built-in family or JSON file)");
  analyze_cmd->add_option("input", path, "algebra description in JSON");
  add_common(analyze_cmd, ac, true);
  analyze_cmd->add_flag("--connection", connection, "include the Killing connection matrices in the report");

  Common sc;
  auto* sweep_cmd = app.add_subcommand("sweep", "analyze a grid of family parameters");
  add_common(sweep_cmd, sc, true);

  std::string backend = "rational";
  std::string inject;
  std::size_t trials = 200;
  auto* selftest_cmd = app.add_subcommand("selftest", "run the randomized identity suites and sign checks");
  selftest_cmd->add_option("--backend", backend)->check(CLI::IsMember({"rational", "float"}));
  selftest_cmd->add_option("--trials", trials, "random trials per identity")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--inject", inject, "deliberately break a check")
      ->check(CLI::IsMember({"reconstruction-sign"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_cmd, ac, path, connection, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_cmd, sc, out, err);
    const Fault fault = inject.empty() ? Fault::none : Fault::reconstruction_sign;
    const SelftestReport r = run_selftest(parse_backend(backend), fault, trials);
    out << selftest_text(r);
    return r.ok() ? ok : selftest_failed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& line : e.lines()) err << "  " << line << "\n";
    return validation_error;
  }
}

}  // namespace ckf::cli
