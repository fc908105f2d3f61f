#pragma once

// Front-end plumbing: algebra input (families and JSON), classification
// reports with JSON/markdown rendering, parameter sweeps and the self-test.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ckforms/identities.hpp"
#include "ckforms/killing.hpp"

namespace ckf {

using ordered_json = nlohmann::ordered_json;

/// Malformed input: unreadable JSON, unknown family, bad scalar literal,
/// parameter out of range.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The structure constants violate the Jacobi identity. lines() holds one
/// "(e1,e2,e3): defect" entry per failing triple.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> lines)
      : std::runtime_error(what), lines_(std::move(lines)) {}
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
};

enum class Backend { automatic, rational, floating };

Backend parse_backend(const std::string& name);

/// An algebra description before a scalar backend has been chosen.
struct AlgebraInput {
  std::string label;
  std::vector<std::pair<std::string, std::string>> parameters;  ///< family inputs, as given
  std::string family;  ///< empty for bracket-table input
  struct Bracket {
    int i = 0;  ///< 1-based
    int j = 0;
    std::array<std::string, 4> v;
  };
  std::vector<Bracket> brackets;
  bool requested_float = false;  ///< "scalars": "float"

  /// True when every literal is "p" or "p/q" and float was not requested.
  bool exact() const;
};

/// { "label", "scalars": "rational"|"float", "brackets": [{"i","j","v"}] }
AlgebraInput parse_algebra_json(const std::string& text);

/// Built-in family with named parameters (a, b, alpha, c).
AlgebraInput family_input(const std::string& family, std::vector<std::pair<std::string, std::string>> params);

/// Parameter names of a built-in family in their canonical order. Throws
/// InputError on an unknown family.
const std::vector<std::string>& family_parameter_names(const std::string& family);

template <Scalar S>
MetricLieAlgebra<S> build_algebra(const AlgebraInput& in);

/// Resolves automatic to rational or floating from the literals; throws
/// InputError when rational is forced on non-rational input.
Backend resolve_backend(Backend requested, const AlgebraInput& in);

struct WeylSpectrum {
  bool zero = false;
  /// c2, c1, c0 of det(t - W) = t^3 + c2 t^2 + c1 t + c0, exact in the rational backend.
  std::array<std::string, 3> char_poly;
  std::vector<double> eigenvalues;  ///< ascending

  friend bool operator==(const WeylSpectrum&, const WeylSpectrum&) = default;
};

struct LckEvidence {
  std::string j;  ///< e.g. "Je1=e4,Je2=-e3"
  std::string side;
  std::string lee_form;
  bool kahler = false;

  friend bool operator==(const LckEvidence&, const LckEvidence&) = default;
};

struct ClassificationReport {
  std::string label;
  std::string backend;
  std::vector<std::pair<std::string, std::string>> parameters;
  GeometryFlags flags;
  std::string scalar_curvature;
  WeylSpectrum weyl_plus;
  WeylSpectrum weyl_minus;
  std::size_t ck_plus = 0;
  std::size_t ck_minus = 0;
  std::string weyl_vanishing_side;  ///< plus, minus, both or none
  std::string theorem_case;         ///< 1, 2, 3 or none
  std::vector<LckEvidence> lck;
  /// Every side with a conformal Killing space of dimension >= 2 has vanishing Weyl half.
  bool dimension_weyl_check = true;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
  bool low_confidence = false;
  /// Optional: the four 10x10 Killing connection matrices per side, as strings.
  std::map<std::string, std::vector<std::vector<std::vector<std::string>>>> killing_connection;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

struct AnalyzeOptions {
  Tolerance tol;
  bool include_connection = false;
};

/// Throws ValidationError when the Jacobi identity fails.
template <Scalar S>
ClassificationReport analyze(const MetricLieAlgebra<S>& g, const AnalyzeOptions& opts = {});

/// Dispatches on the resolved backend.
ClassificationReport analyze(const AlgebraInput& in, Backend backend, const AnalyzeOptions& opts = {});

ordered_json to_json(const ClassificationReport& r);
/// Throws InputError on a document that is not a report.
ClassificationReport report_from_json(const ordered_json& j);
std::string to_markdown(const ClassificationReport& r);

/// Label of an orthogonal complex structure by the images of e1 and of the
/// first frame vector not in span(e1, J e1).
template <Scalar S>
std::string describe(const AlmostComplexStructure<S>& j);

// ---------------------------------------------------------------------------
// Sweeps.

/// "v1,v2,..." or "start:step:stop" (inclusive, rational step). Empty text
/// gives an empty list.
std::vector<std::string> parse_grid(const std::string& text);

struct SweepRow {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<ClassificationReport> report;
  std::string error;
};

struct SweepResult {
  std::string family;
  std::vector<SweepRow> rows;
  std::size_t checked = 0;           ///< rows that produced a report
  bool dimension_weyl_check = true;  ///< over all checked rows
};

/// Cartesian product over the axes in the given order; failures are
/// recorded per row and the sweep continues.
SweepResult run_sweep(const std::string& family,
                      const std::vector<std::pair<std::string, std::vector<std::string>>>& axes, Backend backend,
                      const AnalyzeOptions& opts = {});

std::string sweep_markdown(const SweepResult& s);
ordered_json sweep_json(const SweepResult& s);

// ---------------------------------------------------------------------------
// Self-test.

struct SelftestReport {
  std::vector<IdentityResult> identities;
  std::vector<std::pair<std::string, std::string>> failures;  ///< (check, detail)
  std::vector<std::string> passed;
  std::vector<std::string> notes;

  bool ok() const;
};

SelftestReport run_selftest(Backend backend, Fault fault, std::size_t trials, std::uint64_t seed = 20240601);

std::string selftest_text(const SelftestReport& r);

}  // namespace ckf
