#pragma once

// Configuration-driven experiment runner: parses JSON configs, executes the
// named experiments, emits deterministic CSV tables plus a pass/fail summary,
// and hosts the built-in selftest suite.

#include <string>
#include <vector>

#include "layerlab/geometry.hpp"
#include "layerlab/operator_core.hpp"
#include "layerlab/schauder.hpp"

namespace layerlab::experiments {

struct DensitySpec {
  enum class Kind { Constant, Cos, Sin, RoughSawtooth } kind = Kind::Cos;
  int k = 0; // sawtooth harmonic count; 0 means N/2 - 1 (adapted to the grid)
};

struct ExperimentConfig {
  std::string experiment;
  OperatorCoefficients op{Mat2::identity(), {0.0, 0.0}, 0.0};
  geom::CurveKind curve_kind = geom::CurveKind::Kite;
  double p0 = 1.0, p1 = 1.0;
  std::vector<int> Ns{64, 128};
  DensitySpec density;
  int l = 1, j = 2, r = 1;
  schauder::ModulusSpec modulus{schauder::ModulusSpec::Kind::Power, 0.9};
  long long seed = 12345;
  std::string output; // optional; --out overrides
};

// Parses and validates a JSON config; throws InvalidConfig (unknown keys are
// errors) or UnknownExperiment.
ExperimentConfig parse_config(const std::string& json_text);

const std::vector<std::string>& experiment_names();

struct CsvRow {
  int N;
  std::string quantity;
  double value;
  double residual;
  double observed_order; // NaN when not applicable
};

struct RunResult {
  bool pass = false;
  std::vector<CsvRow> rows;
  std::string summary; // plain text, one line per check
};

// Executes the experiment; does not touch the filesystem.
RunResult run(const ExperimentConfig& config);

// CSV serialization: header + rows, 17 significant digits, LF endings,
// observed_order blank where NaN.
std::string to_csv(const std::vector<CsvRow>& rows);

// Writes <out_dir>/<experiment>.csv and <out_dir>/summary.txt.
void write_report(const ExperimentConfig& config, const RunResult& result,
                  const std::string& out_dir);

struct CriterionResult {
  int index;
  std::string name;
  bool pass;
  double measured;
  double threshold;
  std::string detail;
};

// The 12 acceptance checks with built-in configs.
std::vector<CriterionResult> selftest();

// The five operator triples exercised by the jump and identity criteria.
std::vector<OperatorCoefficients> test_operators();

// Nodal samples of the named density on the curve parameters.
geom::BoundaryFunction make_density(const DensitySpec& spec,
                                    const geom::BoundaryCurve& curve);

} // namespace layerlab::experiments
