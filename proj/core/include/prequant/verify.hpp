#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prequant/flows.hpp"
#include "prequant/lift.hpp"
#include "prequant/models.hpp"

namespace prequant {

enum class CheckStatus { pass, fail, hypothesis_failure };

std::string to_string(CheckStatus status);

/// Outcome of one named, sampled check. status == pass iff max_defect < tolerance.
///
/// Checks made of several parts report the worst part rescaled to the
/// report tolerance, max_i defect_i * tolerance / tolerance_i; the notes list
/// each part with its own absolute defect and tolerance.
struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  double max_defect = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::string notes;

  bool passed() const { return status == CheckStatus::pass; }
};

/// Evidence gathered by check_lemma2.
struct LemmaTwoWitness {
  VectorField field;
  std::function<double(const Vec&)> extracted_f;  ///< (L_Y alpha)_p(R_p)
  double commutes_with_r = 0.0;                   ///< max |[Y, R]| over samples
  double xi_preserved = 0.0;                      ///< max |(L_Y alpha)(u)| over horizontal probes u
  double max_f = 0.0;
};

/// Contact Hamiltonian used to build test fields for the lemma2 check.
struct ContactHamiltonian {
  std::string name;
  ScalarField h;
  bool reeb_invariant = false;
};

/// Five Hamiltonians on P: "moment" and "hermitian" are R-invariant;
/// "re-z0", "im-z0z1" and "mixed" are not.
std::vector<ContactHamiltonian> test_hamiltonians(const ModelInstance& model);

/// Reeb contraction on a field Y: when Y commutes with R and preserves ker alpha
/// (both measured, threshold 1e-4), the extracted f must vanish. Violated
/// hypotheses give a hypothesis_failure report rather than a conclusion failure.
std::pair<CheckReport, LemmaTwoWitness> check_lemma2(const BundlePtr& bundle, const VectorField& Y, int samples,
                                                     std::uint64_t seed, double tolerance = 1e-4);

/// Equivariance of the lifted flow at t in {0.25, 0.5, 1} and commutation with R.
CheckReport check_equivariance(const BundlePtr& bundle, const TorusActionSpec& action, const LatticeVector& x,
                               int samples, std::uint64_t seed, const FlowConfig& cfg = {}, double tolerance = 1e-5);

/// Closure defect of the z-rotation lift built from the rotation-equivariant
/// moment map n x_3 / 2. Passes when the measured defect equals n/2 mod 1;
/// the notes state whether the obstruction is present.
CheckReport so3_obstruction_demo(int n, int samples, std::uint64_t seed = 0, const FlowConfig& cfg = {},
                                 double tolerance = 1e-4);

/// k + 1 <= (dim P + 1) / 2 for the lifted torus together with the structure
/// circle, plus pairwise commutation of {R, X_P^(1..k)}.
CheckReport dimension_bound_check(const BundlePtr& bundle, const TorusActionSpec& action, int samples = 16,
                                  std::uint64_t seed = 0, double tolerance = 1e-5);

struct CheckOptions {
  int samples = 32;
  std::uint64_t seed = 0;
  FlowConfig flow{};
  std::optional<double> tolerance;          ///< overrides the default of the check
  std::vector<double> offsets{0.25, 0.5, 0.8};
  std::vector<std::string> hamiltonians;     ///< extra lemma2 fields by name
};

/// Stable check identifiers.
const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);
double default_tolerance(const std::string& name);
/// Whether the check is defined for the model (so3-demo needs an s2 model).
bool check_applies(const std::string& name, const std::string& model_id);
/// Every check except so3-demo, which runs on request.
std::vector<std::string> default_suite();

/// Runs one named check. Library errors become failed reports.
CheckReport run_check(const std::string& name, const ModelInstance& model, const CheckOptions& opts);

} // namespace prequant
