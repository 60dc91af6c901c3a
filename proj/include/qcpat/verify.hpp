#pragma once

#include "qcpat/action.hpp"
#include "qcpat/patterns.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcpat {

// ---------------------------------------------------------------------------
// Relation suites.  Each suite assembles both sides of a family of operator
// relations column-by-column on the window basis V_N (codomains enumerated at
// the growth bound, never truncated) and compares them either exactly or
// numerically at the configured v samples.  Every suite is deterministic
// given (config, seed): reports are byte-identical across runs.
// ---------------------------------------------------------------------------

enum class CheckMode { Exact, Numeric };
enum class CheckStatus { Pass, Fail, Error };

struct CheckConfig {
  // Signatures to exercise; default_config() fills in the built-in battery.
  std::vector<NamedSignature> battery;
  // Window depth N (>= 1) and generator index window [-window, window].
  int N = 3;
  int window = 3;
  CheckMode mode = CheckMode::Exact;
  // Numeric comparison parameters (also used by the singular scan, which is
  // numeric by nature regardless of `mode`).
  std::vector<double> vSamples = {1.1, 0.9};
  double tolerance = 1e-8;
  std::uint64_t seed = 12345;
  // Number of random samples (vectors / monomial words) per randomized item.
  int trials = 20;
  // When false (the default) every result reports millis = 0 so that report
  // bytes do not depend on machine speed; set true to record wall times.
  bool timings = false;
  // Orientation forwarded to every generator application; kept configurable
  // so the resolved convention has a regression hook.
  Orientation orientation = Orientation::Resolved;
};

// Battery-populated default configuration.
CheckConfig default_config();

// Throws std::invalid_argument when N < 1, window < 0, trials < 0,
// tolerance <= 0, the sample list is empty, or the battery is empty.
void validate_config(const CheckConfig& cfg);

// Stable FNV-1a digest of the configuration (stamped into reports).
std::uint64_t config_digest(const CheckConfig& cfg);

struct CheckResult {
  std::string id;      // e.g. "cartan-ef"
  std::string params;  // e.g. "sig=ls-s0 N=3 window=3"
  CheckStatus status = CheckStatus::Pass;
  // Failing matrix entry / pattern / informational note; empty on plain pass.
  std::string witness;
  long millis = 0;
};

struct Report {
  std::string suite;
  std::uint64_t configDigest = 0;
  std::vector<CheckResult> results;  // deterministic order

  bool all_passed() const;
  // Counts by status.
  int passed() const;
  int failed() const;
  int errored() const;
};

// --- The eight suites ------------------------------------------------------

// Chevalley relations: [c,a] = 0, [h_i,h_j] = 0, [h_i,e_j] and [h_i,f_j]
// rescale by (delta_ij - delta_{i,j+1}), and [e_i,f_j] = delta_ij times the
// bracket of h_i - h_{i+1} plus the central contribution at i = 0.  The
// bracket argument is asserted to be a pure integer before bracketing; a
// non-integer argument is reported as an error (convention bug), not a
// failure.
Report check_cartan(const CheckConfig& cfg);

// Serre relations for both families: commutation at distance != 1 and the
// two cubic relations with coupling (q + q^{-1}) for adjacent pairs.
Report check_serre(const CheckConfig& cfg);

// Highest-weight facts: every raising operator in the window annihilates the
// highest-weight vector, its weights match the boundary closed form, and the
// battery's (weight function, central charge) labels are pairwise distinct
// (reported informationally).
Report check_hw(const CheckConfig& cfg);

// Window annihilation: e/f/h vanish on V_N outside their displayed index
// intervals, all three families vanish for |k| >= locality_radius(N), and
// random raising monomials behave per their support: inside the window
// interval they preserve V_N, otherwise they annihilate it.
Report check_locality(const CheckConfig& cfg);

// Restrictedness of sampled vectors v in V_N with r = locality_radius(N):
// raising monomials with support not inside (-r, r) annihilate v, lowering
// monomials supported entirely in either tail annihilate v, and h_i v = 0
// for |i| >= r.  A deliberately shrunken radius r - 1 is probed for
// sharpness; the probe outcome is recorded as information, never a failure.
Report check_restricted(const CheckConfig& cfg);

// Numeric scan for singular vectors: per weight subspace of V_N the joint
// kernel of all raising operators in the window is computed at each v
// sample; the expected total kernel is the highest-weight line alone.
// Ambiguous singular values are reported as errors together with the
// offending spectrum.  Evidence, not proof.
Report singular_scan(const CheckConfig& cfg);

// gl-side Cartan relations through the shifted diagonal operators:
// [E_i, F_j] = delta_ij [H_i - H_{i+1}] and [H_i, E_j] / [H_i, F_j]
// rescaling, with H_i acting by gl_H.
Report check_gl_iso(const CheckConfig& cfg);

// Classical-limit consistency of every matrix element emitted on V_N: the
// squared coefficient times its radicand, evaluated at v = 1, equals the
// product of the absolute bracket arguments (exact rational comparison), the
// value is nonzero, and the sign matches the emitted sign.
Report classical_limit_check(const CheckConfig& cfg);

// --- Dispatch and rendering ------------------------------------------------

// The suite names accepted by run_suite, in canonical order:
// cartan, serre, hw, locality, restricted, gl, singular, classical.
const std::vector<std::string>& suite_names();

// Runs one suite by name, or every suite in canonical order under the name
// "all" (results concatenated).  Unknown names throw std::invalid_argument.
Report run_suite(const std::string& name, const CheckConfig& cfg);

// JSON rendering: {"suite", "config-digest", "results": [{"id", "params",
// "status", "witness"?, "millis"}]}.  Deterministic bytes.
std::string report_to_json(const Report& report);

// Human-readable rendering, one line per result plus a summary line.
std::string report_to_text(const Report& report);

}  // namespace qcpat
