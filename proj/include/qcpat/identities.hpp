#pragma once
// Catalogue of the bracket / partial-fraction identities that underpin the
// generator-action machinery, together with exact verification drivers,
// admissible-configuration samplers, and structural mutation controls.
//
// Two evaluation regimes are used:
//   * integer-configuration identities (the Cartan window pair, the Cartan
//     off-diagonal sum, the Serre family, the telescope): every variable is
//     an integer, v stays symbolic, and the check is that LHS - RHS collapses
//     to the exact zero of the fraction field.
//   * rational-point identities (the partial-fraction family): variables and
//     q take exact rational values and both sides are compared in Q.
//
// Every identity exposes a list of structural mutation sites.  A mutation
// shifts one bracket group (or one q-exponent group) by a small integer and
// must be detectable by random sampling; this guards the transcription of
// each formula against off-by-one corruption.

#include "qcpat/expr.hpp"
#include "qcpat/parallel.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qcpat {

enum class IdentityId {
  CartanWindowA,          // four consecutive rows, window centered on an odd row
  CartanWindowB,          // four consecutive rows, window centered on an even row
  PartialFractionFull,    // two double sums of rational functions in q
  PartialFractionRegrouped, // same identity with the sums nested
  PartialFractionReduced, // single-sum reduction of the above
  CartanOffDiagonal,      // alternating two-term sum over one variable family
  SerreBilinear,          // bilinear Serre-kernel pairing, five variables
  SerreKernel,            // two-variable Serre-kernel quotient sum
  BracketTelescope,       // [a-1] - [2][a] + [a+1] = 0
};

const char* identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(const std::string& name);
std::vector<IdentityId> all_identities();

// True when the identity is checked at exact rational points (QDomain);
// false when it is checked with symbolic v over integer configurations.
bool identity_uses_rational_points(IdentityId id);

// Admissible size parameters.  Window identities take the window half-size
// k >= 1; partial-fraction identities take n >= 2 (family sizes n-2..n+1);
// the off-diagonal sum takes the family size n >= 2; the fixed-arity
// identities ignore the parameter (canonical size 0).
std::vector<int> identity_default_sizes(IdentityId id);
int identity_smallest_size(IdentityId id);

struct Mutation {
  int site = -1;   // which structural group to shift
  long delta = 0;  // shift amount (the controls use +1 / -1)
};

struct IdentitySpec {
  IdentityId id;
  int size = 0;
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<Var> vars;  // every free variable, in a deterministic order
  int siteCount = 0;      // number of structural mutation sites
  // Sites whose bracket group actually occurs at this size.  Small sizes can
  // leave a group empty (an empty product); such sites are only testable at
  // a larger size, and the campaign picks the smallest size that exposes
  // each one.
  std::vector<int> liveSites;
};

// Build the expression trees for one identity at one size, optionally with a
// single structural mutation applied.  Throws std::invalid_argument for an
// out-of-range size or mutation site.
IdentitySpec build_identity(IdentityId id, int size, const Mutation* mut = nullptr);

int mutation_site_count(IdentityId id, int size);

// A sampled evaluation point: integer values for configuration identities,
// rational values plus a rational q for point identities.
struct SampleConfig {
  std::map<Var, long> intEnv;          // used when !identity_uses_rational_points
  std::map<Var, Rational> ratEnv;      // used otherwise
  Rational q0 = Rational(0);           // rational q (point identities only)
};

std::string describe_config(const IdentitySpec& spec, const SampleConfig& cfg);

// Draw an admissible configuration for the identity (spacing and
// non-degeneracy constraints are enforced by rejection).  Deterministic for
// a given rng state.
SampleConfig sample_config(const IdentitySpec& spec, std::mt19937_64& rng);

enum class IdentityStatus {
  Holds,       // LHS - RHS evaluated to exact zero
  Fails,       // evaluated to a nonzero value
  Degenerate,  // a denominator vanished at this configuration
};

struct IdentityCheck {
  IdentityStatus status = IdentityStatus::Degenerate;
  std::string witness;  // configuration description when status != Holds
};

IdentityCheck check_identity(const IdentitySpec& spec, const SampleConfig& cfg);

// ---------------------------------------------------------------------------
// Campaign driver
// ---------------------------------------------------------------------------

struct CampaignItemPlan {
  IdentityId id;
  int size = 0;
  int configs = 0;
};

struct CampaignPlan {
  std::vector<CampaignItemPlan> items;
  bool mutationControls = true;
  int mutationBudget = 20;  // admissible samples allowed to catch a mutation
  std::uint64_t seed = 1;
  bool timings = false;     // when false, reported millis stay 0
  Exec exec = Exec::Serial;
  // Debug hook: apply this mutation to every built identity (used to show
  // that the campaign itself notices a corrupted formula).
  std::optional<Mutation> debugMutation;
};

// The default plan covers every identity at its standard sizes with the
// standard sample counts.
CampaignPlan default_campaign_plan();

struct CampaignItemResult {
  IdentityId id;
  int size = 0;
  int configs = 0;
  int failures = 0;
  std::string firstWitness;
  long long millis = 0;
};

struct MutationResult {
  IdentityId id;
  int size = 0;
  int site = 0;
  long delta = 0;
  bool caught = false;
  int samplesUsed = 0;  // admissible samples drawn before the first failure
};

struct CampaignReport {
  std::vector<CampaignItemResult> items;
  std::vector<MutationResult> mutations;
  bool pass = false;
};

CampaignReport run_campaign(const CampaignPlan& plan);

}  // namespace qcpat
