#pragma once

#include <iosfwd>

namespace qcpat {

// Batch front door: signature/pattern I/O, basis enumeration, generator
// application, matrix export, verification suites, identity campaigns, and
// the weight-series probe.  All normal output goes to `out`, diagnostics to
// `err`; when a subcommand takes --out FILE the machine-readable artifact is
// written there instead of (or in addition to) `out`.
//
// Exit-code contract (stable, intended for CI):
//   0  success; for verify/identities, every check passed
//   1  a verification suite or identity campaign reported failures
//   2  usage error or malformed input (bad flags, missing files,
//      invalid signatures or patterns)
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcpat
