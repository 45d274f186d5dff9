/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef UQC_CLI_APP_HPP
#define UQC_CLI_APP_HPP

#include <iosfwd>

namespace uqc::cli {

// Exit codes: 0 consistent report, 2 usage error, 3 solver non-convergence,
// 4 consistency violation.  Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uqc::cli

#endif
