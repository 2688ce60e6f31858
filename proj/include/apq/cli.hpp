#ifndef APQ_CLI_HPP
#define APQ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace apq {

/*
 * Batch front door.  `args` are the command-line arguments after the
 * program name: a subcommand from {classify, decide, trace, gram, witness,
 * report} followed by flags
 *
 *   --coeffs "c0,c1,..."        coefficient list (exactly one source)
 *   --roots "r1,r2,..."         root list, with --leading (default 1)
 *   --degree D                  truncation degree, default 6, D >= 1
 *   --tol t                     default 1e-9
 *   --method {quotient, petrov, weight}   trace construction
 *   --json                      machine-readable output
 *
 * `report` bundles classify + decide, then trace + gram evidence when the
 * verdict is Unitarizable and the certificate transcript when it is
 * NotUnitarizable.  Every report carries the resolved sign convention of P
 * on the imaginary axis (+1, -1, or 0 when unresolved).
 *
 * Returns the process exit status: 0 for any verdict (Unknown included),
 * 2 for input errors, 3 for numerical failures.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace apq

#endif  // APQ_CLI_HPP
