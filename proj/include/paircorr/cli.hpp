// Command-line front end. Subcommands:
//   generate     write a point set to the text format
//   paircorr     the statistic on a point set (file or generator)
//   energy       additive energy report for an integer sequence
//   converge     statistic over growing prefixes of one sequence
//   witness      lag-pair witness from the best rational approximation
//   approx       simultaneous approximation hits (q, theta)
//   discrepancy  star discrepancy (exact in d = 1)
//
// Every run echoes its fully resolved configuration as JSON: a '#'
// comment line for CSV-style outputs, a "config" field for JSON ones.
// Identical invocations produce identical bytes. Exit codes: 0 success,
// 1 validation/usage error, 2 runtime failure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paircorr {

// argv-style arguments, without the program name. The PAIRCORR_THREADS
// environment variable caps OpenMP parallelism (0 or unset = automatic).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace paircorr
