// Text formats: point-set files and integer-sequence files.
//
// Point-set file: UTF-8, one point per line, coordinates as decimal
// floats separated by commas, no header. Lines starting with '#' and
// blank lines are ignored. The dimension is inferred from the first data
// line; later lines must match it.
//
// Integer-sequence file: one non-negative integer per line, strictly
// increasing, same comment rules.
//
// All parse errors throw std::invalid_argument and name the 1-based line.
#pragma once

#include <iosfwd>
#include <string>

#include "paircorr/generators.hpp"
#include "paircorr/point_set.hpp"

namespace paircorr {

PointSet read_point_set(std::istream& in, const std::string& source_name = "<stream>");
PointSet read_point_set_file(const std::string& path);

// Writes with 17 significant digits so values round-trip exactly.
// `header` lines, if any, are emitted first as '#' comments.
void write_point_set(std::ostream& out, const PointSet& pts,
                     const std::string& header = "");
void write_point_set_file(const std::string& path, const PointSet& pts,
                          const std::string& header = "");

IntegerSequence read_integer_sequence(std::istream& in,
                                      const std::string& source_name = "<stream>");
IntegerSequence read_integer_sequence_file(const std::string& path);

// "%.17g" formatting used by every CSV writer in the project.
std::string format_double(double x);

} // namespace paircorr
