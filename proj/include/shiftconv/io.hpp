#ifndef SHIFTCONV_IO_HPP_
#define SHIFTCONV_IO_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "shiftconv/pbd.hpp"

namespace shiftconv {

/// Malformed user input: bad files, flags, generator specs or method names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One probability per line. Blank lines and anything after '#' are ignored.
/// Throws InputError naming the 1-based line of the first bad entry.
ProbabilityVector parse_probabilities(const std::string& path);
ProbabilityVector parse_probabilities(std::istream& in, const std::string& source_name);

/// 17 significant digits, enough to round-trip a double. Infinities print as
/// inf / -inf.
std::string format_double(double x);

}  // namespace shiftconv

#endif  // SHIFTCONV_IO_HPP_
