#ifndef GEOMREP_ERROR_HPP
#define GEOMREP_ERROR_HPP

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace geomrep {

/// Exact integer used for group orders.
using BigInt = boost::multiprecision::cpp_int;

/// Raised when an operation's precondition does not hold for its input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an input exceeds a size guard ("too large").
class SizeError : public Error {
public:
    using Error::Error;
};

inline std::string to_string(const BigInt& value) { return value.str(); }

} // namespace geomrep

#endif // GEOMREP_ERROR_HPP
