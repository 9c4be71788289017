#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dtorus {

/// Arbitrary-precision signed integer.
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

/// Raised when an exact quantity that must be an integer (a cycle count,
/// n times a prime count) comes out fractional or negative.
class integrity_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised by the enumerative oracles when a query exceeds its work budget.
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by floating-point series that hit their term cap before the
/// requested tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigInt numerator_of(const BigRational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const BigRational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const BigRational& r) { return denominator_of(r) == 1; }

/// Integer value of r; throws integrity_error if r has a denominator.
inline BigInt to_integer(const BigRational& r, const char* what = "value")
{
    if (!is_integer(r))
        throw integrity_error(std::string(what) + " is not an integer: " + r.str());
    return numerator_of(r);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const BigRational& r)
{
    if (is_integer(r))
        return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }

} // namespace dtorus
