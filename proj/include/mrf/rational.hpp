#ifndef MRF_RATIONAL_HPP
#define MRF_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace mrf {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts "p/q", plain integers, and plain decimals ("0.05" -> 1/20),
// all with an optional leading sign. Returns nullopt on anything else.
std::optional<Rat> parse_rational(std::string_view text);

// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

double rat_to_double(const Rat& r);

// "p" for integers, "p/q" otherwise.
std::string rat_to_string(const Rat& r);

// Fixed 12-significant-digit formatting for deterministic reports.
std::string format_real(double x);

}  // namespace mrf

#endif
