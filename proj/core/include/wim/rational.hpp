#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace wim {

using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

/// Parses "p/q", "p", or a plain decimal like "0.25".
Rat parse_rational(const std::string& s);

std::string rat_string(const Rat& q);

/// Exact rational from a double (doubles are dyadic).
Rat rat_from_double(double x);

std::vector<double> to_doubles(const RatVec& v);

}  // namespace wim
