#pragma once

#include <boost/rational.hpp>
#include <string>
#include <vector>

namespace ffmink {

using Rational = boost::rational<long long>;
using RVec = std::vector<Rational>;

long long floor_div(const Rational& r);
long long ceil_div(const Rational& r);
std::string to_string(const Rational& r);
double to_double(const Rational& r);
// Smallest rational with the given denominator that is >= x.
Rational ceil_to_denominator(double x, long long den);

}  // namespace ffmink
