#pragma once

#include "qflab/curve.hpp"
#include "qflab/form.hpp"
#include "qflab/pfister.hpp"
#include "qflab/place.hpp"

#include <optional>
#include <string>

namespace qflab {

// Parse failure with the offending input position (0-based).
struct ParseError : std::runtime_error {
    ParseError(std::string msg, size_t position) : std::runtime_error(std::move(msg)), pos(position) {}
    size_t pos;
};

Rat parse_rational(const std::string& s);

// Comma-separated rationals: "1,-2,3,-6". Whitespace ignored.
DiagonalForm parse_form(const std::string& s);
std::string form_to_string(const DiagonalForm& q);

// Pfister slots: "<<a1,a2,...>>".
PfisterForm parse_pfister(const std::string& s);
std::string pfister_to_string(const PfisterForm& p);

// "y^2 = <polynomial in x>"
HyperellipticCurve parse_curve(const std::string& s);
std::string curve_to_string(const HyperellipticCurve& C);

// Expression in x (and y when a curve is supplied) built from rationals,
// + - * / ^ and parentheses.
FunctionElement parse_function(const std::string& s, const std::optional<HyperellipticCurve>& C);
std::string poly_to_string(const Poly& p);
std::string ratfn_to_string(const RatFn& r);
std::string function_to_string(const FunctionElement& g);

std::string point_to_string(const ClosedPoint& P);
std::string divisor_to_string(const Divisor& d);

std::string place_to_string(const Place& v);

// CLI --place selector: "real", "global", "all", or a prime.
struct PlaceSelector {
    enum class Kind { Real, Finite, Global, All };
    Kind kind;
    std::optional<Place> place;   // set for Real/Finite
};
PlaceSelector parse_place_selector(const std::string& s);

} // namespace qflab
