#pragma once

#include <string_view>

#include "volterra/analytic.hpp"

namespace volterra {

/// Parses an infix expression in the variable z into an AnalyticFunction.
///
/// Grammar (EBNF; whitespace ignored):
///
///     expr    = term , { ( "+" | "-" ) , term } ;
///     term    = unary , { ( "*" | "/" ) , unary } ;
///     unary   = ( "+" | "-" ) , unary | power ;
///     power   = primary , [ "^" , unary ] ;          (* right associative *)
///     primary = number | "z" | "i" | "pi"
///             | "(" , expr , ")"
///             | "log" , "(" , expr , ")"
///             | "pow" , "(" , expr , "," , expr , ")" ;
///     number  = digit , { digit } , [ "." , { digit } ] , [ ( "e" | "E" ) , [ "+" | "-" ] , digit , { digit } ] ;
///
/// Exponents must be real constants. Integral exponents become integer powers;
/// other exponents and log use the principal branch.
///
/// Throws ParseError with the 1-based column of the offending token.
AnalyticFunction parse_expression(std::string_view text);

}  // namespace volterra
