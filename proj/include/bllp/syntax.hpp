// Text syntax for polynomials, formulas and terms.
//
//   poly     3 | x | bin(x,2) | p + q | p * q | sum(z < p, q) | (p)
//   formula  V | ~V | 1 | bot | A * B | A par B | !{x<p} N | ?{x<p} P
//            | N -[x<p]-> M | N -[p]-> M | (A)
//   labelled <A>[x<p] | <A>[p]
//   term     x | \x y. t | mu a. t | [a] t | t u | (t)

#ifndef BLLP_SYNTAX_HPP
#define BLLP_SYNTAX_HPP

#include <string>

#include "bllp/formula.hpp"
#include "bllp/lammu.hpp"

namespace bllp {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

ResourcePoly parse_poly(const std::string& s);
Formula parse_formula(const std::string& s);
LabelledFormula parse_labelled(const std::string& s);
Term parse_term(const std::string& s);

}  // namespace bllp

#endif  // BLLP_SYNTAX_HPP
