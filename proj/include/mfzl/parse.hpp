#pragma once

// Prefix expression language for forms.
//
//   expr    := leaf | call
//   leaf    := "Delta" | "J"
//   call    := "Ek(" int ")"            E_k(z)
//            | "Eks(" int "," int ")"   E_k(p z)
//            | "Ekp(" int "," int ")"   (p^{k/2} E_k(p z) + E_k(z)) / (p^{k/2} + 1)
//            | "Deltas(" int ")"        Delta(p z)
//            | "const(" rational ")"
//            | "add(" expr "," expr ")" | "sub(" expr "," expr ")"
//            | "mul(" expr "," expr { "," expr } ")"
//            | "pow(" expr "," int ")"
//            | "scale(" rational "," expr ")"
//   rational := ["-"] digits [ "/" digits ]
//
// Whitespace between tokens is ignored. FormExpr::to_string output parses back
// to an equal expression.

#include "mfzl/forms.hpp"

#include <stdexcept>
#include <string>

namespace mfzl {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& message, size_t position);
    /// Zero-based offset into the input.
    size_t position() const { return position_; }

private:
    size_t position_;
};

FormExpr parse_form(const std::string& text);

}  // namespace mfzl
