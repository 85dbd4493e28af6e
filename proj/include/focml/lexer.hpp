#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "focml/diagnostics.hpp"

namespace focml {

enum class Tok {
  Eof,
  Ident,
  Int,
  String,
  StepLabel,  // <1>2
  // keywords
  KwSpecies, KwInherit, KwRepresentation, KwSignature, KwLet, KwRec, KwProperty,
  KwTheorem, KwProof, KwOf, KwEnd, KwCollection, KwImplement, KwType, KwIs, KwIn,
  KwAll, KwEx, KwIf, KwThen, KwElse, KwMatch, KwWith, KwTrue, KwFalse, KwBy,
  KwDefinition, KwStep, KwHypothesis, KwAssume, KwProve, KwQed, KwAdmitted, KwSelf,
  // punctuation
  LParen, RParen, Comma, Semi, SemiSemi, Colon, Bar, Bang, Underscore,
  // operators
  Equal, Arrow, Iff, Conj, Disj, Tilde, TildeTilde, AndAnd, OrOr, Plus, Minus, Star,
  LtInt, EqInt,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceLoc loc;
};

const char* describe(Tok t);

// Splits UTF-8 source into tokens. `(* ... *)` comments nest.
std::vector<Token> lex(std::string_view source, const std::string& file = "");

}  // namespace focml
