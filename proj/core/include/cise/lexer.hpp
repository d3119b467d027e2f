#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cise/source.hpp"

namespace cise {

enum class Tok {
  End,
  Ident,
  IntLit,
  Section,  // @init, @variable, ... (text includes the '@')
  // keywords
  KwType, KwFunction, KwAxiom, KwVar, KwEquals, KwToken, KwConflict,
  KwOperation, KwRequires, KwEnsures, KwAcquires, KwOld, KwForall,
  KwTrue, KwFalse, KwInt, KwBool,
  // punctuation / operators
  LParen, RParen, LBracket, RBracket, Comma, Semi,
  Colon, ColonColon, ColonEq,
  Plus, Minus, Star,
  EqEq, NotEq, Lt, Le, Gt, Ge,
  AndAnd, OrOr, Not, Implies,
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  long long int_value = 0;
  SourceSpan span;
};

/// Produces the whole token stream up front. `//` line comments and
/// whitespace are skipped. Throws SyntaxError on unknown characters.
std::vector<Token> lex(std::string_view source);

std::string token_name(Tok type);

}  // namespace cise
