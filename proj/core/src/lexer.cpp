#include "cise/lexer.hpp"

#include <cctype>
#include <map>

namespace cise {

namespace {

const std::map<std::string, Tok, std::less<>>& keywords() {
  static const std::map<std::string, Tok, std::less<>> table = {
      {"type", Tok::KwType},         {"function", Tok::KwFunction},
      {"axiom", Tok::KwAxiom},       {"var", Tok::KwVar},
      {"equals", Tok::KwEquals},     {"token", Tok::KwToken},
      {"conflict", Tok::KwConflict}, {"operation", Tok::KwOperation},
      {"requires", Tok::KwRequires}, {"ensures", Tok::KwEnsures},
      {"acquires", Tok::KwAcquires}, {"old", Tok::KwOld},
      {"forall", Tok::KwForall},     {"true", Tok::KwTrue},
      {"false", Tok::KwFalse},       {"int", Tok::KwInt},
      {"bool", Tok::KwBool},
  };
  return table;
}

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1;
  int column = 1;

  bool done() const { return pos >= src.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    return c;
  }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> lex(std::string_view source) {
  std::vector<Token> out;
  Cursor cur{source};

  auto start_span = [&]() {
    SourceSpan s;
    s.begin = cur.pos;
    s.end = cur.pos;
    s.line = cur.line;
    s.column = cur.column;
    return s;
  };

  while (!cur.done()) {
    char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '/') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }

    Token tok;
    tok.span = start_span();
    auto finish = [&](Tok type) {
      tok.type = type;
      tok.span.end = cur.pos;
      tok.text = std::string(source.substr(tok.span.begin, tok.span.end - tok.span.begin));
      out.push_back(tok);
    };

    if (ident_start(c)) {
      while (!cur.done() && ident_char(cur.peek())) cur.advance();
      std::string_view word = source.substr(tok.span.begin, cur.pos - tok.span.begin);
      auto kw = keywords().find(word);
      finish(kw != keywords().end() ? kw->second : Tok::Ident);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.advance();
      std::string_view digits = source.substr(tok.span.begin, cur.pos - tok.span.begin);
      try {
        tok.int_value = std::stoll(std::string(digits));
      } catch (const std::out_of_range&) {
        tok.span.end = cur.pos;
        throw SyntaxError(tok.span, {"integer literal within 64 bits"}, std::string(digits));
      }
      finish(Tok::IntLit);
      continue;
    }
    if (c == '@') {
      cur.advance();
      while (!cur.done() && ident_char(cur.peek())) cur.advance();
      if (cur.pos - tok.span.begin == 1) {
        tok.span.end = cur.pos;
        throw SyntaxError(tok.span, {"section name after '@'"}, "@");
      }
      finish(Tok::Section);
      continue;
    }

    cur.advance();
    switch (c) {
      case '(': finish(Tok::LParen); continue;
      case ')': finish(Tok::RParen); continue;
      case '[': finish(Tok::LBracket); continue;
      case ']': finish(Tok::RBracket); continue;
      case ',': finish(Tok::Comma); continue;
      case ';': finish(Tok::Semi); continue;
      case '+': finish(Tok::Plus); continue;
      case '-': finish(Tok::Minus); continue;
      case '*': finish(Tok::Star); continue;
      case ':':
        if (cur.peek() == ':') {
          cur.advance();
          finish(Tok::ColonColon);
        } else if (cur.peek() == '=') {
          cur.advance();
          finish(Tok::ColonEq);
        } else {
          finish(Tok::Colon);
        }
        continue;
      case '=':
        if (cur.peek() == '=' && cur.peek(1) == '>') {
          cur.advance();
          cur.advance();
          finish(Tok::Implies);
        } else if (cur.peek() == '=') {
          cur.advance();
          finish(Tok::EqEq);
        } else {
          tok.span.end = cur.pos;
          throw SyntaxError(tok.span, {"'=='", "'==>'"}, "=");
        }
        continue;
      case '!':
        if (cur.peek() == '=') {
          cur.advance();
          finish(Tok::NotEq);
        } else {
          finish(Tok::Not);
        }
        continue;
      case '<':
        if (cur.peek() == '=') {
          cur.advance();
          finish(Tok::Le);
        } else {
          finish(Tok::Lt);
        }
        continue;
      case '>':
        if (cur.peek() == '=') {
          cur.advance();
          finish(Tok::Ge);
        } else {
          finish(Tok::Gt);
        }
        continue;
      case '&':
        if (cur.peek() == '&') {
          cur.advance();
          finish(Tok::AndAnd);
          continue;
        }
        break;
      case '|':
        if (cur.peek() == '|') {
          cur.advance();
          finish(Tok::OrOr);
          continue;
        }
        break;
      default:
        break;
    }
    tok.span.end = cur.pos;
    throw SyntaxError(tok.span, {"a token"}, std::string(1, c));
  }

  Token end;
  end.type = Tok::End;
  end.span.begin = end.span.end = source.size();
  end.span.line = cur.line;
  end.span.column = cur.column;
  end.text = "<end of input>";
  out.push_back(end);
  return out;
}

std::string token_name(Tok type) {
  switch (type) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::Section: return "section header";
    case Tok::KwType: return "'type'";
    case Tok::KwFunction: return "'function'";
    case Tok::KwAxiom: return "'axiom'";
    case Tok::KwVar: return "'var'";
    case Tok::KwEquals: return "'equals'";
    case Tok::KwToken: return "'token'";
    case Tok::KwConflict: return "'conflict'";
    case Tok::KwOperation: return "'operation'";
    case Tok::KwRequires: return "'requires'";
    case Tok::KwEnsures: return "'ensures'";
    case Tok::KwAcquires: return "'acquires'";
    case Tok::KwOld: return "'old'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwInt: return "'int'";
    case Tok::KwBool: return "'bool'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::ColonColon: return "'::'";
    case Tok::ColonEq: return "':='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Not: return "'!'";
    case Tok::Implies: return "'==>'";
  }
  return "?";
}

}  // namespace cise
