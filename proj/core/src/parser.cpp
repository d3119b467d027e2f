#include "cise/parser.hpp"

#include <optional>
#include <set>

#include "cise/lexer.hpp"

namespace cise {

namespace {

/// Name environment for expression parsing. Lookup order: quantifier binders
/// (innermost first), then locals (operation params or @equals formals), then
/// state variables when visible. Functions are only reachable through
/// application syntax.
struct Scope {
  const Specification* spec = nullptr;
  std::vector<std::pair<std::string, Sort>> bound;
  const std::vector<Param>* locals = nullptr;
  VarKind local_kind = VarKind::Param;
  bool state_vars_visible = false;
  bool allow_old = false;
  bool allow_quantifier = false;
  const char* old_context = "ensures clauses";
};

class Parser {
public:
  Parser(std::string_view source, std::string origin) : tokens_(lex(source)) {
    spec_.source_name = std::move(origin);
  }

  Specification run() {
    parse_init_section();
    parse_variable_section();
    parse_equals_section();
    parse_tokens_section();
    parse_invariant_section();
    parse_operations_section();
    if (!at(Tok::End))
      throw SyntaxError(peek().span, {"end of input"}, describe(peek()));
    return std::move(spec_);
  }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Specification spec_;
  std::set<std::string> declared_names_;  // sorts, functions, vars, tokens, operations

  // --- token plumbing -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at(Tok t) const { return peek().type == t; }
  bool at_section(std::string_view name) const {
    return at(Tok::Section) && peek().text == name;
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok t) {
    if (!at(t)) return false;
    advance();
    return true;
  }
  const Token& expect(Tok t) {
    if (!at(t)) throw SyntaxError(peek().span, {token_name(t)}, describe(peek()));
    return advance();
  }
  static std::string describe(const Token& tok) {
    return tok.type == Tok::End ? "end of input" : "'" + tok.text + "'";
  }

  void declare(const Token& name_tok) {
    if (!declared_names_.insert(name_tok.text).second)
      throw DuplicateDefinition(name_tok.span, name_tok.text);
  }

  // --- sorts ----------------------------------------------------------------

  Sort parse_sort() {
    if (accept(Tok::KwInt)) return Sort::int_sort();
    if (accept(Tok::KwBool)) return Sort::bool_sort();
    if (at(Tok::Ident)) {
      const Token& tok = advance();
      for (const auto& s : spec_.uninterpreted_sorts)
        if (s == tok.text) return Sort::uninterpreted(tok.text);
      throw UnresolvedName(tok.span, tok.text);
    }
    if (at(Tok::LBracket)) {
      const Token& open = advance();
      Sort key = parse_sort();
      expect(Tok::RBracket);
      if (!key.is_map_key())
        throw SortError(open.span, key.to_string(), "int or an uninterpreted sort (map key)");
      Sort value = parse_sort();
      return Sort::map(std::move(key), std::move(value));
    }
    throw SyntaxError(peek().span, {"a sort"}, describe(peek()));
  }

  std::vector<Param> parse_param_list() {
    std::vector<Param> params;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        const Token& name = expect(Tok::Ident);
        for (const auto& p : params)
          if (p.name == name.text) throw DuplicateDefinition(name.span, name.text);
        expect(Tok::Colon);
        params.push_back({name.text, parse_sort(), name.span});
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    return params;
  }

  // --- expressions ----------------------------------------------------------

  ExprPtr require_sort(ExprPtr e, const Sort& want) {
    if (e->sort != want) throw SortError(e->span, e->sort.to_string(), want.to_string());
    return e;
  }
  ExprPtr require_int(ExprPtr e) { return require_sort(std::move(e), Sort::int_sort()); }
  ExprPtr require_bool(ExprPtr e) { return require_sort(std::move(e), Sort::bool_sort()); }

  // Precedence (low to high): ==> < || < && < ! < comparisons < +,- < * < unary -.
  ExprPtr parse_expr(Scope& scope) { return parse_implies(scope); }

  ExprPtr parse_implies(Scope& scope) {
    ExprPtr lhs = parse_or(scope);
    if (at(Tok::Implies)) {
      const Token& op = advance();
      ExprPtr rhs = parse_implies(scope);  // right associative
      return Expr::binary(BinaryOp::Implies, require_bool(std::move(lhs)),
                          require_bool(std::move(rhs)),
                          SourceSpan::join(op.span, op.span));
    }
    return lhs;
  }

  ExprPtr parse_or(Scope& scope) {
    ExprPtr lhs = parse_and(scope);
    while (at(Tok::OrOr)) {
      const Token& op = advance();
      ExprPtr rhs = parse_and(scope);
      lhs = Expr::binary(BinaryOp::Or, require_bool(std::move(lhs)),
                         require_bool(std::move(rhs)), op.span);
    }
    return lhs;
  }

  ExprPtr parse_and(Scope& scope) {
    ExprPtr lhs = parse_not(scope);
    while (at(Tok::AndAnd)) {
      const Token& op = advance();
      ExprPtr rhs = parse_not(scope);
      lhs = Expr::binary(BinaryOp::And, require_bool(std::move(lhs)),
                         require_bool(std::move(rhs)), op.span);
    }
    return lhs;
  }

  ExprPtr parse_not(Scope& scope) {
    if (at(Tok::Not)) {
      const Token& op = advance();
      return Expr::unary(UnaryOp::Not, require_bool(parse_not(scope)), op.span);
    }
    return parse_comparison(scope);
  }

  ExprPtr parse_comparison(Scope& scope) {
    ExprPtr lhs = parse_additive(scope);
    std::optional<BinaryOp> op;
    switch (peek().type) {
      case Tok::EqEq: op = BinaryOp::Eq; break;
      case Tok::NotEq: op = BinaryOp::Ne; break;
      case Tok::Lt: op = BinaryOp::Lt; break;
      case Tok::Le: op = BinaryOp::Le; break;
      case Tok::Gt: op = BinaryOp::Gt; break;
      case Tok::Ge: op = BinaryOp::Ge; break;
      default: return lhs;
    }
    const Token& tok = advance();
    ExprPtr rhs = parse_additive(scope);
    if (*op == BinaryOp::Eq || *op == BinaryOp::Ne) {
      if (rhs->sort != lhs->sort)
        throw SortError(rhs->span, rhs->sort.to_string(), lhs->sort.to_string());
    } else {
      lhs = require_int(std::move(lhs));
      rhs = require_int(std::move(rhs));
    }
    return Expr::binary(*op, std::move(lhs), std::move(rhs), tok.span);
  }

  ExprPtr parse_additive(Scope& scope) {
    ExprPtr lhs = parse_multiplicative(scope);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinaryOp op = at(Tok::Plus) ? BinaryOp::Add : BinaryOp::Sub;
      const Token& tok = advance();
      ExprPtr rhs = parse_multiplicative(scope);
      lhs = Expr::binary(op, require_int(std::move(lhs)), require_int(std::move(rhs)), tok.span);
    }
    return lhs;
  }

  ExprPtr parse_multiplicative(Scope& scope) {
    ExprPtr lhs = parse_unary(scope);
    while (at(Tok::Star)) {
      const Token& tok = advance();
      ExprPtr rhs = parse_unary(scope);
      lhs = Expr::binary(BinaryOp::Mul, require_int(std::move(lhs)), require_int(std::move(rhs)),
                         tok.span);
    }
    return lhs;
  }

  ExprPtr parse_unary(Scope& scope) {
    if (at(Tok::Minus)) {
      const Token& tok = advance();
      return Expr::unary(UnaryOp::Neg, require_int(parse_unary(scope)), tok.span);
    }
    return parse_postfix(scope);
  }

  ExprPtr parse_postfix(Scope& scope) {
    ExprPtr e = parse_atom(scope);
    while (at(Tok::LBracket)) {
      const Token& open = advance();
      if (!e->sort.is_map())
        throw SortError(e->span, e->sort.to_string(), "a map sort ([...]...)");
      ExprPtr key = require_sort(parse_expr(scope), e->sort.key());
      if (accept(Tok::ColonEq)) {
        ExprPtr value = require_sort(parse_expr(scope), e->sort.value());
        expect(Tok::RBracket);
        e = Expr::store(std::move(e), std::move(key), std::move(value), open.span);
      } else {
        expect(Tok::RBracket);
        e = Expr::select(std::move(e), std::move(key), open.span);
      }
    }
    return e;
  }

  ExprPtr parse_atom(Scope& scope) {
    const Token& tok = peek();
    switch (tok.type) {
      case Tok::IntLit: {
        advance();
        return Expr::int_lit(tok.int_value, tok.span);
      }
      case Tok::KwTrue:
        advance();
        return Expr::bool_lit(true, tok.span);
      case Tok::KwFalse:
        advance();
        return Expr::bool_lit(false, tok.span);
      case Tok::KwOld: {
        if (!scope.allow_old)
          throw SyntaxError(tok.span,
                            {std::string("old() only inside ") + scope.old_context}, "'old'");
        advance();
        expect(Tok::LParen);
        Scope inner = scope;
        inner.allow_old = false;
        inner.old_context = "ensures clauses (old cannot be nested)";
        ExprPtr body = parse_expr(inner);
        expect(Tok::RParen);
        return Expr::old(std::move(body), tok.span);
      }
      case Tok::LParen: {
        advance();
        if (at(Tok::KwForall)) return parse_forall(scope, tok.span);
        ExprPtr e = parse_expr(scope);
        expect(Tok::RParen);
        return e;
      }
      case Tok::Ident: {
        advance();
        if (at(Tok::LParen)) return parse_application(scope, tok);
        return resolve_name(scope, tok);
      }
      default:
        throw SyntaxError(tok.span, {"an expression"}, describe(tok));
    }
  }

  ExprPtr parse_forall(Scope& scope, SourceSpan span) {
    const Token& kw = expect(Tok::KwForall);
    if (!scope.allow_quantifier)
      throw SyntaxError(kw.span, {"a quantifier-free expression (forall only in axioms and equals definitions)"},
                        "'forall'");
    const Token& binder = expect(Tok::Ident);
    expect(Tok::Colon);
    Sort binder_sort = parse_sort();
    expect(Tok::ColonColon);
    Scope inner = scope;
    inner.bound.emplace_back(binder.text, binder_sort);
    ExprPtr body = require_bool(parse_expr(inner));
    expect(Tok::RParen);
    return Expr::forall(binder.text, std::move(binder_sort), std::move(body), span);
  }

  ExprPtr parse_application(Scope& scope, const Token& name) {
    const FunctionDecl* fn = spec_.find_function(name.text);
    if (!fn) throw UnresolvedName(name.span, name.text);
    std::vector<ExprPtr> args;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        args.push_back(parse_expr(scope));
      } while (accept(Tok::Comma));
    }
    const Token& close = expect(Tok::RParen);
    if (args.size() != fn->param_sorts.size())
      throw SortError(close.span, std::to_string(args.size()) + " argument(s)",
                      std::to_string(fn->param_sorts.size()) + " argument(s) to " + fn->name);
    for (std::size_t i = 0; i < args.size(); ++i)
      args[i] = require_sort(std::move(args[i]), fn->param_sorts[i]);
    return Expr::apply(name.text, std::move(args), fn->result, name.span);
  }

  ExprPtr resolve_name(const Scope& scope, const Token& tok) {
    for (auto it = scope.bound.rbegin(); it != scope.bound.rend(); ++it)
      if (it->first == tok.text)
        return Expr::var(VarKind::Bound, tok.text, it->second, tok.span);
    if (scope.locals)
      for (const auto& p : *scope.locals)
        if (p.name == tok.text) return Expr::var(scope.local_kind, tok.text, p.sort, tok.span);
    if (scope.state_vars_visible)
      if (const Param* v = spec_.find_variable(tok.text))
        return Expr::var(VarKind::State, tok.text, v->sort, tok.span);
    throw UnresolvedName(tok.span, tok.text);
  }

  // --- sections --------------------------------------------------------------

  void parse_init_section() {
    if (!accept_section("@init")) return;
    while (true) {
      if (at(Tok::KwType)) {
        advance();
        const Token& name = expect(Tok::Ident);
        declare(name);
        spec_.uninterpreted_sorts.push_back(name.text);
        expect(Tok::Semi);
      } else if (at(Tok::KwFunction)) {
        advance();
        const Token& name = expect(Tok::Ident);
        declare(name);
        FunctionDecl fn;
        fn.name = name.text;
        fn.span = name.span;
        expect(Tok::LParen);
        if (!at(Tok::RParen)) {
          do {
            fn.param_sorts.push_back(parse_sort());
          } while (accept(Tok::Comma));
        }
        expect(Tok::RParen);
        expect(Tok::Colon);
        fn.result = parse_sort();
        expect(Tok::Semi);
        spec_.functions.push_back(std::move(fn));
      } else if (at(Tok::KwAxiom)) {
        advance();
        Scope scope;
        scope.spec = &spec_;
        scope.allow_quantifier = true;
        spec_.axioms.push_back(require_bool(parse_expr(scope)));
        expect(Tok::Semi);
      } else {
        return;
      }
    }
  }

  void parse_variable_section() {
    if (!accept_section("@variable")) return;
    while (at(Tok::KwVar)) {
      advance();
      const Token& name = expect(Tok::Ident);
      declare(name);
      expect(Tok::Colon);
      Sort sort = parse_sort();
      expect(Tok::Semi);
      spec_.variables.push_back({name.text, std::move(sort), name.span});
    }
  }

  void parse_equals_section() {
    if (!accept_section("@equals")) return;
    while (at(Tok::KwEquals)) {
      const Token& kw = advance();
      EqualsDef def;
      def.span = kw.span;
      expect(Tok::LParen);
      const Token& lhs = expect(Tok::Ident);
      expect(Tok::Colon);
      Sort lhs_sort = parse_sort();
      expect(Tok::Comma);
      const Token& rhs = expect(Tok::Ident);
      expect(Tok::Colon);
      Sort rhs_sort = parse_sort();
      const Token& close = expect(Tok::RParen);
      if (rhs_sort != lhs_sort)
        throw SortError(close.span, rhs_sort.to_string(), lhs_sort.to_string());
      if (rhs.text == lhs.text) throw DuplicateDefinition(rhs.span, rhs.text);
      if (spec_.equals_for(lhs_sort))
        throw DuplicateDefinition(kw.span, "equals for " + lhs_sort.to_string());
      expect(Tok::ColonEq);
      def.sort = lhs_sort;
      def.lhs_name = lhs.text;
      def.rhs_name = rhs.text;
      std::vector<Param> formals = {{lhs.text, lhs_sort, lhs.span}, {rhs.text, lhs_sort, rhs.span}};
      Scope scope;
      scope.spec = &spec_;
      scope.locals = &formals;
      scope.local_kind = VarKind::Bound;
      scope.allow_quantifier = true;
      def.body = require_bool(parse_expr(scope));
      expect(Tok::Semi);
      spec_.equals_defs.push_back(std::move(def));
    }
  }

  void parse_tokens_section() {
    if (!accept_section("@tokens")) return;
    spec_.has_tokens_section = true;
    while (true) {
      if (at(Tok::KwToken)) {
        advance();
        const Token& name = expect(Tok::Ident);
        declare(name);
        TokenDecl decl;
        decl.name = name.text;
        decl.span = name.span;
        decl.params = parse_param_list();
        expect(Tok::Semi);
        spec_.tokens.push_back(std::move(decl));
      } else if (at(Tok::KwConflict)) {
        advance();
        const Token& a = expect(Tok::Ident);
        const Token& b = expect(Tok::Ident);
        expect(Tok::Semi);
        if (!spec_.find_token(a.text)) throw UnresolvedName(a.span, a.text);
        if (!spec_.find_token(b.text)) throw UnresolvedName(b.span, b.text);
        if (!spec_.conflicting(a.text, b.text)) {
          auto pair = a.text <= b.text ? std::make_pair(a.text, b.text)
                                       : std::make_pair(b.text, a.text);
          spec_.conflicts.push_back(std::move(pair));
        }
      } else {
        return;
      }
    }
  }

  void parse_invariant_section() {
    if (!require_section("@invariant")) throw MissingSection("@invariant");
    Scope scope;
    scope.spec = &spec_;
    scope.state_vars_visible = true;
    spec_.invariant = require_bool(parse_expr(scope));
    expect(Tok::Semi);
  }

  void parse_operations_section() {
    if (!require_section("@operations")) throw MissingSection("@operations");
    if (!at(Tok::KwOperation))
      throw SyntaxError(peek().span, {token_name(Tok::KwOperation)}, describe(peek()));
    while (at(Tok::KwOperation)) spec_.operations.push_back(parse_operation());
  }

  Operation parse_operation() {
    expect(Tok::KwOperation);
    const Token& name = expect(Tok::Ident);
    declare(name);
    Operation op;
    op.name = name.text;
    op.span = name.span;
    op.params = parse_param_list();

    std::vector<ExprPtr> pres, posts;
    bool any_clause = false;
    while (true) {
      if (at(Tok::KwRequires)) {
        advance();
        Scope scope;
        scope.spec = &spec_;
        scope.locals = &op.params;
        scope.state_vars_visible = true;
        scope.old_context = "ensures clauses (not in requires)";
        pres.push_back(require_bool(parse_expr(scope)));
        expect(Tok::Semi);
      } else if (at(Tok::KwEnsures)) {
        advance();
        Scope scope;
        scope.spec = &spec_;
        scope.locals = &op.params;
        scope.state_vars_visible = true;
        scope.allow_old = true;
        posts.push_back(require_bool(parse_expr(scope)));
        expect(Tok::Semi);
      } else if (at(Tok::KwAcquires)) {
        advance();
        op.acquires.push_back(parse_acquire(op));
      } else {
        break;
      }
      any_clause = true;
    }
    if (!any_clause)
      throw SyntaxError(peek().span,
                        {token_name(Tok::KwRequires), token_name(Tok::KwEnsures),
                         token_name(Tok::KwAcquires)},
                        describe(peek()));

    op.pre = pres.empty() ? Expr::bool_lit(true) : Expr::conjoin(std::move(pres));
    op.post = posts.empty() ? Expr::bool_lit(true) : Expr::conjoin(std::move(posts));

    bool literally_true =
        op.post->kind == Expr::Kind::BoolLit && op.post->bool_value;
    if (!literally_true && modified_vars(op).empty())
      throw SortError(op.post->span, "an ensures constraining no state variable",
                      "an ensures that determines at least one state variable, or literally "
                      "'true'");
    return op;
  }

  AcquireClause parse_acquire(const Operation& op) {
    const Token& name = expect(Tok::Ident);
    const TokenDecl* decl = spec_.find_token(name.text);
    if (!decl) throw UnresolvedName(name.span, name.text);
    AcquireClause clause;
    clause.token = name.text;
    clause.span = name.span;
    expect(Tok::LParen);
    // Token arguments range over the operation's parameters only; state
    // variables are out of scope here.
    Scope scope;
    scope.spec = &spec_;
    scope.locals = &op.params;
    if (!at(Tok::RParen)) {
      do {
        clause.args.push_back(parse_expr(scope));
      } while (accept(Tok::Comma));
    }
    const Token& close = expect(Tok::RParen);
    expect(Tok::Semi);
    if (clause.args.size() != decl->params.size())
      throw SortError(close.span, std::to_string(clause.args.size()) + " argument(s)",
                      std::to_string(decl->params.size()) + " argument(s) to token " + decl->name);
    for (std::size_t i = 0; i < clause.args.size(); ++i)
      if (clause.args[i]->sort != decl->params[i].sort)
        throw SortError(clause.args[i]->span, clause.args[i]->sort.to_string(),
                        decl->params[i].sort.to_string());
    return clause;
  }

  bool accept_section(std::string_view name) {
    if (!at_section(name)) return false;
    advance();
    return true;
  }

  /// For the two mandatory sections. Returns true when consumed; false when
  /// the input ended or moved on to a later section (section is missing);
  /// throws on any other (out-of-place) token.
  bool require_section(std::string_view name) {
    if (accept_section(name)) return true;
    if (at(Tok::End)) return false;
    if (name == "@invariant" && at_section("@operations")) return false;
    throw SyntaxError(peek().span, {std::string("'") + std::string(name) + "'"},
                      describe(peek()));
  }
};

}  // namespace

Specification parse_spec(std::string_view source, std::string origin) {
  return Parser(source, std::move(origin)).run();
}

}  // namespace cise
