#include "provlab/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace provlab {

// -- constructors -----------------------------------------------------------

static TermPtr mkT(Term t) { return std::make_shared<const Term>(std::move(t)); }
static FormulaPtr mkF(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

TermPtr tVar(unsigned i) { Term t; t.kind = Term::Kind::Var; t.var = i; return mkT(std::move(t)); }
TermPtr tZero() { Term t; t.kind = Term::Kind::Zero; return mkT(std::move(t)); }
TermPtr tSucc(TermPtr a) { Term t; t.kind = Term::Kind::Succ; t.args = {std::move(a)}; return mkT(std::move(t)); }
TermPtr tPlus(TermPtr a, TermPtr b) { Term t; t.kind = Term::Kind::Plus; t.args = {std::move(a), std::move(b)}; return mkT(std::move(t)); }
TermPtr tTimes(TermPtr a, TermPtr b) { Term t; t.kind = Term::Kind::Times; t.args = {std::move(a), std::move(b)}; return mkT(std::move(t)); }
TermPtr tExp2(TermPtr a) { Term t; t.kind = Term::Kind::Exp2; t.args = {std::move(a)}; return mkT(std::move(t)); }
TermPtr tFn(const std::string& name, std::vector<TermPtr> args) {
  Term t; t.kind = Term::Kind::Fn; t.fn = name; t.args = std::move(args); return mkT(std::move(t));
}

FormulaPtr fEqual(TermPtr a, TermPtr b) { Formula f; f.kind = Formula::Kind::Equal; f.terms = {std::move(a), std::move(b)}; return mkF(std::move(f)); }
FormulaPtr fLeq(TermPtr a, TermPtr b) { Formula f; f.kind = Formula::Kind::Leq; f.terms = {std::move(a), std::move(b)}; return mkF(std::move(f)); }
FormulaPtr fFalsum() { Formula f; f.kind = Formula::Kind::Falsum; return mkF(std::move(f)); }
FormulaPtr fVerum() { Formula f; f.kind = Formula::Kind::Verum; return mkF(std::move(f)); }
FormulaPtr fNot(FormulaPtr a) { Formula f; f.kind = Formula::Kind::Not; f.subs = {std::move(a)}; return mkF(std::move(f)); }
static FormulaPtr binF(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  Formula f; f.kind = k; f.subs = {std::move(a), std::move(b)}; return mkF(std::move(f));
}
FormulaPtr fAnd(FormulaPtr a, FormulaPtr b) { return binF(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr fOr(FormulaPtr a, FormulaPtr b) { return binF(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr fImplies(FormulaPtr a, FormulaPtr b) { return binF(Formula::Kind::Implies, std::move(a), std::move(b)); }
FormulaPtr fIff(FormulaPtr a, FormulaPtr b) { return binF(Formula::Kind::Iff, std::move(a), std::move(b)); }
FormulaPtr fForall(unsigned v, FormulaPtr body) {
  Formula f; f.kind = Formula::Kind::Forall; f.var = v; f.subs = {std::move(body)}; return mkF(std::move(f));
}
FormulaPtr fExists(unsigned v, FormulaPtr body) {
  Formula f; f.kind = Formula::Kind::Exists; f.var = v; f.subs = {std::move(body)}; return mkF(std::move(f));
}
static void checkBound(unsigned v, const TermPtr& bound) {
  auto fv = freeVars(bound);
  if (fv.count(v))
    throw std::invalid_argument("bounded quantifier: bound term mentions its own variable v" + std::to_string(v));
}
FormulaPtr fBForall(unsigned v, TermPtr bound, FormulaPtr body) {
  checkBound(v, bound);
  Formula f; f.kind = Formula::Kind::BForall; f.var = v; f.bound = std::move(bound); f.subs = {std::move(body)};
  return mkF(std::move(f));
}
FormulaPtr fBExists(unsigned v, TermPtr bound, FormulaPtr body) {
  checkBound(v, bound);
  Formula f; f.kind = Formula::Kind::BExists; f.var = v; f.bound = std::move(bound); f.subs = {std::move(body)};
  return mkF(std::move(f));
}
FormulaPtr fPred(const std::string& name, std::vector<TermPtr> args) {
  Formula f; f.kind = Formula::Kind::Pred; f.pred = name; f.terms = std::move(args); return mkF(std::move(f));
}

FormulaPtr fAndAll(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return fVerum();
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); i++) acc = fAnd(acc, fs[i]);
  return acc;
}
FormulaPtr fOrAll(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return fFalsum();
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); i++) acc = fOr(acc, fs[i]);
  return acc;
}

// -- equality / order -------------------------------------------------------

int cmp(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind == Term::Kind::Var) return a.var == b.var ? 0 : (a.var < b.var ? -1 : 1);
  if (a.kind == Term::Kind::Fn && a.fn != b.fn) return a.fn < b.fn ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); i++) {
    int c = cmp(*a.args[i], *b.args[i]);
    if (c) return c;
  }
  return 0;
}

int cmp(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.var != b.var) return a.var < b.var ? -1 : 1;
  if (a.kind == Formula::Kind::Pred && a.pred != b.pred) return a.pred < b.pred ? -1 : 1;
  if (!!a.bound != !!b.bound) return !a.bound ? -1 : 1;
  if (a.bound) {
    int c = cmp(*a.bound, *b.bound);
    if (c) return c;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  for (size_t i = 0; i < a.terms.size(); i++) {
    int c = cmp(*a.terms[i], *b.terms[i]);
    if (c) return c;
  }
  if (a.subs.size() != b.subs.size()) return a.subs.size() < b.subs.size() ? -1 : 1;
  for (size_t i = 0; i < a.subs.size(); i++) {
    int c = cmp(*a.subs[i], *b.subs[i]);
    if (c) return c;
  }
  return 0;
}

bool equal(const Term& a, const Term& b) { return cmp(a, b) == 0; }
bool equal(const Formula& a, const Formula& b) { return cmp(a, b) == 0; }

// -- variables --------------------------------------------------------------

static void fvTerm(const Term& t, std::set<unsigned>& out) {
  if (t.kind == Term::Kind::Var) { out.insert(t.var); return; }
  for (auto& a : t.args) fvTerm(*a, out);
}

static void fvFormula(const Formula& f, std::set<unsigned>& out) {
  for (auto& t : f.terms) fvTerm(*t, out);
  switch (f.kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::set<unsigned> inner;
      fvFormula(*f.subs[0], inner);
      inner.erase(f.var);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Formula::Kind::BForall:
    case Formula::Kind::BExists: {
      fvTerm(*f.bound, out);
      std::set<unsigned> inner;
      fvFormula(*f.subs[0], inner);
      inner.erase(f.var);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (auto& s : f.subs) fvFormula(*s, out);
      return;
  }
}

std::set<unsigned> freeVars(const TermPtr& t) { std::set<unsigned> s; fvTerm(*t, s); return s; }
std::set<unsigned> freeVars(const FormulaPtr& f) { std::set<unsigned> s; fvFormula(*f, s); return s; }

static void avFormula(const Formula& f, std::set<unsigned>& out) {
  for (auto& t : f.terms) fvTerm(*t, out);
  if (f.bound) fvTerm(*f.bound, out);
  switch (f.kind) {
    case Formula::Kind::Forall: case Formula::Kind::Exists:
    case Formula::Kind::BForall: case Formula::Kind::BExists:
      out.insert(f.var);
      break;
    default: break;
  }
  for (auto& s : f.subs) avFormula(*s, out);
}
std::set<unsigned> allVars(const FormulaPtr& f) { std::set<unsigned> s; avFormula(*f, s); return s; }

bool isClosed(const FormulaPtr& f) { return freeVars(f).empty(); }

// -- substitution -----------------------------------------------------------

TermPtr substitute(const TermPtr& t, unsigned var, const TermPtr& repl) {
  switch (t->kind) {
    case Term::Kind::Var: return t->var == var ? repl : t;
    case Term::Kind::Zero: return t;
    default: {
      std::vector<TermPtr> na;
      na.reserve(t->args.size());
      bool changed = false;
      for (auto& a : t->args) {
        auto s = substitute(a, var, repl);
        changed = changed || s.get() != a.get();
        na.push_back(std::move(s));
      }
      if (!changed) return t;
      Term n = *t;
      n.args = std::move(na);
      return mkT(std::move(n));
    }
  }
}

static unsigned freshVar(const std::set<unsigned>& avoid) {
  unsigned v = 0;
  while (avoid.count(v)) v++;
  return v;
}

FormulaPtr substitute(const FormulaPtr& f, unsigned var, const TermPtr& repl) {
  switch (f->kind) {
    case Formula::Kind::Falsum:
    case Formula::Kind::Verum:
      return f;
    case Formula::Kind::Equal:
    case Formula::Kind::Leq:
    case Formula::Kind::Pred: {
      Formula n = *f;
      for (auto& t : n.terms) t = substitute(t, var, repl);
      return mkF(std::move(n));
    }
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      Formula n = *f;
      for (auto& s : n.subs) s = substitute(s, var, repl);
      return mkF(std::move(n));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::BForall:
    case Formula::Kind::BExists: {
      Formula n = *f;
      if (n.bound) n.bound = substitute(n.bound, var, repl);
      if (f->var == var) return mkF(std::move(n));  // shadowed: no-op below binder
      if (!freeVars(f->subs[0]).count(var)) {
        return n.bound ? mkF(std::move(n)) : f;
      }
      auto rv = freeVars(repl);
      if (rv.count(f->var)) {
        // rename the binder first to avoid capture
        std::set<unsigned> avoid = rv;
        auto bf = allVars(f->subs[0]);
        avoid.insert(bf.begin(), bf.end());
        avoid.insert(var);
        unsigned nv = freshVar(avoid);
        auto renamed = substitute(f->subs[0], f->var, tVar(nv));
        n.var = nv;
        n.subs = {substitute(renamed, var, repl)};
      } else {
        n.subs = {substitute(f->subs[0], var, repl)};
      }
      return mkF(std::move(n));
    }
  }
  throw std::logic_error("substitute: unreachable");
}

size_t nodeCount(const TermPtr& t) {
  size_t n = 1;
  for (auto& a : t->args) n += nodeCount(a);
  return n;
}
size_t nodeCount(const FormulaPtr& f) {
  size_t n = 1;
  for (auto& t : f->terms) n += nodeCount(t);
  if (f->bound) n += nodeCount(f->bound);
  for (auto& s : f->subs) n += nodeCount(s);
  return n;
}
size_t quantifierDepth(const FormulaPtr& f) {
  size_t m = 0;
  for (auto& s : f->subs) m = std::max(m, quantifierDepth(s));
  switch (f->kind) {
    case Formula::Kind::Forall: case Formula::Kind::Exists:
    case Formula::Kind::BForall: case Formula::Kind::BExists:
      return m + 1;
    default: return m;
  }
}

// -- rendering ---------------------------------------------------------------

// term precedence: atom > * > +
static void renderTerm(const Term& t, std::string& out, int parentPrec) {
  switch (t.kind) {
    case Term::Kind::Var: out += "v" + std::to_string(t.var); return;
    case Term::Kind::Zero: out += "0"; return;
    case Term::Kind::Succ:
      out += "S(";
      renderTerm(*t.args[0], out, 0);
      out += ")";
      return;
    case Term::Kind::Exp2:
      out += "exp(";
      renderTerm(*t.args[0], out, 0);
      out += ")";
      return;
    case Term::Kind::Plus: {
      bool paren = parentPrec > 1;
      if (paren) out += "(";
      renderTerm(*t.args[0], out, 1);
      out += " + ";
      renderTerm(*t.args[1], out, 2);  // left-assoc
      if (paren) out += ")";
      return;
    }
    case Term::Kind::Times: {
      bool paren = parentPrec > 2;
      if (paren) out += "(";
      renderTerm(*t.args[0], out, 2);
      out += " * ";
      renderTerm(*t.args[1], out, 3);
      if (paren) out += ")";
      return;
    }
    case Term::Kind::Fn: {
      out += "@" + t.fn + "(";
      for (size_t i = 0; i < t.args.size(); i++) {
        if (i) out += ", ";
        renderTerm(*t.args[i], out, 0);
      }
      out += ")";
      return;
    }
  }
}

std::string render(const TermPtr& t) {
  std::string s;
  renderTerm(*t, s, 0);
  return s;
}

// formula precedence: atom/~ (4) > & (3) > | (2) > -> (1, right) > <-> (0)
static void renderFormula(const Formula& f, std::string& out, int parentPrec) {
  switch (f.kind) {
    case Formula::Kind::Equal:
    case Formula::Kind::Leq:
      renderTerm(*f.terms[0], out, 0);
      out += f.kind == Formula::Kind::Equal ? " = " : " <= ";
      renderTerm(*f.terms[1], out, 0);
      return;
    case Formula::Kind::Falsum: out += "false"; return;
    case Formula::Kind::Verum: out += "true"; return;
    case Formula::Kind::Pred:
      out += "@" + f.pred + "(";
      for (size_t i = 0; i < f.terms.size(); i++) {
        if (i) out += ", ";
        renderTerm(*f.terms[i], out, 0);
      }
      out += ")";
      return;
    case Formula::Kind::Not: {
      out += "~";
      // atoms self-delimit except infix ones; parenthesize non-atomic bodies
      const Formula& b = *f.subs[0];
      bool atom = b.kind == Formula::Kind::Falsum || b.kind == Formula::Kind::Verum ||
                  b.kind == Formula::Kind::Pred || b.kind == Formula::Kind::Not;
      if (atom) renderFormula(b, out, 4);
      else { out += "("; renderFormula(b, out, 0); out += ")"; }
      return;
    }
    case Formula::Kind::And: {
      bool paren = parentPrec > 3;
      if (paren) out += "(";
      renderFormula(*f.subs[0], out, 3);
      out += " & ";
      renderFormula(*f.subs[1], out, 4);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::Or: {
      bool paren = parentPrec > 2;
      if (paren) out += "(";
      renderFormula(*f.subs[0], out, 2);
      out += " | ";
      renderFormula(*f.subs[1], out, 3);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::Implies: {
      bool paren = parentPrec > 1;
      if (paren) out += "(";
      renderFormula(*f.subs[0], out, 2);  // right-assoc
      out += " -> ";
      renderFormula(*f.subs[1], out, 1);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::Iff: {
      bool paren = parentPrec > 0;
      if (paren) out += "(";
      renderFormula(*f.subs[0], out, 1);
      out += " <-> ";
      renderFormula(*f.subs[1], out, 1);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::BForall:
    case Formula::Kind::BExists: {
      bool ex = f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::BExists;
      out += ex ? "ex v" : "all v";
      out += std::to_string(f.var);
      if (f.bound) {
        out += " <= ";
        renderTerm(*f.bound, out, 0);
      }
      out += " (";
      renderFormula(*f.subs[0], out, 0);
      out += ")";
      return;
    }
  }
}

std::string render(const FormulaPtr& f) {
  std::string s;
  renderFormula(*f, s, 0);
  return s;
}

// -- parser -------------------------------------------------------------------

namespace {

struct Token {
  enum class T { Num, Var, Ident, AtName, Sym, End } t;
  std::string text;
  size_t off;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  std::vector<Token> toks;

  explicit Lexer(const std::string& s) : src(s) { run(); }

  [[noreturn]] void fail(const std::string& msg, size_t off) const {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < off && i < src.size(); i++) {
      if (src[i] == '\n') { line++; col = 1; } else col++;
    }
    throw ParseError(msg + " at offset " + std::to_string(off), off, line, col);
  }

  void run() {
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isspace(static_cast<unsigned char>(c))) { pos++; continue; }
      size_t start = pos;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) pos++;
        toks.push_back({Token::T::Num, src.substr(start, pos - start), start});
        continue;
      }
      if (c == '@') {
        pos++;
        size_t ns = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) pos++;
        if (pos == ns) fail("expected symbol name after '@'", start);
        toks.push_back({Token::T::AtName, src.substr(ns, pos - ns), start});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) pos++;
        std::string w = src.substr(start, pos - start);
        if (w.size() >= 2 && w[0] == 'v' && std::all_of(w.begin() + 1, w.end(), [](char d) {
              return std::isdigit(static_cast<unsigned char>(d));
            })) {
          toks.push_back({Token::T::Var, w.substr(1), start});
        } else {
          toks.push_back({Token::T::Ident, w, start});
        }
        continue;
      }
      auto two = src.substr(pos, 2);
      auto three = src.substr(pos, 3);
      if (three == "<->") { toks.push_back({Token::T::Sym, "<->", start}); pos += 3; continue; }
      if (two == "->" || two == "<=") { toks.push_back({Token::T::Sym, two, start}); pos += 2; continue; }
      if (std::string("()+*=~&|,").find(c) != std::string::npos) {
        toks.push_back({Token::T::Sym, std::string(1, c), start});
        pos++;
        continue;
      }
      fail(std::string("unexpected character '") + c + "'", start);
    }
    toks.push_back({Token::T::End, "", src.size()});
  }
};

struct Parser {
  Lexer lex;
  size_t i = 0;

  explicit Parser(const std::string& s) : lex(s) {}

  const Token& peek() const { return lex.toks[i]; }
  const Token& next() { return lex.toks[i++]; }
  bool at(Token::T t, const std::string& text = "") const {
    return peek().t == t && (text.empty() || peek().text == text);
  }
  void expect(const std::string& sym) {
    if (!at(Token::T::Sym, sym)) lex.fail("expected '" + sym + "'", peek().off);
    i++;
  }

  TermPtr parsePrimaryTerm() {
    const Token& t = peek();
    if (t.t == Token::T::Num) {
      next();
      if (t.text == "0") return tZero();
      Nat n(t.text);
      // decimal literals are sugar for binary numerals
      return mkNumeral(n, NumeralStyle::Binary);
    }
    if (t.t == Token::T::Var) {
      next();
      return tVar(static_cast<unsigned>(std::stoul(t.text)));
    }
    if (t.t == Token::T::Ident && (t.text == "S" || t.text == "exp")) {
      next();
      expect("(");
      auto a = parseTermExpr();
      expect(")");
      return t.text == "S" ? tSucc(a) : tExp2(a);
    }
    if (t.t == Token::T::AtName) {
      next();
      expect("(");
      std::vector<TermPtr> args;
      if (!at(Token::T::Sym, ")")) {
        args.push_back(parseTermExpr());
        while (at(Token::T::Sym, ",")) { next(); args.push_back(parseTermExpr()); }
      }
      expect(")");
      return tFn(t.text, std::move(args));
    }
    if (t.t == Token::T::Sym && t.text == "(") {
      next();
      auto a = parseTermExpr();
      expect(")");
      return a;
    }
    lex.fail("expected term", t.off);
  }

  TermPtr parseTimes() {
    auto a = parsePrimaryTerm();
    while (at(Token::T::Sym, "*")) {
      next();
      a = tTimes(a, parsePrimaryTerm());
    }
    return a;
  }

  TermPtr parseTermExpr() {
    auto a = parseTimes();
    while (at(Token::T::Sym, "+")) {
      next();
      a = tPlus(a, parseTimes());
    }
    return a;
  }

  FormulaPtr parseAtom() {
    const Token& t = peek();
    if (t.t == Token::T::Ident && (t.text == "all" || t.text == "ex")) {
      bool uni = t.text == "all";
      next();
      if (peek().t != Token::T::Var) lex.fail("expected variable after quantifier", peek().off);
      unsigned v = static_cast<unsigned>(std::stoul(next().text));
      TermPtr bound;
      if (at(Token::T::Sym, "<=")) {
        next();
        bound = parseTermExpr();
      }
      expect("(");
      auto body = parseFormulaExpr();
      expect(")");
      if (bound) return uni ? fBForall(v, bound, body) : fBExists(v, bound, body);
      return uni ? fForall(v, body) : fExists(v, body);
    }
    if (t.t == Token::T::Ident && t.text == "false") { next(); return fFalsum(); }
    if (t.t == Token::T::Ident && t.text == "true") { next(); return fVerum(); }
    if (t.t == Token::T::Sym && t.text == "~") {
      next();
      return fNot(parseAtom());
    }
    if (t.t == Token::T::Sym && t.text == "(") {
      // formula parenthesization vs parenthesized term: backtrack
      size_t save = i;
      next();
      try {
        auto f = parseFormulaExpr();
        expect(")");
        return f;
      } catch (const ParseError&) {
        i = save;
      }
    }
    if (t.t == Token::T::AtName) {
      // could be predicate application; parse args then check for infix
      size_t save = i;
      next();
      expect("(");
      std::vector<TermPtr> args;
      if (!at(Token::T::Sym, ")")) {
        args.push_back(parseTermExpr());
        while (at(Token::T::Sym, ",")) { next(); args.push_back(parseTermExpr()); }
      }
      expect(")");
      if (at(Token::T::Sym, "=") || at(Token::T::Sym, "<=") ||
          at(Token::T::Sym, "+") || at(Token::T::Sym, "*")) {
        i = save;  // it was a defined *function* inside an atom
      } else {
        return fPred(t.text, std::move(args));
      }
    }
    auto a = parseTermExpr();
    if (at(Token::T::Sym, "=")) {
      next();
      return fEqual(a, parseTermExpr());
    }
    if (at(Token::T::Sym, "<=")) {
      next();
      return fLeq(a, parseTermExpr());
    }
    lex.fail("expected '=' or '<='", peek().off);
  }

  FormulaPtr parseAndExpr() {
    auto a = parseAtom();
    while (at(Token::T::Sym, "&")) { next(); a = fAnd(a, parseAtom()); }
    return a;
  }
  FormulaPtr parseOrExpr() {
    auto a = parseAndExpr();
    while (at(Token::T::Sym, "|")) { next(); a = fOr(a, parseAndExpr()); }
    return a;
  }
  FormulaPtr parseImpExpr() {
    auto a = parseOrExpr();
    if (at(Token::T::Sym, "->")) {
      next();
      return fImplies(a, parseImpExpr());  // right-assoc
    }
    return a;
  }
  FormulaPtr parseFormulaExpr() {
    auto a = parseImpExpr();
    while (at(Token::T::Sym, "<->")) { next(); a = fIff(a, parseImpExpr()); }
    return a;
  }
};

}  // namespace

FormulaPtr parseFormula(const std::string& text) {
  Parser p(text);
  auto f = p.parseFormulaExpr();
  if (!p.at(Token::T::End)) p.lex.fail("trailing input", p.peek().off);
  return f;
}

TermPtr parseTerm(const std::string& text) {
  Parser p(text);
  auto t = p.parseTermExpr();
  if (!p.at(Token::T::End)) p.lex.fail("trailing input", p.peek().off);
  return t;
}

// -- classification ------------------------------------------------------------

std::string to_string(SyntClass c) {
  switch (c) {
    case SyntClass::Delta0: return "Delta0";
    case SyntClass::Sigma1: return "Sigma1";
    case SyntClass::Pi1: return "Pi1";
    case SyntClass::Other: return "Other";
  }
  return "?";
}

static SyntClass negC(SyntClass c) {
  switch (c) {
    case SyntClass::Sigma1: return SyntClass::Pi1;
    case SyntClass::Pi1: return SyntClass::Sigma1;
    default: return c;
  }
}

// join for conjunction/disjunction: like classes merge by quantifier-prefix
// fusion, Delta0 is neutral, mixed Sigma/Pi is beyond both.
static SyntClass joinC(SyntClass a, SyntClass b) {
  if (a == SyntClass::Other || b == SyntClass::Other) return SyntClass::Other;
  if (a == SyntClass::Delta0) return b;
  if (b == SyntClass::Delta0) return a;
  if (a == b) return a;
  return SyntClass::Other;
}

SyntClass classify(const FormulaPtr& f,
                   const std::function<SyntClass(const std::string&)>& lookup) {
  switch (f->kind) {
    case Formula::Kind::Equal:
    case Formula::Kind::Leq:
    case Formula::Kind::Falsum:
    case Formula::Kind::Verum:
      return SyntClass::Delta0;
    case Formula::Kind::Pred:
      return lookup(f->pred);
    case Formula::Kind::Not:
      return negC(classify(f->subs[0], lookup));
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return joinC(classify(f->subs[0], lookup), classify(f->subs[1], lookup));
    case Formula::Kind::Implies:
      return joinC(negC(classify(f->subs[0], lookup)), classify(f->subs[1], lookup));
    case Formula::Kind::Iff: {
      auto a = classify(f->subs[0], lookup), b = classify(f->subs[1], lookup);
      if (a == SyntClass::Delta0 && b == SyntClass::Delta0) return SyntClass::Delta0;
      return SyntClass::Other;
    }
    case Formula::Kind::Exists: {
      auto c = classify(f->subs[0], lookup);
      if (c == SyntClass::Delta0 || c == SyntClass::Sigma1) return SyntClass::Sigma1;
      return SyntClass::Other;
    }
    case Formula::Kind::Forall: {
      auto c = classify(f->subs[0], lookup);
      if (c == SyntClass::Delta0 || c == SyntClass::Pi1) return SyntClass::Pi1;
      return SyntClass::Other;
    }
    case Formula::Kind::BExists: {
      auto c = classify(f->subs[0], lookup);
      // a bounded existential commutes with a leading existential block
      if (c == SyntClass::Delta0 || c == SyntClass::Sigma1) return c;
      return SyntClass::Other;
    }
    case Formula::Kind::BForall: {
      auto c = classify(f->subs[0], lookup);
      if (c == SyntClass::Delta0 || c == SyntClass::Pi1) return c;
      return SyntClass::Other;
    }
  }
  return SyntClass::Other;
}

SyntClass classify(const FormulaPtr& f) {
  return classify(f, [](const std::string& name) -> SyntClass {
    throw std::runtime_error("classify: unregistered defined symbol @" + name);
  });
}

// -- numerals -------------------------------------------------------------------

TermPtr mkNumeral(const Nat& n, NumeralStyle style) {
  if (style == NumeralStyle::Unary) {
    if (!fitsUnsignedLong(n) || toULL(n) > (1ull << 24))
      throw std::invalid_argument("mkNumeral: unary numeral too large");
    auto t = tZero();
    for (unsigned long long i = 0, k = toULL(n); i < k; i++) t = tSucc(t);
    return t;
  }
  // canonical binary form
  if (n == 0) return tZero();
  if (n == 1) return tSucc(tZero());
  auto two = tSucc(tSucc(tZero()));
  auto rec = mkNumeral(n >> 1, NumeralStyle::Binary);
  auto dbl = tTimes(two, rec);
  if ((n & 1) != 0) return tSucc(dbl);
  return dbl;
}

std::optional<Nat> valueOfClosed(const TermPtr& t, unsigned long exp2BitCap) {
  switch (t->kind) {
    case Term::Kind::Var: return std::nullopt;
    case Term::Kind::Zero: return Nat(0);
    case Term::Kind::Succ: {
      auto a = valueOfClosed(t->args[0], exp2BitCap);
      if (!a) return std::nullopt;
      return *a + 1;
    }
    case Term::Kind::Plus: {
      auto a = valueOfClosed(t->args[0], exp2BitCap);
      auto b = valueOfClosed(t->args[1], exp2BitCap);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Term::Kind::Times: {
      auto a = valueOfClosed(t->args[0], exp2BitCap);
      auto b = valueOfClosed(t->args[1], exp2BitCap);
      if (!a || !b) return std::nullopt;
      return *a * *b;
    }
    case Term::Kind::Exp2: {
      auto a = valueOfClosed(t->args[0], exp2BitCap);
      if (!a) return std::nullopt;
      if (!fitsUnsignedLong(*a) || toULL(*a) > exp2BitCap) return std::nullopt;
      return pow2(static_cast<unsigned long>(toULL(*a)));
    }
    case Term::Kind::Fn: return std::nullopt;
  }
  return std::nullopt;
}

// -- pools ------------------------------------------------------------------------

std::vector<TermPtr> termPool(unsigned depth, const std::vector<unsigned>& vars) {
  std::vector<std::vector<TermPtr>> byDepth(depth + 1);
  byDepth[0].push_back(tZero());
  for (unsigned v : vars) byDepth[0].push_back(tVar(v));
  std::vector<TermPtr> all = byDepth[0];
  for (unsigned d = 1; d <= depth; d++) {
    std::vector<TermPtr> prevAll;
    for (unsigned k = 0; k < d; k++)
      prevAll.insert(prevAll.end(), byDepth[k].begin(), byDepth[k].end());
    // nodes of exact depth d: at least one child of depth d-1
    for (auto& a : byDepth[d - 1]) {
      byDepth[d].push_back(tSucc(a));
      byDepth[d].push_back(tExp2(a));
    }
    for (auto& a : byDepth[d - 1])
      for (auto& b : prevAll) {
        byDepth[d].push_back(tPlus(a, b));
        byDepth[d].push_back(tTimes(a, b));
        if (!equal(a, b)) {
          byDepth[d].push_back(tPlus(b, a));
          byDepth[d].push_back(tTimes(b, a));
        }
      }
    all.insert(all.end(), byDepth[d].begin(), byDepth[d].end());
  }
  std::sort(all.begin(), all.end(), [](const TermPtr& a, const TermPtr& b) { return cmp(*a, *b) < 0; });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const TermPtr& a, const TermPtr& b) { return cmp(*a, *b) == 0; }),
            all.end());
  return all;
}

std::vector<FormulaPtr> formulaPoolDepth3() {
  // full AST depth: an atom over terms of depth <= k has depth k+1
  auto t1 = termPool(1, {0, 1});
  auto t2 = termPool(2, {0, 1});

  std::vector<FormulaPtr> depth1 = {fFalsum(), fVerum()};
  std::vector<FormulaPtr> depth2;  // atoms over depth-1 terms
  for (auto& a : t1)
    for (auto& b : t1) {
      depth2.push_back(fEqual(a, b));
      depth2.push_back(fLeq(a, b));
    }
  std::vector<FormulaPtr> depth3;  // atoms over depth-2 terms, connectives, quantifiers
  for (auto& a : t2)
    for (auto& b : t2) {
      depth3.push_back(fEqual(a, b));
      depth3.push_back(fLeq(a, b));
    }
  std::vector<FormulaPtr> upTo2 = depth1;
  upTo2.insert(upTo2.end(), depth2.begin(), depth2.end());
  for (auto& a : upTo2) depth3.push_back(fNot(a));
  for (auto& a : depth2) {
    depth3.push_back(fForall(0, a));
    depth3.push_back(fExists(0, a));
    depth3.push_back(fForall(1, a));
    depth3.push_back(fExists(1, a));
  }
  // small binary layer over depth-<=2 atoms (kept to one-sided pairs for size)
  for (auto& a : depth2)
    for (auto& b : depth1) {
      depth3.push_back(fAnd(a, b));
      depth3.push_back(fOr(a, b));
      depth3.push_back(fImplies(a, b));
      depth3.push_back(fIff(a, b));
    }

  std::vector<FormulaPtr> all = depth1;
  all.insert(all.end(), depth2.begin(), depth2.end());
  all.insert(all.end(), depth3.begin(), depth3.end());
  std::sort(all.begin(), all.end(), [](const FormulaPtr& a, const FormulaPtr& b) { return cmp(*a, *b) < 0; });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return cmp(*a, *b) == 0; }),
            all.end());
  return all;
}

std::vector<FormulaPtr> sentencePool() {
  std::vector<FormulaPtr> out;
  for (auto& f : formulaPoolDepth3())
    if (isClosed(f)) out.push_back(f);
  // named sentences: top, bottom, two axioms-to-be, one independent-looking
  // Pi1 sentence, and a small true Sigma1 sentence
  out.push_back(fVerum());
  out.push_back(fFalsum());
  out.push_back(parseFormula("all v0 (~S(v0) = 0)"));
  out.push_back(parseFormula("all v0 (v0 + 0 = v0)"));
  out.push_back(parseFormula("all v0 (~exp(v0) = 0)"));
  out.push_back(parseFormula("ex v0 (v0 = 0)"));
  std::sort(out.begin(), out.end(), [](const FormulaPtr& a, const FormulaPtr& b) { return cmp(*a, *b) < 0; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return cmp(*a, *b) == 0; }),
            out.end());
  return out;
}

}  // namespace provlab
