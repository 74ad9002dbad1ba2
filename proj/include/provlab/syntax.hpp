#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "provlab/nat.hpp"

namespace provlab {

// ---------------------------------------------------------------------------
// Abstract syntax of first-order arithmetic over {0, S, +, *, exp2, <=, =},
// with bounded quantifiers as first-class nodes and defined symbols
// (@name applications) resolved against a definition registry.
// ---------------------------------------------------------------------------

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
  enum class Kind { Var, Zero, Succ, Plus, Times, Exp2, Fn };
  Kind kind;
  unsigned var = 0;            // Kind::Var
  std::string fn;              // Kind::Fn
  std::vector<TermPtr> args;
};

struct Formula {
  enum class Kind {
    Equal, Leq, Falsum, Verum,
    Not, And, Or, Implies, Iff,
    Forall, Exists, BForall, BExists,
    Pred
  };
  Kind kind;
  unsigned var = 0;                 // quantifiers
  TermPtr bound;                    // bounded quantifiers
  std::vector<TermPtr> terms;       // Equal/Leq/Pred arguments
  std::vector<FormulaPtr> subs;     // connective / quantifier children
  std::string pred;                 // Kind::Pred
};

// -- constructors -----------------------------------------------------------

TermPtr tVar(unsigned i);
TermPtr tZero();
TermPtr tSucc(TermPtr t);
TermPtr tPlus(TermPtr a, TermPtr b);
TermPtr tTimes(TermPtr a, TermPtr b);
TermPtr tExp2(TermPtr t);
TermPtr tFn(const std::string& name, std::vector<TermPtr> args);

FormulaPtr fEqual(TermPtr a, TermPtr b);
FormulaPtr fLeq(TermPtr a, TermPtr b);
FormulaPtr fFalsum();
FormulaPtr fVerum();
FormulaPtr fNot(FormulaPtr a);
FormulaPtr fAnd(FormulaPtr a, FormulaPtr b);
FormulaPtr fOr(FormulaPtr a, FormulaPtr b);
FormulaPtr fImplies(FormulaPtr a, FormulaPtr b);
FormulaPtr fIff(FormulaPtr a, FormulaPtr b);
FormulaPtr fForall(unsigned v, FormulaPtr body);
FormulaPtr fExists(unsigned v, FormulaPtr body);
// Throws std::invalid_argument if the bound term mentions the bound variable.
FormulaPtr fBForall(unsigned v, TermPtr bound, FormulaPtr body);
FormulaPtr fBExists(unsigned v, TermPtr bound, FormulaPtr body);
FormulaPtr fPred(const std::string& name, std::vector<TermPtr> args);

FormulaPtr fAndAll(const std::vector<FormulaPtr>& fs);   // verum if empty
FormulaPtr fOrAll(const std::vector<FormulaPtr>& fs);    // falsum if empty

// -- structural operations --------------------------------------------------

bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);
inline bool equal(const TermPtr& a, const TermPtr& b) { return equal(*a, *b); }
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

// total order, used for canonical pools and dedup
int cmp(const Term& a, const Term& b);
int cmp(const Formula& a, const Formula& b);

std::set<unsigned> freeVars(const TermPtr& t);
std::set<unsigned> freeVars(const FormulaPtr& f);
std::set<unsigned> allVars(const FormulaPtr& f);
bool isClosed(const FormulaPtr& f);

// capture-avoiding substitution of a term for every free occurrence of var
TermPtr substitute(const TermPtr& t, unsigned var, const TermPtr& repl);
FormulaPtr substitute(const FormulaPtr& f, unsigned var, const TermPtr& repl);

size_t nodeCount(const TermPtr& t);
size_t nodeCount(const FormulaPtr& f);
size_t quantifierDepth(const FormulaPtr& f);

// -- printing and parsing ---------------------------------------------------

std::string render(const TermPtr& t);
std::string render(const FormulaPtr& f);

struct ParseError : std::runtime_error {
  size_t offset, line, col;
  ParseError(const std::string& msg, size_t off, size_t ln, size_t cl)
      : std::runtime_error(msg), offset(off), line(ln), col(cl) {}
};

// Throws ParseError on malformed input. Defined symbols are accepted
// syntactically; the registry checks happen at evaluation/definition time.
FormulaPtr parseFormula(const std::string& text);
TermPtr parseTerm(const std::string& text);

// -- syntactic classification -----------------------------------------------

enum class SyntClass { Delta0, Sigma1, Pi1, Other };
std::string to_string(SyntClass c);

// Classifier over the base signature; defined symbols are resolved through
// the lookup (their declared class substitutes for the subformula).
// Normalization built in: blocks of like unbounded quantifiers merge, bounded
// quantifiers commute with like-polarity unbounded blocks, negation swaps.
SyntClass classify(const FormulaPtr& f,
                   const std::function<SyntClass(const std::string&)>& lookup);
SyntClass classify(const FormulaPtr& f);  // base signature only

// -- numerals ---------------------------------------------------------------

enum class NumeralStyle { Unary, Binary };

// Unary: S^n(0). Binary: the canonical double-and-add form
//   num(0)=0, num(1)=S(0), num(2k)=S(S(0))*num(k), num(2k+1)=S(S(S(0))*num(k))
// of size O(log n).
TermPtr mkNumeral(const Nat& n, NumeralStyle style);

// Standard-model value of a closed base-signature term. Returns nullopt if
// the term has a variable or defined function, or exp2 exceeds the guard.
std::optional<Nat> valueOfClosed(const TermPtr& t, unsigned long exp2BitCap = 1u << 22);

// -- canonical pools --------------------------------------------------------

// All terms of AST depth <= d over variables vs and {0, S, +, *, exp2}.
std::vector<TermPtr> termPool(unsigned depth, const std::vector<unsigned>& vars);

// All formulas of full AST depth <= 3 over variables {v0, v1}: the canonical
// exhaustive pool used by roundtrip/coding/property suites (~3000 objects).
std::vector<FormulaPtr> formulaPoolDepth3();

// The closed members of formulaPoolDepth3 plus a few named sentences.
std::vector<FormulaPtr> sentencePool();

}  // namespace provlab
