#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "provlab/syntax.hpp"

namespace provlab {

// ---------------------------------------------------------------------------
// Definitional extensions: registry of defined predicates and functions over
// the base signature, standard-model evaluation with bounded fuel, and
// flattening back into the base signature.
//
// Evaluation is three-valued (true / false / out-of-fuel). Wide quantifiers
// can be driven by witness hints and solution enumerators registered with a
// symbol. Hints are candidate values tried honestly (the body decides); an
// enumerator marked complete additionally licenses the negative side, and
// every result that leans on one carries the usedTrustedEnum flag. Pure mode
// (allowHints = allowCompleteEnum = false) is the reference semantics used by
// the certification suites at small scale.
// ---------------------------------------------------------------------------

using Assignment = std::map<unsigned, Nat>;

struct HintResult {
  std::vector<Nat> candidates;
  bool complete = false;
};

using HintProvider = std::function<HintResult(const std::vector<Nat>& args)>;
using SolutionEnum =
    std::function<HintResult(const std::vector<Nat>& otherArgs, const Nat& bound)>;
using NativeFn = std::function<std::optional<Nat>(const std::vector<Nat>&)>;
using MetaOracle = std::function<std::optional<bool>(const std::vector<Nat>&)>;

struct FnDef {
  std::string name;
  unsigned arity = 0;
  FormulaPtr graph;      // free vars v0..v{arity-1}, result var = arity
  TermPtr bound;         // result bound, in v0..v{arity-1}
  NativeFn native;
  enum class Totality { ProvedByBound, Asserted } totality = Totality::ProvedByBound;
};

struct PredDef {
  std::string name;
  unsigned arity = 0;
  FormulaPtr body;       // free vars v0..v{arity-1}
  SyntClass declared = SyntClass::Delta0;
  MetaOracle oracle;     // optional reference evaluator (never used by evaluate)
  // quantifier-variable-keyed witness hints for the body
  std::map<unsigned, HintProvider> hints;
  // argPos -> enumerator of satisfying values at that position; priority picks
  // among several guards in one quantifier body
  struct Solutions { SolutionEnum fn; bool complete = false; int priority = 0; };
  std::map<unsigned, Solutions> solutions;
};

struct EvalBudget {
  long long fuel = 1'000'000;
  long long scanCap = 1 << 16;    // honest exhaustive range scan limit
  bool allowHints = true;
  bool allowCompleteEnum = true;
  unsigned long exp2BitCap = 1u << 22;
};

struct EvalResult {
  enum class V { True, False, OutOfFuel } v = V::OutOfFuel;
  std::optional<Nat> witness;
  long long fuelUsed = 0;
  bool usedHints = false;
  bool usedTrustedEnum = false;

  bool isTrue() const { return v == V::True; }
  bool isFalse() const { return v == V::False; }
  bool decided() const { return v != V::OutOfFuel; }
};

std::string to_string(EvalResult::V v);

class DefEnv {
 public:
  // registration; throws std::runtime_error on redefinition, unregistered
  // symbols in the body, arity > 4, or declared-class mismatch
  void registerFn(FnDef def);
  void registerPred(PredDef def);

  bool hasFn(const std::string& name) const;
  bool hasPred(const std::string& name) const;
  const FnDef& fn(const std::string& name) const;
  const PredDef& pred(const std::string& name) const;
  PredDef& predMutable(const std::string& name);

  // registration order; ids are shared with the coding scheme
  unsigned fnId(const std::string& name) const;
  unsigned predId(const std::string& name) const;
  const std::vector<std::string>& fnNames() const { return fnOrder_; }
  const std::vector<std::string>& predNames() const { return predOrder_; }

  SyntClass classOf(const std::string& predName) const;
  SyntClass classifyIn(const FormulaPtr& f) const;

  // replace every defined symbol by its definition (functions by bounded
  // graph expansion); output is over the base signature
  FormulaPtr flatten(const FormulaPtr& f) const;
  TermPtr evalReady(const TermPtr& t) const;

  // standard-model evaluation
  EvalResult evaluate(const FormulaPtr& f, const Assignment& asg, EvalBudget budget) const;
  std::optional<Nat> evalTerm(const TermPtr& t, const Assignment& asg, EvalBudget budget) const;

 private:
  struct Entry { bool isFn; size_t idx; };
  std::map<std::string, Entry> byName_;
  std::vector<FnDef> fns_;
  std::vector<PredDef> preds_;
  std::vector<std::string> fnOrder_, predOrder_;
  mutable std::map<std::string, FormulaPtr> flatCache_;

  void checkBodySymbols(const FormulaPtr& f, const std::string& newName) const;
  void checkTermSymbols(const TermPtr& t, const std::string& newName) const;
  FormulaPtr flattenInner(const FormulaPtr& f) const;
};

}  // namespace provlab
