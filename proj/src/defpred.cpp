#include "provlab/defpred.hpp"

#include <algorithm>

namespace provlab {

std::string to_string(EvalResult::V v) {
  switch (v) {
    case EvalResult::V::True: return "true";
    case EvalResult::V::False: return "false";
    case EvalResult::V::OutOfFuel: return "out-of-fuel";
  }
  return "?";
}

// -- registration -------------------------------------------------------------

void DefEnv::checkTermSymbols(const TermPtr& t, const std::string& newName) const {
  if (t->kind == Term::Kind::Fn) {
    if (t->fn == newName || !hasFn(t->fn))
      throw std::runtime_error("definition of @" + newName + " uses unregistered function @" + t->fn);
  }
  for (auto& a : t->args) checkTermSymbols(a, newName);
}

void DefEnv::checkBodySymbols(const FormulaPtr& f, const std::string& newName) const {
  if (f->kind == Formula::Kind::Pred) {
    if (f->pred == newName || !hasPred(f->pred))
      throw std::runtime_error("definition of @" + newName + " uses unregistered predicate @" + f->pred);
  }
  for (auto& t : f->terms) checkTermSymbols(t, newName);
  if (f->bound) checkTermSymbols(f->bound, newName);
  for (auto& s : f->subs) checkBodySymbols(s, newName);
}

void DefEnv::registerFn(FnDef def) {
  if (byName_.count(def.name))
    throw std::runtime_error("redefinition of symbol @" + def.name);
  if (def.arity > 4) throw std::runtime_error("@" + def.name + ": arity above 4 unsupported");
  checkBodySymbols(def.graph, def.name);
  checkTermSymbols(def.bound, def.name);
  if (classifyIn(flattenInner(def.graph)) != SyntClass::Delta0)
    throw std::runtime_error("@" + def.name + ": function graph must flatten to Delta0");
  byName_[def.name] = {true, fns_.size()};
  fnOrder_.push_back(def.name);
  fns_.push_back(std::move(def));
}

void DefEnv::registerPred(PredDef def) {
  if (byName_.count(def.name))
    throw std::runtime_error("redefinition of symbol @" + def.name);
  if (def.arity > 4) throw std::runtime_error("@" + def.name + ": arity above 4 unsupported");
  checkBodySymbols(def.body, def.name);
  SyntClass actual = classifyIn(flattenInner(def.body));
  if (actual != def.declared)
    throw std::runtime_error("@" + def.name + ": declared class " + to_string(def.declared) +
                             " but body flattens to " + to_string(actual));
  byName_[def.name] = {false, preds_.size()};
  predOrder_.push_back(def.name);
  preds_.push_back(std::move(def));
}

bool DefEnv::hasFn(const std::string& name) const {
  auto it = byName_.find(name);
  return it != byName_.end() && it->second.isFn;
}
bool DefEnv::hasPred(const std::string& name) const {
  auto it = byName_.find(name);
  return it != byName_.end() && !it->second.isFn;
}
const FnDef& DefEnv::fn(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end() || !it->second.isFn)
    throw std::runtime_error("unknown function @" + name);
  return fns_[it->second.idx];
}
const PredDef& DefEnv::pred(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end() || it->second.isFn)
    throw std::runtime_error("unknown predicate @" + name);
  return preds_[it->second.idx];
}
PredDef& DefEnv::predMutable(const std::string& name) {
  auto it = byName_.find(name);
  if (it == byName_.end() || it->second.isFn)
    throw std::runtime_error("unknown predicate @" + name);
  return preds_[it->second.idx];
}
unsigned DefEnv::fnId(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end() || !it->second.isFn)
    throw std::runtime_error("unknown function @" + name);
  return static_cast<unsigned>(it->second.idx);
}
unsigned DefEnv::predId(const std::string& name) const {
  auto it = byName_.find(name);
  if (it == byName_.end() || it->second.isFn)
    throw std::runtime_error("unknown predicate @" + name);
  return static_cast<unsigned>(it->second.idx);
}

SyntClass DefEnv::classOf(const std::string& predName) const { return pred(predName).declared; }

SyntClass DefEnv::classifyIn(const FormulaPtr& f) const {
  return classify(f, [this](const std::string& n) { return classOf(n); });
}

// -- flatten --------------------------------------------------------------------

namespace {

unsigned maxVarIndex(const TermPtr& t) {
  unsigned m = 0;
  if (t->kind == Term::Kind::Var) m = t->var + 1;
  for (auto& a : t->args) m = std::max(m, maxVarIndex(a));
  return m;
}
unsigned maxVarIndex(const FormulaPtr& f) {
  unsigned m = 0;
  for (auto& t : f->terms) m = std::max(m, maxVarIndex(t));
  if (f->bound) m = std::max(m, maxVarIndex(f->bound));
  for (auto& s : f->subs) m = std::max(m, maxVarIndex(s));
  switch (f->kind) {
    case Formula::Kind::Forall: case Formula::Kind::Exists:
    case Formula::Kind::BForall: case Formula::Kind::BExists:
      m = std::max(m, f->var + 1);
      break;
    default: break;
  }
  return m;
}

// find one defined-function application inside a term, innermost first
TermPtr findFnApp(const TermPtr& t) {
  for (auto& a : t->args) {
    if (auto r = findFnApp(a)) return r;
  }
  if (t->kind == Term::Kind::Fn) return t;
  return nullptr;
}

TermPtr replaceTerm(const TermPtr& t, const TermPtr& what, const TermPtr& repl) {
  if (equal(*t, *what)) return repl;
  if (t->args.empty()) return t;
  Term n = *t;
  for (auto& a : n.args) a = replaceTerm(a, what, repl);
  return std::make_shared<const Term>(std::move(n));
}

}  // namespace

FormulaPtr DefEnv::flattenInner(const FormulaPtr& f) const {
  switch (f->kind) {
    case Formula::Kind::Falsum:
    case Formula::Kind::Verum:
      return f;
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Formula n = *f;
      for (auto& s : n.subs) s = flattenInner(s);
      return std::make_shared<const Formula>(std::move(n));
    }
    case Formula::Kind::BForall:
    case Formula::Kind::BExists: {
      // the bound term may itself contain defined functions
      if (findFnApp(f->bound)) {
        // rewrite  Q v<=b(..@g..) (body)  with the graph of @g pulled out
        auto app = findFnApp(f->bound);
        const FnDef& d = fn(app->fn);
        unsigned w = std::max(maxVarIndex(f), f->var + 1);
        auto graph = d.graph;
        auto bnd = d.bound;
        for (unsigned i = 0; i < d.arity; i++) {
          graph = substitute(graph, i, app->args[i]);
          bnd = substitute(bnd, i, app->args[i]);
        }
        graph = substitute(graph, d.arity, tVar(w));
        auto newBound = replaceTerm(f->bound, app, tVar(w));
        FormulaPtr inner = f->kind == Formula::Kind::BForall
                               ? fBForall(f->var, newBound, f->subs[0])
                               : fBExists(f->var, newBound, f->subs[0]);
        return flattenInner(fBExists(w, bnd, fAnd(graph, inner)));
      }
      Formula n = *f;
      n.subs = {flattenInner(f->subs[0])};
      return std::make_shared<const Formula>(std::move(n));
    }
    case Formula::Kind::Equal:
    case Formula::Kind::Leq: {
      // eliminate defined functions from atom arguments
      for (auto& t : f->terms) {
        if (auto app = findFnApp(t)) {
          const FnDef& d = fn(app->fn);
          unsigned w = maxVarIndex(f);
          auto graph = d.graph;
          auto bnd = d.bound;
          for (unsigned i = 0; i < d.arity; i++) {
            graph = substitute(graph, i, app->args[i]);
            bnd = substitute(bnd, i, app->args[i]);
          }
          graph = substitute(graph, d.arity, tVar(w));
          Formula atom = *f;
          for (auto& tt : atom.terms) tt = replaceTerm(tt, app, tVar(w));
          return flattenInner(fBExists(w, bnd, fAnd(graph, std::make_shared<const Formula>(std::move(atom)))));
        }
      }
      return f;
    }
    case Formula::Kind::Pred: {
      // expand function applications in arguments first
      for (auto& t : f->terms) {
        if (auto app = findFnApp(t)) {
          const FnDef& d = fn(app->fn);
          unsigned w = maxVarIndex(f);
          auto graph = d.graph;
          auto bnd = d.bound;
          for (unsigned i = 0; i < d.arity; i++) {
            graph = substitute(graph, i, app->args[i]);
            bnd = substitute(bnd, i, app->args[i]);
          }
          graph = substitute(graph, d.arity, tVar(w));
          Formula atom = *f;
          for (auto& tt : atom.terms) tt = replaceTerm(tt, app, tVar(w));
          return flattenInner(fBExists(w, bnd, fAnd(graph, std::make_shared<const Formula>(std::move(atom)))));
        }
      }
      auto it = flatCache_.find(f->pred);
      FormulaPtr flatBody;
      if (it != flatCache_.end()) {
        flatBody = it->second;
      } else {
        flatBody = flattenInner(pred(f->pred).body);
        flatCache_[f->pred] = flatBody;
      }
      const PredDef& d = pred(f->pred);
      // substitute argument terms for parameters; shift parameters out of the
      // way first so that argument variables are never captured
      FormulaPtr out = flatBody;
      unsigned shift = maxVarIndex(flatBody);
      for (auto& t : f->terms) shift = std::max(shift, maxVarIndex(t));
      for (unsigned i = 0; i < d.arity; i++) out = substitute(out, i, tVar(shift + i));
      for (unsigned i = 0; i < d.arity; i++) out = substitute(out, shift + i, f->terms[i]);
      return out;
    }
  }
  throw std::logic_error("flatten: unreachable");
}

FormulaPtr DefEnv::flatten(const FormulaPtr& f) const { return flattenInner(f); }

// -- evaluation ---------------------------------------------------------------

namespace {

struct EvalCtx {
  const DefEnv& env;
  const EvalBudget& budget;
  long long fuel;
  bool usedHints = false;
  bool usedTrustedEnum = false;
  // hint frame of the predicate body currently being evaluated
  const std::map<unsigned, HintProvider>* frameHints = nullptr;
  std::vector<Nat> frameArgs;

  bool charge(long long n = 1) {
    fuel -= n;
    return fuel >= 0;
  }
};

struct Tri {
  EvalResult::V v;
  std::optional<Nat> witness;
};

std::optional<Nat> evalTermCtx(const TermPtr& t, const Assignment& asg, EvalCtx& cx) {
  if (!cx.charge()) return std::nullopt;
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = asg.find(t->var);
      if (it == asg.end()) throw std::logic_error("evaluate: unassigned variable v" + std::to_string(t->var));
      return it->second;
    }
    case Term::Kind::Zero: return Nat(0);
    case Term::Kind::Succ: {
      auto a = evalTermCtx(t->args[0], asg, cx);
      if (!a) return std::nullopt;
      return *a + 1;
    }
    case Term::Kind::Plus: {
      auto a = evalTermCtx(t->args[0], asg, cx);
      auto b = evalTermCtx(t->args[1], asg, cx);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Term::Kind::Times: {
      auto a = evalTermCtx(t->args[0], asg, cx);
      auto b = evalTermCtx(t->args[1], asg, cx);
      if (!a || !b) return std::nullopt;
      if (!cx.charge(static_cast<long long>((bitlen(*a) + bitlen(*b)) / 64))) return std::nullopt;
      return *a * *b;
    }
    case Term::Kind::Exp2: {
      auto a = evalTermCtx(t->args[0], asg, cx);
      if (!a) return std::nullopt;
      if (!fitsUnsignedLong(*a) || toULL(*a) > cx.budget.exp2BitCap) return std::nullopt;
      if (!cx.charge(static_cast<long long>(toULL(*a) / 64))) return std::nullopt;
      return pow2(static_cast<unsigned long>(toULL(*a)));
    }
    case Term::Kind::Fn: {
      const FnDef& d = cx.env.fn(t->fn);
      std::vector<Nat> args;
      args.reserve(t->args.size());
      for (auto& a : t->args) {
        auto v = evalTermCtx(a, asg, cx);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      if (!cx.charge(4)) return std::nullopt;
      return d.native(args);
    }
  }
  return std::nullopt;
}

Tri evalFormulaCtx(const FormulaPtr& f, Assignment& asg, EvalCtx& cx);

Tri kleeneAnd(Tri a, Tri b) {
  using V = EvalResult::V;
  if (a.v == V::False || b.v == V::False) return {V::False, {}};
  if (a.v == V::True && b.v == V::True) return {V::True, {}};
  return {V::OutOfFuel, {}};
}

// quantifier evaluation with scan / hints / guard enumerators
Tri evalQuantifier(const FormulaPtr& f, Assignment& asg, EvalCtx& cx) {
  using V = EvalResult::V;
  bool isForall = f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::BForall;
  bool bounded = f->kind == Formula::Kind::BForall || f->kind == Formula::Kind::BExists;

  std::optional<Nat> range;  // inclusive upper bound
  if (bounded) {
    auto b = evalTermCtx(f->bound, asg, cx);
    if (!b) return {V::OutOfFuel, {}};
    range = *b;
  }

  auto evalAt = [&](const Nat& val) -> Tri {
    auto saved = asg.find(f->var) != asg.end() ? std::optional<Nat>(asg[f->var]) : std::nullopt;
    asg[f->var] = val;
    auto r = evalFormulaCtx(f->subs[0], asg, cx);
    if (saved) asg[f->var] = *saved; else asg.erase(f->var);
    return r;
  };

  // (1) honest exhaustive scan when the range is small
  if (range && *range <= Nat(cx.budget.scanCap)) {
    bool sawOOF = false;
    for (Nat v = 0; v <= *range; v++) {
      if (!cx.charge()) return {V::OutOfFuel, {}};
      auto r = evalAt(v);
      if (!isForall && r.v == V::True) return {V::True, v};
      if (isForall && r.v == V::False) return {V::False, v};
      if (r.v == V::OutOfFuel) sawOOF = true;
      if (cx.fuel < 0) return {V::OutOfFuel, {}};
    }
    if (sawOOF) return {V::OutOfFuel, {}};
    return {isForall ? V::True : V::False, {}};
  }

  // (2) witness / counterexample hints attached to this quantifier variable
  bool hintComplete = false, hintTried = false, hintAllDecided = true;
  if (cx.budget.allowHints && cx.frameHints) {
    auto it = cx.frameHints->find(f->var);
    if (it != cx.frameHints->end()) {
      hintTried = true;
      HintResult h = it->second(cx.frameArgs);
      hintComplete = h.complete;
      for (auto& cand : h.candidates) {
        if (range && cand > *range) continue;
        if (!cx.charge()) return {V::OutOfFuel, {}};
        auto r = evalAt(cand);
        cx.usedHints = true;
        if (!isForall && r.v == V::True) return {V::True, cand};
        if (isForall && r.v == V::False) return {V::False, cand};
        if (r.v == V::OutOfFuel) hintAllDecided = false;
      }
      if (hintComplete && hintAllDecided && cx.budget.allowCompleteEnum) {
        cx.usedTrustedEnum = true;
        return {isForall ? V::True : V::False, {}};
      }
    }
  }

  // (3) guard enumerators:  all v<=B (G(,.v.,) -> H)   /   ex v<=B (G & H)
  if (cx.budget.allowHints) {
    const Formula& body = *f->subs[0];
    std::vector<const Formula*> guards;
    if (isForall && body.kind == Formula::Kind::Implies) {
      const Formula* g = body.subs[0].get();
      if (g->kind == Formula::Kind::Pred) guards.push_back(g);
      if (g->kind == Formula::Kind::And) {
        if (g->subs[0]->kind == Formula::Kind::Pred) guards.push_back(g->subs[0].get());
        if (g->subs[1]->kind == Formula::Kind::Pred) guards.push_back(g->subs[1].get());
      }
    }
    if (!isForall && body.kind == Formula::Kind::And) {
      if (body.subs[0]->kind == Formula::Kind::Pred) guards.push_back(body.subs[0].get());
      if (body.subs[1]->kind == Formula::Kind::Pred) guards.push_back(body.subs[1].get());
    }
    const PredDef::Solutions* best = nullptr;
    const Formula* bestGuard = nullptr;
    unsigned bestPos = 0;
    for (auto* g : guards) {
      if (!cx.env.hasPred(g->pred)) continue;
      const PredDef& d = cx.env.pred(g->pred);
      for (unsigned pos = 0; pos < g->terms.size(); pos++) {
        const Term& arg = *g->terms[pos];
        if (arg.kind != Term::Kind::Var || arg.var != f->var) continue;
        auto it = d.solutions.find(pos);
        if (it == d.solutions.end()) continue;
        if (!best || it->second.priority > best->priority) {
          best = &it->second;
          bestGuard = g;
          bestPos = pos;
        }
      }
    }
    if (best) {
      // evaluate the guard's other arguments
      std::vector<Nat> other;
      bool ok = true;
      for (unsigned pos = 0; pos < bestGuard->terms.size(); pos++) {
        if (pos == bestPos) { other.push_back(Nat(0)); continue; }
        auto v = evalTermCtx(bestGuard->terms[pos], asg, cx);
        if (!v) { ok = false; break; }
        other.push_back(std::move(*v));
      }
      if (ok) {
        Nat bnd = range ? *range : Nat(0);
        HintResult h = best->fn(other, range ? bnd : Nat(-1));
        bool allDecided = true;
        for (auto& cand : h.candidates) {
          if (range && cand > *range) continue;
          if (!cx.charge()) return {V::OutOfFuel, {}};
          auto r = evalAt(cand);
          cx.usedHints = true;
          if (!isForall && r.v == V::True) return {V::True, cand};
          if (isForall && r.v == V::False) return {V::False, cand};
          if (r.v == V::OutOfFuel) allDecided = false;
        }
        if (h.complete && best->complete && allDecided && cx.budget.allowCompleteEnum) {
          // values outside the enumeration fail the guard, so the
          // implication holds there / the conjunction fails there
          cx.usedTrustedEnum = true;
          return {isForall ? V::True : V::False, {}};
        }
      }
    }
  }

  if (hintTried && hintComplete && cx.budget.allowCompleteEnum) {
    // complete hint with an undecided candidate: cannot close either way
    return {V::OutOfFuel, {}};
  }

  // (4) partial scan from zero within remaining fuel (semi-decision)
  Nat v = 0;
  while (cx.fuel > 0) {
    if (range && v > *range) return {isForall ? V::True : V::False, {}};
    if (!cx.charge()) break;
    auto r = evalAt(v);
    if (!isForall && r.v == V::True) return {V::True, v};
    if (isForall && r.v == V::False) return {V::False, v};
    v++;
  }
  return {V::OutOfFuel, {}};
}

Tri evalFormulaCtx(const FormulaPtr& f, Assignment& asg, EvalCtx& cx) {
  using V = EvalResult::V;
  if (!cx.charge()) return {V::OutOfFuel, {}};
  switch (f->kind) {
    case Formula::Kind::Falsum: return {V::False, {}};
    case Formula::Kind::Verum: return {V::True, {}};
    case Formula::Kind::Equal:
    case Formula::Kind::Leq: {
      auto a = evalTermCtx(f->terms[0], asg, cx);
      auto b = evalTermCtx(f->terms[1], asg, cx);
      if (!a || !b) return {V::OutOfFuel, {}};
      bool r = f->kind == Formula::Kind::Equal ? (*a == *b) : (*a <= *b);
      return {r ? V::True : V::False, {}};
    }
    case Formula::Kind::Not: {
      auto r = evalFormulaCtx(f->subs[0], asg, cx);
      if (r.v == V::True) return {V::False, {}};
      if (r.v == V::False) return {V::True, {}};
      return {V::OutOfFuel, {}};
    }
    case Formula::Kind::And: {
      auto a = evalFormulaCtx(f->subs[0], asg, cx);
      if (a.v == V::False) return {V::False, {}};
      auto b = evalFormulaCtx(f->subs[1], asg, cx);
      return kleeneAnd(a, b);
    }
    case Formula::Kind::Or: {
      auto a = evalFormulaCtx(f->subs[0], asg, cx);
      if (a.v == V::True) return {V::True, {}};
      auto b = evalFormulaCtx(f->subs[1], asg, cx);
      if (b.v == V::True) return {V::True, {}};
      if (a.v == V::False && b.v == V::False) return {V::False, {}};
      return {V::OutOfFuel, {}};
    }
    case Formula::Kind::Implies: {
      auto a = evalFormulaCtx(f->subs[0], asg, cx);
      if (a.v == V::False) return {V::True, {}};
      auto b = evalFormulaCtx(f->subs[1], asg, cx);
      if (b.v == V::True) return {V::True, {}};
      if (a.v == V::True && b.v == V::False) return {V::False, {}};
      return {V::OutOfFuel, {}};
    }
    case Formula::Kind::Iff: {
      auto a = evalFormulaCtx(f->subs[0], asg, cx);
      auto b = evalFormulaCtx(f->subs[1], asg, cx);
      if (a.v == V::OutOfFuel || b.v == V::OutOfFuel) return {V::OutOfFuel, {}};
      return {a.v == b.v ? V::True : V::False, {}};
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::BForall:
    case Formula::Kind::BExists:
      return evalQuantifier(f, asg, cx);
    case Formula::Kind::Pred: {
      const PredDef& d = cx.env.pred(f->pred);
      std::vector<Nat> args;
      args.reserve(f->terms.size());
      for (auto& t : f->terms) {
        auto v = evalTermCtx(t, asg, cx);
        if (!v) return {V::OutOfFuel, {}};
        args.push_back(std::move(*v));
      }
      // evaluate the body under a fresh hint frame
      Assignment inner;
      for (unsigned i = 0; i < d.arity; i++) inner[i] = args[i];
      auto* savedHints = cx.frameHints;
      auto savedArgs = std::move(cx.frameArgs);
      cx.frameHints = d.hints.empty() ? nullptr : &d.hints;
      cx.frameArgs = args;
      auto r = evalFormulaCtx(d.body, inner, cx);
      cx.frameHints = savedHints;
      cx.frameArgs = std::move(savedArgs);
      return r;
    }
  }
  return {V::OutOfFuel, {}};
}

}  // namespace

std::optional<Nat> DefEnv::evalTerm(const TermPtr& t, const Assignment& asg, EvalBudget budget) const {
  EvalCtx cx{*this, budget, budget.fuel};
  return evalTermCtx(t, asg, cx);
}

EvalResult DefEnv::evaluate(const FormulaPtr& f, const Assignment& asg, EvalBudget budget) const {
  EvalCtx cx{*this, budget, budget.fuel};
  Assignment a = asg;
  auto r = evalFormulaCtx(f, a, cx);
  EvalResult out;
  out.v = r.v;
  out.witness = r.witness;
  out.fuelUsed = budget.fuel - cx.fuel;
  out.usedHints = cx.usedHints;
  out.usedTrustedEnum = cx.usedTrustedEnum;
  return out;
}

TermPtr DefEnv::evalReady(const TermPtr& t) const { return t; }

}  // namespace provlab
