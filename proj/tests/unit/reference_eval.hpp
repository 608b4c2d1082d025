#pragma once

// Big-step evaluator for closed terms, used only as a test oracle.
// Environment based; shares nothing with the library beyond the AST.

#include "ctg/syntax.hpp"

#include <map>
#include <memory>
#include <stdexcept>

namespace refeval {

struct Val;
using V = std::shared_ptr<const Val>;
using Env = std::map<std::string, V>;

struct Val {
  enum K { Num, Top, Clo, Pair, Refl } k;
  ctg::Nat n = 0;
  Env env;
  std::string x;
  ctg::Expr body;
  V a, b;
};

inline V num(const ctg::Nat& n) { return std::make_shared<const Val>(Val{Val::Num, n, {}, {}, nullptr, nullptr, nullptr}); }
inline V simple(Val::K k) { return std::make_shared<const Val>(Val{k, 0, {}, {}, nullptr, nullptr, nullptr}); }

inline V eval(const ctg::Expr& e, const Env& env) {
  using ctg::EK;
  const auto& k = e->kids;
  switch (e->k) {
    case EK::Var: return env.at(e->xs[0]);
    case EK::Top: return simple(Val::Top);
    case EK::Zero: return num(0);
    case EK::Num: return num(e->n);
    case EK::Succ: return num(eval(k[0], env)->n + 1);
    case EK::Lam: return std::make_shared<const Val>(Val{Val::Clo, 0, env, e->xs[0], k[1], nullptr, nullptr});
    case EK::App: {
      V f = eval(k[0], env);
      Env inner = f->env;
      inner[f->x] = eval(k[1], env);
      return eval(f->body, inner);
    }
    case EK::Pair: return std::make_shared<const Val>(Val{Val::Pair, 0, {}, {}, nullptr, eval(k[0], env), eval(k[1], env)});
    case EK::Refl: return simple(Val::Refl);
    case EK::NatRec: {
      V v = eval(k[1], env);
      ctg::Nat n = eval(k[3], env)->n;
      for (ctg::Nat i = 0; i < n; ++i) {
        Env inner = env;
        inner[e->xs[1]] = num(i);
        inner[e->xs[2]] = v;
        v = eval(k[2], inner);
      }
      return v;
    }
    case EK::SigRec: {
      V p = eval(k[2], env);
      Env inner = env;
      inner[e->xs[1]] = p->a;
      inner[e->xs[2]] = p->b;
      return eval(k[1], inner);
    }
    case EK::IdRec: {
      Env inner = env;
      inner[e->xs[3]] = eval(k[2], env);
      return eval(k[1], inner);
    }
    default: throw std::runtime_error("refeval: no value");
  }
}

}  // namespace refeval
