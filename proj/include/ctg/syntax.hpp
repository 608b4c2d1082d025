#pragma once

#include "ctg/errors.hpp"
#include "ctg/nat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctg {

// Types and terms share one tree; formers listed with their binder layout.
enum class EK : std::uint8_t {
  Unit,      // 1
  Empty,     // 0
  NatT,      // N
  Pi,        // Pi (x : A) B            xs {x}        kids {A, B}
  Sigma,     // Sigma (x : A) B         xs {x}        kids {A, B}
  Id,        // Id A a b                              kids {A, a, b}
  Var,       //                         xs {name}
  Top,       // top
  Zero,      // zero
  Succ,      // succ t                                kids {t}
  Num,       // n̄, sugar for succ^n zero
  NatRec,    // natrec([x] C, cz, [x, y] cs, n)       xs {x, x', y}       kids {C, cz, cs, n}
  Lam,       // \x : A. b               xs {x}        kids {A, b}
  App,       // f a                                   kids {f, a}
  Pair,      // (a, b)                                kids {a, b}
  SigRec,    // sigrec([z] C, [x, y] g, p)            xs {z, x, y}        kids {C, g, p}
  Refl,      // refl a                                kids {a}
  IdRec,     // idrec([x, y, p] C, [z] c, a, a', q)   xs {x, y, p, z}     kids {C, c, a, a', q}
  EmptyRec,  // emptyrec([x] C, a)                    xs {x}              kids {C, a}
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  EK k;
  std::vector<std::string> xs;
  std::vector<Expr> kids;
  Nat n = 0;
};

Expr e_unit();
Expr e_empty();
Expr e_nat();
Expr e_pi(std::string x, Expr a, Expr b);
Expr e_sigma(std::string x, Expr a, Expr b);
Expr e_id(Expr a, Expr x, Expr y);
Expr e_var(std::string x);
Expr e_top();
Expr e_zero();
Expr e_succ(Expr t);
Expr e_num(const Nat& n);
Expr e_natrec(std::string x, Expr c, Expr cz, std::string x2, std::string y, Expr cs, Expr n);
Expr e_lam(std::string x, Expr a, Expr b);
Expr e_app(Expr f, Expr a);
Expr e_pair(Expr a, Expr b);
Expr e_sigrec(std::string z, Expr c, std::string x, std::string y, Expr g, Expr p);
Expr e_refl(Expr a);
Expr e_idrec(std::string x, std::string y, std::string p, Expr c, std::string z, Expr body, Expr a, Expr a2, Expr q);
Expr e_emptyrec(std::string x, Expr c, Expr a);
Expr e_with(const Expr& e, std::vector<std::string> xs, std::vector<Expr> kids);

bool is_type_former(EK k);
// Indices into xs bound in kid i.
const std::vector<std::size_t>& binders_of(EK k, std::size_t kid);

using SCtx = std::vector<std::pair<std::string, Expr>>;

enum class JK : std::uint8_t { Ctx, Type, Term, CtxEq, TypeEq, TermEq };

struct Judgement {
  JK kind = JK::Ctx;
  SCtx ctx;
  SCtx ctx2;  // CtxEq
  Expr a;     // the type (Type, TypeEq) or term (Term, TermEq)
  Expr b;     // right-hand side of an equation
  Expr ty;    // Term, TermEq
};

struct SyntaxError : CtgError {
  std::size_t line, col;
  SyntaxError(const std::string& msg, std::size_t l, std::size_t c)
      : CtgError(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

Expr parse_term(const std::string& text);
Expr parse_type(const std::string& text);
SCtx parse_ctx(const std::string& text);
Judgement parse_judgement(const std::string& text);

struct Def {
  std::string name;
  Expr ty;  // may be null: inferred
  Expr term;
  std::size_t line = 0;
};
// `def name [: type] := term` blocks; `--` starts a comment.
std::vector<Def> parse_file(const std::string& text);

std::string print(const Expr& e);  // types and terms alike
std::string print_ctx(const SCtx& g);
std::string print(const Judgement& j);

std::vector<std::string> free_vars(const Expr& e);
bool occurs_free(const std::string& x, const Expr& e);
std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid);
// Capture-avoiding simultaneous substitution.
Expr subst_many(const Expr& e, const std::vector<std::pair<std::string, Expr>>& s);
Expr subst(const Expr& e, const Expr& a, const std::string& x);  // e[a/x]
// α-equivalence with numerals read as successor chains.
bool alpha_eq(const Expr& a, const Expr& b);
bool alpha_eq(const Judgement& a, const Judgement& b);

// Inlines earlier definitions into later ones.
std::vector<Def> inline_defs(const std::vector<Def>& defs);

}  // namespace ctg
