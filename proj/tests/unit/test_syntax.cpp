#include "ctg/derive.hpp"
#include "ctg/syntax.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ctg;

namespace {

Judgement J(const std::string& s) { return parse_judgement(s); }

// Random well-scoped expressions over a small variable pool.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  Expr type(int depth, std::vector<std::string>& scope) {
    int c = pick(depth <= 0 ? 3 : 6);
    switch (c) {
      case 0: return e_unit();
      case 1: return e_empty();
      case 2: return e_nat();
      case 3:
      case 4: {
        std::string x = name();
        Expr a = type(depth - 1, scope);
        scope.push_back(x);
        Expr b = type(depth - 1, scope);
        scope.pop_back();
        return c == 3 ? e_pi(x, a, b) : e_sigma(x, a, b);
      }
      default: return e_id(type(depth - 1, scope), term(depth - 1, scope), term(depth - 1, scope));
    }
  }

  Expr term(int depth, std::vector<std::string>& scope) {
    int c = pick(depth <= 0 ? 4 : 13);
    switch (c) {
      case 0: return scope.empty() ? e_top() : e_var(scope[pick(static_cast<int>(scope.size()))]);
      case 1: return e_zero();
      case 2: return e_num(pick(30));
      case 3: return e_top();
      case 4: return e_succ(term(depth - 1, scope));
      case 5: return e_refl(term(depth - 1, scope));
      case 6: return e_app(term(depth - 1, scope), term(depth - 1, scope));
      case 7: return e_pair(term(depth - 1, scope), term(depth - 1, scope));
      case 8: {
        std::string x = name();
        Expr a = type(depth - 1, scope);
        scope.push_back(x);
        Expr b = term(depth - 1, scope);
        scope.pop_back();
        return e_lam(x, a, b);
      }
      case 9: {
        std::string x = name(), x2 = name(), y = name();
        scope.push_back(x);
        Expr c0 = type(depth - 1, scope);
        scope.pop_back();
        Expr cz = term(depth - 1, scope);
        scope.push_back(x2);
        scope.push_back(y);
        Expr cs = term(depth - 1, scope);
        scope.resize(scope.size() - 2);
        return e_natrec(x, c0, cz, x2, y, cs, term(depth - 1, scope));
      }
      case 10: {
        std::string z = name(), x = name(), y = name();
        scope.push_back(z);
        Expr c0 = type(depth - 1, scope);
        scope.back() = x;
        scope.push_back(y);
        Expr g = term(depth - 1, scope);
        scope.resize(scope.size() - 2);
        return e_sigrec(z, c0, x, y, g, term(depth - 1, scope));
      }
      case 11: {
        std::string x = name(), y = name(), p = name(), z = name();
        scope.insert(scope.end(), {x, y, p});
        Expr c0 = type(depth - 1, scope);
        scope.resize(scope.size() - 3);
        scope.push_back(z);
        Expr body = term(depth - 1, scope);
        scope.pop_back();
        return e_idrec(x, y, p, c0, z, body, term(depth - 1, scope), term(depth - 1, scope), term(depth - 1, scope));
      }
      default: {
        std::string x = name();
        scope.push_back(x);
        Expr c0 = type(depth - 1, scope);
        scope.pop_back();
        return e_emptyrec(x, c0, term(depth - 1, scope));
      }
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string name() {
    static const char* names[] = {"x", "y", "z", "f", "p", "x1"};
    return names[pick(6)];
  }
  std::mt19937 rng_;
};

// Structural equality (no α), to check the parser rebuilt the same tree.
bool same(const Expr& a, const Expr& b) {
  if (a->k != b->k || a->xs != b->xs || a->n != b->n || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!same(a->kids[i], b->kids[i])) return false;
  return true;
}

}  // namespace

TEST(Syntax, ParsesLambda) {
  Expr e = parse_term("\\x:N. succ x");
  ASSERT_EQ(e->k, EK::Lam);
  EXPECT_EQ(e->xs[0], "x");
  EXPECT_EQ(e->kids[0]->k, EK::NatT);
  ASSERT_EQ(e->kids[1]->k, EK::Succ);
  EXPECT_EQ(e->kids[1]->kids[0]->k, EK::Var);
  EXPECT_TRUE(same(parse_term("λx:N. succ x"), e));
}

TEST(Syntax, ParsesPiOverId) {
  Expr t = parse_type("Pi (x:N) Id N x x");
  ASSERT_EQ(t->k, EK::Pi);
  ASSERT_EQ(t->kids[1]->k, EK::Id);
  EXPECT_EQ(t->kids[1]->kids[1]->xs[0], "x");
  EXPECT_TRUE(same(parse_type("Π (x:ℕ) Id N x x"), t));
}

TEST(Syntax, NumeralsAndApplication) {
  Expr e = parse_term("f 4\xCC\x84 (succ 2)");
  ASSERT_EQ(e->k, EK::App);
  EXPECT_EQ(e->kids[0]->k, EK::App);
  EXPECT_EQ(e->kids[0]->kids[1]->n, 4);
  EXPECT_TRUE(alpha_eq(parse_term("3"), parse_term("succ (succ (succ zero))")));
  EXPECT_FALSE(alpha_eq(parse_term("3"), parse_term("succ 3")));
}

TEST(Syntax, ErrorsCarryPositions) {
  try {
    parse_term("\\x:N.\n  succ )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.col, 8u);
  }
  EXPECT_THROW(parse_type("Pi x N"), SyntaxError);
  EXPECT_THROW(parse_judgement("|- N"), SyntaxError);
}

TEST(Syntax, Judgements) {
  EXPECT_EQ(J("|- ctx").kind, JK::Ctx);
  EXPECT_EQ(J("x : N, y : Id N x x |- ctx").ctx.size(), 2u);
  EXPECT_EQ(J("|- Pi (x:N) N type").kind, JK::Type);
  EXPECT_EQ(J("|- 1 = 1 type").kind, JK::TypeEq);
  EXPECT_EQ(J("|- 1 : N").kind, JK::Term);
  EXPECT_EQ(J("|- 0 = zero : N").kind, JK::TermEq);
  Judgement j = J("x : 0 |- emptyrec([y] N, x) : N");
  EXPECT_EQ(print(j), "x : 0 |- emptyrec([y] N, x) : N");
}

TEST(Syntax, FuzzRoundTrip) {
  Gen gen(7);
  for (int i = 0; i < 400; ++i) {
    std::vector<std::string> scope;
    Expr e = (i % 3 == 0) ? gen.type(4, scope) : gen.term(4, scope);
    std::string s = print(e);
    Expr back = (i % 3 == 0) ? parse_type(s) : parse_term(s);
    ASSERT_TRUE(same(back, e)) << s << "\n" << print(back);
    ASSERT_EQ(print(back), s);
  }
}

TEST(Syntax, Files) {
  auto defs = parse_file(
      "-- comment\n"
      "def two : N := succ (succ zero)\n"
      "def f := \\x:N. succ x\n"
      "def four := f (f two)\n"
      "def bad := top : N\n");
  ASSERT_EQ(defs.size(), 4u);
  EXPECT_EQ(defs[3].ty->k, EK::NatT);
  auto in = inline_defs(defs);
  EXPECT_TRUE(free_vars(in[2].term).empty());
  EXPECT_THROW(parse_file("def a := 1\ndef a := 2\n"), SyntaxError);
}

TEST(Subst, Basics) {
  EXPECT_EQ(print(subst(e_var("x"), e_num(3), "x")), "3");
  Expr lam = parse_term("\\x:N. x");
  EXPECT_TRUE(same(subst(lam, e_num(3), "x"), lam));
  EXPECT_EQ(print(subst(parse_term("succ y"), e_num(3), "x")), "succ y");
}

TEST(Subst, AvoidsCaptureUnderSigma) {
  // (Sigma (y:N) Id N x y)[y/x] must rename the binder.
  Expr t = parse_type("Sigma (y:N) Id N x y");
  Expr r = subst(t, e_var("y"), "x");
  ASSERT_EQ(r->k, EK::Sigma);
  EXPECT_NE(r->xs[0], "y");
  EXPECT_TRUE(alpha_eq(r, parse_type("Sigma (w:N) Id N y w")));
  EXPECT_FALSE(alpha_eq(r, parse_type("Sigma (y:N) Id N y y")));
  // Multi-binder eliminators.
  Expr n = parse_term("natrec([k] N, x, [k, r] succ (r), y)");
  Expr m = subst(n, e_var("r"), "x");
  EXPECT_TRUE(alpha_eq(m, parse_term("natrec([k] N, r, [k, s] succ s, y)")));
  Expr c = parse_term("\\y:N. x y");
  EXPECT_TRUE(alpha_eq(subst(c, e_var("y"), "x"), parse_term("\\z:N. y z")));
}

TEST(Subst, SimultaneousSwap) {
  Expr e = parse_term("(x, y)");
  EXPECT_EQ(print(subst_many(e, {{"x", e_var("y")}, {"y", e_var("x")}})), "(y, x)");
}

TEST(Derive, IdentityFunction) {
  DerivPtr d = derive(J("|- \\x:N. x : Pi (x:N) N"));
  auto rs = d->rules();
  EXPECT_EQ(rs[0], "Π-Intro");
  EXPECT_EQ(rs[1], "Var");
}

TEST(Derive, EmptyElimination) {
  DerivPtr d = derive(J("x : 0 |- emptyrec([y] N, x) : N"));
  EXPECT_EQ(d->rule, "0-Elim");
  auto rs = d->rules();
  EXPECT_NE(std::find(rs.begin(), rs.end(), "0-Form"), rs.end());
}

TEST(Derive, TopIsNotANumeral) {
  try {
    derive(J("|- top : N"));
    FAIL();
  } catch (const IllTyped& e) {
    EXPECT_EQ(e.rule, "Tm-Conv");
    EXPECT_EQ(print(e.at), "|- top : N");
  }
}

TEST(Derive, FirstFailingPremise) {
  try {
    derive(J("|- \\f:Pi (x:N) N. f top : N"));
    FAIL();
  } catch (const IllTyped& e) {
    EXPECT_EQ(print(e.at), "f : Pi (x : N) N |- top : N");
  }
  EXPECT_THROW(derive(J("|- y : N")), IllTyped);
  EXPECT_THROW(derive(J("x : N, x : N |- ctx")), IllTyped);
  EXPECT_THROW(derive(J("|- zero zero : N")), IllTyped);
}

TEST(Derive, NumeralsAreSuccessorChains) {
  DerivPtr d = derive(J("|- 3 : N"));
  EXPECT_EQ(d->rules(), (std::vector<std::string>{"N-IntroS", "N-IntroS", "N-IntroS", "N-IntroZ", "Ctx-Emp"}));
}

TEST(Derive, EliminatorsAndPairs) {
  derive(J("|- natrec([x] N, 2, [k, r] succ r, 3) : N"));
  derive(J("|- (1, refl 1) : Sigma (x:N) Id N x x"));
  derive(J("p : Sigma (x:N) N |- sigrec([z] N, [a, b] a, p) : N"));
  derive(J("a : N, b : N, q : Id N a b |- idrec([x, y, p] Id N y x, [z] refl z, a, b, q) : Id N b a"));
  derive(J("|- \\f:Pi (x:N) N. f 3 : Pi (f : Pi (x:N) N) N"));
}

TEST(Derive, ComputationRules) {
  EXPECT_EQ(derive(J("|- (\\x:N. succ x) 4 = succ 4 : N"))->rule, "Π-Comp");
  EXPECT_EQ(derive(J("|- (\\x:N. succ x) 4 = 5 : N"))->rule, "Π-Comp");
  EXPECT_EQ(derive(J("|- natrec([x] N, 7, [k, r] succ r, zero) = 7 : N"))->rule, "N-CompZ");
  EXPECT_EQ(derive(J("|- sigrec([z] N, [a, b] b, (1, 2)) = 2 : N"))->rule, "Σ-Comp");
  EXPECT_EQ(derive(J("|- idrec([x, y, p] N, [z] z, 3, 3, refl 3) = 3 : N"))->rule, "Id-Comp");
  EXPECT_EQ(derive(J("|- 5 = (\\x:N. succ x) 4 : N"))->rule, "Tm-EqSym");
  EXPECT_EQ(derive(J("x : 1 |- x = top : 1"))->rule, "1-Uniq");
  EXPECT_EQ(derive(J("f : Pi (x:N) N |- \\y:N. f y = f : Pi (x:N) N"))->rule, "Π-Uniq");
  EXPECT_EQ(derive(J("p : Sigma (x:N) N |- (sigrec([z] N, [a, b] a, p), sigrec([z] N, [a, b] b, p)) = p : Sigma (x:N) N"))
                ->rule,
            "Σ-Uniq");
  // add 2 3 by unfolding.
  DerivPtr d = derive(J("|- natrec([x] N, 2, [k, r] succ r, 3) = 5 : N"));
  EXPECT_EQ(d->rule, "Tm-EqTrans");
  EXPECT_THROW(derive(J("|- natrec([x] N, 2, [k, r] succ r, 3) = 6 : N")), IllTyped);
}

TEST(Derive, XiRule) {
  DerivPtr d = derive(J("|- \\x:N. succ ((\\y:N. y) x) = \\x:N. succ x : Pi (x:N) N"));
  EXPECT_EQ(d->rule, "ξ");
}

TEST(Derive, AlphaInvariance) {
  DerivPtr a = derive(J("|- \\x:N. \\y:N. natrec([k] N, x, [k, r] succ r, y) : Pi (x:N) Pi (y:N) N"));
  DerivPtr b = derive(J("|- \\m:N. \\n:N. natrec([j] N, m, [i, s] succ s, n) : Pi (u:N) Pi (v:N) N"));
  ASSERT_EQ(a->rules(), b->rules());
  std::vector<const Derivation*> sa{a.get()}, sb{b.get()};
  while (!sa.empty()) {
    const Derivation* x = sa.back();
    const Derivation* y = sb.back();
    sa.pop_back();
    sb.pop_back();
    EXPECT_TRUE(alpha_eq(x->concl, y->concl)) << print(x->concl) << " vs " << print(y->concl);
    for (std::size_t i = 0; i < x->premises.size(); ++i) {
      sa.push_back(x->premises[i].get());
      sb.push_back(y->premises[i].get());
    }
  }
}

TEST(Derive, ShadowingBindersAreRenamed) {
  DerivPtr d = derive(J("x : N |- \\x:N. x : Pi (y:N) N"));
  EXPECT_EQ(d->rule, "Π-Intro");
  // The inner variable is a fresh copy, not the context's x.
  EXPECT_EQ(d->premises[0]->concl.ctx.size(), 2u);
  EXPECT_NE(d->premises[0]->concl.ctx[1].first, "x");
}
