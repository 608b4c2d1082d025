#include "ctg/corpus.hpp"
#include "ctg/interp.hpp"

#include "reference_eval.hpp"

#include <gtest/gtest.h>


using namespace ctg;

namespace {

Interpreter& interp() {
  static Interpreter i;
  return i;
}

DerivPtr D(const std::string& s) { return interp().derive(parse_judgement(s)); }

std::vector<Def> prelude() { return inline_defs(parse_file(read_text_file(corpus_dir() + "/prelude.mltt"))); }

DerivPtr def_deriv(const Def& d) {
  Judgement j{JK::Term, {}, {}, d.term, nullptr, d.ty};
  if (!d.ty) j.ty = Deriver().infer({}, d.term)->concl.ty;
  return interp().derive(j);
}

}  // namespace

TEST(Interp, NumeralsReadBack) {
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(interp().eval_closed_nat(D("|- " + std::to_string(n) + " : N")), Nat(n));
  EXPECT_EQ(interp().eval_closed_nat(D("|- zero : N")), Nat(0));
}

TEST(Interp, VariableIsTheProjection) {
  Tm x = interp().interp_tm(D("x : N |- x : N"));
  Ty n = nat_ty(cwf_terminal());
  EXPECT_TRUE(tm_equal(x, tm_v(n)).equal);
  // Weakened past a later entry.
  Tm y = interp().interp_tm(D("x : N, u : 1 |- x : N"));
  for (int m = 0; m < 4; ++m) EXPECT_EQ(read(tm_at(y, ppair(ppair(top(), num(m)), top()))), Nat(m));
}

TEST(Interp, BetaReadsBack) {
  EXPECT_EQ(interp().eval_closed_nat(D("|- (\\x:N. succ x) 4 : N")), Nat(5));
}

TEST(Interp, ClosedCorpusAgreesWithReferenceEvaluator) {
  std::size_t checked = 0;
  for (const auto& d : prelude()) {
    DerivPtr dv = def_deriv(d);
    if (dv->concl.ty->k != EK::NatT) continue;
    auto ref = refeval::eval(d.term, {});
    EXPECT_EQ(interp().eval_closed_nat(dv), ref->n) << d.name;
    ++checked;
  }
  EXPECT_GE(checked, 15u);
}

TEST(Interp, Arithmetic) {
  auto defs = prelude();
  auto get = [&](const std::string& name) {
    for (const auto& d : defs)
      if (d.name == name) return interp().eval_closed_nat(def_deriv(d));
    return std::optional<Nat>();
  };
  EXPECT_EQ(get("add_2_3"), Nat(5));
  EXPECT_EQ(get("double_6"), Nat(12));
  EXPECT_EQ(get("mul_3_4"), Nat(12));
  EXPECT_EQ(get("sum01_plus5"), Nat(11));
  EXPECT_EQ(get("sum01_id"), Nat(1));
  EXPECT_EQ(get("fact_4"), Nat(24));
}

TEST(Interp, JudgementalEquality) {
  auto eq = [](const std::string& a, const std::string& b, const std::string& ctx, const std::string& ty) {
    return interp().judgmental_eq(D(ctx + "|- " + a + " : " + ty), D(ctx + "|- " + b + " : " + ty));
  };
  EXPECT_TRUE(eq("(\\x:N. succ x) 4", "succ 4", "", "N").equal);
  EXPECT_TRUE(eq("(\\x:N. natrec([k] N, x, [i, r] succ r, x)) y", "natrec([k] N, y, [i, r] succ r, y)", "y : N ", "N").equal);
  EXPECT_TRUE(eq("sigrec([z] N, [a, b] b, (y, 2))", "2", "y : N ", "N").equal);
  EXPECT_TRUE(eq("idrec([x, y, p] N, [z] succ z, w, w, refl w)", "succ w", "w : N ", "N").equal);
  EXPECT_TRUE(eq("u", "top", "u : 1 ", "1").equal);
  auto v = eq("\\x:N. x", "\\x:N. succ x", "", "Pi (x:N) N");
  EXPECT_FALSE(v.equal);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NE(v.text().find("distinct("), std::string::npos);
}

TEST(Interp, XiRule) {
  std::vector<std::pair<std::string, std::string>> bodies = {
      {"(\\y:N. succ y) x", "succ x"},
      {"natrec([k] N, x, [i, r] succ r, 2)", "succ (succ x)"},
      {"sigrec([z] N, [a, b] a, (x, 3))", "x"},
  };
  for (const auto& [b, b2] : bodies) {
    DerivPtr d1 = D("x : N |- " + b + " : N"), d2 = D("x : N |- " + b2 + " : N");
    ASSERT_TRUE(interp().judgmental_eq(d1, d2).equal) << b;
    Tm l1 = lambda(interp().interp_tm(d1)), l2 = lambda(interp().interp_tm(d2));
    EXPECT_TRUE(tm_equal(l1, l2).equal) << b;
  }
}

TEST(Interp, SubstitutionCoherence) {
  // ⟦a[t/x]⟧ ≡ ⟦a⟧{⟨id, ⟦t⟧⟩}
  std::vector<std::string> bodies = {"succ x", "natrec([k] N, x, [i, r] succ r, x)",
                                     "(\\y:N. natrec([k] N, y, [i, r] succ r, x)) 2", "sigrec([z] N, [a, b] b, (x, x))"};
  for (const std::string& b : bodies) {
    for (int n : {0, 3}) {
      Expr body = parse_term(b);
      Expr t = e_num(n);
      Tm lhs = interp().interp_tm(interp().derive(Judgement{JK::Term, {}, {}, subst(body, t, "x"), nullptr, e_nat()}));
      Tm a = interp().term_of({{"x", e_nat()}}, body, e_nat());
      Tm tt = interp().term_of({}, t, e_nat());
      Ty n0 = nat_ty(cwf_terminal());
      Tm rhs = tm_subst(a, mor_extend(mor_id(cwf_terminal()), n0, tt));
      EXPECT_TRUE(tm_equal(lhs, rhs).equal) << b << " at " << n;
    }
  }
}

TEST(Interp, IdentityEliminationTerms) {
  DerivPtr d = D("|- (\\a:N. \\b:N. \\q:Id N a b. idrec([x, y, p] Id N y x, [z] refl z, a, b, q)) 3 3 (refl 3) : Id N 3 3");
  Tm t = interp().interp_tm(d);
  EXPECT_EQ(t.ty.fam->at(top())->kind, NK::One);
  EXPECT_TRUE(np_member(np_one(), tm_at(t, top())));
}

TEST(Interp, EmptyContextHasNoClosedProofOfEmpty) {
  EXPECT_THROW(D("|- emptyrec([y] 0, zero) : 0"), IllTyped);
  Tm absurd = interp().interp_tm(D("|- \\e:0. emptyrec([y] N, e) : Pi (e:0) N"));
  EXPECT_TRUE(check_winning(absurd.d, 6).total);
}

TEST(Corpus, JudgementsDeriveOrFail) {
  auto js = load_judgements(corpus_dir() + "/judgements.txt");
  ASSERT_GE(js.size(), 30u);
  for (const auto& c : js) {
    if (c.positive) {
      EXPECT_NO_THROW(interp().derive(c.j)) << c.text;
    } else {
      EXPECT_THROW(interp().derive(c.j), IllTyped) << c.text;
    }
  }
}

TEST(Corpus, NegativeDefinitionsAreRejected) {
  auto defs = inline_defs(parse_file(read_text_file(corpus_dir() + "/negatives.mltt")));
  ASSERT_GE(defs.size(), 6u);
  for (const auto& d : defs) {
    Judgement j{JK::Term, {}, {}, d.term, nullptr, d.ty};
    EXPECT_THROW(interp().derive(j), IllTyped) << d.name;
  }
}

TEST(Corpus, PreludeDerives) {
  for (const auto& d : prelude()) EXPECT_NO_THROW(def_deriv(d)) << d.name;
}

TEST(Corpus, SubstitutionLemma) {
  // Γ, x:N ⊢ J and ⊢ a : N give ⊢ J[a/x].
  std::size_t used = 0;
  for (const auto& c : load_judgements(corpus_dir() + "/judgements.txt")) {
    if (!c.positive || c.j.ctx.size() != 1 || c.j.ctx[0].second->k != EK::NatT) continue;
    const std::string& x = c.j.ctx[0].first;
    for (const char* a : {"0", "3", "(\\y:N. succ y) 1"}) {
      Expr t = parse_term(a);
      ASSERT_NO_THROW(interp().derive(Judgement{JK::Term, {}, {}, t, nullptr, e_nat()}));
      Judgement s = c.j;
      s.ctx.clear();
      auto sub = [&](const Expr& e) { return e ? subst(e, t, x) : e; };
      s.a = sub(s.a);
      s.b = sub(s.b);
      s.ty = sub(s.ty);
      EXPECT_NO_THROW(interp().derive(s)) << print(s);
    }
    ++used;
  }
  EXPECT_GE(used, 2u);
}
