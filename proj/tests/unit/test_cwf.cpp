#include "ctg/cwf.hpp"

#include <gtest/gtest.h>

using namespace ctg;

namespace {

Ctx c0() { return cwf_terminal(); }
Ty n0() { return nat_ty(c0()); }
Ctx c1() { return comprehension(n0()); }  // 1.N
Ty n1() { return nat_ty(c1()); }
Ctx c2() { return comprehension(n1()); }  // 1.N.N

TSkeleton pt1(int m) { return ppair(top(), num(m)); }
TSkeleton pt2(int m, int n) { return ppair(pt1(m), num(n)); }

std::optional<Nat> at(const Tm& t, const TSkeleton& g) { return read(tm_at(t, g)); }

// 1.N → 1.N, m ↦ m + 1
Mor succ_mor() { return mor_extend(mor_p(n0()), n0(), succ_tm(tm_v(n0()))); }
// 1.N → 1.N, m ↦ 2
Mor two_mor() { return mor_extend(mor_p(n0()), n0(), numeral_tm(c1(), 2)); }

// m + n over 1.N.N (m, n), recursion on n.
Tm add_tm() {
  Ty pp{c2(), fam_const(np_nat())};
  Tm z = tm_v(n0());
  Tm s = succ_tm(tm_v(pp));
  return nat_rec(pp, z, s);
}

// m · n over 1.N.N.
Tm mul_tm() {
  Ty pp{c2(), fam_const(np_nat())};
  Ctx c3 = comprehension(pp);
  // (m, n', acc) ↦ (m, acc)
  Mor sel = mor_extend(mor_compose(mor_p(n1()), mor_p(pp)), n1(), tm_v(pp));
  Tm s = tm_subst_as(add_tm(), sel, Ty{c3, fam_const(np_nat())});
  return nat_rec(pp, numeral_tm(c1(), 0), s);
}

void expect_eq(const EqVerdict& v) { EXPECT_TRUE(v.equal) << v.text(); }

}  // namespace

TEST(Cwf, CategoryEquations) {
  Mor f = succ_mor(), g = two_mor(), h = succ_mor();
  Mor id = mor_id(c1());
  expect_eq(mor_equal(mor_compose(id, f), f));
  expect_eq(mor_equal(mor_compose(f, id), f));
  expect_eq(mor_equal(mor_compose(mor_compose(h, g), f), mor_compose(h, mor_compose(g, f))));
}

TEST(Cwf, SubstitutionEquations) {
  Mor f = succ_mor(), g = two_mor();
  Tm a = succ_tm(tm_v(n0()));
  EXPECT_TRUE(ty_equal(ty_subst(n1(), mor_id(c1())), n1()));
  EXPECT_TRUE(ty_equal(ty_subst(n1(), mor_compose(g, f)), ty_subst(ty_subst(n1(), g), f)));
  expect_eq(tm_equal(tm_subst(a, mor_id(c1())), a));
  expect_eq(tm_equal(tm_subst(a, mor_compose(g, f)), tm_subst(tm_subst(a, g), f)));
  for (int m = 0; m < 5; ++m) {
    EXPECT_EQ(at(tm_subst(a, f), pt1(m)), Nat(m + 2));
    EXPECT_EQ(at(tm_subst(a, mor_compose(g, f)), pt1(m)), Nat(3));
  }
}

TEST(Cwf, ComprehensionEquations) {
  Mor f = succ_mor();
  Tm g = numeral_tm(c1(), 4);
  Mor ext = mor_extend(f, n1(), g);
  expect_eq(mor_equal(mor_compose(mor_p(n1()), ext), f));
  expect_eq(tm_equal(tm_subst(tm_v(n1()), ext), g));
  expect_eq(mor_equal(mor_extend(mor_p(n1()), n1(), tm_v(n1())), mor_id(c2())));
  Mor k = two_mor();
  expect_eq(mor_equal(mor_compose(ext, k), mor_extend(mor_compose(f, k), n1(), tm_subst(g, k))));
}

TEST(Cwf, PiComputation) {
  Tm b = succ_tm(tm_v(n0()));  // over 1.N
  Tm lam = lambda(b);
  ASSERT_TRUE(pi_parts(lam.ty).has_value());
  for (int n = 0; n <= 6; ++n) {
    Tm a = numeral_tm(c0(), n);
    Tm lhs = app(lam, a);
    Tm rhs = tm_subst(b, mor_extend(mor_id(c0()), n0(), a));
    EXPECT_EQ(read_closed(lhs), Nat(n + 1));
    expect_eq(tm_equal(lhs, rhs));
  }
}

TEST(Cwf, LambdaUniqueness) {
  Tm k = lambda(succ_tm(tm_v(n0())));
  Mor p = mor_p(n0());
  Tm kp = tm_subst(k, p);
  ASSERT_TRUE(pi_parts(kp.ty).has_value());
  Tm eta = lambda(app(kp, tm_v(n0())));
  expect_eq(tm_equal(eta, k));
}

TEST(Cwf, ApplicationOfHigherOrderArgument) {
  // λf. f(3) applied to λx. 2x
  Ty nn = pi_ty(n0(), n1());
  Ctx cf = comprehension(nn);
  Tm f = tm_v(nn);
  ASSERT_TRUE(pi_parts(f.ty).has_value());
  Tm body = app(f, numeral_tm(cf, 3));
  Tm dbl = lambda(Tm{n1(), compose_do(promote_do(tm_v(n0()).d), arith_do({ArithFn::Double}), fam_const(np_nat()))});
  EXPECT_EQ(read_closed(app(lambda(body), dbl)), Nat(6));
}

TEST(Cwf, SigmaComputation) {
  Ty a = n0(), b = n1();
  Ty s = sigma_ty(a, b);
  Ctx cs = comprehension(s);
  // P = N over 1.Σ(N, N); p = succ of the first component over 1.N.N
  Ty motive{cs, fam_const(np_nat())};
  Tm p = succ_tm(tm_subst(tm_v(a), mor_p(b)));
  Tm e = sigma_elim(p, a, b, motive);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      Tm pr = pair_tm(numeral_tm(c0(), x), numeral_tm(c0(), y), b);
      Tm lhs = tm_subst(e, mor_extend(mor_id(c0()), s, pr));
      EXPECT_EQ(read_closed(lhs), Nat(x + 1));
    }
  // R(p){Pair} = p
  expect_eq(tm_equal(tm_subst_as(e, pair_mor(a, b), p.ty), p));
}

TEST(Cwf, SigmaUniqueness) {
  Ty a = n0(), b = n1();
  Ty s = sigma_ty(a, b);
  Ty motive{comprehension(s), fam_const(np_nat())};
  Tm u = tm_subst_as(tm_v(n0()), mor_p(n1()), Ty{c2(), fam_const(np_nat())});
  Tm viaPair = tm_subst_as(sigma_elim(u, a, b, motive), pair_mor(a, b), u.ty);
  expect_eq(tm_equal(viaPair, u));
}

TEST(Cwf, NatComputation) {
  Tm r = add_tm();
  Mor at0 = mor_extend(mor_id(c1()), n1(), zero_tm(c1()));
  Tm z = tm_v(n0());
  expect_eq(tm_equal(tm_subst(r, at0), z));
  for (int n = 0; n < 4; ++n) {
    Tm nn = numeral_tm(c1(), n);
    Tm lhs = tm_subst(r, mor_extend(mor_id(c1()), n1(), succ_tm(nn)));
    Tm prev = tm_subst(r, mor_extend(mor_id(c1()), n1(), nn));
    Ty pp{c2(), fam_const(np_nat())};
    Tm rhs = tm_subst(succ_tm(tm_v(pp)), mor_extend(mor_extend(mor_id(c1()), n1(), nn), pp, prev));
    expect_eq(tm_equal(lhs, rhs, 6));
  }
}

TEST(Cwf, AddAndMulByRecursion) {
  Tm add = add_tm(), mul = mul_tm();
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= 12; ++n) {
      EXPECT_EQ(at(add, pt2(m, n)), Nat(m + n)) << m << "+" << n;
      EXPECT_EQ(at(mul, pt2(m, n)), Nat(m * n)) << m << "*" << n;
    }
}

TEST(Cwf, IdComputation) {
  Ty a = n0();
  Ctx ce = id_elim_ctx(a);
  Ty motive{ce, fam_const(np_nat())};
  Tm c = succ_tm(tm_v(a));
  Tm j = id_elim(c, a, motive);
  expect_eq(tm_equal(tm_subst_as(j, refl_mor(a), c.ty), c));
  for (int n = 0; n < 4; ++n) EXPECT_EQ(at(tm_subst_as(j, refl_mor(a), c.ty), pt1(n)), Nat(n + 1));
}

TEST(Cwf, IdentityTypeFibers) {
  Tm x = numeral_tm(c0(), 2);
  EXPECT_EQ(id_ty(n0(), x, numeral_tm(c0(), 2)).fam->at(top())->kind, NK::One);
  EXPECT_EQ(id_ty(n0(), x, numeral_tm(c0(), 3)).fam->at(top())->kind, NK::Zero);
  EXPECT_EQ(id_ty(n0(), x, succ_tm(numeral_tm(c0(), 1))).fam->at(top())->kind, NK::One);
  Tm r = refl_tm(x);
  EXPECT_TRUE(np_member(np_one(), tm_at(r, top())));
}

TEST(Cwf, UnitUniqueness) {
  Tm t = tm_subst(top_tm(c0()), mor_p(n0()));
  expect_eq(tm_equal(t, top_tm(c1())));
  EXPECT_TRUE(top_tm(c1()).d->o_extensions(JSeq{}, 16).empty());
}

TEST(Cwf, EmptyEliminatorIsSilent) {
  Ty z = empty_ty(c0());
  Tm e = empty_elim(Ty{comprehension(z), fam_const(np_nat())});
  EXPECT_TRUE(e.d->trivial());
  EXPECT_TRUE(canonical_points(comprehension(z), 8).empty());
}

TEST(Cwf, RealizerOfNumeralOutput) {
  Tm t = app(lambda(succ_tm(tm_v(n0()))), numeral_tm(c0(), 3));
  const Nat e = canon_code(hat(top()));
  EXPECT_EQ(t.d->realize_cod(e), canon_code(num(4)));
  EXPECT_EQ(extension_plain(t.d->component(e), 0), Nat(4));
}

TEST(Cwf, EqualityIsNotVacuous) {
  auto v = tm_equal(succ_tm(tm_v(n0())), tm_v(n0()));
  EXPECT_FALSE(v.equal);
  EXPECT_GT(v.positions, 0u);
  EXPECT_FALSE(mor_equal(succ_mor(), two_mor()).equal);
  Tm lam = lambda(succ_tm(tm_v(n0())));
  EXPECT_FALSE(tm_equal(lam, lambda(tm_v(n0()))).equal);
  Tm r = add_tm();
  EXPECT_FALSE(tm_equal(tm_subst(r, mor_extend(mor_id(c1()), n1(), numeral_tm(c1(), 2))), tm_v(n0())).equal);
  EXPECT_FALSE(ty_equal(n1(), Ty{c1(), fam_const(np_one())}));
}

TEST(Cwf, DescriptionsRebuild) {
  Tm t = app(lambda(succ_tm(tm_v(n0()))), numeral_tm(c0(), 3));
  EXPECT_EQ(build_do(t.d->desc()), t.d);
  Tm r = add_tm();
  EXPECT_EQ(build_do(r.d->desc()), r.d);
}
