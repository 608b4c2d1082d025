#include "ctg/combinators.hpp"
#include "ctg/effectivity.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ctg;

namespace {

// Reference semantics of the schema, written without fuel accounting:
// returns nullopt once `budget` recursive calls are used up.
std::optional<Nat> ref_eval(const PrfTerm& t, const std::vector<Nat>& a, int& budget) {
  if (--budget < 0) return std::nullopt;
  auto at = [&](std::size_t i) { return i < a.size() ? a[i] : Nat(0); };
  switch (t.kind) {
    case PrfTerm::Zero: return Nat(0);
    case PrfTerm::Succ: return at(0) + 1;
    case PrfTerm::Proj: return at(static_cast<std::size_t>(t.i));
    case PrfTerm::Lit: return t.i;
    case PrfTerm::Comp: {
      std::vector<Nat> xs;
      for (std::size_t i = 1; i < t.kids.size(); ++i) {
        auto v = ref_eval(t.kids[i], a, budget);
        if (!v) return std::nullopt;
        xs.push_back(*v);
      }
      if (t.kids[0].kind == PrfTerm::Prim) {
        const auto b = static_cast<Builtin>(static_cast<int>(t.kids[0].i));
        if (b == Builtin::Add) return xs.at(0) + xs.at(1);
        if (b == Builtin::Mul) return xs.at(0) * xs.at(1);
        return std::nullopt;
      }
      return ref_eval(t.kids[0], xs, budget);
    }
    case PrfTerm::PrimRec: {
      std::vector<Nat> rest(a.size() > 1 ? a.begin() + 1 : a.end(), a.end());
      auto acc = ref_eval(t.kids[0], rest, budget);
      for (Nat i = 0; acc && i < at(0); ++i) {
        std::vector<Nat> s{i, *acc};
        s.insert(s.end(), rest.begin(), rest.end());
        acc = ref_eval(t.kids[1], s, budget);
      }
      return acc;
    }
    case PrfTerm::Mu:
      for (Nat z = 0; budget > 0; ++z) {
        std::vector<Nat> s{z};
        s.insert(s.end(), a.begin(), a.end());
        auto v = ref_eval(t.kids[0], s, budget);
        if (!v) return std::nullopt;
        if (v->is_zero()) return z;
      }
      return std::nullopt;
    case PrfTerm::Prim: return std::nullopt;
  }
  return std::nullopt;
}

PrfTerm random_term(std::mt19937& rng, int depth) {
  const int r = static_cast<int>(rng() % (depth <= 0 ? 4 : 8));
  switch (r) {
    case 0: return prf_zero();
    case 1: return prf_succ();
    case 2: return prf_proj(rng() % 3, 3);
    case 3: return prf_lit(rng() % 5);
    case 4: return prf_comp(random_term(rng, depth - 1), {random_term(rng, depth - 1), random_term(rng, depth - 1)});
    case 5: return prf_primrec(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 6: return prf_mu(random_term(rng, depth - 1));
    default: return prf_prim(rng() % 2 ? Builtin::Add : Builtin::Mul, {random_term(rng, depth - 1), random_term(rng, depth - 1)});
  }
}

}  // namespace

TEST(Coding, EmptyIsZeroAndRoundTrip) {
  EXPECT_EQ(code_jseq(JSeq{}), Nat(0));
  JSeq s;
  s.push(q_move(), 0);
  s.push(answer_move(5), 1);
  EXPECT_EQ(decode_jseq(code_jseq(s)), s);
  EXPECT_TRUE(decode_jseq(Nat(12345)).empty() || code_jseq(decode_jseq(Nat(12345))) == Nat(12345));
}

TEST(Coding, InjectiveOnEnumeratedPositions) {
  auto ps = enumerate_positions(g_imp(g_nat(), g_nat()), 6, 4, 1000);
  ASSERT_GE(ps.size(), 1000u);
  std::set<Nat> codes;
  for (const JSeq& s : ps) {
    Nat c = code_jseq(s);
    EXPECT_EQ(decode_jseq(c), s);
    codes.insert(c);
  }
  EXPECT_EQ(codes.size(), ps.size());
}

TEST(Prf, SmallPrograms) {
  EXPECT_EQ(prf_eval(prf_encode(prf_succ()), {4}, 10).value, Nat(5));
  for (int n : {0, 3, 99}) EXPECT_EQ(prf_eval(prf_encode(prf_zero()), {n}, 10).value, Nat(0));
  auto mu = prf_eval(prf_encode(prf_mu(prf_lit(1))), {0}, 500);
  EXPECT_FALSE(mu.value);
  EXPECT_TRUE(mu.fuel_exhausted);
  // addition by primitive recursion: add(0,y)=y, add(n+1,y)=succ(add(n,y))
  PrfTerm add = prf_primrec(prf_proj(0, 1), prf_comp(prf_succ(), {prf_proj(1, 3)}));
  EXPECT_EQ(prf_eval(add, {3, 4}, 100).value, Nat(7));
}

TEST(Prf, EncodeDecodeRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    PrfTerm t = random_term(rng, 4);
    EXPECT_EQ(prf_decode(prf_encode(t)), t);
    auto p = prf_parse(prf_text(t));
    ASSERT_TRUE(p) << prf_text(t);
    EXPECT_EQ(*p, t);
  }
  EXPECT_EQ(prf_decode(Nat(0)), prf_zero());
}

TEST(Prf, AgreesWithReferenceSemantics) {
  std::mt19937 rng(5);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    PrfTerm t = random_term(rng, 4);
    std::vector<Nat> args{rng() % 4, rng() % 4, rng() % 4};
    int budget = 2000;
    auto want = ref_eval(t, args, budget);
    if (!want) continue;
    ++compared;
    EXPECT_EQ(prf_eval(t, args, 100000).value, want) << prf_text(t);
  }
  EXPECT_GT(compared, 100);
}

TEST(Prf, FuelMonotone) {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Nat e = prf_encode(random_term(rng, 4));
    if (i % 4 == 0) e = Nat(rng());
    std::optional<Nat> first;
    for (std::uint64_t f : {10u, 50u, 200u, 1000u}) {
      auto r = prf_eval(e, {2, 1}, f).value;
      if (first) {
        EXPECT_EQ(r, first);
      } else {
        first = r;
      }
    }
  }
}

TEST(Prf, TraceReplays) {
  PrfTerm add = prf_primrec(prf_proj(0, 1), prf_comp(prf_succ(), {prf_proj(1, 3)}));
  Trace tr;
  auto r = prf_eval(add, {2, 5}, 100, &tr);
  ASSERT_EQ(r.value, Nat(7));
  EXPECT_EQ(tr.size(), r.steps);
  EXPECT_EQ(tr.back().result, Nat(7));
  EXPECT_EQ(trace_decode(trace_code(tr)), tr);
}

TEST(FunRep, Clauses) {
  JSeq q;
  q.push(q_move(), 0);
  EXPECT_FALSE(fun_rep(bot(g_nat()), code_jseq(q)));
  EXPECT_EQ(fun_rep(num(5), code_jseq(q)), code_jseq(q.plus(answer_move(5), 1)));
  auto sk = succ_sk();
  for (const JSeq& s : odd_positions(sk, 6, 16, 100)) {
    auto r = sk->next(s);
    auto y = fun_rep(sk, code_jseq(s));
    ASSERT_EQ(r.has_value(), y.has_value());
    if (r) EXPECT_EQ(decode_jseq(*y), s.plus(r->m, r->j));
  }
}

TEST(Realizes, CanonicalCodes) {
  for (auto sk : {succ_sk(), num(3), compose_sk(succ_sk(), double_sk()), pazo_sk(), copycat_sk(g_nat()),
                  promote_sk(succ_bang_sk({ArithFn::Succ}))}) {
    auto v = realizes(canon(sk).code, sk, 50);
    EXPECT_TRUE(v.pass) << desc_text(sk->desc()) << " " << v.text();
  }
  auto tv = realizes(canon(top()).code, top(), 10);
  EXPECT_TRUE(tv.pass);
  EXPECT_EQ(tv.probes, 0u);
}

TEST(Realizes, ZeroProgramFailsOnNumeral) {
  auto v = realizes(prf_encode(prf_zero()), num(5), 1);
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->size(), 1u);
}

TEST(Canon, DeterministicAndOpaqueRejected) {
  EXPECT_EQ(canon(compose_sk(succ_sk(), double_sk())).code, canon(compose_sk(succ_sk(), double_sk())).code);
  EXPECT_NE(canon(num(1)).code, canon(num(2)).code);
  auto opaque = make_skeleton(g_nat(), nullptr, WinningCert::none(), [](const JSeq&) { return std::optional<Occ>{}; });
  EXPECT_THROW(canon(opaque), NoDescription);
}

TEST(Canon, CodeDrivesTheSameExtension) {
  auto sk = compose_sk(succ_sk(), double_sk());
  auto back = skeleton_of_code(canon(sk).code, sk->game());
  EXPECT_EQ(back, sk);
  // A non-canonical but equivalent code goes through the realized skeleton.
  PrfTerm wrapped = prf_comp(prf_proj(0, 1), {canon_term(desc_code(sk->desc()))});
  auto realized = skeleton_of_code(prf_encode(wrapped), sk->game());
  EXPECT_NE(realized, sk);
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(extension_plain(realized, n), Nat(2 * (n + 1)));
}

TEST(TPred, JunkCodes) {
  EXPECT_FALSE(t_pred(canon(succ_sk()).code, 4, 0));
  EXPECT_EQ(u_extract(0), Nat(0));
  EXPECT_EQ(u_extract(pair(1, pair(2, pair(0, 3)))), Nat(0));
}
