#include "ctg/suite.hpp"

#include "ctg/church.hpp"
#include "ctg/combinators.hpp"
#include "ctg/corpus.hpp"
#include "ctg/effectivity.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ctg {

namespace {

// Counts checks and keeps the first failure.
struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  void expect(const EqVerdict& v, const std::string& what) { expect(v.equal, what + ": " + v.text()); }
  std::string detail() const {
    std::ostringstream os;
    os << checks << " checks";
    if (failures) os << ", " << failures << " failed; first: " << first;
    return os.str();
  }
};

std::string str(const std::optional<Nat>& v) { return v ? v->str() : std::string("none"); }

// ---- 1 ----
Tally crit_compose(const InterpConfig&) {
  Tally t;
  auto sd = compose_sk(succ_sk(), double_sk());
  auto ds = compose_sk(double_sk(), succ_sk());
  for (int n = 0; n <= 50; ++n) {
    auto a = extension_plain(sd, n), b = extension_plain(ds, n);
    t.expect(a == Nat(2 * (n + 1)), "compose(succ,double)(" + std::to_string(n) + ") = " + str(a));
    t.expect(b == Nat(2 * n + 1), "compose(double,succ)(" + std::to_string(n) + ") = " + str(b));
  }
  return t;
}

// ---- 2 ----
Tally crit_pazo(const InterpConfig&) {
  Tally t;
  struct Probe {
    ArithFn fn;
    std::function<long(long)> f;
    std::string name;
  };
  const std::vector<Probe> probes = {{{ArithFn::AddK, 5}, [](long x) { return x + 5; }, "x+5"},
                                     {{ArithFn::Id}, [](long x) { return x; }, "identity"}};
  for (const auto& p : probes) {
    auto f = sk_bang_one(succ_bang_sk(p.fn));
    auto got = read(unlift(compose_sk(promote_sk(f), pazo_sk())));
    const long want = p.f(0) + p.f(1);
    t.expect(got == Nat(want), "pazo on " + p.name + " = " + str(got) + ", want " + std::to_string(want));
  }
  return t;
}

Do arith(ArithFn::Kind k, long c = 0) { return arith_do({k, c}); }

// ---- 3 ----
Tally crit_category(const InterpConfig& cfg) {
  Tally t;
  auto id = wrw_dereliction(np_nat());
  auto f = arith(ArithFn::Succ), g = arith(ArithFn::Double), h = arith(ArithFn::AddK, 3);
  for (const auto& [name, m] : std::vector<std::pair<std::string, Do>>{{"succ", f}, {"double", g}, {"add3", h}}) {
    t.expect(play_equal(bullet(id, m), m, cfg.depth), "der • " + name + " = " + name);
    t.expect(play_equal(bullet(m, id), m, cfg.depth), name + " • der = " + name);
  }
  const std::vector<Do> ms = {f, g, h};
  for (const auto& a : ms)
    for (const auto& b : ms)
      for (const auto& c : ms)
        t.expect(play_equal(bullet(c, bullet(b, a)), bullet(bullet(c, b), a), cfg.depth),
                 "associativity on " + desc_text(c->desc()) + ", " + desc_text(b->desc()) + ", " + desc_text(a->desc()));
  return t;
}

// ---- 4 ----
Tally crit_promotion(const InterpConfig& cfg) {
  Tally t;
  auto n = np_nat();
  t.expect(play_equal(promote_do(wrw_dereliction(n)), wrw_copycat(np_sbang(n)), cfg.depth), "der† = id");
  const std::vector<Do> ms = {arith(ArithFn::Succ), arith(ArithFn::Double), arith(ArithFn::AddK, 3)};
  for (const auto& phi : ms)
    t.expect(play_equal(compose_do(promote_do(phi), wrw_dereliction(n)), phi, cfg.depth),
             "der ∘ φ† = φ for " + desc_text(phi->desc()));
  for (const auto& phi : ms)
    for (const auto& psi : ms)
      t.expect(play_equal(promote_do(bullet(psi, phi)), compose_do(promote_do(phi), promote_do(psi)), cfg.depth),
               "(ψ • φ)† = ψ† ∘ φ† for " + desc_text(psi->desc()) + ", " + desc_text(phi->desc()));
  return t;
}

// ---- 5 ----
Ctx c0() { return cwf_terminal(); }
Ty n0() { return nat_ty(c0()); }
Ctx c1() { return comprehension(n0()); }
Ty n1() { return nat_ty(c1()); }
Ctx c2() { return comprehension(n1()); }

Tally crit_cwf(const InterpConfig& cfg) {
  Tally t;
  const std::size_t d = cfg.depth, b = cfg.budget;
  // Probe morphisms 1.N → 1.N: identity, m ↦ m + 1, m ↦ 2.
  const std::vector<std::pair<std::string, Mor>> mors = {
      {"id", mor_id(c1())},
      {"succ", mor_extend(mor_p(n0()), n0(), succ_tm(tm_v(n0())))},
      {"two", mor_extend(mor_p(n0()), n0(), numeral_tm(c1(), 2))}};
  struct Probe {
    std::string name;
    Ty a;
    std::vector<Tm> terms;
  };
  const std::vector<Probe> tys = {
      {"N", n1(), {tm_v(n0()), succ_tm(tm_v(n0())), numeral_tm(c1(), 4)}},
      {"1", unit_ty(c1()), {top_tm(c1())}},
      {"N=>N", pi_ty(n1(), nat_ty(c2())), {lambda(succ_tm(tm_v(n1()))), lambda(tm_subst(tm_v(n0()), mor_p(n1())))}}};
  for (const auto& p : tys) {
    t.expect(ty_equal(ty_subst(p.a, mor_id(c1())), p.a), "Ty-Id on " + p.name);
    for (const auto& [gn, g] : mors)
      for (const auto& [fn, f] : mors) {
        const std::string at = " on " + p.name + " with " + gn + ", " + fn;
        t.expect(ty_equal(ty_subst(p.a, mor_compose(g, f)), ty_subst(ty_subst(p.a, g), f)), "Ty-Comp" + at);
        for (const auto& a : p.terms)
          t.expect(tm_equal(tm_subst(a, mor_compose(g, f)), tm_subst(tm_subst(a, g), f), d, b), "Tm-Comp" + at);
      }
    for (const auto& a : p.terms) t.expect(tm_equal(tm_subst(a, mor_id(c1())), a, d, b), "Tm-Id on " + p.name);
    Ctx ca = comprehension(p.a);
    t.expect(mor_equal(mor_extend(mor_p(p.a), p.a, tm_v(p.a)), mor_id(ca), d, b), "Cons-Id on " + p.name);
    for (const auto& [fn, f] : mors) {
      // ⟨f, a⟩ needs a : A{f}; the probe families are constant, so a{f} works.
      for (const auto& a0 : p.terms) {
        Tm a = tm_subst_as(a0, f, ty_subst(p.a, f));
        Mor ext = mor_extend(f, p.a, a);
        const std::string at = " on " + p.name + " with " + fn;
        t.expect(mor_equal(mor_compose(mor_p(p.a), ext), f, d, b), "Cons-L" + at);
        t.expect(tm_equal(tm_subst_as(tm_v(p.a), ext, a.ty), a, d, b), "Cons-R" + at);
        for (const auto& [kn, k] : mors)
          t.expect(mor_equal(mor_compose(ext, k), mor_extend(mor_compose(f, k), p.a, tm_subst_as(a, k, ty_subst(p.a, mor_compose(f, k)))), d, b),
                   "Cons-Nat" + at + ", " + kn);
      }
    }
  }
  return t;
}

// ---- 6 ----
struct FormerProbe {
  std::string rule;
  std::string judgement;
};

const std::vector<FormerProbe>& former_probes() {
  static const std::vector<FormerProbe> ps = {
      {"Π-Comp", "|- (\\x:N. succ x) 4 = 5 : N"},
      {"Π-Comp", "y : N |- (\\x:N. succ (succ x)) y = succ (succ y) : N"},
      {"Π-Comp", "|- (\\f:Pi (x:N) N. f 2) (\\x:N. succ x) = 3 : N"},
      {"Π-Uniq", "f : Pi (x:N) N |- \\y:N. f y = f : Pi (x:N) N"},
      {"Π-Uniq", "f : Pi (x:N) 1 |- \\y:N. f y = f : Pi (x:N) 1"},
      {"Π-Uniq", "g : Pi (x:N) Pi (y:N) N |- \\x:N. g x = g : Pi (x:N) Pi (y:N) N"},
      {"Σ-Comp", "|- sigrec([z] N, [a, b] b, (1, 2)) = 2 : N"},
      {"Σ-Comp", "|- sigrec([z] N, [a, b] a, (4, 0)) = 4 : N"},
      {"Σ-Comp", "x : N |- sigrec([z] N, [a, b] succ a, (x, 0)) = succ x : N"},
      {"Σ-Uniq", "p : Sigma (x:N) N |- (sigrec([z] N, [a, b] a, p), sigrec([z] N, [a, b] b, p)) = p : Sigma (x:N) N"},
      {"Σ-Uniq", "p : Sigma (x:1) N |- (sigrec([z] 1, [a, b] a, p), sigrec([z] N, [a, b] b, p)) = p : Sigma (x:1) N"},
      {"Σ-Uniq",
       "p : Sigma (x:N) Pi (y:N) N |- (sigrec([z] N, [a, b] a, p), sigrec([z] Pi (y:N) N, [a, b] b, p)) = p : Sigma (x:N) Pi (y:N) N"},
      {"N-CompZ", "|- natrec([x] N, 7, [k, r] succ r, zero) = 7 : N"},
      {"N-CompZ", "x : N |- natrec([k] N, x, [i, r] succ r, 0) = x : N"},
      {"N-CompZ", "|- natrec([k] 1, top, [i, r] r, zero) = top : 1"},
      {"N-CompS", "|- natrec([x] N, 2, [k, r] succ r, 3) = 5 : N"},
      {"N-CompS", "|- natrec([k] N, 0, [i, r] i, 1) = 0 : N"},
      {"N-CompS",
       "x : N |- natrec([k] N, zero, [i, r] succ (succ r), succ x) = succ (succ natrec([k] N, zero, [i, r] succ (succ r), x)) : N"},
      {"Id-Comp", "|- idrec([x, y, p] N, [z] z, 3, 3, refl 3) = 3 : N"},
      {"Id-Comp", "a : N |- idrec([x, y, p] N, [z] succ z, a, a, refl a) = succ a : N"},
      {"Id-Comp", "|- idrec([x, y, p] Id N y x, [z] refl z, 2, 2, refl 2) = refl 2 : Id N 2 2"},
      {"1-Uniq", "x : 1 |- x = top : 1"},
      {"1-Uniq", "f : Pi (x:N) 1, y : N |- f y = top : 1"},
      {"1-Uniq", "p : Sigma (x:N) 1 |- sigrec([z] 1, [a, b] b, p) = top : 1"},
  };
  return ps;
}

// m + n and m · n over 1.N.N by recursion on n.
Tm add_rec() {
  Ty pp{c2(), fam_const(np_nat())};
  return nat_rec(pp, tm_v(n0()), succ_tm(tm_v(pp)));
}
Tm mul_rec() {
  Ty pp{c2(), fam_const(np_nat())};
  Ctx c3 = comprehension(pp);
  Mor sel = mor_extend(mor_compose(mor_p(n1()), mor_p(pp)), n1(), tm_v(pp));
  Tm s = tm_subst_as(add_rec(), sel, Ty{c3, fam_const(np_nat())});
  return nat_rec(pp, numeral_tm(c1(), 0), s);
}

Tally crit_formers(const InterpConfig& cfg) {
  Tally t;
  Interpreter in(cfg);
  std::map<std::string, int> per_rule;
  for (const auto& p : former_probes()) {
    try {
      Judgement j = parse_judgement(p.judgement);
      DerivPtr d = in.derive(j);
      auto rs = d->rules();
      const bool used = std::find(rs.begin(), rs.end(), p.rule) != rs.end();
      t.expect(used, p.rule + " not used for " + p.judgement);
      // The model side: both sides denote ≡_d strategies.
      t.expect(tm_equal(in.term_of(j.ctx, j.a, j.ty), in.term_of(j.ctx, j.b, j.ty), cfg.depth, cfg.budget),
               "model " + p.judgement);
      if (used) ++per_rule[p.rule];
    } catch (const CtgError& e) {
      t.expect(false, p.judgement + ": " + e.what());
    }
  }
  for (const char* r : {"Π-Comp", "Π-Uniq", "Σ-Comp", "Σ-Uniq", "N-CompZ", "N-CompS", "Id-Comp", "1-Uniq"})
    t.expect(per_rule[r] >= 3, std::string(r) + " has fewer than 3 instances");
  Tm add = add_rec(), mul = mul_rec();
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= 12; ++n) {
      TSkeleton pt = ppair(ppair(top(), num(m)), num(n));
      auto s = read(tm_at(add, pt)), p = read(tm_at(mul, pt));
      t.expect(s == Nat(m + n), std::to_string(m) + "+" + std::to_string(n) + " = " + str(s));
      t.expect(p == Nat(m * n), std::to_string(m) + "*" + std::to_string(n) + " = " + str(p));
    }
  return t;
}

// ---- 7 ----
Tally crit_numerals(const InterpConfig& cfg) {
  Tally t;
  Interpreter in(cfg);
  const SCtx open = parse_ctx("x : N, u : 1, f : Pi (y:N) N");
  std::string chain = "zero";
  for (int n = 0; n <= 20; ++n) {
    const std::string lit = std::to_string(n);
    for (const std::string& src : {lit, chain}) {
      auto v = in.eval_closed_nat(in.derive(parse_judgement("|- " + src + " : N")));
      t.expect(v == Nat(n), "closed " + src + " reads " + str(v));
      Tm o = in.term_of(open, parse_term(src), e_nat());
      auto pts = canonical_points(o.ty.ctx, 3);
      t.expect(!pts.empty(), "no canonical points in the open context");
      for (const auto& pt : pts) {
        auto w = read(tm_at(o, pt));
        t.expect(w == Nat(n), "open " + src + " reads " + str(w));
      }
    }
    chain = "succ (" + chain + ")";
  }
  return t;
}

// ---- 8 ----
PrfTerm random_prf(std::mt19937& rng, int depth) {
  const int r = static_cast<int>(rng() % (depth <= 0 ? 4 : 8));
  switch (r) {
    case 0: return prf_zero();
    case 1: return prf_succ();
    case 2: return prf_proj(rng() % 3, 3);
    case 3: return prf_lit(rng() % 5);
    case 4: return prf_comp(random_prf(rng, depth - 1), {random_prf(rng, depth - 1), random_prf(rng, depth - 1)});
    case 5: return prf_primrec(random_prf(rng, depth - 1), random_prf(rng, depth - 1));
    case 6: return prf_mu(random_prf(rng, depth - 1));
    default:
      return prf_prim(rng() % 2 ? Builtin::Add : Builtin::Mul, {random_prf(rng, depth - 1), random_prf(rng, depth - 1)});
  }
}

std::vector<TSkeleton> combinator_corpus() {
  return {num(3),
          top(),
          succ_sk(),
          double_sk(),
          compose_sk(succ_sk(), double_sk()),
          compose_sk(double_sk(), succ_sk()),
          pazo_sk(),
          copycat_sk(g_nat()),
          dereliction_sk(g_nat(), 0),
          succ_bang_sk({ArithFn::Succ}),
          promote_sk(succ_bang_sk({ArithFn::Succ})),
          compose_sk(promote_sk(succ_bang_sk({ArithFn::Double})), dereliction_sk(g_nat(), 0)),
          pair_sk(succ_sk(), double_sk())};
}

Tally crit_effectivity(const InterpConfig& cfg) {
  Tally t;
  auto ps = enumerate_positions(g_imp(g_nat(), g_nat()), 6, 4, 1000);
  t.expect(ps.size() >= 1000, "only " + std::to_string(ps.size()) + " positions enumerated");
  std::set<Nat> codes;
  for (std::size_t i = 0; i < ps.size() && i < 1000; ++i) {
    Nat c = code_jseq(ps[i]);
    t.expect(decode_jseq(c) == ps[i], "round trip of position " + std::to_string(i));
    codes.insert(c);
  }
  t.expect(codes.size() == std::min<std::size_t>(ps.size(), 1000), "coding not injective");
  for (const auto& sk : combinator_corpus()) {
    auto v = realizes(canon(sk).code, sk, 50, cfg.depth);
    t.expect(v.pass, "realizes " + desc_text(sk->desc()) + ": " + v.text());
  }
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Nat e = prf_encode(random_prf(rng, 4));
    if (i % 4 == 0) e = Nat(rng());
    std::optional<Nat> first;
    bool mono = true;
    for (std::uint64_t f : {10u, 50u, 200u, 1000u, static_cast<unsigned>(cfg.fuel)}) {
      auto r = prf_eval(e, {2, 1}, f).value;
      if (first && r != first) mono = false;
      if (!first) first = r;
    }
    t.expect(mono, "fuel monotonicity on code " + e.str());
  }
  return t;
}

// ---- 9 ----
Tally crit_ct(const InterpConfig& cfg) {
  Tally t;
  CtReport rep = validate_ct(ct_samples(), 10, cfg.depth);
  for (const auto& s : rep.samples) {
    t.expect(s.echo_ok, s.name + ": first projection does not echo e‡");
    t.expect(s.probes.size() == 11, s.name + ": " + std::to_string(s.probes.size()) + " probes");
    for (const auto& p : s.probes)
      t.expect(p.t_ok && p.fibers_one && p.played_ok && p.u == p.expected,
               s.name + " at n=" + p.n.str() + ": U(c)=" + p.u.str() + ", want " + p.expected.str());
  }
  t.expect(rep.samples.size() == 4, "expected 4 samples");
  t.expect(rep.total, "⊎ct not total: " + rep.total_label);
  t.expect(rep.realizes_ok, "canon(⊎ct) does not realize: " + rep.realizes_label);
  return t;
}

// ---- 10 ----
std::vector<Expr> closed_corpus_terms() {
  std::vector<Expr> ts;
  for (const char* f : {"prelude.mltt", "negatives.mltt"}) {
    std::vector<Def> ds = parse_file(read_text_file(corpus_dir() + "/" + f));
    if (std::string(f) == "prelude.mltt") ds = inline_defs(ds);
    for (const auto& d : ds) ts.push_back(d.term);
  }
  for (const auto& cj : load_judgements(corpus_dir() + "/judgements.txt")) {
    const Judgement& j = cj.j;
    if (!j.ctx.empty()) continue;
    if (j.kind == JK::Term || j.kind == JK::TermEq) ts.push_back(j.a);
    if (j.kind == JK::TermEq) ts.push_back(j.b);
  }
  return ts;
}

Tally crit_consistency(const InterpConfig& cfg) {
  Tally t;
  auto w = check_winning(bot(g_zero()), cfg.depth);
  t.expect(!w.total, "the skeleton on 0 is reported total: " + w.label());
  t.expect(canonical_points(np_zero(), cfg.budget).empty(), "0 has a canonical point");
  t.expect(canonical_points(comprehension(empty_ty(c0())), cfg.budget).empty(), "1.0 has a canonical point");
  Interpreter in(cfg);
  for (const auto& e : closed_corpus_terms()) {
    bool derived = false;
    try {
      DerivPtr d = in.derive(Judgement{JK::Term, {}, {}, e, nullptr, e_empty()});
      in.interp_tm(d);
      derived = true;
    } catch (const CtgError&) {
    }
    t.expect(!derived, "closed term of 0 derived: " + print(e));
  }
  return t;
}

// ---- 11 ----
Tally crit_xi(const InterpConfig& cfg) {
  Tally t;
  Interpreter in(cfg);
  std::size_t pairs = 0;
  for (const auto& cj : load_judgements(corpus_dir() + "/judgements.txt")) {
    const Judgement& j = cj.j;
    if (!cj.positive || j.kind != JK::TermEq || j.ctx.empty()) continue;
    ++pairs;
    try {
      Tm b1 = in.term_of(j.ctx, j.a, j.ty), b2 = in.term_of(j.ctx, j.b, j.ty);
      auto body = tm_equal(b1, b2, cfg.depth, cfg.budget);
      t.expect(body, "body " + cj.text);
      if (body.equal) t.expect(tm_equal(lambda(b1), lambda(b2), cfg.depth, cfg.budget), "lambda " + cj.text);
    } catch (const CtgError& e) {
      t.expect(false, cj.text + ": " + e.what());
    }
  }
  t.expect(pairs >= 3, "fewer than 3 open equality pairs in the corpus");
  return t;
}

struct Criterion {
  std::string id, title;
  Tally (*run)(const InterpConfig&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> cs = {
      {"compose", "composition of succ and double", crit_compose},
      {"pazo", "pazo sums f(0) + f(1)", crit_pazo},
      {"category", "identity and associativity of w.r.w. composition", crit_category},
      {"promotion", "promotion lemma", crit_promotion},
      {"cwf", "eight CwF equations", crit_cwf},
      {"formers", "computation and uniqueness rules, add and mul", crit_formers},
      {"numerals", "numerals read back", crit_numerals},
      {"effectivity", "coding, canonical realizers, fuel monotonicity", crit_effectivity},
      {"ct", "Church's thesis validation", crit_ct},
      {"consistency", "no winning term of the empty type", crit_consistency},
      {"xi", "xi rule in the model", crit_xi},
  };
  return cs;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& criterion_ids() {
  static const auto ids = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (const auto& c : criteria()) v.emplace_back(c.id, c.title);
    return v;
  }();
  return ids;
}

std::vector<std::string> parse_filter(const std::string& filter) {
  std::vector<std::string> out;
  std::stringstream ss(filter);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    const auto& cs = criteria();
    if (std::none_of(cs.begin(), cs.end(), [&](const Criterion& c) { return c.id == id; }))
      throw std::invalid_argument("unknown criterion id: " + id);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  return out;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts) {
  std::vector<CriterionResult> rs;
  for (const auto& c : criteria()) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Tally t = c.run(opts.cfg);
      r.pass = t.failures == 0 && t.checks > 0;
      r.detail = t.detail();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rs.push_back(std::move(r));
  }
  return rs;
}

std::string suite_summary(const std::vector<CriterionResult>& rs) {
  std::ostringstream os;
  std::size_t pass = 0;
  double total = 0;
  os << std::fixed << std::setprecision(0);
  for (const auto& r : rs) {
    os << r.id << " " << (r.pass ? "pass" : "fail") << " " << r.millis << "\n";
    pass += r.pass;
    total += r.millis;
  }
  os << "summary pass " << pass << " fail " << rs.size() - pass << " millis " << total << "\n";
  return os.str();
}

}  // namespace ctg
