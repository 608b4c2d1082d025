#include "ctg/derive.hpp"

#include <algorithm>
#include <sstream>

namespace ctg {

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p->size();
  return n;
}

namespace {

void text_rec(const Derivation& d, std::size_t indent, std::ostream& os) {
  os << std::string(indent, ' ') << "[" << d.rule << "] " << print(d.concl);
  if (!d.note.empty()) os << "  {" << d.note << "}";
  os << "\n";
  for (const auto& p : d.premises) text_rec(*p, indent + 2, os);
}

void rules_rec(const Derivation& d, std::vector<std::string>& out) {
  out.push_back(d.rule);
  for (const auto& p : d.premises) rules_rec(*p, out);
}

DerivPtr node(std::string rule, Judgement j, std::vector<DerivPtr> prem = {}, std::string note = {}) {
  auto d = std::make_shared<Derivation>();
  d->rule = std::move(rule);
  d->concl = std::move(j);
  d->premises = std::move(prem);
  d->note = std::move(note);
  return d;
}

Judgement j_ctx(const SCtx& g) { return Judgement{JK::Ctx, g, {}, nullptr, nullptr, nullptr}; }
Judgement j_type(const SCtx& g, const Expr& a) { return Judgement{JK::Type, g, {}, a, nullptr, nullptr}; }
Judgement j_term(const SCtx& g, const Expr& t, const Expr& a) { return Judgement{JK::Term, g, {}, t, nullptr, a}; }
Judgement j_tyeq(const SCtx& g, const Expr& a, const Expr& b) { return Judgement{JK::TypeEq, g, {}, a, b, nullptr}; }
Judgement j_tmeq(const SCtx& g, const Expr& a, const Expr& b, const Expr& t) {
  return Judgement{JK::TermEq, g, {}, a, b, t};
}
Judgement j_ctxeq(const SCtx& g, const SCtx& h) { return Judgement{JK::CtxEq, g, h, nullptr, nullptr, nullptr}; }

std::vector<std::string> dom(const SCtx& g) {
  std::vector<std::string> out;
  for (const auto& [x, _] : g) out.push_back(x);
  return out;
}

SCtx ext(SCtx g, const std::string& x, const Expr& a) {
  g.emplace_back(x, a);
  return g;
}

const Expr* lookup(const SCtx& g, const std::string& x) {
  for (auto it = g.rbegin(); it != g.rend(); ++it)
    if (it->first == x) return &it->second;
  return nullptr;
}

// Renames the binders xs of e so they are fresh for the context, keeping the rest.
Expr freshen(const SCtx& g, const Expr& e) {
  std::vector<std::string> avoid = dom(g);
  auto fv = free_vars(e);
  avoid.insert(avoid.end(), fv.begin(), fv.end());
  std::vector<std::string> xs = e->xs;
  std::vector<Expr> kids = e->kids;
  bool changed = false;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const auto& bs = binders_of(e->k, i);
    std::vector<std::string> used;
    std::vector<std::pair<std::string, Expr>> ren;
    for (auto b : bs) {
      bool clash = lookup(g, xs[b]) != nullptr || std::find(used.begin(), used.end(), xs[b]) != used.end();
      if (clash) {
        std::string nx = fresh_name(xs[b], avoid);
        avoid.push_back(nx);
        ren.emplace_back(xs[b], e_var(nx));
        xs[b] = nx;
        changed = true;
      }
      used.push_back(xs[b]);
    }
    if (!ren.empty()) kids[i] = subst_many(kids[i], ren);
  }
  return changed ? e_with(e, std::move(xs), std::move(kids)) : e;
}

bool is_zero(const Expr& e) { return e->k == EK::Zero || (e->k == EK::Num && e->n == 0); }
std::optional<Expr> pred_of(const Expr& e) {
  if (e->k == EK::Succ) return e->kids[0];
  if (e->k == EK::Num && e->n > 0) return e_num(e->n - 1);
  return std::nullopt;
}

constexpr std::size_t kEqFuel = 256;

}  // namespace

std::string Derivation::text() const {
  std::ostringstream os;
  text_rec(*this, 0, os);
  return os.str();
}

std::vector<std::string> Derivation::rules() const {
  std::vector<std::string> out;
  rules_rec(*this, out);
  return out;
}

EqOracle syntactic_oracle() {
  EqOracle o;
  o.types = [](const SCtx&, const Expr& a, const Expr& b) {
    bool eq = alpha_eq(a, b);
    return OracleVerdict{eq, eq ? "alpha-equivalent" : "not alpha-equivalent"};
  };
  o.terms = [](const SCtx&, const Expr& a, const Expr& b, const Expr&) {
    bool eq = alpha_eq(a, b);
    return OracleVerdict{eq, eq ? "alpha-equivalent" : "not alpha-equivalent"};
  };
  return o;
}

std::optional<Contraction> contract_root(const Expr& t) {
  const auto& k = t->kids;
  switch (t->k) {
    case EK::App:
      if (k[0]->k == EK::Lam) return Contraction{"Π-Comp", subst(k[0]->kids[1], k[1], k[0]->xs[0])};
      return std::nullopt;
    case EK::SigRec:
      if (k[2]->k == EK::Pair)
        return Contraction{"Σ-Comp", subst_many(k[1], {{t->xs[1], k[2]->kids[0]}, {t->xs[2], k[2]->kids[1]}})};
      return std::nullopt;
    case EK::NatRec: {
      if (is_zero(k[3])) return Contraction{"N-CompZ", k[1]};
      auto m = pred_of(k[3]);
      if (!m) return std::nullopt;
      Expr prev = e_natrec(t->xs[0], k[0], k[1], t->xs[1], t->xs[2], k[2], *m);
      return Contraction{"N-CompS", subst_many(k[2], {{t->xs[1], *m}, {t->xs[2], prev}})};
    }
    case EK::IdRec:
      if (k[4]->k == EK::Refl && alpha_eq(k[2], k[3]) && alpha_eq(k[2], k[4]->kids[0]))
        return Contraction{"Id-Comp", subst(k[1], k[2], t->xs[3])};
      return std::nullopt;
    default: return std::nullopt;
  }
}

Deriver::Deriver(EqOracle oracle) : oracle_(std::move(oracle)) {}

DerivPtr Deriver::ctx(const SCtx& g) {
  std::string key = print_ctx(g);
  if (auto it = ctx_cache_.find(key); it != ctx_cache_.end()) return it->second;
  DerivPtr d;
  if (g.empty()) {
    d = node("Ctx-Emp", j_ctx(g));
  } else {
    SCtx pre(g.begin(), g.end() - 1);
    if (lookup(pre, g.back().first)) throw IllTyped("Ctx-Ext", j_ctx(g), "variable '" + g.back().first + "' repeated");
    d = node("Ctx-Ext", j_ctx(g), {type(pre, g.back().second)});
  }
  ctx_cache_[key] = d;
  return d;
}

DerivPtr Deriver::type(const SCtx& g, const Expr& a) {
  std::string key = print_ctx(g) + " |- " + print(a);
  if (auto it = type_cache_.find(key); it != type_cache_.end()) return it->second;
  DerivPtr d;
  Judgement j = j_type(g, a);
  switch (a->k) {
    case EK::Unit: d = node("1-Form", j, {ctx(g)}); break;
    case EK::Empty: d = node("0-Form", j, {ctx(g)}); break;
    case EK::NatT: d = node("N-Form", j, {ctx(g)}); break;
    case EK::Pi:
    case EK::Sigma: {
      Expr f = freshen(g, a);
      j.a = f;
      DerivPtr da = type(g, f->kids[0]);
      DerivPtr db = type(ext(g, f->xs[0], f->kids[0]), f->kids[1]);
      d = node(a->k == EK::Pi ? "Π-Form" : "Σ-Form", j, {da, db});
      break;
    }
    case EK::Id: {
      DerivPtr da = type(g, a->kids[0]);
      d = node("Id-Form", j, {da, check(g, a->kids[1], a->kids[0]), check(g, a->kids[2], a->kids[0])});
      break;
    }
    default: throw IllTyped("type", j, "'" + print(a) + "' is a term, not a type");
  }
  type_cache_[key] = d;
  return d;
}

DerivPtr Deriver::infer(const SCtx& g, const Expr& t0) {
  Expr t = freshen(g, t0);
  const auto& k = t->kids;
  auto bad = [&](const std::string& rule, const std::string& why) -> IllTyped {
    return IllTyped(rule, j_term(g, t, nullptr), why);
  };
  switch (t->k) {
    case EK::Var: {
      const Expr* a = lookup(g, t->xs[0]);
      if (!a) throw bad("Var", "unbound variable '" + t->xs[0] + "'");
      return node("Var", j_term(g, t, *a), {ctx(g)});
    }
    case EK::Top: return node("1-Intro", j_term(g, t, e_unit()), {ctx(g)});
    case EK::Zero: return node("N-IntroZ", j_term(g, t, e_nat()), {ctx(g)});
    case EK::Num: {
      DerivPtr d = node("N-IntroZ", j_term(g, e_num(0), e_nat()), {ctx(g)});
      for (Nat i = 1; i <= t->n; ++i) d = node("N-IntroS", j_term(g, e_num(i), e_nat()), {d});
      return d;
    }
    case EK::Succ: return node("N-IntroS", j_term(g, t, e_nat()), {check(g, k[0], e_nat())});
    case EK::Lam: {
      DerivPtr db = infer(ext(g, t->xs[0], k[0]), k[1]);
      return node("Π-Intro", j_term(g, t, e_pi(t->xs[0], k[0], db->concl.ty)), {db});
    }
    case EK::App: {
      DerivPtr df = infer(g, k[0]);
      const Expr& pt = df->concl.ty;
      if (pt->k != EK::Pi)
        throw IllTyped("Π-Elim", df->concl, "expected a function, the type is '" + print(pt) + "'");
      DerivPtr da = check(g, k[1], pt->kids[0]);
      return node("Π-Elim", j_term(g, t, subst(pt->kids[1], k[1], pt->xs[0])), {df, da});
    }
    case EK::Pair: {
      DerivPtr da = infer(g, k[0]);
      DerivPtr db = infer(g, k[1]);
      std::vector<std::string> avoid = dom(g);
      auto fb = free_vars(db->concl.ty);
      avoid.insert(avoid.end(), fb.begin(), fb.end());
      std::string x = fresh_name("x", avoid);
      Expr s = e_sigma(x, da->concl.ty, db->concl.ty);
      return node("Σ-Intro", j_term(g, t, s), {type(ext(g, x, da->concl.ty), db->concl.ty), da, db});
    }
    case EK::NatRec: {
      SCtx gx = ext(g, t->xs[0], e_nat());
      DerivPtr dc = type(gx, k[0]);
      DerivPtr dz = check(g, k[1], subst(k[0], e_zero(), t->xs[0]));
      SCtx gs = ext(ext(g, t->xs[1], e_nat()), t->xs[2], subst(k[0], e_var(t->xs[1]), t->xs[0]));
      DerivPtr ds = check(gs, k[2], subst(k[0], e_succ(e_var(t->xs[1])), t->xs[0]));
      DerivPtr dn = check(g, k[3], e_nat());
      return node("N-Elim", j_term(g, t, subst(k[0], k[3], t->xs[0])), {dc, dz, ds, dn});
    }
    case EK::SigRec: {
      DerivPtr dp = infer(g, k[2]);
      Expr st = freshen(g, dp->concl.ty);
      if (st->k != EK::Sigma)
        throw IllTyped("Σ-Elim", dp->concl, "expected a pair, the type is '" + print(st) + "'");
      DerivPtr dc = type(ext(g, t->xs[0], st), k[0]);
      const std::string &x = t->xs[1], &y = t->xs[2];
      SCtx gxy = ext(ext(g, x, st->kids[0]), y, subst(st->kids[1], e_var(x), st->xs[0]));
      DerivPtr dg = check(gxy, k[1], subst(k[0], e_pair(e_var(x), e_var(y)), t->xs[0]));
      return node("Σ-Elim", j_term(g, t, subst(k[0], k[2], t->xs[0])), {dc, dg, dp});
    }
    case EK::Refl: {
      DerivPtr da = infer(g, k[0]);
      const Expr& a = da->concl.ty;
      return node("Id-Intro", j_term(g, t, e_id(a, k[0], k[0])), {type(g, a), da});
    }
    case EK::IdRec: {
      DerivPtr da = infer(g, k[2]);
      const Expr& a = da->concl.ty;
      const std::string &x = t->xs[0], &y = t->xs[1], &p = t->xs[2], &z = t->xs[3];
      SCtx gc = ext(ext(ext(g, x, a), y, a), p, e_id(a, e_var(x), e_var(y)));
      DerivPtr dc = type(gc, k[0]);
      DerivPtr db = check(ext(g, z, a), k[1], subst_many(k[0], {{x, e_var(z)}, {y, e_var(z)}, {p, e_refl(e_var(z))}}));
      DerivPtr dq = check(g, k[4], e_id(a, k[2], k[3]));
      return node("Id-Elim", j_term(g, t, subst_many(k[0], {{x, k[2]}, {y, k[3]}, {p, k[4]}})), {dc, db, dq});
    }
    case EK::EmptyRec: {
      DerivPtr dc = type(ext(g, t->xs[0], e_empty()), k[0]);
      DerivPtr da = check(g, k[1], e_empty());
      return node("0-Elim", j_term(g, t, subst(k[0], k[1], t->xs[0])), {dc, da});
    }
    default: throw bad("Var", "'" + print(t) + "' is a type, not a term");
  }
}

DerivPtr Deriver::check(const SCtx& g, const Expr& t0, const Expr& a) {
  Expr t = freshen(g, t0);
  if (t->k == EK::Pair && a->k == EK::Sigma) {
    Expr s = freshen(g, a);
    DerivPtr db = type(ext(g, s->xs[0], s->kids[0]), s->kids[1]);
    DerivPtr dx = check(g, t->kids[0], s->kids[0]);
    DerivPtr dy = check(g, t->kids[1], subst(s->kids[1], t->kids[0], s->xs[0]));
    return node("Σ-Intro", j_term(g, t, a), {db, dx, dy});
  }
  if (t->k == EK::Lam && a->k == EK::Pi) {
    if (!alpha_eq(t->kids[0], a->kids[0])) return conv(g, infer(g, t), a);
    const std::string& x = t->xs[0];
    DerivPtr db = check(ext(g, x, t->kids[0]), t->kids[1], subst(a->kids[1], e_var(x), a->xs[0]));
    return node("Π-Intro", j_term(g, t, a), {db});
  }
  return conv(g, infer(g, t), a);
}

DerivPtr Deriver::conv(const SCtx& g, DerivPtr d, const Expr& target) {
  if (alpha_eq(d->concl.ty, target)) return d;
  DerivPtr eq;
  try {
    eq = type_eq(g, d->concl.ty, target);
  } catch (const IllTyped& e) {
    throw IllTyped("Tm-Conv", j_term(g, d->concl.a, target), "its type is '" + print(d->concl.ty) + "'");
  }
  return node("Tm-Conv", j_term(g, d->concl.a, target), {d, node("Ctx-EqRefl", j_ctxeq(g, g), {ctx(g)}), eq});
}

DerivPtr Deriver::type_eq(const SCtx& g, const Expr& a, const Expr& b) {
  Judgement j = j_tyeq(g, a, b);
  DerivPtr da = type(g, a);
  if (alpha_eq(a, b)) return node("Ty-EqRefl", j, {da});
  DerivPtr db = type(g, b);
  if (a->k == b->k && (a->k == EK::Pi || a->k == EK::Sigma || a->k == EK::Id)) {
    try {
      if (a->k == EK::Id) {
        return node("Cong-Id", j,
                    {type_eq(g, a->kids[0], b->kids[0]), term_eq(g, a->kids[1], b->kids[1], a->kids[0]),
                     term_eq(g, a->kids[2], b->kids[2], a->kids[0])});
      }
      Expr fa = freshen(g, a);
      Expr bb = subst(b->kids[1], e_var(fa->xs[0]), b->xs[0]);
      return node(a->k == EK::Pi ? "Cong-Π" : "Cong-Σ", j,
                  {type_eq(g, fa->kids[0], b->kids[0]), type_eq(ext(g, fa->xs[0], fa->kids[0]), fa->kids[1], bb)});
    } catch (const IllTyped&) {
    }
  }
  OracleVerdict v = oracle_.types(g, a, b);
  if (!v.equal) throw IllTyped("Ty-EqRefl", j, "types differ: " + v.label);
  return node("Ty-Eq[≡d]", j, {da, db}, v.label);
}

std::optional<DerivPtr> Deriver::syntactic_eq(const SCtx& g, const Expr& a, const Expr& b, const Expr& ty,
                                              const DerivPtr& da, std::size_t fuel) {
  if (fuel == 0) return std::nullopt;
  Judgement j = j_tmeq(g, a, b, ty);
  if (alpha_eq(a, b)) return node("Tm-EqRefl", j, {da});
  auto ca = contract_root(a);
  if (ca && alpha_eq(ca->result, b)) return node(ca->rule, j, {da});
  auto cb = contract_root(b);
  if (cb && alpha_eq(cb->result, a)) return node("Tm-EqSym", j, {node(cb->rule, j_tmeq(g, b, a, ty), {da})});
  // Uniqueness rules.
  if (ty->k == EK::Unit && b->k == EK::Top) return node("1-Uniq", j, {da});
  if (ty->k == EK::Unit && a->k == EK::Top) return node("Tm-EqSym", j, {node("1-Uniq", j_tmeq(g, b, a, ty), {da})});
  auto eta = [&](const Expr& l, const Expr& r) {
    if (l->k == EK::Lam && l->kids[1]->k == EK::App) {
      const Expr& body = l->kids[1];
      return body->kids[1]->k == EK::Var && body->kids[1]->xs[0] == l->xs[0] && !occurs_free(l->xs[0], body->kids[0]) &&
             alpha_eq(body->kids[0], r);
    }
    if (l->k == EK::Pair && l->kids[0]->k == EK::SigRec && l->kids[1]->k == EK::SigRec) {
      const Expr &p1 = l->kids[0], &p2 = l->kids[1];
      auto proj = [](const Expr& s, std::size_t i) {
        return s->kids[1]->k == EK::Var && s->kids[1]->xs[0] == s->xs[i] && s->xs[1] != s->xs[2];
      };
      return proj(p1, 1) && proj(p2, 2) && alpha_eq(p1->kids[2], r) && alpha_eq(p2->kids[2], r);
    }
    return false;
  };
  if (eta(a, b)) return node(a->k == EK::Lam ? "Π-Uniq" : "Σ-Uniq", j, {da});
  if (eta(b, a))
    return node("Tm-EqSym", j, {node(b->k == EK::Lam ? "Π-Uniq" : "Σ-Uniq", j_tmeq(g, b, a, ty), {da})});
  if (auto c = congruence(g, a, b, ty, fuel - 1)) return c;
  // One head step on either side, then continue.
  auto step = [&](const Expr& from, const Contraction& c, bool left) -> std::optional<DerivPtr> {
    try {
      DerivPtr dc = check(g, c.result, ty);
      auto rest = left ? syntactic_eq(g, c.result, b, ty, dc, fuel - 1) : syntactic_eq(g, a, c.result, ty, da, fuel - 1);
      if (!rest) return std::nullopt;
      DerivPtr st = node(c.rule, j_tmeq(g, from, c.result, ty), {left ? da : check(g, from, ty)});
      if (left) return node("Tm-EqTrans", j, {st, *rest});
      return node("Tm-EqTrans", j, {*rest, node("Tm-EqSym", j_tmeq(g, c.result, from, ty), {st})});
    } catch (const IllTyped&) {
      return std::nullopt;
    }
  };
  if (ca)
    if (auto d = step(a, *ca, true)) return d;
  if (cb)
    if (auto d = step(b, *cb, false)) return d;
  return std::nullopt;
}

std::optional<DerivPtr> Deriver::congruence(const SCtx& g, const Expr& a, const Expr& b, const Expr& ty,
                                            std::size_t fuel) {
  if (fuel == 0) return std::nullopt;
  Judgement j = j_tmeq(g, a, b, ty);
  auto pa = pred_of(a), pb = pred_of(b);
  if (pa && pb) {
    try {
      if (auto d = syntactic_eq(g, *pa, *pb, e_nat(), check(g, *pa, e_nat()), fuel)) return node("Cong-succ", j, {*d});
    } catch (const IllTyped&) {
    }
    return std::nullopt;
  }
  if (a->k != b->k) return std::nullopt;
  auto sub = [&](const SCtx& h, const Expr& x, const Expr& y, const Expr& t) -> std::optional<DerivPtr> {
    try {
      return syntactic_eq(h, x, y, t, check(h, x, t), fuel);
    } catch (const IllTyped&) {
      return std::nullopt;
    }
  };
  try {
    switch (a->k) {
      case EK::Refl:
        if (ty->k != EK::Id) return std::nullopt;
        if (auto d = sub(g, a->kids[0], b->kids[0], ty->kids[0])) return node("Cong-refl", j, {*d});
        return std::nullopt;
      case EK::Lam: {
        if (ty->k != EK::Pi || !alpha_eq(a->kids[0], b->kids[0])) return std::nullopt;
        Expr fa = freshen(g, a);
        const std::string& x = fa->xs[0];
        Expr bb = subst(b->kids[1], e_var(x), b->xs[0]);
        auto d = sub(ext(g, x, fa->kids[0]), fa->kids[1], bb, subst(ty->kids[1], e_var(x), ty->xs[0]));
        if (d) return node("ξ", j, {*d});
        return std::nullopt;
      }
      case EK::App: {
        DerivPtr df = infer(g, a->kids[0]);
        const Expr& pt = df->concl.ty;
        if (pt->k != EK::Pi) return std::nullopt;
        auto d1 = sub(g, a->kids[0], b->kids[0], pt);
        if (!d1) return std::nullopt;
        auto d2 = sub(g, a->kids[1], b->kids[1], pt->kids[0]);
        if (!d2) return std::nullopt;
        return node("Cong-App", j, {*d1, *d2});
      }
      case EK::Pair: {
        if (ty->k != EK::Sigma) return std::nullopt;
        auto d1 = sub(g, a->kids[0], b->kids[0], ty->kids[0]);
        if (!d1) return std::nullopt;
        auto d2 = sub(g, a->kids[1], b->kids[1], subst(ty->kids[1], a->kids[0], ty->xs[0]));
        if (!d2) return std::nullopt;
        return node("Cong-Pair", j, {*d1, *d2});
      }
      default: return std::nullopt;
    }
  } catch (const IllTyped&) {
    return std::nullopt;
  }
}

DerivPtr Deriver::term_eq(const SCtx& g, const Expr& a, const Expr& b, const Expr& ty) {
  DerivPtr da = check(g, a, ty);
  DerivPtr db = check(g, b, ty);
  if (auto d = syntactic_eq(g, a, b, ty, da, kEqFuel)) return *d;
  Judgement j = j_tmeq(g, a, b, ty);
  OracleVerdict v = oracle_.terms(g, a, b, ty);
  if (!v.equal) throw IllTyped("Tm-EqRefl", j, "terms differ: " + v.label);
  return node("Tm-Eq[≡d]", j, {da, db}, v.label);
}

DerivPtr Deriver::ctx_eq(const SCtx& g, const SCtx& h) {
  Judgement j = j_ctxeq(g, h);
  if (g.size() != h.size()) throw IllTyped("Ctx-ExtEq", j, "contexts have different lengths");
  if (g.empty()) return node("Ctx-EqRefl", j, {ctx(g)});
  SCtx g0(g.begin(), g.end() - 1), h0(h.begin(), h.end() - 1);
  DerivPtr d0 = ctx_eq(g0, h0);
  ctx(h);
  return node("Ctx-ExtEq", j, {d0, type_eq(g0, g.back().second, h.back().second)});
}

DerivPtr Deriver::derive(const Judgement& j) {
  switch (j.kind) {
    case JK::Ctx: return ctx(j.ctx);
    case JK::CtxEq: return ctx_eq(j.ctx, j.ctx2);
    case JK::Type: return type(j.ctx, j.a);
    case JK::TypeEq: return type_eq(j.ctx, j.a, j.b);
    case JK::Term: type(j.ctx, j.ty); return check(j.ctx, j.a, j.ty);
    case JK::TermEq: type(j.ctx, j.ty); return term_eq(j.ctx, j.a, j.b, j.ty);
  }
  throw IllTyped("derive", j, "unknown judgement form");
}

DerivPtr derive(const Judgement& j, const EqOracle& oracle) { return Deriver(oracle).derive(j); }

}  // namespace ctg
