#include "ctg/interp.hpp"

namespace ctg {

namespace {

[[noreturn]] void bad_rule(const Derivation& d, const std::string& what) {
  throw CwfTypeError("interp: " + what + " cannot interpret [" + d.rule + "] " + print(d.concl));
}

std::size_t var_index(const SCtx& g, const std::string& x) {
  for (std::size_t i = g.size(); i-- > 0;)
    if (g[i].first == x) return i;
  throw CwfTypeError("interp: unbound variable " + x);
}

}  // namespace

Interpreter::Interpreter(InterpConfig cfg) : cfg_(cfg), deriver_(std::make_unique<Deriver>(oracle())) {}

EqOracle Interpreter::oracle() {
  EqOracle o;
  o.types = [this](const SCtx& g, const Expr& a, const Expr& b) {
    bool eq = ty_equal(type_of(g, a), type_of(g, b));
    return OracleVerdict{eq, eq ? "equal fibers on canonical points" : "distinct fibers"};
  };
  o.terms = [this](const SCtx& g, const Expr& a, const Expr& b, const Expr& t) {
    EqVerdict v = tm_equal(term_of(g, a, t), term_of(g, b, t), cfg_.depth, cfg_.budget);
    return OracleVerdict{v.equal, v.text()};
  };
  return o;
}

DerivPtr Interpreter::derive(const Judgement& j) { return deriver_->derive(j); }

const Interpreter::SemCtx& Interpreter::sem_ctx(const SCtx& g) {
  std::string key = print_ctx(g);
  if (auto it = ctxs_.find(key); it != ctxs_.end()) return it->second;
  SemCtx s;
  if (g.empty()) {
    s.ctx = cwf_terminal();
  } else {
    SCtx pre(g.begin(), g.end() - 1);
    s = sem_ctx(pre);
    Ty a = type_of(pre, g.back().second);
    s.entries.push_back(a);
    s.ctx = comprehension(a);
  }
  return ctxs_.emplace(key, std::move(s)).first->second;
}

Ctx Interpreter::interp_ctx(const DerivPtr& d) {
  if (d->concl.kind != JK::Ctx) bad_rule(*d, "context:");
  return sem_ctx(d->concl.ctx).ctx;
}

Ty Interpreter::type_of(const SCtx& g, const Expr& a) { return interp_ty(deriver_->type(g, a)); }

Tm Interpreter::term_of(const SCtx& g, const Expr& t, const Expr& a) { return interp_tm(deriver_->check(g, t, a)); }

Ty Interpreter::interp_ty(const DerivPtr& d) {
  const Judgement& j = d->concl;
  if (j.kind != JK::Type) bad_rule(*d, "type:");
  std::string key = print(j);
  if (auto it = tys_.find(key); it != tys_.end()) return it->second;
  Ctx c = sem_ctx(j.ctx).ctx;
  Ty r;
  if (d->rule == "1-Form") r = unit_ty(c);
  else if (d->rule == "0-Form") r = empty_ty(c);
  else if (d->rule == "N-Form") r = nat_ty(c);
  else if (d->rule == "Π-Form") r = pi_ty(interp_ty(d->premises[0]), interp_ty(d->premises[1]));
  else if (d->rule == "Σ-Form") r = sigma_ty(interp_ty(d->premises[0]), interp_ty(d->premises[1]));
  else if (d->rule == "Id-Form")
    r = id_ty(interp_ty(d->premises[0]), interp_tm(d->premises[1]), interp_tm(d->premises[2]));
  else if (d->rule == "Ty-Conv") r = interp_ty(d->premises[1]);
  else bad_rule(*d, "type:");
  tys_.emplace(key, r);
  return r;
}

Tm Interpreter::interp_tm(const DerivPtr& d) {
  const Judgement& j = d->concl;
  if (j.kind != JK::Term) bad_rule(*d, "term:");
  std::string key = print(j);
  if (auto it = tms_.find(key); it != tms_.end()) return it->second;
  Ty ty = type_of(j.ctx, j.ty);
  Tm r = tm_rule(*d, ty);
  r.ty = ty;
  tms_.emplace(key, r);
  return r;
}

Tm Interpreter::tm_rule(const Derivation& d, const Ty& ty) {
  const Judgement& j = d.concl;
  const auto& p = d.premises;
  const SCtx& g = j.ctx;
  const Ctx c = sem_ctx(g).ctx;
  const std::string& rule = d.rule;
  // Substitution ⟨id, t⟩ : Γ → Γ.A
  auto at = [&](const Ty& a, const Tm& t) { return mor_extend(mor_id(c), a, t); };

  if (rule == "Var") {
    const SemCtx& s = sem_ctx(g);
    std::size_t i = var_index(g, j.a->xs[0]);
    Tm t = tm_v(s.entries[i]);
    for (std::size_t k = i + 1; k < s.entries.size(); ++k) t = tm_subst(t, mor_p(s.entries[k]));
    return t;
  }
  if (rule == "Tm-Conv") return interp_tm(p[0]);
  if (rule == "1-Intro") return top_tm(c);
  if (rule == "N-IntroZ") return zero_tm(c);
  if (rule == "N-IntroS") return succ_tm(interp_tm(p[0]));
  if (rule == "Π-Intro") return lambda(interp_tm(p[0]));
  if (rule == "Π-Elim") return app(interp_tm(p[0]), interp_tm(p[1]));
  if (rule == "Σ-Intro") return pair_tm(interp_tm(p[1]), interp_tm(p[2]), interp_ty(p[0]));
  if (rule == "N-Elim") {
    Tm r = nat_rec(interp_ty(p[0]), interp_tm(p[1]), interp_tm(p[2]));
    return tm_subst_as(r, at(nat_ty(c), interp_tm(p[3])), ty);
  }
  if (rule == "Σ-Elim") {
    Tm pr = interp_tm(p[2]);
    auto parts = sigma_parts(pr.ty);
    if (!parts) bad_rule(d, "Σ-Elim: scrutinee not of a Σ-type;");
    Tm e = sigma_elim(interp_tm(p[1]), parts->a, parts->b, interp_ty(p[0]));
    return tm_subst_as(e, at(pr.ty, pr), ty);
  }
  if (rule == "Id-Intro") return refl_tm(interp_tm(p[1]));
  if (rule == "Id-Elim") {
    // C over Γ, x:A, y:A, p:Id A x y; c over Γ, z:A; q : Id A a a'.
    const SCtx& gc = p[0]->concl.ctx;
    const SemCtx& sc = sem_ctx(gc);
    const Ty& a = sc.entries[g.size()];
    Tm e = id_elim(interp_tm(p[1]), a, interp_ty(p[0]));
    const Expr& idt = p[2]->concl.ty;
    Tm ta = term_of(g, idt->kids[1], idt->kids[0]);
    Tm tb = term_of(g, idt->kids[2], idt->kids[0]);
    Tm tq = interp_tm(p[2]);
    Mor m = at(a, ta);
    m = mor_extend(m, sc.entries[g.size() + 1], tb);
    m = mor_extend(m, sc.entries[g.size() + 2], tq);
    return tm_subst_as(e, m, ty);
  }
  if (rule == "0-Elim") {
    Tm e = empty_elim(interp_ty(p[0]));
    return tm_subst_as(e, at(empty_ty(c), interp_tm(p[1])), ty);
  }
  bad_rule(d, "term:");
}

EqVerdict Interpreter::judgmental_eq(const DerivPtr& d1, const DerivPtr& d2, std::optional<std::size_t> depth) {
  return tm_equal(interp_tm(d1), interp_tm(d2), depth.value_or(cfg_.depth), cfg_.budget);
}

std::optional<Nat> Interpreter::eval_closed_nat(const DerivPtr& d) {
  if (!d->concl.ctx.empty() || d->concl.ty->k != EK::NatT)
    throw CwfTypeError("eval_closed_nat: expected a closed term of N, got " + print(d->concl));
  return read_closed(interp_tm(d));
}

}  // namespace ctg
