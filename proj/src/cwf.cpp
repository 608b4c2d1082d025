#include "ctg/cwf.hpp"

namespace ctg {

namespace {

Desc ty_desc(const Ty& t) { return mk_desc("ty", {}, {t.ctx->desc, t.fam->desc()}); }
Desc tm_desc(const Tm& t) { return mk_desc("tm", {}, {ty_desc(t.ty), t.d->desc()}); }
Ty ty_from_desc(Desc d) { return Ty{np_from_desc(d->kids.at(0)), dep_from_desc(d->kids.at(1))}; }
Tm tm_from_desc(Desc d) { return Tm{ty_from_desc(d->kids.at(0)), build_do(d->kids.at(1))}; }

Path P(std::initializer_list<TagKind> ks) {
  Path p;
  for (auto k : ks) p.push_back(PathStep{k});
  return p;
}
constexpr TagKind L = TagKind::Left;
constexpr TagKind R = TagKind::Right;

// ---------------------------------------------------------------- families

class SubstFam final : public DepImpl {
 public:
  SubstFam(DepType a, Do f, Desc d) : DepImpl(d, a->shape()), a_(std::move(a)), f_(std::move(f)) {}

 protected:
  NpType at_impl(const TSkeleton& point) const override { return a_->at(f_->cod_at(hat(point))); }

 private:
  DepType a_;
  Do f_;
};

DepType fam_subst(const DepType& a, const Do& f) {
  if (a->constant()) return a;
  Desc d = mk_desc("fam.subst", {}, {a->desc(), f->desc()});
  return intern_family(d, [&] { return std::make_shared<const SubstFam>(a, f, d); });
}

// Fiber of B over Γ.A at a fixed γ, as a family over !̂A (Π) or A (Σ).
class FibFam final : public DepImpl {
 public:
  FibFam(DepType b, TSkeleton gamma, bool hatted, Desc d, GameExpr shape)
      : DepImpl(d, std::move(shape)), b_(std::move(b)), gamma_(std::move(gamma)), hatted_(hatted) {}

 protected:
  NpType at_impl(const TSkeleton& point) const override {
    return b_->at(ppair(gamma_, hatted_ ? unhat(point) : point));
  }

 private:
  DepType b_;
  TSkeleton gamma_;
  bool hatted_;
};

DepType fib_fam(const DepType& b, const TSkeleton& gamma, bool hatted) {
  if (b->constant()) return b;
  Desc d = mk_desc(hatted ? "fam.pifib" : "fam.sigmafib", {}, {b->desc(), gamma->desc()});
  return intern_family(d, [&] { return std::make_shared<const FibFam>(b, gamma, hatted, d, b->shape()); });
}

class FormerFam final : public DepImpl {
 public:
  FormerFam(bool pi, Ty a, Ty b, Desc d, GameExpr shape)
      : DepImpl(d, std::move(shape)), pi_(pi), a_(std::move(a)), b_(std::move(b)) {}
  bool pi() const { return pi_; }
  const Ty& a() const { return a_; }
  const Ty& b() const { return b_; }

 protected:
  NpType at_impl(const TSkeleton& gamma) const override {
    NpType ag = a_.fam->at(gamma);
    if (pi_) return np_dlimp(np_sbang(ag), fib_fam(b_.fam, gamma, true));
    return np_sigma(ag, fib_fam(b_.fam, gamma, false));
  }

 private:
  bool pi_;
  Ty a_, b_;
};

DepType former_fam(bool pi, const Ty& a, const Ty& b) {
  Desc d = mk_desc(pi ? "fam.pi" : "fam.sigma", {}, {ty_desc(a), ty_desc(b)});
  GameExpr shape = pi ? g_rlimp(g_sbang(a.fam->shape()), b.fam->shape()) : g_prod(a.fam->shape(), b.fam->shape());
  return intern_family(d, [&] { return std::make_shared<const FormerFam>(pi, a, b, d, shape); });
}

class IdFam final : public DepImpl {
 public:
  IdFam(Ty a, Tm x, Tm y, Desc d) : DepImpl(d, prop_shape()), a_(std::move(a)), x_(std::move(x)), y_(std::move(y)) {}
  const Ty& a() const { return a_; }
  const Tm& x() const { return x_; }
  const Tm& y() const { return y_; }

 protected:
  NpType at_impl(const TSkeleton& gamma) const override {
    TSkeleton u = x_.d->cod_at(hat(gamma)), v = y_.d->cod_at(hat(gamma));
    if (u->desc() == v->desc()) return np_one();
    if (a_.fam->at(gamma)->kind == NK::DLimp && play_equal(u, v).equal) return np_one();
    return np_zero();
  }

 private:
  Ty a_;
  Tm x_, y_;
};

// ---------------------------------------------------------------- Π components

// Tags of k's component on !̂Γ ⊸ (!̂A ⇛ B(γ, _)) against b's on !̂(Γ & A) ⊸ B.
std::optional<Tag> k_to_b(Tag t, const Nat& ea) {
  if (t->kind == TagKind::Left) return t_left(t_left(t->a));
  if (t->kind != TagKind::Right || t->a->kind != TagKind::Real || t->a->num != ea) return std::nullopt;
  Tag in = t->a->a;
  if (in->kind == TagKind::Left) return t_left(t_right(in->a));
  if (in->kind == TagKind::Right) return t_right(in->a);
  return std::nullopt;
}

std::optional<Tag> b_to_k(Tag t, const Nat& ea) {
  if (t->kind == TagKind::Right) return t_right(t_real(ea, t_right(t->a)));
  if (t->kind != TagKind::Left) return std::nullopt;
  Tag in = t->a;
  if (in->kind == TagKind::Left) return t_left(in->a);
  if (in->kind == TagKind::Right) return t_right(t_real(ea, t_left(in->a)));
  return std::nullopt;
}

using TagMap = std::optional<Tag> (*)(Tag, const Nat&);

std::optional<JSeq> retag(const JSeq& s, TagMap f, const Nat& ea) {
  JSeq t = s;
  for (auto& o : t.occ) {
    auto x = f(o.m.tag, ea);
    if (!x) return std::nullopt;
    o.m.tag = *x;
  }
  return t;
}

class LamDo final : public DowrwliImpl {
 public:
  LamDo(Tm b, Ty pi, Desc d)
      : DowrwliImpl(np_sbang(pi.ctx), fam_dagger(pi.fam), d, b.d->cert()), b_(std::move(b)), pi_(std::move(pi)) {}

 protected:
  TSkeleton make_component(const Nat& eg) const override {
    const TSkeleton gamma = unhat(domain_point(eg));
    const GameExpr ash = g_sbang(pi_parts(pi_)->a.fam->shape());
    Desc cd = mk_desc("lamc", {eg}, {desc()});
    Do b = b_.d;
    GameExpr g = g_limp(dom()->shape, fam()->shape());
    return make_skeleton(g, cd, cert(), [b, gamma, ash](const JSeq& s) -> std::optional<Occ> {
      Tag first = s.move(1).tag;
      if (first->kind != TagKind::Right || first->a->kind != TagKind::Real) return std::nullopt;
      const Nat ea = first->a->num;
      auto t = retag(s, k_to_b, ea);
      if (!t) return std::nullopt;
      const TSkeleton a = unhat(skeleton_of_code(ea, ash));
      auto r = b->component(canon_code(hat(ppair(gamma, a))))->next(*t);
      if (!r) return std::nullopt;
      auto back = b_to_k(r->m.tag, ea);
      if (!back) return std::nullopt;
      r->m.tag = *back;
      return r;
    });
  }

 private:
  Tm b_;
  Ty pi_;
};

class UnlamDo final : public DowrwliImpl {
 public:
  UnlamDo(Tm k, Ty b, Desc d)
      : DowrwliImpl(np_sbang(b.ctx), fam_dagger(b.fam), d, k.d->cert()), k_(std::move(k)) {}

 protected:
  TSkeleton make_component(const Nat& ec) const override {
    const TSkeleton c = unhat(domain_point(ec));
    const Nat eg = canon_code(hat(left_of(c)));
    const Nat ea = canon_code(hat(right_of(c)));
    TSkeleton kc = k_.d->component(eg);
    Desc cd = mk_desc("unlamc", {ec}, {desc()});
    return make_skeleton(g_limp(dom()->shape, fam()->shape()), cd, cert(), [kc, ea](const JSeq& s) -> std::optional<Occ> {
      auto t = retag(s, b_to_k, ea);
      if (!t) return std::nullopt;
      auto r = kc->next(*t);
      if (!r) return std::nullopt;
      auto back = k_to_b(r->m.tag, ea);
      if (!back) return std::nullopt;
      r->m.tag = *back;
      return r;
    });
  }

 private:
  Tm k_;
};

// ---------------------------------------------------------------- N recursion

class NatRecDo final : public DowrwliImpl {
 public:
  NatRecDo(Ty p, Tm z, Tm s, Desc d)
      : DowrwliImpl(np_sbang(p.ctx), fam_dagger(p.fam), d, meet(z.d->cert(), s.d->cert())),
        p_(std::move(p)),
        z_(std::move(z)),
        s_(std::move(s)) {
    gamma_ = p_.ctx->a;
    nat_ = Ty{gamma_, fam_const(np_nat())};
  }

  // Q_n : P{⟨id, n̄⟩} over Γ.
  Tm stage(const Nat& n) const {
    {
      std::lock_guard<std::mutex> lock(smu_);
      auto it = stages_.find(n);
      if (it != stages_.end()) return it->second;
    }
    Tm q = z_;
    Nat k = 0;
    {
      std::lock_guard<std::mutex> lock(smu_);
      for (auto it = stages_.rbegin(); it != stages_.rend(); ++it)
        if (it->first <= n) {
          q = it->second;
          k = it->first;
          break;
        }
    }
    if (k == 0) q = Tm{ty_subst(p_, mor_extend(mor_id(gamma_), nat_, numeral_tm(gamma_, 0))), z_.d};
    const Ty pp = Ty{comprehension(nat_), p_.fam};
    while (k < n) {
      Mor m = mor_extend(mor_extend(mor_id(gamma_), nat_, numeral_tm(gamma_, k)), pp, q);
      ++k;
      q = tm_subst_as(s_, m, ty_subst(p_, mor_extend(mor_id(gamma_), nat_, numeral_tm(gamma_, k))));
      std::lock_guard<std::mutex> lock(smu_);
      stages_.emplace(k, q);
    }
    return q;
  }

 protected:
  TSkeleton make_component(const Nat& e) const override {
    const TSkeleton c = unhat(domain_point(e));
    const GameExpr g = g_limp(dom()->shape, fam()->shape());
    Desc cd = mk_desc("natc", {e}, {desc()});
    auto n = read(right_of(c));
    if (!n) return make_skeleton(g, cd, cert(), [](const JSeq&) { return std::nullopt; });
    TSkeleton inner = tm_subst(stage(*n), mor_p(nat_)).d->component(e);
    // Asks for the numeral first, then plays Q_n with those two moves hidden.
    return make_skeleton(g, cd, cert(), [inner](const JSeq& s) -> std::optional<Occ> {
      if (s.size() == 1) return Occ{Move{t_left(t_right(t_q())), Op::P, QA::Q}, 1};
      if (s.size() < 3) return std::nullopt;
      std::vector<std::size_t> keep;
      for (std::size_t i = 1; i <= s.size(); ++i)
        if (i != 2 && i != 3) keep.push_back(i);
      std::vector<std::size_t> back;
      JSeq t = jsub(s, keep, back);
      auto r = inner->next(t);
      if (!r) return std::nullopt;
      if (r->j != 0) r->j = static_cast<std::uint32_t>(back.at(r->j - 1));
      return r;
    });
  }

 private:
  Ty p_;
  Tm z_, s_;
  NpType gamma_;
  Ty nat_;
  mutable std::mutex smu_;
  mutable std::map<Nat, Tm> stages_;
};

}  // namespace

// ---------------------------------------------------------------- structure

Ctx cwf_terminal() { return np_one(); }
Ctx comprehension(const Ty& a) { return np_sigma(a.ctx, a.fam); }
Ty ty_const(Ctx ctx, NpType t) { return Ty{std::move(ctx), fam_const(std::move(t))}; }
namespace {

// q(f, A) = ⟨f ∘ p, v⟩ : Δ.A{f} → Γ.A
Mor mor_q(const Mor& f, const Ty& a) {
  Ty af = ty_subst(a, f);
  return mor_extend(mor_compose(f, mor_p(af)), a, tm_v(af));
}

}  // namespace

// Substitution commutes with the formers; other families are read along f.
Ty ty_subst(const Ty& a, const Mor& f) {
  if (a.fam->constant()) return Ty{f.dom, a.fam};
  if (auto x = std::dynamic_pointer_cast<const FormerFam>(a.fam))
    return Ty{f.dom, former_fam(x->pi(), ty_subst(x->a(), f), ty_subst(x->b(), mor_q(f, x->a())))};
  if (auto x = std::dynamic_pointer_cast<const IdFam>(a.fam))
    return id_ty(ty_subst(x->a(), f), tm_subst(x->x(), f), tm_subst(x->y(), f));
  return Ty{f.dom, fam_subst(a.fam, f.d)};
}

Tm tm_subst_as(const Tm& a, const Mor& f, const Ty& ty) {
  return Tm{ty, compose_do(promote_do(f.d), a.d, fam_dagger(ty.fam))};
}

Tm tm_subst(const Tm& a, const Mor& f) { return tm_subst_as(a, f, ty_subst(a.ty, f)); }

Mor mor_id(Ctx ctx) { return Mor{ctx, ctx, wrw_dereliction(ctx)}; }

Mor mor_bang(Ctx ctx) { return Mor{ctx, np_one(), const_do(np_sbang(ctx), fam_const(np_one()), top())}; }

Mor mor_compose(const Mor& g, const Mor& f) {
  return Mor{f.dom, g.cod, compose_do(promote_do(f.d), g.d, fam_const(g.cod))};
}

Mor mor_p(const Ty& a) {
  Ctx c = comprehension(a);
  return Mor{c, a.ctx, copy_do(np_sbang(c), fam_const(a.ctx), {{{}, P({L})}})};
}

Tm tm_v(const Ty& a) {
  Ctx c = comprehension(a);
  Ty t = ty_subst(a, mor_p(a));
  return Tm{t, copy_do(np_sbang(c), fam_dagger(t.fam), {{{}, P({R})}})};
}

Mor mor_extend(const Mor& f, const Ty& a, const Tm& g) {
  Ctx c = comprehension(a);
  return Mor{f.dom, c, pair_do(f.d, g.d, fam_const(c))};
}

Mor tm_as_mor(const Tm& t) {
  auto c = t.ty.fam->constant();
  if (!c) throw CwfTypeError("tm_as_mor: type depends on the context");
  return Mor{t.ty.ctx, c, t.d};
}

Tm mor_as_tm(const Mor& f) { return Tm{ty_const(f.dom, f.cod), f.d}; }

bool ty_equal(const Ty& a, const Ty& b, std::size_t budget) {
  return np_equiv(a.ctx, b.ctx, budget) && fam_equiv(a.fam, b.fam, a.ctx, budget);
}

EqVerdict tm_equal(const Tm& a, const Tm& b, std::size_t depth, std::size_t budget) {
  return play_equal(a.d, b.d, depth, budget);
}

EqVerdict mor_equal(const Mor& a, const Mor& b, std::size_t depth, std::size_t budget) {
  return play_equal(a.d, b.d, depth, budget);
}

TSkeleton tm_at(const Tm& t, const TSkeleton& gamma) { return t.d->cod_at(hat(gamma)); }

// ---------------------------------------------------------------- Π

Ty pi_ty(const Ty& a, const Ty& b) { return Ty{a.ctx, former_fam(true, a, b)}; }

std::optional<PiParts> pi_parts(const Ty& t) {
  auto f = std::dynamic_pointer_cast<const FormerFam>(t.fam);
  if (!f || !f->pi()) return std::nullopt;
  return PiParts{f->a(), f->b()};
}

Tm lambda(const Tm& b) {
  if (b.ty.ctx->kind != NK::Sigma) throw CwfTypeError("lambda: body context is not a comprehension");
  if (b.d->desc() && b.d->desc()->head == "tm.unlambda") return tm_from_desc(b.d->desc()->kids.at(0));
  Ty a{b.ty.ctx->a, b.ty.ctx->fam};
  Ty pi = pi_ty(a, b.ty);
  Desc d = mk_desc("tm.lambda", {}, {tm_desc(b)});
  return Tm{pi, intern_do(d, [&] { return std::make_shared<const LamDo>(b, pi, d); })};
}

Tm unlambda(const Tm& k) {
  auto parts = pi_parts(k.ty);
  if (!parts) throw CwfTypeError("unlambda: not of a Π-type");
  if (k.d->desc() && k.d->desc()->head == "tm.lambda") return tm_from_desc(k.d->desc()->kids.at(0));
  Desc d = mk_desc("tm.unlambda", {}, {tm_desc(k)});
  return Tm{parts->b, intern_do(d, [&] { return std::make_shared<const UnlamDo>(k, parts->b, d); })};
}

Tm app(const Tm& k, const Tm& a) {
  auto parts = pi_parts(k.ty);
  if (!parts) throw CwfTypeError("app: not of a Π-type");
  return tm_subst(unlambda(k), mor_extend(mor_id(k.ty.ctx), parts->a, a));
}

// ---------------------------------------------------------------- Σ

Ty sigma_ty(const Ty& a, const Ty& b) { return Ty{a.ctx, former_fam(false, a, b)}; }

std::optional<PiParts> sigma_parts(const Ty& t) {
  auto f = std::dynamic_pointer_cast<const FormerFam>(t.fam);
  if (!f || f->pi()) return std::nullopt;
  return PiParts{f->a(), f->b()};
}

Mor pair_mor(const Ty& a, const Ty& b) {
  Ctx src = comprehension(b), dst = comprehension(sigma_ty(a, b));
  return Mor{src, dst, copy_do(np_sbang(src), fam_const(dst), {{P({L}), P({L, L})}, {P({R, L}), P({L, R})}, {P({R, R}), P({R})}})};
}

Mor pair_inv_mor(const Ty& a, const Ty& b) {
  Ctx src = comprehension(sigma_ty(a, b)), dst = comprehension(b);
  return Mor{src, dst, copy_do(np_sbang(src), fam_const(dst), {{P({L, L}), P({L})}, {P({L, R}), P({R, L})}, {P({R}), P({R, R})}})};
}

Tm pair_tm(const Tm& a, const Tm& b, const Ty& bty) {
  Ty s = sigma_ty(a.ty, bty);
  return Tm{s, pair_do(a.d, b.d, fam_dagger(s.fam))};
}

Tm sigma_elim(const Tm& p, const Ty& a, const Ty& b, const Ty& motive) {
  return tm_subst_as(p, pair_inv_mor(a, b), motive);
}

// ---------------------------------------------------------------- N

Ty nat_ty(Ctx ctx) { return ty_const(std::move(ctx), np_nat()); }

Tm zero_tm(Ctx ctx) { return numeral_tm(std::move(ctx), 0); }

Tm numeral_tm(Ctx ctx, const Nat& n) {
  Ty t = nat_ty(ctx);
  return Tm{t, const_do(np_sbang(ctx), t.fam, num(n))};
}

Tm succ_tm(const Tm& t) {
  return Tm{t.ty, compose_do(promote_do(t.d), arith_do({ArithFn::Succ}), fam_const(np_nat()))};
}

Tm nat_rec(const Ty& p, const Tm& z, const Tm& s) {
  if (p.ctx->kind != NK::Sigma) throw CwfTypeError("nat_rec: motive is not over Γ.N");
  Desc d = mk_desc("tm.natrec", {}, {ty_desc(p), tm_desc(z), tm_desc(s)});
  return Tm{p, intern_do(d, [&] { return std::make_shared<const NatRecDo>(p, z, s, d); })};
}

// ---------------------------------------------------------------- Id

Ty id_ty(const Ty& a, const Tm& x, const Tm& y) {
  Desc d = mk_desc("fam.id", {}, {ty_desc(a), tm_desc(x), tm_desc(y)});
  return Ty{a.ctx, intern_family(d, [&] { return std::make_shared<const IdFam>(a, x, y, d); })};
}

Tm refl_tm(const Tm& a) {
  Ty t = id_ty(a.ty, a, a);
  return Tm{t, const_do(np_sbang(t.ctx), fam_dagger(t.fam), top())};
}

namespace {

struct IdElimParts {
  Ty a1, a2, id;
};

IdElimParts id_elim_parts(const Ty& a) {
  Ty a1 = ty_subst(a, mor_p(a));
  Ty a2 = ty_subst(a1, mor_p(a1));
  Tm x = tm_subst(tm_v(a), mor_p(a1));
  Tm y = tm_v(a1);
  return {a1, a2, id_ty(a2, x, y)};
}

}  // namespace

Ctx id_elim_ctx(const Ty& a) { return comprehension(id_elim_parts(a).id); }

Mor refl_mor(const Ty& a) {
  Ctx src = comprehension(a), dst = id_elim_ctx(a);
  return Mor{src, dst, copy_do(np_sbang(src), fam_const(dst), {{P({L, L}), {}}, {P({L, R}), P({R})}})};
}

Mor refl_inv_mor(const Ty& a) {
  Ctx src = id_elim_ctx(a), dst = comprehension(a);
  return Mor{src, dst, copy_do(np_sbang(src), fam_const(dst), {{{}, P({L, L})}})};
}

Tm id_elim(const Tm& c, const Ty& a, const Ty& motive) { return tm_subst_as(c, refl_inv_mor(a), motive); }

// ---------------------------------------------------------------- 1 and 0

Ty unit_ty(Ctx ctx) { return ty_const(std::move(ctx), np_one()); }

Tm top_tm(Ctx ctx) {
  Ty t = unit_ty(ctx);
  return Tm{t, const_do(np_sbang(ctx), t.fam, top())};
}

Tm top_as(const Ty& t) { return Tm{t, const_do(np_sbang(t.ctx), fam_dagger(t.fam), top())}; }

Ty empty_ty(Ctx ctx) { return ty_const(std::move(ctx), np_zero()); }

Tm empty_elim(const Ty& a) { return Tm{a, trivial_do(np_sbang(a.ctx), fam_dagger(a.fam))}; }

std::optional<Nat> read_closed(const Tm& t) {
  if (t.ty.ctx->kind != NK::One) return std::nullopt;
  return read(tm_at(t, top()));
}

void register_cwf_builders() {
  register_family_builder("fam.subst", [](Desc d) { return fam_subst(dep_from_desc(d->kids.at(0)), build_do(d->kids.at(1))); });
  register_family_builder("fam.pifib", [](Desc d) {
    return fib_fam(dep_from_desc(d->kids.at(0)), build_skeleton(d->kids.at(1)), true);
  });
  register_family_builder("fam.sigmafib", [](Desc d) {
    return fib_fam(dep_from_desc(d->kids.at(0)), build_skeleton(d->kids.at(1)), false);
  });
  register_family_builder("fam.pi", [](Desc d) { return former_fam(true, ty_from_desc(d->kids.at(0)), ty_from_desc(d->kids.at(1))); });
  register_family_builder("fam.sigma", [](Desc d) { return former_fam(false, ty_from_desc(d->kids.at(0)), ty_from_desc(d->kids.at(1))); });
  register_family_builder("fam.id", [](Desc d) {
    Ty a = ty_from_desc(d->kids.at(0));
    return id_ty(a, tm_from_desc(d->kids.at(1)), tm_from_desc(d->kids.at(2))).fam;
  });
  register_skeleton_builder("tm.lambda", [](Desc d) -> TSkeleton { return lambda(tm_from_desc(d->kids.at(0))).d; });
  register_skeleton_builder("tm.unlambda", [](Desc d) -> TSkeleton { return unlambda(tm_from_desc(d->kids.at(0))).d; });
  register_skeleton_builder("tm.natrec", [](Desc d) -> TSkeleton {
    return nat_rec(ty_from_desc(d->kids.at(0)), tm_from_desc(d->kids.at(1)), tm_from_desc(d->kids.at(2))).d;
  });
  for (const char* h : {"lamc", "unlamc", "natc"})
    register_skeleton_builder(h, [](Desc d) -> TSkeleton { return build_do(d->kids.at(0))->component(d->nums.at(0)); });
}

}  // namespace ctg
