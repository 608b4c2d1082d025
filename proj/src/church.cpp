#include "ctg/church.hpp"

#include <sstream>

namespace ctg {

namespace {

class TFam final : public DepImpl {
 public:
  TFam() : DepImpl(mk_desc("fam.t"), prop_shape()) {}

 protected:
  NpType at_impl(const TSkeleton& p) const override {
    if (p->game()->kind != GK::Prod) return np_zero();
    TSkeleton en = left_of(p);
    if (en->game()->kind != GK::Prod) return np_zero();
    auto e = read(left_of(en)), n = read(right_of(en)), c = read(right_of(p));
    return e && n && c && t_pred(*e, *n, *c) ? np_one() : np_zero();
  }
};

Path P(std::initializer_list<TagKind> ks) {
  Path p;
  for (auto k : ks) p.push_back(PathStep{k});
  return p;
}
constexpr TagKind L = TagKind::Left;
constexpr TagKind R = TagKind::Right;

// x̂ over 1.f: the numeral e‡, read off O's realizer without playing in f.
Do x_do() {
  static const Do d = [] {
    const CtType& t = ct_type();
    Desc k = mk_desc("ct.x");
    return intern_do(k, [&] {
      return make_do(np_sbang(t.x.ctx), t.x.fam, k, WinningCert::winning(), [](const DowrwliImpl& self, const Nat& e) {
        TSkeleton f = right_of(unhat(self.domain_point(e)));
        return weaken_sk(self.dom()->shape, num(canon_code(f)));
      });
    });
  }();
  return d;
}

// ẑ over 1.f.x.y: the history code of running x on y.
Do z_do() {
  static const Do d = [] {
    const CtType& t = ct_type();
    Desc k = mk_desc("ct.z");
    return intern_do(k, [&] {
      return make_do(np_sbang(t.z.ctx), t.z.fam, k, WinningCert::winning(), [](const DowrwliImpl& self, const Nat& e) {
        TSkeleton c = unhat(self.domain_point(e));
        auto y = read(right_of(c));
        auto x = read(right_of(left_of(c)));
        if (!x || !y) return weaken_sk(self.dom()->shape, bot(g_nat()));
        return weaken_sk(self.dom()->shape, num(run_protocol(*x, *y).code()));
      });
    });
  }();
  return d;
}

Occ o_q(Tag t) { return Occ{Move{t, Op::O, QA::Q}, 0}; }

// History codes run to thousands of digits; the report shows a prefix and the length.
std::string short_num(const Nat& n) {
  std::string s = n.str();
  if (s.size() <= 40) return s;
  return s.substr(0, 16) + "..[" + std::to_string(s.size()) + " digits]";
}

}  // namespace

DepType t_family() {
  static const DepType f = intern_family(mk_desc("fam.t"), [] { return std::make_shared<const TFam>(); });
  return f;
}

Ctx t_base() { return np_prod(np_prod(np_nat(), np_nat()), np_nat()); }

Tm u_morphism() {
  Ty n0 = nat_ty(cwf_terminal());
  Ty n1 = nat_ty(comprehension(n0));
  return lambda(Tm{n1, compose_do(promote_do(tm_v(n0).d), arith_do({ArithFn::UExtract}), fam_const(np_nat()))});
}

const CtType& ct_type() {
  static const CtType t = [] {
    CtType r;
    Ctx c0 = cwf_terminal();
    Ty n0 = nat_ty(c0);
    r.f = pi_ty(n0, nat_ty(comprehension(n0)));
    Ctx c1 = comprehension(r.f);
    r.x = nat_ty(c1);
    Ctx c2 = comprehension(r.x);
    r.y = nat_ty(c2);
    Ctx c3 = comprehension(r.y);
    r.z = nat_ty(c3);
    Ctx c4 = comprehension(r.z);
    // (f, x, y, z) ↦ ⟨⟨x, y⟩, z⟩
    Mor sel{c4, t_base(), copy_do(np_sbang(c4), fam_const(t_base()), {{P({L, L}), P({L, L, R})}, {P({L, R}), P({L, R})}, {P({R}), P({R})}})};
    r.t = ty_subst(Ty{t_base(), t_family()}, sel);
    Tm z = tm_v(r.z);
    Tm y = tm_subst(tm_v(r.y), mor_p(r.z));
    Mor to1 = mor_compose(mor_p(r.x), mor_compose(mor_p(r.y), mor_p(r.z)));
    Tm f = tm_subst(tm_v(r.f), to1);
    Tm uz = app(tm_subst(u_morphism(), mor_bang(c4)), z);
    Tm fy = app(f, y);
    r.id = id_ty(nat_ty(c4), uz, fy);
    r.body = sigma_ty(r.t, ty_subst(r.id, mor_p(r.t)));
    Ty sz = sigma_ty(r.z, r.body);
    Ty py = pi_ty(r.y, sz);
    Ty sx = sigma_ty(r.x, py);
    r.ct = pi_ty(r.f, sx);
    return r;
  }();
  return t;
}

Tm ct_term() {
  static const Tm ct = [] {
    const CtType& t = ct_type();
    Ctx c1 = t.x.ctx, c3 = t.z.ctx, c4 = t.t.ctx;
    Tm x{t.x, x_do()};
    Tm z{t.z, z_do()};
    Ty idp = ty_subst(t.id, mor_p(t.t));
    Tm tt = top_as(t.t);
    Tm w = pair_tm(tt, top_as(ty_subst(idp, mor_extend(mor_id(c4), t.t, tt))), idp);
    Mor at_z = mor_extend(mor_id(c3), t.z, z);
    Tm inner3 = pair_tm(z, tm_subst_as(w, at_z, ty_subst(t.body, at_z)), t.body);
    Tm inner2 = lambda(inner3);
    Mor at_x = mor_extend(mor_id(c1), t.x, x);
    Tm inner1 = tm_subst_as(inner2, at_x, ty_subst(inner2.ty, at_x));
    Tm body1 = pair_tm(x, inner1, inner2.ty);
    return lambda(body1);
  }();
  return ct;
}

Nat ct_dagger_code(const Nat& e) { return unhat_code(e); }

std::vector<CtSample> ct_samples() {
  return {{"succ", arith_do({ArithFn::Succ})},
          {"double", arith_do({ArithFn::Double})},
          {"identity", arith_do({ArithFn::Id})},
          {"const7", arith_do({ArithFn::Const, 7})}};
}

bool CtSampleReport::ok() const {
  if (!echo_ok || probes.empty()) return false;
  for (const auto& p : probes)
    if (!p.t_ok || !p.fibers_one || !p.played_ok || p.u != p.expected) return false;
  return true;
}

bool CtReport::ok() const {
  if (!total || !realizes_ok || !empty_has_no_winner || samples.empty()) return false;
  for (const auto& s : samples)
    if (!s.ok()) return false;
  return true;
}

std::string CtReport::text() const {
  std::ostringstream os;
  for (const auto& s : samples) {
    os << s.name << " e=" << short_num(s.e) << " e_dagger=" << short_num(s.e_dagger) << " echo=" << (s.echo_ok ? "ok" : "FAIL");
    for (const auto& p : s.probes)
      os << " (" << p.n.str() << "," << short_num(p.c) << "," << p.u.str() << "," << (p.t_ok ? "T" : "F") << ")";
    os << (s.ok() ? " pass" : " FAIL") << "\n";
  }
  os << "total " << total_label << "\n";
  os << "realizes " << realizes_label << "\n";
  os << "empty-type " << (empty_has_no_winner ? "no winning member" : "FAIL") << "\n";
  return os.str();
}

CtReport validate_ct(const std::vector<CtSample>& samples, std::size_t max_n, std::size_t depth, std::size_t realize_probes) {
  CtReport rep;
  const Tm ct = ct_term();
  const NpType top_t = ct.ty.fam->at(top());
  const Nat e1 = canon_code(hat(top()));
  std::vector<JSeq> played;  // odd positions of the explicit plays, re-probed through the realizer
  for (const auto& smp : samples) {
    CtSampleReport sr;
    sr.name = smp.name;
    sr.e = canon_code(hat(smp.f));
    sr.e_dagger = ct_dagger_code(sr.e);
    auto in_f = [&](Tag t) { return t_real(e1, t_right(t_real(sr.e, t_right(t)))); };
    try {
      JSeq s = play(ct.d, {o_q(in_f(t_left(t_q())))});
      sr.moves_before_echo = s.size() - 2;
      played.push_back(s.prefix(1));
      sr.echo_ok = s.size() == 2 && s.move(2).tag == in_f(t_left(t_num(sr.e_dagger))) && s.just(2) == 1;
      NpType sx = top_t->fam->at(hat(smp.f));
      NpType py = sx->fam->at(num(sr.e_dagger));
      for (std::size_t n = 0; n <= max_n; ++n) {
        CtProbe p;
        p.n = n;
        auto ex = extension(smp.f, n);
        p.expected = ex ? *ex : Nat(0);
        const Nat en = canon_code(hat(num(n)));
        auto in_y = [&](Tag t) { return in_f(t_right(t_real(en, t_right(t)))); };
        JSeq q = play(ct.d, {o_q(in_y(t_left(t_q())))});
        played.push_back(q.prefix(1));
        std::optional<Nat> c;
        if (q.size() == 2 && q.just(2) == 1) {
          Tag a = q.move(2).tag;
          for (int k = 0; k < 7 && a->a; ++k) a = a->a;  // real, inr, real, inr, inr, real, inr
          if (a->kind == TagKind::Left && a->a->kind == TagKind::Num && in_y(a) == q.move(2).tag) c = a->a->num;
        }
        const Nat semantic = run_protocol(sr.e_dagger, n).code();
        p.c = c ? *c : Nat(0);
        p.played_ok = c.has_value() && *c == semantic;
        p.u = u_extract(p.c);
        p.t_ok = t_pred(sr.e_dagger, n, p.c);
        NpType sz = py->fam->at(hat(num(n)));
        NpType body = sz->fam->at(num(p.c));
        p.fibers_one = body->a->kind == NK::One && body->fam->at(top())->kind == NK::One;
        sr.probes.push_back(p);
      }
    } catch (const CtgError&) {
      sr.echo_ok = false;
    }
    rep.samples.push_back(std::move(sr));
  }
  auto w = check_winning(ct.d, depth);
  rep.total = w.total && w.innocent && w.noetherian;
  rep.total_label = w.label();
  const Nat code = canon_code(ct.d);
  auto rv = realizes(code, ct.d, realize_probes);
  // The typed tree is small; the explicit plays add the inputs beyond O's sample choices.
  for (const auto& s : played) {
    if (!rv.pass || rv.probes >= realize_probes + played.size()) break;
    const Nat x = code_jseq(s);
    ++rv.probes;
    if (prf_eval(code, {x}, Defaults::fuel).value != fun_rep(ct.d, x)) {
      rv.pass = false;
      rv.witness = s;
    }
  }
  rep.realizes_ok = rv.pass && rv.probes >= realize_probes;
  rep.realizes_label = rv.text();
  rep.empty_has_no_winner = !check_winning(bot(g_zero()), depth).total;
  return rep;
}

void register_church_builders() {
  register_family_builder("fam.t", [](Desc) { return t_family(); });
  register_skeleton_builder("ct.x", [](Desc) -> TSkeleton { return x_do(); });
  register_skeleton_builder("ct.z", [](Desc) -> TSkeleton { return z_do(); });
}

}  // namespace ctg
