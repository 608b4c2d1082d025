#include "ctg/dowrwli.hpp"

#include <algorithm>

namespace ctg {

namespace {

WinningCert cert_of(std::initializer_list<Do> xs) {
  WinningCert c = WinningCert::winning();
  for (const auto& x : xs) c = meet(c, x->cert());
  return c;
}

// Wrapper chain from a local position to the global one, outermost first.
using Wraps = std::vector<std::pair<TagKind, Nat>>;

Tag wrap1(const std::pair<TagKind, Nat>& w, Tag t) {
  switch (w.first) {
    case TagKind::Left: return t_left(t);
    case TagKind::Right: return t_right(t);
    case TagKind::Real: return t_real(w.second, t);
    default: return t_exp(w.second, t);
  }
}

Tag apply_wraps(const Wraps& w, Tag t) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) t = wrap1(*it, t);
  return t;
}

std::optional<Tag> strip_wraps(const Wraps& w, Tag t) {
  for (const auto& [k, n] : w) {
    if (t->kind != k || ((k == TagKind::Real || k == TagKind::Exp) && t->num != n)) return std::nullopt;
    t = t->a;
  }
  return t;
}

Wraps plus(Wraps w, TagKind k, const Nat& n = 0) {
  w.emplace_back(k, n);
  return w;
}

struct Frame {
  JSeq loc;
  std::vector<std::size_t> back;  // local index -> global index
  Wraps wraps;
  std::uint32_t init_j = 0;
};

// Moves of f.loc whose tag has kind k (and code e for real tags), one layer unwrapped.
Frame sub(const Frame& f, TagKind k, const Nat* e, bool flip_ops) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i <= f.loc.size(); ++i) {
    Tag t = f.loc.move(i).tag;
    if (t->kind == k && (!e || t->num == *e)) keep.push_back(i);
  }
  Frame g;
  std::vector<std::size_t> b;
  g.loc = jsub(f.loc, keep, b);
  for (auto& o : g.loc.occ) {
    o.m.tag = o.m.tag->a;
    if (flip_ops) o.m.op = flip(o.m.op);
  }
  for (std::size_t x : b) g.back.push_back(f.back.at(x - 1));
  g.wraps = plus(f.wraps, k, e ? *e : Nat(0));
  g.init_j = f.init_j;
  return g;
}

Frame empty_frame(const Frame& f, Wraps w) {
  Frame g;
  g.wraps = std::move(w);
  g.init_j = f.init_j;
  return g;
}

void append_unique(std::vector<Occ>& out, const std::vector<Occ>& xs) {
  for (const auto& o : xs)
    if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
}

}  // namespace

// Typed enumeration of O's moves. Descends only into the component holding
// P's last move; domain replies are forced by O's realized point.
class OWalker {
 public:
  OWalker(const DowrwliImpl& top, const JSeq& s) : top_(top), s_(s) {}

  DowrwliImpl::OMoves walk(const NpType& t, const Frame& f) const {
    DowrwliImpl::OMoves out;
    switch (t->kind) {
      case NK::One: break;
      case NK::Zero:
      case NK::Nat:
        if (f.loc.empty()) out.moves.push_back(Occ{Move{apply_wraps(f.wraps, t_q()), Op::O, QA::Q}, f.init_j});
        break;
      case NK::Sigma: {
        if (f.loc.empty()) {
          append_unique(out.moves, walk(t->a, empty_frame(f, plus(f.wraps, TagKind::Left))).moves);
          for (const auto& fib : fibers(t, f, s_)) append_unique(out.moves, walk(fib, empty_frame(f, plus(f.wraps, TagKind::Right))).moves);
          break;
        }
        const TagKind side = f.loc.move(1).tag->kind;
        if (side == TagKind::Left) return walk(t->a, sub(f, TagKind::Left, nullptr, false));
        if (side != TagKind::Right) break;
        const JSeq prefix = s_.prefix(f.back.at(0) - 1);
        auto fibs = fibers(t, f, prefix);
        Frame r = sub(f, TagKind::Right, nullptr, false);
        for (const auto& fib : fibs) {
          auto m = walk(fib, r);
          if (m.obligated) return m;
          append_unique(out.moves, m.moves);
        }
        break;
      }
      case NK::SBang: {
        if (!f.loc.empty()) {
          const std::size_t root = root_of(f.loc, f.loc.size());
          std::vector<std::size_t> keep;
          for (std::size_t i = 1; i <= f.loc.size(); ++i)
            if (root_of(f.loc, i) == root) keep.push_back(i);
          Frame th;
          std::vector<std::size_t> b;
          th.loc = jsub(f.loc, keep, b);
          for (std::size_t x : b) th.back.push_back(f.back.at(x - 1));
          th.wraps = f.wraps;
          th.init_j = f.init_j;
          auto cont = walk(t->a, th);
          if (cont.obligated) return cont;
          out.moves = cont.moves;
        }
        append_unique(out.moves, walk(t->a, empty_frame(f, f.wraps)).moves);
        break;
      }
      case NK::DLimp: {
        if (f.loc.empty()) {
          for (const auto& delta : canonical_points(t->a, kRealizerChoices)) {
            const Nat e = canon_code(delta);
            Wraps w = plus(plus(f.wraps, TagKind::Real, e), TagKind::Right);
            append_unique(out.moves, walk(t->fam->at(delta), empty_frame(f, w)).moves);
          }
          break;
        }
        Tag first = f.loc.move(1).tag;
        if (first->kind != TagKind::Real) break;
        const Nat e = first->num;
        TSkeleton delta = skeleton_of_code(e, t->a->shape);
        Frame in = sub(f, TagKind::Real, &e, false);
        if (in.loc.size() != f.loc.size()) break;
        Tag last = in.loc.move(in.loc.size()).tag;
        if (last->kind == TagKind::Left) {
          out.obligated = true;
          Frame d = sub(in, TagKind::Left, nullptr, true);
          std::optional<Occ> r;
          try {
            r = delta->next(d.loc);
          } catch (const CtgError&) {
          }
          if (!r || r->j == 0) break;
          out.moves.push_back(Occ{Move{apply_wraps(d.wraps, r->m.tag), Op::O, r->m.qa},
                                  static_cast<std::uint32_t>(d.back.at(r->j - 1))});
          break;
        }
        if (last->kind == TagKind::Right) return walk(t->fam->at(delta), sub(in, TagKind::Right, nullptr, false));
        break;
      }
    }
    return out;
  }

  // Fibers of a Σ at frame f: the one over P's left value when a side play
  // determines it, otherwise those over canonical points of the left type.
  std::vector<NpType> fibers(const NpType& t, const Frame& f, const JSeq& prefix) const {
    if (auto c = t->fam->constant()) return {c};
    if (auto a = top_.side_value_(prefix, t->a, plus(f.wraps, TagKind::Left), f.init_j)) return {t->fam->at(*a)};
    std::vector<NpType> out;
    for (const auto& p : canonical_points(t->a, kRealizerChoices)) out.push_back(t->fam->at(p));
    return out;
  }

 private:
  const DowrwliImpl& top_;
  const JSeq& s_;
};

DowrwliImpl::DowrwliImpl(NpType dom, DepType fam, Desc desc, WinningCert cert)
    : SkeletonImpl(g_rlimp(dom->shape, fam->shape()), desc, cert),
      dom_(std::move(dom)),
      fam_(std::move(fam)),
      type_(np_dlimp(dom_, fam_)) {}

TSkeleton DowrwliImpl::component(const Nat& e) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = comps_.find(e);
    if (it != comps_.end()) return it->second;
  }
  TSkeleton c = make_component(e);
  std::lock_guard<std::mutex> lock(mu_);
  return comps_.emplace(e, c).first->second;
}

TSkeleton DowrwliImpl::domain_point(const Nat& e) const { return skeleton_of_code(e, dom_->shape); }

NpType DowrwliImpl::cod_type(const Nat& e) const { return fam_->at(domain_point(e)); }

TSkeleton DowrwliImpl::cod(const Nat& e) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cods_.find(e);
    if (it != cods_.end()) return it->second;
  }
  TSkeleton delta = domain_point(e);
  TSkeleton c = normalize(fam_->at(delta), compose_point(delta, component(e)));
  std::lock_guard<std::mutex> lock(mu_);
  return cods_.emplace(e, c).first->second;
}

PrfTerm DowrwliImpl::realizer_map() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!rm_) rm_ = prf_prim(Builtin::CodMap, {prf_lit(desc_code(desc())), prf_proj(0, 1)});
  return *rm_;
}

Nat DowrwliImpl::realize_cod(const Nat& e, std::uint64_t fuel) const {
  auto r = prf_eval(realizer_map(), {e}, fuel);
  if (!r.value) throw RealizerMapDivergence("realizer-map did not converge within fuel " + std::to_string(fuel));
  return *r.value;
}

std::optional<Occ> DowrwliImpl::respond(const JSeq& s) const {
  Tag first = s.move(1).tag;
  if (first->kind != TagKind::Real) return std::nullopt;
  const Nat e = first->num;
  Restriction st = strip_real(s, e);
  if (st.seq.size() != s.size()) return std::nullopt;
  auto r = component(e)->next(st.seq);
  if (!r) return std::nullopt;
  r->m.tag = t_real(e, r->m.tag);
  return r;
}

DowrwliImpl::OMoves DowrwliImpl::o_moves(const JSeq& s, std::size_t) const {
  Frame f;
  f.loc = s;
  for (std::size_t i = 1; i <= s.size(); ++i) f.back.push_back(i);
  return OWalker(*this, s).walk(type_, f);
}

std::vector<Occ> DowrwliImpl::o_extensions(const JSeq& s, std::size_t budget) const {
  if (s.size() % 2 != 0) return {};
  return o_moves(s, budget).moves;
}

bool DowrwliImpl::o_move_ok(const JSeq& s, const Occ& o) const {
  if (s.size() % 2 != 0 || o.m.op != Op::O || !member(game(), s.plus(o.m, o.j))) return false;
  auto om = o_moves(s, Defaults::budget);
  if (om.obligated) return std::find(om.moves.begin(), om.moves.end(), o) != om.moves.end();
  return true;
}

std::optional<TSkeleton> DowrwliImpl::side_value_(const JSeq& prefix, const NpType& t, const std::vector<std::pair<TagKind, Nat>>& wraps,
                                                  std::uint32_t init_j) const {
  switch (t->kind) {
    case NK::One: return top();
    case NK::Sigma: {
      auto l = side_value_(prefix, t->a, plus(wraps, TagKind::Left), init_j);
      if (!l) return std::nullopt;
      auto r = side_value_(prefix, t->fam->at(*l), plus(wraps, TagKind::Right), init_j);
      if (!r) return std::nullopt;
      return ppair(*l, *r);
    }
    case NK::SBang: {
      auto a = side_value_(prefix, t->a, wraps, init_j);
      if (!a) return std::nullopt;
      return hat(*a);
    }
    case NK::DLimp: return std::nullopt;
    case NK::Zero:
    case NK::Nat: break;
  }
  JSeq s = prefix;
  s.push(Move{apply_wraps(wraps, t_q()), Op::O, QA::Q}, init_j);
  const std::string key = jseq_text(s);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sides_.find(key);
    if (it != sides_.end()) return it->second;
  }
  const std::uint32_t qi = static_cast<std::uint32_t>(s.size());
  std::optional<TSkeleton> value = t->kind == NK::Zero ? bot(g_zero()) : bot(g_nat());
  for (int step = 0; step < 64; ++step) {
    std::optional<Occ> r;
    try {
      r = next(s);
    } catch (const CtgError&) {
      value = std::nullopt;
      break;
    }
    if (!r) break;
    s.push(r->m, r->j);
    if (r->j == qi && r->m.qa == QA::A) {
      auto v = strip_wraps(wraps, r->m.tag);
      value = (v && (*v)->kind == TagKind::Num) ? std::optional<TSkeleton>(num((*v)->num)) : std::nullopt;
      break;
    }
    auto om = o_moves(s, Defaults::budget);
    if (!om.obligated || om.moves.size() != 1) {
      value = std::nullopt;
      break;
    }
    s.push(om.moves[0].m, om.moves[0].j);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return sides_.emplace(key, value).first->second;
}

// ---------------------------------------------------------------- construction helpers

namespace {

class FnDo final : public DowrwliImpl {
 public:
  FnDo(NpType dom, DepType fam, Desc desc, WinningCert cert, ComponentFn fn)
      : DowrwliImpl(std::move(dom), std::move(fam), desc, cert), fn_(std::move(fn)) {}

 protected:
  TSkeleton make_component(const Nat& e) const override { return fn_(*this, e); }

 private:
  ComponentFn fn_;
};

class TrivialDo final : public DowrwliImpl {
 public:
  TrivialDo(NpType dom, DepType fam, Desc desc) : DowrwliImpl(std::move(dom), std::move(fam), desc, WinningCert::winning()) {}
  bool trivial() const override { return true; }

 protected:
  TSkeleton make_component(const Nat&) const override {
    GameExpr g = g_limp(dom()->shape, fam()->shape());
    Desc d = mk_desc("silent", {}, {g->desc});
    return intern_skeleton(d, [&] { return make_skeleton(g, d, WinningCert::winning(), [](const JSeq&) { return std::nullopt; }); });
  }
};

NpType constant_or_throw(const Do& x, const char* what) {
  auto c = x->fam()->constant();
  if (!c) throw CwfTypeError(std::string(what) + ": expected a morphism (constant family), got " + desc_text(x->fam()->desc()));
  return c;
}

}  // namespace

Do make_do(NpType dom, DepType fam, Desc desc, WinningCert cert, ComponentFn fn) {
  return std::make_shared<const FnDo>(std::move(dom), std::move(fam), desc, cert, std::move(fn));
}

Do as_do(const TSkeleton& s) {
  auto d = std::dynamic_pointer_cast<const DowrwliImpl>(s);
  if (!d) throw ComponentMismatch("not a w.r.w. strategy: " + (s->desc() ? desc_text(s->desc()) : std::string("opaque")));
  return d;
}

Do build_do(Desc d) { return as_do(build_skeleton(d)); }

Do intern_do(Desc d, const std::function<Do()>& factory) { return as_do(intern_skeleton(d, [&]() -> TSkeleton { return factory(); })); }

TSkeleton weaken_sk(const GameExpr& dom, const TSkeleton& point) {
  Desc d = mk_desc("wk", {}, {dom->desc, point->desc()});
  return intern_skeleton(d, [&] {
    return make_skeleton(g_limp(dom, point->game()), d, point->cert(), [point](const JSeq& s) -> std::optional<Occ> {
      JSeq t = s;
      for (auto& o : t.occ) {
        if (o.m.tag->kind != TagKind::Right) return std::nullopt;
        o.m.tag = o.m.tag->a;
      }
      auto r = point->next(t);
      if (!r) return std::nullopt;
      r->m.tag = t_right(r->m.tag);
      return r;
    });
  });
}

// ---------------------------------------------------------------- constructors

Do copy_do(NpType dom, DepType fam, const CopyRules& rules) {
  Desc d = mk_desc("do.copy", {rules_code(rules)}, {dom->desc, fam->desc()});
  return intern_do(d, [&] {
    GameExpr g = g_limp(dom->shape, fam->shape());
    TSkeleton c = retag_copycat(g, rules);
    return make_do(dom, fam, d, WinningCert::winning(), [c](const DowrwliImpl&, const Nat&) { return c; });
  });
}

Do const_do(NpType dom, DepType fam, const TSkeleton& point) {
  Desc d = mk_desc("do.const", {}, {dom->desc, fam->desc(), point->desc()});
  return intern_do(d, [&] {
    TSkeleton c = weaken_sk(dom->shape, point);
    return make_do(dom, fam, d, point->cert(), [c](const DowrwliImpl&, const Nat&) { return c; });
  });
}

Do arith_do(const ArithFn& fn) {
  Desc d = mk_desc("do.arith", {static_cast<int>(fn.kind), fn.k});
  return intern_do(d, [&] {
    TSkeleton c = arith_sk(fn, g_limp(g_sbang(g_nat()), g_nat()), {});
    return make_do(np_sbang(np_nat()), fam_const(np_nat()), d, WinningCert::winning(),
                   [c](const DowrwliImpl&, const Nat&) { return c; });
  });
}

Do trivial_do(NpType dom, DepType fam) {
  Desc d = mk_desc("do.trivial", {}, {dom->desc, fam->desc()});
  return intern_do(d, [&] { return std::make_shared<const TrivialDo>(dom, fam, d); });
}

namespace {

// ψ's family read along φ: fiber over δ is ψ.fam at φ's normalized codomain point.
class AfterFam final : public DepImpl {
 public:
  AfterFam(Do phi, DepType psi_fam)
      : DepImpl(mk_desc("fam.after", {}, {phi->desc(), psi_fam->desc()}), psi_fam->shape()),
        phi_(std::move(phi)),
        fam_(std::move(psi_fam)) {}

 protected:
  NpType at_impl(const TSkeleton& point) const override { return fam_->at(phi_->cod_at(point)); }

 private:
  Do phi_;
  DepType fam_;
};

DepType fam_after(const Do& phi, const DepType& psi_fam) {
  if (psi_fam->constant()) return psi_fam;
  Desc d = mk_desc("fam.after", {}, {phi->desc(), psi_fam->desc()});
  return intern_family(d, [&] { return std::make_shared<const AfterFam>(phi, psi_fam); });
}

}  // namespace

Do compose_do(const Do& phi, const Do& psi, DepType fam) {
  if (!fam) fam = fam_after(phi, psi->fam());
  if (phi->trivial() || psi->trivial()) return trivial_do(phi->dom(), fam);
  Desc d = mk_desc("do.compose", {}, {phi->desc(), psi->desc(), fam->desc()});
  return intern_do(d, [&] {
    return make_do(phi->dom(), fam, d, cert_of({phi, psi}), [phi, psi](const DowrwliImpl&, const Nat& e) {
      const Nat e2 = phi->realize_cod(e);
      return compose_sk(phi->component(e), psi->component(e2));
    });
  });
}

Do promote_do(const Do& phi) {
  if (phi->dom()->kind != NK::SBang) throw CwfTypeError("promote_do: domain is not a simplified exponential");
  NpType cod = np_sbang(constant_or_throw(phi, "promote_do"));
  Desc d = mk_desc("do.promote", {}, {phi->desc()});
  return intern_do(d, [&] {
    return make_do(phi->dom(), fam_const(cod), d, phi->cert(),
                   [phi](const DowrwliImpl&, const Nat& e) { return promote_hat(phi->component(e)); });
  });
}

Do pair_do(const Do& phi, const Do& tau, DepType fam) {
  if (!fam) fam = fam_const(np_prod(constant_or_throw(phi, "pair_do"), constant_or_throw(tau, "pair_do")));
  Desc d = mk_desc("do.pair", {}, {phi->desc(), tau->desc(), fam->desc()});
  return intern_do(d, [&] {
    return make_do(phi->dom(), fam, d, cert_of({phi, tau}), [phi, tau](const DowrwliImpl&, const Nat& e) {
      return pair_sk(phi->component(e), tau->component(e));
    });
  });
}

Do bullet(const Do& psi, const Do& phi) { return compose_do(promote_do(phi), psi); }

Do wrw_dereliction(NpType g) {
  if (!np_well_opened(g)) throw NotWellOpened("w.r.w. dereliction on a game that is not well-opened: " + np_text(g));
  return copy_do(np_sbang(g), fam_const(g), {{{}, {}}});
}

Do wrw_copycat(NpType g) { return copy_do(g, fam_const(g), {{{}, {}}}); }

// ---------------------------------------------------------------- membership

bool np_member(const NpType& t, const TSkeleton& point, std::size_t depth, std::size_t budget) {
  auto rep = check_winning(point, depth, budget);
  if (!rep.total || !rep.innocent || !rep.noetherian) return false;
  switch (t->kind) {
    case NK::One: return true;
    case NK::Zero: return false;
    case NK::Nat: return read(point).has_value();
    case NK::Sigma: {
      if (point->game()->kind != GK::Prod) return false;
      TSkeleton l = left_of(point);
      if (!np_member(t->a, l, depth, budget)) return false;
      return np_member(t->fam->at(normalize(t->a, l)), right_of(point), depth, budget);
    }
    case NK::SBang: return np_member(t->a, unhat(point), depth, budget);
    case NK::DLimp: {
      auto x = std::dynamic_pointer_cast<const DowrwliImpl>(point);
      if (!x) return false;
      for (const auto& delta : canonical_points(t->a, budget)) {
        const Nat e = canon_code(delta);
        NpType fib = t->fam->at(delta);
        TSkeleton c;
        try {
          c = normalize(fib, compose_point(delta, x->component(e)));
          if (x->realize_cod(e) != canon_code(x->cod(e))) return false;
        } catch (const CtgError&) {
          return false;
        }
        if (!np_member(fib, c, depth, budget)) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- builders

void register_do_builders() {
  auto np = [](Desc d, std::size_t i) { return np_from_desc(d->kids.at(i)); };
  auto fam = [](Desc d, std::size_t i) { return dep_from_desc(d->kids.at(i)); };
  register_skeleton_builder("wk", [](Desc d) {
    return weaken_sk(game_from_desc(d->kids.at(0)), build_skeleton(d->kids.at(1)));
  });
  register_skeleton_builder("do.copy", [=](Desc d) -> TSkeleton { return copy_do(np(d, 0), fam(d, 1), rules_decode(d->nums.at(0))); });
  register_skeleton_builder("do.const", [=](Desc d) -> TSkeleton { return const_do(np(d, 0), fam(d, 1), build_skeleton(d->kids.at(2))); });
  register_skeleton_builder("do.arith", [](Desc d) -> TSkeleton {
    return arith_do(ArithFn{static_cast<ArithFn::Kind>(static_cast<int>(d->nums.at(0))), d->nums.at(1)});
  });
  register_skeleton_builder("do.trivial", [=](Desc d) -> TSkeleton { return trivial_do(np(d, 0), fam(d, 1)); });
  register_skeleton_builder("do.compose", [=](Desc d) -> TSkeleton {
    return compose_do(build_do(d->kids.at(0)), build_do(d->kids.at(1)), fam(d, 2));
  });
  register_skeleton_builder("do.promote", [](Desc d) -> TSkeleton { return promote_do(build_do(d->kids.at(0))); });
  register_skeleton_builder("do.pair", [=](Desc d) -> TSkeleton {
    return pair_do(build_do(d->kids.at(0)), build_do(d->kids.at(1)), fam(d, 2));
  });
  register_family_builder("fam.after", [](Desc d) { return fam_after(build_do(d->kids.at(0)), dep_from_desc(d->kids.at(1))); });

  set_builtin_hook(Builtin::CodMap, [](const std::vector<Nat>& a) -> std::optional<Nat> {
    if (a.size() < 2) return Nat(0);
    static std::mutex mu;
    static std::map<Nat, Do> cache;
    Do x;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(a[0]);
      if (it != cache.end()) x = it->second;
    }
    try {
      if (!x) {
        auto d = desc_decode(a[0]);
        if (!d) return Nat(0);
        x = build_do(*d);
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(a[0], x);
      }
      return canon_code(x->cod(a[1]));
    } catch (const CtgError&) {
      return std::nullopt;
    }
  });

  // Sample morphisms standing in for the (not r.e.) canonical points of !̂N ⇛ N.
  register_pool(g_rlimp(g_sbang(g_nat()), g_nat()),
                {arith_do({ArithFn::Succ}), arith_do({ArithFn::Double}), arith_do({ArithFn::Id}),
                 arith_do({ArithFn::Const, 7})});
}

}  // namespace ctg
