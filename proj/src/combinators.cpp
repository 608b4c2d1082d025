#include "ctg/combinators.hpp"

#include "ctg/effectivity.hpp"

#include <map>
#include <unordered_map>

namespace ctg {

namespace {

Occ pmove(Tag t, QA qa, std::size_t j) { return Occ{Move{t, Op::P, qa}, static_cast<std::uint32_t>(j)}; }

WinningCert cert_of(std::initializer_list<TSkeleton> xs) {
  WinningCert c = WinningCert::winning();
  for (const auto& x : xs) c = meet(c, x->cert());
  return c;
}

std::uint32_t partner(std::uint32_t i) { return i % 2 == 1 ? i + 1 : i - 1; }

Tag replace_q(Tag t, Tag by) {
  switch (t->kind) {
    case TagKind::Sym: return t == t_q() ? by : t;
    case TagKind::Left: return t_left(replace_q(t->a, by));
    case TagKind::Right: return t_right(replace_q(t->a, by));
    case TagKind::Exp: return t_exp(t->num, replace_q(t->a, by));
    case TagKind::Real: return t_real(t->num, replace_q(t->a, by));
    default: return t;
  }
}

Tag innermost(Tag t) {
  while (t->kind == TagKind::Left || t->kind == TagKind::Right || t->kind == TagKind::Exp || t->kind == TagKind::Real)
    t = t->a;
  return t;
}

}  // namespace

// ---------------------------------------------------------------- paths

Path path_cat(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Tag apply_path(const Path& p, Tag t) {
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    switch (it->kind) {
      case TagKind::Left: t = t_left(t); break;
      case TagKind::Right: t = t_right(t); break;
      case TagKind::Exp: t = t_exp(it->num, t); break;
      default: break;
    }
  }
  return t;
}

std::optional<Tag> strip_path(const Path& p, Tag t) {
  for (const PathStep& st : p) {
    if (t->kind != st.kind) return std::nullopt;
    if (st.kind == TagKind::Exp && t->num != st.num) return std::nullopt;
    t = t->a;
  }
  return t;
}

Nat path_code(const Path& p) {
  std::vector<Nat> xs;
  for (const auto& st : p) xs.push_back(pair(static_cast<int>(st.kind), st.num));
  return encode_list(xs);
}

Path path_decode(const Nat& n) {
  std::vector<Nat> xs;
  Path p;
  if (!decode_list(n, xs)) return p;
  for (const Nat& x : xs) {
    Nat k, v;
    if (unpair(x, k, v)) p.push_back(PathStep{static_cast<TagKind>(static_cast<int>(k)), v});
  }
  return p;
}

std::string path_text(const Path& p) {
  std::string s;
  for (const auto& st : p) {
    if (!s.empty()) s += ".";
    s += st.kind == TagKind::Left ? "L" : st.kind == TagKind::Right ? "R" : "E" + to_string(st.num);
  }
  return s.empty() ? "-" : s;
}

// ---------------------------------------------------------------- points

TSkeleton FlatGame::value(Tag x) const { return flat_value(game, x); }
TSkeleton FlatGame::bottom() const { return bot(game); }

FlatGame mk_flat(const std::vector<Tag>& values) { return FlatGame{g_flat(values)}; }

TSkeleton flat_value(const GameExpr& g, Tag x) {
  Desc d = mk_desc("flatval", {tag_code(x)}, {g->desc});
  return intern_skeleton(d, [&] {
    return make_skeleton(g, d, WinningCert::winning(), [x](const JSeq& s) -> std::optional<Occ> {
      if (s.size() == 1) return pmove(x, QA::A, 1);
      return std::nullopt;
    });
  });
}

TSkeleton num(const Nat& n) {
  Desc d = mk_desc("num", {n});
  return intern_skeleton(d, [&] {
    Tag t = t_num(n);
    return make_skeleton(g_nat(), d, WinningCert::winning(), [t](const JSeq& s) -> std::optional<Occ> {
      if (s.size() == 1) return pmove(t, QA::A, 1);
      return std::nullopt;
    });
  });
}

TSkeleton bot(const GameExpr& g) {
  Desc d = mk_desc("bot", {}, {g->desc});
  return intern_skeleton(d, [&] {
    WinningCert c{false, true, true, WinningCert::Prov::ByConstruction};
    return make_skeleton(g, d, c, [](const JSeq&) -> std::optional<Occ> { return std::nullopt; });
  });
}

TSkeleton top() {
  Desc d = mk_desc("top");
  return intern_skeleton(d, [&] {
    return make_skeleton(g_one(), d, WinningCert::winning(), [](const JSeq&) -> std::optional<Occ> { return std::nullopt; });
  });
}

// ---------------------------------------------------------------- arithmetic

Nat ArithFn::apply(const Nat& n) const {
  switch (kind) {
    case Succ: return n + 1;
    case Double: return 2 * n;
    case Id: return n;
    case Const: return k;
    case Pred: return n.is_zero() ? Nat(0) : Nat(n - 1);
    case AddK: return n + k;
    case MulK: return n * k;
    case UExtract: return u_extract(n);
  }
  return 0;
}

std::string ArithFn::name() const {
  switch (kind) {
    case Succ: return "succ";
    case Double: return "double";
    case Id: return "id";
    case Const: return "const" + to_string(k);
    case Pred: return "pred";
    case AddK: return "add" + to_string(k);
    case MulK: return "mul" + to_string(k);
    case UExtract: return "U";
  }
  return "?";
}

TSkeleton arith_sk(const ArithFn& fn, const GameExpr& game, const Path& query) {
  Desc d = mk_desc("arith", {static_cast<int>(fn.kind), fn.k, path_code(query)}, {game->desc});
  return intern_skeleton(d, [&] {
    Tag ask = t_left(apply_path(query, t_q()));
    return make_skeleton(game, d, WinningCert::winning(), [fn, ask, query](const JSeq& s) -> std::optional<Occ> {
      if (s.size() == 1) {
        if (s.move(1).tag != t_right(t_q())) return std::nullopt;
        if (!fn.queries()) return pmove(t_right(t_num(fn.apply(0))), QA::A, 1);
        return pmove(ask, QA::Q, 1);
      }
      if (s.size() == 3 && fn.queries() && s.move(2).tag == ask && s.just(3) == 2) {
        Tag t = s.move(3).tag;
        if (t->kind != TagKind::Left) return std::nullopt;
        auto v = strip_path(query, t->a);
        if (!v || (*v)->kind != TagKind::Num) return std::nullopt;
        return pmove(t_right(t_num(fn.apply((*v)->num))), QA::A, 1);
      }
      return std::nullopt;
    });
  });
}

TSkeleton succ_sk() { return arith_sk({ArithFn::Succ}, g_limp(g_nat(), g_nat()), {}); }
TSkeleton double_sk() { return arith_sk({ArithFn::Double}, g_limp(g_nat(), g_nat()), {}); }
TSkeleton succ_bang_sk(const ArithFn& fn) {
  return arith_sk(fn, g_imp(g_nat(), g_nat()), {PathStep{TagKind::Exp, 0}});
}

TSkeleton pazo_sk() {
  Desc d = mk_desc("pazo");
  return intern_skeleton(d, [&] {
    GameExpr g = g_imp(g_imp(g_nat(), g_nat()), g_nat());
    return make_skeleton(g, d, WinningCert::winning(), [](const JSeq& s) -> std::optional<Occ> {
      const std::size_t n = s.size();
      auto ask_f = [](const Nat& j) { return t_left(t_exp(j, t_right(t_q()))); };
      if (n == 1) return pmove(ask_f(0), QA::Q, 1);
      Tag last = s.move(n).tag;
      if (last->kind != TagKind::Left || last->a->kind != TagKind::Exp) return std::nullopt;
      const Nat j = last->a->num;
      Tag inner = last->a->a;
      // f asks for its argument in its own thread i: we answer with j.
      if (inner->kind == TagKind::Left && inner->a->kind == TagKind::Exp && inner->a->a == t_q())
        return pmove(t_left(t_exp(j, t_left(t_exp(inner->a->num, t_num(j))))), QA::A, n);
      if (inner->kind == TagKind::Right && inner->a->kind == TagKind::Num) {
        if (j == 0) return pmove(ask_f(1), QA::Q, 1);
        if (j == 1) {
          for (std::size_t i = 1; i < n; ++i) {
            Tag t = s.move(i).tag;
            if (t->kind == TagKind::Left && t->a->kind == TagKind::Exp && t->a->num == 0 &&
                t->a->a->kind == TagKind::Right && t->a->a->a->kind == TagKind::Num)
              return pmove(t_right(t_num(t->a->a->a->num + inner->a->num)), QA::A, 1);
          }
        }
      }
      return std::nullopt;
    });
  });
}

// ---------------------------------------------------------------- copycats

Nat rules_code(const CopyRules& rules) {
  std::vector<Nat> xs;
  for (const auto& [c, dd] : rules) xs.push_back(pair(path_code(c), path_code(dd)));
  return encode_list(xs);
}

CopyRules rules_decode(const Nat& n) {
  std::vector<Nat> xs;
  CopyRules r;
  decode_list(n, xs);
  for (const Nat& x : xs) {
    Nat a, b;
    if (unpair(x, a, b)) r.emplace_back(path_decode(a), path_decode(b));
  }
  return r;
}

namespace {

std::optional<Occ> copycat_respond(const CopyRules& rules, const JSeq& s) {
  const std::size_t n = s.size();
  const Move& m = s.move(n);
  const std::size_t root = root_of(s, n);
  Tag rt = s.move(root).tag;
  if (rt->kind != TagKind::Right) return std::nullopt;
  const std::pair<Path, Path>* rule = nullptr;
  for (const auto& r : rules)
    if (strip_path(r.first, rt->a)) {
      rule = &r;
      break;
    }
  if (!rule) return std::nullopt;
  const std::uint32_t j = s.just(n) == 0 ? static_cast<std::uint32_t>(n) : partner(s.just(n));
  if (m.tag->kind == TagKind::Right) {
    auto core = strip_path(rule->first, m.tag->a);
    if (!core) return std::nullopt;
    return pmove(t_left(apply_path(rule->second, *core)), m.qa, j);
  }
  if (m.tag->kind == TagKind::Left && s.just(n) != 0) {
    auto core = strip_path(rule->second, m.tag->a);
    if (!core) return std::nullopt;
    return pmove(t_right(apply_path(rule->first, *core)), m.qa, j);
  }
  return std::nullopt;
}

}  // namespace

TSkeleton retag_copycat(const GameExpr& game, const CopyRules& rules) {
  Desc d = mk_desc("rcc", {rules_code(rules)}, {game->desc});
  return intern_skeleton(d, [&] {
    return make_skeleton(game, d, WinningCert::winning(),
                         [rules](const JSeq& s) { return copycat_respond(rules, s); });
  });
}

TSkeleton copycat_sk(const GameExpr& a) { return retag_copycat(g_limp(a, a), {{{}, {}}}); }

TSkeleton dereliction_sk(const GameExpr& a, const Nat& i) {
  return retag_copycat(g_limp(g_bang(a), a), {{{}, {PathStep{TagKind::Exp, i}}}});
}

// ---------------------------------------------------------------- composition

GameExpr dom_of(const TSkeleton& s) {
  const GameExpr& g = s->game();
  return g->kind == GK::Limp ? g->a : nullptr;
}

GameExpr cod_of(const TSkeleton& s) {
  const GameExpr& g = s->game();
  return g->kind == GK::Limp ? g->b : nullptr;
}

namespace {

// Parallel composition plus hiding. The interaction sequence u is kept per
// visible even prefix so each response replays only the newest O-move.
class ComposeSk final : public SkeletonImpl {
 public:
  ComposeSk(TSkeleton phi, TSkeleton psi, std::uint64_t fuel, GameExpr g, Desc d)
      : SkeletonImpl(std::move(g), d, cert_of({phi, psi})), phi_(std::move(phi)), psi_(std::move(psi)), fuel_(fuel) {}

 protected:
  std::optional<Occ> respond(const JSeq& s) const override {
    auto base = state_for(s.prefix(s.size() - 1));
    if (!base) return std::nullopt;
    State st = *base;
    auto r = feed(st, s.occ.back());
    if (r) {
      JSeq key = s.plus(r->m, r->j);
      std::lock_guard<std::mutex> lock(mu_);
      states_.emplace(std::move(key), std::make_shared<const State>(std::move(st)));
    }
    return r;
  }

 private:
  enum Comp : std::uint8_t { A, B, C };
  struct UMove {
    Move core;  // polarity local to its component game
    Comp comp;
  };
  struct State {
    std::vector<UMove> u;
    std::vector<std::uint32_t> uj;
    std::vector<std::uint32_t> in_phi, in_psi, in_vis;  // u index -> view index (0 = absent)
    JSeq phi_view, psi_view, vis;
    std::vector<std::uint32_t> phi_back, psi_back, vis_back;  // view index -> u index
  };

  std::shared_ptr<const State> state_for(const JSeq& even) const {
    if (even.empty()) return std::make_shared<const State>();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = states_.find(even);
      if (it != states_.end()) return it->second;
    }
    auto prev = state_for(even.prefix(even.size() - 2));
    if (!prev) return nullptr;
    State st = *prev;
    auto r = feed(st, even.occ[even.size() - 2]);
    if (!r || !(*r == even.occ.back())) return nullptr;
    auto out = std::make_shared<const State>(std::move(st));
    std::lock_guard<std::mutex> lock(mu_);
    states_.emplace(even, out);
    return out;
  }

  static void append(State& st, const UMove& um, std::uint32_t uj) {
    st.u.push_back(um);
    st.uj.push_back(uj);
    const auto idx = static_cast<std::uint32_t>(st.u.size());
    auto view_j = [&](const std::vector<std::uint32_t>& in) -> std::uint32_t { return uj == 0 ? 0 : in[uj - 1]; };
    std::uint32_t pj = 0, qj = 0, vj = 0;
    if (um.comp != C) {
      pj = view_j(st.in_phi);
      Move mm = um.comp == A ? wrap_dom(um.core) : wrap_right(um.core);
      st.phi_view.push(mm, pj);
      st.phi_back.push_back(idx);
      st.in_phi.push_back(static_cast<std::uint32_t>(st.phi_view.size()));
    } else {
      st.in_phi.push_back(0);
    }
    if (um.comp != A) {
      qj = view_j(st.in_psi);
      Move mm = um.comp == B ? wrap_dom(um.core) : wrap_right(um.core);
      st.psi_view.push(mm, qj);
      st.psi_back.push_back(idx);
      st.in_psi.push_back(static_cast<std::uint32_t>(st.psi_view.size()));
    } else {
      st.in_psi.push_back(0);
    }
    if (um.comp != B) {
      std::uint32_t k = uj;
      while (k != 0 && st.u[k - 1].comp == B) k = st.uj[k - 1];
      vj = k == 0 ? 0 : st.in_vis[k - 1];
      Move mm = um.comp == A ? wrap_dom(um.core) : wrap_right(um.core);
      st.vis.push(mm, vj);
      st.vis_back.push_back(idx);
      st.in_vis.push_back(static_cast<std::uint32_t>(st.vis.size()));
    } else {
      st.in_vis.push_back(0);
    }
  }

  std::optional<Occ> feed(State& st, const Occ& o) const {
    const Tag t = o.m.tag;
    if (t->kind != TagKind::Left && t->kind != TagKind::Right) return std::nullopt;
    const bool in_a = t->kind == TagKind::Left;
    const std::uint32_t uj = o.j == 0 ? 0 : st.vis_back.at(o.j - 1);
    append(st, UMove{Move{t->a, in_a ? flip(o.m.op) : o.m.op, o.m.qa}, in_a ? A : C}, uj);
    bool phi_turn = in_a;
    for (std::uint64_t step = 0;; ++step) {
      if (step > fuel_) throw Divergence("composition exceeded interaction fuel " + std::to_string(fuel_));
      const TSkeleton& cur = phi_turn ? phi_ : psi_;
      const JSeq& view = phi_turn ? st.phi_view : st.psi_view;
      auto r = cur->next(view);
      if (!r) return std::nullopt;
      const std::vector<std::uint32_t>& back = phi_turn ? st.phi_back : st.psi_back;
      const std::uint32_t rj = r->j == 0 ? 0 : back.at(r->j - 1);
      const Tag rt = r->m.tag;
      if (rt->kind != TagKind::Left && rt->kind != TagKind::Right) return std::nullopt;
      const bool dom = rt->kind == TagKind::Left;
      Comp comp = phi_turn ? (dom ? A : B) : (dom ? B : C);
      Move core{rt->a, dom ? flip(r->m.op) : r->m.op, r->m.qa};
      append(st, UMove{core, comp}, rj);
      if (comp != B) return st.vis.occ.back();
      phi_turn = !phi_turn;
    }
  }

  TSkeleton phi_, psi_;
  std::uint64_t fuel_;
  mutable std::mutex mu_;
  mutable std::unordered_map<JSeq, std::shared_ptr<const State>> states_;
};

}  // namespace

TSkeleton compose_sk(const TSkeleton& phi, const TSkeleton& psi, std::uint64_t fuel) {
  Desc d = mk_desc("compose", {fuel}, {phi->desc() ? phi->desc() : mk_desc("opaque"), psi->desc() ? psi->desc() : mk_desc("opaque")});
  auto make = [&]() -> TSkeleton {
    GameExpr a = dom_of(phi), c = cod_of(psi);
    if (!a || !c) throw ComponentMismatch("compose_sk: components must be on linear implications");
    return std::make_shared<ComposeSk>(phi, psi, fuel, g_limp(a, c), d);
  };
  if (!phi->desc() || !psi->desc()) {
    auto s = make();
    return s;
  }
  return intern_skeleton(d, make);
}

// ---------------------------------------------------------------- tensor / pairing

namespace {

// Restriction of s to the moves selected by `sel` (returning the local tag),
// with the index map back into s.
struct Local {
  JSeq seq;
  std::vector<std::size_t> back;
};

template <class Sel>
Local local_view(const JSeq& s, Sel sel) {
  std::vector<std::size_t> keep;
  std::vector<Tag> tags;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    auto t = sel(s.move(i).tag);
    if (t) {
      keep.push_back(i);
      tags.push_back(*t);
    }
  }
  Local l;
  l.seq = jsub(s, keep, l.back);
  for (std::size_t k = 0; k < tags.size(); ++k) l.seq.occ[k].m.tag = tags[k];
  return l;
}

std::optional<Occ> map_back(const std::optional<Occ>& r, const Local& l, Tag (*wrap)(Tag, const void*), const void* ctx) {
  if (!r) return std::nullopt;
  Occ o = *r;
  o.m.tag = wrap(r->m.tag, ctx);
  o.j = r->j == 0 ? 0 : static_cast<std::uint32_t>(l.back.at(r->j - 1));
  return o;
}

void check_consistent(const TSkeleton& comp, const JSeq& t) {
  for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
    auto r = comp->next(t.prefix(k));
    if (!r || !(*r == t.occ[k])) throw ComponentMismatch("restriction is not a play of the component skeleton");
  }
}

}  // namespace

TSkeleton tensor_sk(const TSkeleton& phi, const TSkeleton& sigma) {
  Desc d = mk_desc("tensor", {}, {phi->desc(), sigma->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = g_limp(g_tensor(dom_of(phi), dom_of(sigma)), g_tensor(cod_of(phi), cod_of(sigma)));
    return make_skeleton(g, d, cert_of({phi, sigma}), [phi, sigma](const JSeq& s) -> std::optional<Occ> {
      Tag last = s.move(s.size()).tag;
      const bool left = last->a->kind == TagKind::Left;
      const TagKind side = left ? TagKind::Left : TagKind::Right;
      Local l = local_view(s, [side](Tag t) -> std::optional<Tag> {
        if (t->a->kind != side) return std::nullopt;
        return t->kind == TagKind::Left ? t_left(t->a->a) : t_right(t->a->a);
      });
      const TSkeleton& comp = left ? phi : sigma;
      check_consistent(comp, l.seq);
      auto wrap = left ? +[](Tag t, const void*) { return t->kind == TagKind::Left ? t_left(t_left(t->a)) : t_right(t_left(t->a)); }
                       : +[](Tag t, const void*) { return t->kind == TagKind::Left ? t_left(t_right(t->a)) : t_right(t_right(t->a)); };
      return map_back(comp->next(l.seq), l, wrap, nullptr);
    });
  });
}

TSkeleton pair_sk(const TSkeleton& phi, const TSkeleton& tau) {
  Desc d = mk_desc("pair", {}, {phi->desc(), tau->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = g_limp(dom_of(phi), g_prod(cod_of(phi), cod_of(tau)));
    return make_skeleton(g, d, cert_of({phi, tau}), [phi, tau](const JSeq& s) -> std::optional<Occ> {
      Tag first = s.move(1).tag;
      if (first->kind != TagKind::Right) return std::nullopt;
      const bool left = first->a->kind == TagKind::Left;
      const TagKind side = left ? TagKind::Left : TagKind::Right;
      Local l = local_view(s, [side](Tag t) -> std::optional<Tag> {
        if (t->kind == TagKind::Left) return t;
        if (t->a->kind != side) return std::nullopt;
        return t_right(t->a->a);
      });
      if (l.seq.size() != s.size()) return std::nullopt;
      auto wrap = left ? +[](Tag t, const void*) { return t->kind == TagKind::Left ? t : t_right(t_left(t->a)); }
                       : +[](Tag t, const void*) { return t->kind == TagKind::Left ? t : t_right(t_right(t->a)); };
      return map_back((left ? phi : tau)->next(l.seq), l, wrap, nullptr);
    });
  });
}

TSkeleton ppair(const TSkeleton& a, const TSkeleton& b) {
  Desc d = mk_desc("ppair", {}, {a->desc(), b->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = g_prod(a->game(), b->game());
    return make_skeleton(g, d, cert_of({a, b}), [a, b](const JSeq& s) -> std::optional<Occ> {
      const bool left = s.move(1).tag->kind == TagKind::Left;
      const TagKind side = left ? TagKind::Left : TagKind::Right;
      Local l = local_view(s, [side](Tag t) -> std::optional<Tag> {
        if (t->kind != side) return std::nullopt;
        return t->a;
      });
      if (l.seq.size() != s.size()) return std::nullopt;
      auto wrap = left ? +[](Tag t, const void*) { return t_left(t); } : +[](Tag t, const void*) { return t_right(t); };
      return map_back((left ? a : b)->next(l.seq), l, wrap, nullptr);
    });
  });
}

namespace {

TSkeleton side_of(const TSkeleton& p, bool left) {
  if (p->desc() && p->desc()->head == "ppair") return build_skeleton(p->desc()->kids[left ? 0 : 1]);
  Desc d = mk_desc(left ? "left_of" : "right_of", {}, {p->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = left ? p->game()->a : p->game()->b;
    return make_skeleton(g, d, p->cert(), [p, left](const JSeq& s) -> std::optional<Occ> {
      JSeq w = s;
      for (auto& o : w.occ) o.m.tag = left ? t_left(o.m.tag) : t_right(o.m.tag);
      auto r = p->next(w);
      if (!r || r->m.tag->kind != (left ? TagKind::Left : TagKind::Right)) return std::nullopt;
      r->m.tag = r->m.tag->a;
      return r;
    });
  });
}

}  // namespace

TSkeleton left_of(const TSkeleton& p) { return side_of(p, true); }
TSkeleton right_of(const TSkeleton& p) { return side_of(p, false); }

// ---------------------------------------------------------------- promotion

TSkeleton promote_sk(const TSkeleton& phi) {
  Desc d = mk_desc("promote", {}, {phi->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = g_limp(dom_of(phi), g_bang(cod_of(phi)));
    return make_skeleton(g, d, phi->cert(), [phi](const JSeq& s) -> std::optional<Occ> {
      Tag last = s.move(s.size()).tag;
      Nat j;
      if (last->kind == TagKind::Right) {
        j = last->a->num;
      } else {
        j = cantor_inv(last->a->num).second;
      }
      Local l = local_view(s, [&j](Tag t) -> std::optional<Tag> {
        if (t->kind == TagKind::Right) {
          if (t->a->num != j) return std::nullopt;
          return t_right(t->a->a);
        }
        auto [i, jj] = cantor_inv(t->a->num);
        if (jj != j) return std::nullopt;
        return t_left(t_exp(i, t->a->a));
      });
      auto r = phi->next(l.seq);
      if (!r) return std::nullopt;
      Occ o = *r;
      Tag t = r->m.tag;
      if (t->kind == TagKind::Right)
        o.m.tag = t_right(t_exp(j, t->a));
      else if (t->kind == TagKind::Left && t->a->kind == TagKind::Exp)
        o.m.tag = t_left(t_exp(cantor(t->a->num, j), t->a->a));
      else
        return std::nullopt;
      o.j = r->j == 0 ? 0 : static_cast<std::uint32_t>(l.back.at(r->j - 1));
      return o;
    });
  });
}

namespace {

std::optional<Occ> thread_respond(const TSkeleton& inner, const JSeq& s) {
  const std::size_t r = root_of(s, s.size());
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i <= s.size(); ++i)
    if (root_of(s, i) == r) keep.push_back(i);
  std::vector<std::size_t> back;
  JSeq t = jsub(s, keep, back);
  auto resp = inner->next(t);
  if (!resp) return std::nullopt;
  Occ o = *resp;
  o.j = resp->j == 0 ? 0 : static_cast<std::uint32_t>(back.at(resp->j - 1));
  return o;
}

}  // namespace

TSkeleton hat(const TSkeleton& sigma) {
  if (sigma->desc() && sigma->desc()->head == "unhat") return build_skeleton(sigma->desc()->kids[0]);
  Desc d = mk_desc("hat", {}, {sigma->desc()});
  return intern_skeleton(d, [&] {
    return make_skeleton(g_sbang(sigma->game()), d, sigma->cert(),
                         [sigma](const JSeq& s) { return thread_respond(sigma, s); });
  });
}

TSkeleton unhat(const TSkeleton& theta) {
  if (theta->desc() && theta->desc()->head == "hat") return build_skeleton(theta->desc()->kids[0]);
  Desc d = mk_desc("unhat", {}, {theta->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = theta->game()->kind == GK::SBang ? theta->game()->a : theta->game();
    return make_skeleton(g, d, theta->cert(), [theta](const JSeq& s) { return theta->next(s); });
  });
}

TSkeleton promote_hat(const TSkeleton& phi) {
  Desc d = mk_desc("phat", {}, {phi->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = g_limp(dom_of(phi), g_sbang(cod_of(phi)));
    return make_skeleton(g, d, phi->cert(), [phi](const JSeq& s) { return thread_respond(phi, s); });
  });
}

// ---------------------------------------------------------------- notations

TSkeleton sk_one(const TSkeleton& sigma) {
  Desc d = mk_desc("sk1", {}, {sigma->desc()});
  return intern_skeleton(d, [&] {
    return make_skeleton(g_limp(g_one(), sigma->game()), d, sigma->cert(), [sigma](const JSeq& s) -> std::optional<Occ> {
      JSeq t = s;
      for (auto& o : t.occ) {
        if (o.m.tag->kind != TagKind::Right) return std::nullopt;
        o.m.tag = o.m.tag->a;
      }
      auto r = sigma->next(t);
      if (!r) return std::nullopt;
      r->m.tag = t_right(r->m.tag);
      return r;
    });
  });
}

TSkeleton sk_bang_one(const TSkeleton& sigma) {
  Desc d = mk_desc("skb1", {}, {sigma->desc()});
  return intern_skeleton(d, [&] {
    auto inner = sk_one(sigma);
    return make_skeleton(g_limp(g_bang(g_one()), sigma->game()), d, sigma->cert(),
                         [inner](const JSeq& s) { return inner->next(s); });
  });
}

TSkeleton unlift(const TSkeleton& phi) {
  const GameExpr g = cod_of(phi);
  if (!g) throw ComponentMismatch("unlift: expected a skeleton on 1 -o G or !1 -o G");
  Desc d = mk_desc("unlift", {}, {phi->desc()});
  return intern_skeleton(d, [&] {
    return make_skeleton(g, d, phi->cert(), [phi](const JSeq& s) -> std::optional<Occ> {
      JSeq t = s;
      for (auto& o : t.occ) o.m.tag = t_right(o.m.tag);
      auto r = phi->next(t);
      if (!r || r->m.tag->kind != TagKind::Right) return std::nullopt;
      r->m.tag = r->m.tag->a;
      return r;
    });
  });
}

TSkeleton dagger_point(const TSkeleton& sigma) {
  Desc d = mk_desc("dagger", {}, {sigma->desc()});
  return intern_skeleton(d, [&] {
    return make_skeleton(g_bang(sigma->game()), d, sigma->cert(), [sigma](const JSeq& s) -> std::optional<Occ> {
      const Nat j = s.move(s.size()).tag->num;
      Local l = local_view(s, [&j](Tag t) -> std::optional<Tag> {
        if (t->kind != TagKind::Exp || t->num != j) return std::nullopt;
        return t->a;
      });
      auto r = sigma->next(l.seq);
      if (!r) return std::nullopt;
      Occ o = *r;
      o.m.tag = t_exp(j, r->m.tag);
      o.j = r->j == 0 ? 0 : static_cast<std::uint32_t>(l.back.at(r->j - 1));
      return o;
    });
  });
}

TSkeleton ddagger(const TSkeleton& theta) {
  if (!theta->cert().innocent) throw NotInnocent("ddagger requires an innocence certificate");
  if (theta->desc() && theta->desc()->head == "dagger") return build_skeleton(theta->desc()->kids[0]);
  Desc d = mk_desc("ddagger", {}, {theta->desc()});
  return intern_skeleton(d, [&] {
    GameExpr g = theta->game()->kind == GK::Bang ? theta->game()->a : theta->game();
    return make_skeleton(g, d, theta->cert(), [theta](const JSeq& s) -> std::optional<Occ> {
      JSeq t = s;
      for (auto& o : t.occ) o.m.tag = t_exp(0, o.m.tag);
      auto r = theta->next(t);
      if (!r || r->m.tag->kind != TagKind::Exp || r->m.tag->num != 0) return std::nullopt;
      r->m.tag = r->m.tag->a;
      return r;
    });
  });
}

TSkeleton compose_point(const TSkeleton& alpha, const TSkeleton& psi) {
  return unlift(compose_sk(sk_one(alpha), psi));
}

TSkeleton tensor_point(const TSkeleton& a, const TSkeleton& b) {
  Desc d = mk_desc("tpoint", {}, {a->desc(), b->desc()});
  return intern_skeleton(d, [&] {
    return make_skeleton(g_tensor(a->game(), b->game()), d, cert_of({a, b}), [a, b](const JSeq& s) -> std::optional<Occ> {
      const TagKind side = s.move(s.size()).tag->kind;
      Local l = local_view(s, [side](Tag t) -> std::optional<Tag> {
        if (t->kind != side) return std::nullopt;
        return t->a;
      });
      auto r = (side == TagKind::Left ? a : b)->next(l.seq);
      if (!r) return std::nullopt;
      Occ o = *r;
      o.m.tag = side == TagKind::Left ? t_left(r->m.tag) : t_right(r->m.tag);
      o.j = r->j == 0 ? 0 : static_cast<std::uint32_t>(l.back.at(r->j - 1));
      return o;
    });
  });
}

// ---------------------------------------------------------------- reading

std::optional<Nat> read(const TSkeleton& point) {
  JSeq s;
  s.push(q_move(), 0);
  std::optional<Occ> r;
  try {
    r = point->next(s);
  } catch (const CtgError&) {
    return std::nullopt;
  }
  if (!r || r->m.tag->kind != TagKind::Num) return std::nullopt;
  return r->m.tag->num;
}

std::optional<Nat> extension_plain(const TSkeleton& phi, const Nat& n) {
  JSeq s;
  s.push(Move{t_right(t_q()), Op::O, QA::Q}, 0);
  for (int step = 0; step < 1000; ++step) {
    std::optional<Occ> r;
    try {
      r = phi->next(s);
    } catch (const CtgError&) {
      return std::nullopt;
    }
    if (!r) return std::nullopt;
    s.push(r->m, r->j);
    Tag t = r->m.tag;
    if (t->kind == TagKind::Right && t->a->kind == TagKind::Num) return t->a->num;
    if (innermost(t) != t_q()) return std::nullopt;
    s.push(Move{replace_q(t, t_num(n)), Op::O, QA::A}, static_cast<std::uint32_t>(s.size()));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- builders

void register_combinator_builders() {
  auto kid = [](Desc d, std::size_t i) { return build_skeleton(d->kids.at(i)); };
  register_skeleton_builder("num", [](Desc d) { return num(d->nums.at(0)); });
  register_skeleton_builder("top", [](Desc) { return top(); });
  register_skeleton_builder("bot", [](Desc d) { return bot(game_from_desc(d->kids.at(0))); });
  register_skeleton_builder("flatval", [](Desc d) {
    return flat_value(game_from_desc(d->kids.at(0)), *tag_decode(d->nums.at(0)));
  });
  register_skeleton_builder("arith", [](Desc d) {
    ArithFn fn{static_cast<ArithFn::Kind>(static_cast<int>(d->nums.at(0))), d->nums.at(1)};
    return arith_sk(fn, game_from_desc(d->kids.at(0)), path_decode(d->nums.at(2)));
  });
  register_skeleton_builder("pazo", [](Desc) { return pazo_sk(); });
  register_skeleton_builder("rcc", [](Desc d) {
    return retag_copycat(game_from_desc(d->kids.at(0)), rules_decode(d->nums.at(0)));
  });
  register_skeleton_builder("compose", [kid](Desc d) {
    return compose_sk(kid(d, 0), kid(d, 1), static_cast<std::uint64_t>(d->nums.at(0)));
  });
  register_skeleton_builder("tensor", [kid](Desc d) { return tensor_sk(kid(d, 0), kid(d, 1)); });
  register_skeleton_builder("pair", [kid](Desc d) { return pair_sk(kid(d, 0), kid(d, 1)); });
  register_skeleton_builder("ppair", [kid](Desc d) { return ppair(kid(d, 0), kid(d, 1)); });
  register_skeleton_builder("left_of", [kid](Desc d) { return left_of(kid(d, 0)); });
  register_skeleton_builder("right_of", [kid](Desc d) { return right_of(kid(d, 0)); });
  register_skeleton_builder("promote", [kid](Desc d) { return promote_sk(kid(d, 0)); });
  register_skeleton_builder("phat", [kid](Desc d) { return promote_hat(kid(d, 0)); });
  register_skeleton_builder("hat", [kid](Desc d) { return hat(kid(d, 0)); });
  register_skeleton_builder("unhat", [kid](Desc d) { return unhat(kid(d, 0)); });
  register_skeleton_builder("sk1", [kid](Desc d) { return sk_one(kid(d, 0)); });
  register_skeleton_builder("skb1", [kid](Desc d) { return sk_bang_one(kid(d, 0)); });
  register_skeleton_builder("unlift", [kid](Desc d) { return unlift(kid(d, 0)); });
  register_skeleton_builder("dagger", [kid](Desc d) { return dagger_point(kid(d, 0)); });
  register_skeleton_builder("ddagger", [kid](Desc d) { return ddagger(kid(d, 0)); });
  register_skeleton_builder("tpoint", [kid](Desc d) { return tensor_point(kid(d, 0), kid(d, 1)); });
}

}  // namespace ctg
