#include "ctg/game.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace ctg {

namespace {

const char* head_of(GK k) {
  switch (k) {
    case GK::One: return "g.one";
    case GK::Zero: return "g.zero";
    case GK::Nat: return "g.nat";
    case GK::Flat: return "g.flat";
    case GK::Tensor: return "g.tensor";
    case GK::Prod: return "g.prod";
    case GK::Limp: return "g.limp";
    case GK::Bang: return "g.bang";
    case GK::SBang: return "g.sbang";
    case GK::RLimp: return "g.rlimp";
  }
  return "g.?";
}

// Interned by description so equal games share one node.
GameExpr make(GK k, std::vector<Tag> vals, GameExpr a, GameExpr b) {
  std::vector<Nat> nums;
  for (Tag t : vals) nums.push_back(tag_code(t));
  std::vector<Desc> kids;
  if (a) kids.push_back(a->desc);
  if (b) kids.push_back(b->desc);
  Desc d = mk_desc(head_of(k), std::move(nums), std::move(kids));
  static std::mutex mu;
  static std::map<Desc, GameExpr>* memo = new std::map<Desc, GameExpr>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo->find(d);
  if (it != memo->end()) return it->second;
  auto g = std::make_shared<GameNode>(GameNode{k, std::move(vals), std::move(a), std::move(b), d});
  memo->emplace(d, g);
  return g;
}

Move unwrap(const Move& m, bool flip_op) { return {m.tag->a, flip_op ? flip(m.op) : m.op, m.qa}; }

bool flat_answer(const GameNode& g, Tag t) {
  if (g.kind == GK::Nat) return t->kind == TagKind::Num;
  if (g.kind == GK::Flat) return std::find(g.vals.begin(), g.vals.end(), t) != g.vals.end();
  return false;
}

bool contains_(const GameNode& g, const Move& m);
bool initial_(const GameNode& g, const Move& m);
bool enables_(const GameNode& g, const Move& m, const Move& n);

bool contains_(const GameNode& g, const Move& m) {
  const Tag t = m.tag;
  switch (g.kind) {
    case GK::One: return false;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat:
      if (t == t_q()) return m.op == Op::O && m.qa == QA::Q;
      return m.op == Op::P && m.qa == QA::A && flat_answer(g, t);
    case GK::Tensor:
    case GK::Prod:
      if (t->kind == TagKind::Left) return contains_(*g.a, unwrap(m, false));
      if (t->kind == TagKind::Right) return contains_(*g.b, unwrap(m, false));
      return false;
    case GK::Limp:
      if (t->kind == TagKind::Left) return contains_(*g.a, unwrap(m, true));
      if (t->kind == TagKind::Right) return contains_(*g.b, unwrap(m, false));
      return false;
    case GK::Bang:
      return t->kind == TagKind::Exp && contains_(*g.a, unwrap(m, false));
    case GK::SBang:
      return contains_(*g.a, m);
    case GK::RLimp: {
      if (t->kind != TagKind::Real) return false;
      const Move in = unwrap(m, false);
      if (in.tag->kind == TagKind::Left) return contains_(*g.a, unwrap(in, true));
      if (in.tag->kind == TagKind::Right) return contains_(*g.b, unwrap(in, false));
      return false;
    }
  }
  return false;
}

bool initial_(const GameNode& g, const Move& m) {
  const Tag t = m.tag;
  switch (g.kind) {
    case GK::One: return false;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat: return t == t_q() && m.op == Op::O;
    case GK::Tensor:
    case GK::Prod:
      if (t->kind == TagKind::Left) return initial_(*g.a, unwrap(m, false));
      if (t->kind == TagKind::Right) return initial_(*g.b, unwrap(m, false));
      return false;
    case GK::Limp: return t->kind == TagKind::Right && initial_(*g.b, unwrap(m, false));
    case GK::Bang: return t->kind == TagKind::Exp && initial_(*g.a, unwrap(m, false));
    case GK::SBang: return initial_(*g.a, m);
    case GK::RLimp: {
      if (t->kind != TagKind::Real) return false;
      const Move in = unwrap(m, false);
      return in.tag->kind == TagKind::Right && initial_(*g.b, unwrap(in, false));
    }
  }
  return false;
}

bool enables_limp(const GameNode& a, const GameNode& b, const Move& m, const Move& n) {
  const TagKind km = m.tag->kind, kn = n.tag->kind;
  if (km == TagKind::Left && kn == TagKind::Left) return enables_(a, unwrap(m, true), unwrap(n, true));
  if (km == TagKind::Right && kn == TagKind::Right) return enables_(b, unwrap(m, false), unwrap(n, false));
  if (km == TagKind::Right && kn == TagKind::Left)
    return initial_(b, unwrap(m, false)) && initial_(a, unwrap(n, true));
  return false;
}

bool enables_(const GameNode& g, const Move& m, const Move& n) {
  const TagKind km = m.tag->kind, kn = n.tag->kind;
  switch (g.kind) {
    case GK::One: return false;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat:
      return m.tag == t_q() && n.tag != t_q() && n.op == Op::P && n.qa == QA::A && flat_answer(g, n.tag);
    case GK::Tensor:
    case GK::Prod:
      if (km != kn) return false;
      if (km == TagKind::Left) return enables_(*g.a, unwrap(m, false), unwrap(n, false));
      if (km == TagKind::Right) return enables_(*g.b, unwrap(m, false), unwrap(n, false));
      return false;
    case GK::Limp: return enables_limp(*g.a, *g.b, m, n);
    case GK::Bang:
      return km == TagKind::Exp && kn == TagKind::Exp && m.tag->num == n.tag->num &&
             enables_(*g.a, unwrap(m, false), unwrap(n, false));
    case GK::SBang: return enables_(*g.a, m, n);
    case GK::RLimp:
      return km == TagKind::Real && kn == TagKind::Real && m.tag->num == n.tag->num &&
             enables_limp(*g.a, *g.b, unwrap(m, false), unwrap(n, false));
  }
  return false;
}

std::vector<Move> initial_moves(const GameNode& g, std::size_t budget) {
  std::vector<Move> out;
  switch (g.kind) {
    case GK::One: break;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat: out.push_back(q_move()); break;
    case GK::Tensor:
    case GK::Prod:
      for (const Move& m : initial_moves(*g.a, budget)) out.push_back(wrap_left(m));
      for (const Move& m : initial_moves(*g.b, budget)) out.push_back(wrap_right(m));
      break;
    case GK::Limp:
      for (const Move& m : initial_moves(*g.b, budget)) out.push_back(wrap_right(m));
      break;
    case GK::Bang:
      for (std::size_t i = 0; i < budget; ++i)
        for (const Move& m : initial_moves(*g.a, budget)) out.push_back(wrap_exp(i, m));
      break;
    case GK::SBang: out = initial_moves(*g.a, budget); break;
    case GK::RLimp: break;  // needs a realizer code; supplied by the np layer
  }
  return out;
}

std::vector<Move> enabled_moves(const GameNode& g, const Move& m, std::size_t budget);

std::vector<Move> enabled_limp(const GameNode& a, const GameNode& b, const Move& m, std::size_t budget) {
  std::vector<Move> out;
  if (m.tag->kind == TagKind::Left) {
    for (const Move& n : enabled_moves(a, unwrap(m, true), budget)) out.push_back(wrap_dom(n));
  } else if (m.tag->kind == TagKind::Right) {
    const Move in = unwrap(m, false);
    for (const Move& n : enabled_moves(b, in, budget)) out.push_back(wrap_right(n));
    if (initial_(b, in))
      for (const Move& n : initial_moves(a, budget)) out.push_back(wrap_dom(n));
  }
  return out;
}

std::vector<Move> enabled_moves(const GameNode& g, const Move& m, std::size_t budget) {
  std::vector<Move> out;
  switch (g.kind) {
    case GK::One: break;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat:
      if (m.tag != t_q()) break;
      if (g.kind == GK::Nat)
        for (std::size_t i = 0; i < budget; ++i) out.push_back(answer_move(i));
      else
        for (Tag t : g.vals) out.push_back({t, Op::P, QA::A});
      break;
    case GK::Tensor:
    case GK::Prod:
      if (m.tag->kind == TagKind::Left)
        for (const Move& n : enabled_moves(*g.a, unwrap(m, false), budget)) out.push_back(wrap_left(n));
      else if (m.tag->kind == TagKind::Right)
        for (const Move& n : enabled_moves(*g.b, unwrap(m, false), budget)) out.push_back(wrap_right(n));
      break;
    case GK::Limp: out = enabled_limp(*g.a, *g.b, m, budget); break;
    case GK::Bang:
      if (m.tag->kind == TagKind::Exp)
        for (const Move& n : enabled_moves(*g.a, unwrap(m, false), budget)) out.push_back(wrap_exp(m.tag->num, n));
      break;
    case GK::SBang: out = enabled_moves(*g.a, m, budget); break;
    case GK::RLimp:
      if (m.tag->kind == TagKind::Real)
        for (const Move& n : enabled_limp(*g.a, *g.b, unwrap(m, false), budget))
          out.push_back(wrap_real(m.tag->num, n));
      break;
  }
  return out;
}

std::optional<std::size_t> depth_of(const GameNode& g) {
  switch (g.kind) {
    case GK::One: return 0;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat: return 2;
    case GK::Tensor:
    case GK::Prod: {
      auto x = depth_of(*g.a), y = depth_of(*g.b);
      if (!x || !y) return std::nullopt;
      return std::max(*x, *y);
    }
    case GK::Limp:
    case GK::RLimp: {
      auto x = depth_of(*g.a), y = depth_of(*g.b);
      if (!x || !y) return std::nullopt;
      return *x + *y;
    }
    case GK::Bang:
    case GK::SBang: return depth_of(*g.a);
  }
  return std::nullopt;
}

class ExprArena final : public ArenaImpl {
 public:
  explicit ExprArena(GameExpr g) : g_(std::move(g)) {}
  bool contains(const Move& m) const override { return contains_(*g_, m); }
  bool is_initial(const Move& m) const override { return initial_(*g_, m); }
  bool enables(const Move& m, const Move& n) const override { return enables_(*g_, m, n); }
  std::vector<Move> initial(std::size_t budget) const override { return initial_moves(*g_, budget); }
  std::vector<Move> enabled_by(const Move& m, std::size_t budget) const override {
    return enabled_moves(*g_, m, budget);
  }
  std::optional<std::size_t> depth_bound() const override { return depth_of(*g_); }

 private:
  GameExpr g_;
};

bool structural(const GameNode& g, const JSeq& s);

bool structural(const GameNode& g, const JSeq& s) {
  if (s.empty()) return true;
  switch (g.kind) {
    case GK::One: return false;
    case GK::Zero:
    case GK::Nat:
    case GK::Flat: return s.size() == 1 || (s.size() == 2 && s.just(2) == 1);
    case GK::Tensor:
      return structural(*g.a, restrict_left(s, false).seq) && structural(*g.b, restrict_right(s).seq);
    case GK::Prod: {
      auto l = restrict_left(s, false), r = restrict_right(s);
      if (!l.seq.empty() && !r.seq.empty()) return false;
      return l.seq.empty() ? structural(*g.b, r.seq) : structural(*g.a, l.seq);
    }
    case GK::Limp:
      return structural(*g.a, restrict_left(s, true).seq) && structural(*g.b, restrict_right(s).seq);
    case GK::Bang: {
      std::set<Nat> idx;
      for (const auto& o : s.occ) idx.insert(o.m.tag->num);
      for (const Nat& i : idx)
        if (!structural(*g.a, restrict_exp(s, i).seq)) return false;
      return true;
    }
    case GK::SBang: {
      for (std::size_t i = 1; i <= s.size(); ++i)
        if (s.just(i) == 0 && !structural(*g.a, thread(s, {i}))) return false;
      return true;
    }
    case GK::RLimp: {
      const Nat e = s.move(1).tag->num;
      auto st = strip_real(s, e);
      if (st.seq.size() != s.size()) return false;
      GameNode limp{GK::Limp, {}, g.a, g.b, nullptr};
      return structural(limp, st.seq);
    }
  }
  return false;
}

Restriction restrict_by(const JSeq& s, TagKind k, const Nat* num, bool flip_ops) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    Tag t = s.move(i).tag;
    if (t->kind == k && (!num || t->num == *num)) keep.push_back(i);
  }
  Restriction r;
  r.seq = jsub(s, keep, r.back);
  for (auto& o : r.seq.occ) o.m = unwrap(o.m, flip_ops);
  return r;
}

}  // namespace

GameExpr g_one() { return make(GK::One, {}, nullptr, nullptr); }
GameExpr g_zero() { return make(GK::Zero, {}, nullptr, nullptr); }
GameExpr g_nat() { return make(GK::Nat, {}, nullptr, nullptr); }
GameExpr g_flat(std::vector<Tag> values) {
  std::sort(values.begin(), values.end(), [](Tag x, Tag y) { return tag_text(x) < tag_text(y); });
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) return g_zero();
  return make(GK::Flat, std::move(values), nullptr, nullptr);
}
GameExpr g_tensor(GameExpr a, GameExpr b) { return make(GK::Tensor, {}, std::move(a), std::move(b)); }
GameExpr g_prod(GameExpr a, GameExpr b) { return make(GK::Prod, {}, std::move(a), std::move(b)); }
GameExpr g_limp(GameExpr a, GameExpr b) { return make(GK::Limp, {}, std::move(a), std::move(b)); }
GameExpr g_bang(GameExpr a) { return make(GK::Bang, {}, std::move(a), nullptr); }
GameExpr g_sbang(GameExpr a) { return make(GK::SBang, {}, std::move(a), nullptr); }
GameExpr g_rlimp(GameExpr a, GameExpr b) { return make(GK::RLimp, {}, std::move(a), std::move(b)); }

GameExpr game_from_desc(Desc d) {
  static const std::map<std::string, GK> heads = {
      {"g.one", GK::One},   {"g.zero", GK::Zero}, {"g.nat", GK::Nat},   {"g.flat", GK::Flat},
      {"g.tensor", GK::Tensor}, {"g.prod", GK::Prod}, {"g.limp", GK::Limp}, {"g.bang", GK::Bang},
      {"g.sbang", GK::SBang}, {"g.rlimp", GK::RLimp}};
  auto it = heads.find(d->head);
  if (it == heads.end()) return nullptr;
  std::vector<Tag> vals;
  for (const Nat& n : d->nums) {
    auto t = tag_decode(n);
    if (!t) return nullptr;
    vals.push_back(*t);
  }
  GameExpr a = d->kids.size() > 0 ? game_from_desc(d->kids[0]) : nullptr;
  GameExpr b = d->kids.size() > 1 ? game_from_desc(d->kids[1]) : nullptr;
  if (it->second == GK::Flat) return g_flat(std::move(vals));
  return make(it->second, std::move(vals), std::move(a), std::move(b));
}

bool same_game(const GameExpr& x, const GameExpr& y) { return x->desc == y->desc; }

std::string game_text(const GameExpr& g) {
  switch (g->kind) {
    case GK::One: return "1";
    case GK::Zero: return "0";
    case GK::Nat: return "N";
    case GK::Flat: {
      std::string s = "flat{";
      for (std::size_t i = 0; i < g->vals.size(); ++i) s += (i ? "," : "") + tag_text(g->vals[i]);
      return s + "}";
    }
    case GK::Tensor: return "(" + game_text(g->a) + " (x) " + game_text(g->b) + ")";
    case GK::Prod: return "(" + game_text(g->a) + " & " + game_text(g->b) + ")";
    case GK::Limp: return "(" + game_text(g->a) + " -o " + game_text(g->b) + ")";
    case GK::Bang: return "!" + game_text(g->a);
    case GK::SBang: return "!^" + game_text(g->a);
    case GK::RLimp: return "(" + game_text(g->a) + " =o " + game_text(g->b) + ")";
  }
  return "?";
}

Arena arena_of(const GameExpr& g) { return std::make_shared<ExprArena>(g); }

bool member(const GameExpr& g, const JSeq& s) {
  ExprArena a(g);
  return legal(s, a) && structural(*g, s);
}

std::vector<Occ> extensions(const GameExpr& g, const JSeq& s, std::size_t budget) {
  const Op who = s.size() % 2 == 0 ? Op::O : Op::P;
  std::vector<Occ> cand;
  if (who == Op::O)
    for (const Move& m : initial_moves(*g, budget)) cand.push_back({m, 0});
  for (std::size_t i = 1; i <= s.size(); ++i)
    for (const Move& m : enabled_moves(*g, s.move(i), budget))
      if (m.op == who) cand.push_back({m, static_cast<std::uint32_t>(i)});
  std::vector<Occ> out;
  for (const Occ& c : cand) {
    if (member(g, s.plus(c.m, c.j))) out.push_back(c);
  }
  return out;
}

std::vector<Occ> o_extensions(const GameExpr& g, const JSeq& s, std::size_t budget) {
  if (s.size() % 2 != 0) return {};
  return extensions(g, s, budget);
}

std::vector<JSeq> enumerate_positions(const GameExpr& g, std::size_t depth, std::size_t budget, std::size_t limit) {
  std::vector<JSeq> out{JSeq{}};
  for (std::size_t k = 0; k < out.size() && out.size() < limit; ++k) {
    if (out[k].size() >= depth) continue;
    for (const Occ& o : extensions(g, out[k], budget)) {
      out.push_back(out[k].plus(o.m, o.j));
      if (out.size() >= limit) break;
    }
  }
  return out;
}

bool is_well_opened(const GameExpr& g, std::size_t depth, std::size_t budget) {
  for (const JSeq& s : enumerate_positions(g, depth, budget, 20000)) {
    std::size_t initials = 0;
    for (const auto& o : s.occ) initials += o.j == 0 ? 1 : 0;
    if (initials > 1) return false;
  }
  return true;
}

Restriction restrict_left(const JSeq& s, bool flip_ops) { return restrict_by(s, TagKind::Left, nullptr, flip_ops); }
Restriction restrict_right(const JSeq& s) { return restrict_by(s, TagKind::Right, nullptr, false); }
Restriction restrict_exp(const JSeq& s, const Nat& i) { return restrict_by(s, TagKind::Exp, &i, false); }
Restriction strip_real(const JSeq& s, const Nat& e) {
  Restriction r = restrict_by(s, TagKind::Real, &e, false);
  if (r.seq.size() != s.size()) return {};
  return r;
}

}  // namespace ctg
