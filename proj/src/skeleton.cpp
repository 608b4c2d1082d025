#include "ctg/skeleton.hpp"

#include <deque>
#include <map>

namespace ctg {

void register_all_builders();

WinningCert meet(const WinningCert& x, const WinningCert& y) {
  WinningCert c{x.total && y.total, x.innocent && y.innocent, x.noetherian && y.noetherian,
                WinningCert::Prov::None};
  if (x.prov == WinningCert::Prov::ByConstruction && y.prov == WinningCert::Prov::ByConstruction)
    c.prov = WinningCert::Prov::ByConstruction;
  else if (x.prov != WinningCert::Prov::None && y.prov != WinningCert::Prov::None)
    c.prov = WinningCert::Prov::BoundedCheck;
  return c;
}

SkeletonImpl::SkeletonImpl(GameExpr game, Desc desc, WinningCert cert)
    : game_(std::move(game)), desc_(desc), cert_(cert) {}

std::optional<Occ> SkeletonImpl::next(const JSeq& s) const {
  if (s.size() % 2 == 0) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
  }
  std::optional<Occ> r = respond(s);
  if (r) {
    r->m.op = Op::P;
    if (r->j >= s.size() + 1) r.reset();
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(s, r);
  return r;
}

std::vector<Occ> SkeletonImpl::o_extensions(const JSeq& s, std::size_t budget) const {
  return ctg::o_extensions(game_, s, budget);
}

bool SkeletonImpl::o_move_ok(const JSeq& s, const Occ& o) const {
  return s.size() % 2 == 0 && o.m.op == Op::O && member(game_, s.plus(o.m, o.j));
}

TSkeleton make_skeleton(GameExpr game, Desc desc, WinningCert cert, RespondFn fn) {
  return std::make_shared<FnSkeleton>(std::move(game), desc, cert, std::move(fn));
}

namespace {

struct SkeletonTable {
  std::recursive_mutex mu;
  std::map<Desc, TSkeleton> by_desc;
  std::map<std::string, SkeletonBuilder> builders;
};

SkeletonTable& sk_table() {
  static SkeletonTable* t = new SkeletonTable();
  return *t;
}

}  // namespace

TSkeleton intern_skeleton(Desc d, const std::function<TSkeleton()>& factory) {
  auto& t = sk_table();
  {
    std::lock_guard<std::recursive_mutex> lock(t.mu);
    auto it = t.by_desc.find(d);
    if (it != t.by_desc.end()) return it->second;
  }
  TSkeleton s = factory();
  std::lock_guard<std::recursive_mutex> lock(t.mu);
  auto [it, inserted] = t.by_desc.emplace(d, s);
  return it->second;
}

void register_skeleton_builder(const std::string& head, SkeletonBuilder b) {
  auto& t = sk_table();
  std::lock_guard<std::recursive_mutex> lock(t.mu);
  t.builders[head] = std::move(b);
}

void ensure_builders() {
  static std::once_flag once;
  std::call_once(once, register_all_builders);
}

TSkeleton build_skeleton(Desc d) {
  if (!d) throw NoDescription("opaque skeleton");
  ensure_builders();
  auto& t = sk_table();
  SkeletonBuilder b;
  {
    std::lock_guard<std::recursive_mutex> lock(t.mu);
    auto it = t.by_desc.find(d);
    if (it != t.by_desc.end()) return it->second;
    auto bt = t.builders.find(d->head);
    if (bt == t.builders.end()) throw NoDescription("no builder for description head '" + d->head + "'");
    b = bt->second;
  }
  return b(d);
}

JSeq play(const TSkeleton& sigma, const std::vector<Occ>& script) {
  JSeq s;
  for (const Occ& o : script) {
    if (!sigma->o_move_ok(s, o))
      throw IllegalOMove("O-move " + move_text(o.m) + " (justifier " + std::to_string(o.j) +
                         ") is not a legal O-extension of " + jseq_text(s));
    s.push(o.m, o.j);
    auto r = sigma->next(s);
    if (!r) return s;
    s.push(r->m, r->j);
  }
  return s;
}

std::string WinningReport::label() const {
  auto f = [](bool b) { return b ? "pass" : "FAIL"; };
  return "verified-to-depth " + std::to_string(depth) + ": total=" + f(total) + " innocent=" + f(innocent) +
         " noetherian=" + f(noetherian);
}

WinningReport check_winning(const TSkeleton& sigma, std::size_t depth, std::size_t budget) {
  WinningReport rep;
  rep.depth = depth;
  // P-view (as a j-sequence) -> response expressed relative to the view
  std::unordered_map<JSeq, Occ> seen;
  std::deque<JSeq> work{JSeq{}};
  const std::size_t limit = 20000;
  while (!work.empty() && rep.positions < limit) {
    JSeq s = std::move(work.front());
    work.pop_front();
    if (s.size() >= depth) continue;
    for (const Occ& o : sigma->o_extensions(s, budget)) {
      JSeq s1 = s.plus(o.m, o.j);
      ++rep.positions;
      std::optional<Occ> r;
      try {
        r = sigma->next(s1);
      } catch (const Divergence&) {
        rep.noetherian = false;
        rep.total = false;
        if (!rep.witness) rep.witness = s1;
        continue;
      } catch (const CtgError&) {
        rep.total = false;
        if (!rep.witness) rep.witness = s1;
        continue;
      }
      if (!r) {
        rep.total = false;
        if (!rep.witness) rep.witness = s1;
        continue;
      }
      auto vi = p_view_indices(s1);
      std::uint32_t rel = 0;
      bool visible = r->j == 0;
      for (std::size_t k = 0; k < vi.size(); ++k)
        if (vi[k] == r->j) {
          rel = static_cast<std::uint32_t>(k + 1);
          visible = true;
        }
      if (!visible) {
        rep.innocent = false;
        if (!rep.witness) rep.witness = s1;
      } else {
        JSeq view;
        try {
          view = p_view(s1);
        } catch (const MalformedView&) {
          rep.innocent = false;
          continue;
        }
        Occ resp{r->m, rel};
        auto [it, inserted] = seen.emplace(view, resp);
        if (!inserted && !(it->second == resp)) {
          rep.innocent = false;
          if (!rep.witness) rep.witness = s1;
        }
      }
      JSeq s2 = s1.plus(r->m, r->j);
      if (s2.size() < depth) work.push_back(std::move(s2));
    }
  }
  return rep;
}

std::string EqVerdict::text() const {
  if (equal) return "equal-to-depth " + std::to_string(depth);
  return "distinct(" + (witness ? jseq_text(*witness) : std::string("?")) + (detail.empty() ? "" : "; " + detail) + ")";
}

namespace {

struct Outcome {
  enum Kind { Undefined, Diverges, Move } kind = Undefined;
  Occ occ{};
  bool operator==(const Outcome& o) const { return kind == o.kind && (kind != Move || occ == o.occ); }
};

Outcome outcome(const TSkeleton& s, const JSeq& pos) {
  try {
    auto r = s->next(pos);
    if (!r) return {};
    return {Outcome::Move, *r};
  } catch (const CtgError&) {
    return {Outcome::Diverges, {}};
  }
}

std::string outcome_text(const Outcome& o) {
  if (o.kind == Outcome::Undefined) return "undefined";
  if (o.kind == Outcome::Diverges) return "diverges";
  return move_text(o.occ.m) + "@" + std::to_string(o.occ.j);
}

}  // namespace

EqVerdict play_equal(const TSkeleton& a, const TSkeleton& b, std::size_t depth, std::size_t budget) {
  EqVerdict v;
  v.depth = depth;
  std::vector<JSeq> stack{JSeq{}};
  const std::size_t limit = 200000;
  while (!stack.empty() && v.positions < limit) {
    JSeq s = std::move(stack.back());
    stack.pop_back();
    if (s.size() >= depth) continue;
    for (const Occ& o : a->o_extensions(s, budget)) {
      JSeq s1 = s.plus(o.m, o.j);
      ++v.positions;
      Outcome x = outcome(a, s1), y = outcome(b, s1);
      if (!(x == y)) {
        v.equal = false;
        v.witness = s1;
        v.detail = "left " + outcome_text(x) + ", right " + outcome_text(y);
        return v;
      }
      if (x.kind == Outcome::Move && s1.size() + 1 < depth) stack.push_back(s1.plus(x.occ.m, x.occ.j));
    }
  }
  return v;
}

std::vector<JSeq> odd_positions(const TSkeleton& sigma, std::size_t depth, std::size_t budget, std::size_t limit) {
  std::vector<JSeq> out;
  std::deque<JSeq> work{JSeq{}};
  while (!work.empty() && out.size() < limit) {
    JSeq s = std::move(work.front());
    work.pop_front();
    if (s.size() >= depth) continue;
    for (const Occ& o : sigma->o_extensions(s, budget)) {
      JSeq s1 = s.plus(o.m, o.j);
      out.push_back(s1);
      if (out.size() >= limit) break;
      std::optional<Occ> r;
      try {
        r = sigma->next(s1);
      } catch (const CtgError&) {
        continue;
      }
      if (r && s1.size() + 1 < depth) work.push_back(s1.plus(r->m, r->j));
    }
  }
  return out;
}

}  // namespace ctg
