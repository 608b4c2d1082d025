#include "ctg/npgame.hpp"

#include "ctg/effectivity.hpp"

#include <algorithm>

namespace ctg {

namespace {

NpType make_np(NK kind, NpType a, DepType fam, Desc d, GameExpr shape) {
  return std::make_shared<const NpNode>(NpNode{kind, std::move(a), std::move(fam), d, std::move(shape)});
}

struct FamTable {
  std::recursive_mutex mu;
  std::map<std::string, FamilyBuilder> builders;
  std::map<Desc, DepType> by_desc;
};

FamTable& fam_table() {
  static FamTable t;
  return t;
}

struct PoolTable {
  std::mutex mu;
  std::map<Desc, std::vector<TSkeleton>> pools;
};

PoolTable& pool_table() {
  static PoolTable t;
  return t;
}

class ConstFam final : public DepImpl {
 public:
  explicit ConstFam(NpType t) : DepImpl(mk_desc("fam.const", {}, {t->desc}), t->shape), t_(std::move(t)) {}
  NpType constant() const override { return t_; }

 protected:
  NpType at_impl(const TSkeleton&) const override { return t_; }

 private:
  NpType t_;
};

class DaggerFam final : public DepImpl {
 public:
  explicit DaggerFam(DepType a) : DepImpl(mk_desc("fam.dagger", {}, {a->desc()}), a->shape()), a_(std::move(a)) {}

 protected:
  NpType at_impl(const TSkeleton& point) const override { return a_->at(unhat(point)); }

 private:
  DepType a_;
};

}  // namespace

// ---------------------------------------------------------------- types

NpType np_one() {
  static NpType t = make_np(NK::One, nullptr, nullptr, mk_desc("np.one"), g_one());
  return t;
}

NpType np_zero() {
  static NpType t = make_np(NK::Zero, nullptr, nullptr, mk_desc("np.zero"), g_zero());
  return t;
}

NpType np_nat() {
  static NpType t = make_np(NK::Nat, nullptr, nullptr, mk_desc("np.nat"), g_nat());
  return t;
}

NpType np_sigma(NpType a, DepType fam) {
  Desc d = mk_desc("np.sigma", {}, {a->desc, fam->desc()});
  GameExpr g = g_prod(a->shape, fam->shape());
  return make_np(NK::Sigma, std::move(a), std::move(fam), d, std::move(g));
}

NpType np_prod(NpType a, NpType b) { return np_sigma(std::move(a), fam_const(std::move(b))); }

NpType np_sbang(NpType a) {
  Desc d = mk_desc("np.sbang", {}, {a->desc});
  GameExpr g = g_sbang(a->shape);
  return make_np(NK::SBang, std::move(a), nullptr, d, std::move(g));
}

NpType np_dlimp(NpType a, DepType fam) {
  Desc d = mk_desc("np.dlimp", {}, {a->desc, fam->desc()});
  GameExpr g = g_rlimp(a->shape, fam->shape());
  return make_np(NK::DLimp, std::move(a), std::move(fam), d, std::move(g));
}

NpType np_wlimp(NpType a, NpType b) { return np_dlimp(std::move(a), fam_const(std::move(b))); }
NpType np_wimp(NpType a, NpType b) { return np_wlimp(np_sbang(std::move(a)), std::move(b)); }

NpType np_from_desc(Desc d) {
  if (!d) throw NoDescription("np type without description");
  const std::string& h = d->head;
  if (h == "np.one") return np_one();
  if (h == "np.zero") return np_zero();
  if (h == "np.nat") return np_nat();
  if (h == "np.sigma") return np_sigma(np_from_desc(d->kids.at(0)), dep_from_desc(d->kids.at(1)));
  if (h == "np.sbang") return np_sbang(np_from_desc(d->kids.at(0)));
  if (h == "np.dlimp") return np_dlimp(np_from_desc(d->kids.at(0)), dep_from_desc(d->kids.at(1)));
  throw NoDescription("unknown np type head '" + h + "'");
}

std::string np_text(const NpType& t) {
  switch (t->kind) {
    case NK::One: return "1";
    case NK::Zero: return "0";
    case NK::Nat: return "N";
    case NK::Sigma:
      if (auto c = t->fam->constant()) return "(" + np_text(t->a) + " & " + np_text(c) + ")";
      return "Sigma(" + np_text(t->a) + ", " + desc_text(t->fam->desc()) + ")";
    case NK::SBang: return "!^" + np_text(t->a);
    case NK::DLimp:
      if (auto c = t->fam->constant()) return "(" + np_text(t->a) + " =o " + np_text(c) + ")";
      return "(" + np_text(t->a) + " =o " + desc_text(t->fam->desc()) + ")";
  }
  return "?";
}

bool same_np(const NpType& a, const NpType& b) { return a->desc == b->desc; }

bool np_well_opened(const NpType& t) {
  switch (t->kind) {
    case NK::One:
    case NK::Zero:
    case NK::Nat: return true;
    case NK::Sigma: return np_well_opened(t->a) && t->fam->shape()->kind != GK::SBang;
    case NK::SBang: return false;
    case NK::DLimp: return t->fam->shape()->kind != GK::SBang;
  }
  return false;
}

// ---------------------------------------------------------------- families

NpType DepImpl::at(const TSkeleton& point) const {
  Desc k = point->desc();
  if (k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
  }
  NpType t = at_impl(point);
  if (k) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(k, t);
  }
  return t;
}

DepType intern_family(Desc d, const std::function<DepType()>& factory) {
  auto& t = fam_table();
  {
    std::lock_guard<std::recursive_mutex> lock(t.mu);
    auto it = t.by_desc.find(d);
    if (it != t.by_desc.end()) return it->second;
  }
  DepType f = factory();
  std::lock_guard<std::recursive_mutex> lock(t.mu);
  return t.by_desc.emplace(d, f).first->second;
}

DepType fam_const(NpType t) {
  Desc d = mk_desc("fam.const", {}, {t->desc});
  return intern_family(d, [&] { return std::make_shared<const ConstFam>(t); });
}

DepType fam_dagger(DepType a) {
  if (auto c = a->constant()) return a;
  Desc d = mk_desc("fam.dagger", {}, {a->desc()});
  return intern_family(d, [&] { return std::make_shared<const DaggerFam>(a); });
}

void register_family_builder(const std::string& head, FamilyBuilder b) {
  auto& t = fam_table();
  std::lock_guard<std::recursive_mutex> lock(t.mu);
  t.builders[head] = std::move(b);
}

DepType dep_from_desc(Desc d) {
  if (!d) throw NoDescription("family without description");
  ensure_builders();
  auto& t = fam_table();
  FamilyBuilder b;
  {
    std::lock_guard<std::recursive_mutex> lock(t.mu);
    auto it = t.by_desc.find(d);
    if (it != t.by_desc.end()) return it->second;
    auto bt = t.builders.find(d->head);
    if (bt == t.builders.end()) throw NoDescription("no family builder for '" + d->head + "'");
    b = bt->second;
  }
  return b(d);
}

GameExpr prop_shape() { return g_zero(); }

// ---------------------------------------------------------------- canonical points

void register_pool(const GameExpr& shape, std::vector<TSkeleton> points) {
  auto& t = pool_table();
  std::lock_guard<std::mutex> lock(t.mu);
  t.pools[shape->desc] = std::move(points);
}

std::vector<TSkeleton> pool_for(const GameExpr& shape) {
  ensure_builders();
  auto& t = pool_table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.pools.find(shape->desc);
  return it == t.pools.end() ? std::vector<TSkeleton>{} : it->second;
}

std::vector<TSkeleton> canonical_points(const NpType& t, std::size_t budget) {
  std::vector<TSkeleton> out;
  switch (t->kind) {
    case NK::One: out.push_back(top()); break;
    case NK::Zero: break;
    case NK::Nat:
      for (std::size_t n = 0; n < budget; ++n) out.push_back(num(n));
      break;
    case NK::Sigma: {
      auto lefts = canonical_points(t->a, budget);
      std::vector<std::vector<TSkeleton>> rights;
      for (const auto& l : lefts) rights.push_back(canonical_points(t->fam->at(l), budget));
      // Diagonal order so every left value gets a turn.
      for (std::size_t k = 0; out.size() < budget && k < 2 * budget; ++k)
        for (std::size_t i = 0; i <= k && i < lefts.size() && out.size() < budget; ++i)
          if (k - i < rights[i].size()) out.push_back(ppair(lefts[i], rights[i][k - i]));
      break;
    }
    case NK::SBang:
      for (const auto& p : canonical_points(t->a, budget)) out.push_back(hat(p));
      break;
    case NK::DLimp: {
      out = pool_for(t->shape);
      if (out.size() > budget) out.resize(budget);
      break;
    }
  }
  return out;
}

TSkeleton normalize(const NpType& t, const TSkeleton& point) {
  switch (t->kind) {
    case NK::One: return top();
    case NK::Zero: return bot(g_zero());
    case NK::Nat: {
      auto n = read(point);
      return n ? num(*n) : bot(g_nat());
    }
    case NK::Sigma: {
      if (point->game()->kind != GK::Prod) return point;
      TSkeleton l = normalize(t->a, left_of(point));
      TSkeleton r = normalize(t->fam->at(l), right_of(point));
      return ppair(l, r);
    }
    case NK::SBang: return hat(normalize(t->a, unhat(point)));
    case NK::DLimp: return point;
  }
  return point;
}

bool fam_equiv(const DepType& f, const DepType& g, const NpType& base, std::size_t budget) {
  if (f->desc() == g->desc()) return true;
  for (const auto& p : canonical_points(base, budget))
    if (!np_equiv(f->at(p), g->at(p), budget)) return false;
  return true;
}

bool np_equiv(const NpType& a, const NpType& b, std::size_t budget) {
  if (a->desc == b->desc) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NK::One:
    case NK::Zero:
    case NK::Nat: return true;
    case NK::SBang: return np_equiv(a->a, b->a, budget);
    case NK::Sigma:
    case NK::DLimp: return np_equiv(a->a, b->a, budget) && fam_equiv(a->fam, b->fam, a->a, budget);
  }
  return false;
}

void register_np_builders() {
  register_family_builder("fam.const", [](Desc d) { return fam_const(np_from_desc(d->kids.at(0))); });
  register_family_builder("fam.dagger", [](Desc d) { return fam_dagger(dep_from_desc(d->kids.at(0))); });
}

}  // namespace ctg
