#pragma once

#include "ctg/combinators.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ctg {

enum class NK : std::uint8_t { One, Zero, Nat, Sigma, SBang, DLimp };

struct NpNode;
using NpType = std::shared_ptr<const NpNode>;
class DepImpl;
using DepType = std::shared_ptr<const DepImpl>;

// Symbolic np-game. Sigma(a, fam) pairs a point α of a with a point of
// fam(α); DLimp(a, fam) is the w.r.w. dependent linear implication whose
// codomain at O's realizer for δ :: a is fam(δ).
struct NpNode {
  NK kind;
  NpType a;
  DepType fam;
  Desc desc;
  GameExpr shape;
};

NpType np_one();
NpType np_zero();
NpType np_nat();
NpType np_sigma(NpType a, DepType fam);
NpType np_prod(NpType a, NpType b);
NpType np_sbang(NpType a);
NpType np_dlimp(NpType a, DepType fam);
NpType np_wlimp(NpType a, NpType b);  // a ⊸_wrw b
NpType np_wimp(NpType a, NpType b);   // !̂a ⇛ b
NpType np_from_desc(Desc d);
std::string np_text(const NpType& t);
bool same_np(const NpType& a, const NpType& b);
// Certificate: well-opened by construction (no !̂ outside implication domains).
bool np_well_opened(const NpType& t);

// Dependent np-game over the points of some base np-game.
class DepImpl {
 public:
  DepImpl(Desc desc, GameExpr shape) : desc_(desc), shape_(std::move(shape)) {}
  virtual ~DepImpl() = default;
  DepImpl(const DepImpl&) = delete;
  DepImpl& operator=(const DepImpl&) = delete;

  // Memoized per point description.
  NpType at(const TSkeleton& point) const;
  Desc desc() const { return desc_; }
  // Game every fiber lives in.
  const GameExpr& shape() const { return shape_; }
  // Set for constant families.
  virtual NpType constant() const { return nullptr; }

 protected:
  virtual NpType at_impl(const TSkeleton& point) const = 0;

 private:
  Desc desc_;
  GameExpr shape_;
  mutable std::mutex mu_;
  mutable std::map<Desc, NpType> memo_;
};

DepType fam_const(NpType t);
// A‡: the family over !̂Γ reading A at the single-thread view of the point.
DepType fam_dagger(DepType a);

using FamilyBuilder = std::function<DepType(Desc)>;
void register_family_builder(const std::string& head, FamilyBuilder b);
DepType dep_from_desc(Desc d);
// Shared per description.
DepType intern_family(Desc d, const std::function<DepType()>& factory);

// Shape of the fibers a type family ranges over when each fiber is one of 1, 0.
GameExpr prop_shape();

// ---- canonical pairs ----

// Canonical points of t (normalized skeletons), at most `budget` of them.
// Implication types draw from a pool registered per game shape.
std::vector<TSkeleton> canonical_points(const NpType& t, std::size_t budget);
void register_pool(const GameExpr& shape, std::vector<TSkeleton> points);
std::vector<TSkeleton> pool_for(const GameExpr& shape);

// Normal form of a winning point of t: numerals, ⊤, pairs and σ† of normal
// forms; implications are kept as given. Non-answering points on N become ⊥.
TSkeleton normalize(const NpType& t, const TSkeleton& point);

// Pointwise type equality: same formers, families agreeing on canonical points.
bool np_equiv(const NpType& a, const NpType& b, std::size_t budget = 3);
bool fam_equiv(const DepType& f, const DepType& g, const NpType& base, std::size_t budget = 3);

void register_np_builders();

}  // namespace ctg
