#pragma once

#include "ctg/effectivity.hpp"
#include "ctg/npgame.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ctg {

// Disjoint union of w.r.w. linear implications on dom ⇛ fam. O's opening
// move carries real(e, _) with e a realizer of O's point δ of dom; every
// later move keeps that tag and P plays component(e) on dom ⊸ fam(δ).
class DowrwliImpl : public SkeletonImpl {
 public:
  DowrwliImpl(NpType dom, DepType fam, Desc desc, WinningCert cert);

  const NpType& dom() const { return dom_; }
  const DepType& fam() const { return fam_; }
  NpType type() const { return np_dlimp(dom_, fam_); }

  // Memoized; the same e always yields the same skeleton.
  TSkeleton component(const Nat& e) const;
  TSkeleton domain_point(const Nat& e) const;
  NpType cod_type(const Nat& e) const;
  // Normal form of component(e) ∘ δ_e in fam(δ_e).
  TSkeleton cod(const Nat& e) const;
  TSkeleton cod_at(const TSkeleton& delta) const { return cod(canon_code(delta)); }
  // Realizer of cod(e), computed by running the realizer-map.
  Nat realize_cod(const Nat& e, std::uint64_t fuel = Defaults::fuel) const;
  virtual PrfTerm realizer_map() const;
  virtual bool trivial() const { return false; }

  std::vector<Occ> o_extensions(const JSeq& s, std::size_t budget) const override;
  bool o_move_ok(const JSeq& s, const Occ& o) const override;

  // Typed O-moves at an even position; `obligated` when only forced replies remain.
  struct OMoves {
    std::vector<Occ> moves;
    bool obligated = false;
  };
  OMoves o_moves(const JSeq& s, std::size_t budget) const;

 protected:
  virtual TSkeleton make_component(const Nat& e) const = 0;
  std::optional<Occ> respond(const JSeq& s) const override;

 private:
  friend class OWalker;
  std::optional<TSkeleton> side_value_(const JSeq& prefix, const NpType& t,
                                       const std::vector<std::pair<TagKind, Nat>>& wraps, std::uint32_t init_j) const;

  NpType dom_;
  DepType fam_;
  NpType type_;
  mutable std::mutex mu_;
  mutable std::map<Nat, TSkeleton> comps_;
  mutable std::map<Nat, TSkeleton> cods_;
  mutable std::map<std::string, std::optional<TSkeleton>> sides_;
  mutable std::optional<PrfTerm> rm_;
};
using Do = std::shared_ptr<const DowrwliImpl>;

// Component factory for ad-hoc Dowrwlis.
using ComponentFn = std::function<TSkeleton(const DowrwliImpl&, const Nat&)>;
Do make_do(NpType dom, DepType fam, Desc desc, WinningCert cert, ComponentFn fn);
Do as_do(const TSkeleton& s);  // throws ComponentMismatch
Do build_do(Desc d);
// Shared per description.
Do intern_do(Desc d, const std::function<Do()>& factory);

// Morphism skeleton playing `point` in the codomain and never touching the domain.
TSkeleton weaken_sk(const GameExpr& dom, const TSkeleton& point);
// Number of openings O is offered per realizer choice in typed enumeration.
constexpr std::size_t kRealizerChoices = 4;

Do copy_do(NpType dom, DepType fam, const CopyRules& rules);
Do const_do(NpType dom, DepType fam, const TSkeleton& point);
Do arith_do(const ArithFn& fn);  // on !̂N ⇛ N
Do trivial_do(NpType dom, DepType fam);
// Component at e: ψ's component at φ's realizer-map image of e after φ's.
Do compose_do(const Do& phi, const Do& psi, DepType fam = nullptr);
Do promote_do(const Do& phi);  // !̂A ⇛ B to !̂A ⇛ !̂B
Do pair_do(const Do& phi, const Do& tau, DepType fam = nullptr);
Do bullet(const Do& psi, const Do& phi);  // ψ ∘ φ†
Do wrw_dereliction(NpType g);
Do wrw_copycat(NpType g);

// Semi-check of membership: winning to depth, typed fibers, and for
// implications the codomain typing at canonical points of the domain.
bool np_member(const NpType& t, const TSkeleton& point, std::size_t depth = Defaults::depth, std::size_t budget = 4);

void register_do_builders();

}  // namespace ctg
