#pragma once

#include "ctg/dowrwli.hpp"

#include <optional>
#include <string>

namespace ctg {

// Contexts are closed np-games; a type over Γ is a family over points of Γ;
// a term of A in Γ is a w.r.w. strategy on !̂Γ ⇛ A‡; a morphism Δ → Γ is
// one on !̂Δ ⇛ Γ.
using Ctx = NpType;

struct Ty {
  Ctx ctx;
  DepType fam;
};

struct Tm {
  Ty ty;
  Do d;
};

struct Mor {
  Ctx dom, cod;
  Do d;
};

Ctx cwf_terminal();
Ctx comprehension(const Ty& a);  // Γ.A
Ty ty_const(Ctx ctx, NpType t);
Ty ty_subst(const Ty& a, const Mor& f);  // A{f}
Tm tm_subst(const Tm& a, const Mor& f);  // a{f}
// a{f} presented at a given type (pointwise equal to A{f}).
Tm tm_subst_as(const Tm& a, const Mor& f, const Ty& ty);
Mor mor_id(Ctx ctx);
Mor mor_bang(Ctx ctx);  // Γ → 1
Mor mor_compose(const Mor& g, const Mor& f);  // g • f
Mor mor_p(const Ty& a);                       // Γ.A → Γ
Tm tm_v(const Ty& a);                         // v_A : A{p}
Mor mor_extend(const Mor& f, const Ty& a, const Tm& g);  // ⟨f, g⟩ : Δ → Γ.A
// A term of a closed type over Γ read as a morphism into it.
Mor tm_as_mor(const Tm& t);
Tm mor_as_tm(const Mor& f);

// Pointwise equality of types over a context, on canonical points.
bool ty_equal(const Ty& a, const Ty& b, std::size_t budget = 3);
EqVerdict tm_equal(const Tm& a, const Tm& b, std::size_t depth = Defaults::depth, std::size_t budget = Defaults::budget);
EqVerdict mor_equal(const Mor& a, const Mor& b, std::size_t depth = Defaults::depth,
                    std::size_t budget = Defaults::budget);

// Codomain point of a term at a point γ of its context.
TSkeleton tm_at(const Tm& t, const TSkeleton& gamma);

// ---- Π ----
Ty pi_ty(const Ty& a, const Ty& b);  // b over Γ.A
struct PiParts {
  Ty a, b;
};
std::optional<PiParts> pi_parts(const Ty& t);
Tm lambda(const Tm& b);  // b : B over Γ.A
Tm unlambda(const Tm& k);
Tm app(const Tm& k, const Tm& a);

// ---- Σ ----
Ty sigma_ty(const Ty& a, const Ty& b);
std::optional<PiParts> sigma_parts(const Ty& t);
Mor pair_mor(const Ty& a, const Ty& b);      // Γ.A.B → Γ.Σ(A, B)
Mor pair_inv_mor(const Ty& a, const Ty& b);  // Γ.Σ(A, B) → Γ.A.B
Tm pair_tm(const Tm& a, const Tm& b, const Ty& bty);  // b : B{⟨id, a⟩}
// p : P{Pair} over Γ.A.B; result p{Pair⁻¹} : P over Γ.Σ(A, B).
Tm sigma_elim(const Tm& p, const Ty& a, const Ty& b, const Ty& motive);

// ---- N ----
Ty nat_ty(Ctx ctx);
Tm zero_tm(Ctx ctx);
Tm succ_tm(const Tm& t);
Tm numeral_tm(Ctx ctx, const Nat& n);
// R^N(P, z, s) : P over Γ.N, z : P{⟨id, 0⟩}, s : P{⟨p∘p, succ(v{p})⟩} over Γ.N.P.
Tm nat_rec(const Ty& p, const Tm& z, const Tm& s);

// ---- Id ----
Ty id_ty(const Ty& a, const Tm& x, const Tm& y);
Tm refl_tm(const Tm& a);
// Γ.A.A{p}.Id(A{p}{p}, v{p}, v), the domain of the Id eliminator.
Ctx id_elim_ctx(const Ty& a);
Mor refl_mor(const Ty& a);      // Γ.A → id_elim_ctx(A)
Mor refl_inv_mor(const Ty& a);  // id_elim_ctx(A) → Γ.A
// c : C{Refl} over Γ.A; result c{Refl⁻¹} : C over id_elim_ctx(A).
Tm id_elim(const Tm& c, const Ty& a, const Ty& motive);

// ---- 1 and 0 ----
Ty unit_ty(Ctx ctx);
Tm top_tm(Ctx ctx);
// ⊤ presented at a type whose fibers on the points of interest are 1.
Tm top_as(const Ty& t);
Ty empty_ty(Ctx ctx);
Tm empty_elim(const Ty& a);  // a over Γ.0

// Numeral a closed term of N denotes (through the empty context's point).
std::optional<Nat> read_closed(const Tm& t);

void register_cwf_builders();

}  // namespace ctg
