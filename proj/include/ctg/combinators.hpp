#pragma once

#include "ctg/skeleton.hpp"

#include <string>
#include <vector>

namespace ctg {

// ---- flat games and points ----

struct FlatGame {
  GameExpr game;
  TSkeleton value(Tag x) const;
  TSkeleton bottom() const;
};
FlatGame mk_flat(const std::vector<Tag>& values);

TSkeleton num(const Nat& n);            // n̄ on N
TSkeleton bot(const GameExpr& g);       // ⊥: never answers
TSkeleton top();                        // ⊤ on 1
TSkeleton flat_value(const GameExpr& g, Tag x);

// ---- tag paths used to address sub-components ----

struct PathStep {
  TagKind kind;  // Left, Right or Exp
  Nat num = 0;
  bool operator==(const PathStep& o) const { return kind == o.kind && num == o.num; }
};
using Path = std::vector<PathStep>;

inline Path path_l() { return {PathStep{TagKind::Left}}; }
inline Path path_r() { return {PathStep{TagKind::Right}}; }
Path path_cat(Path a, const Path& b);
Tag apply_path(const Path& p, Tag t);
std::optional<Tag> strip_path(const Path& p, Tag t);
Nat path_code(const Path& p);
Path path_decode(const Nat& n);
std::string path_text(const Path& p);

// ---- arithmetic ----

struct ArithFn {
  enum Kind : int { Succ, Double, Id, Const, Pred, AddK, MulK, UExtract };
  Kind kind;
  Nat k = 0;
  Nat apply(const Nat& n) const;
  bool queries() const { return kind != Const; }
  std::string name() const;
};

// Skeleton on D ⊸ N answering q by querying the domain at `query` and
// applying fn to the answer. D is given by `game` (a Limp).
TSkeleton arith_sk(const ArithFn& fn, const GameExpr& game, const Path& query);
TSkeleton succ_sk();    // on N ⊸ N
TSkeleton double_sk();  // on N ⊸ N
TSkeleton succ_bang_sk(const ArithFn& fn);  // on !N ⊸ N, thread 0
TSkeleton pazo_sk();    // on (N ⇒ N) ⇒ N, f(0) + f(1)

// ---- constructions ----

TSkeleton copycat_sk(const GameExpr& a);
TSkeleton dereliction_sk(const GameExpr& a, const Nat& i);
// Copycat between a domain and codomain related by tag rules
// (codomain path, domain path); threads follow the rule of their root.
using CopyRules = std::vector<std::pair<Path, Path>>;
TSkeleton retag_copycat(const GameExpr& game, const CopyRules& rules);
Nat rules_code(const CopyRules& rules);
CopyRules rules_decode(const Nat& n);

TSkeleton compose_sk(const TSkeleton& phi, const TSkeleton& psi, std::uint64_t fuel = Defaults::fuel);
TSkeleton tensor_sk(const TSkeleton& phi, const TSkeleton& sigma);
TSkeleton pair_sk(const TSkeleton& phi, const TSkeleton& tau);
TSkeleton promote_sk(const TSkeleton& phi);   // !A ⊸ B  to  !A ⊸ !B, Cantor thread indices
TSkeleton promote_hat(const TSkeleton& phi);  // !̂A ⊸ B to !̂A ⊸ !̂B, threads by initial occurrence
TSkeleton hat(const TSkeleton& sigma);        // σ† on !̂G
TSkeleton unhat(const TSkeleton& theta);      // single-thread view of θ on !̂G
TSkeleton ppair(const TSkeleton& a, const TSkeleton& b);  // ⟨α, β⟩ on A & B
TSkeleton left_of(const TSkeleton& p);
TSkeleton right_of(const TSkeleton& p);

// Notations σ^1, σ^{!1}, (_)_1, σ†, θ‡ and derived point operations.
TSkeleton sk_one(const TSkeleton& sigma);
TSkeleton sk_bang_one(const TSkeleton& sigma);
TSkeleton unlift(const TSkeleton& phi);
TSkeleton dagger_point(const TSkeleton& sigma);
TSkeleton ddagger(const TSkeleton& theta);  // throws NotInnocent
TSkeleton compose_point(const TSkeleton& alpha, const TSkeleton& psi);  // ψ ∘ α := (ψ ∘ α^1)_1
TSkeleton tensor_point(const TSkeleton& a, const TSkeleton& b);

// Domain/codomain of a skeleton's Limp game (nullptr otherwise).
GameExpr dom_of(const TSkeleton& s);
GameExpr cod_of(const TSkeleton& s);

// Numeral answered by a point on N (or a flat game), if any.
std::optional<Nat> read(const TSkeleton& point);
// Drives a skeleton on D ⊸ N (any D built from N, !, !̂, real tags), answering
// every domain question with n; returns the numeral P finally gives.
std::optional<Nat> extension_plain(const TSkeleton& phi, const Nat& n);

void register_combinator_builders();

}  // namespace ctg
