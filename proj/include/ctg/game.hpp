#pragma once

#include "ctg/desc.hpp"
#include "ctg/jseq.hpp"

#include <memory>
#include <vector>

namespace ctg {

enum class GK : std::uint8_t { One, Zero, Nat, Flat, Tensor, Prod, Limp, Bang, SBang, RLimp };

struct GameNode;
using GameExpr = std::shared_ptr<const GameNode>;

// Symbolic game. Tensor/Prod/Limp tag components with inl/inr, Bang with
// exp(i, _), SBang adds no tag, RLimp wraps a linear implication in
// real(e, _) for realizer-indexed families.
struct GameNode {
  GK kind;
  std::vector<Tag> vals;  // Flat answers
  GameExpr a, b;
  Desc desc = nullptr;
};

GameExpr g_one();
GameExpr g_zero();
GameExpr g_nat();
GameExpr g_flat(std::vector<Tag> values);
GameExpr g_tensor(GameExpr a, GameExpr b);
GameExpr g_prod(GameExpr a, GameExpr b);
GameExpr g_limp(GameExpr a, GameExpr b);
GameExpr g_bang(GameExpr a);
GameExpr g_sbang(GameExpr a);
GameExpr g_rlimp(GameExpr a, GameExpr b);
inline GameExpr g_imp(GameExpr a, GameExpr b) { return g_limp(g_bang(std::move(a)), std::move(b)); }

GameExpr game_from_desc(Desc d);
bool same_game(const GameExpr& x, const GameExpr& y);
std::string game_text(const GameExpr& g);

Arena arena_of(const GameExpr& g);
bool member(const GameExpr& g, const JSeq& s);
// Budgeted enumeration of (move, justifier) extensions by the player to move.
std::vector<Occ> extensions(const GameExpr& g, const JSeq& s, std::size_t budget);
std::vector<Occ> o_extensions(const GameExpr& g, const JSeq& s, std::size_t budget);
bool is_well_opened(const GameExpr& g, std::size_t depth, std::size_t budget = 4);
// All positions of length <= depth reachable by budgeted extension.
std::vector<JSeq> enumerate_positions(const GameExpr& g, std::size_t depth, std::size_t budget,
                                      std::size_t limit = 100000);

// Restriction helpers shared by skeleton combinators.
// Keeps occurrences whose tag passes `sel`, unwrapping them; pointers are
// re-targeted through dropped occurrences.
struct Restriction {
  JSeq seq;
  std::vector<std::size_t> back;  // restricted index -> original index
};
Restriction restrict_left(const JSeq& s, bool flip_ops);
Restriction restrict_right(const JSeq& s);
Restriction restrict_exp(const JSeq& s, const Nat& i);
Restriction strip_real(const JSeq& s, const Nat& e);  // empty if some move has another code

}  // namespace ctg
