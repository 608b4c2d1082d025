#pragma once

#include "ctg/nat.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

namespace ctg {

enum class TagKind : std::uint8_t { Num, Sym, Pair, Left, Right, Exp, Real };

// Interned: structurally equal tags are the same pointer.
struct TagNode {
  TagKind kind;
  Nat num;          // Num value, Exp index, Real code
  std::string sym;  // Sym
  const TagNode* a = nullptr;
  const TagNode* b = nullptr;  // Pair second component
  std::size_t hash = 0;
};
using Tag = const TagNode*;

Tag t_num(const Nat& n);
Tag t_sym(const std::string& s);
Tag t_pair(Tag a, Tag b);
Tag t_left(Tag t);
Tag t_right(Tag t);
Tag t_exp(const Nat& i, Tag t);
Tag t_real(const Nat& e, Tag t);

inline Tag t_q() {
  static Tag q = t_sym("q");
  return q;
}

std::string tag_text(Tag t);
std::optional<Tag> parse_tag(const std::string& text);

Nat tag_code(Tag t);
std::optional<Tag> tag_decode(const Nat& n);

enum class Op : std::uint8_t { O, P };
enum class QA : std::uint8_t { Q, A };

inline Op flip(Op o) { return o == Op::O ? Op::P : Op::O; }

struct Move {
  Tag tag = nullptr;
  Op op = Op::O;
  QA qa = QA::Q;
  bool operator==(const Move& o) const { return tag == o.tag && op == o.op && qa == o.qa; }
  bool operator!=(const Move& o) const { return !(*this == o); }
};

std::size_t hash_move(const Move& m);
std::string move_text(const Move& m);

// Wrapping helpers: the op is kept unless the wrapper changes polarity.
inline Move wrap_left(const Move& m) { return {t_left(m.tag), m.op, m.qa}; }
inline Move wrap_right(const Move& m) { return {t_right(m.tag), m.op, m.qa}; }
inline Move wrap_exp(const Nat& i, const Move& m) { return {t_exp(i, m.tag), m.op, m.qa}; }
inline Move wrap_real(const Nat& e, const Move& m) { return {t_real(e, m.tag), m.op, m.qa}; }
// Domain of a linear implication: tag inl, polarity flipped.
inline Move wrap_dom(const Move& m) { return {t_left(m.tag), flip(m.op), m.qa}; }
inline Move wrap_cod(const Move& m) { return wrap_right(m); }

inline Move q_move() { return {t_q(), Op::O, QA::Q}; }
inline Move answer_move(const Nat& n) { return {t_num(n), Op::P, QA::A}; }

}  // namespace ctg

template <>
struct std::hash<ctg::Move> {
  std::size_t operator()(const ctg::Move& m) const { return ctg::hash_move(m); }
};
