#include "ctg/tag.hpp"

#include <boost/functional/hash.hpp>

#include <cctype>

#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace ctg {

namespace {

struct NodeHash {
  std::size_t operator()(const TagNode* n) const { return n->hash; }
};
struct NodeEq {
  bool operator()(const TagNode* x, const TagNode* y) const {
    return x->kind == y->kind && x->a == y->a && x->b == y->b && x->num == y->num && x->sym == y->sym;
  }
};

struct Table {
  std::mutex mu;
  std::unordered_set<const TagNode*, NodeHash, NodeEq> set;
  std::vector<std::unique_ptr<TagNode>> owned;
  std::unordered_map<const TagNode*, Nat> codes;
};

Table& table() {
  static Table* t = new Table();  // leaked on purpose: tags outlive everything
  return *t;
}

Tag intern(TagNode proto) {
  std::size_t h = static_cast<std::size_t>(proto.kind);
  boost::hash_combine(h, hash_nat(proto.num));
  boost::hash_combine(h, std::hash<std::string>{}(proto.sym));
  boost::hash_combine(h, proto.a ? proto.a->hash : 0);
  boost::hash_combine(h, proto.b ? proto.b->hash : 1);
  proto.hash = h;
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.set.find(&proto);
  if (it != t.set.end()) return *it;
  auto node = std::make_unique<TagNode>(std::move(proto));
  Tag p = node.get();
  t.owned.push_back(std::move(node));
  t.set.insert(p);
  return p;
}

}  // namespace

Tag t_num(const Nat& n) { return intern(TagNode{TagKind::Num, n, {}, nullptr, nullptr, 0}); }
Tag t_sym(const std::string& s) { return intern(TagNode{TagKind::Sym, 0, s, nullptr, nullptr, 0}); }
Tag t_pair(Tag a, Tag b) { return intern(TagNode{TagKind::Pair, 0, {}, a, b, 0}); }
Tag t_left(Tag x) { return intern(TagNode{TagKind::Left, 0, {}, x, nullptr, 0}); }
Tag t_right(Tag x) { return intern(TagNode{TagKind::Right, 0, {}, x, nullptr, 0}); }
Tag t_exp(const Nat& i, Tag x) { return intern(TagNode{TagKind::Exp, i, {}, x, nullptr, 0}); }
Tag t_real(const Nat& e, Tag x) { return intern(TagNode{TagKind::Real, e, {}, x, nullptr, 0}); }

std::string tag_text(Tag t) {
  switch (t->kind) {
    case TagKind::Num: return to_string(t->num);
    case TagKind::Sym: return t->sym;
    case TagKind::Pair: return "<" + tag_text(t->a) + "," + tag_text(t->b) + ">";
    case TagKind::Left: return "inl(" + tag_text(t->a) + ")";
    case TagKind::Right: return "inr(" + tag_text(t->a) + ")";
    case TagKind::Exp: return "exp(" + to_string(t->num) + "," + tag_text(t->a) + ")";
    case TagKind::Real: return "real(" + to_string(t->num) + "," + tag_text(t->a) + ")";
  }
  return "?";
}

namespace {

struct TagParser {
  const std::string& s;
  std::size_t i = 0;

  bool eat(char c) {
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::optional<Nat> number() {
    std::size_t j = i;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j == i) return std::nullopt;
    auto v = parse_nat(s.substr(i, j - i));
    i = j;
    return v;
  }
  std::optional<Tag> tag() {
    if (i >= s.size()) return std::nullopt;
    if (s[i] >= '0' && s[i] <= '9') {
      auto n = number();
      if (!n) return std::nullopt;
      return t_num(*n);
    }
    if (eat('<')) {
      auto a = tag();
      if (!a || !eat(',')) return std::nullopt;
      auto b = tag();
      if (!b || !eat('>')) return std::nullopt;
      return t_pair(*a, *b);
    }
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
    if (j == i) return std::nullopt;
    std::string word = s.substr(i, j - i);
    i = j;
    if (!eat('(')) return t_sym(word);
    if (word == "inl" || word == "inr") {
      auto a = tag();
      if (!a || !eat(')')) return std::nullopt;
      return word == "inl" ? t_left(*a) : t_right(*a);
    }
    if (word == "exp" || word == "real") {
      auto n = number();
      if (!n || !eat(',')) return std::nullopt;
      auto a = tag();
      if (!a || !eat(')')) return std::nullopt;
      return word == "exp" ? t_exp(*n, *a) : t_real(*n, *a);
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Tag> parse_tag(const std::string& text) {
  TagParser p{text};
  auto t = p.tag();
  if (!t || p.i != text.size()) return std::nullopt;
  return t;
}

Nat tag_code(Tag t) {
  {
    auto& tb = table();
    std::lock_guard<std::mutex> lock(tb.mu);
    auto it = tb.codes.find(t);
    if (it != tb.codes.end()) return it->second;
  }
  Nat c;
  switch (t->kind) {
    case TagKind::Num: c = pair(0, t->num); break;
    case TagKind::Sym: c = pair(1, encode_string(t->sym)); break;
    case TagKind::Pair: c = pair(2, pair(tag_code(t->a), tag_code(t->b))); break;
    case TagKind::Left: c = pair(3, tag_code(t->a)); break;
    case TagKind::Right: c = pair(4, tag_code(t->a)); break;
    case TagKind::Exp: c = pair(5, pair(t->num, tag_code(t->a))); break;
    case TagKind::Real: c = pair(6, pair(t->num, tag_code(t->a))); break;
  }
  auto& tb = table();
  std::lock_guard<std::mutex> lock(tb.mu);
  tb.codes.emplace(t, c);
  return c;
}

std::optional<Tag> tag_decode(const Nat& n) {
  Nat k, body;
  if (!unpair(n, k, body) || k > 6) return std::nullopt;
  Nat x, y;
  switch (static_cast<int>(k)) {
    case 0: return t_num(body);
    case 1: {
      std::string s;
      if (!decode_string(body, s)) return std::nullopt;
      return t_sym(s);
    }
    case 2: {
      if (!unpair(body, x, y)) return std::nullopt;
      auto a = tag_decode(x), b = tag_decode(y);
      if (!a || !b) return std::nullopt;
      return t_pair(*a, *b);
    }
    case 3:
    case 4: {
      auto a = tag_decode(body);
      if (!a) return std::nullopt;
      return k == 3 ? t_left(*a) : t_right(*a);
    }
    default: {
      if (!unpair(body, x, y)) return std::nullopt;
      auto a = tag_decode(y);
      if (!a) return std::nullopt;
      return k == 5 ? t_exp(x, *a) : t_real(x, *a);
    }
  }
}

std::size_t hash_move(const Move& m) {
  std::size_t h = m.tag ? m.tag->hash : 0;
  boost::hash_combine(h, static_cast<int>(m.op) * 2 + static_cast<int>(m.qa));
  return h;
}

std::string move_text(const Move& m) {
  return tag_text(m.tag) + "^" + (m.op == Op::O ? "O" : "P") + (m.qa == QA::Q ? "Q" : "A");
}

}  // namespace ctg
