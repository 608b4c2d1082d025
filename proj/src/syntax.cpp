#include "ctg/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ctg {

namespace {

Expr mk(EK k, std::vector<std::string> xs = {}, std::vector<Expr> kids = {}, Nat n = 0) {
  auto e = std::make_shared<ExprNode>();
  e->k = k;
  e->xs = std::move(xs);
  e->kids = std::move(kids);
  e->n = std::move(n);
  return e;
}

}  // namespace

Expr e_unit() { return mk(EK::Unit); }
Expr e_empty() { return mk(EK::Empty); }
Expr e_nat() { return mk(EK::NatT); }
Expr e_pi(std::string x, Expr a, Expr b) { return mk(EK::Pi, {std::move(x)}, {std::move(a), std::move(b)}); }
Expr e_sigma(std::string x, Expr a, Expr b) { return mk(EK::Sigma, {std::move(x)}, {std::move(a), std::move(b)}); }
Expr e_id(Expr a, Expr x, Expr y) { return mk(EK::Id, {}, {std::move(a), std::move(x), std::move(y)}); }
Expr e_var(std::string x) { return mk(EK::Var, {std::move(x)}); }
Expr e_top() { return mk(EK::Top); }
Expr e_zero() { return mk(EK::Zero); }
Expr e_succ(Expr t) { return mk(EK::Succ, {}, {std::move(t)}); }
Expr e_num(const Nat& n) { return mk(EK::Num, {}, {}, n); }
Expr e_natrec(std::string x, Expr c, Expr cz, std::string x2, std::string y, Expr cs, Expr n) {
  return mk(EK::NatRec, {std::move(x), std::move(x2), std::move(y)}, {std::move(c), std::move(cz), std::move(cs), std::move(n)});
}
Expr e_lam(std::string x, Expr a, Expr b) { return mk(EK::Lam, {std::move(x)}, {std::move(a), std::move(b)}); }
Expr e_app(Expr f, Expr a) { return mk(EK::App, {}, {std::move(f), std::move(a)}); }
Expr e_pair(Expr a, Expr b) { return mk(EK::Pair, {}, {std::move(a), std::move(b)}); }
Expr e_sigrec(std::string z, Expr c, std::string x, std::string y, Expr g, Expr p) {
  return mk(EK::SigRec, {std::move(z), std::move(x), std::move(y)}, {std::move(c), std::move(g), std::move(p)});
}
Expr e_refl(Expr a) { return mk(EK::Refl, {}, {std::move(a)}); }
Expr e_idrec(std::string x, std::string y, std::string p, Expr c, std::string z, Expr body, Expr a, Expr a2, Expr q) {
  return mk(EK::IdRec, {std::move(x), std::move(y), std::move(p), std::move(z)},
            {std::move(c), std::move(body), std::move(a), std::move(a2), std::move(q)});
}
Expr e_emptyrec(std::string x, Expr c, Expr a) { return mk(EK::EmptyRec, {std::move(x)}, {std::move(c), std::move(a)}); }
Expr e_with(const Expr& e, std::vector<std::string> xs, std::vector<Expr> kids) {
  return mk(e->k, std::move(xs), std::move(kids), e->n);
}

bool is_type_former(EK k) {
  return k == EK::Unit || k == EK::Empty || k == EK::NatT || k == EK::Pi || k == EK::Sigma || k == EK::Id;
}

const std::vector<std::size_t>& binders_of(EK k, std::size_t kid) {
  static const std::vector<std::size_t> none, b0{0}, b12{1, 2}, b012{0, 1, 2}, b3{3};
  switch (k) {
    case EK::Pi:
    case EK::Sigma:
    case EK::Lam: return kid == 1 ? b0 : none;
    case EK::NatRec: return kid == 0 ? b0 : kid == 2 ? b12 : none;
    case EK::SigRec: return kid == 0 ? b0 : kid == 1 ? b12 : none;
    case EK::IdRec: return kid == 0 ? b012 : kid == 1 ? b3 : none;
    case EK::EmptyRec: return kid == 0 ? b0 : none;
    default: return none;
  }
}

// ---------------------------------------------------------------- printing

namespace {

bool is_atom(const Expr& e) {
  switch (e->k) {
    case EK::Unit:
    case EK::Empty:
    case EK::NatT:
    case EK::Var:
    case EK::Top:
    case EK::Zero:
    case EK::Num:
    case EK::Pair:
    case EK::NatRec:
    case EK::SigRec:
    case EK::IdRec:
    case EK::EmptyRec: return true;
    default: return false;
  }
}

void pr(std::ostream& os, const Expr& e);

void pr_atom(std::ostream& os, const Expr& e) {
  if (is_atom(e)) return pr(os, e);
  os << "(";
  pr(os, e);
  os << ")";
}

void pr_binders(std::ostream& os, const Expr& e, std::size_t kid) {
  const auto& bs = binders_of(e->k, kid);
  os << "[";
  for (std::size_t i = 0; i < bs.size(); ++i) os << (i ? ", " : "") << e->xs[bs[i]];
  os << "] ";
}

void pr(std::ostream& os, const Expr& e) {
  const auto& k = e->kids;
  switch (e->k) {
    case EK::Unit: os << "1"; return;
    case EK::Empty: os << "0"; return;
    case EK::NatT: os << "N"; return;
    case EK::Pi:
    case EK::Sigma:
      os << (e->k == EK::Pi ? "Pi (" : "Sigma (") << e->xs[0] << " : ";
      pr(os, k[0]);
      os << ") ";
      pr(os, k[1]);
      return;
    case EK::Id:
      os << "Id ";
      pr_atom(os, k[0]);
      os << " ";
      pr_atom(os, k[1]);
      os << " ";
      pr_atom(os, k[2]);
      return;
    case EK::Var: os << e->xs[0]; return;
    case EK::Top: os << "top"; return;
    case EK::Zero: os << "zero"; return;
    case EK::Num: os << e->n.str(); return;
    case EK::Succ:
    case EK::Refl:
      os << (e->k == EK::Succ ? "succ " : "refl ");
      pr_atom(os, k[0]);
      return;
    case EK::Lam:
      os << "\\" << e->xs[0] << " : ";
      pr(os, k[0]);
      os << ". ";
      pr(os, k[1]);
      return;
    case EK::App:
      if (k[0]->k == EK::App) pr(os, k[0]);
      else pr_atom(os, k[0]);
      os << " ";
      pr_atom(os, k[1]);
      return;
    case EK::Pair:
      os << "(";
      pr(os, k[0]);
      os << ", ";
      pr(os, k[1]);
      os << ")";
      return;
    case EK::NatRec:
    case EK::SigRec:
    case EK::IdRec:
    case EK::EmptyRec: {
      os << (e->k == EK::NatRec ? "natrec(" : e->k == EK::SigRec ? "sigrec(" : e->k == EK::IdRec ? "idrec(" : "emptyrec(");
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) os << ", ";
        if (!binders_of(e->k, i).empty()) pr_binders(os, e, i);
        pr(os, k[i]);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string print(const Expr& e) {
  if (!e) return "?";
  std::ostringstream os;
  pr(os, e);
  return os.str();
}

std::string print_ctx(const SCtx& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].first + " : " + print(g[i].second);
  return s;
}

std::string print(const Judgement& j) {
  std::string c = print_ctx(j.ctx);
  std::string pre = c.empty() ? "|- " : c + " |- ";
  switch (j.kind) {
    case JK::Ctx: return pre + "ctx";
    case JK::CtxEq: return "|- " + (c.empty() ? std::string(".") : c) + " = " + (j.ctx2.empty() ? "." : print_ctx(j.ctx2)) + " ctx";
    case JK::Type: return pre + print(j.a) + " type";
    case JK::TypeEq: return pre + print(j.a) + " = " + print(j.b) + " type";
    case JK::Term: return pre + print(j.a) + " : " + print(j.ty);
    case JK::TermEq: return pre + print(j.a) + " = " + print(j.b) + " : " + print(j.ty);
  }
  return pre;
}

// ---------------------------------------------------------------- variables

namespace {

void fv(const Expr& e, std::set<std::string>& bound, std::vector<std::string>& out) {
  if (e->k == EK::Var) {
    if (!bound.count(e->xs[0]) && std::find(out.begin(), out.end(), e->xs[0]) == out.end()) out.push_back(e->xs[0]);
    return;
  }
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    std::vector<std::string> added;
    for (auto b : binders_of(e->k, i))
      if (bound.insert(e->xs[b]).second) added.push_back(e->xs[b]);
    fv(e->kids[i], bound, out);
    for (const auto& a : added) bound.erase(a);
  }
}

}  // namespace

std::vector<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  fv(e, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const Expr& e) {
  auto v = free_vars(e);
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  if (std::find(avoid.begin(), avoid.end(), base) == avoid.end()) return base;
  for (std::size_t i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (std::find(avoid.begin(), avoid.end(), c) == avoid.end()) return c;
  }
}

Expr subst_many(const Expr& e, const std::vector<std::pair<std::string, Expr>>& s) {
  if (s.empty()) return e;
  if (e->k == EK::Var) {
    for (const auto& [x, a] : s)
      if (x == e->xs[0]) return a;
    return e;
  }
  if (e->kids.empty()) return e;
  std::vector<std::string> xs = e->xs;
  std::vector<Expr> kids;
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    const auto& bs = binders_of(e->k, i);
    if (bs.empty()) {
      kids.push_back(subst_many(e->kids[i], s));
      continue;
    }
    // Drop shadowed entries and those not free in the body.
    std::vector<std::pair<std::string, Expr>> live;
    for (const auto& [x, a] : s) {
      bool shadowed = false;
      for (auto b : bs) shadowed = shadowed || e->xs[b] == x;
      if (!shadowed && occurs_free(x, e->kids[i])) live.emplace_back(x, a);
    }
    std::vector<std::string> avoid = free_vars(e->kids[i]);
    for (const auto& [x, a] : live) {
      auto f = free_vars(a);
      avoid.insert(avoid.end(), f.begin(), f.end());
      avoid.push_back(x);
    }
    std::vector<std::pair<std::string, Expr>> ren;
    for (auto b : bs) {
      bool captures = false;
      for (const auto& [x, a] : live) captures = captures || occurs_free(e->xs[b], a);
      if (captures) {
        std::string nx = fresh_name(e->xs[b], avoid);
        avoid.push_back(nx);
        ren.emplace_back(e->xs[b], e_var(nx));
        xs[b] = nx;
      } else {
        avoid.push_back(e->xs[b]);
      }
    }
    Expr body = ren.empty() ? e->kids[i] : subst_many(e->kids[i], ren);
    kids.push_back(subst_many(body, live));
  }
  return e_with(e, std::move(xs), std::move(kids));
}

Expr subst(const Expr& e, const Expr& a, const std::string& x) { return subst_many(e, {{x, a}}); }

// ---------------------------------------------------------------- α-equivalence

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

// Peels one successor off n̄ or succ t.
std::optional<Expr> pred_of(const Expr& e) {
  if (e->k == EK::Succ) return e->kids[0];
  if (e->k == EK::Num && e->n > 0) return e_num(e->n - 1);
  return std::nullopt;
}
bool is_zero(const Expr& e) { return e->k == EK::Zero || (e->k == EK::Num && e->n == 0); }

bool var_eq(const std::string& x, const std::string& y, const Env& env) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == x || it->second == y) return it->first == x && it->second == y;
  }
  return x == y;
}

bool aeq(const Expr& a, const Expr& b, Env& env) {
  if (a->k == EK::Num && b->k == EK::Num) return a->n == b->n;
  if (is_zero(a) && is_zero(b)) return true;
  if ((a->k == EK::Num || a->k == EK::Succ) && (b->k == EK::Num || b->k == EK::Succ)) {
    auto pa = pred_of(a), pb = pred_of(b);
    if (!pa || !pb) return false;
    return aeq(*pa, *pb, env);
  }
  if (a->k != b->k || a->kids.size() != b->kids.size()) return false;
  if (a->k == EK::Var) return var_eq(a->xs[0], b->xs[0], env);
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    const auto& bs = binders_of(a->k, i);
    for (auto x : bs) env.emplace_back(a->xs[x], b->xs[x]);
    bool ok = aeq(a->kids[i], b->kids[i], env);
    env.resize(env.size() - bs.size());
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool alpha_eq(const Expr& a, const Expr& b) {
  Env env;
  return aeq(a, b, env);
}

bool alpha_eq(const Judgement& a, const Judgement& b) {
  if (a.kind != b.kind || a.ctx.size() != b.ctx.size() || a.ctx2.size() != b.ctx2.size()) return false;
  // Context variables act as binders over the rest of the judgement.
  std::vector<std::string> sa, sb;
  auto rename = [](const Expr& e, const std::vector<std::string>& from, const std::vector<std::string>& to) {
    std::vector<std::pair<std::string, Expr>> s;
    for (std::size_t i = 0; i < from.size(); ++i) s.emplace_back(from[i], e_var(to[i]));
    return e ? subst_many(e, s) : e;
  };
  std::vector<std::string> canon;
  for (std::size_t i = 0; i < a.ctx.size(); ++i) {
    if (!alpha_eq(rename(a.ctx[i].second, sa, canon), rename(b.ctx[i].second, sb, canon))) return false;
    sa.push_back(a.ctx[i].first);
    sb.push_back(b.ctx[i].first);
    canon.push_back("%" + std::to_string(i));
  }
  for (std::size_t i = 0; i < a.ctx2.size(); ++i)
    if (!alpha_eq(a.ctx2[i].second, b.ctx2[i].second)) return false;
  auto same = [&](const Expr& x, const Expr& y) {
    if (!x || !y) return !x && !y;
    return alpha_eq(rename(x, sa, canon), rename(y, sb, canon));
  };
  return same(a.a, b.a) && same(a.b, b.b) && same(a.ty, b.ty);
}

// ---------------------------------------------------------------- lexer

namespace {

enum class TT { Ident, Number, Sym, End };

struct Token {
  TT t;
  std::string s;
  Nat n = 0;
  std::size_t line, col;
};

const std::set<std::string> kKeywords = {"Pi",  "Sigma", "Id",     "N",     "top",      "zero", "succ", "natrec",
                                         "sigrec", "refl", "idrec", "emptyrec", "def", "type", "ctx"};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto adv = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  static const std::vector<std::pair<std::string, std::string>> syms = {
      {":=", ":="}, {"|-", "|-"}, {"\xE2\x8A\xA2", "|-"}, {"\xCE\xBB", "\\"}, {"\xCE\xA0", "Pi"}, {"\xCE\xA3", "Sigma"},
      {"\xE2\x8A\xA4", "top"}, {"\xE2\x84\x95", "N"}, {"(", "("}, {")", ")"}, {"[", "["}, {"]", "]"}, {",", ","},
      {":", ":"}, {".", "."}, {"\\", "\\"}, {"=", "="}};
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      adv(1);
      continue;
    }
    if (text.compare(i, 2, "--") == 0) {
      while (i < text.size() && text[i] != '\n') adv(1);
      continue;
    }
    Token tok{TT::End, "", 0, line, col};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.t = TT::Number;
      tok.s = text.substr(i, j - i);
      tok.n = Nat(tok.s);
      adv(j - i);
      if (text.compare(i, 2, "\xCC\x84") == 0) adv(2);  // combining macron
      out.push_back(tok);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      tok.t = TT::Ident;
      tok.s = text.substr(i, j - i);
      if (kKeywords.count(tok.s)) tok.t = TT::Sym;
      adv(j - i);
      out.push_back(tok);
      continue;
    }
    bool matched = false;
    for (const auto& [lit, name] : syms) {
      if (text.compare(i, lit.size(), lit) == 0) {
        tok.t = TT::Sym;
        tok.s = name;
        adv(lit.size());
        out.push_back(tok);
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line, col);
  }
  out.push_back(Token{TT::End, "<end>", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  bool at(const std::string& s) const { return peek().t == TT::Sym && peek().s == s; }
  bool at_end() const { return peek().t == TT::End; }
  std::size_t mark() const { return p_; }
  void reset(std::size_t m) { p_ = m; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("expected " + what + ", found '" + peek().s + "'", peek().line, peek().col);
  }
  void expect(const std::string& s) {
    if (!at(s)) fail("'" + s + "'");
    ++p_;
  }
  std::string ident() {
    if (peek().t != TT::Ident) fail("identifier");
    return t_[p_++].s;
  }
  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  Expr type() {
    if (at("Pi") || at("Sigma")) {
      bool pi = at("Pi");
      ++p_;
      expect("(");
      std::string x = ident();
      expect(":");
      Expr a = type();
      expect(")");
      Expr b = type();
      return pi ? e_pi(x, a, b) : e_sigma(x, a, b);
    }
    if (at("Id")) {
      ++p_;
      Expr a = type_atom();
      Expr x = term_atom();
      Expr y = term_atom();
      return e_id(a, x, y);
    }
    return type_atom();
  }

  Expr type_atom() {
    const Token& k = peek();
    if (k.t == TT::Number && (k.n == 0 || k.n == 1)) {
      ++p_;
      return k.n == 0 ? e_empty() : e_unit();
    }
    if (at("N")) {
      ++p_;
      return e_nat();
    }
    if (at("(")) {
      ++p_;
      Expr a = type();
      expect(")");
      return a;
    }
    fail("type");
  }

  Expr term() {
    if (at("\\")) {
      ++p_;
      std::string x = ident();
      expect(":");
      Expr a = type();
      expect(".");
      return e_lam(x, a, term());
    }
    Expr f = term_atom();
    while (starts_atom()) f = e_app(f, term_atom());
    return f;
  }

  bool starts_atom() const {
    const Token& k = peek();
    if (k.t == TT::Ident || k.t == TT::Number) return true;
    if (k.t != TT::Sym) return false;
    static const std::set<std::string> s = {"(", "top", "zero", "succ", "refl", "natrec", "sigrec", "idrec", "emptyrec"};
    return s.count(k.s) > 0;
  }

  std::vector<std::string> binders(std::size_t n) {
    expect("[");
    std::vector<std::string> xs;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) expect(",");
      xs.push_back(ident());
    }
    expect("]");
    return xs;
  }

  Expr term_atom() {
    const Token& k = peek();
    if (k.t == TT::Ident) {
      ++p_;
      return e_var(k.s);
    }
    if (k.t == TT::Number) {
      ++p_;
      return e_num(k.n);
    }
    if (at("top")) return ++p_, e_top();
    if (at("zero")) return ++p_, e_zero();
    if (at("succ")) return ++p_, e_succ(term_atom());
    if (at("refl")) return ++p_, e_refl(term_atom());
    if (at("(")) {
      ++p_;
      Expr a = term();
      if (at(",")) {
        ++p_;
        Expr b = term();
        expect(")");
        return e_pair(a, b);
      }
      expect(")");
      return a;
    }
    if (at("natrec")) {
      ++p_;
      expect("(");
      auto x = binders(1);
      Expr c = type();
      expect(",");
      Expr cz = term();
      expect(",");
      auto xy = binders(2);
      Expr cs = term();
      expect(",");
      Expr n = term();
      expect(")");
      return e_natrec(x[0], c, cz, xy[0], xy[1], cs, n);
    }
    if (at("sigrec")) {
      ++p_;
      expect("(");
      auto z = binders(1);
      Expr c = type();
      expect(",");
      auto xy = binders(2);
      Expr g = term();
      expect(",");
      Expr p = term();
      expect(")");
      return e_sigrec(z[0], c, xy[0], xy[1], g, p);
    }
    if (at("idrec")) {
      ++p_;
      expect("(");
      auto xyp = binders(3);
      Expr c = type();
      expect(",");
      auto z = binders(1);
      Expr body = term();
      expect(",");
      Expr a = term();
      expect(",");
      Expr a2 = term();
      expect(",");
      Expr q = term();
      expect(")");
      return e_idrec(xyp[0], xyp[1], xyp[2], c, z[0], body, a, a2, q);
    }
    if (at("emptyrec")) {
      ++p_;
      expect("(");
      auto x = binders(1);
      Expr c = type();
      expect(",");
      Expr a = term();
      expect(")");
      return e_emptyrec(x[0], c, a);
    }
    fail("term");
  }

  SCtx ctx() {
    SCtx g;
    if (at("|-") || at_end()) return g;
    do {
      if (!g.empty()) expect(",");
      std::string x = ident();
      expect(":");
      g.emplace_back(x, type());
    } while (at(","));
    return g;
  }

  Judgement judgement() {
    Judgement j;
    j.ctx = ctx();
    expect("|-");
    if (at("ctx")) {
      ++p_;
      j.kind = JK::Ctx;
      return j;
    }
    std::size_t m = mark();
    try {
      Expr a = type();
      if (at("type")) {
        ++p_;
        j.kind = JK::Type;
        j.a = a;
        return j;
      }
      if (at("=")) {
        ++p_;
        Expr b = type();
        expect("type");
        j.kind = JK::TypeEq;
        j.a = a;
        j.b = b;
        return j;
      }
    } catch (const SyntaxError&) {
    }
    reset(m);
    Expr a = term();
    if (at("=")) {
      ++p_;
      j.b = term();
      j.kind = JK::TermEq;
    } else {
      j.kind = JK::Term;
    }
    j.a = a;
    expect(":");
    j.ty = type();
    return j;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;
};

}  // namespace

Expr parse_term(const std::string& text) {
  Parser p(lex(text));
  Expr e = p.term();
  p.expect_end();
  return e;
}

Expr parse_type(const std::string& text) {
  Parser p(lex(text));
  Expr e = p.type();
  p.expect_end();
  return e;
}

SCtx parse_ctx(const std::string& text) {
  Parser p(lex(text));
  SCtx g = p.ctx();
  p.expect_end();
  return g;
}

Judgement parse_judgement(const std::string& text) {
  Parser p(lex(text));
  Judgement j = p.judgement();
  p.expect_end();
  return j;
}

std::vector<Def> parse_file(const std::string& text) {
  Parser p(lex(text));
  std::vector<Def> out;
  while (!p.at_end()) {
    Def d;
    d.line = p.peek().line;
    p.expect("def");
    d.name = p.ident();
    if (p.at(":")) {
      p.expect(":");
      d.ty = p.type();
    }
    p.expect(":=");
    d.term = p.term();
    // `def bad := t : A` annotates the body.
    if (!d.ty && p.at(":")) {
      p.expect(":");
      d.ty = p.type();
    }
    for (const auto& o : out)
      if (o.name == d.name) throw SyntaxError("duplicate definition '" + d.name + "'", d.line, 1);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Def> inline_defs(const std::vector<Def>& defs) {
  std::vector<Def> out;
  std::vector<std::pair<std::string, Expr>> env;
  for (const auto& d : defs) {
    Def e = d;
    e.term = subst_many(d.term, env);
    if (d.ty) e.ty = subst_many(d.ty, env);
    env.emplace_back(d.name, e.term);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ctg
