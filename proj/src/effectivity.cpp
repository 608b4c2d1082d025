#include "ctg/effectivity.hpp"

#include "ctg/combinators.hpp"

#include <array>
#include <cctype>
#include <mutex>
#include <sstream>

namespace ctg {

// ---------------------------------------------------------------- positions

Nat code_jseq(const JSeq& s) {
  std::vector<Nat> xs;
  xs.reserve(s.size());
  for (const Occ& o : s.occ) {
    const int lab = (o.m.op == Op::P ? 2 : 0) + (o.m.qa == QA::A ? 1 : 0);
    xs.push_back(pair(tag_code(o.m.tag), pair(lab, o.j)));
  }
  return encode_list(xs);
}

JSeq decode_jseq(const Nat& n) {
  std::vector<Nat> xs;
  if (!decode_list(n, xs)) return {};
  JSeq s;
  for (const Nat& x : xs) {
    Nat tc, rest, lab, j;
    if (!unpair(x, tc, rest) || !unpair(rest, lab, j) || lab > 3 || j > s.size()) return {};
    auto t = tag_decode(tc);
    if (!t) return {};
    const int l = static_cast<int>(lab);
    s.push(Move{*t, (l & 2) ? Op::P : Op::O, (l & 1) ? QA::A : QA::Q}, static_cast<std::uint32_t>(j));
  }
  return s;
}

// ---------------------------------------------------------------- terms

const char* builtin_name(Builtin b) {
  static const std::array<const char*, static_cast<int>(Builtin::Count)> names = {
      "ADD", "MUL", "MONUS", "PRED", "PAIR", "FST", "SND", "ISZERO", "INTERP", "CODMAP", "UNHAT", "HAT", "PPAIR",
      "NUM", "U"};
  const int i = static_cast<int>(b);
  return i >= 0 && i < static_cast<int>(Builtin::Count) ? names[i] : "?";
}

namespace {

std::mutex hook_mu;
std::array<BuiltinHook, static_cast<int>(Builtin::Count)>& hooks() {
  static std::array<BuiltinHook, static_cast<int>(Builtin::Count)> h;
  return h;
}

}  // namespace

void set_builtin_hook(Builtin b, BuiltinHook fn) {
  std::lock_guard<std::mutex> lock(hook_mu);
  hooks()[static_cast<int>(b)] = std::move(fn);
}

bool PrfTerm::operator==(const PrfTerm& o) const { return kind == o.kind && i == o.i && k == o.k && kids == o.kids; }

PrfTerm prf_zero() { return PrfTerm{}; }
PrfTerm prf_succ() { return PrfTerm{PrfTerm::Succ, 0, 0, {}}; }
PrfTerm prf_proj(std::size_t i, std::size_t k) { return PrfTerm{PrfTerm::Proj, i, k, {}}; }
PrfTerm prf_comp(PrfTerm f, std::vector<PrfTerm> gs) {
  PrfTerm t{PrfTerm::Comp, 0, 0, {}};
  t.kids.push_back(std::move(f));
  for (auto& g : gs) t.kids.push_back(std::move(g));
  return t;
}
PrfTerm prf_primrec(PrfTerm base, PrfTerm step) { return PrfTerm{PrfTerm::PrimRec, 0, 0, {std::move(base), std::move(step)}}; }
PrfTerm prf_mu(PrfTerm f) { return PrfTerm{PrfTerm::Mu, 0, 0, {std::move(f)}}; }
PrfTerm prf_lit(const Nat& v) { return PrfTerm{PrfTerm::Lit, v, 0, {}}; }
PrfTerm prf_prim(Builtin b, std::vector<PrfTerm> args) {
  return prf_comp(PrfTerm{PrfTerm::Prim, static_cast<int>(b), 0, {}}, std::move(args));
}

Nat prf_encode(const PrfTerm& t) {
  switch (t.kind) {
    case PrfTerm::Zero: return pair(0, 0);
    case PrfTerm::Succ: return pair(1, 0);
    case PrfTerm::Proj: return pair(2, pair(t.i, t.k));
    case PrfTerm::Comp: {
      std::vector<Nat> xs;
      for (const auto& c : t.kids) xs.push_back(prf_encode(c));
      return pair(3, encode_list(xs));
    }
    case PrfTerm::PrimRec: return pair(4, pair(prf_encode(t.kids[0]), prf_encode(t.kids[1])));
    case PrfTerm::Mu: return pair(5, prf_encode(t.kids[0]));
    case PrfTerm::Lit: return pair(6, t.i);
    case PrfTerm::Prim: return pair(7, t.i);
  }
  return pair(0, 0);
}

PrfTerm prf_decode(const Nat& e) {
  Nat kind, body;
  if (!unpair(e, kind, body) || kind > 7) return prf_zero();
  switch (static_cast<int>(kind)) {
    case 1: return body.is_zero() ? prf_succ() : prf_zero();
    case 2: {
      Nat i, k;
      if (!unpair(body, i, k)) return prf_zero();
      return PrfTerm{PrfTerm::Proj, i, k, {}};
    }
    case 3: {
      std::vector<Nat> xs;
      if (!decode_list(body, xs) || xs.empty()) return prf_zero();
      PrfTerm t{PrfTerm::Comp, 0, 0, {}};
      for (const Nat& x : xs) t.kids.push_back(prf_decode(x));
      return t;
    }
    case 4: {
      Nat b, s;
      if (!unpair(body, b, s)) return prf_zero();
      return prf_primrec(prf_decode(b), prf_decode(s));
    }
    case 5: return prf_mu(prf_decode(body));
    case 6: return prf_lit(body);
    case 7:
      if (body >= static_cast<int>(Builtin::Count)) return prf_zero();
      return PrfTerm{PrfTerm::Prim, body, 0, {}};
  }
  return prf_zero();
}

std::string prf_text(const PrfTerm& t) {
  switch (t.kind) {
    case PrfTerm::Zero: return "(zero)";
    case PrfTerm::Succ: return "(succ)";
    case PrfTerm::Proj: return "(proj " + to_string(t.i) + " " + to_string(t.k) + ")";
    case PrfTerm::Lit: return "(lit " + to_string(t.i) + ")";
    case PrfTerm::Prim: return std::string("(prim ") + builtin_name(static_cast<Builtin>(static_cast<int>(t.i))) + ")";
    case PrfTerm::Comp:
    case PrfTerm::PrimRec:
    case PrfTerm::Mu: {
      std::string s = t.kind == PrfTerm::Comp ? "(comp" : t.kind == PrfTerm::PrimRec ? "(primrec" : "(mu";
      for (const auto& c : t.kids) s += " " + prf_text(c);
      return s + ")";
    }
  }
  return "(zero)";
}

namespace {

struct SexpParser {
  const std::string& s;
  std::size_t p = 0;

  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  std::string atom() {
    ws();
    std::size_t b = p;
    while (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p])) && s[p] != '(' && s[p] != ')') ++p;
    return s.substr(b, p - b);
  }
  bool eat(char c) {
    ws();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  std::optional<PrfTerm> term() {
    if (!eat('(')) return std::nullopt;
    std::string head = atom();
    PrfTerm t;
    if (head == "zero") {
      t = prf_zero();
    } else if (head == "succ") {
      t = prf_succ();
    } else if (head == "proj" || head == "lit") {
      auto a = parse_nat(atom());
      if (!a) return std::nullopt;
      if (head == "lit") {
        t = prf_lit(*a);
      } else {
        auto k = parse_nat(atom());
        if (!k) return std::nullopt;
        t = PrfTerm{PrfTerm::Proj, *a, *k, {}};
      }
    } else if (head == "prim") {
      std::string name = atom();
      int id = -1;
      for (int i = 0; i < static_cast<int>(Builtin::Count); ++i)
        if (name == builtin_name(static_cast<Builtin>(i))) id = i;
      if (id < 0) return std::nullopt;
      t = PrfTerm{PrfTerm::Prim, id, 0, {}};
    } else if (head == "comp" || head == "primrec" || head == "mu") {
      t.kind = head == "comp" ? PrfTerm::Comp : head == "primrec" ? PrfTerm::PrimRec : PrfTerm::Mu;
      for (;;) {
        ws();
        if (p < s.size() && s[p] == ')') break;
        auto k = term();
        if (!k) return std::nullopt;
        t.kids.push_back(std::move(*k));
      }
      const std::size_t n = t.kids.size();
      if ((t.kind == PrfTerm::Comp && n == 0) || (t.kind == PrfTerm::PrimRec && n != 2) ||
          (t.kind == PrfTerm::Mu && n != 1))
        return std::nullopt;
    } else {
      return std::nullopt;
    }
    if (!eat(')')) return std::nullopt;
    return t;
  }
};

}  // namespace

std::optional<PrfTerm> prf_parse(const std::string& text) {
  SexpParser sp{text};
  auto t = sp.term();
  sp.ws();
  if (!t || sp.p != text.size()) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------- evaluation

namespace {

Nat arg(const std::vector<Nat>& a, std::size_t i) { return i < a.size() ? a[i] : Nat(0); }

std::optional<Nat> run_builtin(Builtin b, const std::vector<Nat>& a) {
  switch (b) {
    case Builtin::Add: return arg(a, 0) + arg(a, 1);
    case Builtin::Mul: return arg(a, 0) * arg(a, 1);
    case Builtin::Monus: return arg(a, 0) >= arg(a, 1) ? Nat(arg(a, 0) - arg(a, 1)) : Nat(0);
    case Builtin::Pred: return arg(a, 0).is_zero() ? Nat(0) : Nat(arg(a, 0) - 1);
    case Builtin::Pair: return pair(arg(a, 0), arg(a, 1));
    case Builtin::Fst:
    case Builtin::Snd: {
      Nat x, y;
      if (!unpair(arg(a, 0), x, y)) return Nat(0);
      return b == Builtin::Fst ? x : y;
    }
    case Builtin::IsZero: return arg(a, 0).is_zero() ? Nat(1) : Nat(0);
    case Builtin::Interp: {
      auto d = desc_decode(arg(a, 0));
      if (!d) return Nat(0);
      try {
        TSkeleton sk = build_skeleton(*d);
        auto y = fun_rep(sk, arg(a, 1));
        return y ? Nat(*y + 1) : Nat(0);
      } catch (const CtgError&) {
        return Nat(0);
      }
    }
    case Builtin::UnhatCode: return unhat_code(arg(a, 0));
    case Builtin::HatCode:
    case Builtin::PpairCode: {
      try {
        auto realized = [&](std::size_t gi, std::size_t ei) -> TSkeleton {
          auto gd = desc_decode(arg(a, gi));
          if (!gd) throw NoDescription("bad game code");
          return skeleton_of_code(arg(a, ei), game_from_desc(*gd));
        };
        if (b == Builtin::HatCode) return canon_code(hat(realized(0, 1)));
        return canon_code(ppair(realized(0, 1), realized(2, 3)));
      } catch (const CtgError&) {
        return Nat(0);
      }
    }
    case Builtin::NumCode: return canon_code(num(arg(a, 0)));
    case Builtin::UExtract: return u_extract(arg(a, 0));
    case Builtin::CodMap: {
      ensure_builders();
      BuiltinHook h;
      {
        std::lock_guard<std::mutex> lock(hook_mu);
        h = hooks()[static_cast<int>(b)];
      }
      if (!h) return std::nullopt;
      return h(a);
    }
    case Builtin::Count: break;
  }
  return Nat(0);
}

// Term flattened into preorder ids.
struct Node {
  PrfTerm::Kind kind;
  Nat i, k;
  std::vector<std::size_t> kids;
};

void flatten(const PrfTerm& t, std::vector<Node>& out) {
  const std::size_t id = out.size();
  out.push_back(Node{t.kind, t.i, t.k, {}});
  for (const auto& c : t.kids) {
    out[id].kids.push_back(out.size());
    flatten(c, out);
  }
}

struct Evaluator {
  const std::vector<Node>& nodes;
  std::uint64_t fuel;
  Trace* trace;
  std::uint64_t steps = 0;
  bool exhausted = false;

  std::optional<Nat> eval(std::size_t id, const std::vector<Nat>& a) {
    if (exhausted) return std::nullopt;
    if (steps >= fuel) {
      exhausted = true;
      return std::nullopt;
    }
    ++steps;
    const Node& n = nodes[id];
    std::optional<Nat> r;
    switch (n.kind) {
      case PrfTerm::Zero: r = Nat(0); break;
      case PrfTerm::Succ: r = arg(a, 0) + 1; break;
      case PrfTerm::Proj: r = n.i < a.size() ? a[static_cast<std::size_t>(n.i)] : Nat(0); break;
      case PrfTerm::Lit: r = n.i; break;
      case PrfTerm::Prim: r = run_builtin(static_cast<Builtin>(static_cast<int>(n.i)), a); break;
      case PrfTerm::Comp: {
        std::vector<Nat> inner;
        for (std::size_t c = 1; c < n.kids.size(); ++c) {
          auto v = eval(n.kids[c], a);
          if (!v) return std::nullopt;
          inner.push_back(*v);
        }
        r = eval(n.kids[0], inner);
        break;
      }
      case PrfTerm::PrimRec: {
        const Nat count = arg(a, 0);
        std::vector<Nat> rest(a.size() > 1 ? a.begin() + 1 : a.end(), a.end());
        auto acc = eval(n.kids[0], rest);
        for (Nat i = 0; acc && i < count; ++i) {
          std::vector<Nat> sa{i, *acc};
          sa.insert(sa.end(), rest.begin(), rest.end());
          acc = eval(n.kids[1], sa);
        }
        r = acc;
        break;
      }
      case PrfTerm::Mu: {
        for (Nat z = 0;; ++z) {
          std::vector<Nat> za{z};
          za.insert(za.end(), a.begin(), a.end());
          auto v = eval(n.kids[0], za);
          if (!v) return std::nullopt;
          if (v->is_zero()) {
            r = z;
            break;
          }
        }
        break;
      }
    }
    if (r && trace) trace->push_back(TraceStep{id, a, *r});
    return r;
  }
};

}  // namespace

EvalResult prf_eval(const PrfTerm& t, const std::vector<Nat>& args, std::uint64_t fuel, Trace* trace) {
  std::vector<Node> nodes;
  flatten(t, nodes);
  Evaluator ev{nodes, fuel, trace};
  EvalResult res;
  res.value = ev.eval(0, args);
  res.fuel_exhausted = ev.exhausted;
  res.steps = ev.steps;
  return res;
}

EvalResult prf_eval(const Nat& e, const std::vector<Nat>& args, std::uint64_t fuel, Trace* trace) {
  return prf_eval(prf_decode(e), args, fuel, trace);
}

Nat trace_code(const Trace& t) {
  std::vector<Nat> xs;
  for (const auto& st : t) xs.push_back(pair(st.node, pair(encode_list(st.args), st.result)));
  return encode_list(xs);
}

std::optional<Trace> trace_decode(const Nat& n) {
  std::vector<Nat> xs;
  if (!decode_list(n, xs)) return std::nullopt;
  Trace t;
  for (const Nat& x : xs) {
    Nat node, rest, args, res;
    TraceStep st;
    if (!unpair(x, node, rest) || !unpair(rest, args, res) || !decode_list(args, st.args)) return std::nullopt;
    st.node = static_cast<std::size_t>(node);
    st.result = res;
    t.push_back(std::move(st));
  }
  return t;
}

std::string trace_text(const Trace& t) {
  std::ostringstream os;
  for (const auto& st : t) {
    os << st.node << "\t(";
    for (std::size_t i = 0; i < st.args.size(); ++i) os << (i ? "," : "") << to_string(st.args[i]);
    os << ")\t" << to_string(st.result) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- realizers

std::optional<Nat> fun_rep(const TSkeleton& sigma, const Nat& x) {
  JSeq s = decode_jseq(x);
  if (s.size() % 2 == 0 || code_jseq(s) != x) return std::nullopt;
  auto r = sigma->next(s);
  if (!r) return std::nullopt;
  return code_jseq(s.plus(r->m, r->j));
}

std::string RealizesVerdict::text() const {
  if (pass) return "pass-to-probes " + std::to_string(probes);
  return "fail(" + (witness ? jseq_text(*witness) : std::string("?")) + ")";
}

RealizesVerdict realizes(const Nat& e, const TSkeleton& sigma, std::size_t probes, std::size_t depth,
                         std::size_t budget, std::uint64_t fuel) {
  RealizesVerdict v;
  const PrfTerm t = prf_decode(e);
  for (const JSeq& s : odd_positions(sigma, depth, budget, probes)) {
    const Nat x = code_jseq(s);
    std::optional<Nat> want;
    try {
      want = fun_rep(sigma, x);
    } catch (const Divergence&) {
    }
    auto got = prf_eval(t, {x}, fuel).value;
    ++v.probes;
    if (got != want) {
      v.pass = false;
      v.witness = s;
      return v;
    }
  }
  return v;
}

PrfTerm canon_term(const Nat& k) {
  PrfTerm interp_x = prf_prim(Builtin::Interp, {prf_lit(k), prf_proj(0, 1)});
  PrfTerm interp_z = prf_prim(Builtin::Interp, {prf_lit(k), prf_proj(1, 2)});
  PrfTerm guard = prf_mu(prf_prim(Builtin::IsZero, {interp_z}));
  return prf_prim(Builtin::Pred, {prf_prim(Builtin::Add, {interp_x, guard})});
}

std::optional<Nat> canonical_desc(const Nat& e) {
  // canon_term(k) = comp(PRED, comp(ADD, comp(INTERP, lit k, ..), ..))
  PrfTerm t = prf_decode(e);
  if (t.kind != PrfTerm::Comp || t.kids.size() != 2) return std::nullopt;
  const PrfTerm& add = t.kids[1];
  if (add.kind != PrfTerm::Comp || add.kids.size() != 3) return std::nullopt;
  const PrfTerm& in = add.kids[1];
  if (in.kind != PrfTerm::Comp || in.kids.size() != 3 || in.kids[1].kind != PrfTerm::Lit) return std::nullopt;
  const Nat k = in.kids[1].i;
  if (prf_encode(canon_term(k)) != e) return std::nullopt;
  return k;
}

Nat canon_code(const TSkeleton& sigma) {
  if (!sigma->desc()) throw NoDescription("canon: skeleton has no description");
  return prf_encode(canon_term(desc_code(sigma->desc())));
}

CanonicalPair canon(const TSkeleton& sigma) { return CanonicalPair{sigma, canon_code(sigma)}; }

namespace {

std::optional<Occ> realized_respond(const PrfTerm& t, std::uint64_t fuel, const JSeq& s) {
  auto r = prf_eval(t, {code_jseq(s)}, fuel).value;
  if (!r) return std::nullopt;
  JSeq u = decode_jseq(*r);
  if (u.size() != s.size() + 1 || u.prefix(s.size()) != s) return std::nullopt;
  return u.occ.back();
}

}  // namespace

TSkeleton skeleton_of_code(const Nat& e, const GameExpr& game, std::uint64_t fuel) {
  if (auto k = canonical_desc(e)) {
    if (auto d = desc_decode(*k)) {
      try {
        return build_skeleton(*d);
      } catch (const NoDescription&) {
      }
    }
  }
  Desc d = mk_desc("realized", {e, fuel}, {game->desc});
  return intern_skeleton(d, [&] {
    PrfTerm t = prf_decode(e);
    return make_skeleton(game, d, WinningCert::none(),
                         [t, fuel](const JSeq& s) { return realized_respond(t, fuel, s); });
  });
}

Nat unhat_code(const Nat& e) {
  if (auto k = canonical_desc(e)) {
    if (auto d = desc_decode(*k)) {
      try {
        return canon_code(unhat(build_skeleton(*d)));
      } catch (const CtgError&) {
      }
    }
  }
  // !̂ adds no tags: single-thread positions are coded identically.
  return e;
}

void register_effectivity_builders() {
  register_skeleton_builder("realized", [](Desc d) {
    return skeleton_of_code(d->nums.at(0), game_from_desc(d->kids.at(0)), static_cast<std::uint64_t>(d->nums.at(1)));
  });
}

// ---------------------------------------------------------------- protocol

namespace {

// One step of O in the numeral protocol: the answer to P's last move, or the
// final numeral when P answered the opening question.
struct OStep {
  std::optional<Nat> result;
  std::optional<Occ> answer;
};

OStep o_step(const JSeq& s, const Nat& en, const Nat& n) {
  OStep st;
  const Move& m = s.move(s.size());
  Tag t = m.tag;
  if (t->kind != TagKind::Real || t->num != en) return st;
  t = t->a;
  if (t->kind == TagKind::Right && t->a->kind == TagKind::Num && m.qa == QA::A) {
    st.result = t->a->num;
    return st;
  }
  if (t->kind == TagKind::Left && m.qa == QA::Q) {
    Tag inner = t->a;
    std::vector<Tag> wraps;
    while (inner->kind == TagKind::Left || inner->kind == TagKind::Right || inner->kind == TagKind::Exp) {
      wraps.push_back(inner);
      inner = inner->a;
    }
    if (inner != t_q()) return st;
    Tag ans = t_num(n);
    for (auto it = wraps.rbegin(); it != wraps.rend(); ++it) {
      Tag w = *it;
      ans = w->kind == TagKind::Left ? t_left(ans) : w->kind == TagKind::Right ? t_right(ans) : t_exp(w->num, ans);
    }
    st.answer = Occ{Move{t_real(en, t_left(ans)), Op::O, QA::A}, static_cast<std::uint32_t>(s.size())};
  }
  return st;
}

JSeq opening(const Nat& en) {
  JSeq s;
  s.push(Move{t_real(en, t_right(t_q())), Op::O, QA::Q}, 0);
  return s;
}

Nat numeral_hat_code(const Nat& n) { return canon_code(hat(num(n))); }

}  // namespace

Nat ProtocolRun::code() const {
  if (!result) return 0;
  std::vector<Nat> cs;
  for (const auto& c : calls) cs.push_back(pair(c.x, pair(trace_code(c.trace), c.y)));
  return pair(e, pair(n, pair(encode_list(cs), *result)));
}

ProtocolRun run_protocol(const Nat& e, const Nat& n, std::uint64_t fuel, std::size_t max_calls) {
  ProtocolRun run{e, n, {}, std::nullopt, false};
  const Nat en = numeral_hat_code(n);
  const PrfTerm t = prf_decode(e);
  JSeq s = opening(en);
  for (std::size_t i = 0; i < max_calls; ++i) {
    ProtocolCall call;
    call.x = code_jseq(s);
    auto r = prf_eval(t, {call.x}, fuel, &call.trace);
    if (!r.value) {
      run.fuel_exhausted = r.fuel_exhausted;
      return run;
    }
    call.y = *r.value;
    JSeq u = decode_jseq(call.y);
    if (u.size() != s.size() + 1 || u.prefix(s.size()) != s) return run;
    run.calls.push_back(std::move(call));
    s = u;
    OStep st = o_step(s, en, n);
    if (st.result) {
      run.result = st.result;
      return run;
    }
    if (!st.answer) return run;
    s.push(st.answer->m, st.answer->j);
  }
  return run;
}

bool t_pred(const Nat& e, const Nat& n, const Nat& c) {
  Nat ce, rest, cn, rest2, calls_code, m;
  if (!unpair(c, ce, rest) || !unpair(rest, cn, rest2) || !unpair(rest2, calls_code, m)) return false;
  if (ce != e || cn != n) return false;
  std::vector<Nat> calls;
  if (!decode_list(calls_code, calls) || calls.empty()) return false;
  const Nat en = numeral_hat_code(n);
  const PrfTerm t = prf_decode(e);
  JSeq s = opening(en);
  for (std::size_t i = 0; i < calls.size(); ++i) {
    Nat x, r2, tc, y;
    if (!unpair(calls[i], x, r2) || !unpair(r2, tc, y) || x != code_jseq(s)) return false;
    auto recorded = trace_decode(tc);
    if (!recorded) return false;
    Trace replay;
    auto r = prf_eval(t, {x}, recorded->size(), &replay);
    if (!r.value || *r.value != y || replay != *recorded) return false;
    JSeq u = decode_jseq(y);
    if (u.size() != s.size() + 1 || u.prefix(s.size()) != s) return false;
    s = u;
    OStep st = o_step(s, en, n);
    if (i + 1 == calls.size()) return st.result && *st.result == m;
    if (!st.answer) return false;
    s.push(st.answer->m, st.answer->j);
  }
  return false;
}

Nat u_extract(const Nat& c) {
  Nat e, rest, n, rest2, calls, m;
  if (!unpair(c, e, rest) || !unpair(rest, n, rest2) || !unpair(rest2, calls, m)) return 0;
  return t_pred(e, n, c) ? m : Nat(0);
}

std::optional<Nat> extension(const TSkeleton& phi, const Nat& n) {
  if (phi->game()->kind != GK::RLimp) return extension_plain(phi, n);
  const Nat en = numeral_hat_code(n);
  JSeq s = opening(en);
  for (int i = 0; i < 1000; ++i) {
    std::optional<Occ> r;
    try {
      r = phi->next(s);
    } catch (const CtgError&) {
      return std::nullopt;
    }
    if (!r) return std::nullopt;
    s.push(r->m, r->j);
    OStep st = o_step(s, en, n);
    if (st.result) return st.result;
    if (!st.answer) return std::nullopt;
    s.push(st.answer->m, st.answer->j);
  }
  return std::nullopt;
}

}  // namespace ctg
