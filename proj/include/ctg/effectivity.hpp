#pragma once

#include "ctg/skeleton.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ctg {

// ---- coding of justified sequences ----

Nat code_jseq(const JSeq& s);
JSeq decode_jseq(const Nat& n);  // junk decodes to the empty sequence

// ---- the partial-recursive machine ----

enum class Builtin : int {
  Add,
  Mul,
  Monus,
  Pred,
  Pair,
  Fst,
  Snd,
  IsZero,
  Interp,     // (k, x): 0 if the skeleton described by k is silent at x, else 1 + code(x.m)
  CodMap,     // (k, e): realizer of the codomain component of the described DoWRWLI at e
  UnhatCode,  // (e): realizer translation through the !̂ tag bijection
  HatCode,    // (e): canonical realizer of the promotion of a realized point
  PpairCode,  // (a, b): canonical realizer of the pairing of two realized points
  NumCode,    // (n): canonical realizer of the numeral n
  UExtract,   // (c): result extraction from a computation history
  Count
};
const char* builtin_name(Builtin b);

// Builtins whose meaning lives in a later layer (CodMap) are installed here.
using BuiltinHook = std::function<std::optional<Nat>(const std::vector<Nat>&)>;
void set_builtin_hook(Builtin b, BuiltinHook fn);

struct PrfTerm {
  enum Kind : int { Zero, Succ, Proj, Comp, PrimRec, Mu, Lit, Prim };
  Kind kind = Zero;
  Nat i = 0;  // Proj index, Lit value, Prim id
  Nat k = 0;  // Proj arity
  std::vector<PrfTerm> kids;  // Comp: f, g1..gk; PrimRec: base, step; Mu: f

  bool operator==(const PrfTerm& o) const;
};

PrfTerm prf_zero();
PrfTerm prf_succ();
PrfTerm prf_proj(std::size_t i, std::size_t k);
PrfTerm prf_comp(PrfTerm f, std::vector<PrfTerm> gs);
PrfTerm prf_primrec(PrfTerm base, PrfTerm step);
PrfTerm prf_mu(PrfTerm f);
PrfTerm prf_lit(const Nat& v);
PrfTerm prf_prim(Builtin b, std::vector<PrfTerm> args);  // Comp(Prim b, args)

Nat prf_encode(const PrfTerm& t);
PrfTerm prf_decode(const Nat& e);  // junk decodes to Zero
std::string prf_text(const PrfTerm& t);
std::optional<PrfTerm> prf_parse(const std::string& text);

struct TraceStep {
  std::size_t node = 0;  // preorder id in the decoded term
  std::vector<Nat> args;
  Nat result;
  bool operator==(const TraceStep& o) const { return node == o.node && args == o.args && result == o.result; }
};
using Trace = std::vector<TraceStep>;

struct EvalResult {
  std::optional<Nat> value;
  bool fuel_exhausted = false;
  std::uint64_t steps = 0;
};

// Big-step evaluation; every node evaluation (builtins included) costs one step.
EvalResult prf_eval(const Nat& e, const std::vector<Nat>& args, std::uint64_t fuel, Trace* trace = nullptr);
EvalResult prf_eval(const PrfTerm& t, const std::vector<Nat>& args, std::uint64_t fuel, Trace* trace = nullptr);

Nat trace_code(const Trace& t);
std::optional<Trace> trace_decode(const Nat& n);
std::string trace_text(const Trace& t);  // one step per line

// ---- realizers ----

// fun(σ)(code(s.m)) = code(s.m.n) when σ answers n at s.m.
std::optional<Nat> fun_rep(const TSkeleton& sigma, const Nat& x);

struct RealizesVerdict {
  bool pass = true;
  std::size_t probes = 0;
  std::optional<JSeq> witness;
  std::string text() const;  // "pass-to-probes k" or "fail(...)"
};
RealizesVerdict realizes(const Nat& e, const TSkeleton& sigma, std::size_t probes, std::size_t depth = Defaults::depth,
                         std::size_t budget = 4, std::uint64_t fuel = Defaults::fuel);

struct CanonicalPair {
  TSkeleton skeleton;
  Nat code;
};
// Compiles the description of σ; throws NoDescription for opaque skeletons.
CanonicalPair canon(const TSkeleton& sigma);
Nat canon_code(const TSkeleton& sigma);
PrfTerm canon_term(const Nat& desc_code);
// Description code k if e is a canonical code.
std::optional<Nat> canonical_desc(const Nat& e);

// Skeleton on `game` realized by e: the canonical skeleton when e is canonical,
// otherwise the next-move function obtained by running e on coded positions.
TSkeleton skeleton_of_code(const Nat& e, const GameExpr& game, std::uint64_t fuel = Defaults::fuel);

// Realizer translation through the !̂ tag bijection.
Nat unhat_code(const Nat& e);

// ---- T-predicate ----

// Running a realizer of a morphism !̂N ⇛ N on input n: O opens with the
// canonical realizer of n̄†, answers every domain question with n, and the
// realizer is called once per odd position. The history records each call.
struct ProtocolCall {
  Nat x, y;
  Trace trace;
};
struct ProtocolRun {
  Nat e, n;
  std::vector<ProtocolCall> calls;
  std::optional<Nat> result;
  bool fuel_exhausted = false;
  Nat code() const;  // 0 unless result is present
};
ProtocolRun run_protocol(const Nat& e, const Nat& n, std::uint64_t fuel = Defaults::fuel, std::size_t max_calls = 64);
bool t_pred(const Nat& e, const Nat& n, const Nat& c);
Nat u_extract(const Nat& c);

// Numeral a point skeleton on N (or an np-morphism's extension) yields.
std::optional<Nat> extension(const TSkeleton& phi, const Nat& n);

void register_effectivity_builders();

}  // namespace ctg
