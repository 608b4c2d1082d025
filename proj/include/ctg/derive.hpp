#pragma once

#include "ctg/syntax.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ctg {

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  std::string rule;  // Ctx-Emp, Var, Π-Intro, N-CompS, ...
  Judgement concl;
  std::vector<DerivPtr> premises;
  std::string note;  // oracle verdict on semantic equality leaves

  std::size_t size() const;
  // Indented tree, one judgement per line.
  std::string text() const;
  // Rule names in pre-order.
  std::vector<std::string> rules() const;
};

struct IllTyped : CtgError {
  std::string rule;
  Judgement at;
  IllTyped(std::string r, Judgement j, const std::string& why)
      : CtgError(r + ": " + print(j) + ": " + why), rule(std::move(r)), at(std::move(j)) {}
};

struct OracleVerdict {
  bool equal = false;
  std::string label;  // "equal-to-depth 8", "distinct(...)"
};
// Decides the equality side conditions the rules do not settle syntactically.
struct EqOracle {
  std::function<OracleVerdict(const SCtx&, const Expr&, const Expr&)> types;
  std::function<OracleVerdict(const SCtx&, const Expr&, const Expr&, const Expr&)> terms;
};
// α-equivalence only.
EqOracle syntactic_oracle();

class Deriver {
 public:
  explicit Deriver(EqOracle oracle = syntactic_oracle());

  DerivPtr derive(const Judgement& j);
  DerivPtr ctx(const SCtx& g);
  DerivPtr type(const SCtx& g, const Expr& a);
  DerivPtr infer(const SCtx& g, const Expr& t);
  DerivPtr check(const SCtx& g, const Expr& t, const Expr& a);
  DerivPtr type_eq(const SCtx& g, const Expr& a, const Expr& b);
  DerivPtr term_eq(const SCtx& g, const Expr& a, const Expr& b, const Expr& ty);

 private:
  DerivPtr ctx_eq(const SCtx& g, const SCtx& h);
  std::optional<DerivPtr> syntactic_eq(const SCtx& g, const Expr& a, const Expr& b, const Expr& ty, const DerivPtr& da,
                                       std::size_t fuel);
  std::optional<DerivPtr> congruence(const SCtx& g, const Expr& a, const Expr& b, const Expr& ty, std::size_t fuel);
  DerivPtr conv(const SCtx& g, DerivPtr d, const Expr& target);
  EqOracle oracle_;
  std::map<std::string, DerivPtr> ctx_cache_, type_cache_;
};

DerivPtr derive(const Judgement& j, const EqOracle& oracle = syntactic_oracle());

// The one-step contraction of a redex at the root, with the rule name.
struct Contraction {
  std::string rule;
  Expr result;
};
std::optional<Contraction> contract_root(const Expr& t);

}  // namespace ctg
