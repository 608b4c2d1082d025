#pragma once

#include "ctg/cwf.hpp"
#include "ctg/derive.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ctg {

struct InterpConfig {
  std::size_t depth = Defaults::depth;
  std::size_t budget = Defaults::budget;
  std::uint64_t fuel = Defaults::fuel;
};

// ⟦_⟧ from derivations into the game CwF. Derivations are produced with the
// semantic ≡_d oracle for the equality side conditions.
class Interpreter {
 public:
  explicit Interpreter(InterpConfig cfg = {});
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  const InterpConfig& config() const { return cfg_; }
  EqOracle oracle();
  DerivPtr derive(const Judgement& j);

  Ctx interp_ctx(const DerivPtr& d);
  Ty interp_ty(const DerivPtr& d);
  Tm interp_tm(const DerivPtr& d);

  // Shorthands that derive first.
  Ty type_of(const SCtx& g, const Expr& a);
  Tm term_of(const SCtx& g, const Expr& t, const Expr& a);

  // ≡_d of two term derivations with the same context and type.
  EqVerdict judgmental_eq(const DerivPtr& d1, const DerivPtr& d2, std::optional<std::size_t> depth = std::nullopt);
  // Readback of a closed numeral term; nullopt when the strategy does not answer.
  std::optional<Nat> eval_closed_nat(const DerivPtr& d);

 private:
  struct SemCtx {
    Ctx ctx;
    std::vector<Ty> entries;  // entry i lives over the first i entries
  };
  const SemCtx& sem_ctx(const SCtx& g);
  Tm tm_rule(const Derivation& d, const Ty& ty);

  InterpConfig cfg_;
  std::unique_ptr<Deriver> deriver_;
  std::map<std::string, SemCtx> ctxs_;
  std::map<std::string, Ty> tys_;
  std::map<std::string, Tm> tms_;
};

}  // namespace ctg
