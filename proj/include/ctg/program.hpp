#pragma once

#include "ctg/interp.hpp"

#include <string>
#include <vector>

namespace ctg {

// A parsed definition file with its definitions inlined, checked on demand.
class Program {
 public:
  explicit Program(const std::string& text, InterpConfig cfg = {});

  const std::vector<Def>& defs() const { return defs_; }
  const Def& def(const std::string& name) const;  // throws std::out_of_range
  // Derivation of `|- term : type`, inferring the type when the def has none.
  DerivPtr derive(const std::string& name);
  Tm term(const std::string& name) { return interp_.interp_tm(derive(name)); }
  Interpreter& interp() { return interp_; }

 private:
  std::vector<Def> defs_;
  Interpreter interp_;
};

}  // namespace ctg
