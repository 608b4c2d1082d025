#include "ctg/program.hpp"

#include <stdexcept>

namespace ctg {

Program::Program(const std::string& text, InterpConfig cfg) : defs_(inline_defs(parse_file(text))), interp_(cfg) {}

const Def& Program::def(const std::string& name) const {
  for (const auto& d : defs_)
    if (d.name == name) return d;
  throw std::out_of_range("no definition named " + name);
}

DerivPtr Program::derive(const std::string& name) {
  const Def& d = def(name);
  Judgement j{JK::Term, {}, {}, d.term, nullptr, d.ty};
  if (!j.ty) j.ty = Deriver(interp_.oracle()).infer({}, d.term)->concl.ty;
  return interp_.derive(j);
}

}  // namespace ctg
