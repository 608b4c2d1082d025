#include "ctg/combinators.hpp"
#include "ctg/church.hpp"
#include "ctg/effectivity.hpp"
#include "ctg/npgame.hpp"

namespace ctg {

void register_all_builders() {
  register_combinator_builders();
  register_effectivity_builders();
  register_np_builders();
  register_do_builders();
  register_cwf_builders();
  register_church_builders();
}

}  // namespace ctg
