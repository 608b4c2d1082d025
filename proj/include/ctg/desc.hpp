#pragma once

#include "ctg/nat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctg {

// Symbolic description of a constructed object (game, skeleton, family,
// morphism). Interned, so equality is pointer equality. Descriptions are
// what canonical realizers compile.
struct DescNode;
using Desc = const DescNode*;

struct DescNode {
  std::string head;
  std::vector<Nat> nums;
  std::vector<Desc> kids;
  std::size_t hash = 0;
};

Desc mk_desc(const std::string& head, std::vector<Nat> nums = {}, std::vector<Desc> kids = {});

Nat desc_code(Desc d);
std::optional<Desc> desc_decode(const Nat& n);
std::string desc_text(Desc d);
std::size_t desc_size(Desc d);

}  // namespace ctg
