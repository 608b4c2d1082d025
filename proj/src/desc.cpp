#include "ctg/desc.hpp"

#include <boost/functional/hash.hpp>

#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace ctg {

namespace {

struct DHash {
  std::size_t operator()(const DescNode* d) const { return d->hash; }
};
struct DEq {
  bool operator()(const DescNode* x, const DescNode* y) const {
    return x->head == y->head && x->nums == y->nums && x->kids == y->kids;
  }
};

struct Table {
  std::mutex mu;
  std::unordered_set<const DescNode*, DHash, DEq> set;
  std::vector<std::unique_ptr<DescNode>> owned;
  std::unordered_map<const DescNode*, Nat> codes;
  std::unordered_map<Nat, const DescNode*, NatHash> decoded;
};

Table& table() {
  static Table* t = new Table();
  return *t;
}

}  // namespace

Desc mk_desc(const std::string& head, std::vector<Nat> nums, std::vector<Desc> kids) {
  DescNode proto{head, std::move(nums), std::move(kids), 0};
  std::size_t h = std::hash<std::string>{}(proto.head);
  for (const auto& n : proto.nums) boost::hash_combine(h, hash_nat(n));
  for (Desc k : proto.kids) boost::hash_combine(h, k->hash);
  proto.hash = h;
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.set.find(&proto);
  if (it != t.set.end()) return *it;
  auto node = std::make_unique<DescNode>(std::move(proto));
  Desc p = node.get();
  t.owned.push_back(std::move(node));
  t.set.insert(p);
  return p;
}

Nat desc_code(Desc d) {
  auto& t = table();
  {
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.codes.find(d);
    if (it != t.codes.end()) return it->second;
  }
  std::vector<Nat> kc;
  kc.reserve(d->kids.size());
  for (Desc k : d->kids) kc.push_back(desc_code(k));
  Nat c = pair(encode_string(d->head), pair(encode_list(d->nums), encode_list(kc)));
  std::lock_guard<std::mutex> lock(t.mu);
  t.codes.emplace(d, c);
  t.decoded.emplace(c, d);
  return c;
}

std::optional<Desc> desc_decode(const Nat& n) {
  auto& t = table();
  {
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.decoded.find(n);
    if (it != t.decoded.end()) return it->second;
  }
  Nat h, rest, ns, ks;
  if (!unpair(n, h, rest) || !unpair(rest, ns, ks)) return std::nullopt;
  std::string head;
  std::vector<Nat> nums, kcodes;
  if (!decode_string(h, head) || !decode_list(ns, nums) || !decode_list(ks, kcodes)) return std::nullopt;
  std::vector<Desc> kids;
  for (const auto& kc : kcodes) {
    auto k = desc_decode(kc);
    if (!k) return std::nullopt;
    kids.push_back(*k);
  }
  Desc d = mk_desc(head, std::move(nums), std::move(kids));
  if (desc_code(d) != n) return std::nullopt;
  return d;
}

std::string desc_text(Desc d) {
  std::string out = d->head;
  if (d->nums.empty() && d->kids.empty()) return out;
  out += "(";
  bool first = true;
  for (const auto& n : d->nums) {
    if (!first) out += ",";
    first = false;
    std::string s = to_string(n);
    out += s.size() > 24 ? "#" + std::to_string(bit_length(n)) + "b" : s;
  }
  for (Desc k : d->kids) {
    if (!first) out += ",";
    first = false;
    out += desc_text(k);
  }
  return out + ")";
}

std::size_t desc_size(Desc d) {
  std::size_t n = 1;
  for (Desc k : d->kids) n += desc_size(k);
  return n;
}

}  // namespace ctg
