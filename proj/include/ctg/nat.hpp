#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ctg {

using Nat = boost::multiprecision::cpp_int;

std::size_t bit_length(const Nat& n);
std::size_t hash_nat(const Nat& n);
std::uint64_t to_u64(const Nat& n);  // saturating
std::string to_string(const Nat& n);
std::optional<Nat> parse_nat(const std::string& s);

// Injective pairing whose bit size is additive in its arguments (plus a
// logarithmic header). Nested codes stay linear in the size of the data.
Nat pair(const Nat& a, const Nat& b);
// Inverse of `pair`; false if `p` is not in its image.
bool unpair(const Nat& p, Nat& a, Nat& b);

// Cantor pairing, used for exponential thread indices.
Nat cantor(const Nat& i, const Nat& j);
std::pair<Nat, Nat> cantor_inv(const Nat& k);

// nil = 0, cons(x, xs) = pair(x, xs)
Nat encode_list(const std::vector<Nat>& xs);
bool decode_list(const Nat& n, std::vector<Nat>& out);

Nat encode_string(const std::string& s);

struct NatHash {
  std::size_t operator()(const Nat& n) const { return hash_nat(n); }
};
bool decode_string(const Nat& n, std::string& out);

}  // namespace ctg
