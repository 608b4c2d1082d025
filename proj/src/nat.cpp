#include "ctg/nat.hpp"

#include <boost/functional/hash.hpp>

namespace ctg {

std::size_t bit_length(const Nat& n) {
  if (n.is_zero()) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(n)) + 1;
}

std::size_t hash_nat(const Nat& n) {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  const auto& be = n.backend();
  for (unsigned i = 0; i < be.size(); ++i) boost::hash_combine(h, be.limbs()[i]);
  return h;
}

std::uint64_t to_u64(const Nat& n) {
  if (bit_length(n) > 64) return UINT64_MAX;
  return n.convert_to<std::uint64_t>();
}

std::string to_string(const Nat& n) { return n.str(); }

std::optional<Nat> parse_nat(const std::string& s) {
  if (s.empty() || s.size() > 4096) return std::nullopt;
  for (char c : s)
    if (c < '0' || c > '9') return std::nullopt;
  return Nat(s);
}

namespace {

Nat low_bits(const Nat& n, std::size_t width) {
  if (width == 0) return 0;
  Nat mask = (Nat(1) << width) - 1;
  return n & mask;
}

}  // namespace

// Layout, most significant first: marker 1 | gamma(len(a)+1) | a | b.
Nat pair(const Nat& a, const Nat& b) {
  const std::size_t la = bit_length(a), lb = bit_length(b);
  const Nat g = la + 1;
  const std::size_t w = bit_length(g);
  Nat v = Nat(1) << (2 * w - 1);
  v |= g;
  v <<= la;
  v |= a;
  v <<= lb;
  v |= b;
  return v;
}

bool unpair(const Nat& p, Nat& a, Nat& b) {
  if (p.is_zero()) return false;
  const std::size_t total = bit_length(p) - 1;  // bits after the marker
  std::size_t pos = total;                      // bits still unread
  std::size_t zeros = 0;
  while (pos > 0 && !boost::multiprecision::bit_test(p, pos - 1)) {
    ++zeros;
    --pos;
  }
  const std::size_t w = zeros + 1;
  if (pos < w) return false;
  const Nat g = low_bits(p >> (pos - w), w);
  pos -= w;
  if (g.is_zero() || bit_length(g) > 63) return false;
  const std::size_t la = static_cast<std::size_t>(g) - 1;
  if (pos < la) return false;
  a = low_bits(p >> (pos - la), la);
  if (la > 0 && !boost::multiprecision::bit_test(a, la - 1)) return false;
  pos -= la;
  b = low_bits(p, pos);
  if (pos > 0 && !boost::multiprecision::bit_test(b, pos - 1)) return false;
  return true;
}

Nat cantor(const Nat& i, const Nat& j) {
  const Nat s = i + j;
  return s * (s + 1) / 2 + j;
}

std::pair<Nat, Nat> cantor_inv(const Nat& k) {
  // largest w with w(w+1)/2 <= k
  Nat w = boost::multiprecision::sqrt(Nat(8 * k + 1));
  w = (w - 1) / 2;
  while (w * (w + 1) / 2 > k) --w;
  while ((w + 1) * (w + 2) / 2 <= k) ++w;
  const Nat j = k - w * (w + 1) / 2;
  return {w - j, j};
}

Nat encode_list(const std::vector<Nat>& xs) {
  Nat acc = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = pair(*it, acc);
  return acc;
}

bool decode_list(const Nat& n, std::vector<Nat>& out) {
  out.clear();
  Nat cur = n;
  while (!cur.is_zero()) {
    Nat h, t;
    if (!unpair(cur, h, t)) return false;
    out.push_back(std::move(h));
    cur = std::move(t);
  }
  return true;
}

Nat encode_string(const std::string& s) {
  Nat v = 1;
  for (unsigned char c : s) {
    v <<= 8;
    v |= c;
  }
  return v;
}

bool decode_string(const Nat& n, std::string& out) {
  const std::size_t len = bit_length(n);
  if (len == 0 || (len - 1) % 8 != 0) return false;
  const std::size_t bytes = (len - 1) / 8;
  out.assign(bytes, '\0');
  Nat cur = n;
  for (std::size_t i = 0; i < bytes; ++i) {
    out[bytes - 1 - i] = static_cast<char>(static_cast<unsigned>(cur & 0xff));
    cur >>= 8;
  }
  return true;
}

}  // namespace ctg
