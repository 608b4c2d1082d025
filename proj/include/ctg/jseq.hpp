#pragma once

#include "ctg/tag.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ctg {

// One occurrence: a move and its justifier (1-based, 0 = initial).
struct Occ {
  Move m;
  std::uint32_t j = 0;
  bool operator==(const Occ& o) const { return m == o.m && j == o.j; }
};

struct JSeq {
  std::vector<Occ> occ;

  std::size_t size() const { return occ.size(); }
  bool empty() const { return occ.empty(); }
  // 1-based access, matching justifier indices.
  const Occ& at(std::size_t i) const { return occ.at(i - 1); }
  const Move& move(std::size_t i) const { return occ.at(i - 1).m; }
  std::uint32_t just(std::size_t i) const { return occ.at(i - 1).j; }
  void push(const Move& m, std::uint32_t j) { occ.push_back({m, j}); }
  JSeq prefix(std::size_t n) const;
  JSeq plus(const Move& m, std::uint32_t j) const;
  bool operator==(const JSeq& o) const { return occ == o.occ; }
  bool operator!=(const JSeq& o) const { return !(*this == o); }
};

std::size_t hash_jseq(const JSeq& s);

class ArenaImpl {
 public:
  virtual ~ArenaImpl() = default;
  virtual bool contains(const Move& m) const = 0;
  virtual bool is_initial(const Move& m) const = 0;
  virtual bool enables(const Move& m, const Move& n) const = 0;
  virtual std::vector<Move> initial(std::size_t budget) const = 0;
  virtual std::vector<Move> enabled_by(const Move& m, std::size_t budget) const = 0;
  virtual std::optional<std::size_t> depth_bound() const = 0;
};
using Arena = std::shared_ptr<const ArenaImpl>;

// Indices (1-based, ascending) of the occurrences forming the views.
std::vector<std::size_t> p_view_indices(const JSeq& s);
std::vector<std::size_t> o_view_indices(const JSeq& s);
// Views as j-subsequences; throw MalformedView if a kept pointer leaves the view.
JSeq p_view(const JSeq& s);
JSeq o_view(const JSeq& s);

// Keep the listed occurrences; pointers to dropped occurrences are followed
// further back until they land on a kept one (or become 0).
JSeq jsub(const JSeq& s, const std::vector<std::size_t>& keep);
// Same, with the index map from kept positions back to s.
JSeq jsub(const JSeq& s, const std::vector<std::size_t>& keep, std::vector<std::size_t>& back);

// Root (initial occurrence) that occurrence i is hereditarily justified by.
std::size_t root_of(const JSeq& s, std::size_t i);
JSeq thread(const JSeq& s, const std::vector<std::size_t>& initials);

bool legal(const JSeq& s, const ArenaImpl& a);
// Reason for the first violated clause, or empty if legal.
std::string legality_reason(const JSeq& s, const ArenaImpl& a);

std::string to_transcript(const JSeq& s);
std::optional<JSeq> parse_transcript(const std::string& text);
std::string jseq_text(const JSeq& s);  // compact one-line form

}  // namespace ctg

template <>
struct std::hash<ctg::JSeq> {
  std::size_t operator()(const ctg::JSeq& s) const { return ctg::hash_jseq(s); }
};
