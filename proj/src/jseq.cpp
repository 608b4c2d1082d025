#include "ctg/jseq.hpp"

#include "ctg/errors.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <sstream>

namespace ctg {

JSeq JSeq::prefix(std::size_t n) const {
  JSeq r;
  r.occ.assign(occ.begin(), occ.begin() + static_cast<std::ptrdiff_t>(std::min(n, occ.size())));
  return r;
}

JSeq JSeq::plus(const Move& m, std::uint32_t j) const {
  JSeq r = *this;
  r.push(m, j);
  return r;
}

std::size_t hash_jseq(const JSeq& s) {
  std::size_t h = s.size();
  for (const auto& o : s.occ) {
    boost::hash_combine(h, hash_move(o.m));
    boost::hash_combine(h, o.j);
  }
  return h;
}

namespace {

// Walks the view clauses over the prefix of length n.
std::vector<std::size_t> view_indices(const JSeq& s, std::size_t n, Op self) {
  std::vector<std::size_t> out;
  std::size_t i = n;
  while (i >= 1) {
    const Occ& o = s.occ[i - 1];
    if (self == Op::P) {
      if (o.m.op == Op::P) {
        out.push_back(i);
        --i;
      } else if (o.j == 0) {
        out.push_back(i);
        break;
      } else {
        out.push_back(i);
        out.push_back(o.j);
        i = o.j - 1;
      }
    } else {
      if (o.m.op == Op::O || o.j == 0) {
        out.push_back(i);
        --i;
      } else {
        out.push_back(i);
        out.push_back(o.j);
        i = o.j - 1;
      }
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

JSeq view_seq(const JSeq& s, const std::vector<std::size_t>& idx, const char* which) {
  std::vector<std::size_t> pos(s.size() + 1, 0);
  for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = k + 1;
  JSeq r;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Occ& o = s.occ[idx[k] - 1];
    std::uint32_t j = 0;
    if (o.j != 0) {
      j = static_cast<std::uint32_t>(pos[o.j]);
      if (j == 0) throw MalformedView(std::string(which) + ": justifier of occurrence " + std::to_string(idx[k]) + " is outside the view");
    }
    r.push(o.m, j);
  }
  return r;
}

}  // namespace

std::vector<std::size_t> p_view_indices(const JSeq& s) { return view_indices(s, s.size(), Op::P); }
std::vector<std::size_t> o_view_indices(const JSeq& s) { return view_indices(s, s.size(), Op::O); }
JSeq p_view(const JSeq& s) { return view_seq(s, p_view_indices(s), "P-view"); }
JSeq o_view(const JSeq& s) { return view_seq(s, o_view_indices(s), "O-view"); }

JSeq jsub(const JSeq& s, const std::vector<std::size_t>& keep, std::vector<std::size_t>& back) {
  std::vector<std::size_t> pos(s.size() + 1, 0);
  for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k + 1;
  JSeq r;
  back.assign(keep.begin(), keep.end());
  for (std::size_t i : keep) {
    const Occ& o = s.occ[i - 1];
    std::size_t j = o.j;
    while (j != 0 && pos[j] == 0) j = s.occ[j - 1].j;
    r.push(o.m, static_cast<std::uint32_t>(j == 0 ? 0 : pos[j]));
  }
  return r;
}

JSeq jsub(const JSeq& s, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> back;
  return jsub(s, keep, back);
}

std::size_t root_of(const JSeq& s, std::size_t i) {
  while (s.occ[i - 1].j != 0) i = s.occ[i - 1].j;
  return i;
}

JSeq thread(const JSeq& s, const std::vector<std::size_t>& initials) {
  std::vector<char> chosen(s.size() + 1, 0);
  for (std::size_t k : initials) {
    if (k == 0 || k > s.size() || s.occ[k - 1].j != 0)
      throw NotInitial("occurrence " + std::to_string(k) + " is not initial");
    chosen[k] = 1;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i <= s.size(); ++i)
    if (chosen[root_of(s, i)]) keep.push_back(i);
  return jsub(s, keep);
}

std::string legality_reason(const JSeq& s, const ArenaImpl& a) {
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const Occ& o = s.occ[i - 1];
    const std::string at = "occurrence " + std::to_string(i) + ": ";
    if (!a.contains(o.m)) return at + "move not in arena";
    if (o.j >= i) return at + "justifier points forward";
    if (o.j == 0) {
      if (!a.is_initial(o.m)) return at + "non-initial move without justifier";
    } else if (!a.enables(s.occ[o.j - 1].m, o.m)) {
      return at + "justifier does not enable the move";
    }
    if (i == 1 && o.m.op != Op::O) return at + "first move must be O";
    if (i > 1 && o.m.op == s.occ[i - 2].m.op) return at + "alternation violated";
    if (o.j != 0) {
      auto v = view_indices(s, i - 1, o.m.op);
      if (!std::binary_search(v.begin(), v.end(), static_cast<std::size_t>(o.j)))
        return at + "justifier not visible";
    }
  }
  return {};
}

bool legal(const JSeq& s, const ArenaImpl& a) { return legality_reason(s, a).empty(); }

std::string to_transcript(const JSeq& s) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const Occ& o = s.occ[i - 1];
    out << i << '\t' << tag_text(o.m.tag) << '\t' << (o.m.op == Op::O ? 'O' : 'P') << '\t'
        << (o.m.qa == QA::Q ? 'Q' : 'A') << '\t' << o.j << '\n';
  }
  return out.str();
}

std::optional<JSeq> parse_transcript(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  JSeq s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t idx = 0, j = 0;
    std::string tag, op, qa;
    if (!(ls >> idx >> tag >> op >> qa >> j)) return std::nullopt;
    if (idx != s.size() + 1 || j >= idx) return std::nullopt;
    auto t = parse_tag(tag);
    if (!t || (op != "O" && op != "P") || (qa != "Q" && qa != "A")) return std::nullopt;
    s.push(Move{*t, op == "O" ? Op::O : Op::P, qa == "Q" ? QA::Q : QA::A}, static_cast<std::uint32_t>(j));
  }
  return s;
}

std::string jseq_text(const JSeq& s) {
  std::string out;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i > 1) out += " . ";
    out += tag_text(s.move(i).tag);
    out += s.move(i).op == Op::O ? "^O" : "^P";
    if (s.just(i) != 0) out += "@" + std::to_string(s.just(i));
  }
  return out.empty() ? "eps" : out;
}

}  // namespace ctg
