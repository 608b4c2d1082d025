#include "ctg/corpus.hpp"
#include "ctg/program.hpp"
#include "ctg/suite.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace ctg;

TEST(Suite, IdsAreUniqueAndFilterIsExact) {
  const auto& ids = criterion_ids();
  std::set<std::string> seen;
  for (const auto& [id, title] : ids) EXPECT_TRUE(seen.insert(id).second) << id;
  EXPECT_EQ(ids.size(), 11u);
  EXPECT_EQ(parse_filter("ct"), std::vector<std::string>{"ct"});
  EXPECT_EQ(parse_filter("pazo,compose,pazo"), (std::vector<std::string>{"pazo", "compose"}));
  EXPECT_TRUE(parse_filter("").empty());
  EXPECT_THROW(parse_filter("ct,nosuch"), std::invalid_argument);
}

TEST(Suite, SummaryListsEachIdOnce) {
  std::vector<CriterionResult> rs;
  for (const auto& [id, title] : criterion_ids()) rs.push_back({id, title, id != "xi", "", 2.0});
  std::istringstream in(suite_summary(rs));
  std::string line;
  std::multiset<std::string> listed;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string id, status;
    double ms = -1;
    ls >> id >> status >> ms;
    if (id == "summary") {
      EXPECT_EQ(line, "summary pass 10 fail 1 millis 22");
      continue;
    }
    EXPECT_TRUE(status == "pass" || status == "fail") << line;
    EXPECT_EQ(ms, 2.0);
    listed.insert(id);
  }
  for (const auto& [id, title] : criterion_ids()) EXPECT_EQ(listed.count(id), 1u) << id;
}

TEST(Suite, FilteredRunOnlyRunsTheSelection) {
  SuiteOptions o;
  o.only = {"pazo"};
  auto rs = run_suite(o);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].id, "pazo");
  EXPECT_TRUE(rs[0].pass) << rs[0].detail;
}

// Every move the play menu offers is accepted by the legality check, along
// all menu-driven plays of bounded length.
TEST(Play, MenuMovesAreLegal) {
  Program p(read_text_file(corpus_dir() + "/prelude.mltt"));
  for (const char* name : {"succ_fn", "add", "pair"}) {
    Do d = p.term(name).d;
    std::vector<JSeq> frontier{JSeq{}};
    std::size_t checked = 0;
    for (int round = 0; round < 3 && !frontier.empty(); ++round) {
      std::vector<JSeq> next;
      for (const JSeq& s : frontier) {
        for (const Occ& o : d->o_moves(s, 4).moves) {
          JSeq t = s.plus(o.m, o.j);
          EXPECT_TRUE(d->o_move_ok(s, o)) << name << ": " << jseq_text(t);
          EXPECT_EQ(legality_reason(t, *d->arena()), "") << name;
          ++checked;
          if (auto r = d->next(t)) {
            t.push(r->m, r->j);
            EXPECT_TRUE(legal(t, *d->arena())) << name;
            if (next.size() < 16) next.push_back(t);
          }
        }
      }
      frontier = std::move(next);
    }
    EXPECT_GT(checked, 0u) << name;
  }
}
