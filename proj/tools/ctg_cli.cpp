// ctg: check, evaluate and compare definitions, play against their
// strategies, run the Church's thesis report and the acceptance suite.
#include "ctg/church.hpp"
#include "ctg/corpus.hpp"
#include "ctg/effectivity.hpp"
#include "ctg/program.hpp"
#include "ctg/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace ctg;

namespace {

constexpr int kOk = 0, kIllTyped = 1, kIo = 2;

struct Flags {
  std::size_t depth = Defaults::depth;
  std::size_t budget = Defaults::budget;
  std::uint64_t fuel = Defaults::fuel;
  InterpConfig cfg() const { return {depth, budget, fuel}; }
};

std::string short_code(const Nat& n) {
  std::string s = n.str();
  if (s.size() <= 12) return s;
  return s.substr(0, 6) + "..." + "(" + std::to_string(s.size()) + " digits)";
}

// Digit runs longer than 12 shortened as in short_code.
std::string abbreviate_codes(const std::string& text) {
  static const std::regex long_num("[0-9]{13,}");
  std::string out;
  auto it = std::sregex_iterator(text.begin(), text.end(), long_num);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += text.substr(last, it->position() - last);
    out += short_code(Nat(it->str()));
    last = it->position() + it->length();
  }
  return out + text.substr(last);
}

// tag_text with realizer codes shown by the description they are canonical for.
std::string pretty_tag(Tag t) {
  switch (t->kind) {
    case TagKind::Num: return t->num.str();
    case TagKind::Sym: return t->sym;
    case TagKind::Pair: return "<" + pretty_tag(t->a) + "," + pretty_tag(t->b) + ">";
    case TagKind::Left: return "inl(" + pretty_tag(t->a) + ")";
    case TagKind::Right: return "inr(" + pretty_tag(t->a) + ")";
    case TagKind::Exp: return "exp(" + t->num.str() + "," + pretty_tag(t->a) + ")";
    case TagKind::Real: {
      std::string who = short_code(t->num);
      if (auto k = canonical_desc(t->num))
        if (auto d = desc_decode(*k)) who = "canon " + desc_text(*d);
      return "real[" + who + "](" + pretty_tag(t->a) + ")";
    }
  }
  return "?";
}

std::string pretty_occ(const Occ& o) {
  return pretty_tag(o.m.tag) + " " + (o.m.op == Op::O ? "O" : "P") + (o.m.qa == QA::Q ? "Q" : "A") + " -> " +
         std::to_string(o.j);
}

void print_play(std::ostream& os, const JSeq& s) {
  for (std::size_t i = 1; i <= s.size(); ++i) os << "  " << i << ". " << pretty_occ(s.at(i)) << "\n";
}

int cmd_check(const Flags& fl, const std::string& file, bool tree) {
  Program p(read_text_file(file), fl.cfg());
  int rc = kOk;
  for (const auto& d : p.defs()) {
    try {
      DerivPtr dv = p.derive(d.name);
      std::cout << d.name << " : " << print(dv->concl.ty) << "  [" << dv->size() << " rule instances]\n";
      if (tree) std::cout << dv->text();
    } catch (const IllTyped& e) {
      std::cout << d.name << " (line " << d.line << "): ill-typed at " << e.rule << ": " << print(e.at) << "\n  "
                << e.what() << "\n";
      rc = kIllTyped;
    }
  }
  return rc;
}

int cmd_eval(const Flags& fl, const std::string& file, std::string name) {
  Program p(read_text_file(file), fl.cfg());
  if (p.defs().empty()) throw CtgError("no definitions in " + file);
  if (name.empty()) name = p.defs().back().name;
  DerivPtr d = p.derive(name);
  if (d->concl.ty->k != EK::NatT) {
    std::cout << name << " : " << print(d->concl.ty) << " (no numeral readback)\n";
    return kOk;
  }
  auto v = p.interp().eval_closed_nat(d);
  if (!v) {
    std::cout << name << ": no answer\n";
    return kOk;
  }
  std::cout << *v << "\n";
  return kOk;
}

int cmd_equal(const Flags& fl, const std::string& file, const std::string& a, const std::string& b) {
  Program p(read_text_file(file), fl.cfg());
  DerivPtr da = p.derive(a), db = p.derive(b);
  const Expr& ta = da->concl.ty;
  if (!alpha_eq(ta, db->concl.ty)) {
    // Re-check b at a's type; conversion settles definitionally equal types.
    db = p.interp().derive(Judgement{JK::Term, {}, {}, p.def(b).term, nullptr, ta});
  }
  EqVerdict v = p.interp().judgmental_eq(da, db, fl.depth);
  if (v.equal) {
    std::cout << v.text() << "\n";
    return kOk;
  }
  std::cout << "distinct at depth " << fl.depth << (v.detail.empty() ? "" : ": " + abbreviate_codes(v.detail)) << "\n";
  if (v.witness) {
    std::cout << "witness play:\n";
    print_play(std::cout, *v.witness);
  }
  return kIllTyped;
}

void save_transcript(const std::string& path, const JSeq& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_transcript(s);
}

int replay(const Do& d, const JSeq& want) {
  JSeq s;
  for (std::size_t i = 1; i <= want.size(); i += 2) {
    const Occ& o = want.at(i);
    if (o.m.op != Op::O || !d->o_move_ok(s, o)) {
      std::cout << "replay: move " << i << " is not a legal O-move here: " << pretty_occ(o) << "\n";
      return kIllTyped;
    }
    s.push(o.m, o.j);
    auto r = d->next(s);
    if (i + 1 > want.size()) break;
    if (!r || !(*r == want.at(i + 1))) {
      std::cout << "replay: P answered " << (r ? pretty_occ(*r) : std::string("nothing")) << " at move " << i + 1
                << ", transcript has " << pretty_occ(want.at(i + 1)) << "\n";
      return kIllTyped;
    }
    s.push(r->m, r->j);
  }
  std::cout << "replayed " << s.size() << " moves: identical\n";
  print_play(std::cout, s);
  return kOk;
}

// Reads "tag q|a j" as an O-move.
std::optional<Occ> parse_raw_move(const std::string& text) {
  std::istringstream in(text);
  std::string tag, qa;
  std::uint32_t j = 0;
  if (!(in >> tag >> qa >> j)) return std::nullopt;
  auto t = parse_tag(tag);
  if (!t || (qa != "q" && qa != "a" && qa != "Q" && qa != "A")) return std::nullopt;
  return Occ{Move{*t, Op::O, (qa == "q" || qa == "Q") ? QA::Q : QA::A}, j};
}

int cmd_play(const Flags& fl, const std::string& file, const std::string& name, const std::string& save,
             const std::string& replay_path) {
  Program p(read_text_file(file), fl.cfg());
  Do d = p.term(name).d;
  if (!replay_path.empty()) {
    auto t = parse_transcript(read_text_file(replay_path));
    if (!t) throw IoError("malformed transcript " + replay_path);
    return replay(d, *t);
  }
  std::cout << "playing O against " << name << " : " << print(p.derive(name)->concl.ty) << "\n"
            << "enter a menu number, a raw move 'tag q|a j', :show, :save PATH or :quit\n";
  JSeq s;
  std::string line;
  while (true) {
    auto om = d->o_moves(s, fl.budget);
    std::cout << "O-moves" << (om.obligated ? " (forced replies only)" : "") << ":\n";
    for (std::size_t i = 0; i < om.moves.size(); ++i) std::cout << "  [" << i << "] " << pretty_occ(om.moves[i]) << "\n";
    if (om.moves.empty()) std::cout << "  (none offered)\n";
    std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line) || line == ":quit") break;
    if (line.empty()) continue;
    if (line == ":show") {
      print_play(std::cout, s);
      continue;
    }
    if (line.rfind(":save ", 0) == 0) {
      save_transcript(line.substr(6), s);
      std::cout << "saved " << s.size() << " moves\n";
      continue;
    }
    std::optional<Occ> o;
    if (line.find_first_not_of("0123456789") == std::string::npos) {
      const std::size_t i = std::stoul(line);
      if (i >= om.moves.size()) {
        std::cout << "error: no menu entry " << i << "\n";
        continue;
      }
      o = om.moves[i];
    } else if (!(o = parse_raw_move(line))) {
      std::cout << "error: expected a menu number or 'tag q|a j'\n";
      continue;
    }
    if (!d->o_move_ok(s, *o)) {
      std::string why = legality_reason(s.plus(o->m, o->j), *d->arena());
      if (why.empty()) why = om.obligated ? "only the forced replies above are allowed" : "not a move of the game";
      std::cout << "error: illegal move: " << why << "\n";
      continue;
    }
    s.push(o->m, o->j);
    if (auto r = d->next(s)) {
      s.push(r->m, r->j);
      std::cout << "P: " << pretty_occ(*r) << "\n";
      if (r->m.tag && r->m.qa == QA::A) {
        // Innermost numeral of an answer, when there is one.
        Tag t = r->m.tag;
        while (t->a && t->kind != TagKind::Pair) t = t->a;
        if (t->kind == TagKind::Num) std::cout << "engine answers " << t->num << "\n";
      }
    } else {
      std::cout << "P: no response\n";
    }
    std::cout << "play:\n";
    print_play(std::cout, s);
  }
  if (!save.empty()) {
    save_transcript(save, s);
    std::cout << "saved " << s.size() << " moves to " << save << "\n";
  }
  return kOk;
}

int cmd_suite(const Flags& fl, const std::string& filter, bool verbose) {
  SuiteOptions opts;
  opts.cfg = fl.cfg();
  try {
    opts.only = parse_filter(filter);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kIllTyped;
  }
  auto rs = run_suite(opts);
  if (verbose)
    for (const auto& r : rs) std::cerr << r.id << ": " << r.title << " (" << r.detail << ")\n";
  std::cout << suite_summary(rs);
  for (const auto& r : rs)
    if (!r.pass) return kIllTyped;
  return kOk;
}

int cmd_ct_report(const Flags& fl, std::size_t max_n) {
  CtReport rep = validate_ct(ct_samples(), max_n, fl.depth);
  std::cout << rep.text();
  return rep.ok() ? kOk : kIllTyped;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-semantic model of MLTT: checker, evaluator and Church's thesis demo"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_option("--depth", fl.depth, "play depth for equality checks")->envname("CTG_DEPTH")->capture_default_str();
  app.add_option("--budget", fl.budget, "enumeration budget per position")->envname("CTG_BUDGET")->capture_default_str();
  app.add_option("--fuel", fl.fuel, "evaluation fuel")->envname("CTG_FUEL")->capture_default_str();

  std::string file, name, name2, save, replay_path, filter;
  bool tree = false, verbose = false;
  std::size_t max_n = 10;

  auto* check = app.add_subcommand("check", "type-check every definition of a file");
  check->add_option("file", file)->required();
  check->add_flag("--tree", tree, "print derivations");

  auto* eval = app.add_subcommand("eval", "evaluate a closed numeral definition (default: the last)");
  eval->add_option("file", file)->required();
  eval->add_option("name", name);

  auto* equal = app.add_subcommand("equal", "compare two definitions up to the given depth");
  equal->add_option("file", file)->required();
  equal->add_option("name1", name)->required();
  equal->add_option("name2", name2)->required();

  auto* play = app.add_subcommand("play", "play Opponent against a definition's strategy");
  play->add_option("file", file)->required();
  play->add_option("name", name)->required();
  play->add_option("--save", save, "write the transcript here on exit");
  play->add_option("--replay", replay_path, "replay a saved transcript and compare P's moves");

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  suite->add_option("--filter", filter, "comma-separated criterion ids");
  suite->add_flag("-v,--verbose", verbose, "per-criterion detail on stderr");

  auto* ct = app.add_subcommand("ct-report", "validate Church's thesis on the sample functions");
  ct->add_option("--max-n", max_n, "largest probe input")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(fl, file, tree);
    if (*eval) return cmd_eval(fl, file, name);
    if (*equal) return cmd_equal(fl, file, name, name2);
    if (*play) return cmd_play(fl, file, name, save, replay_path);
    if (*suite) return cmd_suite(fl, filter, verbose);
    if (*ct) return cmd_ct_report(fl, max_n);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const IllTyped& e) {
    std::cerr << "ill-typed at " << e.rule << ": " << e.what() << "\n";
    return kIllTyped;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIllTyped;
  } catch (const CtgError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIllTyped;
  }
  return kOk;
}
