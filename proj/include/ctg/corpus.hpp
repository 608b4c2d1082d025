#pragma once

#include "ctg/syntax.hpp"

#include <string>
#include <vector>

namespace ctg {

// Directory of the bundled corpus: $CTG_CORPUS_DIR, else the build-time default.
std::string corpus_dir();
std::string read_text_file(const std::string& path);

struct CorpusJudgement {
  bool positive = true;
  std::string text;
  Judgement j;
};
// Lines "+ J" (derivable) and "- J" (rejected); '#' starts a comment line.
std::vector<CorpusJudgement> load_judgements(const std::string& path);

}  // namespace ctg
