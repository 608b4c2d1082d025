#include "ctg/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef CTG_DEFAULT_CORPUS_DIR
#define CTG_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace ctg {

std::string corpus_dir() {
  if (const char* e = std::getenv("CTG_CORPUS_DIR")) return e;
  return CTG_DEFAULT_CORPUS_DIR;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<CorpusJudgement> load_judgements(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<CorpusJudgement> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.size() < 2 || (line[0] != '+' && line[0] != '-'))
      throw std::runtime_error(path + ": expected '+' or '-' in: " + line);
    CorpusJudgement c;
    c.positive = line[0] == '+';
    c.text = line.substr(2);
    c.j = parse_judgement(c.text);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ctg
