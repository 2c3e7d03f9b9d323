#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cyops/parser.hpp"

#ifndef CYOPS_CORPUS_DIR
#define CYOPS_CORPUS_DIR "corpus"
#endif

namespace cyops {

struct CorpusEntry {
  std::string name;
  std::string source;
  std::string expression;
};

/// $CYOPS_CORPUS or the compiled-in directory.
inline std::filesystem::path corpus_directory() {
  if (const char* env = std::getenv("CYOPS_CORPUS")) return env;
  return CYOPS_CORPUS_DIR;
}

/// Reads "# key: value" headers followed by one expression (may span lines).
inline CorpusEntry read_operator_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open operator file " + path.string());
  CorpusEntry e;
  e.name = path.stem().string();
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1), value = line.substr(colon + 1);
      key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
      value.erase(0, value.find_first_not_of(' '));
      if (key == "name") e.name = value;
      else if (key == "source") e.source = value;
      continue;
    }
    body += line + " ";
  }
  e.expression = body;
  return e;
}

inline std::vector<CorpusEntry> corpus_entries() {
  std::vector<CorpusEntry> out;
  const auto dir = corpus_directory();
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".op") out.push_back(read_operator_file(f.path()));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

inline CorpusEntry corpus_entry(const std::string& name) {
  const auto path = corpus_directory() / (name + ".op");
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::InvalidArgument, "unknown corpus operator '" + name + "'");
  return read_operator_file(path);
}

inline ThetaOperator corpus_operator(const std::string& name) {
  return parse_theta_operator(corpus_entry(name).expression);
}

}  // namespace cyops
