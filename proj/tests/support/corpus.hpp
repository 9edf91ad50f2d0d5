#ifndef CAUSELAB_TESTS_CORPUS_HPP
#define CAUSELAB_TESTS_CORPUS_HPP

#include <filesystem>
#include <string>

#include "causelab/query.hpp"

namespace corpus {

inline std::filesystem::path dir() { return CAUSELAB_CORPUS_DIR; }

inline causelab::Workspace load(std::initializer_list<const char*> files) {
  causelab::Workspace ws;
  for (const char* f : files) ws.load_file(dir() / f);
  return ws;
}

inline causelab::QueryResult ask(const causelab::Workspace& ws, const std::string& query,
                                 const causelab::RunOptions& opt = {}) {
  return causelab::run_query(ws, causelab::parse_query(query), opt);
}

/// The named model of a corpus file.
inline causelab::ExtendedModel model(const char* file, const std::string& name) {
  return load({file}).model(name);
}

}  // namespace corpus

#endif  // CAUSELAB_TESTS_CORPUS_HPP
