#pragma once

#include <string>
#include <vector>

#include "lazycost/term.hpp"

namespace lazycost {

// Built-in programs used by the cross-validation suites and the CLI demos.
struct CorpusEntry {
  std::string name;
  std::string source;
};

const std::vector<CorpusEntry>& corpus_sources();

// Parses (and typechecks) one corpus program by name; throws on unknown name.
Program corpus_program(const std::string& name);

std::vector<Program> corpus_programs();

}  // namespace lazycost
