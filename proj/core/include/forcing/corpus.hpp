#pragma once

#include <string>
#include <vector>

#include "forcing/limits.hpp"

namespace forcing {

/// Golden-corpus runner: every `<name>.job` in the directory is executed and
/// its report compared against the `<name>.expect.json` sidecar (a JSON
/// subtree that must match the report: objects by required keys, arrays
/// exactly, scalars by equality).
struct CorpusResult {
  struct Entry {
    std::string name;
    bool passed = false;
    std::string detail;  // first mismatch path or error text
  };
  std::vector<Entry> entries;
  bool all_passed() const;
};

CorpusResult run_corpus(const std::string& directory, const Limits& limits = {});

std::string corpus_to_text(const CorpusResult& result);
std::string corpus_to_json(const CorpusResult& result);

}  // namespace forcing
