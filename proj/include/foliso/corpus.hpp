// File-backed corpus of signatures, theories, derivations, and expected
// emissions. Entries are plain files in one directory: `.sig` signatures,
// `.thy` theories, `.prf` derivations, `.ty` expected emissions (a directive
// line `# <struc|hstruc> <signature-name>` followed by a type sexpr).
#pragma once

#include <string>
#include <vector>

#include "foliso/proof.hpp"
#include "foliso/signature.hpp"

namespace foliso {

enum class EntryKind { Signature, Theory, Proof, Emission };

struct CorpusEntry {
  std::string name;  // file stem
  EntryKind kind = EntryKind::Signature;
  std::string path;  // full path of the backing file
  std::string text;  // file contents
  std::string note;  // leading comment line, if any
};

std::string entry_kind_str(EntryKind k);

// Sorted list of entry names (file stems) in the directory.
std::vector<std::string> corpus_list(const std::string& dir);

// Loads one entry by name; throws BuildError if absent or unreadable.
CorpusEntry corpus_load(const std::string& dir, const std::string& name);

// Convenience loaders running the owning module's parser.
Signature corpus_signature(const std::string& dir, const std::string& name);
Theory corpus_theory(const std::string& dir, const std::string& name);

// Resolves a proof file's :over / :theory hints (relative to `dir`) into a
// checkable theory. `fragment` / `diso` / `classical` override the theory's
// own settings when non-empty / true.
struct LoadedProof {
  ProofFile file;
  Theory theory;
};
LoadedProof corpus_proof(const std::string& dir, const std::string& name,
                         const std::string& fragment = "", bool diso = false,
                         bool classical = false);

struct CorpusResult {
  std::string name;
  EntryKind kind = EntryKind::Signature;
  bool ok = false;
  std::string message;  // first failure, empty when ok
};

// Runs every entry through its full pipeline:
//   .sig: parse -> validate -> emit struc/hstruc -> kernel-check both
//   .thy: parse against its base signature
//   .prf: parse -> resolve theory -> check_derivation
//   .ty : parse golden -> alpha-compare against the live emission
std::vector<CorpusResult> corpus_run_all(const std::string& dir);

}  // namespace foliso
