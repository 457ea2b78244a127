#include "foliso/corpus.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "foliso/emitter.hpp"
#include "foliso/kernel.hpp"
#include "foliso/syntax.hpp"
#include "foliso/typeexpr.hpp"

namespace fs = std::filesystem;

namespace foliso {
namespace {

const char* kExts[] = {".sig", ".thy", ".prf", ".ty"};

std::optional<EntryKind> kind_of_ext(const std::string& ext) {
  if (ext == ".sig") return EntryKind::Signature;
  if (ext == ".thy") return EntryKind::Theory;
  if (ext == ".prf") return EntryKind::Proof;
  if (ext == ".ty") return EntryKind::Emission;
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BuildError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Leading comment line ('#', '//' or ';'), without the marker.
std::string leading_note(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    std::string rest = line.substr(i);
    for (const char* m : {"#", "//", ";"}) {
      size_t n = std::strlen(m);
      if (rest.compare(0, n, m) == 0) {
        size_t j = rest.find_first_not_of(" \t", n);
        return j == std::string::npos ? "" : rest.substr(j);
      }
    }
    return "";
  }
  return "";
}

// The `over <name>` clause of a theory file, before full parsing.
// Comment lines are skipped so that prose containing "over" is inert.
std::string theory_over(const std::string& text) {
  std::istringstream lines(text);
  std::string line, tok, prev;
  while (std::getline(lines, line)) {
    size_t at = line.find("//");
    if (at != std::string::npos) line.erase(at);
    std::istringstream in(line);
    while (in >> tok) {
      if (prev == "over") return tok;
      prev = tok;
    }
  }
  throw BuildError("theory file lacks an `over` clause");
}

std::string resolve(const std::string& dir, const std::string& hint) {
  fs::path p(hint);
  if (p.is_absolute() || fs::exists(p)) return hint;
  return (fs::path(dir) / p).string();
}

// Directive line of a .ty golden: `# <struc|hstruc> <signature-name>`.
void emission_directive(const CorpusEntry& e, std::string* target,
                        std::string* signame) {
  std::istringstream note(e.note);
  if (!(note >> *target >> *signame) ||
      (*target != "struc" && *target != "hstruc"))
    throw BuildError(e.name + ": expected directive `# <struc|hstruc> <sig>`");
}

std::string strip_comment_lines(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i != std::string::npos && line[i] == '#') continue;
    out << line << '\n';
  }
  return out.str();
}

void run_one(const std::string& dir, const CorpusEntry& e,
             CorpusResult* out) {
  switch (e.kind) {
    case EntryKind::Signature: {
      Signature sig = parse_signature(e.text);
      Report v = validate_h_signature(sig);
      if (!v.ok()) throw BuildError("validate: " + v.str());
      std::string why;
      EmittedJudgment js{{}, emit_struc(sig)};
      if (!kernel_ok(js, &why)) throw BuildError("struc: " + why);
      EmittedJudgment jh{{}, emit_hstruc(sig)};
      if (!kernel_ok(jh, &why)) throw BuildError("hstruc: " + why);
      break;
    }
    case EntryKind::Theory: {
      corpus_theory(dir, e.name);
      break;
    }
    case EntryKind::Proof: {
      LoadedProof lp = corpus_proof(dir, e.name);
      Report r = check_derivation(lp.theory, lp.file.root);
      if (!r.ok()) throw BuildError("check: " + r.str());
      break;
    }
    case EntryKind::Emission: {
      std::string target, signame;
      emission_directive(e, &target, &signame);
      Signature sig = corpus_signature(dir, signame);
      TypeExpr live =
          target == "struc" ? emit_struc(sig) : emit_hstruc(sig);
      TypeExpr golden = parse_type(strip_comment_lines(e.text));
      if (!alpha_eq_type(golden, live))
        throw BuildError("emission differs from the live " + target);
      break;
    }
  }
  out->ok = true;
}

}  // namespace

std::string entry_kind_str(EntryKind k) {
  switch (k) {
    case EntryKind::Signature: return "signature";
    case EntryKind::Theory: return "theory";
    case EntryKind::Proof: return "proof";
    case EntryKind::Emission: return "emission";
  }
  return "?";
}

std::vector<std::string> corpus_list(const std::string& dir) {
  std::vector<std::string> names;
  if (!fs::is_directory(dir)) throw BuildError("no corpus directory " + dir);
  for (const auto& de : fs::directory_iterator(dir)) {
    if (!de.is_regular_file()) continue;
    if (kind_of_ext(de.path().extension().string()))
      names.push_back(de.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

CorpusEntry corpus_load(const std::string& dir, const std::string& name) {
  for (const char* ext : kExts) {
    fs::path p = fs::path(dir) / (name + ext);
    if (!fs::exists(p)) continue;
    CorpusEntry e;
    e.name = name;
    e.kind = *kind_of_ext(ext);
    e.path = p.string();
    e.text = read_file(e.path);
    e.note = leading_note(e.text);
    return e;
  }
  throw BuildError("no corpus entry named '" + name + "' in " + dir);
}

Signature corpus_signature(const std::string& dir, const std::string& name) {
  CorpusEntry e = corpus_load(dir, name);
  if (e.kind != EntryKind::Signature)
    throw BuildError(name + " is not a signature entry");
  return parse_signature(e.text);
}

Theory corpus_theory(const std::string& dir, const std::string& name) {
  CorpusEntry e = corpus_load(dir, name);
  if (e.kind != EntryKind::Theory)
    throw BuildError(name + " is not a theory entry");
  Signature base = corpus_signature(dir, theory_over(e.text));
  return parse_theory(e.text, base);
}

LoadedProof corpus_proof(const std::string& dir, const std::string& name,
                         const std::string& fragment, bool diso,
                         bool classical) {
  CorpusEntry e = corpus_load(dir, name);
  if (e.kind != EntryKind::Proof)
    throw BuildError(name + " is not a proof entry");
  LoadedProof lp;
  lp.file = parse_proof(e.text);
  if (!lp.file.theory.empty()) {
    std::string ttext = read_file(resolve(dir, lp.file.theory));
    Signature base = corpus_signature(dir, theory_over(ttext));
    lp.theory = parse_theory(ttext, base);
  } else if (!lp.file.over.empty()) {
    lp.theory.name = "";
    lp.theory.sig = parse_signature(read_file(resolve(dir, lp.file.over)));
  } else {
    throw BuildError(name + " names neither :theory nor :over");
  }
  if (!fragment.empty()) lp.theory.fragment = parse_fragment(fragment);
  if (classical) lp.theory.fragment = Fragment::Classical;
  if (diso) lp.theory.diso = true;
  return lp;
}

std::vector<CorpusResult> corpus_run_all(const std::string& dir) {
  std::vector<CorpusResult> results;
  for (const std::string& name : corpus_list(dir)) {
    CorpusResult r;
    r.name = name;
    try {
      CorpusEntry e = corpus_load(dir, name);
      r.kind = e.kind;
      run_one(dir, e, &r);
    } catch (const KernelError& err) {
      r.ok = false;
      r.message = err.message;
    } catch (const std::exception& err) {  // BuildError, ParseError
      r.ok = false;
      r.message = err.what();
    }
    results.push_back(r);
  }
  return results;
}

}  // namespace foliso
