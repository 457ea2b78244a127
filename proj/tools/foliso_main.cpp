// Command-line front end: validate / complete / check-context /
// check-formula / check-proof / emit / corpus / iso.
//
// Exit codes: 0 success, 1 check failure, 2 usage or input-parse error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "foliso/completion.hpp"
#include "foliso/corpus.hpp"
#include "foliso/emitter.hpp"
#include "foliso/kernel.hpp"
#include "foliso/morphism.hpp"
#include "foliso/proof.hpp"
#include "foliso/signature.hpp"
#include "foliso/syntax.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using foliso::Report;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw foliso::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json diags_json(const Report& r) {
  json a = json::array();
  for (const auto& d : r.diags)
    a.push_back({{"code", d.code}, {"where", d.where}, {"message", d.message}});
  return a;
}

// Renders one command report and returns the exit code.
int finish(const Options& opt, const std::string& command, const Report& rep,
           const json& extra = json::object()) {
  if (opt.format == "json") {
    json out = {{"schema_version", kSchemaVersion},
                {"command", command},
                {"ok", rep.ok()},
                {"violations", diags_json(rep)}};
    for (auto it = extra.begin(); it != extra.end(); ++it)
      out[it.key()] = it.value();
    std::cout << out.dump(2) << "\n";
  } else {
    if (!rep.ok()) std::cout << rep.str();
    for (auto it = extra.begin(); it != extra.end(); ++it) {
      if (it.value().is_string())
        std::cout << it.value().get<std::string>() << "\n";
      else
        std::cout << it.key() << ": " << it.value().dump() << "\n";
    }
    std::cout << (rep.ok() ? "ok" : "failed") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

foliso::Signature load_sig(const std::string& path) {
  return foliso::parse_signature(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for first-order logic with isomorphism"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "sexpr"}));

  // validate <file.sig>
  auto* validate = app.add_subcommand("validate", "Check an h-signature");
  std::string v_file;
  validate->add_option("file", v_file, "signature file")->required();

  // complete <file.sig> [--depth n]
  auto* complete = app.add_subcommand("complete", "Repletion of a signature");
  std::string c_file;
  int depth = 8;
  complete->add_option("file", c_file, "signature file")->required();
  complete->add_option("--depth", depth, "bound on T iterations");

  // check-context <file.sig> <ctx>
  auto* ckctx = app.add_subcommand("check-context", "Check a context");
  std::string cc_file, cc_ctx;
  ckctx->add_option("file", cc_file)->required();
  ckctx->add_option("context", cc_ctx, "e.g. \"x:O, f:A(x,x)\"")->required();

  // check-formula <file.sig> <ctx> <formula>
  auto* ckf = app.add_subcommand("check-formula", "Check a formula");
  std::string cf_file, cf_ctx, cf_formula;
  ckf->add_option("file", cf_file)->required();
  ckf->add_option("context", cf_ctx)->required();
  ckf->add_option("formula", cf_formula)->required();

  // check-proof <file.prf> [--fragment f] [--d-iso] [--classical]
  auto* ckp = app.add_subcommand("check-proof", "Check a derivation file");
  std::string p_file, p_fragment;
  bool p_diso = false, p_classical = false;
  ckp->add_option("file", p_file)->required();
  ckp->add_option("--fragment", p_fragment, "regular|coherent|intuitionistic|classical");
  ckp->add_flag("--d-iso", p_diso, "enable the isomorphism rules");
  ckp->add_flag("--classical", p_classical, "add LEM");

  // emit --target t <file.sig> [ctx formula]
  auto* emit = app.add_subcommand("emit", "Emit structure/judgment types");
  std::string e_file, e_target = "struc", e_ctx, e_formula;
  bool e_mltt = false;
  emit->add_option("file", e_file)->required();
  emit->add_option("--target", e_target, "struc|hstruc|formula")
      ->check(CLI::IsMember({"struc", "hstruc", "formula"}));
  emit->add_option("context", e_ctx, "context (target formula)");
  emit->add_option("formula", e_formula, "formula (target formula)");
  emit->add_flag("--mltt", e_mltt, "plain MLTT mode for --target formula");

  // corpus list|run [--dir d]
  auto* corpus = app.add_subcommand("corpus", "List or run the corpus");
  std::string co_action = "run", co_dir = "corpus";
  corpus->add_option("action", co_action)->check(CLI::IsMember({"list", "run"}));
  corpus->add_option("--dir", co_dir, "corpus directory");

  // iso <a.sig> <b.sig>
  auto* iso = app.add_subcommand("iso", "Search for a signature isomorphism");
  std::string i_a, i_b;
  iso->add_option("a", i_a)->required();
  iso->add_option("b", i_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      foliso::Signature sig = load_sig(v_file);
      return finish(opt, "validate", foliso::validate_h_signature(sig));
    }

    if (*complete) {
      foliso::Signature sig = load_sig(c_file);
      foliso::CompletionConfig cfg;
      cfg.max_t_iterations = depth;
      foliso::RepletionResult r = foliso::repletion(sig, cfg);
      Report rep;
      if (!r.reached_fixpoint)
        rep.add("depth", "", "no fixed point within " + std::to_string(depth) +
                                 " T iterations");
      json extra = {{"iterations", r.iterations},
                    {"fixed_point", r.reached_fixpoint},
                    {"signature", foliso::serialize_signature(r.sig)}};
      return finish(opt, "complete", rep, extra);
    }

    if (*ckctx) {
      foliso::Signature sig = load_sig(cc_file);
      Report rep = foliso::check_context(sig, foliso::parse_context(cc_ctx));
      return finish(opt, "check-context", rep);
    }

    if (*ckf) {
      foliso::Signature sig = load_sig(cf_file);
      Report rep = foliso::check_formula(sig, foliso::parse_context(cf_ctx),
                                         foliso::parse_formula(cf_formula));
      return finish(opt, "check-formula", rep);
    }

    if (*ckp) {
      std::string dir = fs::path(p_file).parent_path().string();
      if (dir.empty()) dir = ".";
      foliso::LoadedProof lp = foliso::corpus_proof(
          dir, fs::path(p_file).stem().string(), p_fragment, p_diso,
          p_classical);
      Report rep = foliso::check_derivation(lp.theory, lp.file.root);
      return finish(opt, "check-proof", rep,
                    {{"proof", lp.file.name},
                     {"fragment", foliso::fragment_str(lp.theory.fragment)}});
    }

    if (*emit) {
      foliso::Signature sig = load_sig(e_file);
      foliso::TypeExpr t;
      if (e_target == "struc") {
        t = foliso::emit_struc(sig);
      } else if (e_target == "hstruc") {
        t = foliso::emit_hstruc(sig);
      } else {
        foliso::Workspace ws(sig);
        Report rep;
        foliso::Context ctx = foliso::read_context(ws, e_ctx, rep);
        foliso::Formula f = foliso::read_formula(ws, ctx, e_formula, rep);
        if (!rep.ok()) return finish(opt, "emit", rep);
        t = foliso::emit_formula(
            ws.sig(), ctx, f,
            e_mltt ? foliso::EmitMode::MLTT : foliso::EmitMode::HoTT);
      }
      std::string body = foliso::render(t);
      if (opt.format == "json") {
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "emit"},
                    {"ok", true},
                    {"target", e_target},
                    {"type", body}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << body << "\n";
      }
      return 0;
    }

    if (*corpus) {
      if (co_action == "list") {
        auto names = foliso::corpus_list(co_dir);
        if (opt.format == "json") {
          json out = {{"schema_version", kSchemaVersion},
                      {"command", "corpus"},
                      {"ok", true},
                      {"entries", names}};
          std::cout << out.dump(2) << "\n";
        } else {
          for (const auto& n : names) std::cout << n << "\n";
        }
        return 0;
      }
      auto results = foliso::corpus_run_all(co_dir);
      Report rep;
      json entries = json::array();
      for (const auto& r : results) {
        if (!r.ok) rep.add("corpus", r.name, r.message);
        entries.push_back({{"name", r.name},
                           {"kind", foliso::entry_kind_str(r.kind)},
                           {"ok", r.ok},
                           {"message", r.message}});
      }
      json extra = {{"entries", entries}, {"total", results.size()}};
      if (opt.format != "json") extra = json::object();
      return finish(opt, "corpus", rep, extra);
    }

    if (*iso) {
      foliso::Signature a = load_sig(i_a);
      foliso::Signature b = load_sig(i_b);
      auto m = foliso::find_isomorphism(a, b);
      Report rep;
      json mapping = json::object();
      if (!m) {
        rep.add("iso", "", "no isomorphism found");
      } else {
        for (size_t i = 0; i < m->object_map.size(); ++i)
          mapping[a.objects[i].name] = b.objects[m->object_map[i]].name;
      }
      json extra = {{"objects", mapping}};
      if (opt.format != "json") {
        extra = json::object();
        if (m)
          for (auto it = mapping.begin(); it != mapping.end(); ++it)
            std::cout << it.key() << " -> " << it.value().get<std::string>()
                      << "\n";
      }
      return finish(opt, "iso", rep, extra);
    }
  } catch (const foliso::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const foliso::KernelError& e) {
    std::cerr << "kernel error: " << e.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
