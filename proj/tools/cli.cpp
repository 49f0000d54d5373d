#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

#include <CLI11.hpp>

#include "effdiag/error.hpp"
#include "effdiag/frontend.hpp"
#include "effdiag/json_io.hpp"
#include "effdiag/prover.hpp"
#include "effdiag/render.hpp"
#include "effdiag/runtime.hpp"
#include "effdiag/theory.hpp"

namespace effdiag::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

struct Options {
  std::string sig;
  std::string theory = "builtin:global-state";
  std::size_t max_states = ProverLimits{}.max_states;
  std::size_t max_prelude = ProverLimits{}.max_prelude;
  int workers = 1;
  bool as_runtime = false;
  bool show_runtime = false;
  bool json = false;
  std::string mode = "text";
  std::string output;
  std::vector<std::string> inputs;
};

class Context {
 public:
  Context(const Options& opts, std::istream& in, std::ostream& out) : opts_(opts), in_(in), out_(out) {}

  std::string text(const std::string& path) {
    if (path != "-") return io::read_text(path);
    if (stdin_used_) throw Error(ErrorKind::Format, "standard input can only be read once");
    stdin_used_ = true;
    return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
  }

  Json json(const std::string& path) {
    try {
      return Json::parse(text(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Format, path + ": " + e.what());
    }
  }

  static fs::path dir_of(const std::string& path) {
    return path == "-" ? fs::current_path() : fs::path(path).parent_path();
  }

  SigPtr sig() {
    if (opts_.sig.empty()) return nullptr;
    if (!sig_) sig_ = std::make_shared<const EffectfulSignature>(io::signature_from_json(json(opts_.sig)));
    return sig_;
  }

  Diagram diagram(const std::string& path, const SigPtr& fallback = nullptr) {
    return io::diagram_from_json(json(path), dir_of(path), fallback ? fallback : sig());
  }

  Theory theory() {
    if (opts_.theory == "builtin:global-state") return global_state_theory();
    if (opts_.theory == "builtin:race") return race_condition_theory();
    return io::theory_from_json(json(opts_.theory), dir_of(opts_.theory));
  }

  void emit(const std::string& s) {
    if (opts_.output.empty() || opts_.output == "-") {
      out_ << s;
      return;
    }
    std::ofstream f(opts_.output, std::ios::binary);
    if (!f) throw Error(ErrorKind::Format, "cannot write " + opts_.output);
    f << s;
  }

 private:
  const Options& opts_;
  std::istream& in_;
  std::ostream& out_;
  bool stdin_used_ = false;
  SigPtr sig_;
};

ProverLimits limits_of(const Options& opts) { return {opts.max_states, opts.max_prelude, opts.workers}; }

Json result_json(const ProofResult& r) {
  return Json{{"status", std::string(to_string(r.status))},
              {"states_explored", r.states_explored},
              {"trace", io::to_json(r.trace)["steps"]}};
}

int cmd_validate(Context& ctx, const Options& opts, std::ostream& out) {
  const EffectfulSignature sig = io::signature_from_json(ctx.json(opts.inputs.at(0)));
  const ValidationReport report = validate_signature(sig);
  if (opts.json) {
    Json v = Json::array();
    for (const auto& x : report.violations) v.push_back(Json{{"item", x.item}, {"message", x.message}});
    out << io::dump(Json{{"ok", report.ok()}, {"violations", v}});
  } else if (report.ok()) {
    out << "ok\n";
  } else {
    for (const auto& x : report.violations) out << x.item << ": " << x.message << "\n";
  }
  return report.ok() ? 0 : 1;
}

// Runtime form of a base diagram; runtime diagrams pass through.
Diagram runtime_view(const Diagram& d) {
  if (is_runtime_signature(d.signature())) return d;
  return encode(runtime_signature(d.sig()), d);
}

Diagram output_view(const Options& opts, const Diagram& d) { return opts.as_runtime ? runtime_view(d) : d; }

int cmd_normalize(Context& ctx, const Options& opts) {
  const Diagram d = ctx.diagram(opts.inputs.at(0));
  const NormalForm nf = normal_form_with_witness(d);
  const Json diagram = io::to_json(output_view(opts, nf.diagram));
  if (opts.json) ctx.emit(io::dump(Json{{"diagram", diagram}, {"witness", nf.witness}}));
  else ctx.emit(io::dump(diagram));
  return 0;
}

int cmd_equal(Context& ctx, const Options& opts, std::ostream& out) {
  const Diagram a = ctx.diagram(opts.inputs.at(0));
  const Diagram b = ctx.diagram(opts.inputs.at(1), a.sig());
  bool same;
  if (opts.as_runtime) {
    const Diagram ra = runtime_view(a), rb = runtime_view(b);
    same = equals_runtime(recover_runtime_signature(ra.sig()), ra, rb);
  } else {
    same = equals(a, b);
  }
  if (opts.json) out << io::dump(Json{{"equal", same}});
  else out << (same ? "equal" : "not-equal") << "\n";
  return same ? 0 : 1;
}

int cmd_encode(Context& ctx, const Options& opts) {
  const Diagram d = ctx.diagram(opts.inputs.at(0));
  ctx.emit(io::dump(io::to_json(encode(runtime_signature(d.sig()), d))));
  return 0;
}

int cmd_decode(Context& ctx, const Options& opts) {
  const Diagram rd = ctx.diagram(opts.inputs.at(0));
  ctx.emit(io::dump(io::to_json(decode(recover_runtime_signature(rd.sig()), rd))));
  return 0;
}

int cmd_prove(Context& ctx, const Options& opts, std::ostream& out) {
  const Theory theory = ctx.theory();
  auto on_theory = [&](const Diagram& d) {
    if (!(*d.sig() == *theory.sig)) throw Error(ErrorKind::SignatureMismatch, "goal is not over the theory signature");
    return make_unchecked(theory.sig, d.dom(), d.cod(), d.slices());
  };
  const Diagram a = on_theory(ctx.diagram(opts.inputs.at(0), theory.sig));
  const Diagram b = on_theory(ctx.diagram(opts.inputs.at(1), theory.sig));
  const ProofResult r = prove_equal(theory, a, b, limits_of(opts));
  if (opts.json) out << io::dump(result_json(r));
  else if (r.proven()) out << "proven in " << r.trace.steps.size() << " step(s)\n" << format_trace(r.trace);
  else out << "not-found within limits (" << to_string(r.status) << ", " << r.states_explored << " states)\n";
  return r.proven() ? 0 : 1;
}

int cmd_compile(Context& ctx, const Options& opts, std::ostream& err) {
  const SigPtr sig = ctx.sig();
  if (!sig) throw CLI::RequiredError("--sig");
  const std::string source = ctx.text(opts.inputs.at(0));
  try {
    const Diagram d = frontend::elaborate(frontend::parse(source), sig);
    Json j = io::to_json(output_view(opts, d));
    if (opts.json) j = Json{{"diagram", j}, {"effectful", effectful_subsequence(d)}};
    ctx.emit(io::dump(j));
    return 0;
  } catch (const Error& e) {
    if (opts.json) throw;
    err << e.detail() << "\n";
    return 1;
  }
}

int cmd_render(Context& ctx, const Options& opts) {
  const Diagram d = ctx.diagram(opts.inputs.at(0));
  RenderOptions ro;
  ro.mode = opts.mode == "svg" ? RenderOptions::Mode::svg : RenderOptions::Mode::text;
  ro.show_runtime = opts.show_runtime;
  const std::string drawn = render(d, ro);
  ctx.emit(opts.json ? io::dump(Json{{"mode", opts.mode}, {"output", drawn}}) : drawn);
  return 0;
}

int cmd_demo_state(const Options& opts, std::ostream& out) {
  const Theory race = race_condition_theory();
  Json all = Json::array();
  bool ok = true;
  for (const auto& goal : race_condition_goals(race)) {
    const ProofResult r = prove_equal(race, goal.interleaving, goal.outcome, limits_of(opts));
    ok = ok && r.proven();
    if (opts.json) {
      Json j = result_json(r);
      j["goal"] = goal.name;
      all.push_back(std::move(j));
      continue;
    }
    out << goal.name << ": " << (r.proven() ? "Proven" : "not-found within limits") << " (" << r.trace.steps.size()
        << " step(s), " << r.states_explored << " states)\n";
    if (r.proven()) out << format_trace(r.trace);
  }
  if (opts.json) out << io::dump(all);
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Effectful string diagrams: normalize, compare, prove, compile and draw."};
  app.name("effdiag");
  app.require_subcommand(1);
  app.add_option("--sig", opts.sig, "Signature file for diagrams without an inline signature");
  app.add_option("--theory", opts.theory, "Theory file, or builtin:global-state / builtin:race");
  app.add_option("--max-states", opts.max_states, "Prover state budget")->check(CLI::PositiveNumber);
  app.add_option("--max-prelude", opts.max_prelude, "Exchange moves allowed before a match");
  app.add_option("--workers", opts.workers, "Threads for frontier expansion")->check(CLI::Range(1, 1024));
  app.add_flag("--as-runtime", opts.as_runtime, "Work with runtime encodings: encode diagram output, compare encodings");
  app.add_flag("--show-runtime", opts.show_runtime, "Draw the runtime wire");
  app.add_option("--mode", opts.mode, "Render mode")->check(CLI::IsMember({"text", "svg"}));
  app.add_flag("--json", opts.json, "Machine-readable output");
  app.add_option("-o,--output", opts.output, "Write the result to a file");
  app.fallthrough();

  auto sub = [&](const char* name, const char* help, std::size_t arity, const char* what) {
    CLI::App* s = app.add_subcommand(name, help);
    if (arity) s->add_option(what, opts.inputs, what)->required()->expected(static_cast<int>(arity));
    return s;
  };
  CLI::App* validate = sub("validate", "Check a signature", 1, "signature");
  CLI::App* normalize = sub("normalize", "Print the exchange normal form", 1, "diagram");
  CLI::App* equal = sub("equal", "Compare two diagrams up to exchange", 2, "diagrams");
  CLI::App* enc = sub("encode", "Add the runtime wire", 1, "diagram");
  CLI::App* dec = sub("decode", "Remove the runtime wire", 1, "diagram");
  CLI::App* prove = sub("prove", "Search for a rewrite proof", 2, "diagrams");
  CLI::App* compile = sub("compile", "Elaborate a do-notation program", 1, "source");
  CLI::App* rend = sub("render", "Draw a diagram as text or SVG", 1, "diagram");
  CLI::App* demo = sub("demo-state", "Prove the four race-condition outcomes", 0, "");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Context ctx(opts, in, out);
  try {
    if (validate->parsed()) return cmd_validate(ctx, opts, out);
    if (normalize->parsed()) return cmd_normalize(ctx, opts);
    if (equal->parsed()) return cmd_equal(ctx, opts, out);
    if (enc->parsed()) return cmd_encode(ctx, opts);
    if (dec->parsed()) return cmd_decode(ctx, opts);
    if (prove->parsed()) return cmd_prove(ctx, opts, out);
    if (compile->parsed()) return cmd_compile(ctx, opts, err);
    if (rend->parsed()) return cmd_render(ctx, opts);
    if (demo->parsed()) return cmd_demo_state(opts, out);
  } catch (const CLI::RequiredError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (opts.json) err << io::dump(Json{{"error", std::string(to_string(e.kind()))}, {"message", e.detail()}});
    else err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace effdiag::cli
