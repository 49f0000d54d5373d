#include "effdiag/json_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "effdiag/error.hpp"

namespace effdiag::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Format, msg); }

const Json& field(const Json& j, const char* name, const char* where) {
  if (!j.is_object()) bad(std::string(where) + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string(where) + ": missing field \"" + name + "\"");
  return *it;
}

std::string as_string(const Json& j, const char* where) {
  if (!j.is_string()) bad(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

std::size_t as_index(const Json& j, const char* where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(std::string(where) + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

Interface interface_from(const Json& j, const char* where) {
  if (!j.is_array()) bad(std::string(where) + ": expected an array of sorts");
  Interface out;
  for (const auto& s : j) out.push_back(as_string(s, where));
  return out;
}

std::vector<GeneratorDecl> gens_from(const Json& j, const char* where) {
  if (!j.is_array()) bad(std::string(where) + ": expected an array of generators");
  std::vector<GeneratorDecl> out;
  for (const auto& g : j)
    out.push_back({as_string(field(g, "id", where), where), interface_from(field(g, "dom", where), where),
                   interface_from(field(g, "cod", where), where)});
  return out;
}

Json gens_to(const std::vector<GeneratorDecl>& gens) {
  Json arr = Json::array();
  for (const auto& g : gens) arr.push_back(Json{{"id", g.id}, {"dom", g.dom}, {"cod", g.cod}});
  return arr;
}

SigPtr sig_ref(const Json& j, const fs::path& base_dir) {
  if (j.is_string()) {
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return std::make_shared<const EffectfulSignature>(load_signature(p.string()));
  }
  return std::make_shared<const EffectfulSignature>(signature_from_json(j));
}

fs::path dir_of(const std::string& path) {
  if (path == "-") return fs::current_path();
  return fs::path(path).parent_path();
}

}  // namespace

Json to_json(const EffectfulSignature& sig) {
  return Json{{"sorts", sig.sorts()}, {"pure", gens_to(sig.pure())}, {"effectful", gens_to(sig.effectful())}};
}

Json to_json(const Diagram& d, bool with_sig) {
  Json j = Json::object();
  if (with_sig) j["sig"] = to_json(d.signature());
  j["dom"] = d.dom();
  j["cod"] = d.cod();
  Json slices = Json::array();
  for (const auto& s : d.slices()) slices.push_back(Json{{"gen", s.gen}, {"offset", s.offset}});
  j["slices"] = std::move(slices);
  return j;
}

Json to_json(const Theory& t) {
  Json rules = Json::array();
  for (const auto& r : t.rules)
    rules.push_back(Json{{"name", r.name}, {"lhs", to_json(r.lhs, false)}, {"rhs", to_json(r.rhs, false)}});
  return Json{{"sig", to_json(*t.sig)}, {"rules", std::move(rules)}};
}

Json to_json(const ProofTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps)
    steps.push_back(Json{{"rule", s.rule},
                         {"direction", std::string(to_string(s.direction))},
                         {"prelude", s.occurrence.prelude},
                         {"window", s.occurrence.window},
                         {"shift", s.occurrence.shift}});
  return Json{{"steps", std::move(steps)}};
}

EffectfulSignature signature_from_json(const Json& j) {
  const char* where = "signature";
  Json empty = Json::array();
  auto opt = [&](const char* name) -> const Json& {
    auto it = j.find(name);
    return it == j.end() ? empty : *it;
  };
  if (!j.is_object()) bad("signature: expected an object");
  return EffectfulSignature(interface_from(field(j, "sorts", where), where), gens_from(opt("pure"), where),
                            gens_from(opt("effectful"), where));
}

Diagram diagram_from_json(const Json& j, const fs::path& base_dir, const SigPtr& fallback) {
  const char* where = "diagram";
  if (!j.is_object()) bad("diagram: expected an object");
  SigPtr sig = j.contains("sig") ? sig_ref(j["sig"], base_dir) : fallback;
  if (!sig) bad("diagram: no signature given");
  const Json& sl = field(j, "slices", where);
  if (!sl.is_array()) bad("diagram: \"slices\" must be an array");
  std::vector<Slice> slices;
  for (const auto& s : sl)
    slices.push_back({as_string(field(s, "gen", where), where), as_index(field(s, "offset", where), where)});
  return Diagram(std::move(sig), interface_from(field(j, "dom", where), where),
                 interface_from(field(j, "cod", where), where), std::move(slices));
}

Theory theory_from_json(const Json& j, const fs::path& base_dir) {
  const char* where = "theory";
  Theory t;
  t.sig = sig_ref(field(j, "sig", where), base_dir);
  const Json& rules = field(j, "rules", where);
  if (!rules.is_array()) bad("theory: \"rules\" must be an array");
  for (const auto& r : rules) {
    Diagram lhs = diagram_from_json(field(r, "lhs", where), base_dir, t.sig);
    Diagram rhs = diagram_from_json(field(r, "rhs", where), base_dir, t.sig);
    if (!(*lhs.sig() == *t.sig) || !(*rhs.sig() == *t.sig))
      throw Error(ErrorKind::SignatureMismatch, "rule sides must use the theory signature");
    t.rules.emplace_back(as_string(field(r, "name", where), where), make_unchecked(t.sig, lhs.dom(), lhs.cod(), lhs.slices()),
                         make_unchecked(t.sig, rhs.dom(), rhs.cod(), rhs.slices()));
  }
  return t;
}

ProofTrace trace_from_json(const Json& j) {
  const char* where = "trace";
  const Json& steps = field(j, "steps", where);
  if (!steps.is_array()) bad("trace: \"steps\" must be an array");
  ProofTrace t;
  for (const auto& s : steps) {
    const std::string dir = as_string(field(s, "direction", where), where);
    if (dir != "forward" && dir != "backward") bad("trace: direction must be forward or backward");
    Occurrence occ;
    for (const auto& i : field(s, "prelude", where)) occ.prelude.push_back(as_index(i, where));
    occ.window = as_index(field(s, "window", where), where);
    occ.shift = as_index(field(s, "shift", where), where);
    t.steps.push_back({as_string(field(s, "rule", where), where),
                       dir == "forward" ? Direction::forward : Direction::backward, std::move(occ)});
  }
  return t;
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

EffectfulSignature load_signature(const std::string& path) { return signature_from_json(read_json(path)); }

Diagram load_diagram(const std::string& path, const SigPtr& fallback) {
  return diagram_from_json(read_json(path), dir_of(path), fallback);
}

Theory load_theory(const std::string& path) { return theory_from_json(read_json(path), dir_of(path)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace effdiag::io
