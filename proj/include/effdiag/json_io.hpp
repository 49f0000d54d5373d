#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "effdiag/diagram.hpp"
#include "effdiag/prover.hpp"
#include "effdiag/theory.hpp"

namespace effdiag::io {

using Json = nlohmann::ordered_json;

Json to_json(const EffectfulSignature& sig);
Json to_json(const Diagram& d, bool with_sig = true);
Json to_json(const Theory& t);
Json to_json(const ProofTrace& trace);

// All readers throw Error(Format) on malformed documents.
EffectfulSignature signature_from_json(const Json& j);

// "sig" may be an inline object or a path relative to `base_dir`; when absent,
// `fallback` is used.
Diagram diagram_from_json(const Json& j, const std::filesystem::path& base_dir, const SigPtr& fallback = nullptr);
Theory theory_from_json(const Json& j, const std::filesystem::path& base_dir);
ProofTrace trace_from_json(const Json& j);

// "-" reads standard input.
std::string read_text(const std::string& path);
Json read_json(const std::string& path);

EffectfulSignature load_signature(const std::string& path);
Diagram load_diagram(const std::string& path, const SigPtr& fallback = nullptr);
Theory load_theory(const std::string& path);

// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace effdiag::io
