#include "effdiag/signature.hpp"

#include <set>

#include "effdiag/error.hpp"

namespace effdiag {

EffectfulSignature::EffectfulSignature(std::vector<SortId> sorts, std::vector<GeneratorDecl> pure,
                                       std::vector<GeneratorDecl> effectful)
    : sorts_(std::move(sorts)), pure_(std::move(pure)), effectful_(std::move(effectful)) {
  reindex();
}

void EffectfulSignature::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < pure_.size(); ++i)
    index_.try_emplace(pure_[i].id, Purity::pure, i);
  for (std::size_t i = 0; i < effectful_.size(); ++i)
    index_.try_emplace(effectful_[i].id, Purity::effectful, i);
}

bool EffectfulSignature::has_sort(std::string_view s) const {
  for (const auto& sort : sorts_)
    if (sort == s) return true;
  return false;
}

const GeneratorDecl* EffectfulSignature::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return nullptr;
  const auto& [purity, i] = it->second;
  return purity == Purity::pure ? &pure_[i] : &effectful_[i];
}

std::optional<Purity> EffectfulSignature::purity(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second.first;
}

const GeneratorDecl& EffectfulSignature::get(std::string_view id) const {
  const GeneratorDecl* g = find(id);
  if (!g) throw Error(ErrorKind::UnknownGenerator, std::string(id));
  return *g;
}

bool EffectfulSignature::is_pure(std::string_view id) const {
  auto p = purity(id);
  if (!p) throw Error(ErrorKind::UnknownGenerator, std::string(id));
  return *p == Purity::pure;
}

void EffectfulSignature::require_sorts(const Interface& iface) const {
  for (const auto& s : iface)
    if (!has_sort(s)) throw Error(ErrorKind::UndeclaredSort, s);
}

ValidationReport validate_signature(const EffectfulSignature& sig) {
  ValidationReport report;
  auto add = [&](std::string item, std::string message) {
    report.violations.push_back({std::move(item), std::move(message)});
  };

  std::set<SortId> seen_sorts;
  for (const auto& s : sig.sorts()) {
    if (s.empty()) add("<sort>", "empty sort name");
    else if (s == kRuntimeSort) add(s, "sort name is reserved for the runtime wire");
    if (!seen_sorts.insert(s).second) add(s, "duplicate sort");
  }

  std::set<GenId> seen_ids;
  auto check_gen = [&](const GeneratorDecl& g) {
    if (g.id.empty()) add("<generator>", "empty generator id");
    if (!seen_ids.insert(g.id).second) add(g.id, "duplicate generator id");
    for (const auto* side : {&g.dom, &g.cod})
      for (const auto& s : *side)
        if (!seen_sorts.count(s)) add(g.id + "/" + s, "undeclared sort '" + s + "' in generator '" + g.id + "'");
  };
  for (const auto& g : sig.pure()) check_gen(g);
  for (const auto& g : sig.effectful()) check_gen(g);
  return report;
}

SignatureMorphism SignatureMorphism::identity(const EffectfulSignature& sig) {
  SignatureMorphism m;
  for (const auto& s : sig.sorts()) m.sort_map[s] = s;
  for (const auto& g : sig.pure()) m.gen_map[g.id] = g.id;
  for (const auto& g : sig.effectful()) m.gen_map[g.id] = g.id;
  return m;
}

SignatureMorphism SignatureMorphism::compose(const SignatureMorphism& first,
                                             const SignatureMorphism& second) {
  SignatureMorphism m;
  for (const auto& [from, mid] : first.sort_map)
    if (auto it = second.sort_map.find(mid); it != second.sort_map.end()) m.sort_map[from] = it->second;
  for (const auto& [from, mid] : first.gen_map)
    if (auto it = second.gen_map.find(mid); it != second.gen_map.end()) m.gen_map[from] = it->second;
  return m;
}

EffectfulSignature apply_morphism(const SignatureMorphism& m, const EffectfulSignature& sig) {
  auto map_sort = [&](const SortId& s) -> const SortId& {
    auto it = m.sort_map.find(s);
    if (it == m.sort_map.end()) throw Error(ErrorKind::MissingMapping, s);
    return it->second;
  };
  auto map_iface = [&](const Interface& iface) {
    Interface out;
    out.reserve(iface.size());
    for (const auto& s : iface) out.push_back(map_sort(s));
    return out;
  };

  std::vector<SortId> sorts;
  std::set<SortId> seen;
  for (const auto& s : sig.sorts()) {
    const auto& t = map_sort(s);
    if (seen.insert(t).second) sorts.push_back(t);
  }

  std::vector<GeneratorDecl> pure, effectful;
  std::map<GenId, std::pair<Purity, GeneratorDecl>> images;
  auto map_gen = [&](const GeneratorDecl& g, Purity purity, std::vector<GeneratorDecl>& out) {
    auto it = m.gen_map.find(g.id);
    if (it == m.gen_map.end()) throw Error(ErrorKind::MissingMapping, g.id);
    GeneratorDecl image{it->second, map_iface(g.dom), map_iface(g.cod)};
    auto [pos, inserted] = images.try_emplace(image.id, purity, image);
    if (!inserted) {
      if (pos->second.first != purity || !(pos->second.second == image))
        throw Error(ErrorKind::MorphismConflict, "generators collapse onto '" + image.id + "' with different types");
      return;
    }
    out.push_back(std::move(image));
  };
  for (const auto& g : sig.pure()) map_gen(g, Purity::pure, pure);
  for (const auto& g : sig.effectful()) map_gen(g, Purity::effectful, effectful);
  return EffectfulSignature(std::move(sorts), std::move(pure), std::move(effectful));
}

EffectfulSignature premonoidal_free(const Polygraph& plain) {
  return EffectfulSignature(plain.sorts, {}, plain.generators);
}

EffectfulSignature global_state_signature() {
  return EffectfulSignature({"X"},
                            {{"copy", {"X"}, {"X", "X"}}, {"discard", {"X"}, {}}},
                            {{"get", {}, {"X"}}, {"put", {"X"}, {}}});
}

}  // namespace effdiag
