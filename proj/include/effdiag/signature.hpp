#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace effdiag {

using SortId = std::string;
using GenId = std::string;

// An ordered list of sorts; the empty list is the monoidal unit.
using Interface = std::vector<SortId>;

// Reserved for the runtime wire; user signatures may not declare it.
inline constexpr std::string_view kRuntimeSort = "R";

enum class Purity { pure, effectful };

struct GeneratorDecl {
  GenId id;
  Interface dom;
  Interface cod;

  friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

struct Violation {
  std::string item;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// A pair of polygraphs over a shared sort set: pure generators and effectful
// generators. Declaration order is preserved everywhere.
class EffectfulSignature {
 public:
  EffectfulSignature() = default;
  EffectfulSignature(std::vector<SortId> sorts, std::vector<GeneratorDecl> pure,
                     std::vector<GeneratorDecl> effectful);

  const std::vector<SortId>& sorts() const { return sorts_; }
  const std::vector<GeneratorDecl>& pure() const { return pure_; }
  const std::vector<GeneratorDecl>& effectful() const { return effectful_; }

  bool has_sort(std::string_view s) const;

  // nullptr when the id is not declared.
  const GeneratorDecl* find(std::string_view id) const;
  std::optional<Purity> purity(std::string_view id) const;

  // Throws UnknownGenerator.
  const GeneratorDecl& get(std::string_view id) const;
  bool is_pure(std::string_view id) const;

  // Throws UndeclaredSort naming the first offending sort.
  void require_sorts(const Interface& iface) const;

  friend bool operator==(const EffectfulSignature& a, const EffectfulSignature& b) {
    return a.sorts_ == b.sorts_ && a.pure_ == b.pure_ && a.effectful_ == b.effectful_;
  }

 private:
  void reindex();

  std::vector<SortId> sorts_;
  std::vector<GeneratorDecl> pure_;
  std::vector<GeneratorDecl> effectful_;
  // id -> (purity, index into pure_/effectful_); first declaration wins.
  std::unordered_map<std::string, std::pair<Purity, std::size_t>> index_;
};

ValidationReport validate_signature(const EffectfulSignature& sig);

struct SignatureMorphism {
  std::map<SortId, SortId> sort_map;
  std::map<GenId, GenId> gen_map;

  static SignatureMorphism identity(const EffectfulSignature& sig);

  // (second after first): first is applied, then second.
  static SignatureMorphism compose(const SignatureMorphism& first,
                                   const SignatureMorphism& second);
};

// Relabels sorts and generators. Throws MissingMapping for an unmapped item and
// MorphismConflict when two generators collapse onto one id with different
// types or purities.
EffectfulSignature apply_morphism(const SignatureMorphism& m, const EffectfulSignature& sig);

// A plain polygraph: sorts plus generators, no purity split.
struct Polygraph {
  std::vector<SortId> sorts;
  std::vector<GeneratorDecl> generators;
};

// Every generator becomes effectful; the free effectful category over the
// result is the free premonoidal category over the polygraph.
EffectfulSignature premonoidal_free(const Polygraph& plain);

// The signature used throughout the global-state examples: sort X, pure
// copy/discard, effectful get/put.
EffectfulSignature global_state_signature();

}  // namespace effdiag
