#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effdiag/signature.hpp"

namespace effdiag {

using SigPtr = std::shared_ptr<const EffectfulSignature>;

// One generator per layer, whiskered by `offset` wires on the left.
struct Slice {
  GenId gen;
  std::size_t offset = 0;

  friend bool operator==(const Slice&, const Slice&) = default;
  friend auto operator<=>(const Slice& a, const Slice& b) {
    if (auto c = a.offset <=> b.offset; c != 0) return c;
    return a.gen.compare(b.gen) <=> 0;
  }
};

// A morphism of the free strict effectful category: a well-typed sequence of
// slices from `dom` to `cod`. Immutable once built.
class Diagram {
 public:
  // Checks typing; throws UnknownGenerator, UndeclaredSort or IllTyped.
  Diagram(SigPtr sig, Interface dom, Interface cod, std::vector<Slice> slices);

  static Diagram identity(SigPtr sig, Interface iface);
  static Diagram from_generator(SigPtr sig, std::string_view gen);

  const SigPtr& sig() const { return sig_; }
  const EffectfulSignature& signature() const { return *sig_; }
  const Interface& dom() const { return dom_; }
  const Interface& cod() const { return cod_; }
  const std::vector<Slice>& slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }
  bool empty() const { return slices_.empty(); }

  // levels()[i] is the wire word just above slice i; levels().back() == cod.
  std::vector<Interface> levels() const;

  // Structural equality: same signature, boundaries and slice sequence.
  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  struct Unchecked {};
  Diagram(Unchecked, SigPtr sig, Interface dom, Interface cod, std::vector<Slice> slices)
      : sig_(std::move(sig)), dom_(std::move(dom)), cod_(std::move(cod)), slices_(std::move(slices)) {}

  friend Diagram make_unchecked(SigPtr, Interface, Interface, std::vector<Slice>);

  SigPtr sig_;
  Interface dom_;
  Interface cod_;
  std::vector<Slice> slices_;
};

// Skips the typing check. Callers guarantee well-typedness.
Diagram make_unchecked(SigPtr sig, Interface dom, Interface cod, std::vector<Slice> slices);

bool same_signature(const Diagram& a, const Diagram& b);

Diagram compose(const Diagram& first, const Diagram& second);
// Defined only when at least one side is pure.
Diagram tensor(const Diagram& left, const Diagram& right);
Diagram whisker_left(const Interface& iface, const Diagram& d);
Diagram whisker_right(const Diagram& d, const Interface& iface);

bool is_pure(const Diagram& d);
std::vector<GenId> effectful_subsequence(const Diagram& d);

// Shape of a slice as seen by the exchange relation.
struct SliceShape {
  std::size_t offset;
  std::size_t dom;
  std::size_t cod;
  bool pure;
};

// Offsets after swapping adjacent slices `first; second`, as
// (new offset of second, new offset of first), or nullopt when the pair may not
// be exchanged: both effectful, or the output of `first` overlaps the input of
// `second`. Empty footprints count as overlapping only at the same position.
// Swaps that would leave two empty footprints at one position are refused too,
// so every legal swap can be swapped back.
std::optional<std::pair<std::size_t, std::size_t>> exchange_offsets(const SliceShape& first,
                                                                    const SliceShape& second);

SliceShape shape_of(const EffectfulSignature& sig, const Slice& s);

bool can_exchange(const Diagram& d, std::size_t index);
// Throws IllTyped when the pair does not exchange.
Diagram exchange(const Diagram& d, std::size_t index);
Diagram apply_exchanges(const Diagram& d, const std::vector<std::size_t>& indices);

struct NormalForm {
  Diagram diagram;
  // Exchange indices that turn the input into `diagram`, in order.
  std::vector<std::size_t> witness;
};

// Least slice sequence, ordered by (offset, generator id) left to right, in
// the exchange class of `d`.
NormalForm normal_form_with_witness(const Diagram& d);
Diagram normal_form(const Diagram& d);

// Throws SignatureMismatch.
bool equals(const Diagram& a, const Diagram& b);

// Compact text used as a hash key: boundaries plus slice list.
std::string slice_key(const Diagram& d);

std::string to_string(const Interface& iface);

}  // namespace effdiag
