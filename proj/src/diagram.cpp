#include "effdiag/diagram.hpp"

#include <sstream>

#include "effdiag/error.hpp"

namespace effdiag {

namespace {

void require_same(const Diagram& a, const Diagram& b) {
  if (!same_signature(a, b)) throw Error(ErrorKind::SignatureMismatch, "diagrams are over different signatures");
}

Interface concat(const Interface& a, const Interface& b) {
  Interface out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::string to_string(const Interface& iface) {
  std::string out = "[";
  for (std::size_t i = 0; i < iface.size(); ++i) {
    if (i) out += ",";
    out += iface[i];
  }
  return out + "]";
}

Diagram::Diagram(SigPtr sig, Interface dom, Interface cod, std::vector<Slice> slices)
    : sig_(std::move(sig)), dom_(std::move(dom)), cod_(std::move(cod)), slices_(std::move(slices)) {
  if (!sig_) throw Error(ErrorKind::SignatureMismatch, "diagram without a signature");
  sig_->require_sorts(dom_);
  sig_->require_sorts(cod_);
  Interface word = dom_;
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    const auto& s = slices_[i];
    const GeneratorDecl& g = sig_->get(s.gen);
    if (s.offset + g.dom.size() > word.size() ||
        !std::equal(g.dom.begin(), g.dom.end(), word.begin() + static_cast<std::ptrdiff_t>(s.offset)))
      throw Error(ErrorKind::IllTyped, "slice " + std::to_string(i) + " (" + s.gen + " at offset " +
                                           std::to_string(s.offset) + ") does not fit wires " + to_string(word));
    auto at = word.begin() + static_cast<std::ptrdiff_t>(s.offset);
    at = word.erase(at, at + static_cast<std::ptrdiff_t>(g.dom.size()));
    word.insert(at, g.cod.begin(), g.cod.end());
  }
  if (word != cod_)
    throw Error(ErrorKind::IllTyped, "slices end at " + to_string(word) + " but codomain is " + to_string(cod_));
}

Diagram make_unchecked(SigPtr sig, Interface dom, Interface cod, std::vector<Slice> slices) {
  return Diagram(Diagram::Unchecked{}, std::move(sig), std::move(dom), std::move(cod), std::move(slices));
}

Diagram Diagram::identity(SigPtr sig, Interface iface) {
  sig->require_sorts(iface);
  Interface cod = iface;
  return make_unchecked(std::move(sig), std::move(iface), std::move(cod), {});
}

Diagram Diagram::from_generator(SigPtr sig, std::string_view gen) {
  const GeneratorDecl& g = sig->get(gen);
  Interface dom = g.dom, cod = g.cod;
  return make_unchecked(std::move(sig), std::move(dom), std::move(cod), {Slice{g.id, 0}});
}

std::vector<Interface> Diagram::levels() const {
  std::vector<Interface> out;
  out.reserve(slices_.size() + 1);
  Interface word = dom_;
  out.push_back(word);
  for (const auto& s : slices_) {
    const GeneratorDecl& g = sig_->get(s.gen);
    auto at = word.begin() + static_cast<std::ptrdiff_t>(s.offset);
    at = word.erase(at, at + static_cast<std::ptrdiff_t>(g.dom.size()));
    word.insert(at, g.cod.begin(), g.cod.end());
    out.push_back(word);
  }
  return out;
}

bool operator==(const Diagram& a, const Diagram& b) {
  return same_signature(a, b) && a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.slices_ == b.slices_;
}

bool same_signature(const Diagram& a, const Diagram& b) {
  return a.sig() == b.sig() || *a.sig() == *b.sig();
}

Diagram compose(const Diagram& first, const Diagram& second) {
  require_same(first, second);
  if (first.cod() != second.dom())
    throw Error(ErrorKind::BoundaryMismatch, to_string(first.cod()) + " vs " + to_string(second.dom()));
  std::vector<Slice> slices = first.slices();
  slices.insert(slices.end(), second.slices().begin(), second.slices().end());
  return make_unchecked(first.sig(), first.dom(), second.cod(), std::move(slices));
}

Diagram tensor(const Diagram& left, const Diagram& right) {
  require_same(left, right);
  const bool left_pure = is_pure(left);
  const bool right_pure = is_pure(right);
  if (!left_pure && !right_pure)
    throw Error(ErrorKind::PremonoidalTensorUndefined,
                "both factors contain effectful generators; choose an order with compose and whiskering");
  std::vector<Slice> slices;
  slices.reserve(left.size() + right.size());
  if (right_pure) {
    slices = left.slices();
    for (const auto& s : right.slices()) slices.push_back({s.gen, s.offset + left.cod().size()});
  } else {
    for (const auto& s : right.slices()) slices.push_back({s.gen, s.offset + left.dom().size()});
    slices.insert(slices.end(), left.slices().begin(), left.slices().end());
  }
  return make_unchecked(left.sig(), concat(left.dom(), right.dom()), concat(left.cod(), right.cod()),
                        std::move(slices));
}

Diagram whisker_left(const Interface& iface, const Diagram& d) {
  d.signature().require_sorts(iface);
  std::vector<Slice> slices;
  slices.reserve(d.size());
  for (const auto& s : d.slices()) slices.push_back({s.gen, s.offset + iface.size()});
  return make_unchecked(d.sig(), concat(iface, d.dom()), concat(iface, d.cod()), std::move(slices));
}

Diagram whisker_right(const Diagram& d, const Interface& iface) {
  d.signature().require_sorts(iface);
  return make_unchecked(d.sig(), concat(d.dom(), iface), concat(d.cod(), iface), d.slices());
}

bool is_pure(const Diagram& d) {
  for (const auto& s : d.slices())
    if (!d.signature().is_pure(s.gen)) return false;
  return true;
}

std::vector<GenId> effectful_subsequence(const Diagram& d) {
  std::vector<GenId> out;
  for (const auto& s : d.slices())
    if (!d.signature().is_pure(s.gen)) out.push_back(s.gen);
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> exchange_offsets(const SliceShape& first,
                                                                    const SliceShape& second) {
  if (!first.pure && !second.pure) return std::nullopt;
  const std::size_t out_begin = first.offset, out_end = first.offset + first.cod;
  const std::size_t in_begin = second.offset, in_end = second.offset + second.dom;
  if (first.cod == 0 && second.dom == 0 && out_begin == in_begin) return std::nullopt;
  std::pair<std::size_t, std::size_t> moved;
  if (in_begin >= out_end)  // second sits to the right of first's outputs
    moved = {second.offset - first.cod + first.dom, first.offset};
  else if (in_end <= out_begin)  // second sits to the left
    moved = {second.offset, first.offset - second.dom + second.cod};
  else
    return std::nullopt;
  if (second.cod == 0 && first.dom == 0 && moved.first == moved.second) return std::nullopt;
  return moved;
}

SliceShape shape_of(const EffectfulSignature& sig, const Slice& s) {
  const GeneratorDecl& g = sig.get(s.gen);
  return {s.offset, g.dom.size(), g.cod.size(), sig.is_pure(s.gen)};
}

bool can_exchange(const Diagram& d, std::size_t index) {
  if (index + 1 >= d.size()) return false;
  return exchange_offsets(shape_of(d.signature(), d.slices()[index]),
                          shape_of(d.signature(), d.slices()[index + 1]))
      .has_value();
}

namespace {

void exchange_in_place(const EffectfulSignature& sig, std::vector<Slice>& slices, std::size_t i) {
  if (i + 1 >= slices.size()) throw Error(ErrorKind::IllTyped, "exchange index " + std::to_string(i) + " out of range");
  auto offsets = exchange_offsets(shape_of(sig, slices[i]), shape_of(sig, slices[i + 1]));
  if (!offsets)
    throw Error(ErrorKind::IllTyped,
                "slices " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not exchange");
  Slice a = slices[i], b = slices[i + 1];
  slices[i] = {b.gen, offsets->first};
  slices[i + 1] = {a.gen, offsets->second};
}

}  // namespace

Diagram exchange(const Diagram& d, std::size_t index) {
  std::vector<Slice> slices = d.slices();
  exchange_in_place(d.signature(), slices, index);
  return make_unchecked(d.sig(), d.dom(), d.cod(), std::move(slices));
}

Diagram apply_exchanges(const Diagram& d, const std::vector<std::size_t>& indices) {
  if (indices.empty()) return d;
  std::vector<Slice> slices = d.slices();
  for (std::size_t i : indices) exchange_in_place(d.signature(), slices, i);
  return make_unchecked(d.sig(), d.dom(), d.cod(), std::move(slices));
}

namespace {

struct Arrangement {
  std::vector<Slice> slices;
  std::vector<SliceShape> shapes;
  std::vector<std::size_t> witness;
};

// Offset slice j would have after being swapped down to position p, or
// nullopt if some swap on the way is illegal.
std::optional<std::size_t> bubbled_offset(const std::vector<SliceShape>& shapes, std::size_t p, std::size_t j) {
  SliceShape moving = shapes[j];
  for (std::size_t k = j; k > p; --k) {
    auto offsets = exchange_offsets(shapes[k - 1], moving);
    if (!offsets) return std::nullopt;
    moving.offset = offsets->first;
  }
  return moving.offset;
}

void bubble(Arrangement& a, std::size_t p, std::size_t j) {
  for (std::size_t k = j; k > p; --k) {
    auto offsets = exchange_offsets(a.shapes[k - 1], a.shapes[k]);
    std::swap(a.slices[k - 1], a.slices[k]);
    std::swap(a.shapes[k - 1], a.shapes[k]);
    a.slices[k - 1].offset = a.shapes[k - 1].offset = offsets->first;
    a.slices[k].offset = a.shapes[k].offset = offsets->second;
    a.witness.push_back(k - 1);
  }
}

void greedy_from(Arrangement& a, std::size_t p) {
  const std::size_t n = a.slices.size();
  for (; p < n; ++p) {
    std::optional<Slice> best;
    std::vector<std::size_t> tied;
    for (std::size_t j = p; j < n; ++j) {
      auto offset = bubbled_offset(a.shapes, p, j);
      if (!offset) continue;
      Slice key{a.slices[j].gen, *offset};
      if (!best || key < *best) {
        best = key;
        tied.assign({j});
      } else if (key == *best) {
        tied.push_back(j);
      }
    }
    if (tied.size() == 1) {
      bubble(a, p, tied.front());
      continue;
    }
    // Equal keys (the same generator reaching the same offset) can leave
    // different remainders behind; try each.
    std::optional<Arrangement> winner;
    for (std::size_t j : tied) {
      Arrangement trial = a;
      bubble(trial, p, j);
      greedy_from(trial, p + 1);
      if (!winner || trial.slices < winner->slices) winner = std::move(trial);
    }
    a = std::move(*winner);
    return;
  }
}

}  // namespace

NormalForm normal_form_with_witness(const Diagram& d) {
  Arrangement a;
  a.slices = d.slices();
  a.shapes.reserve(d.size());
  for (const auto& s : d.slices()) a.shapes.push_back(shape_of(d.signature(), s));
  greedy_from(a, 0);
  return {make_unchecked(d.sig(), d.dom(), d.cod(), std::move(a.slices)), std::move(a.witness)};
}

Diagram normal_form(const Diagram& d) { return normal_form_with_witness(d).diagram; }

bool equals(const Diagram& a, const Diagram& b) {
  require_same(a, b);
  if (a.dom() != b.dom() || a.cod() != b.cod()) return false;
  if (a.size() != b.size()) return false;
  return normal_form(a).slices() == normal_form(b).slices();
}

std::string slice_key(const Diagram& d) {
  std::ostringstream out;
  out << to_string(d.dom()) << "->" << to_string(d.cod()) << ":";
  for (const auto& s : d.slices()) out << s.gen.size() << ':' << s.gen << '@' << s.offset << ';';
  return out.str();
}

}  // namespace effdiag
