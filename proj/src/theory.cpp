#include "effdiag/theory.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "effdiag/error.hpp"
#include "matching.hpp"

namespace effdiag {

RewriteRule::RewriteRule(std::string name_, Diagram lhs_, Diagram rhs_)
    : name(std::move(name_)), lhs(std::move(lhs_)), rhs(std::move(rhs_)) {
  if (!same_signature(lhs, rhs)) throw Error(ErrorKind::SignatureMismatch, "rule '" + name + "'");
  if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
    throw Error(ErrorKind::BoundaryMismatch, "rule '" + name + "': " + to_string(lhs.dom()) + "->" +
                                                 to_string(lhs.cod()) + " vs " + to_string(rhs.dom()) + "->" +
                                                 to_string(rhs.cod()));
}

const RewriteRule* Theory::find(std::string_view name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::string_view to_string(Direction dir) { return dir == Direction::forward ? "forward" : "backward"; }
Direction flip(Direction dir) { return dir == Direction::forward ? Direction::backward : Direction::forward; }

namespace detail {

namespace {

std::vector<Interface> levels_of(const EffectfulSignature& sig, const Interface& dom, const std::vector<Slice>& slices) {
  std::vector<Interface> out;
  out.reserve(slices.size() + 1);
  Interface word = dom;
  out.push_back(word);
  for (const auto& s : slices) {
    const GeneratorDecl& g = sig.get(s.gen);
    auto at = word.begin() + static_cast<std::ptrdiff_t>(s.offset);
    at = word.erase(at, at + static_cast<std::ptrdiff_t>(g.dom.size()));
    word.insert(at, g.cod.begin(), g.cod.end());
    out.push_back(word);
  }
  return out;
}

bool segment_equals(const Interface& word, std::size_t at, const Interface& expected) {
  return at + expected.size() <= word.size() &&
         std::equal(expected.begin(), expected.end(), word.begin() + static_cast<std::ptrdiff_t>(at));
}

}  // namespace

std::vector<Arrangement> arrangements(const Diagram& d, std::size_t budget) {
  const EffectfulSignature& sig = d.signature();
  std::vector<SliceShape> shapes;
  std::vector<Arrangement> out;
  Arrangement start;
  start.slices = d.slices();
  start.origin.resize(d.size());
  for (std::uint32_t i = 0; i < d.size(); ++i) start.origin[i] = i;
  out.push_back(std::move(start));

  std::set<std::vector<Slice>> seen{out.front().slices};
  std::size_t head = 0;
  while (head < out.size()) {
    if (out[head].prelude.size() >= budget) {
      ++head;
      continue;
    }
    const std::size_t n = out[head].slices.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Arrangement& cur = out[head];
      auto offsets = exchange_offsets(shape_of(sig, cur.slices[i]), shape_of(sig, cur.slices[i + 1]));
      if (!offsets) continue;
      Arrangement next;
      next.slices = cur.slices;
      next.origin = cur.origin;
      next.slices[i] = {cur.slices[i + 1].gen, offsets->first};
      next.slices[i + 1] = {cur.slices[i].gen, offsets->second};
      std::swap(next.origin[i], next.origin[i + 1]);
      if (!seen.insert(next.slices).second) continue;
      next.prelude = cur.prelude;
      next.prelude.push_back(i);
      out.push_back(std::move(next));
    }
    ++head;
  }
  for (auto& a : out) a.levels = levels_of(sig, d.dom(), a.slices);
  return out;
}

std::vector<Occurrence> match_in(const Diagram& d, const std::vector<Arrangement>& arrs, const Diagram& pattern) {
  std::vector<Occurrence> out;
  const auto& pat = pattern.slices();
  const std::size_t m = pat.size();
  const std::size_t n = d.size();

  if (m == 0) {
    // Inserting a side with no slices: every level and every fitting position.
    const auto& levels = arrs.front().levels;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t s = 0; s + pattern.dom().size() <= levels[i].size(); ++s)
        if (segment_equals(levels[i], s, pattern.dom())) out.push_back({{}, i, s});
    return out;
  }
  if (m > n) return out;

  std::unordered_set<std::string> seen;
  for (const auto& a : arrs) {
    for (std::size_t i = 0; i + m <= n; ++i) {
      const Slice& first = a.slices[i];
      if (first.gen != pat[0].gen || first.offset < pat[0].offset) continue;
      const std::size_t shift = first.offset - pat[0].offset;
      bool ok = true;
      for (std::size_t k = 1; k < m && ok; ++k)
        ok = a.slices[i + k].gen == pat[k].gen && a.slices[i + k].offset == pat[k].offset + shift;
      if (!ok) continue;
      if (!segment_equals(a.levels[i], shift, pattern.dom()) || !segment_equals(a.levels[i + m], shift, pattern.cod()))
        continue;
      // Same matched slices with the same context split give the same result.
      std::string key(n, '0');
      for (std::size_t k = 0; k < i; ++k) key[a.origin[k]] = 'b';
      for (std::size_t k = 0; k < m; ++k) key += "," + std::to_string(a.origin[i + k]);
      key += "/" + std::to_string(shift);
      if (!seen.insert(key).second) continue;
      out.push_back({a.prelude, i, shift});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Occurrence& x, const Occurrence& y) {
    if (x.prelude.size() != y.prelude.size()) return x.prelude.size() < y.prelude.size();
    if (x.window != y.window) return x.window < y.window;
    return x.shift < y.shift;
  });
  return out;
}

}  // namespace detail

std::vector<Occurrence> find_matches(const RewriteRule& rule, const Diagram& d, std::size_t budget, Direction dir) {
  if (!same_signature(rule.lhs, d)) throw Error(ErrorKind::SignatureMismatch, "rule '" + rule.name + "'");
  const Diagram& pattern = dir == Direction::forward ? rule.lhs : rule.rhs;
  auto all = detail::match_in(d, detail::arrangements(d, pattern.empty() ? 0 : budget), pattern);
  std::vector<Occurrence> out;
  std::unordered_set<std::string> results;
  for (auto& occ : all)
    if (results.insert(slice_key(normal_form(rewrite(rule, d, occ, dir)))).second) out.push_back(std::move(occ));
  return out;
}

Diagram rewrite(const RewriteRule& rule, const Diagram& d, const Occurrence& occ, Direction dir) {
  const Diagram& pattern = dir == Direction::forward ? rule.lhs : rule.rhs;
  const Diagram& replacement = dir == Direction::forward ? rule.rhs : rule.lhs;
  auto stale = [&](const std::string& why) {
    return Error(ErrorKind::StaleOccurrence, "rule '" + rule.name + "' (" + std::string(to_string(dir)) + "): " + why);
  };
  if (!same_signature(rule.lhs, d)) throw Error(ErrorKind::SignatureMismatch, "rule '" + rule.name + "'");

  std::vector<Slice> slices;
  try {
    slices = apply_exchanges(d, occ.prelude).slices();
  } catch (const Error&) {
    throw stale("prelude does not replay");
  }
  const auto& pat = pattern.slices();
  if (occ.window + pat.size() > slices.size()) throw stale("window out of range");
  for (std::size_t k = 0; k < pat.size(); ++k) {
    const Slice& s = slices[occ.window + k];
    if (s.gen != pat[k].gen || s.offset != pat[k].offset + occ.shift) throw stale("window does not match");
  }
  std::vector<Slice> out(slices.begin(), slices.begin() + static_cast<std::ptrdiff_t>(occ.window));
  for (const auto& s : replacement.slices()) out.push_back({s.gen, s.offset + occ.shift});
  out.insert(out.end(), slices.begin() + static_cast<std::ptrdiff_t>(occ.window + pat.size()), slices.end());

  // The boundary words around the window must match the rule's boundary.
  const auto levels = make_unchecked(d.sig(), d.dom(), d.cod(), slices).levels();
  auto fits = [&](const Interface& word, const Interface& side) {
    return occ.shift + side.size() <= word.size() &&
           std::equal(side.begin(), side.end(), word.begin() + static_cast<std::ptrdiff_t>(occ.shift));
  };
  if (!fits(levels[occ.window], pattern.dom()) || !fits(levels[occ.window + pat.size()], pattern.cod()))
    throw stale("boundary wires do not match");
  return Diagram(d.sig(), d.dom(), d.cod(), std::move(out));
}

namespace {

Diagram dg(const SigPtr& sig, Interface dom, Interface cod, std::vector<Slice> slices) {
  return Diagram(sig, std::move(dom), std::move(cod), std::move(slices));
}

std::vector<RewriteRule> global_state_rules(const SigPtr& sig) {
  const Interface e{}, x{"X"}, xx{"X", "X"}, xxx{"X", "X", "X"};
  std::vector<RewriteRule> rules;
  rules.emplace_back("coassoc", dg(sig, x, xxx, {{"copy", 0}, {"copy", 0}}), dg(sig, x, xxx, {{"copy", 0}, {"copy", 1}}));
  rules.emplace_back("counit-left", dg(sig, x, x, {{"copy", 0}, {"discard", 0}}), dg(sig, x, x, {}));
  rules.emplace_back("counit-right", dg(sig, x, x, {{"copy", 0}, {"discard", 1}}), dg(sig, x, x, {}));
  rules.emplace_back("get-get", dg(sig, e, xx, {{"get", 0}, {"get", 0}}), dg(sig, e, xx, {{"get", 0}, {"copy", 0}}));
  rules.emplace_back("get-discard", dg(sig, e, e, {{"get", 0}, {"discard", 0}}), dg(sig, e, e, {}));
  rules.emplace_back("put-put", dg(sig, xx, e, {{"put", 0}, {"put", 0}}), dg(sig, xx, e, {{"discard", 0}, {"put", 0}}));
  rules.emplace_back("get-put", dg(sig, e, e, {{"get", 0}, {"put", 0}}), dg(sig, e, e, {}));
  rules.emplace_back("put-get", dg(sig, x, x, {{"put", 0}, {"get", 0}}), dg(sig, x, x, {{"copy", 0}, {"put", 0}}));
  return rules;
}

}  // namespace

Theory global_state_theory() {
  auto sig = std::make_shared<const EffectfulSignature>(global_state_signature());
  return Theory{sig, global_state_rules(sig)};
}

Theory race_condition_theory() {
  EffectfulSignature base = global_state_signature();
  std::vector<GeneratorDecl> pure = base.pure();
  pure.push_back({"f", {"X"}, {"X"}});
  pure.push_back({"g", {"X"}, {"X"}});
  auto sig = std::make_shared<const EffectfulSignature>(base.sorts(), std::move(pure), base.effectful());
  Theory t{sig, global_state_rules(sig)};
  const Interface x{"X"}, e{};
  t.rules.emplace_back("f-discard", dg(sig, x, e, {{"f", 0}, {"discard", 0}}), dg(sig, x, e, {{"discard", 0}}));
  t.rules.emplace_back("g-discard", dg(sig, x, e, {{"g", 0}, {"discard", 0}}), dg(sig, x, e, {{"discard", 0}}));
  return t;
}

std::vector<RaceGoal> race_condition_goals(const Theory& race) {
  const SigPtr& sig = race.sig;
  const Interface e{};
  auto seq = [&](std::vector<Slice> slices) { return dg(sig, e, e, std::move(slices)); };
  std::vector<RaceGoal> goals;
  // Both read the initial state; g writes first, f overwrites it.
  goals.push_back({"f-only",
                   seq({{"get", 0}, {"get", 0}, {"g", 0}, {"f", 1}, {"put", 0}, {"put", 0}}),
                   seq({{"get", 0}, {"f", 0}, {"put", 0}})});
  goals.push_back({"g-only",
                   seq({{"get", 0}, {"get", 0}, {"f", 0}, {"g", 1}, {"put", 0}, {"put", 0}}),
                   seq({{"get", 0}, {"g", 0}, {"put", 0}})});
  // One process runs to completion before the other reads.
  goals.push_back({"f-then-g",
                   seq({{"get", 0}, {"f", 0}, {"put", 0}, {"get", 0}, {"g", 0}, {"put", 0}}),
                   seq({{"get", 0}, {"f", 0}, {"g", 0}, {"put", 0}})});
  goals.push_back({"g-then-f",
                   seq({{"get", 0}, {"g", 0}, {"put", 0}, {"get", 0}, {"f", 0}, {"put", 0}}),
                   seq({{"get", 0}, {"g", 0}, {"f", 0}, {"put", 0}})});
  return goals;
}

}  // namespace effdiag
