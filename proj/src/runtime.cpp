#include "effdiag/runtime.hpp"

#include <algorithm>

#include "effdiag/error.hpp"

namespace effdiag {

namespace {

const std::string kR{kRuntimeSort};

Error malformed(const std::string& msg) { return Error(ErrorKind::MalformedRuntimeDiagram, msg); }

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Position of the single R in a boundary word, which must be position 0.
void require_leftmost_runtime(const Interface& word, const char* where) {
  const auto count = std::count(word.begin(), word.end(), kR);
  if (count != 1)
    throw malformed(std::string(where) + " carries " + std::to_string(count) + " runtime wires, expected 1");
  if (word.front() != kR) throw malformed(std::string(where) + " does not start with the runtime wire");
}

void require_run_signature(const RuntimeSignature& rs, const Diagram& rd) {
  if (!(rd.sig() == rs.run() || *rd.sig() == *rs.run()))
    throw Error(ErrorKind::SignatureMismatch, "diagram is not over the runtime signature");
}

}  // namespace

std::string RuntimeSignature::lifted_name(std::string_view gen) { return std::string(kLiftPrefix) + std::string(gen); }
std::string RuntimeSignature::braid_over_name(std::string_view sort) {
  return std::string(kBraidOverPrefix) + std::string(sort);
}
std::string RuntimeSignature::braid_under_name(std::string_view sort) {
  return std::string(kBraidUnderPrefix) + std::string(sort);
}

const RuntimeSignature::Info* RuntimeSignature::classify(std::string_view id) const {
  auto it = info_.find(std::string(id));
  return it == info_.end() ? nullptr : &it->second;
}

RuntimeSignature runtime_signature(const SigPtr& base) {
  for (const auto& s : base->sorts())
    if (s == kR) throw Error(ErrorKind::ReservedSortClash, "base signature declares the runtime sort '" + s + "'");

  RuntimeSignature rs;
  rs.base_ = base;
  std::vector<SortId> sorts{kR};
  sorts.insert(sorts.end(), base->sorts().begin(), base->sorts().end());

  std::vector<GeneratorDecl> gens;
  auto add = [&](GeneratorDecl g, RuntimeSignature::Info info) {
    if (!rs.info_.emplace(g.id, std::move(info)).second)
      throw Error(ErrorKind::ReservedSortClash, "generator id '" + g.id + "' collides with a derived runtime name");
    gens.push_back(std::move(g));
  };
  for (const auto& g : base->pure()) add(g, {RuntimeSignature::Kind::base_pure, g.id, {}});
  for (const auto& g : base->effectful()) {
    Interface dom{kR}, cod{kR};
    dom.insert(dom.end(), g.dom.begin(), g.dom.end());
    cod.insert(cod.end(), g.cod.begin(), g.cod.end());
    add({RuntimeSignature::lifted_name(g.id), std::move(dom), std::move(cod)},
        {RuntimeSignature::Kind::lifted, g.id, {}});
  }
  for (const auto& s : base->sorts()) {
    add({RuntimeSignature::braid_over_name(s), {kR, s}, {s, kR}}, {RuntimeSignature::Kind::braid_over, {}, s});
    add({RuntimeSignature::braid_under_name(s), {s, kR}, {kR, s}}, {RuntimeSignature::Kind::braid_under, {}, s});
  }
  rs.run_ = std::make_shared<const EffectfulSignature>(std::move(sorts), std::move(gens),
                                                       std::vector<GeneratorDecl>{});
  return rs;
}

RuntimeSignature recover_runtime_signature(const SigPtr& run) {
  std::vector<SortId> sorts;
  for (const auto& s : run->sorts())
    if (s != kR) sorts.push_back(s);
  std::vector<GeneratorDecl> pure, effectful;
  for (const auto& g : run->pure()) {
    if (starts_with(g.id, kBraidOverPrefix) || starts_with(g.id, kBraidUnderPrefix)) continue;
    if (starts_with(g.id, kLiftPrefix)) {
      if (g.dom.empty() || g.cod.empty() || g.dom.front() != kR || g.cod.front() != kR)
        throw malformed("lifted generator '" + g.id + "' does not thread the runtime wire");
      effectful.push_back({g.id.substr(kLiftPrefix.size()), Interface(g.dom.begin() + 1, g.dom.end()),
                           Interface(g.cod.begin() + 1, g.cod.end())});
    } else {
      pure.push_back(g);
    }
  }
  auto base = std::make_shared<const EffectfulSignature>(std::move(sorts), std::move(pure), std::move(effectful));
  RuntimeSignature rs = runtime_signature(base);
  if (!(*rs.run() == *run)) throw malformed("signature is not a runtime signature");
  return rs;
}

bool is_runtime_signature(const EffectfulSignature& sig) {
  if (!sig.has_sort(kRuntimeSort) || !sig.effectful().empty()) return false;
  try {
    recover_runtime_signature(std::make_shared<const EffectfulSignature>(sig));
    return true;
  } catch (const Error&) {
    return false;
  }
}

Diagram encode(const RuntimeSignature& rs, const Diagram& d) {
  if (!(d.sig() == rs.base() || *d.sig() == *rs.base()))
    throw Error(ErrorKind::SignatureMismatch, "diagram is not over the base signature");
  const auto levels = d.levels();
  std::vector<Slice> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Slice& s = d.slices()[i];
    if (d.signature().is_pure(s.gen)) {
      out.push_back({s.gen, s.offset + 1});
      continue;
    }
    const Interface& before = levels[i];
    for (std::size_t k = 0; k < s.offset; ++k) out.push_back({RuntimeSignature::braid_over_name(before[k]), k});
    out.push_back({RuntimeSignature::lifted_name(s.gen), s.offset});
    for (std::size_t k = s.offset; k-- > 0;) out.push_back({RuntimeSignature::braid_under_name(before[k]), k});
  }
  Interface dom{kR}, cod{kR};
  dom.insert(dom.end(), d.dom().begin(), d.dom().end());
  cod.insert(cod.end(), d.cod().begin(), d.cod().end());
  return make_unchecked(rs.run(), std::move(dom), std::move(cod), std::move(out));
}

Diagram decode(const RuntimeSignature& rs, const Diagram& rd) {
  require_run_signature(rs, rd);
  require_leftmost_runtime(rd.dom(), "domain");
  require_leftmost_runtime(rd.cod(), "codomain");

  std::size_t r = 0;
  std::vector<Slice> out;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    const Slice& s = rd.slices()[i];
    const auto* info = rs.classify(s.gen);
    if (!info) throw malformed("unknown generator '" + s.gen + "'");
    const std::size_t width = rd.signature().get(s.gen).dom.size();
    switch (info->kind) {
      case RuntimeSignature::Kind::braid_over:
        if (s.offset != r) throw malformed("braid at slice " + std::to_string(i) + " does not cross the runtime");
        ++r;
        break;
      case RuntimeSignature::Kind::braid_under:
        if (s.offset + 1 != r) throw malformed("braid at slice " + std::to_string(i) + " does not cross the runtime");
        --r;
        break;
      case RuntimeSignature::Kind::lifted:
        if (s.offset != r)
          throw malformed("lifted generator at slice " + std::to_string(i) + " is not fed the runtime wire");
        out.push_back({info->base_id, r});
        break;
      case RuntimeSignature::Kind::base_pure:
        if (s.offset + width <= r) {
          out.push_back({s.gen, s.offset});
          r = r - width + rd.signature().get(s.gen).cod.size();
        } else if (s.offset > r) out.push_back({s.gen, s.offset - 1});
        else throw malformed("pure generator at slice " + std::to_string(i) + " consumes the runtime wire");
        break;
    }
  }
  if (r != 0) throw malformed("runtime wire does not return to the leftmost position");
  return Diagram(rs.base(), Interface(rd.dom().begin() + 1, rd.dom().end()),
                 Interface(rd.cod().begin() + 1, rd.cod().end()), std::move(out));
}

Diagram braid_canonical(const RuntimeSignature& rs, const Diagram& rd) { return encode(rs, decode(rs, rd)); }

bool equals_runtime(const RuntimeSignature& rs, const Diagram& a, const Diagram& b) {
  return equals(decode(rs, a), decode(rs, b));
}

namespace {

Diagram rebuild(const Diagram& rd, std::vector<Slice> slices) {
  return Diagram(rd.sig(), rd.dom(), rd.cod(), std::move(slices));
}

bool is_kind(const RuntimeSignature& rs, const Slice& s, RuntimeSignature::Kind kind) {
  const auto* info = rs.classify(s.gen);
  return info && info->kind == kind;
}

Error bad_step(const std::string& msg) { return Error(ErrorKind::IllTyped, "braid rewrite: " + msg); }

bool inverse_pair(const RuntimeSignature& rs, const Slice& a, const Slice& b) {
  const auto* ia = rs.classify(a.gen);
  const auto* ib = rs.classify(b.gen);
  if (!ia || !ib || a.offset != b.offset || ia->sort != ib->sort) return false;
  using K = RuntimeSignature::Kind;
  return (ia->kind == K::braid_over && ib->kind == K::braid_under) ||
         (ia->kind == K::braid_under && ib->kind == K::braid_over);
}

}  // namespace

Diagram apply_braid_step(const RuntimeSignature& rs, const Diagram& rd, const BraidStep& step) {
  using K = RuntimeSignature::Kind;
  const auto& slices = rd.slices();
  switch (step.rule) {
    case BraidStep::Rule::exchange:
      return exchange(rd, step.index);

    case BraidStep::Rule::cancel_pair: {
      if (step.index + 1 >= slices.size() || !inverse_pair(rs, slices[step.index], slices[step.index + 1]))
        throw bad_step("no inverse braid pair at " + std::to_string(step.index));
      std::vector<Slice> out = slices;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(step.index),
                out.begin() + static_cast<std::ptrdiff_t>(step.index + 2));
      return rebuild(rd, std::move(out));
    }

    case BraidStep::Rule::insert_pair: {
      if (step.inserted.size() != 2 || step.index > slices.size() ||
          !inverse_pair(rs, step.inserted[0], step.inserted[1]))
        throw bad_step("inserted slices are not an inverse braid pair");
      std::vector<Slice> out = slices;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(step.index), step.inserted.begin(), step.inserted.end());
      return rebuild(rd, std::move(out));
    }

    case BraidStep::Rule::naturality: {
      // braid_over A_0..A_{n-1} at j..j+n-1, then v at j  ==>  v at j+1, braid_over over cod(v)
      const std::size_t n = step.width;
      if (step.index + n >= slices.size()) throw bad_step("naturality window out of range");
      const Slice& v = slices[step.index + n];
      if (!is_kind(rs, v, K::base_pure)) throw bad_step("naturality needs a pure base generator");
      const GeneratorDecl& g = rd.signature().get(v.gen);
      if (g.dom.size() != n) throw bad_step("braid count does not match the generator domain");
      const std::size_t j = v.offset;
      for (std::size_t k = 0; k < n; ++k) {
        const Slice& b = slices[step.index + k];
        const auto* info = rs.classify(b.gen);
        if (!info || info->kind != K::braid_over || b.offset != j + k || info->sort != g.dom[k])
          throw bad_step("window is not a braid over the generator domain");
      }
      if (n == 0) {
        const Interface level = rd.levels()[step.index];
        if (j >= level.size() || level[j] != kR) throw bad_step("runtime wire is not beside the generator");
      }
      std::vector<Slice> replacement{{v.gen, j + 1}};
      for (std::size_t k = 0; k < g.cod.size(); ++k)
        replacement.push_back({RuntimeSignature::braid_over_name(g.cod[k]), j + k});
      std::vector<Slice> out(slices.begin(), slices.begin() + static_cast<std::ptrdiff_t>(step.index));
      out.insert(out.end(), replacement.begin(), replacement.end());
      out.insert(out.end(), slices.begin() + static_cast<std::ptrdiff_t>(step.index + n + 1), slices.end());
      return rebuild(rd, std::move(out));
    }

    case BraidStep::Rule::naturality_inverse: {
      // v at j+1, braid_over B_0..B_{c-1} at j..  ==>  braid_over over dom(v), v at j
      const std::size_t c = step.width;
      if (step.index + c >= slices.size()) throw bad_step("naturality window out of range");
      const Slice& v = slices[step.index];
      if (!is_kind(rs, v, K::base_pure) || v.offset == 0) throw bad_step("naturality needs a pure base generator");
      const GeneratorDecl& g = rd.signature().get(v.gen);
      if (g.cod.size() != c) throw bad_step("braid count does not match the generator codomain");
      const std::size_t j = v.offset - 1;
      const Interface level = rd.levels()[step.index];
      if (level[j] != kR) throw bad_step("runtime wire is not beside the generator");
      for (std::size_t k = 0; k < c; ++k) {
        const Slice& b = slices[step.index + 1 + k];
        const auto* info = rs.classify(b.gen);
        if (!info || info->kind != K::braid_over || b.offset != j + k || info->sort != g.cod[k])
          throw bad_step("window is not a braid over the generator codomain");
      }
      std::vector<Slice> replacement;
      for (std::size_t k = 0; k < g.dom.size(); ++k)
        replacement.push_back({RuntimeSignature::braid_over_name(g.dom[k]), j + k});
      replacement.push_back({v.gen, j});
      std::vector<Slice> out(slices.begin(), slices.begin() + static_cast<std::ptrdiff_t>(step.index));
      out.insert(out.end(), replacement.begin(), replacement.end());
      out.insert(out.end(), slices.begin() + static_cast<std::ptrdiff_t>(step.index + c + 1), slices.end());
      return rebuild(rd, std::move(out));
    }
  }
  throw bad_step("unknown rule");
}

Diagram apply_braid_steps(const RuntimeSignature& rs, const Diagram& rd, const std::vector<BraidStep>& steps) {
  Diagram cur = rd;
  for (const auto& step : steps) cur = apply_braid_step(rs, cur, step);
  return cur;
}

BraidCanonical braid_canonical_with_witness(const RuntimeSignature& rs, const Diagram& rd) {
  using K = RuntimeSignature::Kind;
  decode(rs, rd);  // validates

  Diagram cur = rd;
  std::vector<BraidStep> witness;
  auto apply = [&](BraidStep step) {
    cur = apply_braid_step(rs, cur, step);
    witness.push_back(std::move(step));
  };

  // Invariant: cur = encoded prefix [0, prefix) ; braid_over at 0..r-1 ; unprocessed rest.
  std::size_t prefix = 0, r = 0;
  while (prefix + r < cur.size()) {
    const std::size_t t = prefix + r;
    const Slice s = cur.slices()[t];
    const auto* info = rs.classify(s.gen);
    switch (info->kind) {
      case K::braid_over:
        ++r;
        break;
      case K::braid_under:
        apply({BraidStep::Rule::cancel_pair, t - 1, 0, {}});
        --r;
        break;
      case K::lifted: {
        // Return R to the left after the generator, then re-open the route.
        const Interface level = cur.levels()[t + 1];
        for (std::size_t m = 0; m < r; ++m) {
          const std::size_t k = r - 1 - m;
          apply({BraidStep::Rule::insert_pair, t + 1 + m, 0,
                 {{RuntimeSignature::braid_under_name(level[k]), k},
                  {RuntimeSignature::braid_over_name(level[k]), k}}});
        }
        prefix = t + 1 + r;
        break;
      }
      case K::base_pure: {
        const std::size_t d = rd.signature().get(s.gen).dom.size();
        const std::size_t c = rd.signature().get(s.gen).cod.size();
        const std::size_t j = s.offset;
        std::size_t at = t;
        if (j > r) {
          for (std::size_t k = 0; k < r; ++k, --at) apply({BraidStep::Rule::exchange, at - 1, 0, {}});
        } else {
          for (std::size_t k = r; k-- > j + d; --at) apply({BraidStep::Rule::exchange, at - 1, 0, {}});
          apply({BraidStep::Rule::naturality, prefix + j, d, {}});
          at = prefix + j;
          for (std::size_t k = 0; k < j; ++k, --at) apply({BraidStep::Rule::exchange, at - 1, 0, {}});
          r = r - d + c;
        }
        ++prefix;
        break;
      }
    }
  }
  return {std::move(cur), std::move(witness)};
}

}  // namespace effdiag
