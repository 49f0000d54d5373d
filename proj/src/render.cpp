#include "effdiag/render.hpp"

#include <algorithm>
#include <sstream>

#include "effdiag/error.hpp"
#include "effdiag/runtime.hpp"

namespace effdiag {

namespace {

constexpr int kPitch = 4;
constexpr int kMargin = 20;

struct Prepared {
  Diagram diagram;
  std::optional<RuntimeSignature> runtime;
};

Prepared prepare(const Diagram& d, bool show_runtime) {
  if (is_runtime_signature(d.signature())) return {d, recover_runtime_signature(d.sig())};
  if (!show_runtime) return {d, std::nullopt};
  RuntimeSignature rs = runtime_signature(d.sig());
  Diagram encoded = encode(rs, d);
  return {std::move(encoded), std::move(rs)};
}

std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

void put(std::string& row, std::size_t col, std::string_view text) {
  if (row.size() < col + text.size()) row.resize(col + text.size(), ' ');
  row.replace(col, text.size(), text);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_text(const Diagram& input, bool show_runtime) {
  const Prepared p = prepare(input, show_runtime);
  const Diagram& d = p.diagram;
  const auto levels = d.levels();
  const auto wire = [](const SortId& s) { return s == kRuntimeSort ? "!" : "|"; };

  auto boundary = [&](const Interface& word) {
    std::string row;
    for (std::size_t i = 0; i < word.size(); ++i) put(row, i * kPitch, wire(word[i]));
    return rtrim(row);
  };

  std::vector<std::string> rows;
  rows.push_back(boundary(d.dom()));
  if (d.empty()) rows.push_back(boundary(d.dom()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Slice& s = d.slices()[i];
    const GeneratorDecl& g = d.signature().get(s.gen);
    const Interface& before = levels[i];
    std::string row;
    for (std::size_t k = 0; k < s.offset; ++k) put(row, k * kPitch, wire(before[k]));
    const std::string box = "[" + s.gen + "]";
    put(row, s.offset * kPitch, box);
    std::size_t cursor = s.offset * kPitch + box.size() + 1;
    for (std::size_t k = s.offset + g.dom.size(); k < before.size(); ++k) {
      const std::size_t col = std::max(k * kPitch, cursor);
      put(row, col, wire(before[k]));
      cursor = col + 2;
    }
    rows.push_back(rtrim(row));
  }
  rows.push_back(boundary(d.cod()));

  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::string render_svg(const Diagram& input, const RenderOptions& opts) {
  if (opts.cell_width <= 0 || opts.cell_height <= 0)
    throw Error(ErrorKind::IllTyped, "cell dimensions must be positive");
  const Prepared p = prepare(input, opts.show_runtime);
  const Diagram& d = p.diagram;
  const auto& rs = p.runtime;
  const int cw = opts.cell_width, ch = opts.cell_height;
  const std::size_t n = d.size();

  auto x_of = [&](std::size_t index) { return kMargin + static_cast<int>(index) * cw + cw / 2; };
  auto y_of = [&](std::size_t level) { return kMargin + static_cast<int>(level) * ch; };
  const int bottom = y_of(std::max<std::size_t>(n, 1));

  struct Track {
    std::vector<std::pair<int, int>> points;
    bool runtime = false;
  };
  struct Box {
    int x, y, w, h;
    std::string label;
    bool effectful;
  };
  std::vector<Track> tracks;
  std::vector<Box> boxes;
  std::vector<std::size_t> active;  // track index per wire position
  std::size_t max_width = d.dom().size();

  auto add_point = [&](std::size_t t, int x, int y) {
    auto& pts = tracks[t].points;
    if (pts.empty() || pts.back() != std::pair{x, y}) pts.emplace_back(x, y);
  };
  for (std::size_t k = 0; k < d.dom().size(); ++k) {
    tracks.push_back({{{x_of(k), kMargin}}, d.dom()[k] == kRuntimeSort});
    active.push_back(tracks.size() - 1);
  }

  using Kind = RuntimeSignature::Kind;
  for (std::size_t i = 0; i < n; ++i) {
    const Slice& s = d.slices()[i];
    const GeneratorDecl& g = d.signature().get(s.gen);
    const auto* info = rs ? rs->classify(s.gen) : nullptr;
    const int y0 = y_of(i), top = y0 + ch / 4, low = y0 + 3 * ch / 4;
    for (std::size_t k = 0; k < active.size(); ++k) add_point(active[k], x_of(k), y0);

    if (info && (info->kind == Kind::braid_over || info->kind == Kind::braid_under)) {
      const std::size_t k = s.offset;
      add_point(active[k], x_of(k), top);
      add_point(active[k + 1], x_of(k + 1), top);
      add_point(active[k], x_of(k + 1), low);
      add_point(active[k + 1], x_of(k), low);
      std::swap(active[k], active[k + 1]);
      continue;
    }

    const std::size_t span = std::max<std::size_t>({g.dom.size(), g.cod.size(), 1});
    max_width = std::max(max_width, s.offset + span);
    Box box{kMargin + static_cast<int>(s.offset) * cw + 4, top, static_cast<int>(span) * cw - 8, low - top,
            info && info->kind == Kind::lifted ? info->base_id : s.gen,
            info ? info->kind == Kind::lifted : !d.signature().is_pure(s.gen)};
    const int cx = box.x + box.w / 2, cy = top + (low - top) / 2;

    const bool threads = info && info->kind == Kind::lifted;
    std::vector<std::size_t> outputs;
    for (std::size_t q = 0; q < g.dom.size(); ++q) {
      const std::size_t t = active[s.offset + q];
      add_point(t, x_of(s.offset + q), top);
      if (threads && q == 0) {
        add_point(t, cx, cy);
        add_point(t, x_of(s.offset), low);
        outputs.push_back(t);
      }
    }
    for (std::size_t q = threads ? 1 : 0; q < g.cod.size(); ++q) {
      tracks.push_back({{{x_of(s.offset + q), low}}, false});
      outputs.push_back(tracks.size() - 1);
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(s.offset),
                 active.begin() + static_cast<std::ptrdiff_t>(s.offset + g.dom.size()));
    active.insert(active.begin() + static_cast<std::ptrdiff_t>(s.offset), outputs.begin(), outputs.end());
    max_width = std::max(max_width, active.size());
    boxes.push_back(std::move(box));
  }
  for (std::size_t k = 0; k < active.size(); ++k) add_point(active[k], x_of(k), bottom);

  const int width = 2 * kMargin + static_cast<int>(max_width) * cw;
  const int height = bottom + kMargin;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  for (const auto& t : tracks) {
    if (t.points.size() < 2) continue;
    out << "  <path class=\"" << (t.runtime ? "runtime" : "wire") << "\" d=\"";
    for (std::size_t k = 0; k < t.points.size(); ++k)
      out << (k ? " L " : "M ") << t.points[k].first << ' ' << t.points[k].second;
    out << "\" fill=\"none\" stroke=\"" << xml_escape(t.runtime ? opts.runtime_color : opts.wire_color)
        << "\" stroke-width=\"" << (t.runtime ? 3 : 2) << "\"/>\n";
  }
  for (const auto& b : boxes) {
    out << "  <rect class=\"" << (b.effectful ? "effectful" : "pure") << "\" x=\"" << b.x << "\" y=\"" << b.y
        << "\" width=\"" << b.w << "\" height=\"" << b.h << "\" fill=\"#ffffff\" stroke=\""
        << xml_escape(b.effectful ? opts.effectful_color : opts.pure_color) << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << b.x + b.w / 2 << "\" y=\"" << b.y + b.h / 2 + 4
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" fill=\""
        << xml_escape(b.effectful ? opts.effectful_color : opts.pure_color) << "\">" << xml_escape(b.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render(const Diagram& d, const RenderOptions& opts) {
  return opts.mode == RenderOptions::Mode::svg ? render_svg(d, opts) : render_text(d, opts.show_runtime);
}

}  // namespace effdiag
