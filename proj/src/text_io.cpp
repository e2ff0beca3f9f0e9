#include "hydra/text_io.hpp"

#include <fstream>
#include <sstream>

#include "hydra/errors.hpp"

namespace hydra {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> tokenize_line(std::string_view line) {
  std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

static long parse_number(const std::string& tok, std::size_t line_no) {
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0)
    throw InputError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" + tok + "'");
  return v;
}

namespace {

struct FrameReader {
  std::string name;
  long states = -1;
  std::vector<std::pair<long, long>> edges;
  bool open = false;

  Frame finish(std::size_t line_no) {
    if (states <= 0) throw InputError("line " + std::to_string(line_no) + ": frame '" + name + "' has no positive state count");
    Frame f(static_cast<std::size_t>(states), name);
    for (auto [u, v] : edges) {
      if (u >= states || v >= states)
        throw InputError("frame '" + name + "': edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
      f.add_edge(static_cast<State>(u), static_cast<State>(v));
    }
    *this = FrameReader{};
    return f;
  }

  // Returns true if the line was a frame line.
  bool consume(const std::vector<std::string>& toks, std::size_t line_no) {
    const std::string& kw = toks[0];
    if (kw == "frame") {
      if (toks.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected 'frame <name>'");
      name = toks[1];
      open = true;
      return true;
    }
    if (kw == "states") {
      if (toks.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected 'states <N>'");
      states = parse_number(toks[1], line_no);
      open = true;
      return true;
    }
    if (kw == "edge") {
      if (toks.size() != 3) throw InputError("line " + std::to_string(line_no) + ": expected 'edge <u> <v>'");
      edges.emplace_back(parse_number(toks[1], line_no), parse_number(toks[2], line_no));
      return true;
    }
    return false;
  }
};

}  // namespace

std::vector<Frame> parse_frames(std::string_view text) {
  std::vector<Frame> out;
  FrameReader r;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    if (toks[0] == "frame" && r.open) out.push_back(r.finish(line_no));
    if (!r.consume(toks, line_no))
      throw InputError("line " + std::to_string(line_no) + ": unknown keyword '" + toks[0] + "'");
  }
  if (r.open) out.push_back(r.finish(line_no));
  if (out.empty()) throw InputError("no frame found");
  return out;
}

std::string format_frame(const Frame& f) {
  std::ostringstream out;
  out << "frame " << (f.name().empty() ? "unnamed" : f.name()) << "\n";
  out << "states " << f.size() << "\n";
  for (State u = 0; u < f.size(); ++u)
    for (State v : f.successors(u)) out << "edge " << u << " " << v << "\n";
  return out.str();
}

PointedModel parse_pointed_model(std::string_view text) {
  FrameReader r;
  std::vector<std::pair<int, std::vector<long>>> vals;
  long point = 0;
  std::size_t line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    auto toks = tokenize_line(line);
    if (toks.empty() || r.consume(toks, line_no)) continue;
    if (toks[0] == "val") {
      if (toks.size() < 2 || toks[1].size() < 2 || toks[1][0] != 'p')
        throw InputError("line " + std::to_string(line_no) + ": expected 'val p<k> <states...>'");
      int var = static_cast<int>(parse_number(toks[1].substr(1), line_no));
      std::vector<long> states;
      for (std::size_t k = 2; k < toks.size(); ++k) states.push_back(parse_number(toks[k], line_no));
      vals.emplace_back(var, std::move(states));
    } else if (toks[0] == "point") {
      if (toks.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected 'point <s>'");
      point = parse_number(toks[1], line_no);
    } else {
      throw InputError("line " + std::to_string(line_no) + ": unknown keyword '" + toks[0] + "'");
    }
  }
  PointedModel pm{Model(r.finish(line_no)), 0};
  for (auto& [var, states] : vals) {
    Bits ext(pm.model.size());
    for (long s : states) {
      if (s >= static_cast<long>(pm.model.size())) throw InputError("valuation state out of range");
      ext.set(static_cast<std::size_t>(s));
    }
    pm.model.set_extension(var, std::move(ext));
  }
  if (point >= static_cast<long>(pm.model.size())) throw InputError("point out of range");
  pm.point = static_cast<State>(point);
  return pm;
}

std::string format_pointed_model(const PointedModel& pm) {
  std::string out = format_frame(pm.model.frame());
  for (int p = 1; p <= pm.model.max_var(); ++p) {
    Bits ext = pm.model.extension(p);
    if (ext.none()) continue;
    out += "val p" + std::to_string(p);
    ext.for_each([&](std::size_t s) { out += " " + std::to_string(s); });
    out += "\n";
  }
  out += "point " + std::to_string(pm.point) + "\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace hydra
