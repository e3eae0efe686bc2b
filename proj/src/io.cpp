#include "pclone/io.hpp"

#include <fstream>
#include <sstream>

namespace pclone {
namespace {

struct Line {
  int number;
  std::string text;
};

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string s = strip(raw);
    if (s.empty() || s[0] == '#') continue;
    lines.push_back({number, s});
  }
  return lines;
}

[[noreturn]] void parse_error(const std::string& name, int line,
                              const std::string& msg) {
  throw Error(name + ":" + std::to_string(line) + ": " + msg);
}

std::uint32_t parse_tuple(const std::string& name, int line,
                          const std::string& text, int arity) {
  if (static_cast<int>(text.size()) != arity) {
    parse_error(name, line,
                "tuple length " + std::to_string(text.size()) + ", expected " +
                    std::to_string(arity));
  }
  std::uint32_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      parse_error(name, line, std::string("invalid tuple character '") + c + "'");
    }
    bits = (bits << 1) | std::uint32_t(c - '0');
  }
  return bits;
}

// Consumes an optional leading "arity N" line; returns N or -1.
int take_arity_header(const std::string& name, std::vector<Line>& lines) {
  if (lines.empty() || lines.front().text.rfind("arity ", 0) != 0) return -1;
  const Line header = lines.front();
  lines.erase(lines.begin());
  int arity = 0;
  try {
    arity = std::stoi(header.text.substr(6));
  } catch (const std::exception&) {
    parse_error(name, header.number, "malformed arity header");
  }
  if (arity < 1 || arity > kMaxArity) {
    parse_error(name, header.number,
                "unsupported arity " + std::to_string(arity));
  }
  return arity;
}

}  // namespace

Relation parse_relation_text(const std::string& text, const std::string& name) {
  std::vector<Line> lines = content_lines(text);
  int arity = take_arity_header(name, lines);
  if (arity < 0) {
    if (lines.empty()) throw Error(name + ": no tuples in relation file");
    arity = static_cast<int>(lines.front().text.size());
    require(arity >= 1 && arity <= kMaxArity, name + ": unsupported arity " +
                                                  std::to_string(arity));
  }
  Relation rel(arity);
  for (const Line& line : lines) {
    const std::uint32_t bits = parse_tuple(name, line.number, line.text, arity);
    if (rel.contains(bits)) {
      parse_error(name, line.number, "duplicate tuple " + line.text);
    }
    rel.add(bits);
  }
  return rel;
}

PartialFunction parse_function_text(const std::string& text,
                                    const std::string& name) {
  std::vector<Line> lines = content_lines(text);
  int arity = take_arity_header(name, lines);
  if (arity < 0 && lines.empty()) {
    throw Error(name + ": no mappings in function file");
  }
  PartialFunction f(arity < 0 ? 1 : arity);
  for (const Line& line : lines) {
    std::istringstream in(line.text);
    std::string tuple, value, extra;
    in >> tuple >> value;
    if (value.empty()) {
      parse_error(name, line.number, "expected \"tuple value\"");
    }
    if (in >> extra) {
      parse_error(name, line.number, "trailing content \"" + extra + "\"");
    }
    if (arity < 0) {
      arity = static_cast<int>(tuple.size());
      require(arity >= 1 && arity <= kMaxArity,
              name + ": unsupported arity " + std::to_string(arity));
      f = PartialFunction(arity);
    }
    const std::uint32_t bits = parse_tuple(name, line.number, tuple, arity);
    if (value != "0" && value != "1") {
      parse_error(name, line.number, "value must be 0 or 1, got \"" + value + "\"");
    }
    if (f.defined_at(bits)) {
      parse_error(name, line.number, "duplicate mapping for " + tuple);
    }
    f.define(bits, value == "1");
  }
  return f;
}

std::string relation_to_text(const Relation& rel) {
  std::string out;
  if (rel.empty()) out = "arity " + std::to_string(rel.arity()) + "\n";
  for (std::uint32_t t : rel.tuples()) {
    out += tuple_to_string(t, rel.arity());
    out += '\n';
  }
  return out;
}

std::string function_to_text(const PartialFunction& f) {
  std::string out;
  if (f.is_empty()) out = "arity " + std::to_string(f.arity()) + "\n";
  for (std::uint32_t x : f.domain_points()) {
    out += tuple_to_string(x, f.arity());
    out += ' ';
    out += f.value_at(x) ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Relation read_relation_file(const std::string& path) {
  return parse_relation_text(read_file(path), path);
}

PartialFunction read_function_file(const std::string& path) {
  return parse_function_text(read_file(path), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << text;
  require(bool(out), "write failed: " + path);
}

}  // namespace pclone
