#pragma once

// Text formats. A .rel file holds one 0/1 tuple per line, all the same
// length (the arity); a .pfn file holds one "tuple value" mapping per
// line. An optional first line "arity N" fixes the arity explicitly,
// which is the only way to express the empty relation or the nowhere
// defined function. Blank lines and lines starting with # are ignored.
// Parse errors carry the source name and 1-based line number.

#include <string>

#include "pclone/core.hpp"

namespace pclone {

Relation parse_relation_text(const std::string& text, const std::string& name);
PartialFunction parse_function_text(const std::string& text,
                                    const std::string& name);

std::string relation_to_text(const Relation& rel);
std::string function_to_text(const PartialFunction& f);

Relation read_relation_file(const std::string& path);
PartialFunction read_function_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace pclone
