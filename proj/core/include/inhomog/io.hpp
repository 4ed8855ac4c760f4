#pragma once

#include <iosfwd>
#include <string>

#include "inhomog/constructions.hpp"

namespace inhomog {

// IFS description file:
// {"maps":[{"kind":"similarity","scale":..,"angle":..,"reflect":..,"t":[x,y]}
//         |{"kind":"diag","sx":..,"sy":..,"t":[x,y]}],
//  "condensation":[{"kind":"point","p":[x,y]}
//                 |{"kind":"segment","a":[x,y],"b":[x,y]}
//                 |{"kind":"rect","a":[x,y],"b":[x,y]}]}
System parse_ifs_json(const std::string& text);
System load_ifs_file(const std::string& path);
std::string ifs_to_json(const System& sys);

// Group description file mirrors the IFS format:
// {"maps":[{"kind":"moebius","a":[re,im],"b":[re,im]}, ...]}
// with optional "group":"cyclic"|"free" (default: cyclic for one
// generator, free otherwise).
GroupPresentation parse_group_json(const std::string& text);
GroupPresentation load_group_file(const std::string& path);
std::string group_to_json(const GroupPresentation& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace inhomog
