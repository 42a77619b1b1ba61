#ifndef SOFICLAB_IO_HPP
#define SOFICLAB_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "soficlab/partition.hpp"
#include "soficlab/tower.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

// Text file formats. Serialization is canonical and parse(format(x)) == x
// bit-exactly; the tower format carries a checksum over its body that is
// verified on load.

std::string format_partition(const IndexedPartition& p);
IndexedPartition parse_partition(const std::string& text);

std::string format_action(const FiniteAction& a);
FiniteAction parse_action(const std::string& text);

std::string format_tower(const Tower& t);
Tower parse_tower(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t v);

/// Shortest round-trip decimal form; infinities as "inf"/"-inf".
std::string fmt_double(double v);

} // namespace soficlab

#endif
