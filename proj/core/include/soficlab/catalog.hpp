#ifndef SOFICLAB_CATALOG_HPP
#define SOFICLAB_CATALOG_HPP

#include <string>

#include "soficlab/model.hpp"
#include "soficlab/partition.hpp"
#include "soficlab/tower.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

// Named constructors resolving the references used in configs. A
// reference is either a builder ("cyclic:4", "odometer:2:8", ...) or a
// path to a file in one of the text formats; anything containing '/' or
// '.' is treated as a path.
//
//   cyclic:<n>[:<gens>]          shift on n points
//   trivial:<n>[:<gens>]         identity generators on n points
//   point[:<gens>]               one-point action
//   random:<n>:<gens>:<seed>     uniform random permutations
//   product(<ref>,<ref>)         diagonal product of two actions
//   odometer:<base>:<depth>      tower of cyclic quotients
//   odometer-level:<base>:<depth>:<level>   one level, as a tower model
//   bernoulli:<alphabet>:<p,...>:<gens>     Bernoulli shift model
//   inline:<carrier>:<k>:<c0,c1,...>        finite partition
//   coord:<gens>:<alphabet>[:<word>]        coordinate cylinder partition

FiniteAction resolve_action(const std::string& ref);
MeasureModel resolve_model(const std::string& ref);
Tower resolve_tower(const std::string& ref);
IndexedPartition resolve_partition(const std::string& ref);

/// Human-readable list of the builders above.
std::string catalog_listing();

} // namespace soficlab

#endif
