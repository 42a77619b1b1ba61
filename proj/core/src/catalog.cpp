#include "soficlab/catalog.hpp"

#include <algorithm>

#include "soficlab/errors.hpp"
#include "soficlab/io.hpp"

namespace soficlab {

namespace {

/// Builder names win over the path heuristic so rational arguments like
/// "bernoulli:2:1/2,1/2:1" do not read files.
bool has_builder_prefix(const std::string& ref) {
  static const char* kinds[] = {"cyclic:",   "trivial:", "point",     "random:",
                                "product(",  "odometer", "bernoulli:", "inline:",
                                "coord:",    "singletons:", "oneblock:"};
  for (const char* k : kinds) {
    if (ref.rfind(k, 0) == 0) return true;
  }
  return false;
}

bool looks_like_path(const std::string& ref) {
  if (has_builder_prefix(ref)) return false;
  return ref.find('/') != std::string::npos || ref.find('.') != std::string::npos;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long long to_int(const std::string& s, const std::string& ref) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad number \"" + s + "\" in reference \"" + ref + "\"");
  }
}

} // namespace

FiniteAction resolve_action(const std::string& ref) {
  if (ref.rfind("product(", 0) == 0) {
    if (ref.back() != ')') throw InputError("unbalanced product reference: " + ref);
    std::string inner = ref.substr(8, ref.size() - 9);
    // split at the top-level comma
    int depth = 0;
    size_t cut = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        cut = i;
        break;
      }
    }
    if (cut == std::string::npos) throw InputError("product needs two references: " + ref);
    return diagonal_product(resolve_action(inner.substr(0, cut)),
                            resolve_action(inner.substr(cut + 1)));
  }
  if (looks_like_path(ref)) return parse_action(read_file(ref));
  auto parts = split(ref, ':');
  const std::string& kind = parts[0];
  if (kind == "cyclic" && (parts.size() == 2 || parts.size() == 3)) {
    int gens = parts.size() == 3 ? static_cast<int>(to_int(parts[2], ref)) : 1;
    return cyclic_action(static_cast<int>(to_int(parts[1], ref)), gens);
  }
  if (kind == "trivial" && (parts.size() == 2 || parts.size() == 3)) {
    int gens = parts.size() == 3 ? static_cast<int>(to_int(parts[2], ref)) : 1;
    return trivial_action(static_cast<int>(to_int(parts[1], ref)), gens);
  }
  if (kind == "point" && (parts.size() == 1 || parts.size() == 2)) {
    int gens = parts.size() == 2 ? static_cast<int>(to_int(parts[1], ref)) : 1;
    return trivial_action(1, gens);
  }
  if (kind == "random" && parts.size() == 4) {
    return random_action(static_cast<int>(to_int(parts[1], ref)),
                         static_cast<int>(to_int(parts[2], ref)),
                         static_cast<uint64_t>(to_int(parts[3], ref)));
  }
  if (kind == "odometer-level" && parts.size() == 4) {
    Tower t = odometer_tower(static_cast<int>(to_int(parts[1], ref)),
                             static_cast<int>(to_int(parts[2], ref)));
    int level = static_cast<int>(to_int(parts[3], ref));
    if (level < 0 || level >= t.depth()) throw InputError("level out of range in " + ref);
    return t.level(level);
  }
  throw InputError("unknown action reference: " + ref);
}

MeasureModel resolve_model(const std::string& ref) {
  auto parts = split(ref, ':');
  if (!looks_like_path(ref) && parts[0] == "bernoulli" && parts.size() == 4) {
    BernoulliModel b;
    b.alphabet = static_cast<int>(to_int(parts[1], ref));
    for (const auto& p : split(parts[2], ',')) {
      try {
        b.probs.push_back(Rat::parse(p));
      } catch (const std::exception&) {
        throw InputError("bad probability \"" + p + "\" in reference \"" + ref + "\"");
      }
    }
    b.generator_count = static_cast<int>(to_int(parts[3], ref));
    return MeasureModel::bernoulli(std::move(b));
  }
  if (!looks_like_path(ref) && parts[0] == "odometer-level" && parts.size() == 4) {
    auto t = std::make_shared<Tower>(odometer_tower(static_cast<int>(to_int(parts[1], ref)),
                                                    static_cast<int>(to_int(parts[2], ref))));
    return MeasureModel::tower_level(t, static_cast<int>(to_int(parts[3], ref)));
  }
  return MeasureModel::finite(resolve_action(ref));
}

Tower resolve_tower(const std::string& ref) {
  if (looks_like_path(ref)) return parse_tower(read_file(ref));
  auto parts = split(ref, ':');
  if (parts[0] == "odometer" && parts.size() == 3) {
    return odometer_tower(static_cast<int>(to_int(parts[1], ref)),
                          static_cast<int>(to_int(parts[2], ref)));
  }
  throw InputError("unknown tower reference: " + ref);
}

IndexedPartition resolve_partition(const std::string& ref) {
  if (looks_like_path(ref)) return parse_partition(read_file(ref));
  auto parts = split(ref, ':');
  if (parts[0] == "inline" && parts.size() == 4) {
    FinitePartition p;
    p.carrier = static_cast<int>(to_int(parts[1], ref));
    p.block_count = static_cast<int>(to_int(parts[2], ref));
    for (const auto& c : split(parts[3], ',')) {
      p.assign.push_back(static_cast<int>(to_int(c, ref)));
    }
    p.validate();
    return IndexedPartition(std::move(p));
  }
  if (parts[0] == "coord" && (parts.size() == 3 || parts.size() == 4)) {
    GroupWord at = parts.size() == 4 ? GroupWord::parse(parts[3]) : GroupWord();
    return IndexedPartition(CylinderPartition::coordinate(
        static_cast<int>(to_int(parts[1], ref)), static_cast<int>(to_int(parts[2], ref)), at));
  }
  if (parts[0] == "singletons" && parts.size() == 2) {
    return IndexedPartition(FinitePartition::singletons(static_cast<int>(to_int(parts[1], ref))));
  }
  if (parts[0] == "oneblock" && parts.size() == 2) {
    return IndexedPartition(FinitePartition::one_block(static_cast<int>(to_int(parts[1], ref))));
  }
  throw InputError("unknown partition reference: " + ref);
}

std::string catalog_listing() {
  return
      "actions:\n"
      "  cyclic:<n>[:<gens>]           shift x -> x+1 on n points\n"
      "  trivial:<n>[:<gens>]          identity generators on n points\n"
      "  point[:<gens>]                one-point action\n"
      "  random:<n>:<gens>:<seed>      seeded uniform permutations\n"
      "  product(<ref>,<ref>)          diagonal product\n"
      "  odometer-level:<base>:<depth>:<level>  one cyclic quotient\n"
      "  <path>                        action file (action v1)\n"
      "models:\n"
      "  any action reference (uniform measure)\n"
      "  bernoulli:<alphabet>:<p1,p2,...>:<gens>  Bernoulli shift\n"
      "  odometer-level:...            level as a tower model\n"
      "towers:\n"
      "  odometer:<base>:<depth>       cyclic quotient chain\n"
      "  <path>                        tower file (tower v1, checksummed)\n"
      "partitions:\n"
      "  inline:<carrier>:<k>:<c0,c1,...>  finite partition by assignment\n"
      "  singletons:<carrier> | oneblock:<carrier>\n"
      "  coord:<gens>:<alphabet>[:<word>]  coordinate cylinder partition\n"
      "  <path>                        partition file (partition/cylinder v1)\n"
      "words: letters a..z are generators 0..25, uppercase their inverses,\n"
      "  \"1\" is the identity; lists are comma-separated (e.g. \"1,a,A\")\n";
}

} // namespace soficlab
