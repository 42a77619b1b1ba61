#include "soficlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "soficlab/errors.hpp"

namespace soficlab {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

long long to_int(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("bad integer for ") + what + ": \"" + s + "\"");
  }
}

/// Line-oriented reader with a cursor; throws InputError on mismatches.
struct Reader {
  std::vector<std::string> lines;
  size_t pos = 0;

  explicit Reader(const std::string& text) : lines(split_lines(text)) {}

  std::vector<std::string> expect(const std::string& head, size_t min_tokens) {
    if (pos >= lines.size()) throw InputError("unexpected end of file, wanted \"" + head + "\"");
    auto ts = tokens(lines[pos]);
    if (ts.empty() || ts[0] != head || ts.size() < min_tokens) {
      throw InputError("bad line \"" + lines[pos] + "\", wanted \"" + head + "\"");
    }
    ++pos;
    return ts;
  }

  bool peek_is(const std::string& head) const {
    if (pos >= lines.size()) return false;
    auto ts = tokens(lines[pos]);
    return !ts.empty() && ts[0] == head;
  }
};

} // namespace

std::string format_partition(const IndexedPartition& p) {
  std::ostringstream os;
  if (p.is_finite()) {
    const auto& f = p.finite();
    os << "partition v1\n";
    os << "carrier " << f.carrier << "\n";
    os << "blocks " << f.block_count << "\n";
    os << "assign";
    for (int b : f.assign) os << ' ' << b;
    os << "\n";
  } else {
    const auto& c = p.cylinder();
    os << "cylinder v1\n";
    os << "generators " << c.generator_count << "\n";
    os << "alphabet " << c.alphabet << "\n";
    os << "blocks " << c.block_count << "\n";
    os << "coords " << c.coords.size() << "\n";
    for (const auto& w : c.coords) os << "coord " << w.str() << "\n";
    os << "table " << c.table.size() << "\n";
    for (size_t i = 0; i < c.table.size(); ++i) {
      os << "row " << i << ' ' << c.table[i] << "\n";
    }
  }
  return os.str();
}

IndexedPartition parse_partition(const std::string& text) {
  Reader r(text);
  if (r.peek_is("partition")) {
    auto head = r.expect("partition", 2);
    if (head[1] != "v1") throw InputError("unsupported partition format version");
    FinitePartition f;
    f.carrier = static_cast<int>(to_int(r.expect("carrier", 2)[1], "carrier"));
    f.block_count = static_cast<int>(to_int(r.expect("blocks", 2)[1], "blocks"));
    auto ts = r.expect("assign", 1);
    for (size_t i = 1; i < ts.size(); ++i) {
      f.assign.push_back(static_cast<int>(to_int(ts[i], "assign entry")));
    }
    f.validate();
    return IndexedPartition(std::move(f));
  }
  auto head = r.expect("cylinder", 2);
  if (head[1] != "v1") throw InputError("unsupported cylinder format version");
  CylinderPartition c;
  c.generator_count = static_cast<int>(to_int(r.expect("generators", 2)[1], "generators"));
  c.alphabet = static_cast<int>(to_int(r.expect("alphabet", 2)[1], "alphabet"));
  c.block_count = static_cast<int>(to_int(r.expect("blocks", 2)[1], "blocks"));
  long long ncoords = to_int(r.expect("coords", 2)[1], "coords");
  for (long long i = 0; i < ncoords; ++i) {
    c.coords.push_back(GroupWord::parse(r.expect("coord", 2)[1]));
  }
  long long nrows = to_int(r.expect("table", 2)[1], "table");
  c.table.resize(static_cast<size_t>(nrows));
  for (long long i = 0; i < nrows; ++i) {
    auto ts = r.expect("row", 3);
    long long idx = to_int(ts[1], "row index");
    if (idx != i) throw InputError("cylinder table rows out of order");
    c.table[static_cast<size_t>(i)] = static_cast<int>(to_int(ts[2], "row block"));
  }
  c.validate();
  return IndexedPartition(std::move(c));
}

std::string format_action(const FiniteAction& a) {
  std::ostringstream os;
  os << "action v1\n";
  os << "size " << a.size << "\n";
  os << "generators " << a.generator_count() << "\n";
  for (int g = 0; g < a.generator_count(); ++g) {
    os << "gen " << g;
    for (int x : a.gens[static_cast<size_t>(g)]) os << ' ' << x;
    os << "\n";
  }
  return os.str();
}

FiniteAction parse_action(const std::string& text) {
  Reader r(text);
  auto head = r.expect("action", 2);
  if (head[1] != "v1") throw InputError("unsupported action format version");
  FiniteAction a;
  a.size = static_cast<int>(to_int(r.expect("size", 2)[1], "size"));
  long long gens = to_int(r.expect("generators", 2)[1], "generators");
  for (long long g = 0; g < gens; ++g) {
    auto ts = r.expect("gen", 2);
    if (to_int(ts[1], "gen index") != g) throw InputError("action generators out of order");
    std::vector<int> images;
    for (size_t i = 2; i < ts.size(); ++i) {
      images.push_back(static_cast<int>(to_int(ts[i], "gen image")));
    }
    a.gens.push_back(std::move(images));
  }
  a.validate();
  return a;
}

namespace {

std::string tower_body(const Tower& t) {
  std::ostringstream os;
  os << "generators " << t.generator_count() << "\n";
  os << "levels " << t.depth() << "\n";
  for (int l = 0; l < t.depth(); ++l) {
    const FiniteAction& a = t.level(l);
    os << "level " << l << " size " << a.size << "\n";
    for (int g = 0; g < a.generator_count(); ++g) {
      os << "gen " << g;
      for (int x : a.gens[static_cast<size_t>(g)]) os << ' ' << x;
      os << "\n";
    }
  }
  for (size_t m = 0; m < t.maps().size(); ++m) {
    os << "map " << m;
    for (int x : t.maps()[m]) os << ' ' << x;
    os << "\n";
  }
  return os.str();
}

} // namespace

std::string format_tower(const Tower& t) {
  std::string body = tower_body(t);
  return "tower v1\n" + body + "checksum " + hex64(fnv1a64(body)) + "\n";
}

Tower parse_tower(const std::string& text) {
  Reader r(text);
  auto head = r.expect("tower", 2);
  if (head[1] != "v1") throw InputError("unsupported tower format version");
  int gens = static_cast<int>(to_int(r.expect("generators", 2)[1], "generators"));
  long long depth = to_int(r.expect("levels", 2)[1], "levels");
  std::vector<FiniteAction> levels;
  for (long long l = 0; l < depth; ++l) {
    auto ts = r.expect("level", 4);
    if (to_int(ts[1], "level index") != l || ts[2] != "size") {
      throw InputError("tower levels out of order");
    }
    FiniteAction a;
    a.size = static_cast<int>(to_int(ts[3], "level size"));
    for (int g = 0; g < gens; ++g) {
      auto gt = r.expect("gen", 2);
      if (to_int(gt[1], "gen index") != g) throw InputError("tower generators out of order");
      std::vector<int> images;
      for (size_t i = 2; i < gt.size(); ++i) {
        images.push_back(static_cast<int>(to_int(gt[i], "gen image")));
      }
      a.gens.push_back(std::move(images));
    }
    levels.push_back(std::move(a));
  }
  std::vector<std::vector<int>> maps;
  for (long long m = 0; m + 1 < depth; ++m) {
    auto ts = r.expect("map", 2);
    if (to_int(ts[1], "map index") != m) throw InputError("tower maps out of order");
    std::vector<int> map;
    for (size_t i = 2; i < ts.size(); ++i) {
      map.push_back(static_cast<int>(to_int(ts[i], "map image")));
    }
    maps.push_back(std::move(map));
  }
  auto ck = r.expect("checksum", 2);
  Tower t = Tower::create(std::move(levels), std::move(maps));
  std::string expect = hex64(fnv1a64(tower_body(t)));
  if (ck[1] != expect) {
    throw InputError("tower checksum mismatch: file says " + ck[1] + ", body hashes to " + expect);
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

} // namespace soficlab
