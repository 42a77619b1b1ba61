#include "soficlab/partition.hpp"

#include <algorithm>

#include "soficlab/errors.hpp"

namespace soficlab {

namespace {

size_t checked_pow(size_t base, size_t exp, size_t limit) {
  size_t v = 1;
  for (size_t i = 0; i < exp; ++i) {
    if (v > limit / base) throw BudgetError("cylinder labeling table too large");
    v *= base;
  }
  return v;
}

} // namespace

void FinitePartition::validate() const {
  if (carrier <= 0) throw InputError("partition carrier must be positive");
  if (block_count < 1) throw InputError("partition needs at least one block");
  if (static_cast<int>(assign.size()) != carrier) {
    throw InputError("partition assignment length does not match carrier");
  }
  for (int b : assign) {
    if (b < 0 || b >= block_count) throw InputError("partition block index out of range");
  }
}

std::vector<long long> FinitePartition::block_sizes() const {
  std::vector<long long> s(static_cast<size_t>(block_count), 0);
  for (int b : assign) ++s[static_cast<size_t>(b)];
  return s;
}

FinitePartition FinitePartition::one_block(int carrier) {
  FinitePartition p;
  p.carrier = carrier;
  p.block_count = 1;
  p.assign.assign(static_cast<size_t>(carrier), 0);
  return p;
}

FinitePartition FinitePartition::singletons(int carrier) {
  FinitePartition p;
  p.carrier = carrier;
  p.block_count = carrier;
  p.assign.resize(static_cast<size_t>(carrier));
  for (int x = 0; x < carrier; ++x) p.assign[static_cast<size_t>(x)] = x;
  return p;
}

void CylinderPartition::validate() const {
  if (generator_count < 1) throw InputError("cylinder partition needs >= 1 generator");
  if (alphabet < 1) throw InputError("cylinder alphabet must be >= 1");
  if (block_count < 1) throw InputError("cylinder partition needs at least one block");
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].max_generator() >= generator_count) {
      throw InputError("cylinder coordinate uses an unknown generator");
    }
    for (size_t j = i + 1; j < coords.size(); ++j) {
      if (coords[i] == coords[j]) throw InputError("duplicate cylinder coordinate");
    }
  }
  size_t expect = checked_pow(static_cast<size_t>(alphabet), coords.size(), size_t(1) << 26);
  if (table.size() != expect) {
    throw InputError("cylinder table size does not match alphabet^coords");
  }
  for (int b : table) {
    if (b < 0 || b >= block_count) throw InputError("cylinder table block index out of range");
  }
}

CylinderPartition CylinderPartition::coordinate(int generator_count, int alphabet,
                                                const GroupWord& at) {
  CylinderPartition p;
  p.generator_count = generator_count;
  p.alphabet = alphabet;
  p.block_count = alphabet;
  p.coords = {at};
  p.table.resize(static_cast<size_t>(alphabet));
  for (int s = 0; s < alphabet; ++s) p.table[static_cast<size_t>(s)] = s;
  return p;
}

const FinitePartition& IndexedPartition::finite() const {
  if (!is_finite()) throw InputError("expected a finite-carrier partition");
  return std::get<FinitePartition>(body);
}

const CylinderPartition& IndexedPartition::cylinder() const {
  if (is_finite()) throw InputError("expected a cylinder partition");
  return std::get<CylinderPartition>(body);
}

int IndexedPartition::block_count() const {
  return is_finite() ? finite().block_count : cylinder().block_count;
}

std::string IndexedPartition::describe() const {
  if (is_finite()) {
    const auto& p = finite();
    return "finite(carrier=" + std::to_string(p.carrier) +
           ",k=" + std::to_string(p.block_count) + ")";
  }
  const auto& c = cylinder();
  std::string s = "cylinder(alphabet=" + std::to_string(c.alphabet) + ",coords=";
  for (size_t i = 0; i < c.coords.size(); ++i) {
    if (i) s.push_back(' ');
    s += c.coords[i].str();
  }
  s += ",k=" + std::to_string(c.block_count) + ")";
  return s;
}

CylinderPartition extend_cylinder(const CylinderPartition& p,
                                  const std::vector<GroupWord>& coords) {
  // position of each original coordinate inside the superset
  std::vector<size_t> pos(p.coords.size());
  for (size_t i = 0; i < p.coords.size(); ++i) {
    bool found = false;
    for (size_t u = 0; u < coords.size(); ++u) {
      if (coords[u] == p.coords[i]) { pos[i] = u; found = true; break; }
    }
    if (!found) throw InputError("extend_cylinder: target coordinates not a superset");
  }
  CylinderPartition out;
  out.generator_count = p.generator_count;
  out.alphabet = p.alphabet;
  out.block_count = p.block_count;
  out.coords = coords;
  size_t total = checked_pow(static_cast<size_t>(p.alphabet), coords.size(), size_t(1) << 26);
  out.table.resize(total);
  size_t a = static_cast<size_t>(p.alphabet);
  for (size_t idx = 0; idx < total; ++idx) {
    // project the labeling onto the original coordinates
    size_t sub = 0, weight = 1;
    for (size_t i = 0; i < pos.size(); ++i) {
      size_t digit = idx;
      for (size_t u = 0; u < pos[i]; ++u) digit /= a;
      sub += (digit % a) * weight;
      weight *= a;
    }
    out.table[idx] = p.table[sub];
  }
  return out;
}

namespace {

std::vector<GroupWord> merge_coords(const std::vector<GroupWord>& s,
                                    const std::vector<GroupWord>& t) {
  std::vector<GroupWord> u = s;
  for (const auto& w : t) {
    if (std::find(u.begin(), u.end(), w) == u.end()) u.push_back(w);
  }
  return u;
}

} // namespace

IndexedPartition join(const IndexedPartition& p, const IndexedPartition& q) {
  if (p.is_finite() != q.is_finite()) {
    throw InputError("join: partitions live on different carriers");
  }
  if (p.is_finite()) {
    const auto& a = p.finite();
    const auto& b = q.finite();
    if (a.carrier != b.carrier) throw InputError("join: carrier size mismatch");
    FinitePartition r;
    r.carrier = a.carrier;
    r.block_count = a.block_count * b.block_count;
    r.assign.resize(static_cast<size_t>(a.carrier));
    for (int x = 0; x < a.carrier; ++x) {
      r.assign[static_cast<size_t>(x)] =
          a.assign[static_cast<size_t>(x)] * b.block_count + b.assign[static_cast<size_t>(x)];
    }
    return IndexedPartition(std::move(r));
  }
  const auto& a = p.cylinder();
  const auto& b = q.cylinder();
  if (a.generator_count != b.generator_count || a.alphabet != b.alphabet) {
    throw InputError("join: cylinder partitions over different shifts");
  }
  std::vector<GroupWord> u = merge_coords(a.coords, b.coords);
  CylinderPartition ea = extend_cylinder(a, u);
  CylinderPartition eb = extend_cylinder(b, u);
  CylinderPartition r;
  r.generator_count = a.generator_count;
  r.alphabet = a.alphabet;
  r.block_count = a.block_count * b.block_count;
  r.coords = std::move(u);
  r.table.resize(ea.table.size());
  for (size_t i = 0; i < ea.table.size(); ++i) {
    r.table[i] = ea.table[i] * b.block_count + eb.table[i];
  }
  return IndexedPartition(std::move(r));
}

bool refines(const IndexedPartition& p, const IndexedPartition& q) {
  if (p.is_finite() != q.is_finite()) {
    throw InputError("refines: partitions live on different carriers");
  }
  if (p.is_finite()) {
    const auto& a = p.finite();
    const auto& b = q.finite();
    if (a.carrier != b.carrier) throw InputError("refines: carrier size mismatch");
    std::vector<int> image(static_cast<size_t>(a.block_count), -1);
    for (int x = 0; x < a.carrier; ++x) {
      int i = a.assign[static_cast<size_t>(x)];
      int j = b.assign[static_cast<size_t>(x)];
      if (image[static_cast<size_t>(i)] == -1) {
        image[static_cast<size_t>(i)] = j;
      } else if (image[static_cast<size_t>(i)] != j) {
        return false;
      }
    }
    return true;
  }
  const auto& a = p.cylinder();
  const auto& b = q.cylinder();
  if (a.generator_count != b.generator_count || a.alphabet != b.alphabet) {
    throw InputError("refines: cylinder partitions over different shifts");
  }
  std::vector<GroupWord> u = merge_coords(a.coords, b.coords);
  CylinderPartition ea = extend_cylinder(a, u);
  CylinderPartition eb = extend_cylinder(b, u);
  // base probabilities are positive, so every labeling carries mass
  std::vector<int> image(static_cast<size_t>(a.block_count), -1);
  for (size_t i = 0; i < ea.table.size(); ++i) {
    int pi = ea.table[i], qi = eb.table[i];
    if (image[static_cast<size_t>(pi)] == -1) {
      image[static_cast<size_t>(pi)] = qi;
    } else if (image[static_cast<size_t>(pi)] != qi) {
      return false;
    }
  }
  return true;
}

} // namespace soficlab
