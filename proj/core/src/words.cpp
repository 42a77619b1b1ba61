#include "soficlab/words.hpp"

#include <algorithm>

#include "soficlab/errors.hpp"
#include "soficlab/rng.hpp"

namespace soficlab {

GroupWord GroupWord::reduce(const std::vector<Letter>& raw) {
  GroupWord w;
  auto& out = w.letters_;
  out.reserve(raw.size());
  for (const Letter& l : raw) {
    if (l.sign != 1 && l.sign != -1) throw InputError("word letter sign must be +1 or -1");
    if (l.gen < 0) throw InputError("word letter generator index must be >= 0");
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return w;
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> rev;
  rev.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    rev.push_back(Letter{it->gen, -it->sign});
  }
  GroupWord w;
  w.letters_ = std::move(rev); // reversal of a reduced word is reduced
  return w;
}

GroupWord operator*(const GroupWord& w, const GroupWord& v) {
  std::vector<Letter> cat = w.letters_;
  cat.insert(cat.end(), v.letters_.begin(), v.letters_.end());
  return GroupWord::reduce(cat);
}

bool operator<(const GroupWord& a, const GroupWord& b) {
  // length-lexicographic; gives shorter probe words first in catalogs
  if (a.letters_.size() != b.letters_.size()) {
    return a.letters_.size() < b.letters_.size();
  }
  for (size_t i = 0; i < a.letters_.size(); ++i) {
    const Letter &x = a.letters_[i], &y = b.letters_[i];
    if (x.gen != y.gen) return x.gen < y.gen;
    if (x.sign != y.sign) return x.sign > y.sign; // positive before inverse
  }
  return false;
}

int GroupWord::max_generator() const {
  int m = -1;
  for (const Letter& l : letters_) m = std::max(m, l.gen);
  return m;
}

std::string GroupWord::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_) {
    if (l.gen > 25) throw InputError("word text syntax supports generators 0..25 only");
    char c = static_cast<char>('a' + l.gen);
    s.push_back(l.sign > 0 ? c : static_cast<char>(c - 'a' + 'A'));
  }
  return s;
}

GroupWord GroupWord::parse(const std::string& text) {
  if (text == "1") return GroupWord();
  if (text.empty()) throw InputError("empty word text; write the identity as \"1\"");
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      raw.push_back(Letter{c - 'a', +1});
    } else if (c >= 'A' && c <= 'Z') {
      raw.push_back(Letter{c - 'A', -1});
    } else {
      throw InputError(std::string("bad character '") + c + "' in word text \"" + text + "\"");
    }
  }
  return reduce(raw);
}

GroupWord GroupWord::generator(int g, int sign) {
  return reduce({Letter{g, sign}});
}

GroupWord GroupWord::power(int g, long long k) {
  std::vector<Letter> raw;
  int sign = k >= 0 ? +1 : -1;
  long long count = k >= 0 ? k : -k;
  raw.assign(static_cast<size_t>(count), Letter{g, sign});
  return reduce(raw);
}

WordList parse_word_list(const std::string& text) {
  WordList out;
  std::string item;
  auto flush = [&]() {
    // trim surrounding blanks
    size_t b = item.find_first_not_of(" \t");
    size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in word list");
    out.push_back(GroupWord::parse(item.substr(b, e - b + 1)));
    item.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty() || out.empty()) flush();
  return out;
}

std::string format_word_list(const WordList& words) {
  std::string s;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) s.push_back(',');
    s += words[i].str();
  }
  return s;
}

void FiniteAction::validate() const {
  if (size <= 0) throw InputError("action size must be positive");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != size) {
      throw InputError("generator image array has wrong length");
    }
    std::vector<char> seen(static_cast<size_t>(size), 0);
    for (int x : g) {
      if (x < 0 || x >= size || seen[static_cast<size_t>(x)]) {
        throw InputError("generator is not a bijection on the carrier");
      }
      seen[static_cast<size_t>(x)] = 1;
    }
  }
}

FiniteAction cyclic_action(int n, int generators) {
  FiniteAction a;
  a.size = n;
  a.gens.assign(static_cast<size_t>(generators), std::vector<int>(static_cast<size_t>(n)));
  for (auto& g : a.gens) {
    for (int x = 0; x < n; ++x) g[static_cast<size_t>(x)] = (x + 1) % n;
  }
  a.validate();
  return a;
}

FiniteAction trivial_action(int n, int generators) {
  FiniteAction a;
  a.size = n;
  a.gens.assign(static_cast<size_t>(generators), std::vector<int>(static_cast<size_t>(n)));
  for (auto& g : a.gens) {
    for (int x = 0; x < n; ++x) g[static_cast<size_t>(x)] = x;
  }
  a.validate();
  return a;
}

FiniteAction random_action(int n, int generators, uint64_t seed) {
  FiniteAction a;
  a.size = n;
  a.gens.reserve(static_cast<size_t>(generators));
  for (int g = 0; g < generators; ++g) {
    Rng rng(Rng::derive(seed, static_cast<uint64_t>(g)));
    a.gens.push_back(rng.permutation(n));
  }
  a.validate();
  return a;
}

std::vector<int> evaluate(const FiniteAction& a, const GroupWord& w) {
  std::vector<int> perm(static_cast<size_t>(a.size));
  for (int x = 0; x < a.size; ++x) perm[static_cast<size_t>(x)] = x;
  // last letter applied first: walk letters right to left, composing on top
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    if (it->gen >= a.generator_count()) {
      throw InputError("word uses generator " + std::to_string(it->gen) +
                       " but the action has " + std::to_string(a.generator_count()));
    }
    const std::vector<int>& g = a.gens[static_cast<size_t>(it->gen)];
    if (it->sign > 0) {
      for (auto& y : perm) y = g[static_cast<size_t>(y)];
    } else {
      std::vector<int> ginv = invert_permutation(g);
      for (auto& y : perm) y = ginv[static_cast<size_t>(y)];
    }
  }
  return perm;
}

std::vector<int> invert_permutation(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t x = 0; x < p.size(); ++x) inv[static_cast<size_t>(p[x])] = static_cast<int>(x);
  return inv;
}

Rat fix_ratio(const FiniteAction& a, const GroupWord& w) {
  std::vector<int> perm = evaluate(a, w);
  long long fixed = 0;
  for (int x = 0; x < a.size; ++x) {
    if (perm[static_cast<size_t>(x)] == x) ++fixed;
  }
  return Rat(fixed, a.size);
}

} // namespace soficlab
