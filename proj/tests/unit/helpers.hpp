#ifndef SOFICLAB_TEST_HELPERS_HPP
#define SOFICLAB_TEST_HELPERS_HPP

#include <vector>

#include "soficlab/partition.hpp"
#include "soficlab/rng.hpp"
#include "soficlab/words.hpp"

namespace testutil {

using namespace soficlab;

inline GroupWord random_word(Rng& rng, int gens, int max_len) {
  int len = static_cast<int>(rng.below(static_cast<uint64_t>(max_len) + 1));
  std::vector<Letter> raw;
  for (int i = 0; i < len; ++i) {
    raw.push_back(Letter{static_cast<int>(rng.below(static_cast<uint64_t>(gens))),
                         (rng.next() & 1) ? +1 : -1});
  }
  return GroupWord::reduce(raw);
}

inline GroupWord random_nonempty_word(Rng& rng, int gens, int max_len) {
  for (;;) {
    GroupWord w = random_word(rng, gens, max_len);
    if (!w.empty()) return w;
  }
}

inline WordList random_word_list(Rng& rng, int gens, int max_len, int count) {
  WordList out;
  for (int i = 0; i < count; ++i) out.push_back(random_word(rng, gens, max_len));
  return out;
}

inline FinitePartition random_partition(Rng& rng, int carrier, int k) {
  FinitePartition p;
  p.carrier = carrier;
  p.block_count = k;
  p.assign.resize(static_cast<size_t>(carrier));
  for (auto& b : p.assign) b = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
  return p;
}

inline FinitePartition make_partition(std::vector<int> assign, int k) {
  FinitePartition p;
  p.carrier = static_cast<int>(assign.size());
  p.block_count = k;
  p.assign = std::move(assign);
  return p;
}

} // namespace testutil

#endif
