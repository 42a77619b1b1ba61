#ifndef SOFICLAB_WORDS_HPP
#define SOFICLAB_WORDS_HPP

#include <string>
#include <vector>

#include "soficlab/rat.hpp"

namespace soficlab {

/// One signed generator occurrence: generator index (0-based) and
/// sign +1 / -1.
struct Letter {
  int gen = 0;
  int sign = +1;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.sign == b.sign;
  }
};

/// A freely reduced word over the generators of a free group. The empty
/// word is the identity. Construction always reduces, so no adjacent
/// pair g g^-1 or g^-1 g survives.
class GroupWord {
public:
  GroupWord() = default;

  /// Reduces an arbitrary letter sequence. Idempotent.
  static GroupWord reduce(const std::vector<Letter>& raw);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  size_t length() const { return letters_.size(); }

  GroupWord inverse() const;

  /// Concatenation followed by free reduction: (w * v) acts as w after v.
  friend GroupWord operator*(const GroupWord& w, const GroupWord& v);

  friend bool operator==(const GroupWord& a, const GroupWord& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const GroupWord& a, const GroupWord& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupWord& a, const GroupWord& b);

  /// Largest generator index used, or -1 for the empty word.
  int max_generator() const;

  // Word text syntax: 'a'..'z' are generators 0..25, 'A'..'Z' their
  // inverses, and the bare string "1" is the identity. format() emits
  // the reduced word; parse(format(w)) == w for every word, and
  // format(parse(s)) == s for every reduced text.
  std::string str() const;
  static GroupWord parse(const std::string& text);

  /// Convenience: generator g as a word, or its inverse.
  static GroupWord generator(int g, int sign = +1);
  /// g^k (k may be negative or zero).
  static GroupWord power(int g, long long k);

private:
  std::vector<Letter> letters_;
};

using WordList = std::vector<GroupWord>;

/// Parses a comma-separated list of words ("1,a,A,ab").
WordList parse_word_list(const std::string& text);
std::string format_word_list(const WordList& words);

/// An action on {0..n-1} by one permutation per generator, carrying the
/// uniform measure (mass 1/n per point).
struct FiniteAction {
  int size = 0;
  std::vector<std::vector<int>> gens; // gens[g][x] = image of x

  int generator_count() const { return static_cast<int>(gens.size()); }

  /// Throws InputError unless every generator is a bijection on 0..n-1.
  void validate() const;

  Rat point_mass() const { return Rat(1, size); }
};

/// Builders used across tests and the catalog.
FiniteAction cyclic_action(int n, int generators = 1);
FiniteAction trivial_action(int n, int generators = 1);
FiniteAction random_action(int n, int generators, uint64_t seed);

/// The permutation of {0..n-1} realizing w on the action, letters applied
/// right to left (last letter first), so evaluate(a, w*v) =
/// evaluate(a, w) o evaluate(a, v). Unknown generator index throws
/// InputError.
std::vector<int> evaluate(const FiniteAction& a, const GroupWord& w);

std::vector<int> invert_permutation(const std::vector<int>& p);

/// Fraction of points fixed by w, exact.
Rat fix_ratio(const FiniteAction& a, const GroupWord& w);

} // namespace soficlab

#endif
